/* Copyright 2026 The ssdtco Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "ssdtco/detector.hpp"
#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ssdtco;
using ssdtco::testing::kind_of;

namespace {

IoEvent write_at(std::uint64_t lbn, std::uint64_t size)
{
    return IoEvent{0.0, lbn, size, IoOp::write};
}

} // namespace

TEST(Detector, FirstEventsExtendOneStream)
{
    SequentialStreamDetector d;
    d = detector_ingest(d, write_at(0, 8));
    ASSERT_EQ(d.streams().size(), 1u);
    EXPECT_EQ(d.streams().front().last_lbn, 0u);
    EXPECT_EQ(d.streams().front().last_size, 8u);

    d = detector_ingest(d, write_at(8, 8));
    ASSERT_EQ(d.streams().size(), 1u);
    EXPECT_EQ(d.streams().front().coverage_pages(), 16u);

    d = detector_ingest(d, write_at(40, 8)); // 24-page hole is within the gap
    ASSERT_EQ(d.streams().size(), 1u);
    EXPECT_EQ(d.streams().front().last_lbn, 40u);
    EXPECT_EQ(d.streams().front().coverage_pages(), 24u);
}

TEST(Detector, HoleBeyondGapOpensNewStream)
{
    SequentialStreamDetector d;
    d.ingest(write_at(0, 8));
    d.ingest(write_at(8 + 33, 8));
    EXPECT_EQ(d.streams().size(), 2u);
}

TEST(Detector, ContiguousRunIsFullySequential)
{
    SequentialStreamDetector d;
    for (std::uint64_t i = 0; i < 512; i += 8) // 2 MB
        d.ingest(write_at(i, 8));
    EXPECT_DOUBLE_EQ(detector_seq_ratio(d), 1.0);
}

TEST(Detector, ScatteredSinglePagesAreRandom)
{
    SequentialStreamDetector d;
    for (std::uint64_t i = 0; i < 512; ++i)
        d.ingest(write_at(i * 1000, 1));
    EXPECT_DOUBLE_EQ(detector_seq_ratio(d), 0.0);
}

TEST(Detector, HalfSequentialMix)
{
    // 1 MB contiguous run interleaved with 1 MB of far-apart single pages.
    std::mt19937_64 rng(8);
    SequentialStreamDetector d;
    std::uint64_t cursor = 0;
    std::uint64_t seq_pages = 0, rand_pages = 0;
    std::uint64_t scatter = 1ull << 30;
    while (seq_pages < 256 || rand_pages < 256)
    {
        if (seq_pages < 256 && (rand_pages >= 256 || rng() % 2 == 0))
        {
            d.ingest(write_at(cursor, 1));
            ++cursor;
            ++seq_pages;
        }
        else
        {
            scatter += 10000;
            d.ingest(write_at(scatter, 1));
            ++rand_pages;
        }
    }
    EXPECT_NEAR(detector_seq_ratio(d), 0.5, 0.01);
}

TEST(Detector, ReadsIgnored)
{
    SequentialStreamDetector d;
    d.ingest(IoEvent{0.0, 0, 8, IoOp::read});
    EXPECT_EQ(d.total_pages(), 0u);
    EXPECT_EQ(kind_of([&] { detector_seq_ratio(d); }), ErrorKind::undefined_ratio);
}

TEST(Detector, OverlapCountsVolumeNotCoverage)
{
    SequentialStreamDetector d;
    d.ingest(write_at(0, 8));
    d.ingest(write_at(4, 8)); // rewinds inside the last I/O
    ASSERT_EQ(d.streams().size(), 1u);
    EXPECT_EQ(d.streams().front().total_pages, 16u);
    EXPECT_EQ(d.streams().front().coverage_pages(), 12u);
}

TEST(Detector, ConservationUnderRandomTraffic)
{
    std::mt19937_64 rng(12);
    for (int t = 0; t < 20; ++t)
    {
        SequentialStreamDetector d(DetectorConfig{4 + static_cast<std::size_t>(t), 32, 64});
        std::uint64_t ingested = 0;
        std::uint64_t cursor = 0;
        for (int i = 0; i < 5000; ++i)
        {
            const std::uint64_t size = 1 + rng() % 16;
            const std::uint64_t lbn = (rng() % 3 == 0) ? rng() % 100000 : (cursor += size);
            d.ingest(write_at(lbn, size));
            ingested += size;
            ASSERT_EQ(d.qualified_pages() + d.unqualified_pages(), d.total_pages());
            for (const auto& s : d.streams())
                ASSERT_LE(s.coverage_pages(), s.total_pages);
        }
        EXPECT_EQ(d.total_pages(), ingested);
        const double r = detector_seq_ratio(d);
        EXPECT_GE(r, 0.0);
        EXPECT_LE(r, 1.0);
    }
}

TEST(Detector, PermutationWithinStreamKeepsVolume)
{
    std::mt19937_64 rng(13);
    std::vector<IoEvent> events;
    for (std::uint64_t i = 0; i < 64; ++i)
        events.push_back(write_at(i * 4, 4));
    SequentialStreamDetector ordered;
    for (const auto& e : events)
        ordered.ingest(e);
    std::shuffle(events.begin(), events.end(), rng);
    SequentialStreamDetector shuffled;
    for (const auto& e : events)
        shuffled.ingest(e);
    EXPECT_EQ(ordered.total_pages(), shuffled.total_pages());
    EXPECT_GE(detector_seq_ratio(shuffled), 0.0);
    EXPECT_LE(detector_seq_ratio(shuffled), 1.0);
}

namespace {

// n interleaved streams, round-robin, each 64 pages long in 8-page writes.
SequentialStreamDetector round_robin(std::size_t n)
{
    SequentialStreamDetector d;
    for (std::uint64_t step = 0; step < 40; ++step)
        for (std::uint64_t s = 0; s < n; ++s)
            d.ingest(write_at(s * (1ull << 24) + step * 8, 8));
    return d;
}

} // namespace

TEST(Detector, FullQueueRetainsEveryStream)
{
    const auto d = round_robin(32);
    EXPECT_EQ(d.evictions(), 0u);
    EXPECT_EQ(d.streams().size(), 32u);
    EXPECT_DOUBLE_EQ(detector_seq_ratio(d), 1.0);
}

TEST(Detector, OneExtraStreamForcesEviction)
{
    const auto d = round_robin(33);
    EXPECT_GE(d.evictions(), 1u);
    EXPECT_EQ(d.streams().size(), 32u);
}

TEST(PageCoverage, MergesIntervals)
{
    PageCoverage c;
    EXPECT_EQ(c.add(0, 10), 10u);
    EXPECT_EQ(c.add(20, 30), 10u);
    EXPECT_EQ(c.add(5, 25), 10u);
    EXPECT_EQ(c.pages(), 30u);
    EXPECT_EQ(c.intervals(), 1u);
    EXPECT_EQ(c.add(0, 30), 0u);
    EXPECT_EQ(c.add(30, 31), 1u);
    EXPECT_EQ(c.intervals(), 1u);
}
