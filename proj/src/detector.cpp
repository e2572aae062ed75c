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

#include "ssdtco/error.hpp"

#include <algorithm>
#include <iterator>

namespace ssdtco {

std::uint64_t PageCoverage::add(std::uint64_t start, std::uint64_t end)
{
    if (end <= start)
        return 0;
    const std::uint64_t before = pages_;

    // First interval that could touch [start, end).
    auto it = spans_.upper_bound(start);
    if (it != spans_.begin())
    {
        auto prev = std::prev(it);
        if (prev->second >= start)
            it = prev;
    }
    std::uint64_t lo = start;
    std::uint64_t hi = end;
    while (it != spans_.end() && it->first <= hi)
    {
        lo = std::min(lo, it->first);
        hi = std::max(hi, it->second);
        pages_ -= it->second - it->first;
        it = spans_.erase(it);
    }
    spans_.emplace(lo, hi);
    pages_ += hi - lo;
    return pages_ - before;
}

SequentialStreamDetector::SequentialStreamDetector(DetectorConfig config)
    : config_(config)
{
    if (config_.queue_count == 0)
        throw Error(ErrorKind::config, "detector needs at least one stream slot");
}

bool SequentialStreamDetector::continues(const StreamNode& node, const IoEvent& ev) const noexcept
{
    const std::uint64_t end = node.last_lbn + node.last_size;
    // 1: inside the last I/O; 2: starts at its end; 3: within seq_gap past it.
    if (ev.lbn >= node.last_lbn && ev.lbn < end)
        return true;
    if (ev.lbn == end)
        return true;
    return ev.lbn > end && ev.lbn <= end + config_.seq_gap;
}

bool SequentialStreamDetector::qualifies(const StreamNode& node) const noexcept
{
    return node.coverage_pages() >= config_.seq_stream_size;
}

void SequentialStreamDetector::ingest(const IoEvent& ev)
{
    if (ev.op != IoOp::write || ev.size == 0)
        return;
    total_pages_ += ev.size;

    auto hit = std::find_if(streams_.begin(), streams_.end(),
                            [&](const StreamNode& n) { return continues(n, ev); });
    if (hit == streams_.end())
    {
        if (streams_.size() == config_.queue_count)
        {
            const StreamNode& victim = streams_.back();
            (qualifies(victim) ? evicted_qualified_ : evicted_unqualified_) += victim.total_pages;
            streams_.pop_back();
            ++evictions_;
        }
        streams_.emplace_front();
    }
    else if (hit != streams_.begin())
    {
        streams_.splice(streams_.begin(), streams_, hit);
    }

    StreamNode& node = streams_.front();
    node.last_lbn = ev.lbn;
    node.last_size = ev.size;
    node.total_pages += ev.size;
    node.coverage.add(ev.lbn, ev.lbn + ev.size);
}

std::uint64_t SequentialStreamDetector::qualified_pages() const noexcept
{
    std::uint64_t q = evicted_qualified_;
    for (const auto& n : streams_)
    {
        if (qualifies(n))
            q += n.total_pages;
    }
    return q;
}

std::uint64_t SequentialStreamDetector::unqualified_pages() const noexcept
{
    std::uint64_t u = evicted_unqualified_;
    for (const auto& n : streams_)
    {
        if (!qualifies(n))
            u += n.total_pages;
    }
    return u;
}

double SequentialStreamDetector::seq_ratio() const
{
    if (total_pages_ == 0)
        throw Error(ErrorKind::undefined_ratio, "sequential ratio needs at least one write");
    return static_cast<double>(qualified_pages()) / static_cast<double>(total_pages_);
}

DetectorSnapshot SequentialStreamDetector::snapshot() const
{
    DetectorSnapshot s;
    s.seq_ratio = total_pages_ == 0 ? 0.0 : seq_ratio();
    s.stream_count = streams_.size();
    s.qualified_pages = qualified_pages();
    s.total_pages = total_pages_;
    s.evictions = evictions_;
    return s;
}

SequentialStreamDetector detector_ingest(SequentialStreamDetector state, const IoEvent& ev)
{
    state.ingest(ev);
    return state;
}

double detector_seq_ratio(const SequentialStreamDetector& state)
{
    return state.seq_ratio();
}

} // namespace ssdtco
