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
#pragma once

#include <cstdint>
#include <list>
#include <map>
#include <vector>

namespace ssdtco {

enum class IoOp
{
    read,
    write,
};

// Addresses and sizes are in 4 KB pages.
struct IoEvent
{
    double time = 0.0; // seconds since trace start
    std::uint64_t lbn = 0;
    std::uint64_t size = 1;
    IoOp op = IoOp::write;

    bool operator==(const IoEvent&) const = default;
};

inline constexpr std::uint64_t kPageBytes = 4096;

struct DetectorConfig
{
    std::size_t queue_count = 32;       // stream nodes kept in the LRU chain
    std::uint64_t seq_gap = 32;         // 128 KB continuity slack
    std::uint64_t seq_stream_size = 256; // 1 MB coverage to qualify
};

/// Set of disjoint page intervals; reports how many pages an insert adds.
class PageCoverage
{
  public:
    std::uint64_t add(std::uint64_t start, std::uint64_t end);
    std::uint64_t pages() const noexcept { return pages_; }
    std::size_t intervals() const noexcept { return spans_.size(); }

  private:
    std::map<std::uint64_t, std::uint64_t> spans_; // start -> end
    std::uint64_t pages_ = 0;
};

struct StreamNode
{
    std::uint64_t last_lbn = 0;
    std::uint64_t last_size = 0;
    std::uint64_t total_pages = 0; // all write volume attributed to the stream
    PageCoverage coverage;         // deduplicated pages

    std::uint64_t coverage_pages() const noexcept { return coverage.pages(); }
};

struct DetectorSnapshot
{
    double seq_ratio = 0.0;
    std::size_t stream_count = 0;
    std::uint64_t qualified_pages = 0;
    std::uint64_t total_pages = 0;
    std::uint64_t evictions = 0;
};

// Online sequential-stream detector. Each write is appended to the first
// stream (MRU to LRU) it continues, else it opens a new stream at the MRU
// end, evicting the LRU stream when the chain is full. A stream is
// sequential once its deduplicated coverage reaches seq_stream_size.
// Evicted streams keep the classification they had when evicted.
class SequentialStreamDetector
{
  public:
    explicit SequentialStreamDetector(DetectorConfig config = {});

    /// Reads are ignored; only writes amplify.
    void ingest(const IoEvent& ev);

    /// Fraction of written pages that belong to sequential streams.
    /// Throws ErrorKind::undefined_ratio before the first write.
    double seq_ratio() const;

    DetectorSnapshot snapshot() const;

    std::uint64_t qualified_pages() const noexcept;
    std::uint64_t unqualified_pages() const noexcept;
    std::uint64_t total_pages() const noexcept { return total_pages_; }
    std::uint64_t evictions() const noexcept { return evictions_; }

    /// Live streams, MRU first.
    const std::list<StreamNode>& streams() const noexcept { return streams_; }
    const DetectorConfig& config() const noexcept { return config_; }

  private:
    bool continues(const StreamNode& node, const IoEvent& ev) const noexcept;
    bool qualifies(const StreamNode& node) const noexcept;

    DetectorConfig config_;
    std::list<StreamNode> streams_;
    std::uint64_t total_pages_ = 0;
    std::uint64_t evicted_qualified_ = 0;
    std::uint64_t evicted_unqualified_ = 0;
    std::uint64_t evictions_ = 0;
};

/// Functional form: returns the state after one more event.
SequentialStreamDetector detector_ingest(SequentialStreamDetector state, const IoEvent& ev);

double detector_seq_ratio(const SequentialStreamDetector& state);

} // namespace ssdtco
