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

#include "ssdtco/detector.hpp"
#include "ssdtco/tco.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ssdtco {

inline constexpr double kBytesPerGB = 1024.0 * 1024.0 * 1024.0;
inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kPeakWindowSeconds = 300.0;
inline constexpr double kMaxMalformedFraction = 0.01;

enum class TraceLayout
{
    msr,    // timestamp,hostname,disknum,type,offset,size,latency (100 ns ticks, bytes)
    simple, // time_s,op,lbn_4k,size_4k with a header line
};

TraceLayout parse_trace_layout(std::string_view text);
std::string to_string(TraceLayout layout);

struct ParsedTrace
{
    std::vector<IoEvent> events; // file order, times relative to the first event
    std::size_t lines = 0;       // data lines seen
    std::size_t malformed = 0;
};

/// Throws ErrorKind::malformed_input when more than max_malformed of the
/// data lines fail to parse.
ParsedTrace parse_trace(std::istream& in, TraceLayout layout, double max_malformed = kMaxMalformedFraction);

/// Throws ErrorKind::io when the file cannot be opened.
ParsedTrace parse_trace(const std::filesystem::path& path, TraceLayout layout,
                        double max_malformed = kMaxMalformedFraction);

/// Profiles a trace. Throws ErrorKind::degenerate_trace for an empty
/// stream or one that spans no time.
WorkloadProfile profile_workload(std::span<const IoEvent> events, std::string id = "trace",
                                 double window_seconds = kPeakWindowSeconds, DetectorConfig detector = {});

struct SynthTraceSpec
{
    double seq_fraction = 0.5;   // of written pages
    double write_fraction = 1.0; // of I/Os
    double rate_gb_day = 10.0;   // logical writes
    double duration_days = 1.0;
    std::uint64_t seed = 0;
    std::uint64_t io_pages = 8;    // pages per I/O
    std::uint64_t run_pages = 2048; // sequential run length before jumping
};

/// One sequential stream that restarts at random addresses every
/// run_pages, random writes over a wide address space, and reads
/// interleaved evenly. Events are evenly spaced over the duration.
std::vector<IoEvent> synth_trace(const SynthTraceSpec& spec);

// One characterised trace used as a template for synthetic workloads.
struct TraceStats
{
    const char* name;
    double seq_ratio;   // percent
    double write_rate;  // GB/day
    double peak_iops;
    double write_ratio; // percent
    double working_set; // GB
};

/// Statistics of sixteen enterprise block traces.
std::span<const TraceStats> reference_traces() noexcept;

struct WorkloadSetSpec
{
    std::size_t count = 40;
    double horizon_days = 525.0; // arrivals spread over this span
    double jitter = 0.2;         // relative, uniform
    std::uint64_t seed = 0;
};

/// Workloads drawn from the reference traces with multiplicative jitter
/// and exponential arrivals (mean horizon / count), sorted by arrival.
std::vector<WorkloadProfile> synth_workload_set(const WorkloadSetSpec& spec);

} // namespace ssdtco
