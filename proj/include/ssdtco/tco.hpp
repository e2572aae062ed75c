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

#include "ssdtco/waf.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Units used throughout: days, GB, IOPS, US dollars.

namespace ssdtco {

struct DiskSpec
{
    std::string id;
    double cost_purchase = 0.0; // $
    double cost_setup = 0.0;    // $
    double rate_power = 0.0;    // $/day
    double rate_labor = 0.0;    // $/day
    double write_limit = 0.0;   // GB of physical writes
    double capacity_space = 0.0;
    double capacity_iops = 0.0;
    WafModel waf_model;

    double capex() const noexcept { return cost_purchase + cost_setup; }
    double opex_rate() const noexcept { return rate_power + rate_labor; }
};

/// Throws ErrorKind::config when a cost is negative or a capacity is not positive.
void validate(const DiskSpec& spec);

struct WorkloadProfile
{
    std::string id;
    double arrival = 0.0;     // days
    double seq_ratio = 0.0;   // write sequential ratio
    double write_rate = 0.0;  // logical GB/day
    double peak_iops = 0.0;
    double write_ratio = 0.0; // write I/Os over all I/Os
    double working_set = 0.0; // GB

    double read_ratio() const noexcept { return 1.0 - write_ratio; }
};

/// Throws ErrorKind::malformed_input when a ratio or rate is out of range.
void validate(const WorkloadProfile& w);

// One brick of the wornout ledger: constant logical rate, sequential ratio
// and WAF over [t_start, t_end).
struct EpochRecord
{
    double t_start = 0.0;
    double t_end = 0.0;
    double logical_rate = 0.0;
    double seq_ratio = 0.0;
    double waf = 1.0;

    double duration() const noexcept { return t_end - t_start; }
    double physical_volume() const noexcept { return logical_rate * waf * duration(); }
};

// Runtime state of one allocatable disk (a single SSD or a RAID pseudo-disk).
// wornout is the physical volume up to last_arrival, the start of the open
// epoch; writes after that point are implied by the current rate and WAF.
struct DiskState
{
    DiskSpec spec;
    double write_multiplier = 1.0; // disk-side logical writes per workload write
    double write_penalty = 1.0;    // IOPS per workload write I/O
    double init_time = 0.0;
    double last_arrival = 0.0;
    std::vector<WorkloadProfile> assigned;
    std::vector<EpochRecord> epochs;
    double wornout = 0.0;
    std::optional<double> dead_time;

    bool warm() const noexcept { return !assigned.empty(); }
    bool alive() const noexcept { return !dead_time.has_value(); }
};

DiskState make_disk_state(const DiskSpec& spec);

double combined_write_rate(std::span<const WorkloadProfile> workloads) noexcept;

/// Write-rate weighted mean of the sequential ratios.
double combined_seq_ratio(std::span<const WorkloadProfile> workloads);

/// Brick-volume sum of the ledger. Throws ErrorKind::malformed_history for
/// inverted or overlapping epochs.
double accumulate_wornout(std::span<const EpochRecord> epochs);

/// Disk-side logical write rate: multiplier times the sum of workload rates.
double disk_logical_rate(const DiskState& disk) noexcept;
double disk_seq_ratio(const DiskState& disk);
double disk_waf(const DiskState& disk);

/// Physical writes accumulated by time t, including the open epoch. Capped
/// at the write limit.
double wornout_at(const DiskState& disk, double t);

/// Elapsed working time plus remaining endurance over the current physical
/// write rate. For a dead disk this is its realized lifetime.
double expected_lifetime(const DiskState& disk, double now);

/// init_time + expected_lifetime.
double expected_death_time(const DiskState& disk);

/// Logical GB written by the disk's workloads up to its (expected) death.
double disk_logical_writes(const DiskState& disk);

double total_logical_writes(std::span<const WorkloadProfile> workloads,
                            const std::map<std::string, double>& death_times);

/// Pool total over expected lifetimes.
double tco_lifetime(std::span<const DiskState> pool);

/// Pool total divided by the sum of expected lifetimes.
double tco_per_day(std::span<const DiskState> pool);

/// Pool total divided by the logical data served.
double data_avg_tco_rate(std::span<const DiskState> pool, double total_logical);

/// data_avg_tco_rate with the denominator taken from the pool's own ledger.
double pool_data_avg_tco_rate(std::span<const DiskState> pool);

/// Places a workload on the disk at time t, closing the open epoch first.
void assign_workload(DiskState& disk, const WorkloadProfile& w, double t);

/// Detects endurance exhaustion up to time t. When the disk dies in
/// (last_arrival, t] its final epoch is closed at the crossing and
/// wornout is pinned to the write limit. Returns true if it died.
bool advance_disk(DiskState& disk, double t);

/// Closes the open epoch at t without changing the assignment; used to
/// freeze a ledger at the end of a run.
void close_open_epoch(DiskState& disk, double t);

} // namespace ssdtco
