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

#include "ssdtco/sim.hpp"
#include "ssdtco/tco.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ssdtco {

inline constexpr double kDefaultSeqThreshold = 0.6;
inline constexpr double kDefaultSwitchDelta = 0.1346;

struct OfflineConfig
{
    std::vector<double> seq_thresholds{kDefaultSeqThreshold}; // strictly decreasing
    double switch_delta = kDefaultSwitchDelta;
    DiskSpec disk_spec;
};

/// Throws ErrorKind::config for unordered or out-of-range thresholds.
void validate(const OfflineConfig& cfg);

enum class OfflineApproach
{
    grouping,
    greedy,
};

std::string to_string(OfflineApproach approach);

// Workloads whose sequential ratio lies in [lower, upper); the top group
// also takes upper = 1.
struct WorkloadGroup
{
    std::string label;
    double lower = 0.0;
    double upper = 1.0;
    std::vector<WorkloadProfile> workloads;
    double write_rate = 0.0;
};

/// Zones ordered from the highest sequential ratio down; len(thresholds)+1 groups.
std::vector<WorkloadGroup> split_by_seq(std::span<const WorkloadProfile> workloads,
                                        std::span<const double> thresholds);

/// |lh - ll| / (lh + ll) >= delta. Zero total rate counts as balanced.
bool prefers_greedy(double lambda_high, double lambda_low, double delta) noexcept;

struct PlannedDisk
{
    std::vector<WorkloadProfile> workloads;
    double used_space = 0.0;
    double used_iops = 0.0;
    double write_rate = 0.0;
};

struct PlanRejection
{
    std::string workload;
    std::string reason;
};

struct DistributeResult
{
    std::vector<PlannedDisk> disks;
    std::vector<std::size_t> choices; // disk index per accepted workload, in order
    std::vector<PlanRejection> rejected;
};

/// Places each workload, in the given order, on the disk whose addition
/// leaves the zone's write rates with the lowest CV. A disk is added only
/// when no existing one has room.
DistributeResult distribute(std::span<const WorkloadProfile> workloads, const DiskSpec& spec);

struct PlanZone
{
    std::string label;
    std::vector<PlannedDisk> disks;
};

struct OfflinePlan
{
    OfflineApproach approach = OfflineApproach::grouping;
    std::vector<PlanZone> zones;
    std::size_t disk_count = 0;
    std::optional<double> tco_rate; // $/GB of the plan; empty when nothing is placed
    double lambda_high = 0.0;
    double lambda_low = 0.0;
    std::vector<PlanRejection> rejected;
};

/// Chooses the approach with the switch predicate and builds the plan.
OfflinePlan offline_plan(std::span<const WorkloadProfile> workloads, const OfflineConfig& cfg);

/// Same as offline_plan with the approach fixed by the caller.
OfflinePlan offline_plan_with(std::span<const WorkloadProfile> workloads, const OfflineConfig& cfg,
                              OfflineApproach approach);

/// Simulates the plan with every workload arriving at t = 0 and returns
/// the resulting report.
SimulationReport simulate_plan(const OfflinePlan& plan, const DiskSpec& spec);

/// Per-GB cost of serving two workload classes greedily (both classes mixed
/// on two disks) minus grouping them (one disk each). Rates are
/// lambda/(1+k) for the high class and k*lambda/(1+k) for the low class.
/// Positive means grouping is cheaper.
double diff_tco_grouping_vs_greedy(double c_i, double c_m, double w_limit, const WafModel& waf, double s_h,
                                   double s_l, double lambda_total, double k);

} // namespace ssdtco
