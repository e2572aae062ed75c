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

#include "ssdtco/tco.hpp"

#include <array>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ssdtco {

enum class PolicyKind
{
    minTCO_v1,      // pool TCO over expected lifetimes
    minTCO_v2,      // pool TCO per day of lifetime
    minTCO_v3,      // pool TCO per logical GB
    minTCO_Perf,    // v3 plus utilization reward and imbalance penalty
    maxRemCycle,
    minWAF,
    minRate,
    minWorkloadNum,
};

inline constexpr std::array kAllPolicies{
    PolicyKind::minTCO_v1,   PolicyKind::minTCO_v2, PolicyKind::minTCO_v3, PolicyKind::minTCO_Perf,
    PolicyKind::maxRemCycle, PolicyKind::minWAF,    PolicyKind::minRate,   PolicyKind::minWorkloadNum,
};

std::string to_string(PolicyKind kind);
PolicyKind parse_policy_kind(std::string_view text);

// weight(r) = intercept + slope * r
struct AffineWeight
{
    double intercept = 0.0;
    double slope = 0.0;

    double operator()(double ratio) const noexcept { return intercept + slope * ratio; }
};

// f is evaluated at the workload's write ratio, the others at its read ratio.
struct PerfWeights
{
    AffineWeight f, g_s, g_p, h_s, h_p;

    /// Constant weights, e.g. {5,1,1,3,3}.
    static PerfWeights constant(const std::array<double, 5>& values);
    PerfWeights scaled(double factor) const;
};

struct Thresholds
{
    double tco = std::numeric_limits<double>::infinity(); // $/GB
    double space = 1.0;
    double iops = 1.0;
};

struct PolicySpec
{
    PolicyKind kind = PolicyKind::minTCO_v3;
    std::optional<PerfWeights> weights; // required for minTCO_Perf only
    Thresholds thresholds;
};

/// Throws ErrorKind::config when weights and kind disagree or thresholds are out of range.
void validate(const PolicySpec& policy);

enum class Resource
{
    space,
    iops,
};

struct AllocationDecision
{
    std::string workload;
    std::optional<std::size_t> disk; // index into the pool; empty when rejected
    double score = 0.0;
    bool warmup = false;
    std::map<std::string, double> candidate_scores;
    std::string reason; // why a workload was rejected

    bool rejected() const noexcept { return !disk.has_value(); }
};

/// IOPS the workload would consume on the disk (write penalty applied).
double workload_iops_on(const DiskState& disk, const WorkloadProfile& w) noexcept;
double used_space(const DiskState& disk) noexcept;
double used_iops(const DiskState& disk) noexcept;

/// Remaining space and IOPS both cover the workload.
bool fits(const DiskState& disk, const WorkloadProfile& w) noexcept;

// Per-disk terms of the pool objective when workload w is placed on disk k
// at time now. Disks without workloads (other than k) are left out.
struct DiskOutlook
{
    std::size_t index = 0;
    double cost = 0.0;     // capex + opex over the expected lifetime
    double lifetime = 0.0; // days
    double data = 0.0;     // logical GB until expected death
};

std::vector<DiskOutlook> hypothesize(std::span<const DiskState> pool, std::size_t k,
                                     const WorkloadProfile& w, double now);

/// Pool-wide data-averaged TCO rate if w lands on disk k. Pure.
double tco_assign(std::span<const DiskState> pool, std::size_t k, const WorkloadProfile& w, double now);

/// Utilization of disk i when disk k takes w.
double utilization(std::span<const DiskState> pool, std::size_t i, std::size_t k,
                   const WorkloadProfile& w, Resource resource);

/// Mean utilization over live disks when disk k takes w.
double utilization_mean(std::span<const DiskState> pool, std::size_t k,
                        const WorkloadProfile& w, Resource resource);

/// Population coefficient of variation of utilization over live disks; 0 when the mean is 0.
double utilization_cv(std::span<const DiskState> pool, std::size_t k,
                      const WorkloadProfile& w, Resource resource);

struct EnhancedCost
{
    double score = 0.0;
    bool feasible = true;
};

EnhancedCost enhanced_cost(std::span<const DiskState> pool, std::size_t k, const WorkloadProfile& w,
                           double now, const PerfWeights& weights, const Thresholds& thresholds);

/// Objective the policy minimizes for candidate k; nullopt when the
/// candidate violates the policy's thresholds.
std::optional<double> policy_score(const PolicySpec& policy, std::span<const DiskState> pool,
                                   std::size_t k, const WorkloadProfile& w, double now);

/// Empty live disks are filled first, lowest index that fits. Otherwise the
/// feasible live disk with the lowest score wins; ties (1e-12 relative) go
/// to the lowest index. Pure: the pool is not modified.
AllocationDecision allocate_online(const PolicySpec& policy, std::span<const DiskState> pool,
                                   const WorkloadProfile& w, double now);

/// a and b equal up to the allocator's tie tolerance.
bool scores_tied(double a, double b) noexcept;

} // namespace ssdtco
