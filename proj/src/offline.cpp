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
#include "ssdtco/offline.hpp"

#include "ssdtco/error.hpp"

#include <algorithm>
#include <cmath>

namespace ssdtco {

namespace {

constexpr double kCapacityTolerance = 1e-9;
constexpr double kTieTolerance = 1e-12;

bool fits(const PlannedDisk& d, const WorkloadProfile& w, const DiskSpec& spec)
{
    return d.used_space + w.working_set <= spec.capacity_space + kCapacityTolerance &&
           d.used_iops + w.peak_iops <= spec.capacity_iops + kCapacityTolerance;
}

void add(PlannedDisk& d, const WorkloadProfile& w)
{
    d.workloads.push_back(w);
    d.used_space += w.working_set;
    d.used_iops += w.peak_iops;
    d.write_rate += w.write_rate;
}

double rate_cv_with(const std::vector<PlannedDisk>& disks, std::size_t k, const WorkloadProfile& w)
{
    std::vector<double> rates;
    rates.reserve(disks.size());
    for (std::size_t i = 0; i < disks.size(); ++i)
        rates.push_back(disks[i].write_rate + (i == k ? w.write_rate : 0.0));
    return coefficient_of_variation(rates);
}

std::string zone_label(std::size_t index, std::size_t count)
{
    if (count == 2)
        return index == 0 ? "high" : "low";
    return "zone" + std::to_string(index);
}

} // namespace

void validate(const OfflineConfig& cfg)
{
    for (std::size_t i = 0; i < cfg.seq_thresholds.size(); ++i)
    {
        const double t = cfg.seq_thresholds[i];
        if (!(t > 0.0 && t < 1.0))
            throw Error(ErrorKind::config, "sequential ratio thresholds must lie in (0,1)");
        if (i > 0 && !(t < cfg.seq_thresholds[i - 1]))
            throw Error(ErrorKind::config, "sequential ratio thresholds must be strictly decreasing");
    }
    if (cfg.seq_thresholds.empty())
        throw Error(ErrorKind::config, "at least one sequential ratio threshold is required");
    if (!(cfg.switch_delta >= 0.0 && cfg.switch_delta <= 1.0))
        throw Error(ErrorKind::config, "switch_delta must lie in [0,1]");
    validate(cfg.disk_spec);
}

std::string to_string(OfflineApproach approach)
{
    return approach == OfflineApproach::grouping ? "grouping" : "greedy";
}

std::vector<WorkloadGroup> split_by_seq(std::span<const WorkloadProfile> workloads,
                                        std::span<const double> thresholds)
{
    const std::size_t n = thresholds.size() + 1;
    std::vector<WorkloadGroup> groups(n);
    for (std::size_t g = 0; g < n; ++g)
    {
        groups[g].label = zone_label(g, n);
        groups[g].upper = g == 0 ? 1.0 : thresholds[g - 1];
        groups[g].lower = g + 1 == n ? 0.0 : thresholds[g];
    }
    for (const auto& w : workloads)
    {
        std::size_t g = 0;
        while (g < thresholds.size() && w.seq_ratio < thresholds[g])
            ++g;
        groups[g].workloads.push_back(w);
        groups[g].write_rate += w.write_rate;
    }
    return groups;
}

bool prefers_greedy(double lambda_high, double lambda_low, double delta) noexcept
{
    const double total = lambda_high + lambda_low;
    if (!(total > 0.0))
        return false;
    return std::abs(lambda_high - lambda_low) / total >= delta;
}

DistributeResult distribute(std::span<const WorkloadProfile> workloads, const DiskSpec& spec)
{
    DistributeResult out;
    const PlannedDisk empty;
    for (const auto& w : workloads)
    {
        if (!fits(empty, w, spec))
        {
            out.rejected.push_back({w.id, "even an empty disk cannot run this workload"});
            continue;
        }
        std::optional<std::size_t> best;
        double best_cv = 0.0;
        for (std::size_t k = 0; k < out.disks.size(); ++k)
        {
            if (!fits(out.disks[k], w, spec))
                continue;
            const double cv = rate_cv_with(out.disks, k, w);
            const bool tied = std::abs(cv - best_cv) <= kTieTolerance * std::max(std::abs(cv), std::abs(best_cv));
            if (!best || (cv < best_cv && !tied))
            {
                best = k;
                best_cv = cv;
            }
        }
        if (!best)
        {
            out.disks.emplace_back();
            best = out.disks.size() - 1;
        }
        add(out.disks[*best], w);
        out.choices.push_back(*best);
    }
    return out;
}

OfflinePlan offline_plan(std::span<const WorkloadProfile> workloads, const OfflineConfig& cfg)
{
    validate(cfg);
    const auto primary = split_by_seq(workloads, std::span<const double>(cfg.seq_thresholds.data(), 1));
    const auto approach = prefers_greedy(primary[0].write_rate, primary[1].write_rate, cfg.switch_delta)
                              ? OfflineApproach::greedy
                              : OfflineApproach::grouping;
    return offline_plan_with(workloads, cfg, approach);
}

OfflinePlan offline_plan_with(std::span<const WorkloadProfile> workloads, const OfflineConfig& cfg,
                              OfflineApproach approach)
{
    validate(cfg);
    OfflinePlan plan;
    plan.approach = approach;
    // The switch predicate only looks at the split by the first threshold.
    const auto primary = split_by_seq(workloads, std::span<const double>(cfg.seq_thresholds.data(), 1));
    plan.lambda_high = primary[0].write_rate;
    plan.lambda_low = primary[1].write_rate;

    const auto place = [&](std::string label, const std::vector<WorkloadProfile>& ordered) {
        auto result = distribute(ordered, cfg.disk_spec);
        plan.disk_count += result.disks.size();
        plan.rejected.insert(plan.rejected.end(), result.rejected.begin(), result.rejected.end());
        plan.zones.push_back(PlanZone{std::move(label), std::move(result.disks)});
    };

    if (approach == OfflineApproach::greedy)
    {
        place("pool", std::vector<WorkloadProfile>(workloads.begin(), workloads.end()));
    }
    else
    {
        for (auto& group : split_by_seq(workloads, cfg.seq_thresholds))
        {
            std::stable_sort(group.workloads.begin(), group.workloads.end(),
                             [](const WorkloadProfile& a, const WorkloadProfile& b) { return a.seq_ratio > b.seq_ratio; });
            place(group.label, group.workloads);
        }
    }

    if (plan.disk_count > 0)
        plan.tco_rate = simulate_plan(plan, cfg.disk_spec).final_tco_rate;
    return plan;
}

SimulationReport simulate_plan(const OfflinePlan& plan, const DiskSpec& spec)
{
    std::vector<DiskState> pool;
    std::vector<std::pair<WorkloadProfile, std::size_t>> assignment;
    for (const auto& zone : plan.zones)
    {
        for (const auto& disk : zone.disks)
        {
            DiskSpec s = spec;
            s.id = zone.label + "-" + std::to_string(pool.size());
            pool.push_back(make_disk_state(s));
            for (WorkloadProfile w : disk.workloads)
            {
                w.arrival = 0.0;
                assignment.emplace_back(std::move(w), pool.size() - 1);
            }
        }
    }
    if (pool.empty())
        throw Error(ErrorKind::undefined_rate, "plan provisions no disks");
    return run_fixed_assignment(std::move(assignment), std::move(pool), kDefaultHorizonDays,
                                to_string(plan.approach));
}

double diff_tco_grouping_vs_greedy(double c_i, double c_m, double w_limit, const WafModel& waf, double s_h,
                                   double s_l, double lambda_total, double k)
{
    if (!(k > 0.0))
        throw Error(ErrorKind::domain, "rate ratio k must be positive");
    if (!(lambda_total > 0.0) || !(w_limit > 0.0))
        throw Error(ErrorKind::domain, "total rate and write limit must be positive");

    const double lambda_h = lambda_total / (1.0 + k);
    const double lambda_l = k * lambda_total / (1.0 + k);
    const double s_mix = s_h / (k + 1.0) + k * s_l / (k + 1.0);
    const double a_h = waf_eval(waf, s_h);
    const double a_l = waf_eval(waf, s_l);
    const double a_mix = waf_eval(waf, s_mix);

    // Greedy: two disks, each taking half of every class.
    const double lambda_m = lambda_total / 2.0;
    const double greedy = 2.0 * (c_i + c_m * w_limit / (lambda_m * a_mix)) / (2.0 * w_limit / a_mix);

    // Grouping: one disk per class.
    const double grouping = (2.0 * c_i + c_m * w_limit * (1.0 / (lambda_h * a_h) + 1.0 / (lambda_l * a_l))) /
                            (w_limit / a_h + w_limit / a_l);
    return greedy - grouping;
}

} // namespace ssdtco
