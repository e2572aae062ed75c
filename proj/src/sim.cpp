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
#include "ssdtco/sim.hpp"

#include "ssdtco/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace ssdtco {

void validate(const SimConfig& cfg)
{
    if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon))
        throw Error(ErrorKind::config, "horizon must be positive");
    validate(cfg.policy);
}

std::vector<double> live_utilizations(std::span<const DiskState> pool, Resource resource)
{
    std::vector<double> u;
    for (const auto& d : pool)
    {
        if (!d.alive())
            continue;
        u.push_back(resource == Resource::space ? used_space(d) / d.spec.capacity_space
                                                : used_iops(d) / d.spec.capacity_iops);
    }
    return u;
}

double coefficient_of_variation(std::span<const double> values) noexcept
{
    if (values.empty())
        return 0.0;
    double mean = 0.0;
    for (double v : values)
        mean += v;
    mean /= static_cast<double>(values.size());
    if (mean == 0.0)
        return 0.0;
    double ss = 0.0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size())) / mean;
}

namespace {

double mean(const std::vector<double>& v)
{
    if (v.empty())
        return 0.0;
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

std::vector<DiskState> warm_disks(const std::vector<DiskState>& pool)
{
    std::vector<DiskState> warm;
    for (const auto& d : pool)
    {
        if (d.warm())
            warm.push_back(d);
    }
    return warm;
}

std::optional<double> expected_rate(const std::vector<DiskState>& pool)
{
    const auto warm = warm_disks(pool);
    if (warm.empty())
        return std::nullopt;
    double data = 0.0;
    for (const auto& d : warm)
        data += disk_logical_writes(d);
    if (!(data > 0.0))
        return std::nullopt;
    return tco_lifetime(warm) / data;
}

SeriesPoint sample(const std::vector<DiskState>& pool, double t)
{
    SeriesPoint p;
    p.time = t;
    p.tco_rate = expected_rate(pool);
    const auto space = live_utilizations(pool, Resource::space);
    const auto iops = live_utilizations(pool, Resource::iops);
    p.util_space = mean(space);
    p.util_iops = mean(iops);
    p.cv_space = coefficient_of_variation(space);
    p.cv_iops = coefficient_of_variation(iops);
    return p;
}

class Engine
{
  public:
    Engine(std::vector<DiskState> pool, double horizon, std::string label)
    {
        report_.policy = std::move(label);
        report_.horizon = horizon;
        pool_ = std::move(pool);
        if (pool_.empty())
            throw Error(ErrorKind::config, "pool is empty");
        for (const auto& d : pool_)
            validate(d.spec);
    }

    // Moves every disk to time t, terminating the residents of disks that die.
    void advance(double t)
    {
        for (auto& d : pool_)
        {
            if (advance_disk(d, t))
            {
                for (const auto& w : d.assigned)
                    report_.terminations.push_back(Termination{*d.dead_time, w.id, d.spec.id});
            }
        }
    }

    // Checks that apply to every arrival; returns a reason to drop it.
    std::optional<std::string> screen(const WorkloadProfile& w) const
    {
        if (w.arrival > report_.horizon)
            return "arrives after the horizon";
        if (!(w.write_rate > 0.0))
            return "write rate is not positive";
        return std::nullopt;
    }

    void reject(double t, const WorkloadProfile& w, const std::string& reason, double score = 0.0)
    {
        report_.rejections.push_back(Rejection{t, w.id, reason});
        report_.decisions.push_back(DecisionRecord{t, w.id, "", score, true});
    }

    void commit(double t, const WorkloadProfile& w, std::size_t disk, double score)
    {
        assign_workload(pool_[disk], w, t);
        ++report_.accepted;
        report_.decisions.push_back(DecisionRecord{t, w.id, pool_[disk].spec.id, score, false});
    }

    void sample_now(double t) { report_.series.push_back(sample(pool_, t)); }

    std::vector<DiskState>& pool() { return pool_; }

    SimulationReport finish(const std::vector<WorkloadProfile>& workloads)
    {
        const double horizon = report_.horizon;
        advance(horizon);
        // Expected death times are unaffected by where the open epoch is cut.
        for (auto& d : pool_)
            close_open_epoch(d, horizon);

        std::set<std::string> ids;
        for (const auto& w : workloads)
            ids.insert(w.id);
        report_.workload_ids.assign(ids.begin(), ids.end());

        report_.final_tco_rate = expected_rate(pool_);

        // Expected data through the tco module's own accounting.
        std::vector<WorkloadProfile> placed;
        std::map<std::string, double> deaths;
        for (const auto& d : pool_)
        {
            if (!d.warm())
                continue;
            const double death = expected_death_time(d);
            for (const auto& w : d.assigned)
            {
                placed.push_back(w);
                deaths[w.id] = death;
            }
        }
        report_.total_logical_gb = placed.empty() ? 0.0 : total_logical_writes(placed, deaths);

        double realized_cost = 0.0;
        double realized_data = 0.0;
        for (const auto& d : pool_)
        {
            if (!d.warm())
                continue;
            const double end = d.dead_time ? std::min(*d.dead_time, horizon) : horizon;
            realized_cost += d.spec.capex() + d.spec.opex_rate() * std::max(0.0, end - d.init_time);
            for (const auto& w : d.assigned)
                realized_data += w.write_rate * std::max(0.0, end - w.arrival);
        }
        report_.realized_logical_gb = realized_data;
        if (realized_data > 0.0)
            report_.realized_tco_rate = realized_cost / realized_data;

        const auto space = live_utilizations(pool_, Resource::space);
        const auto iops = live_utilizations(pool_, Resource::iops);
        std::vector<double> counts;
        for (const auto& d : pool_)
        {
            if (d.alive())
                counts.push_back(static_cast<double>(d.assigned.size()));
        }
        report_.util_space_mean = mean(space);
        report_.util_iops_mean = mean(iops);
        report_.cv_space = coefficient_of_variation(space);
        report_.cv_iops = coefficient_of_variation(iops);
        report_.cv_workload_count = coefficient_of_variation(counts);
        report_.disks = pool_;
        return std::move(report_);
    }

  private:
    std::vector<DiskState> pool_;
    SimulationReport report_;
};

void sort_by_arrival(std::vector<WorkloadProfile>& workloads)
{
    std::stable_sort(workloads.begin(), workloads.end(),
                     [](const WorkloadProfile& a, const WorkloadProfile& b) { return a.arrival < b.arrival; });
}

void check_unique_ids(const std::vector<WorkloadProfile>& workloads)
{
    std::set<std::string> seen;
    for (const auto& w : workloads)
    {
        validate(w);
        if (!seen.insert(w.id).second)
            throw Error(ErrorKind::malformed_input, "duplicate workload id '" + w.id + "'");
    }
}

} // namespace

SimulationReport run_simulation(const SimConfig& cfg, std::vector<WorkloadProfile> workloads,
                                std::vector<DiskState> pool)
{
    validate(cfg);
    check_unique_ids(workloads);
    sort_by_arrival(workloads);

    Engine engine(std::move(pool), cfg.horizon, to_string(cfg.policy.kind));
    for (const auto& w : workloads)
    {
        const double t = w.arrival;
        if (const auto reason = engine.screen(w))
        {
            engine.reject(t, w, *reason);
            continue;
        }
        engine.advance(t);
        const auto decision = allocate_online(cfg.policy, engine.pool(), w, t);
        if (decision.rejected())
            engine.reject(t, w, decision.reason, decision.score);
        else
            engine.commit(t, w, *decision.disk, decision.score);
        engine.sample_now(t);
    }
    return engine.finish(workloads);
}

SimulationReport run_fixed_assignment(std::vector<std::pair<WorkloadProfile, std::size_t>> assignment,
                                      std::vector<DiskState> pool, double horizon, std::string label)
{
    if (!(horizon > 0.0))
        throw Error(ErrorKind::config, "horizon must be positive");
    std::vector<WorkloadProfile> workloads;
    for (const auto& [w, disk] : assignment)
    {
        if (disk >= pool.size())
            throw Error(ErrorKind::domain, "assignment targets a disk outside the pool");
        workloads.push_back(w);
    }
    check_unique_ids(workloads);
    std::stable_sort(assignment.begin(), assignment.end(),
                     [](const auto& a, const auto& b) { return a.first.arrival < b.first.arrival; });

    Engine engine(std::move(pool), horizon, std::move(label));
    for (const auto& [w, disk] : assignment)
    {
        const double t = w.arrival;
        if (const auto reason = engine.screen(w))
        {
            engine.reject(t, w, *reason);
            continue;
        }
        engine.advance(t);
        const DiskState& target = engine.pool()[disk];
        if (!target.alive())
            engine.reject(t, w, "assigned disk is dead");
        else if (!fits(target, w))
            engine.reject(t, w, "assigned disk lacks space or IOPS");
        else
            engine.commit(t, w, disk, 0.0);
        engine.sample_now(t);
    }
    return engine.finish(workloads);
}

std::vector<std::pair<std::string, double>> metrics_summary(const SimulationReport& report)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {
        {"final_tco_rate", report.final_tco_rate.value_or(nan)},
        {"realized_tco_rate", report.realized_tco_rate.value_or(nan)},
        {"util_space_mean", report.util_space_mean},
        {"util_iops_mean", report.util_iops_mean},
        {"cv_space", report.cv_space},
        {"cv_iops", report.cv_iops},
        {"cv_workload_count", report.cv_workload_count},
        {"rejections", static_cast<double>(report.rejections.size())},
        {"total_logical_gb", report.total_logical_gb},
    };
}

std::vector<ComparisonRow> compare_reports(const std::vector<SimulationReport>& reports)
{
    if (reports.size() < 2)
        throw Error(ErrorKind::malformed_input, "comparison needs at least two reports");
    for (const auto& r : reports)
    {
        if (r.workload_ids != reports.front().workload_ids)
            throw Error(ErrorKind::malformed_input, "reports '" + reports.front().policy + "' and '" + r.policy +
                                                        "' cover different workload sets");
    }
    const auto baseline = reports.front().final_tco_rate;
    std::vector<ComparisonRow> rows;
    for (const auto& r : reports)
    {
        ComparisonRow row;
        row.policy = r.policy;
        row.final_tco_rate = r.final_tco_rate;
        if (baseline && r.final_tco_rate)
            row.delta = *r.final_tco_rate - *baseline;
        row.util_space_mean = r.util_space_mean;
        row.util_iops_mean = r.util_iops_mean;
        row.cv_space = r.cv_space;
        row.cv_iops = r.cv_iops;
        row.rejections = r.rejections.size();
        rows.push_back(row);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
        if (a.final_tco_rate && b.final_tco_rate)
            return *a.final_tco_rate < *b.final_tco_rate;
        return a.final_tco_rate.has_value() && !b.final_tco_rate.has_value();
    });
    return rows;
}

std::vector<double> synth_arrivals(std::size_t count, double mean_interarrival, std::uint64_t seed)
{
    if (!(mean_interarrival > 0.0))
        throw Error(ErrorKind::domain, "mean inter-arrival time must be positive");
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> gap(1.0 / mean_interarrival);
    std::vector<double> times;
    times.reserve(count);
    double t = 0.0;
    for (std::size_t i = 0; i < count; ++i)
    {
        t += gap(rng);
        times.push_back(t);
    }
    return times;
}

} // namespace ssdtco
