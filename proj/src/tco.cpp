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
#include "ssdtco/tco.hpp"

#include "ssdtco/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ssdtco {

namespace {

constexpr double kTimeTolerance = 1e-9;

bool in_unit(double v) noexcept { return v >= 0.0 && v <= 1.0; }

} // namespace

void validate(const DiskSpec& spec)
{
    const auto fail = [&](const char* what) {
        throw Error(ErrorKind::config, "disk '" + spec.id + "': " + what);
    };
    if (spec.cost_purchase < 0.0 || spec.cost_setup < 0.0 || spec.rate_power < 0.0 || spec.rate_labor < 0.0)
        fail("costs must be non-negative");
    if (!(spec.write_limit > 0.0))
        fail("write_limit must be positive");
    if (!(spec.capacity_space > 0.0))
        fail("capacity_space must be positive");
    if (!(spec.capacity_iops > 0.0))
        fail("capacity_iops must be positive");
    if (const auto v = model_violations(spec.waf_model); !v.empty())
        fail(("waf_model: " + v.front()).c_str());
}

void validate(const WorkloadProfile& w)
{
    const auto fail = [&](const char* what) {
        throw Error(ErrorKind::malformed_input, "workload '" + w.id + "': " + what);
    };
    if (!in_unit(w.seq_ratio) || !in_unit(w.write_ratio))
        fail("ratios must lie in [0,1]");
    if (!(w.write_rate >= 0.0) || !(w.working_set >= 0.0) || !(w.peak_iops >= 0.0))
        fail("rates and sizes must be non-negative");
    if (!std::isfinite(w.arrival))
        fail("arrival must be finite");
}

DiskState make_disk_state(const DiskSpec& spec)
{
    DiskState d;
    d.spec = spec;
    return d;
}

double combined_write_rate(std::span<const WorkloadProfile> workloads) noexcept
{
    double sum = 0.0;
    for (const auto& w : workloads)
        sum += w.write_rate;
    return sum;
}

double combined_seq_ratio(std::span<const WorkloadProfile> workloads)
{
    double weighted = 0.0;
    double total = 0.0;
    for (const auto& w : workloads)
    {
        weighted += w.write_rate * w.seq_ratio;
        total += w.write_rate;
    }
    if (!(total > 0.0))
        throw Error(ErrorKind::undefined_ratio, "combined sequential ratio needs a positive write rate");
    // Rounding can push the mean a hair outside [min S, max S].
    return std::clamp(weighted / total, 0.0, 1.0);
}

double accumulate_wornout(std::span<const EpochRecord> epochs)
{
    double total = 0.0;
    for (size_t i = 0; i < epochs.size(); ++i)
    {
        const auto& e = epochs[i];
        if (!(e.t_end > e.t_start))
            throw Error(ErrorKind::malformed_history, "epoch with non-positive duration");
        if (i > 0 && e.t_start < epochs[i - 1].t_end - kTimeTolerance)
            throw Error(ErrorKind::malformed_history, "overlapping epochs");
        if (e.logical_rate < 0.0 || e.waf < 1.0 - 1e-12)
            throw Error(ErrorKind::malformed_history, "epoch with negative rate or WAF below 1");
        total += e.physical_volume();
    }
    return total;
}

double disk_logical_rate(const DiskState& disk) noexcept
{
    return disk.write_multiplier * combined_write_rate(disk.assigned);
}

double disk_seq_ratio(const DiskState& disk)
{
    return combined_seq_ratio(disk.assigned);
}

double disk_waf(const DiskState& disk)
{
    return waf_eval(disk.spec.waf_model, disk_seq_ratio(disk));
}

double wornout_at(const DiskState& disk, double t)
{
    if (!disk.warm() || !disk.alive() || t <= disk.last_arrival)
        return disk.wornout;
    const double w = disk.wornout + disk_logical_rate(disk) * disk_waf(disk) * (t - disk.last_arrival);
    return std::min(w, disk.spec.write_limit);
}

double expected_lifetime(const DiskState& disk, double now)
{
    if (!disk.warm())
        throw Error(ErrorKind::warmup_violation,
                    "disk '" + disk.spec.id + "' has no workloads; its lifetime is unbounded");
    if (disk.dead_time)
        return *disk.dead_time - disk.init_time;
    if (now < disk.last_arrival - kTimeTolerance)
        throw Error(ErrorKind::domain, "lifetime evaluated before the disk's last arrival");

    const double worked = disk.last_arrival - disk.init_time;
    const double remaining = disk.spec.write_limit - disk.wornout;
    if (remaining <= 0.0)
        return worked;
    const double physical_rate = disk_logical_rate(disk) * disk_waf(disk);
    if (!(physical_rate > 0.0))
        throw Error(ErrorKind::undefined_ratio, "disk '" + disk.spec.id + "' has zero write rate");
    return worked + remaining / physical_rate;
}

double expected_death_time(const DiskState& disk)
{
    return disk.init_time + expected_lifetime(disk, disk.last_arrival);
}

double disk_logical_writes(const DiskState& disk)
{
    const double death = expected_death_time(disk);
    double total = 0.0;
    for (const auto& w : disk.assigned)
        total += w.write_rate * std::max(0.0, death - w.arrival);
    return total;
}

double total_logical_writes(std::span<const WorkloadProfile> workloads,
                            const std::map<std::string, double>& death_times)
{
    double total = 0.0;
    for (const auto& w : workloads)
    {
        const auto it = death_times.find(w.id);
        if (it == death_times.end())
            throw Error(ErrorKind::incomplete_assignment, "no host death time for workload '" + w.id + "'");
        if (it->second < w.arrival - kTimeTolerance)
            throw Error(ErrorKind::domain, "host of workload '" + w.id + "' dies before it arrives");
        total += w.write_rate * std::max(0.0, it->second - w.arrival);
    }
    return total;
}

namespace {

double disk_lifetime_cost(const DiskState& d)
{
    return d.spec.capex() + d.spec.opex_rate() * expected_lifetime(d, d.last_arrival);
}

} // namespace

double tco_lifetime(std::span<const DiskState> pool)
{
    double total = 0.0;
    for (const auto& d : pool)
        total += disk_lifetime_cost(d);
    return total;
}

double tco_per_day(std::span<const DiskState> pool)
{
    double cost = 0.0;
    double days = 0.0;
    for (const auto& d : pool)
    {
        const double life = expected_lifetime(d, d.last_arrival);
        cost += d.spec.capex() + d.spec.opex_rate() * life;
        days += life;
    }
    if (!(days > 0.0))
        throw Error(ErrorKind::undefined_rate, "pool has zero total lifetime");
    return cost / days;
}

double data_avg_tco_rate(std::span<const DiskState> pool, double total_logical)
{
    if (!(total_logical > 0.0))
        throw Error(ErrorKind::undefined_rate, "data-averaged TCO rate needs positive logical writes");
    return tco_lifetime(pool) / total_logical;
}

double pool_data_avg_tco_rate(std::span<const DiskState> pool)
{
    double data = 0.0;
    for (const auto& d : pool)
        data += disk_logical_writes(d);
    return data_avg_tco_rate(pool, data);
}

namespace {

void close_epoch(DiskState& disk, double t_end)
{
    const EpochRecord e{disk.last_arrival, t_end, disk_logical_rate(disk), disk_seq_ratio(disk),
                        disk_waf(disk)};
    disk.wornout = std::min(disk.wornout + e.physical_volume(), disk.spec.write_limit);
    disk.epochs.push_back(e);
    disk.last_arrival = t_end;
}

} // namespace

void assign_workload(DiskState& disk, const WorkloadProfile& w, double t)
{
    if (!disk.alive())
        throw Error(ErrorKind::invariant, "workload assigned to dead disk '" + disk.spec.id + "'");
    if (disk.warm())
    {
        if (t < disk.last_arrival - kTimeTolerance)
            throw Error(ErrorKind::invariant, "assignment earlier than the open epoch on '" + disk.spec.id + "'");
        if (t > disk.last_arrival)
            close_epoch(disk, t);
    }
    else
    {
        disk.init_time = t;
        disk.last_arrival = t;
    }
    disk.assigned.push_back(w);
}

bool advance_disk(DiskState& disk, double t)
{
    if (!disk.alive() || !disk.warm())
        return false;
    const double physical_rate = disk_logical_rate(disk) * disk_waf(disk);
    if (!(physical_rate > 0.0))
        return false;
    const double death = disk.last_arrival + (disk.spec.write_limit - disk.wornout) / physical_rate;
    if (death > t)
        return false;
    if (death > disk.last_arrival)
        close_epoch(disk, death);
    disk.wornout = disk.spec.write_limit;
    disk.dead_time = death;
    return true;
}

void close_open_epoch(DiskState& disk, double t)
{
    if (disk.alive() && disk.warm() && t > disk.last_arrival)
        close_epoch(disk, t);
}

} // namespace ssdtco
