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
#include "ssdtco/allocator.hpp"

#include "ssdtco/error.hpp"
#include "ssdtco/raid.hpp"

#include <algorithm>
#include <cmath>

namespace ssdtco {

namespace {

constexpr double kCapacityTolerance = 1e-9;
constexpr double kTieTolerance = 1e-12;

struct KindName
{
    PolicyKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {PolicyKind::minTCO_v1, "minTCO_v1"},     {PolicyKind::minTCO_v2, "minTCO_v2"},
    {PolicyKind::minTCO_v3, "minTCO_v3"},     {PolicyKind::minTCO_Perf, "minTCO_Perf"},
    {PolicyKind::maxRemCycle, "maxRemCycle"}, {PolicyKind::minWAF, "minWAF"},
    {PolicyKind::minRate, "minRate"},         {PolicyKind::minWorkloadNum, "minWorkloadNum"},
};

} // namespace

std::string to_string(PolicyKind kind)
{
    for (const auto& kn : kKindNames)
    {
        if (kn.kind == kind)
            return kn.name;
    }
    return "unknown";
}

PolicyKind parse_policy_kind(std::string_view text)
{
    for (const auto& kn : kKindNames)
    {
        if (text == kn.name)
            return kn.kind;
    }
    throw Error(ErrorKind::config, "unknown policy kind '" + std::string(text) + "'");
}

PerfWeights PerfWeights::constant(const std::array<double, 5>& v)
{
    return PerfWeights{{v[0], 0.0}, {v[1], 0.0}, {v[2], 0.0}, {v[3], 0.0}, {v[4], 0.0}};
}

PerfWeights PerfWeights::scaled(double factor) const
{
    const auto s = [factor](AffineWeight a) { return AffineWeight{a.intercept * factor, a.slope * factor}; };
    return PerfWeights{s(f), s(g_s), s(g_p), s(h_s), s(h_p)};
}

void validate(const PolicySpec& policy)
{
    if (policy.kind == PolicyKind::minTCO_Perf && !policy.weights)
        throw Error(ErrorKind::config, "minTCO_Perf requires weights");
    if (policy.kind != PolicyKind::minTCO_Perf && policy.weights)
        throw Error(ErrorKind::config, "weights are only meaningful for minTCO_Perf");
    const auto& th = policy.thresholds;
    if (!(th.tco > 0.0) || !(th.space > 0.0 && th.space <= 1.0) || !(th.iops > 0.0 && th.iops <= 1.0))
        throw Error(ErrorKind::config, "thresholds must lie in (0,inf) x (0,1] x (0,1]");
    if (policy.weights)
    {
        const auto& w = *policy.weights;
        for (const AffineWeight& a : {w.f, w.g_s, w.g_p, w.h_s, w.h_p})
        {
            // Non-negative over the whole ratio range [0,1].
            if (a(0.0) < 0.0 || a(1.0) < 0.0)
                throw Error(ErrorKind::config, "Perf weight functions must be non-negative on [0,1]");
        }
    }
}

double workload_iops_on(const DiskState& disk, const WorkloadProfile& w) noexcept
{
    return penalized_iops(w, disk.write_penalty);
}

double used_space(const DiskState& disk) noexcept
{
    double s = 0.0;
    for (const auto& w : disk.assigned)
        s += w.working_set;
    return s;
}

double used_iops(const DiskState& disk) noexcept
{
    double s = 0.0;
    for (const auto& w : disk.assigned)
        s += workload_iops_on(disk, w);
    return s;
}

bool fits(const DiskState& disk, const WorkloadProfile& w) noexcept
{
    const double space_left = disk.spec.capacity_space - used_space(disk);
    const double iops_left = disk.spec.capacity_iops - used_iops(disk);
    return w.working_set <= space_left + kCapacityTolerance &&
           workload_iops_on(disk, w) <= iops_left + kCapacityTolerance;
}

bool scores_tied(double a, double b) noexcept
{
    if (a == b)
        return true;
    return std::abs(a - b) <= kTieTolerance * std::max(std::abs(a), std::abs(b));
}

namespace {

// Candidate disk with w added at time now. The open epoch is closed at now,
// so the working phase ends at now and the remaining endurance is spent at
// the merged rate from there on.
DiskOutlook outlook_with(const DiskState& d, std::size_t index, const WorkloadProfile& w, double now)
{
    double rate_sum = w.write_rate;
    double seq_weighted = w.write_rate * w.seq_ratio;
    for (const auto& j : d.assigned)
    {
        rate_sum += j.write_rate;
        seq_weighted += j.write_rate * j.seq_ratio;
    }
    if (!(rate_sum > 0.0))
        throw Error(ErrorKind::undefined_ratio, "hypothesized disk has zero write rate");

    const double init = d.warm() ? d.init_time : now;
    const double worn = d.warm() ? wornout_at(d, now) : 0.0;
    const double seq = std::clamp(seq_weighted / rate_sum, 0.0, 1.0);
    const double physical_rate = d.write_multiplier * rate_sum * waf_eval(d.spec.waf_model, seq);

    const double working = now - init;
    const double remaining = std::max(0.0, d.spec.write_limit - worn) / physical_rate;
    const double death = now + remaining;

    DiskOutlook o;
    o.index = index;
    o.lifetime = working + remaining;
    o.cost = d.spec.capex() + d.spec.opex_rate() * o.lifetime;
    // Existing workloads write until the new death time; the new one for
    // the whole remaining phase.
    for (const auto& j : d.assigned)
        o.data += j.write_rate * std::max(0.0, death - j.arrival);
    o.data += w.write_rate * remaining;
    return o;
}

DiskOutlook outlook_as_is(const DiskState& d, std::size_t index)
{
    DiskOutlook o;
    o.index = index;
    o.lifetime = expected_lifetime(d, d.last_arrival);
    o.cost = d.spec.capex() + d.spec.opex_rate() * o.lifetime;
    o.data = disk_logical_writes(d);
    return o;
}

struct Totals
{
    double cost = 0.0;
    double lifetime = 0.0;
    double data = 0.0;
};

Totals sum(std::span<const DiskOutlook> rows)
{
    Totals t;
    for (const auto& r : rows)
    {
        t.cost += r.cost;
        t.lifetime += r.lifetime;
        t.data += r.data;
    }
    return t;
}

void check_index(std::span<const DiskState> pool, std::size_t k)
{
    if (k >= pool.size())
        throw Error(ErrorKind::domain, "disk index out of range");
}

} // namespace

std::vector<DiskOutlook> hypothesize(std::span<const DiskState> pool, std::size_t k,
                                     const WorkloadProfile& w, double now)
{
    check_index(pool, k);
    if (!pool[k].alive())
        throw Error(ErrorKind::domain, "cannot place a workload on a dead disk");
    std::vector<DiskOutlook> rows;
    rows.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i)
    {
        if (i == k)
            rows.push_back(outlook_with(pool[i], i, w, now));
        else if (pool[i].warm())
            rows.push_back(outlook_as_is(pool[i], i));
    }
    return rows;
}

double tco_assign(std::span<const DiskState> pool, std::size_t k, const WorkloadProfile& w, double now)
{
    const Totals t = sum(hypothesize(pool, k, w, now));
    if (!(t.data > 0.0))
        throw Error(ErrorKind::undefined_rate, "hypothesized pool serves no logical data");
    return t.cost / t.data;
}

double utilization(std::span<const DiskState> pool, std::size_t i, std::size_t k,
                   const WorkloadProfile& w, Resource resource)
{
    check_index(pool, i);
    const DiskState& d = pool[i];
    const bool space = resource == Resource::space;
    double used = space ? used_space(d) : used_iops(d);
    if (i == k)
        used += space ? w.working_set : workload_iops_on(d, w);
    return used / (space ? d.spec.capacity_space : d.spec.capacity_iops);
}

namespace {

std::vector<double> live_utilizations(std::span<const DiskState> pool, std::size_t k,
                                      const WorkloadProfile& w, Resource resource)
{
    std::vector<double> u;
    for (std::size_t i = 0; i < pool.size(); ++i)
    {
        if (pool[i].alive())
            u.push_back(utilization(pool, i, k, w, resource));
    }
    return u;
}

double mean_of(const std::vector<double>& v)
{
    if (v.empty())
        return 0.0;
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

double cv_of(const std::vector<double>& v)
{
    const double mean = mean_of(v);
    if (mean == 0.0)
        return 0.0;
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size())) / mean;
}

} // namespace

double utilization_mean(std::span<const DiskState> pool, std::size_t k, const WorkloadProfile& w,
                        Resource resource)
{
    return mean_of(live_utilizations(pool, k, w, resource));
}

double utilization_cv(std::span<const DiskState> pool, std::size_t k, const WorkloadProfile& w,
                      Resource resource)
{
    return cv_of(live_utilizations(pool, k, w, resource));
}

EnhancedCost enhanced_cost(std::span<const DiskState> pool, std::size_t k, const WorkloadProfile& w,
                           double now, const PerfWeights& weights, const Thresholds& thresholds)
{
    const auto rows = hypothesize(pool, k, w, now);
    const Totals t = sum(rows);
    if (!(t.data > 0.0))
        throw Error(ErrorKind::undefined_rate, "hypothesized pool serves no logical data");
    const double tco = t.cost / t.data;

    const auto space = live_utilizations(pool, k, w, Resource::space);
    const auto iops = live_utilizations(pool, k, w, Resource::iops);
    const double rw = w.write_ratio;
    const double rr = w.read_ratio();

    EnhancedCost out;
    out.score = weights.f(rw) * tco - weights.g_s(rr) * mean_of(space) + weights.h_s(rr) * cv_of(space) -
                weights.g_p(rr) * mean_of(iops) + weights.h_p(rr) * cv_of(iops);

    // Thresholds bound the candidate disk's own rate and utilizations.
    const auto own = std::find_if(rows.begin(), rows.end(), [k](const DiskOutlook& r) { return r.index == k; });
    const double own_rate = own->data > 0.0 ? own->cost / own->data : std::numeric_limits<double>::infinity();
    out.feasible = own_rate <= thresholds.tco && utilization(pool, k, k, w, Resource::space) <= thresholds.space &&
                   utilization(pool, k, k, w, Resource::iops) <= thresholds.iops;
    return out;
}

std::optional<double> policy_score(const PolicySpec& policy, std::span<const DiskState> pool, std::size_t k,
                                   const WorkloadProfile& w, double now)
{
    check_index(pool, k);
    const DiskState& d = pool[k];
    switch (policy.kind)
    {
    case PolicyKind::minTCO_v1:
        return sum(hypothesize(pool, k, w, now)).cost;
    case PolicyKind::minTCO_v2: {
        const Totals t = sum(hypothesize(pool, k, w, now));
        return t.cost / t.lifetime;
    }
    case PolicyKind::minTCO_v3:
        return tco_assign(pool, k, w, now);
    case PolicyKind::minTCO_Perf: {
        if (!policy.weights)
            throw Error(ErrorKind::config, "minTCO_Perf requires weights");
        const auto ec = enhanced_cost(pool, k, w, now, *policy.weights, policy.thresholds);
        if (!ec.feasible)
            return std::nullopt;
        return ec.score;
    }
    case PolicyKind::maxRemCycle:
        return -(d.spec.write_limit - wornout_at(d, now));
    case PolicyKind::minWAF: {
        std::vector<WorkloadProfile> merged = d.assigned;
        merged.push_back(w);
        return waf_eval(d.spec.waf_model, combined_seq_ratio(merged));
    }
    case PolicyKind::minRate:
        return d.write_multiplier * (combined_write_rate(d.assigned) + w.write_rate);
    case PolicyKind::minWorkloadNum:
        return static_cast<double>(d.assigned.size() + 1);
    }
    throw Error(ErrorKind::invariant, "unhandled policy kind");
}

AllocationDecision allocate_online(const PolicySpec& policy, std::span<const DiskState> pool,
                                   const WorkloadProfile& w, double now)
{
    AllocationDecision decision;
    decision.workload = w.id;

    for (std::size_t i = 0; i < pool.size(); ++i)
    {
        const DiskState& d = pool[i];
        if (d.alive() && !d.warm() && fits(d, w))
        {
            decision.disk = i;
            decision.warmup = true;
            // Warm-up ignores thresholds; the score is informational.
            PolicySpec unbounded = policy;
            unbounded.thresholds = Thresholds{};
            decision.score = policy_score(unbounded, pool, i, w, now).value_or(0.0);
            decision.candidate_scores[d.spec.id] = decision.score;
            return decision;
        }
    }

    bool any_fit = false;
    std::optional<std::size_t> best;
    double best_score = 0.0;
    for (std::size_t k = 0; k < pool.size(); ++k)
    {
        const DiskState& d = pool[k];
        if (!d.alive() || !d.warm() || !fits(d, w))
            continue;
        any_fit = true;
        const auto score = policy_score(policy, pool, k, w, now);
        if (!score)
            continue;
        decision.candidate_scores[d.spec.id] = *score;
        if (!best || (*score < best_score && !scores_tied(*score, best_score)))
        {
            best = k;
            best_score = *score;
        }
    }

    if (!best)
    {
        decision.reason = any_fit ? "every candidate violates the policy thresholds"
                                  : "no live disk has enough free space and IOPS";
        return decision;
    }
    decision.disk = best;
    decision.score = best_score;
    return decision;
}

} // namespace ssdtco
