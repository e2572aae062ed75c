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

#include "ssdtco/allocator.hpp"
#include "ssdtco/tco.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ssdtco {

inline constexpr double kDefaultHorizonDays = 525.0;

struct SimConfig
{
    PolicySpec policy;
    double horizon = kDefaultHorizonDays; // days
    std::uint64_t seed = 0;               // only used for synthetic arrivals
};

/// Throws ErrorKind::config for a non-positive horizon or a bad policy.
void validate(const SimConfig& cfg);

// Pool state sampled right after an arrival is processed.
struct SeriesPoint
{
    double time = 0.0;
    std::optional<double> tco_rate; // expected-lifetime $/GB over warm disks
    double util_space = 0.0;
    double util_iops = 0.0;
    double cv_space = 0.0;
    double cv_iops = 0.0;
};

struct Rejection
{
    double time = 0.0;
    std::string workload;
    std::string reason;
};

// Workload stopped because its host ran out of endurance.
struct Termination
{
    double time = 0.0;
    std::string workload;
    std::string disk;
};

struct DecisionRecord
{
    double time = 0.0;
    std::string workload;
    std::string disk; // empty when rejected
    double score = 0.0;
    bool rejected = false;
};

struct SimulationReport
{
    std::string policy;
    double horizon = 0.0;
    std::vector<std::string> workload_ids; // sorted
    std::vector<SeriesPoint> series;
    std::optional<double> final_tco_rate;    // expected lifetimes, the allocator's view
    std::optional<double> realized_tco_rate; // costs and data actually accrued by the horizon
    double util_space_mean = 0.0;
    double util_iops_mean = 0.0;
    double cv_space = 0.0;
    double cv_iops = 0.0;
    double cv_workload_count = 0.0;
    std::vector<Rejection> rejections;
    std::vector<Termination> terminations;
    std::vector<DecisionRecord> decisions;
    std::vector<DiskState> disks; // ledgers closed at the horizon
    double total_logical_gb = 0.0;    // up to expected death of each host
    double realized_logical_gb = 0.0; // up to min(death, horizon)
    std::size_t accepted = 0;
};

/// Online run: arrivals in time order (stable for equal times), deaths
/// detected before each decision, report assembled at the horizon.
SimulationReport run_simulation(const SimConfig& cfg, std::vector<WorkloadProfile> workloads,
                                std::vector<DiskState> pool);

/// Replays a fixed assignment: pairs of (workload, pool index), placed in
/// arrival order without consulting a policy.
SimulationReport run_fixed_assignment(std::vector<std::pair<WorkloadProfile, std::size_t>> assignment,
                                      std::vector<DiskState> pool, double horizon = kDefaultHorizonDays,
                                      std::string label = "fixed");

/// Headline metrics in a fixed order.
std::vector<std::pair<std::string, double>> metrics_summary(const SimulationReport& report);

struct ComparisonRow
{
    std::string policy;
    std::optional<double> final_tco_rate;
    std::optional<double> delta; // final_tco_rate minus the first report's
    double util_space_mean = 0.0;
    double util_iops_mean = 0.0;
    double cv_space = 0.0;
    double cv_iops = 0.0;
    std::size_t rejections = 0;
};

/// One row per report sorted by $/GB (undefined rates last); deltas are
/// relative to the first report. Throws ErrorKind::malformed_input when the
/// reports cover different workload sets or fewer than two are given.
std::vector<ComparisonRow> compare_reports(const std::vector<SimulationReport>& reports);

/// Exponential inter-arrival times accumulated from 0. Sorted ascending.
std::vector<double> synth_arrivals(std::size_t count, double mean_interarrival, std::uint64_t seed);

/// Utilization of each live disk.
std::vector<double> live_utilizations(std::span<const DiskState> pool, Resource resource);

/// Population coefficient of variation; 0 for an empty set or zero mean.
double coefficient_of_variation(std::span<const double> values) noexcept;

} // namespace ssdtco
