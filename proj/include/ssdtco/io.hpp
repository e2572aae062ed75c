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
#include "ssdtco/offline.hpp"
#include "ssdtco/raid.hpp"
#include "ssdtco/sim.hpp"
#include "ssdtco/tco.hpp"
#include "ssdtco/waf.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ssdtco {

using Json = nlohmann::ordered_json;

/// Shortest text that reads back to the same double.
std::string format_number(double v);

std::string read_text(const std::filesystem::path& path);
/// Writes with LF endings, replacing any existing file.
void write_text(const std::filesystem::path& path, const std::string& text);

Json read_json(const std::filesystem::path& path);
std::string dump_json(const Json& j);

// Workload CSV: id,arrival_days,seq_ratio,write_rate_gb_day,peak_iops,write_ratio,working_set_gb
std::vector<WorkloadProfile> parse_workloads_csv(std::istream& in);
std::vector<WorkloadProfile> read_workloads_csv(const std::filesystem::path& path);
std::string workloads_csv(const std::vector<WorkloadProfile>& workloads);

// WAF samples CSV: seq_ratio,waf
std::vector<WafSample> parse_waf_samples_csv(std::istream& in);
std::vector<WafSample> read_waf_samples_csv(const std::filesystem::path& path);

Json to_json(const WafModel& m);
WafModel waf_model_from_json(const Json& j);

Json to_json(const DiskSpec& spec);
DiskSpec disk_spec_from_json(const Json& j);

struct RaidSetting
{
    RaidMode mode = RaidMode::raid0;
    int n = 1;
};

/// "raid1:4" style text.
RaidSetting parse_raid_setting(const std::string& text);

/// Pool JSON: array of disk specs, each with an optional raid {mode, n}.
/// A non-empty override turns every entry into that RAID set.
std::vector<DiskState> pool_from_json(const Json& j, const std::optional<RaidSetting>& override = std::nullopt);

struct ArrivalResampling
{
    double mean_interarrival = 1.0; // days
};

// Policy file: the placement rule plus run parameters.
struct PolicyConfig
{
    PolicySpec policy;
    double horizon = kDefaultHorizonDays;
    std::optional<ArrivalResampling> arrivals;
};

PolicyConfig policy_config_from_json(const Json& j);
Json to_json(const PolicyConfig& cfg);

OfflineConfig offline_config_from_json(const Json& j);

Json to_json(const SimulationReport& report);
/// Only the fields needed to tabulate a comparison.
SimulationReport report_summary_from_json(const Json& j);

std::string series_csv(const SimulationReport& report);
std::string decisions_csv(const SimulationReport& report);
std::string comparison_csv(const std::vector<ComparisonRow>& rows);

Json to_json(const OfflinePlan& plan);
std::string plan_assignments_csv(const OfflinePlan& plan);

} // namespace ssdtco
