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

#include <string>
#include <string_view>

namespace ssdtco {

enum class RaidMode
{
    raid0, // strip
    raid1, // mirror
    raid5, // pair
};

std::string to_string(RaidMode mode);
RaidMode parse_raid_mode(std::string_view text);

/// IOPS consumed per write I/O: 1, 2 or 4.
double write_penalty(RaidMode mode) noexcept;

/// Conversion factors from one member disk to an n-disk set.
struct RaidFactors
{
    double capex = 1.0;
    double opex = 1.0;
    double write_limit = 1.0;
    double waf = 1.0;
    double write_rate = 1.0;
    double space = 1.0;
    double write_penalty = 1.0;

    bool operator==(const RaidFactors&) const = default;
};

/// Throws ErrorKind::mode_constraint when n is invalid for the mode:
/// RAID-1 needs an even count, RAID-5 at least three members.
RaidFactors raid_factors(RaidMode mode, int n);

struct PseudoDisk
{
    DiskSpec member_spec;
    int n = 1;
    RaidMode mode = RaidMode::raid0;
    RaidFactors factors;
    DiskSpec derived; // allocatable parameters of the whole set
};

PseudoDisk raid_pseudo_disk(const DiskSpec& spec, int n, RaidMode mode);

/// IOPS a workload consumes once each write costs \p penalty I/Os.
double penalized_iops(const WorkloadProfile& w, double penalty) noexcept;

double raid_effective_iops(const WorkloadProfile& w, RaidMode mode) noexcept;

double raid_effective_write_rate(const WorkloadProfile& w, const PseudoDisk& pd) noexcept;

/// Allocatable state for a pseudo-disk; write multiplier and penalty are
/// carried on the state so the TCO and utilization math apply unchanged.
DiskState make_disk_state(const PseudoDisk& pd);

} // namespace ssdtco
