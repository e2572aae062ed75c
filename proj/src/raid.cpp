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
#include "ssdtco/raid.hpp"

#include "ssdtco/error.hpp"

#include <algorithm>
#include <cctype>

namespace ssdtco {

std::string to_string(RaidMode mode)
{
    switch (mode)
    {
    case RaidMode::raid0: return "RAID0";
    case RaidMode::raid1: return "RAID1";
    case RaidMode::raid5: return "RAID5";
    }
    return "RAID?";
}

RaidMode parse_raid_mode(std::string_view text)
{
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    s.erase(std::remove(s.begin(), s.end(), '-'), s.end());
    if (s == "raid0" || s == "0" || s == "strip")
        return RaidMode::raid0;
    if (s == "raid1" || s == "1" || s == "mirror")
        return RaidMode::raid1;
    if (s == "raid5" || s == "5" || s == "pair")
        return RaidMode::raid5;
    throw Error(ErrorKind::config, "unknown RAID mode '" + std::string(text) + "'");
}

double write_penalty(RaidMode mode) noexcept
{
    switch (mode)
    {
    case RaidMode::raid0: return 1.0;
    case RaidMode::raid1: return 2.0;
    case RaidMode::raid5: return 4.0;
    }
    return 1.0;
}

RaidFactors raid_factors(RaidMode mode, int n)
{
    if (n < 1)
        throw Error(ErrorKind::mode_constraint, "a RAID set needs at least one disk");
    const double nd = static_cast<double>(n);
    RaidFactors f;
    f.capex = nd;
    f.opex = nd;
    f.write_limit = nd;
    f.waf = 1.0;
    f.write_penalty = write_penalty(mode);
    switch (mode)
    {
    case RaidMode::raid0:
        f.write_rate = 1.0;
        f.space = nd;
        break;
    case RaidMode::raid1:
        if (n % 2 != 0)
            throw Error(ErrorKind::mode_constraint, "RAID1 requires an even number of disks");
        // Mirrors two equal RAID-0 halves whatever n is.
        f.write_rate = 2.0;
        f.space = nd / 2.0;
        break;
    case RaidMode::raid5:
        if (n < 3)
            throw Error(ErrorKind::mode_constraint, "RAID5 requires at least three disks");
        f.write_rate = nd / (nd - 1.0);
        f.space = nd - 1.0;
        break;
    }
    return f;
}

PseudoDisk raid_pseudo_disk(const DiskSpec& spec, int n, RaidMode mode)
{
    PseudoDisk pd;
    pd.member_spec = spec;
    pd.n = n;
    pd.mode = mode;
    pd.factors = raid_factors(mode, n);

    DiskSpec& d = pd.derived;
    d = spec;
    d.cost_purchase = spec.cost_purchase * pd.factors.capex;
    d.cost_setup = spec.cost_setup * pd.factors.capex;
    d.rate_power = spec.rate_power * pd.factors.opex;
    d.rate_labor = spec.rate_labor * pd.factors.opex;
    d.write_limit = spec.write_limit * pd.factors.write_limit;
    d.capacity_space = spec.capacity_space * pd.factors.space;
    // Penalty is charged on the demand side, so raw IOPS add up.
    d.capacity_iops = spec.capacity_iops * static_cast<double>(n);
    return pd;
}

double penalized_iops(const WorkloadProfile& w, double penalty) noexcept
{
    return w.peak_iops * w.write_ratio * penalty + w.peak_iops * w.read_ratio();
}

double raid_effective_iops(const WorkloadProfile& w, RaidMode mode) noexcept
{
    return penalized_iops(w, write_penalty(mode));
}

double raid_effective_write_rate(const WorkloadProfile& w, const PseudoDisk& pd) noexcept
{
    return w.write_rate * pd.factors.write_rate;
}

DiskState make_disk_state(const PseudoDisk& pd)
{
    DiskState d = make_disk_state(pd.derived);
    d.write_multiplier = pd.factors.write_rate;
    d.write_penalty = pd.factors.write_penalty;
    return d;
}

} // namespace ssdtco
