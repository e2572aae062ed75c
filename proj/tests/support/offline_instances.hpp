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

#include "ssdtco/offline.hpp"
#include "support/fixtures.hpp"

#include <random>
#include <string>
#include <vector>

namespace ssdtco::testing {

// Homogeneous 500 GB disks with the canonical concave WAF curve.
inline OfflineConfig desk_offline_config()
{
    OfflineConfig cfg;
    DiskSpec d;
    d.id = "main";
    d.cost_purchase = 800;
    d.cost_setup = 50;
    d.rate_power = 0.1;
    d.rate_labor = 0.2;
    d.write_limit = 1.5e6;
    d.capacity_space = 500;
    d.capacity_iops = 50000;
    d.waf_model = canonical_model();
    cfg.disk_spec = d;
    return cfg;
}

// Twenty workloads alternating between the high (S >= 0.6) and low groups.
// The low group is rescaled so its total rate is k times the high group's.
inline std::vector<WorkloadProfile> two_group_workloads(std::uint64_t seed, double k)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<WorkloadProfile> out;
    double high = 0.0, low = 0.0;
    for (int i = 0; i < 20; ++i)
    {
        const bool is_high = i % 2 == 0;
        auto w = make_workload("w" + std::to_string(i), 0.0, is_high ? 0.6 + 0.4 * u(rng) : 0.6 * u(rng),
                               50 + 200 * u(rng), 100, 100, 0.8);
        (is_high ? high : low) += w.write_rate;
        out.push_back(w);
    }
    for (auto& w : out)
        if (w.seq_ratio < 0.6)
            w.write_rate *= k * high / low;
    return out;
}

// Balanced instance: k drawn from [0.95, 1.05].
inline std::vector<WorkloadProfile> balanced_workloads(std::uint64_t seed)
{
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    const double k = 0.95 + 0.1 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return two_group_workloads(seed, k);
}

} // namespace ssdtco::testing
