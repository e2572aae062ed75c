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

#include "ssdtco/error.hpp"
#include "ssdtco/io.hpp"
#include "ssdtco/tco.hpp"
#include "ssdtco/waf.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace ssdtco::testing {

// Smooth, concave, 3 at S <= 0.5 falling to 1 at S = 1.
inline WafModel canonical_model()
{
    return WafModel{0.0, 3.0, -8.0, 8.0, 1.0, 0.5};
}

// Same endpoints with a slope break at the turning point.
inline WafModel kinked_model()
{
    return WafModel{0.0, 3.0, -4.0, 2.0, 3.0, 0.5};
}

inline DiskSpec make_spec(std::string id, double capex = 1000.0, double opex = 2.0, double write_limit = 1000.0,
                          WafModel model = WafModel::constant(2.0), double space = 1600.0, double iops = 50000.0)
{
    DiskSpec s;
    s.id = std::move(id);
    s.cost_purchase = capex;
    s.cost_setup = 0.0;
    s.rate_power = opex;
    s.rate_labor = 0.0;
    s.write_limit = write_limit;
    s.capacity_space = space;
    s.capacity_iops = iops;
    s.waf_model = model;
    return s;
}

inline WorkloadProfile make_workload(std::string id, double arrival, double seq, double rate,
                                     double working_set = 10.0, double peak_iops = 100.0, double write_ratio = 0.5)
{
    WorkloadProfile w;
    w.id = std::move(id);
    w.arrival = arrival;
    w.seq_ratio = seq;
    w.write_rate = rate;
    w.peak_iops = peak_iops;
    w.write_ratio = write_ratio;
    w.working_set = working_set;
    return w;
}

inline ErrorKind kind_of(const std::function<void()>& f)
{
    try
    {
        f();
    }
    catch (const Error& e)
    {
        return e.kind();
    }
    ADD_FAILURE() << "no ssdtco::Error thrown";
    return ErrorKind::invariant;
}

inline bool near_rel(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

inline std::filesystem::path data_dir()
{
    return std::filesystem::path(SSDTCO_DATA_DIR);
}

// Empty directory under the system temp dir, unique per test.
inline std::filesystem::path scratch_dir(const std::string& name)
{
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    std::string tag = name;
    if (info)
        tag = std::string(info->test_suite_name()) + "." + info->name() + "." + name;
    const auto dir = std::filesystem::temp_directory_path() / "ssdtco_tests" / tag;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// Six heterogeneous disks and forty workloads shaped like the reference traces.
inline std::vector<DiskState> scenario_pool()
{
    return pool_from_json(read_json(data_dir() / "pool.json"));
}

inline std::vector<WorkloadProfile> scenario_workloads()
{
    return read_workloads_csv(data_dir() / "workloads.csv");
}

// Random valid model with a strictly negative left slope, concave right
// branch and a right slope at the turning point no steeper upward than the
// left one.
inline WafModel random_concave_model(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (true)
    {
        WafModel m;
        m.turning_point = 0.2 + 0.6 * u(rng);
        m.beta = 1.5 + 4.0 * u(rng);
        m.alpha = -(0.01 + 2.0 * u(rng));
        m.eta = -(0.01 + 10.0 * u(rng));
        const double right_slope = m.alpha - 4.0 * u(rng);
        const double eps = m.turning_point;
        const double v = m.alpha * eps + m.beta;
        m.mu = right_slope - 2.0 * m.eta * eps;
        m.gamma = v - m.eta * eps * eps - m.mu * eps;
        if (waf_eval_unchecked(m, 1.0) >= 1.0 && model_violations(m).empty())
            return m;
    }
}

} // namespace ssdtco::testing
