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
#include "ssdtco/cli.hpp"
#include "ssdtco/error.hpp"
#include "ssdtco/io.hpp"
#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ssdtco;
using ssdtco::testing::data_dir;
using ssdtco::testing::scratch_dir;
namespace fs = std::filesystem;

namespace {

struct Run
{
    int code = -1;
    std::string out, err;
};

Run cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "ssdtco");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string data(const std::string& name)
{
    return (data_dir() / name).string();
}

std::string policy(const std::string& kind)
{
    return (data_dir() / "policies" / (kind + ".json")).string();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
    {
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            f.push_back(cell);
        if (!line.empty() && line.back() == ',')
            f.emplace_back();
        rows.push_back(f);
    }
    return rows;
}

} // namespace

TEST(Cli, ExitCodeMapping)
{
    EXPECT_EQ(exit_code_for(ErrorKind::config), 2);
    EXPECT_EQ(exit_code_for(ErrorKind::mode_constraint), 2);
    EXPECT_EQ(exit_code_for(ErrorKind::malformed_input), 3);
    EXPECT_EQ(exit_code_for(ErrorKind::insufficient_data), 3);
    EXPECT_EQ(exit_code_for(ErrorKind::io), 3);
    EXPECT_EQ(exit_code_for(ErrorKind::invariant), 4);
}

TEST(Cli, UsageErrorsAreConfigErrors)
{
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"dance"}).code, 2);
    EXPECT_EQ(cli({"simulate", "--pool", data("pool.json")}).code, 2);
    EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, FitWafOnFlatThenDropSamples)
{
    const auto out = scratch_dir("fit");
    const auto r = cli({"fit-waf", "--samples", data("waf_samples.csv"), "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("turning point"), std::string::npos);
    const auto model = waf_model_from_json(read_json(out / "model.json"));
    EXPECT_GE(model.turning_point, 0.4);
    EXPECT_LE(model.turning_point, 0.6);
    EXPECT_TRUE(model_violations(model).empty());
    const auto fit = read_json(out / "fit.json");
    EXPECT_LT(fit.at("max_abs_residual").get<double>(), 0.1);
    EXPECT_TRUE(fs::exists(out / "manifest.json"));
}

TEST(Cli, FitWafNoiselessRoundTrip)
{
    const auto dir = scratch_dir("fit");
    const auto m = ssdtco::testing::canonical_model();
    std::string csv = "seq_ratio,waf\n";
    for (int i = 0; i <= 20; ++i)
        csv += format_number(i / 20.0) + "," + format_number(waf_eval(m, i / 20.0)) + "\n";
    write_text(dir / "s.csv", csv);
    ASSERT_EQ(cli({"fit-waf", "--samples", (dir / "s.csv").string(), "--out", (dir / "o").string()}).code, 0);
    const auto back = waf_model_from_json(read_json(dir / "o" / "model.json"));
    for (int i = 0; i <= 100; ++i)
        EXPECT_NEAR(waf_eval(back, i / 100.0), waf_eval(m, i / 100.0), 1e-6);
}

TEST(Cli, FitWafUnderDetermined)
{
    const auto dir = scratch_dir("fit");
    write_text(dir / "s.csv", "seq_ratio,waf\n0.1,3\n0.9,1.5\n");
    const auto r = cli({"fit-waf", "--samples", (dir / "s.csv").string(), "--out", (dir / "o").string()});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("insufficient-data"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(dir / "o"));
}

TEST(Cli, SimulateEmptyWorkloads)
{
    const auto dir = scratch_dir("sim");
    write_text(dir / "w.csv", "id,arrival_days,seq_ratio,write_rate_gb_day,peak_iops,write_ratio,working_set_gb\n");
    const auto r = cli({"simulate", "--workloads", (dir / "w.csv").string(), "--pool", data("pool.json"),
                        "--policy", policy("minTCO_v3"), "--out", (dir / "o").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = read_json(dir / "o" / "report.json");
    EXPECT_TRUE(report.at("final_tco_rate").is_null());
    EXPECT_EQ(report.at("accepted"), 0);
}

TEST(Cli, SimulateMissingPoolLeavesNoOutput)
{
    const auto dir = scratch_dir("sim");
    const auto r = cli({"simulate", "--workloads", data("workloads.csv"), "--pool", (dir / "nope.json").string(),
                        "--policy", policy("minTCO_v3"), "--out", (dir / "o").string()});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("io"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir / "o"));
}

TEST(Cli, SimulateBadPolicyIsConfigError)
{
    const auto dir = scratch_dir("sim");
    write_text(dir / "p.json", R"({"kind": "minTCO_Perf"})");
    const auto r = cli({"simulate", "--workloads", data("workloads.csv"), "--pool", data("pool.json"), "--policy",
                        (dir / "p.json").string(), "--out", (dir / "o").string()});
    EXPECT_EQ(r.code, 2) << r.err;
    EXPECT_FALSE(fs::exists(dir / "o"));
}

TEST(Cli, SimulateRaidModeConstraint)
{
    const auto dir = scratch_dir("sim");
    const auto r = cli({"simulate", "--workloads", data("workloads.csv"), "--pool", data("pool.json"), "--policy",
                        policy("minTCO_v3"), "--raid", "raid6:3", "--out", (dir / "o").string()});
    EXPECT_EQ(r.code, 2) << r.err;
}

TEST(Cli, SimulateDoesNotTouchInputs)
{
    const auto dir = scratch_dir("sim");
    const auto before = read_text(data("workloads.csv")) + read_text(data("pool.json"));
    ASSERT_EQ(cli({"simulate", "--workloads", data("workloads.csv"), "--pool", data("pool.json"), "--policy",
                   policy("minTCO_Perf"), "--out", dir.string()})
                  .code,
              0);
    EXPECT_EQ(read_text(data("workloads.csv")) + read_text(data("pool.json")), before);
    for (const char* f : {"report.json", "series.csv", "decisions.csv", "manifest.json"})
        EXPECT_TRUE(fs::exists(dir / f)) << f;
}

TEST(Cli, CompareV3AgainstMaxRemCycle)
{
    const auto dir = scratch_dir("cmp");
    const auto r = cli({"compare", "--workloads", data("workloads.csv"), "--pool", data("pool.json"), "--policy",
                        policy("maxRemCycle"), "--policy", policy("minTCO_v3"), "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(read_text(dir / "compare.csv"));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1][0], "minTCO_v3");
    EXPECT_EQ(rows[2][0], "maxRemCycle");
    EXPECT_LT(std::stod(rows[1][1]), std::stod(rows[2][1]));
}

TEST(Cli, CompareEightPoliciesSortedByRate)
{
    const auto dir = scratch_dir("cmp");
    std::vector<std::string> args{"compare", "--workloads", data("workloads.csv"), "--pool", data("pool.json"),
                                  "--out", dir.string()};
    for (auto kind : kAllPolicies)
    {
        args.push_back("--policy");
        args.push_back(policy(to_string(kind)));
    }
    const auto r = cli(args);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(read_text(dir / "compare.csv"));
    ASSERT_EQ(rows.size(), 9u);
    EXPECT_EQ(rows[0][0], "policy");
    for (std::size_t i = 2; i < rows.size(); ++i)
        EXPECT_LE(std::stod(rows[i - 1][1]), std::stod(rows[i][1]));
    EXPECT_EQ(r.out, read_text(dir / "compare.csv"));
}

TEST(Cli, CompareIdenticalReportsHasZeroDeltas)
{
    const auto dir = scratch_dir("cmp");
    ASSERT_EQ(cli({"simulate", "--workloads", data("workloads.csv"), "--pool", data("pool.json"), "--policy",
                   policy("minRate"), "--out", (dir / "a").string()})
                  .code,
              0);
    const auto report = (dir / "a" / "report.json").string();
    const auto r = cli({"compare", "--report", report, "--report", report, "--out", (dir / "c").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(read_text(dir / "c" / "compare.csv"));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(std::stod(rows[1][2]), 0.0);
    EXPECT_EQ(std::stod(rows[2][2]), 0.0);
}

TEST(Cli, CompareMismatchedWorkloadSets)
{
    const auto dir = scratch_dir("cmp");
    write_text(dir / "one.csv", "id,arrival_days,seq_ratio,write_rate_gb_day,peak_iops,write_ratio,working_set_gb\n"
                                "x,1,0.5,2,3,0.5,4\n");
    ASSERT_EQ(cli({"simulate", "--workloads", data("workloads.csv"), "--pool", data("pool.json"), "--policy",
                   policy("minRate"), "--out", (dir / "a").string()})
                  .code,
              0);
    ASSERT_EQ(cli({"simulate", "--workloads", (dir / "one.csv").string(), "--pool", data("pool.json"), "--policy",
                   policy("minRate"), "--out", (dir / "b").string()})
                  .code,
              0);
    const auto r = cli({"compare", "--report", (dir / "a" / "report.json").string(), "--report",
                        (dir / "b" / "report.json").string(), "--out", (dir / "c").string()});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("workload"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(dir / "c"));
}

TEST(Cli, OfflinePlan)
{
    const auto dir = scratch_dir("plan");
    for (const char* approach : {"auto", "grouping", "greedy"})
    {
        const auto out = dir / approach;
        const auto r = cli({"offline-plan", "--workloads", data("workloads.csv"), "--offline-config",
                            data("offline.json"), "--approach", approach, "--out", out.string()});
        ASSERT_EQ(r.code, 0) << r.err;
        const auto plan = read_json(out / "plan.json");
        EXPECT_GE(plan.at("disk_count").get<int>(), 1);
        if (std::string(approach) != "auto")
            EXPECT_EQ(plan.at("approach"), approach);
        EXPECT_TRUE(fs::exists(out / "assignments.csv"));
    }
    EXPECT_EQ(cli({"offline-plan", "--workloads", data("workloads.csv"), "--offline-config", data("offline.json"),
                   "--approach", "random", "--out", (dir / "x").string()})
                  .code,
              2);
}

TEST(Cli, ProfileTraces)
{
    const auto dir = scratch_dir("profile");
    std::string trace;
    for (int i = 0; i < 1000; ++i)
        trace += std::to_string(128166372000000000ull + 10000000ull * i) + ",mds,0," + (i % 4 ? "Write" : "Read") +
                 "," + std::to_string(4096ull * 8 * i) + ",32768,100\n";
    write_text(dir / "mds_x.csv", trace);
    const auto r = cli({"profile", "--trace", (dir / "mds_x.csv").string(), "--out", (dir / "o").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ws = read_workloads_csv(dir / "o" / "workloads.csv");
    ASSERT_EQ(ws.size(), 1u);
    EXPECT_EQ(ws[0].id, "mds_x");
    EXPECT_DOUBLE_EQ(ws[0].write_ratio, 0.75);
    EXPECT_EQ(cli({"profile", "--trace", (dir / "mds_x.csv").string(), "--layout", "blk", "--out",
                   (dir / "p").string()})
                  .code,
              2);
}

TEST(Cli, ReplayReproducesReportBytes)
{
    const auto dir = scratch_dir("replay");
    ASSERT_EQ(cli({"simulate", "--workloads", data("workloads.csv"), "--pool", data("pool.json"), "--policy",
                   policy("minTCO_Perf"), "--seed", "3", "--out", (dir / "a").string()})
                  .code,
              0);
    const auto r = cli({"replay", "--manifest", (dir / "a" / "manifest.json").string(), "--out", (dir / "b").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* f : {"report.json", "series.csv", "decisions.csv"})
        EXPECT_EQ(read_text(dir / "a" / f), read_text(dir / "b" / f)) << f;
    const auto m = read_json(dir / "b" / "manifest.json");
    EXPECT_EQ(m.at("subcommand"), "simulate");
    EXPECT_EQ(m.at("seed"), 3);
}

TEST(Cli, SynthWorkloads)
{
    const auto dir = scratch_dir("synth");
    const auto r = cli({"synth-workloads", "--count", "12", "--seed", "4", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(read_workloads_csv(dir / "workloads.csv").size(), 12u);
}
