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
#include "ssdtco/error.hpp"
#include "ssdtco/io.hpp"
#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <sstream>

using namespace ssdtco;
using ssdtco::testing::kind_of;
using ssdtco::testing::make_workload;
using ssdtco::testing::scratch_dir;

namespace {

std::vector<WorkloadProfile> parse_workloads(const std::string& text)
{
    std::istringstream in(text);
    return parse_workloads_csv(in);
}

const std::string kHeader = "id,arrival_days,seq_ratio,write_rate_gb_day,peak_iops,write_ratio,working_set_gb\n";

} // namespace

TEST(FormatNumber, ShortestRoundTrip)
{
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(1500000), "1500000");
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 10000; ++i)
    {
        const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
        EXPECT_EQ(std::stod(format_number(v)), v);
    }
}

TEST(WorkloadsCsv, RoundTrip)
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<WorkloadProfile> ws;
    for (int i = 0; i < 50; ++i)
        ws.push_back(make_workload("w" + std::to_string(i), 500 * u(rng), u(rng), 100 * u(rng), 1000 * u(rng),
                                   u(rng)));
    const auto text = workloads_csv(ws);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    const auto back = parse_workloads(text);
    ASSERT_EQ(back.size(), ws.size());
    for (std::size_t i = 0; i < ws.size(); ++i)
    {
        EXPECT_EQ(back[i].id, ws[i].id);
        EXPECT_EQ(back[i].arrival, ws[i].arrival);
        EXPECT_EQ(back[i].seq_ratio, ws[i].seq_ratio);
        EXPECT_EQ(back[i].write_rate, ws[i].write_rate);
        EXPECT_EQ(back[i].peak_iops, ws[i].peak_iops);
        EXPECT_EQ(back[i].write_ratio, ws[i].write_ratio);
        EXPECT_EQ(back[i].working_set, ws[i].working_set);
    }
    EXPECT_EQ(workloads_csv(back), text);
}

TEST(WorkloadsCsv, ToleratesCrlfAndBlankLines)
{
    const auto ws = parse_workloads(kHeader + "\r\na, 1, 0.5, 2, 3, 0.5, 4\r\n\n");
    ASSERT_EQ(ws.size(), 1u);
    EXPECT_EQ(ws[0].id, "a");
    EXPECT_EQ(ws[0].working_set, 4.0);
    EXPECT_TRUE(parse_workloads(kHeader).empty());
}

TEST(WorkloadsCsv, Errors)
{
    EXPECT_EQ(kind_of([] { parse_workloads("id,arrival\n"); }), ErrorKind::malformed_input);
    EXPECT_EQ(kind_of([] { parse_workloads(kHeader + "a,1,0.5,2,3,0.5\n"); }), ErrorKind::malformed_input);
    EXPECT_EQ(kind_of([] { parse_workloads(kHeader + "a,1,half,2,3,0.5,4\n"); }), ErrorKind::malformed_input);
    EXPECT_EQ(kind_of([] { parse_workloads(kHeader + "a,1,0.5,2,3,0.5,nan\n"); }), ErrorKind::malformed_input);
    EXPECT_EQ(kind_of([] { parse_workloads(kHeader + "a,1,1.5,2,3,0.5,4\n"); }), ErrorKind::malformed_input);
    EXPECT_EQ(kind_of([] { parse_workloads(kHeader + "a,1,0.5,-2,3,0.5,4\n"); }), ErrorKind::malformed_input);
    EXPECT_EQ(kind_of([] { parse_workloads(kHeader + ",1,0.5,2,3,0.5,4\n"); }), ErrorKind::malformed_input);
    EXPECT_EQ(kind_of([] { parse_workloads(kHeader + "a,1,0.5,2,3,0.5,4\na,2,0.5,2,3,0.5,4\n"); }),
              ErrorKind::malformed_input);
    EXPECT_EQ(kind_of([] { read_workloads_csv("/nonexistent/w.csv"); }), ErrorKind::io);
}

TEST(WafSamplesCsv, ParsesShippedFile)
{
    const auto s = read_waf_samples_csv(ssdtco::testing::data_dir() / "waf_samples.csv");
    ASSERT_GE(s.size(), 10u);
    EXPECT_EQ(s.front().seq_ratio, 0.0);
    EXPECT_EQ(s.front().waf, 2.9947);
    std::istringstream bad("seq,waf\n0,1\n");
    EXPECT_EQ(kind_of([&] { parse_waf_samples_csv(bad); }), ErrorKind::malformed_input);
}

TEST(JsonIo, DiskSpecRoundTrip)
{
    const auto spec = ssdtco::testing::make_spec("d", 800, 0.3, 1.5e6, ssdtco::testing::canonical_model());
    const auto back = disk_spec_from_json(to_json(spec));
    EXPECT_EQ(to_json(back), to_json(spec));
    EXPECT_EQ(back.waf_model.mu, 8.0);
}

TEST(JsonIo, DiskSpecErrors)
{
    auto j = to_json(ssdtco::testing::make_spec("d"));
    auto extra = j;
    extra["colour"] = "blue";
    EXPECT_EQ(kind_of([&] { disk_spec_from_json(extra); }), ErrorKind::config);
    auto missing = j;
    missing.erase("write_limit");
    EXPECT_EQ(kind_of([&] { disk_spec_from_json(missing); }), ErrorKind::config);
    auto text = j;
    text["capacity_iops"] = "lots";
    EXPECT_EQ(kind_of([&] { disk_spec_from_json(text); }), ErrorKind::config);
    auto negative = j;
    negative["capacity_space"] = -1;
    EXPECT_EQ(kind_of([&] { disk_spec_from_json(negative); }), ErrorKind::config);
}

TEST(JsonIo, PoolWithRaidEntriesAndOverride)
{
    auto entry = to_json(ssdtco::testing::make_spec("set", 100, 1, 1000, WafModel::constant(2), 400, 6000));
    entry["raid"] = Json{{"mode", "raid1"}, {"n", 4}};
    const auto pool = pool_from_json(Json::array({entry}));
    ASSERT_EQ(pool.size(), 1u);
    EXPECT_EQ(pool[0].spec.capacity_iops, 24000.0);

    const auto forced = pool_from_json(Json::array({entry}), RaidSetting{RaidMode::raid0, 2});
    EXPECT_EQ(forced[0].spec.capacity_iops, 12000.0);

    EXPECT_EQ(parse_raid_setting("raid5:4").n, 4);
    EXPECT_EQ(parse_raid_setting("raid5:4").mode, RaidMode::raid5);
    EXPECT_EQ(kind_of([] { parse_raid_setting("raid5"); }), ErrorKind::config);
    EXPECT_EQ(kind_of([] { parse_raid_setting("raid5:four"); }), ErrorKind::config);
}

TEST(JsonIo, PoolErrors)
{
    const auto d = to_json(ssdtco::testing::make_spec("d"));
    EXPECT_EQ(kind_of([] { pool_from_json(Json::array()); }), ErrorKind::config);
    EXPECT_EQ(kind_of([&] { pool_from_json(d); }), ErrorKind::config);
    EXPECT_EQ(kind_of([&] { pool_from_json(Json::array({d, d})); }), ErrorKind::config);
    auto bad_raid = d;
    bad_raid["raid"] = Json{{"mode", "raid5"}, {"n", 2}};
    EXPECT_EQ(kind_of([&] { pool_from_json(Json::array({bad_raid})); }), ErrorKind::mode_constraint);
}

TEST(JsonIo, ShippedPoolAndPolicies)
{
    EXPECT_EQ(ssdtco::testing::scenario_pool().size(), 6u);
    std::size_t n = 0;
    for (const auto& entry : std::filesystem::directory_iterator(ssdtco::testing::data_dir() / "policies"))
    {
        const auto cfg = policy_config_from_json(read_json(entry.path()));
        EXPECT_EQ(to_string(cfg.policy.kind), entry.path().stem().string());
        EXPECT_EQ(cfg.horizon, 525.0);
        ++n;
    }
    EXPECT_EQ(n, 8u);
}

TEST(JsonIo, PolicyConfigRoundTrip)
{
    const auto cfg = policy_config_from_json(
        Json::parse(R"({"kind": "minTCO_Perf", "weights": {"f": 5, "g_s": {"intercept": 1, "slope": 0.5}},
                        "thresholds": {"tco": 2.5, "space": 0.9}, "horizon_days": 100,
                        "arrivals": {"mean_interarrival_days": 3}})"));
    EXPECT_EQ(cfg.policy.weights->f.intercept, 5.0);
    EXPECT_EQ(cfg.policy.weights->g_s.slope, 0.5);
    EXPECT_EQ(cfg.policy.weights->h_p.intercept, 0.0);
    EXPECT_EQ(cfg.policy.thresholds.tco, 2.5);
    EXPECT_EQ(cfg.policy.thresholds.iops, 1.0);
    ASSERT_TRUE(cfg.arrivals);
    EXPECT_EQ(cfg.arrivals->mean_interarrival, 3.0);
    const auto back = policy_config_from_json(to_json(cfg));
    EXPECT_EQ(to_json(back), to_json(cfg));
}

TEST(JsonIo, PolicyConfigErrors)
{
    const auto kind = [](const char* text) {
        return kind_of([&] { policy_config_from_json(Json::parse(text)); });
    };
    EXPECT_EQ(kind(R"({})"), ErrorKind::config);
    EXPECT_EQ(kind(R"({"kind": "fastest"})"), ErrorKind::config);
    EXPECT_EQ(kind(R"({"kind": "minRate", "speed": 1})"), ErrorKind::config);
    EXPECT_EQ(kind(R"({"kind": "minTCO_Perf", "weights": [1, 2, 3]})"), ErrorKind::config);
    EXPECT_EQ(kind(R"({"kind": "minRate", "horizon_days": 0})"), ErrorKind::config);
    EXPECT_EQ(kind(R"({"kind": "minRate", "arrivals": {"mean_interarrival_days": 0}})"), ErrorKind::config);
}

TEST(JsonIo, OfflineConfig)
{
    const auto cfg = offline_config_from_json(read_json(ssdtco::testing::data_dir() / "offline.json"));
    EXPECT_EQ(cfg.seq_thresholds, std::vector<double>{0.6});
    EXPECT_EQ(cfg.switch_delta, 0.1346);
    EXPECT_EQ(cfg.disk_spec.capacity_space, 1600.0);
    EXPECT_EQ(kind_of([] { offline_config_from_json(Json::parse(R"({"switch_delta": 0.1})")); }),
              ErrorKind::config);
}

TEST(FileIo, TextAndJson)
{
    const auto dir = scratch_dir("io");
    write_text(dir / "a.txt", "one\ntwo\n");
    EXPECT_EQ(read_text(dir / "a.txt"), "one\ntwo\n");
    write_text(dir / "a.txt", "three\n");
    EXPECT_EQ(read_text(dir / "a.txt"), "three\n");
    write_text(dir / "bad.json", "{not json");
    EXPECT_EQ(kind_of([&] { read_json(dir / "bad.json"); }), ErrorKind::config);
    EXPECT_EQ(kind_of([&] { read_text(dir / "missing"); }), ErrorKind::io);
    EXPECT_EQ(kind_of([&] { write_text(dir / "no" / "such" / "dir.txt", "x"); }), ErrorKind::io);
    EXPECT_EQ(dump_json(Json{{"b", 1}, {"a", 2}}), "{\n  \"b\": 1,\n  \"a\": 2\n}\n");
}

TEST(ReportJson, SummaryRoundTrip)
{
    SimConfig cfg{PolicySpec{PolicyKind::minTCO_v3, std::nullopt, {}}, kDefaultHorizonDays, 0};
    const auto r = run_simulation(cfg, ssdtco::testing::scenario_workloads(), ssdtco::testing::scenario_pool());
    const auto j = to_json(r);
    const auto s = report_summary_from_json(j);
    EXPECT_EQ(s.policy, r.policy);
    EXPECT_EQ(s.final_tco_rate, r.final_tco_rate);
    EXPECT_EQ(s.cv_space, r.cv_space);
    EXPECT_EQ(s.accepted, r.accepted);
    EXPECT_EQ(s.rejections.size(), r.rejections.size());
    EXPECT_EQ(s.workload_ids.size(), 40u);
    EXPECT_EQ(kind_of([] { report_summary_from_json(Json{{"policy", "x"}}); }), ErrorKind::malformed_input);

    const auto series = series_csv(r);
    const auto decisions = decisions_csv(r);
    EXPECT_EQ(series.find('\r'), std::string::npos);
    EXPECT_EQ(std::count(decisions.begin(), decisions.end(), '\n'), static_cast<long>(r.decisions.size()) + 1);
}
