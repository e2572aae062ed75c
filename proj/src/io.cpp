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
#include "ssdtco/io.hpp"

#include "ssdtco/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ssdtco {

namespace {

[[noreturn]] void bad_config(const std::string& what)
{
    throw Error(ErrorKind::config, what);
}

[[noreturn]] void bad_data(const std::string& what)
{
    throw Error(ErrorKind::malformed_input, what);
}

void allow_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where)
{
    if (!j.is_object())
        bad_config(where + " must be a JSON object");
    for (const auto& [key, _] : j.items())
    {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
            bad_config(where + ": unknown key '" + key + "'");
    }
}

double number_at(const Json& j, const char* key, const std::string& where)
{
    if (!j.contains(key))
        bad_config(where + ": missing '" + key + "'");
    if (!j.at(key).is_number())
        bad_config(where + ": '" + key + "' must be a number");
    return j.at(key).get<double>();
}

double number_or(const Json& j, const char* key, double fallback, const std::string& where)
{
    return j.contains(key) ? number_at(j, key, where) : fallback;
}

Json optional_number(const std::optional<double>& v)
{
    if (!v || !std::isfinite(*v))
        return nullptr;
    return *v;
}

std::optional<double> optional_from(const Json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null())
        return std::nullopt;
    return j.at(key).get<double>();
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
    {
        const auto b = field.find_first_not_of(" \t");
        const auto e = field.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

double parse_double(const std::string& s, std::size_t line_no)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        bad_data("line " + std::to_string(line_no) + ": '" + s + "' is not a number");
    return v;
}

// Rows after the expected header; blank lines skipped.
std::vector<std::pair<std::size_t, std::vector<std::string>>> read_rows(std::istream& in,
                                                                         const std::vector<std::string>& header)
{
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool seen_header = false;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        auto fields = split(line);
        if (!seen_header)
        {
            if (fields != header)
            {
                std::string expected;
                for (const auto& h : header)
                    expected += (expected.empty() ? "" : ",") + h;
                bad_data("expected header '" + expected + "'");
            }
            seen_header = true;
            continue;
        }
        if (fields.size() != header.size())
            bad_data("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) + " fields");
        rows.emplace_back(line_no, std::move(fields));
    }
    return rows;
}

std::ifstream open_in(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::io, "cannot open '" + path.string() + "'");
    return in;
}

const std::vector<std::string> kWorkloadHeader{"id",        "arrival_days", "seq_ratio",     "write_rate_gb_day",
                                               "peak_iops", "write_ratio",  "working_set_gb"};

} // namespace

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc())
        throw Error(ErrorKind::invariant, "number formatting failed");
    return std::string(buf, ptr);
}

std::string read_text(const std::filesystem::path& path)
{
    auto in = open_in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::io, "cannot write '" + path.string() + "'");
    out << text;
    if (!out)
        throw Error(ErrorKind::io, "write failed for '" + path.string() + "'");
}

Json read_json(const std::filesystem::path& path)
{
    const auto text = read_text(path);
    try
    {
        return Json::parse(text);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        bad_config("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

std::string dump_json(const Json& j)
{
    return j.dump(2) + "\n";
}

std::vector<WorkloadProfile> parse_workloads_csv(std::istream& in)
{
    std::vector<WorkloadProfile> out;
    std::set<std::string> ids;
    for (const auto& [line_no, f] : read_rows(in, kWorkloadHeader))
    {
        WorkloadProfile w;
        w.id = f[0];
        if (w.id.empty())
            bad_data("line " + std::to_string(line_no) + ": empty workload id");
        if (!ids.insert(w.id).second)
            bad_data("line " + std::to_string(line_no) + ": duplicate workload id '" + w.id + "'");
        w.arrival = parse_double(f[1], line_no);
        w.seq_ratio = parse_double(f[2], line_no);
        w.write_rate = parse_double(f[3], line_no);
        w.peak_iops = parse_double(f[4], line_no);
        w.write_ratio = parse_double(f[5], line_no);
        w.working_set = parse_double(f[6], line_no);
        validate(w);
        out.push_back(std::move(w));
    }
    return out;
}

std::vector<WorkloadProfile> read_workloads_csv(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return parse_workloads_csv(in);
}

std::string workloads_csv(const std::vector<WorkloadProfile>& workloads)
{
    std::string out;
    for (std::size_t i = 0; i < kWorkloadHeader.size(); ++i)
        out += (i ? "," : "") + kWorkloadHeader[i];
    out += "\n";
    for (const auto& w : workloads)
    {
        out += w.id + "," + format_number(w.arrival) + "," + format_number(w.seq_ratio) + "," +
               format_number(w.write_rate) + "," + format_number(w.peak_iops) + "," + format_number(w.write_ratio) +
               "," + format_number(w.working_set) + "\n";
    }
    return out;
}

std::vector<WafSample> parse_waf_samples_csv(std::istream& in)
{
    std::vector<WafSample> out;
    for (const auto& [line_no, f] : read_rows(in, {"seq_ratio", "waf"}))
        out.push_back(WafSample{parse_double(f[0], line_no), parse_double(f[1], line_no)});
    return out;
}

std::vector<WafSample> read_waf_samples_csv(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return parse_waf_samples_csv(in);
}

Json to_json(const WafModel& m)
{
    return Json{{"alpha", m.alpha}, {"beta", m.beta},   {"eta", m.eta},
                {"mu", m.mu},       {"gamma", m.gamma}, {"turning_point", m.turning_point}};
}

WafModel waf_model_from_json(const Json& j)
{
    const std::string where = "waf model";
    allow_keys(j, {"alpha", "beta", "eta", "mu", "gamma", "turning_point"}, where);
    WafModel m;
    m.alpha = number_at(j, "alpha", where);
    m.beta = number_at(j, "beta", where);
    m.eta = number_at(j, "eta", where);
    m.mu = number_at(j, "mu", where);
    m.gamma = number_at(j, "gamma", where);
    m.turning_point = number_at(j, "turning_point", where);
    return m;
}

Json to_json(const DiskSpec& s)
{
    return Json{{"id", s.id},
                {"cost_purchase", s.cost_purchase},
                {"cost_setup", s.cost_setup},
                {"rate_power", s.rate_power},
                {"rate_labor", s.rate_labor},
                {"write_limit", s.write_limit},
                {"capacity_space", s.capacity_space},
                {"capacity_iops", s.capacity_iops},
                {"waf_model", to_json(s.waf_model)}};
}

namespace {

DiskSpec disk_spec_fields(const Json& j, const std::string& where)
{
    DiskSpec s;
    if (!j.contains("id") || !j.at("id").is_string())
        bad_config(where + ": missing string 'id'");
    s.id = j.at("id").get<std::string>();
    s.cost_purchase = number_at(j, "cost_purchase", where);
    s.cost_setup = number_or(j, "cost_setup", 0.0, where);
    s.rate_power = number_or(j, "rate_power", 0.0, where);
    s.rate_labor = number_or(j, "rate_labor", 0.0, where);
    s.write_limit = number_at(j, "write_limit", where);
    s.capacity_space = number_at(j, "capacity_space", where);
    s.capacity_iops = number_at(j, "capacity_iops", where);
    if (!j.contains("waf_model"))
        bad_config(where + ": missing 'waf_model'");
    s.waf_model = waf_model_from_json(j.at("waf_model"));
    validate(s);
    return s;
}

} // namespace

DiskSpec disk_spec_from_json(const Json& j)
{
    allow_keys(j,
               {"id", "cost_purchase", "cost_setup", "rate_power", "rate_labor", "write_limit", "capacity_space",
                "capacity_iops", "waf_model"},
               "disk");
    return disk_spec_fields(j, "disk");
}

RaidSetting parse_raid_setting(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        bad_config("raid setting must look like 'raid1:4'");
    RaidSetting r;
    r.mode = parse_raid_mode(text.substr(0, colon));
    const std::string n = text.substr(colon + 1);
    const auto [ptr, ec] = std::from_chars(n.data(), n.data() + n.size(), r.n);
    if (ec != std::errc() || ptr != n.data() + n.size())
        bad_config("raid member count '" + n + "' is not an integer");
    return r;
}

std::vector<DiskState> pool_from_json(const Json& j, const std::optional<RaidSetting>& override)
{
    if (!j.is_array())
        bad_config("pool must be a JSON array of disks");
    std::vector<DiskState> pool;
    std::set<std::string> ids;
    for (const auto& entry : j)
    {
        allow_keys(entry,
                   {"id", "cost_purchase", "cost_setup", "rate_power", "rate_labor", "write_limit", "capacity_space",
                    "capacity_iops", "waf_model", "raid"},
                   "pool entry");
        const DiskSpec spec = disk_spec_fields(entry, "pool entry");
        if (!ids.insert(spec.id).second)
            bad_config("duplicate disk id '" + spec.id + "'");
        std::optional<RaidSetting> raid = override;
        if (!raid && entry.contains("raid"))
        {
            const auto& r = entry.at("raid");
            allow_keys(r, {"mode", "n"}, "raid");
            if (!r.contains("mode") || !r.at("mode").is_string() || !r.contains("n") || !r.at("n").is_number_integer())
                bad_config("raid needs a string 'mode' and an integer 'n'");
            raid = RaidSetting{parse_raid_mode(r.at("mode").get<std::string>()), r.at("n").get<int>()};
        }
        if (raid)
            pool.push_back(make_disk_state(raid_pseudo_disk(spec, raid->n, raid->mode)));
        else
            pool.push_back(make_disk_state(spec));
    }
    if (pool.empty())
        bad_config("pool has no disks");
    return pool;
}

namespace {

AffineWeight weight_from_json(const Json& j)
{
    if (j.is_number())
        return AffineWeight{j.get<double>(), 0.0};
    allow_keys(j, {"intercept", "slope"}, "weight");
    return AffineWeight{number_or(j, "intercept", 0.0, "weight"), number_or(j, "slope", 0.0, "weight")};
}

Json weight_to_json(const AffineWeight& w)
{
    return Json{{"intercept", w.intercept}, {"slope", w.slope}};
}

} // namespace

PolicyConfig policy_config_from_json(const Json& j)
{
    allow_keys(j, {"kind", "weights", "thresholds", "horizon_days", "arrivals"}, "policy");
    PolicyConfig cfg;
    if (!j.contains("kind") || !j.at("kind").is_string())
        bad_config("policy: missing string 'kind'");
    cfg.policy.kind = parse_policy_kind(j.at("kind").get<std::string>());
    if (j.contains("weights"))
    {
        const auto& w = j.at("weights");
        if (w.is_array())
        {
            if (w.size() != 5)
                bad_config("policy: weights array needs five entries (f, g_s, g_p, h_s, h_p)");
            std::array<double, 5> v{};
            for (std::size_t i = 0; i < 5; ++i)
            {
                if (!w[i].is_number())
                    bad_config("policy: weights must be numbers");
                v[i] = w[i].get<double>();
            }
            cfg.policy.weights = PerfWeights::constant(v);
        }
        else
        {
            allow_keys(w, {"f", "g_s", "g_p", "h_s", "h_p"}, "weights");
            PerfWeights pw;
            const auto get = [&](const char* key) { return w.contains(key) ? weight_from_json(w.at(key)) : AffineWeight{}; };
            pw.f = get("f");
            pw.g_s = get("g_s");
            pw.g_p = get("g_p");
            pw.h_s = get("h_s");
            pw.h_p = get("h_p");
            cfg.policy.weights = pw;
        }
    }
    if (j.contains("thresholds"))
    {
        const auto& t = j.at("thresholds");
        allow_keys(t, {"tco", "space", "iops"}, "thresholds");
        // null stands for no cost bound
        if (t.contains("tco") && !t.at("tco").is_null())
            cfg.policy.thresholds.tco = number_at(t, "tco", "thresholds");
        cfg.policy.thresholds.space = number_or(t, "space", cfg.policy.thresholds.space, "thresholds");
        cfg.policy.thresholds.iops = number_or(t, "iops", cfg.policy.thresholds.iops, "thresholds");
    }
    cfg.horizon = number_or(j, "horizon_days", cfg.horizon, "policy");
    if (j.contains("arrivals"))
    {
        const auto& a = j.at("arrivals");
        allow_keys(a, {"mean_interarrival_days"}, "arrivals");
        cfg.arrivals = ArrivalResampling{number_at(a, "mean_interarrival_days", "arrivals")};
        if (!(cfg.arrivals->mean_interarrival > 0.0))
            bad_config("arrivals: mean_interarrival_days must be positive");
    }
    validate(cfg.policy);
    if (!(cfg.horizon > 0.0))
        bad_config("policy: horizon_days must be positive");
    return cfg;
}

Json to_json(const PolicyConfig& cfg)
{
    Json j{{"kind", to_string(cfg.policy.kind)}};
    if (cfg.policy.weights)
    {
        const auto& w = *cfg.policy.weights;
        j["weights"] = Json{{"f", weight_to_json(w.f)},
                            {"g_s", weight_to_json(w.g_s)},
                            {"g_p", weight_to_json(w.g_p)},
                            {"h_s", weight_to_json(w.h_s)},
                            {"h_p", weight_to_json(w.h_p)}};
    }
    const auto& t = cfg.policy.thresholds;
    j["thresholds"] = Json{{"tco", optional_number(t.tco)}, {"space", t.space}, {"iops", t.iops}};
    j["horizon_days"] = cfg.horizon;
    if (cfg.arrivals)
        j["arrivals"] = Json{{"mean_interarrival_days", cfg.arrivals->mean_interarrival}};
    return j;
}

OfflineConfig offline_config_from_json(const Json& j)
{
    allow_keys(j, {"seq_thresholds", "switch_delta", "disk"}, "offline config");
    OfflineConfig cfg;
    if (j.contains("seq_thresholds"))
    {
        const auto& t = j.at("seq_thresholds");
        if (!t.is_array())
            bad_config("offline config: seq_thresholds must be an array");
        cfg.seq_thresholds.clear();
        for (const auto& v : t)
        {
            if (!v.is_number())
                bad_config("offline config: thresholds must be numbers");
            cfg.seq_thresholds.push_back(v.get<double>());
        }
    }
    cfg.switch_delta = number_or(j, "switch_delta", cfg.switch_delta, "offline config");
    if (!j.contains("disk"))
        bad_config("offline config: missing 'disk'");
    cfg.disk_spec = disk_spec_from_json(j.at("disk"));
    validate(cfg);
    return cfg;
}

Json to_json(const SimulationReport& r)
{
    Json j;
    j["policy"] = r.policy;
    j["horizon_days"] = r.horizon;
    j["workload_ids"] = r.workload_ids;
    j["final_tco_rate"] = optional_number(r.final_tco_rate);
    j["realized_tco_rate"] = optional_number(r.realized_tco_rate);
    j["util_space_mean"] = r.util_space_mean;
    j["util_iops_mean"] = r.util_iops_mean;
    j["cv_space"] = r.cv_space;
    j["cv_iops"] = r.cv_iops;
    j["cv_workload_count"] = r.cv_workload_count;
    j["total_logical_gb"] = r.total_logical_gb;
    j["realized_logical_gb"] = r.realized_logical_gb;
    j["accepted"] = r.accepted;

    Json rejections = Json::array();
    for (const auto& x : r.rejections)
        rejections.push_back(Json{{"time", x.time}, {"workload", x.workload}, {"reason", x.reason}});
    j["rejections"] = rejections;

    Json terminations = Json::array();
    for (const auto& x : r.terminations)
        terminations.push_back(Json{{"time", x.time}, {"workload", x.workload}, {"disk", x.disk}});
    j["terminations"] = terminations;

    Json disks = Json::array();
    for (const auto& d : r.disks)
    {
        Json dj;
        dj["id"] = d.spec.id;
        dj["write_limit"] = d.spec.write_limit;
        dj["write_multiplier"] = d.write_multiplier;
        dj["write_penalty"] = d.write_penalty;
        dj["warm"] = d.warm();
        dj["init_time"] = d.warm() ? Json(d.init_time) : Json(nullptr);
        dj["dead_time"] = optional_number(d.dead_time);
        dj["wornout"] = d.wornout;
        dj["wornout_at_horizon"] = d.warm() ? wornout_at(d, r.horizon) : 0.0;
        dj["expected_death_time"] = d.warm() ? Json(expected_death_time(d)) : Json(nullptr);
        Json ids = Json::array();
        for (const auto& w : d.assigned)
            ids.push_back(w.id);
        dj["workloads"] = ids;
        Json epochs = Json::array();
        for (const auto& e : d.epochs)
        {
            epochs.push_back(Json{{"t_start", e.t_start},
                                  {"t_end", e.t_end},
                                  {"logical_rate", e.logical_rate},
                                  {"seq_ratio", e.seq_ratio},
                                  {"waf", e.waf}});
        }
        dj["epochs"] = epochs;
        disks.push_back(dj);
    }
    j["disks"] = disks;
    return j;
}

SimulationReport report_summary_from_json(const Json& j)
{
    SimulationReport r;
    try
    {
        r.policy = j.at("policy").get<std::string>();
        r.horizon = j.at("horizon_days").get<double>();
        r.workload_ids = j.at("workload_ids").get<std::vector<std::string>>();
        r.final_tco_rate = optional_from(j, "final_tco_rate");
        r.realized_tco_rate = optional_from(j, "realized_tco_rate");
        r.util_space_mean = j.at("util_space_mean").get<double>();
        r.util_iops_mean = j.at("util_iops_mean").get<double>();
        r.cv_space = j.at("cv_space").get<double>();
        r.cv_iops = j.at("cv_iops").get<double>();
        r.cv_workload_count = j.at("cv_workload_count").get<double>();
        r.total_logical_gb = j.at("total_logical_gb").get<double>();
        r.accepted = j.at("accepted").get<std::size_t>();
        for (const auto& x : j.at("rejections"))
            r.rejections.push_back(Rejection{x.at("time").get<double>(), x.at("workload").get<std::string>(),
                                             x.at("reason").get<std::string>()});
    }
    catch (const nlohmann::json::exception& e)
    {
        bad_data(std::string("report is missing fields: ") + e.what());
    }
    std::sort(r.workload_ids.begin(), r.workload_ids.end());
    return r;
}

std::string series_csv(const SimulationReport& r)
{
    std::string out = "time,tco_rate,util_space,util_iops,cv_space,cv_iops\n";
    for (const auto& p : r.series)
    {
        out += format_number(p.time) + "," + (p.tco_rate ? format_number(*p.tco_rate) : std::string()) + "," +
               format_number(p.util_space) + "," + format_number(p.util_iops) + "," + format_number(p.cv_space) +
               "," + format_number(p.cv_iops) + "\n";
    }
    return out;
}

std::string decisions_csv(const SimulationReport& r)
{
    std::string out = "time,workload,disk,score,rejected\n";
    for (const auto& d : r.decisions)
    {
        out += format_number(d.time) + "," + d.workload + "," + d.disk + "," + format_number(d.score) + "," +
               (d.rejected ? "1" : "0") + "\n";
    }
    return out;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows)
{
    std::string out = "policy,final_tco_rate,delta,util_space_mean,util_iops_mean,cv_space,cv_iops,rejections\n";
    for (const auto& r : rows)
    {
        out += r.policy + "," + (r.final_tco_rate ? format_number(*r.final_tco_rate) : std::string()) + "," +
               (r.delta ? format_number(*r.delta) : std::string()) + "," + format_number(r.util_space_mean) + "," +
               format_number(r.util_iops_mean) + "," + format_number(r.cv_space) + "," + format_number(r.cv_iops) +
               "," + std::to_string(r.rejections) + "\n";
    }
    return out;
}

Json to_json(const OfflinePlan& plan)
{
    Json j;
    j["approach"] = to_string(plan.approach);
    j["disk_count"] = plan.disk_count;
    j["tco_rate"] = optional_number(plan.tco_rate);
    j["lambda_high"] = plan.lambda_high;
    j["lambda_low"] = plan.lambda_low;
    Json zones = Json::array();
    for (const auto& z : plan.zones)
    {
        Json disks = Json::array();
        for (const auto& d : z.disks)
        {
            Json ids = Json::array();
            for (const auto& w : d.workloads)
                ids.push_back(w.id);
            disks.push_back(Json{{"workloads", ids},
                                 {"used_space", d.used_space},
                                 {"used_iops", d.used_iops},
                                 {"write_rate", d.write_rate}});
        }
        zones.push_back(Json{{"label", z.label}, {"disks", disks}});
    }
    j["zones"] = zones;
    Json rejected = Json::array();
    for (const auto& r : plan.rejected)
        rejected.push_back(Json{{"workload", r.workload}, {"reason", r.reason}});
    j["rejected"] = rejected;
    return j;
}

std::string plan_assignments_csv(const OfflinePlan& plan)
{
    std::string out = "disk,zone,workload,seq_ratio,write_rate\n";
    std::size_t index = 0;
    for (const auto& z : plan.zones)
    {
        for (const auto& d : z.disks)
        {
            for (const auto& w : d.workloads)
            {
                out += std::to_string(index) + "," + z.label + "," + w.id + "," + format_number(w.seq_ratio) + "," +
                       format_number(w.write_rate) + "\n";
            }
            ++index;
        }
    }
    return out;
}

} // namespace ssdtco
