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

#include "ssdtco/io.hpp"
#include "ssdtco/offline.hpp"
#include "ssdtco/sim.hpp"
#include "ssdtco/trace.hpp"
#include "ssdtco/waf.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <iostream>
#include <map>

namespace ssdtco {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) noexcept
{
    switch (kind)
    {
    case ErrorKind::config:
    case ErrorKind::mode_constraint:
        return exit_config;
    case ErrorKind::invariant:
    case ErrorKind::warmup_violation:
    case ErrorKind::incomplete_assignment:
        return exit_invariant;
    default:
        return exit_data;
    }
}

namespace {

// Files a command produces, written only after every input has loaded.
struct Outputs
{
    std::vector<std::pair<std::string, std::string>> files; // name, content
};

struct Command
{
    std::string name;
    std::vector<std::string> arguments; // flags as given, without --out
    Json inputs = Json::object();
    Json config = Json::object();
    std::uint64_t seed = 0;
};

void commit(const fs::path& out_dir, const Command& cmd, Outputs outputs)
{
    Json manifest;
    manifest["tool"] = "ssdtco";
    manifest["subcommand"] = cmd.name;
    manifest["arguments"] = cmd.arguments;
    manifest["inputs"] = cmd.inputs;
    manifest["config"] = cmd.config;
    manifest["seed"] = cmd.seed;
    manifest["out"] = out_dir.generic_string();
    Json names = Json::array();
    for (const auto& [name, _] : outputs.files)
        names.push_back(name);
    names.push_back("manifest.json");
    manifest["outputs"] = names;
    outputs.files.emplace_back("manifest.json", dump_json(manifest));

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw Error(ErrorKind::io, "cannot create output directory '" + out_dir.string() + "': " + ec.message());
    for (const auto& [name, content] : outputs.files)
        write_text(out_dir / name, content);
}

std::vector<double> read_grid(const fs::path& path)
{
    const Json j = read_json(path);
    const Json& values = j.is_object() && j.contains("turning_points") ? j.at("turning_points") : j;
    if (!values.is_array() || values.empty())
        throw Error(ErrorKind::config, "grid must be a non-empty array of turning points");
    std::vector<double> grid;
    for (const auto& v : values)
    {
        if (!v.is_number())
            throw Error(ErrorKind::config, "grid entries must be numbers");
        grid.push_back(v.get<double>());
    }
    return grid;
}

void apply_arrivals(std::vector<WorkloadProfile>& workloads, const PolicyConfig& cfg, std::uint64_t seed)
{
    if (!cfg.arrivals)
        return;
    std::vector<std::size_t> order(workloads.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return workloads[a].arrival < workloads[b].arrival; });
    const auto times = synth_arrivals(workloads.size(), cfg.arrivals->mean_interarrival, seed);
    for (std::size_t i = 0; i < order.size(); ++i)
        workloads[order[i]].arrival = times[i];
}

SimulationReport simulate(const PolicyConfig& pc, std::vector<WorkloadProfile> workloads,
                          std::vector<DiskState> pool, std::uint64_t seed)
{
    apply_arrivals(workloads, pc, seed);
    SimConfig cfg;
    cfg.policy = pc.policy;
    cfg.horizon = pc.horizon;
    cfg.seed = seed;
    return run_simulation(cfg, std::move(workloads), std::move(pool));
}

std::optional<RaidSetting> raid_override(const std::string& text)
{
    if (text.empty())
        return std::nullopt;
    return parse_raid_setting(text);
}

struct Options
{
    std::string samples, grid, out, pool, workloads, offline_config, raid, layout = "msr", approach = "auto",
        manifest;
    std::vector<std::string> policies, traces, reports;
    std::uint64_t seed = 0;
    bool strict = false;
    std::size_t count = 40;
    double horizon = kDefaultHorizonDays;
    double jitter = 0.2;
};

int cmd_fit_waf(const Options& o, Command cmd, std::ostream& out)
{
    const auto samples = read_waf_samples_csv(o.samples);
    const auto grid = o.grid.empty() ? default_turning_grid() : read_grid(o.grid);
    const auto fit = waf_fit_detailed(samples, grid, WafFitOptions{o.strict});

    Json candidates = Json::array();
    for (const auto& c : fit.candidates)
    {
        candidates.push_back(Json{{"turning_point", c.turning_point},
                                  {"feasible", c.feasible},
                                  {"sse", std::isfinite(c.sse) ? Json(c.sse) : Json(nullptr)},
                                  {"note", c.note}});
    }
    double max_residual = 0.0;
    for (const auto& s : samples)
        max_residual = std::max(max_residual, std::abs(waf_eval_unchecked(fit.model, s.seq_ratio) - s.waf));

    Json report{{"model", to_json(fit.model)},
                {"sse", fit.sse},
                {"max_abs_residual", max_residual},
                {"candidates", candidates},
                {"warnings", fit.warnings}};
    cmd.inputs["samples"] = o.samples;
    if (!o.grid.empty())
        cmd.inputs["grid"] = o.grid;
    cmd.config["turning_points"] = grid;
    cmd.config["strict"] = o.strict;
    commit(o.out, cmd, Outputs{{{"model.json", dump_json(to_json(fit.model))}, {"fit.json", dump_json(report)}}});

    out << "turning point " << format_number(fit.model.turning_point) << ", sse " << format_number(fit.sse)
        << ", max residual " << format_number(max_residual) << "\n";
    for (const auto& w : fit.warnings)
        out << "warning: " << w << "\n";
    return exit_ok;
}

int cmd_profile(const Options& o, Command cmd, std::ostream& out)
{
    const auto layout = parse_trace_layout(o.layout);
    std::vector<WorkloadProfile> profiles;
    std::size_t malformed = 0;
    for (const auto& path : o.traces)
    {
        const auto parsed = parse_trace(fs::path(path), layout);
        malformed += parsed.malformed;
        profiles.push_back(profile_workload(parsed.events, fs::path(path).stem().string()));
    }
    cmd.inputs["traces"] = o.traces;
    cmd.config["layout"] = to_string(layout);
    commit(o.out, cmd, Outputs{{{"workloads.csv", workloads_csv(profiles)}}});
    out << "profiled " << profiles.size() << " trace(s), " << malformed << " malformed line(s) skipped\n";
    return exit_ok;
}

int cmd_simulate(const Options& o, Command cmd, std::ostream& out)
{
    auto workloads = read_workloads_csv(o.workloads);
    const Json pool_json = read_json(o.pool);
    auto pool = pool_from_json(pool_json, raid_override(o.raid));
    if (o.policies.size() != 1)
        throw Error(ErrorKind::config, "simulate takes exactly one --policy");
    const PolicyConfig pc = policy_config_from_json(read_json(o.policies.front()));

    const auto report = simulate(pc, std::move(workloads), std::move(pool), o.seed);

    cmd.inputs["workloads"] = o.workloads;
    cmd.inputs["pool"] = o.pool;
    cmd.inputs["policy"] = o.policies.front();
    cmd.config["policy"] = to_json(pc);
    if (!o.raid.empty())
        cmd.config["raid"] = o.raid;
    commit(o.out, cmd,
           Outputs{{{"report.json", dump_json(to_json(report))},
                    {"series.csv", series_csv(report)},
                    {"decisions.csv", decisions_csv(report)}}});

    out << report.policy << ": " << report.accepted << " placed, " << report.rejections.size() << " rejected, $/GB "
        << (report.final_tco_rate ? format_number(*report.final_tco_rate) : "undefined") << "\n";
    return exit_ok;
}

int cmd_offline_plan(const Options& o, Command cmd, std::ostream& out)
{
    const auto workloads = read_workloads_csv(o.workloads);
    const auto cfg = offline_config_from_json(read_json(o.offline_config));
    OfflinePlan plan;
    if (o.approach == "auto")
        plan = offline_plan(workloads, cfg);
    else if (o.approach == "grouping")
        plan = offline_plan_with(workloads, cfg, OfflineApproach::grouping);
    else if (o.approach == "greedy")
        plan = offline_plan_with(workloads, cfg, OfflineApproach::greedy);
    else
        throw Error(ErrorKind::config, "approach must be auto, grouping or greedy");

    cmd.inputs["workloads"] = o.workloads;
    cmd.inputs["offline_config"] = o.offline_config;
    cmd.config["approach"] = o.approach;
    commit(o.out, cmd,
           Outputs{{{"plan.json", dump_json(to_json(plan))}, {"assignments.csv", plan_assignments_csv(plan)}}});
    out << to_string(plan.approach) << ": " << plan.disk_count << " disk(s), $/GB "
        << (plan.tco_rate ? format_number(*plan.tco_rate) : "undefined") << "\n";
    return exit_ok;
}

int cmd_compare(const Options& o, Command cmd, std::ostream& out)
{
    std::vector<SimulationReport> reports;
    Outputs outputs;
    for (const auto& path : o.reports)
        reports.push_back(report_summary_from_json(read_json(path)));

    if (!o.policies.empty())
    {
        if (o.workloads.empty() || o.pool.empty())
            throw Error(ErrorKind::config, "simulating policies needs --workloads and --pool");
        const auto workloads = read_workloads_csv(o.workloads);
        const auto pool = pool_from_json(read_json(o.pool), raid_override(o.raid));
        std::vector<PolicyConfig> configs;
        for (const auto& p : o.policies)
            configs.push_back(policy_config_from_json(read_json(p)));

        // Independent runs; each one is single-threaded.
        std::vector<std::future<SimulationReport>> jobs;
        for (const auto& pc : configs)
            jobs.push_back(std::async(std::launch::async, simulate, pc, workloads, pool, o.seed));
        Json policy_configs = Json::array();
        for (std::size_t i = 0; i < jobs.size(); ++i)
        {
            auto report = jobs[i].get();
            outputs.files.emplace_back("report_" + std::to_string(i) + "_" + report.policy + ".json",
                                       dump_json(to_json(report)));
            reports.push_back(std::move(report));
            policy_configs.push_back(to_json(configs[i]));
        }
        cmd.inputs["workloads"] = o.workloads;
        cmd.inputs["pool"] = o.pool;
        cmd.inputs["policies"] = o.policies;
        cmd.config["policies"] = policy_configs;
    }
    if (!o.reports.empty())
        cmd.inputs["reports"] = o.reports;

    const auto rows = compare_reports(reports);
    const std::string table = comparison_csv(rows);
    outputs.files.insert(outputs.files.begin(), {"compare.csv", table});
    commit(o.out, cmd, std::move(outputs));
    out << table;
    return exit_ok;
}

int cmd_synth_workloads(const Options& o, Command cmd, std::ostream& out)
{
    WorkloadSetSpec spec;
    spec.count = o.count;
    spec.horizon_days = o.horizon;
    spec.jitter = o.jitter;
    spec.seed = o.seed;
    const auto workloads = synth_workload_set(spec);
    cmd.config = Json{{"count", o.count}, {"horizon_days", o.horizon}, {"jitter", o.jitter}};
    commit(o.out, cmd, Outputs{{{"workloads.csv", workloads_csv(workloads)}}});
    out << "wrote " << workloads.size() << " workload(s)\n";
    return exit_ok;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_replay(const Options& o, std::ostream& out, std::ostream& err)
{
    const Json m = read_json(o.manifest);
    if (!m.contains("subcommand") || !m.contains("arguments"))
        throw Error(ErrorKind::config, "manifest lacks subcommand or arguments");
    std::vector<std::string> args{"ssdtco", m.at("subcommand").get<std::string>()};
    for (const auto& a : m.at("arguments"))
        args.push_back(a.get<std::string>());
    args.push_back("--out");
    args.push_back(o.out);
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

// Tokens after the subcommand, minus --out and its value.
std::vector<std::string> recorded_arguments(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 2; i < argc; ++i)
    {
        const std::string a = argv[i];
        if (a == "--out")
        {
            ++i;
            continue;
        }
        if (a.rfind("--out=", 0) == 0)
            continue;
        args.push_back(a);
    }
    return args;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"SSD pool TCO modelling, placement simulation and planning", "ssdtco"};
    app.require_subcommand(1);
    Options o;

    auto* fit = app.add_subcommand("fit-waf", "Fit a piecewise WAF model to samples");
    fit->add_option("--samples", o.samples, "CSV with seq_ratio,waf")->required();
    fit->add_option("--grid", o.grid, "JSON array of turning-point candidates");
    fit->add_flag("--strict", o.strict, "Reject non-monotone fits");
    fit->add_option("--out", o.out, "Output directory")->required();

    auto* profile = app.add_subcommand("profile", "Profile block traces into workload rows");
    profile->add_option("--trace", o.traces, "Trace file (repeatable)")->required();
    profile->add_option("--layout", o.layout, "msr or simple");
    profile->add_option("--out", o.out, "Output directory")->required();

    auto* sim = app.add_subcommand("simulate", "Run the online placement simulation");
    sim->add_option("--workloads", o.workloads, "Workload CSV")->required();
    sim->add_option("--pool", o.pool, "Pool JSON")->required();
    sim->add_option("--policy", o.policies, "Policy JSON")->required();
    sim->add_option("--raid", o.raid, "Treat every pool entry as a RAID set, e.g. raid5:4");
    sim->add_option("--seed", o.seed, "Seed for arrival resampling");
    sim->add_option("--out", o.out, "Output directory")->required();

    auto* plan = app.add_subcommand("offline-plan", "Provision and assign a known workload set");
    plan->add_option("--workloads", o.workloads, "Workload CSV")->required();
    plan->add_option("--offline-config", o.offline_config, "Offline config JSON")->required();
    plan->add_option("--approach", o.approach, "auto, grouping or greedy");
    plan->add_option("--out", o.out, "Output directory")->required();

    auto* compare = app.add_subcommand("compare", "Tabulate policies side by side");
    compare->add_option("--report", o.reports, "Existing report.json (repeatable)");
    compare->add_option("--policy", o.policies, "Policy JSON to simulate (repeatable)");
    compare->add_option("--workloads", o.workloads, "Workload CSV for simulated policies");
    compare->add_option("--pool", o.pool, "Pool JSON for simulated policies");
    compare->add_option("--raid", o.raid, "Treat every pool entry as a RAID set");
    compare->add_option("--seed", o.seed, "Seed for arrival resampling");
    compare->add_option("--out", o.out, "Output directory")->required();

    auto* synth = app.add_subcommand("synth-workloads", "Sample a synthetic workload set");
    synth->add_option("--count", o.count, "Number of workloads");
    synth->add_option("--horizon", o.horizon, "Arrival span in days");
    synth->add_option("--jitter", o.jitter, "Relative jitter on each field");
    synth->add_option("--seed", o.seed, "Random seed");
    synth->add_option("--out", o.out, "Output directory")->required();

    auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    replay->add_option("--manifest", o.manifest, "manifest.json of an earlier run")->required();
    replay->add_option("--out", o.out, "Output directory")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }

    Command cmd;
    cmd.name = app.get_subcommands().front()->get_name();
    cmd.arguments = recorded_arguments(argc, argv);
    cmd.seed = o.seed;

    if (*fit)
        return cmd_fit_waf(o, cmd, out);
    if (*profile)
        return cmd_profile(o, cmd, out);
    if (*sim)
        return cmd_simulate(o, cmd, out);
    if (*plan)
        return cmd_offline_plan(o, cmd, out);
    if (*compare)
        return cmd_compare(o, cmd, out);
    if (*synth)
        return cmd_synth_workloads(o, cmd, out);
    return cmd_replay(o, out, err);
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    try
    {
        return dispatch(argc, argv, out, err);
    }
    catch (const Error& e)
    {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e.kind());
    }
    catch (const std::exception& e)
    {
        err << "internal error: " << e.what() << "\n";
        return exit_invariant;
    }
}

} // namespace ssdtco
