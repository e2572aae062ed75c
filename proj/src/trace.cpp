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
#include "ssdtco/trace.hpp"

#include "ssdtco/error.hpp"
#include "ssdtco/sim.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <random>

namespace ssdtco {

namespace {

constexpr double kTicksPerSecond = 1e7; // Windows filetime

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true)
    {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return fields;
}

template <class T>
std::optional<T> number(std::string_view s)
{
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

std::optional<IoOp> op_of(std::string_view s)
{
    const auto t = lower(s);
    if (t == "w" || t == "write")
        return IoOp::write;
    if (t == "r" || t == "read")
        return IoOp::read;
    return std::nullopt;
}

// Event with the raw timestamp in seconds; made relative after parsing.
std::optional<IoEvent> parse_msr(std::string_view line)
{
    const auto f = split_csv(line);
    if (f.size() != 7)
        return std::nullopt;
    const auto ticks = number<std::uint64_t>(f[0]);
    const auto op = op_of(f[3]);
    const auto offset = number<std::uint64_t>(f[4]);
    const auto bytes = number<std::uint64_t>(f[5]);
    if (!ticks || !op || !offset || !bytes || *bytes == 0)
        return std::nullopt;
    IoEvent ev;
    ev.time = static_cast<double>(*ticks) / kTicksPerSecond;
    ev.op = *op;
    ev.lbn = *offset / kPageBytes;
    ev.size = (*bytes + kPageBytes - 1) / kPageBytes;
    return ev;
}

std::optional<IoEvent> parse_simple(std::string_view line)
{
    const auto f = split_csv(line);
    if (f.size() != 4)
        return std::nullopt;
    const auto t = number<double>(f[0]);
    const auto op = op_of(f[1]);
    const auto lbn = number<std::uint64_t>(f[2]);
    const auto size = number<std::uint64_t>(f[3]);
    if (!t || !std::isfinite(*t) || !op || !lbn || !size || *size == 0)
        return std::nullopt;
    return IoEvent{*t, *lbn, *size, *op};
}

} // namespace

TraceLayout parse_trace_layout(std::string_view text)
{
    const auto t = lower(text);
    if (t == "msr")
        return TraceLayout::msr;
    if (t == "simple")
        return TraceLayout::simple;
    throw Error(ErrorKind::config, "unknown trace layout '" + std::string(text) + "'");
}

std::string to_string(TraceLayout layout)
{
    return layout == TraceLayout::msr ? "msr" : "simple";
}

ParsedTrace parse_trace(std::istream& in, TraceLayout layout, double max_malformed)
{
    ParsedTrace out;
    std::string line;
    bool first = true;
    std::optional<double> t0;
    while (std::getline(in, line))
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const bool header = first && layout == TraceLayout::simple;
        first = false;
        if (trim(line).empty())
            continue;
        if (header && lower(trim(line)).rfind("time", 0) == 0)
            continue;
        ++out.lines;
        auto ev = layout == TraceLayout::msr ? parse_msr(line) : parse_simple(line);
        if (!ev)
        {
            ++out.malformed;
            continue;
        }
        if (!t0)
            t0 = ev->time;
        ev->time -= *t0;
        out.events.push_back(*ev);
    }
    if (out.lines > 0 &&
        static_cast<double>(out.malformed) > max_malformed * static_cast<double>(out.lines))
    {
        throw Error(ErrorKind::malformed_input, std::to_string(out.malformed) + " of " + std::to_string(out.lines) +
                                                    " trace lines are malformed");
    }
    return out;
}

ParsedTrace parse_trace(const std::filesystem::path& path, TraceLayout layout, double max_malformed)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::io, "cannot open trace '" + path.string() + "'");
    return parse_trace(in, layout, max_malformed);
}

WorkloadProfile profile_workload(std::span<const IoEvent> events, std::string id, double window_seconds,
                                 DetectorConfig detector_config)
{
    if (events.empty())
        throw Error(ErrorKind::degenerate_trace, "trace has no events");
    if (!(window_seconds > 0.0))
        throw Error(ErrorKind::domain, "peak window must be positive");

    double t_min = events.front().time;
    double t_max = t_min;
    for (const auto& ev : events)
    {
        t_min = std::min(t_min, ev.time);
        t_max = std::max(t_max, ev.time);
    }
    const double span_days = (t_max - t_min) / kSecondsPerDay;
    if (!(span_days > 0.0))
        throw Error(ErrorKind::degenerate_trace, "trace spans no time");

    SequentialStreamDetector detector(detector_config);
    PageCoverage footprint;
    std::map<std::int64_t, std::uint64_t> windows;
    std::uint64_t writes = 0;
    std::uint64_t write_pages = 0;
    for (const auto& ev : events)
    {
        detector.ingest(ev);
        footprint.add(ev.lbn, ev.lbn + ev.size);
        ++windows[static_cast<std::int64_t>(std::floor((ev.time - t_min) / window_seconds))];
        if (ev.op == IoOp::write)
        {
            ++writes;
            write_pages += ev.size;
        }
    }
    std::uint64_t peak = 0;
    for (const auto& [_, count] : windows)
        peak = std::max(peak, count);

    WorkloadProfile p;
    p.id = std::move(id);
    p.seq_ratio = writes > 0 ? detector.seq_ratio() : 0.0;
    p.write_rate = static_cast<double>(write_pages) * kPageBytes / kBytesPerGB / span_days;
    p.peak_iops = static_cast<double>(peak) / window_seconds;
    p.write_ratio = static_cast<double>(writes) / static_cast<double>(events.size());
    p.working_set = static_cast<double>(footprint.pages()) * kPageBytes / kBytesPerGB;
    return p;
}

std::vector<IoEvent> synth_trace(const SynthTraceSpec& spec)
{
    const auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!unit(spec.seq_fraction) || !unit(spec.write_fraction))
        throw Error(ErrorKind::domain, "fractions must lie in [0,1]");
    if (!(spec.rate_gb_day >= 0.0) || !(spec.duration_days > 0.0) || spec.io_pages == 0 || spec.run_pages == 0)
        throw Error(ErrorKind::domain, "rate, duration and sizes must be positive");

    constexpr std::uint64_t kAddressPages = std::uint64_t{1} << 36;
    const double io_bytes = static_cast<double>(spec.io_pages * kPageBytes);
    const auto n_writes = static_cast<std::uint64_t>(
        std::llround(spec.rate_gb_day * spec.duration_days * kBytesPerGB / io_bytes));
    std::uint64_t n_total = n_writes;
    if (spec.write_fraction > 0.0)
        n_total = static_cast<std::uint64_t>(std::llround(static_cast<double>(n_writes) / spec.write_fraction));
    else
        n_total = std::max<std::uint64_t>(n_writes, 1);
    const std::uint64_t n_w = spec.write_fraction > 0.0 ? std::min(n_writes, n_total) : 0;

    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<std::uint64_t> slot(0, kAddressPages / spec.io_pages - 1);
    std::bernoulli_distribution sequential(spec.seq_fraction);
    const auto random_lbn = [&] { return slot(rng) * spec.io_pages; };

    std::vector<IoEvent> events;
    events.reserve(n_total);
    const double dt = spec.duration_days * kSecondsPerDay / static_cast<double>(std::max<std::uint64_t>(n_total, 1));
    std::uint64_t cursor = 0;
    std::uint64_t run_left = 0;
    for (std::uint64_t i = 0; i < n_total; ++i)
    {
        IoEvent ev;
        ev.time = static_cast<double>(i) * dt;
        ev.size = spec.io_pages;
        // Spread the writes evenly among all I/Os.
        const bool write = n_total > 0 && ((i + 1) * n_w) / n_total > (i * n_w) / n_total;
        if (!write)
        {
            ev.op = IoOp::read;
            ev.lbn = random_lbn();
        }
        else if (sequential(rng))
        {
            if (run_left == 0)
            {
                cursor = random_lbn();
                run_left = spec.run_pages;
            }
            ev.op = IoOp::write;
            ev.lbn = cursor;
            cursor += spec.io_pages;
            run_left = run_left > spec.io_pages ? run_left - spec.io_pages : 0;
        }
        else
        {
            ev.op = IoOp::write;
            ev.lbn = random_lbn();
        }
        events.push_back(ev);
    }
    return events;
}

namespace {

constexpr std::array<TraceStats, 16> kReferenceTraces{{
    {"mds0", 31.52, 21.04, 207.02, 88.11, 6.43},
    {"prn0", 39.13, 131.33, 254.55, 89.21, 32.74},
    {"proj3", 72.06, 7.50, 345.52, 5.18, 14.35},
    {"stg0", 35.92, 43.11, 187.01, 84.81, 13.21},
    {"usr0", 28.06, 37.36, 138.28, 59.58, 7.49},
    {"usr2", 46.10, 75.63, 584.50, 18.87, 763.12},
    {"wdv0", 30.78, 20.42, 55.84, 79.92, 3.18},
    {"web0", 34.56, 33.35, 249.67, 70.12, 14.91},
    {"hm1", 25.15, 139.40, 298.33, 90.45, 20.16},
    {"hm2", 10.20, 73.12, 77.52, 98.53, 2.28},
    {"hm3", 10.21, 86.28, 76.11, 99.86, 1.74},
    {"onl2", 74.41, 15.01, 292.69, 64.25, 3.44},
    {"Fin1", 35.92, 575.94, 218.59, 76.84, 1.08},
    {"Fin2", 24.13, 76.60, 159.94, 17.65, 1.11},
    {"Web1", 7.46, 0.95, 355.38, 0.02, 18.37},
    {"Web3", 69.70, 0.18, 245.09, 0.03, 19.21},
}};

} // namespace

std::span<const TraceStats> reference_traces() noexcept
{
    return kReferenceTraces;
}

std::vector<WorkloadProfile> synth_workload_set(const WorkloadSetSpec& spec)
{
    if (!(spec.horizon_days > 0.0) || !(spec.jitter >= 0.0 && spec.jitter < 1.0))
        throw Error(ErrorKind::domain, "horizon must be positive and jitter in [0,1)");

    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<std::size_t> pick(0, kReferenceTraces.size() - 1);
    std::uniform_real_distribution<double> jitter(1.0 - spec.jitter, 1.0 + spec.jitter);

    // Poisson arrivals conditioned on count: partial sums of count+1
    // exponential gaps, rescaled so the next arrival would land on the horizon.
    const auto sums = synth_arrivals(spec.count + 1, 1.0, rng());
    const double scale = spec.count > 0 ? spec.horizon_days / sums.back() : 0.0;

    std::vector<WorkloadProfile> out;
    out.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i)
    {
        const TraceStats& t = kReferenceTraces[pick(rng)];
        WorkloadProfile w;
        w.id = "w" + std::string(i < 10 ? "0" : "") + std::to_string(i) + "_" + t.name;
        w.arrival = sums[i] * scale;
        w.seq_ratio = std::clamp(t.seq_ratio / 100.0 * jitter(rng), 0.0, 1.0);
        w.write_rate = t.write_rate * jitter(rng);
        w.peak_iops = t.peak_iops * jitter(rng);
        w.write_ratio = std::clamp(t.write_ratio / 100.0 * jitter(rng), 0.0, 1.0);
        w.working_set = t.working_set * jitter(rng);
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace ssdtco
