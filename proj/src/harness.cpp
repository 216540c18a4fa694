#include "hybridmac/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "hybridmac/errors.hpp"
#include "hybridmac/rng.hpp"

namespace hybridmac {

std::string_view to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::k_total: return "K";
        case SweepAxis::l_active: return "L";
        case SweepAxis::t_frame: return "Tframe";
    }
    return "?";
}

SweepAxis parse_axis(std::string_view s) {
    if (s == "K") return SweepAxis::k_total;
    if (s == "L") return SweepAxis::l_active;
    if (s == "Tframe") return SweepAxis::t_frame;
    throw ConfigError("axis", "unknown sweep axis '" + std::string(s) + "' (K|L|Tframe)");
}

std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t value_index, Protocol protocol) {
    return derive_seed(base_seed, value_index, static_cast<std::uint64_t>(protocol));
}

std::pair<ScenarioConfig, TimingParams> cell_setup(SweepAxis axis, double value, Protocol protocol,
                                                   const ScenarioConfig& base, const TimingParams& params) {
    ScenarioConfig cfg = base;
    TimingParams timing = params;
    cfg.protocol = protocol;
    switch (axis) {
        case SweepAxis::k_total:
            cfg.k_total = std::llround(value);
            break;
        case SweepAxis::l_active: {
            const std::int64_t l = std::llround(value);
            cfg.k_total = std::max(cfg.k_total, l);
            cfg.activity = {ActivityKind::fixed_fraction,
                            cfg.k_total > 0 ? static_cast<double>(l) / static_cast<double>(cfg.k_total) : 0.0};
            break;
        }
        case SweepAxis::t_frame:
            timing.t_frame = value;
            break;
    }
    return {cfg, timing};
}

std::vector<SweepRow> sweep(SweepAxis axis, const std::vector<double>& values, const std::vector<Protocol>& protocols,
                            const ScenarioConfig& base, const TimingParams& params, unsigned threads) {
    std::vector<SweepRow> rows;
    rows.reserve(values.size() * protocols.size());
    for (const Protocol protocol : protocols) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            SweepRow row;
            row.protocol = protocol;
            row.axis = axis;
            row.value = values[i];
            row.seed = cell_seed(base.seed, i, protocol);
            rows.push_back(row);
        }
    }

    auto run_cell = [&](SweepRow& row) {
        try {
            auto [cfg, timing] = cell_setup(axis, row.value, row.protocol, base, params);
            cfg.seed = row.seed;
            row.stats = run_scenario(cfg, timing);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, rows.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < rows.size(); k = next++) {
            run_cell(rows[k]);
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    return rows;
}

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

namespace {

std::string csv_safe(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kSweepCsvHeader << '\n';
    for (const SweepRow& r : rows) {
        os << to_string(r.protocol) << ',' << to_string(r.axis) << ',' << format_number(r.value) << ','
           << r.stats.frames << ',' << format_number(r.stats.mean_throughput) << ','
           << format_number(r.stats.utility) << ',' << format_number(r.stats.mean_delay) << ','
           << r.stats.infeasible_frames << ',' << r.seed << ',' << (r.error.empty() ? "ok" : csv_safe(r.error))
           << '\n';
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kSweepCsvHeader) {
        throw ConfigError("csv", "missing or unexpected header");
    }
    std::vector<SweepRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 10) throw ConfigError("csv", "expected 10 columns: " + line);
        SweepRow r;
        r.protocol = parse_protocol(f[0]);
        r.axis = parse_axis(f[1]);
        r.value = std::stod(f[2]);
        r.stats.frames = std::stoll(f[3]);
        r.stats.mean_throughput = std::stod(f[4]);
        r.stats.utility = std::stod(f[5]);
        r.stats.mean_delay = std::stod(f[6]);
        r.stats.infeasible_frames = std::stoll(f[7]);
        r.seed = std::stoull(f[8]);
        if (f[9] != "ok") r.error = f[9];
        rows.push_back(r);
    }
    return rows;
}

}  // namespace hybridmac
