#include "hybridmac/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>

#include "hybridmac/config.hpp"
#include "hybridmac/errors.hpp"
#include "hybridmac/harness.hpp"
#include "hybridmac/optimizer.hpp"
#include "hybridmac/records.hpp"
#include "hybridmac/scenario.hpp"

namespace hybridmac::cli {

namespace {

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> l_active;
    std::optional<std::string> protocol;
    bool trace = false;
    bool include_overheads = false;
    std::optional<std::string> axis;
    std::optional<std::string> values;
    std::optional<std::string> protocols;
    std::optional<std::string> out_path;
    unsigned threads = 0;
};

Config load(const Options& o) {
    Config cfg = load_config(o.config_path);
    if (o.seed) cfg.scenario.seed = *o.seed;
    if (o.include_overheads) cfg.scenario.include_overheads = true;
    if (o.protocol) cfg.scenario.protocol = parse_protocol(*o.protocol, "--protocol");
    return cfg;
}

int cmd_optimize(const Options& o, std::ostream& out, std::ostream& err) {
    const Config cfg = load(o);
    std::int64_t l = o.l_active ? *o.l_active
                                : std::llround(cfg.scenario.activity.value * static_cast<double>(cfg.scenario.k_total));
    if (l < 2) {
        err << "error: optimisation needs L >= 2, got L = " << l << "\n";
        return kConfig;
    }
    OptResult r;
    try {
        r = optimize(l, cfg.timing, optimizer_options(cfg.scenario));
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    }
    out << "L         = " << r.l_active << "\n"
        << "M_opt     = " << r.m_opt << "\n"
        << "p_opt     = " << format_number(r.p_opt) << "\n"
        << "T_COP,opt = " << format_number(r.t_cop_opt) << " us\n"
        << "C_total   = " << format_number(r.c_total) << " bits/frame\n"
        << opt_result_to_json(r).dump() << "\n";
    return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream&) {
    const Config cfg = load(o);
    ScenarioSinks sinks;
    if (o.trace) {
        if (cfg.scenario.protocol == Protocol::hybrid) {
            sinks.on_trace = [&](const FrameTrace& t) { out << trace_record_to_json(trace_record(t)).dump() << "\n"; };
            sinks.on_frame = [&](const FrameStats& f) {
                // infeasible frames have no trace
                if (f.infeasible) out << frame_stats_to_json(f).dump() << "\n";
            };
        } else {
            sinks.on_frame = [&](const FrameStats& f) { out << frame_stats_to_json(f).dump() << "\n"; };
        }
    }
    const SimStats stats = run_scenario(cfg.scenario, cfg.timing, sinks);
    nlohmann::json record = sim_stats_to_json(stats);
    record["protocol"] = to_string(cfg.scenario.protocol);
    record["seed"] = cfg.scenario.seed;
    out << record.dump() << "\n";
    return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
    Config cfg = load(o);
    if (o.axis) cfg.sweep.axis = parse_axis(*o.axis);
    if (o.values) cfg.sweep.values = parse_value_list(*o.values, "--values");
    if (o.protocols) cfg.sweep.protocols = parse_protocol_list(*o.protocols, "--protocols");
    if (cfg.sweep.values.empty()) throw ConfigError("sweep.values", "no sweep values given");

    std::ofstream file;
    if (o.out_path) {
        file.open(*o.out_path);
        if (!file) {
            err << "error: cannot write '" << *o.out_path << "'\n";
            return kIo;
        }
    }
    const auto rows = sweep(cfg.sweep.axis, cfg.sweep.values, cfg.sweep.protocols, cfg.scenario, cfg.timing,
                            o.threads);
    std::ostream& sink = o.out_path ? static_cast<std::ostream&>(file) : out;
    write_sweep_csv(sink, rows);
    sink.flush();
    if (!sink) {
        err << "error: failed writing sweep output\n";
        return kIo;
    }
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            err << "warning: " << to_string(r.protocol) << " at " << format_number(r.value) << ": " << r.error
                << "\n";
        }
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hybrid contention/TDMA MAC optimiser and simulator", "hybridmac"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "INI configuration file")->required();
        sub->add_option("--seed", o.seed, "override scenario.seed");
        sub->add_flag("--include-overheads", o.include_overheads, "subtract T_NP and T_AP from the frame budget");
    };

    auto* optimize_cmd = app.add_subcommand("optimize", "solve for (M_opt, p_opt) at one L");
    add_common(optimize_cmd);
    optimize_cmd->add_option("-L,--l-active", o.l_active, "active devices (default: scenario fraction times K)");

    auto* simulate_cmd = app.add_subcommand("simulate", "run one scenario and print SimStats");
    add_common(simulate_cmd);
    simulate_cmd->add_flag("--trace", o.trace, "emit one JSON record per frame");
    simulate_cmd->add_option("--protocol", o.protocol, "hybrid|aloha|tdma");

    auto* sweep_cmd = app.add_subcommand("sweep", "comparative sweep written as CSV");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--axis", o.axis, "K|L|Tframe");
    sweep_cmd->add_option("--values", o.values, "comma-separated axis values");
    sweep_cmd->add_option("--protocols", o.protocols, "comma-separated subset of hybrid,aloha,tdma");
    sweep_cmd->add_option("--out", o.out_path, "CSV output path (default: stdout)");
    sweep_cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (optimize_cmd->parsed()) return cmd_optimize(o, out, err);
        if (simulate_cmd->parsed()) return cmd_simulate(o, out, err);
        return cmd_sweep(o, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kConfig;
    }
}

}  // namespace hybridmac::cli
