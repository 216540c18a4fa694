#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <unistd.h>

#include "hybridmac/cli.hpp"
#include "hybridmac/config.hpp"
#include "hybridmac/errors.hpp"
#include "hybridmac/records.hpp"

using namespace hybridmac;
namespace fs = std::filesystem;

namespace {

const std::string kReference = std::string(HYBRIDMAC_SOURCE_DIR) + "/configs/reference.ini";

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run cli_run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

// Scratch directory removed at scope exit.
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("hybridmac-test-" + std::to_string(::getpid()) + "-" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    fs::path write(const std::string& name, const std::string& text) const {
        const fs::path p = path / name;
        std::ofstream(p) << text;
        return p;
    }
};

// Replaces the first line starting with `prefix`.
std::string replace_line(std::string text, const std::string& prefix, const std::string& with) {
    auto at = text.find("\n" + prefix);
    REQUIRE(at != std::string::npos);
    ++at;
    const auto end = text.find('\n', at);
    return text.replace(at, end - at, with);
}

}  // namespace

TEST_CASE("config: shipped profile") {
    const Config c = load_config(kReference);
    CHECK(c.timing == reference_params());
    CHECK(c.scenario.k_total == 500);
    CHECK(c.scenario.seed == 42);
    CHECK(c.sweep.values.size() == 10);
    CHECK(c.sweep.protocols.size() == 3);
}

TEST_CASE("config: errors name the field") {
    const std::string base = slurp(kReference);
    auto parse = [](const std::string& text) {
        std::istringstream is(text);
        return parse_config(is);
    };

    try {
        parse(replace_line(base, "delta_idle", ""));
        FAIL("missing field accepted");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "timing.delta_idle");
    }
    try {
        parse(replace_line(base, "seed", "sede = 4"));
        FAIL("unknown key accepted");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "scenario.sede");
    }
    try {
        parse(replace_line(base, "rate", "rate = fast"));
        FAIL("bad number accepted");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "timing.rate");
    }
    CHECK_THROWS_AS(parse(replace_line(base, "protocol", "protocol = csma")), ConfigError);
    CHECK_THROWS_AS(parse(replace_line(base, "t_frame", "t_frame = -5")), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.ini"), ConfigError);

    TempDir dir;
    const fs::path bad = dir.write("bad.ini", replace_line(base, "delta_idle", ""));
    const Run r = cli_run({"optimize", "--config", bad.string()});
    CHECK(r.code == cli::kConfig);
    CHECK(r.err.find("delta_idle") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("config: render and parse round trip") {
    Config c = load_config(kReference);
    c.timing.delta_idle = 0.1 + 0.2;
    c.timing.t_frame = 123456.789;
    c.scenario.protocol = Protocol::aloha;
    c.scenario.activity = {ActivityKind::per_device_prob, 0.123456789};
    c.scenario.seed = std::numeric_limits<std::uint64_t>::max();
    c.scenario.cop_model = CopModel::exact;
    c.scenario.cop_threshold = CopThreshold::expected;
    c.scenario.include_overheads = true;
    c.scenario.l_estimate_noise = 0.25;
    c.sweep.axis = SweepAxis::t_frame;
    c.sweep.values = {20000, 1.0 / 3.0};
    c.sweep.protocols = {Protocol::tdma};

    std::istringstream is(render_config(c));
    const Config back = parse_config(is);
    CHECK(back.timing == c.timing);
    CHECK(back.scenario == c.scenario);
    CHECK(back.sweep.axis == c.sweep.axis);
    CHECK(back.sweep.values == c.sweep.values);
    CHECK(back.sweep.protocols == c.sweep.protocols);
}

TEST_CASE("records round trip") {
    const OptResult o{300, 46, 0.0021912345678, 3074.123456789, 79488000.0};
    CHECK(opt_result_from_json(nlohmann::json::parse(opt_result_to_json(o).dump())) == o);

    SimStats s{1000, 1.234e7, 0.456789, 27012.345, 3, 45678};
    CHECK(sim_stats_from_json(nlohmann::json::parse(sim_stats_to_json(s).dump())) == s);
    s.mean_delay = std::numeric_limits<double>::infinity();
    const nlohmann::json sj = nlohmann::json::parse(sim_stats_to_json(s).dump());
    CHECK(sj["mean_delay"].is_null());
    CHECK(sim_stats_from_json(sj) == s);

    const TraceRecord t{7, 150, 46, 3100.5, 46000.0, StopReason::time_threshold};
    CHECK(trace_record_from_json(nlohmann::json::parse(trace_record_to_json(t).dump())) == t);

    const FrameStats f{9, 150, 12, 2.0736e7, 12000.0, 345678.9, true};
    const FrameStats fb = frame_stats_from_json(nlohmann::json::parse(frame_stats_to_json(f).dump()));
    CHECK(fb.frame_index == f.frame_index);
    CHECK(fb.l_active == f.l_active);
    CHECK(fb.delivered == f.delivered);
    CHECK(fb.bits == f.bits);
    CHECK(fb.useful_time == f.useful_time);
    CHECK(fb.delay_sum == f.delay_sum);
    CHECK(fb.infeasible == f.infeasible);
}

TEST_CASE("cli optimize") {
    const Run r = cli_run({"optimize", "--config", kReference, "-L", "100"});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.err.empty());
    const auto ls = lines(r.out);
    REQUIRE_FALSE(ls.empty());
    const OptResult o = opt_result_from_json(nlohmann::json::parse(ls.back()));
    CHECK(std::abs(o.m_opt - 46) <= 2);
    CHECK(o.l_active == 100);
    CHECK(r.out.find("M_opt") != std::string::npos);

    SUBCASE("default L comes from the scenario") {
        const Run d = cli_run({"optimize", "--config", kReference});
        REQUIRE(d.code == cli::kOk);
        CHECK(opt_result_from_json(nlohmann::json::parse(lines(d.out).back())).l_active == 150);
    }
    SUBCASE("L = 1 is rejected") {
        const Run bad = cli_run({"optimize", "--config", kReference, "-L", "1"});
        CHECK(bad.code != cli::kOk);
        CHECK_FALSE(bad.err.empty());
    }
    SUBCASE("infeasible frame") {
        TempDir dir;
        const fs::path p = dir.write("tiny.ini", replace_line(slurp(kReference), "t_frame", "t_frame = 1030"));
        const Run inf = cli_run({"optimize", "--config", p.string(), "-L", "100"});
        CHECK(inf.code == cli::kInfeasible);
        CHECK(inf.err.find("infeasible") != std::string::npos);
    }
}

TEST_CASE("cli usage errors") {
    CHECK(cli_run({}).code == cli::kUsage);
    CHECK(cli_run({"optimize"}).code == cli::kUsage);
    CHECK(cli_run({"frobnicate", "--config", kReference}).code == cli::kUsage);
    CHECK(cli_run({"simulate", "--config", kReference, "--bogus"}).code == cli::kUsage);
    CHECK(cli_run({"simulate", "--config", kReference, "--protocol", "csma"}).code == cli::kConfig);
}

TEST_CASE("cli simulate") {
    SUBCASE("byte-identical reruns with trace") {
        const std::vector<std::string> args{"simulate", "--config", kReference, "--trace", "--seed", "9"};
        const Run a = cli_run(args);
        const Run b = cli_run(args);
        REQUIRE(a.code == cli::kOk);
        CHECK(a.out == b.out);
        const auto ls = lines(a.out);
        CHECK(ls.size() == 1001);
        const TraceRecord first = trace_record_from_json(nlohmann::json::parse(ls.front()));
        CHECK(first.frame_index == 0);
        CHECK(first.l_active == 150);
    }
    SUBCASE("hybrid statistics stay in bounds") {
        const Run r = cli_run({"simulate", "--config", kReference});
        REQUIRE(r.code == cli::kOk);
        const auto j = nlohmann::json::parse(lines(r.out).back());
        const SimStats s = sim_stats_from_json(j);
        CHECK(s.utility > 0.0);
        CHECK(s.utility < 1.0);
        CHECK(s.mean_throughput <= capacity_bits(reference_params()));
        CHECK(j["protocol"] == "hybrid");
        CHECK(j["seed"] == 42);
    }
    SUBCASE("tdma output does not depend on the seed") {
        const Run a = cli_run({"simulate", "--config", kReference, "--protocol", "tdma", "--seed", "1"});
        const Run b = cli_run({"simulate", "--config", kReference, "--protocol", "tdma", "--seed", "2"});
        REQUIRE(a.code == cli::kOk);
        CHECK(sim_stats_from_json(nlohmann::json::parse(a.out)) == sim_stats_from_json(nlohmann::json::parse(b.out)));
    }
    SUBCASE("different seeds differ for hybrid") {
        const Run a = cli_run({"simulate", "--config", kReference, "--seed", "1"});
        const Run b = cli_run({"simulate", "--config", kReference, "--seed", "2"});
        CHECK_FALSE(sim_stats_from_json(nlohmann::json::parse(a.out)) ==
                    sim_stats_from_json(nlohmann::json::parse(b.out)));
    }
}

TEST_CASE("cli sweep") {
    TempDir dir;
    SUBCASE("file output, one row per protocol and value") {
        const fs::path out = dir.path / "k.csv";
        const Run r = cli_run({"sweep", "--config", kReference, "--values", "100,200", "--out", out.string()});
        REQUIRE(r.code == cli::kOk);
        CHECK(r.out.empty());
        std::ifstream in(out);
        const auto rows = read_sweep_csv(in);
        CHECK(rows.size() == 6);
    }
    SUBCASE("one value, stdout") {
        const Run r = cli_run({"sweep", "--config", kReference, "--values", "300", "--protocols", "hybrid,tdma"});
        REQUIRE(r.code == cli::kOk);
        std::istringstream in(r.out);
        const auto rows = read_sweep_csv(in);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].stats.mean_throughput >= rows[1].stats.mean_throughput);
    }
    SUBCASE("unwritable output") {
        const Run r = cli_run(
            {"sweep", "--config", kReference, "--values", "100", "--out", (dir.path / "missing" / "x.csv").string()});
        CHECK(r.code == cli::kIo);
        CHECK_FALSE(r.err.empty());
    }
    SUBCASE("axis override and bad axis") {
        const Run r = cli_run({"sweep", "--config", kReference, "--axis", "Tframe", "--values", "50000,100000",
                               "--protocols", "hybrid"});
        REQUIRE(r.code == cli::kOk);
        std::istringstream in(r.out);
        const auto rows = read_sweep_csv(in);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].axis == SweepAxis::t_frame);
        CHECK(cli_run({"sweep", "--config", kReference, "--axis", "Q"}).code == cli::kConfig);
    }
}
