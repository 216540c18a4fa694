#include "hybridmac/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hybridmac/errors.hpp"

namespace hybridmac {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& raw, const std::string& field) {
    const std::string s = trim(raw);
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(field, "expected a number, got '" + raw + "'");
}

std::int64_t to_int(const std::string& raw, const std::string& field) {
    const std::string s = trim(raw);
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(field, "expected an integer, got '" + raw + "'");
}

std::uint64_t to_uint(const std::string& raw, const std::string& field) {
    const std::string s = trim(raw);
    try {
        std::size_t used = 0;
        if (!s.empty() && s[0] != '-') {
            const unsigned long long v = std::stoull(s, &used);
            if (used == s.size()) return v;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError(field, "expected an unsigned integer, got '" + raw + "'");
}

bool to_bool(const std::string& raw, const std::string& field) {
    const std::string s = trim(raw);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError(field, "expected true/false, got '" + raw + "'");
}

void reject_unknown(const pt::ptree& section, const std::string& name, const std::set<std::string>& known) {
    for (const auto& [key, _] : section) {
        if (!known.count(key)) throw ConfigError(name + "." + key, "unknown key");
    }
}

}  // namespace

std::vector<double> parse_value_list(const std::string& s, const std::string& field) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) continue;
        out.push_back(to_double(item, field));
    }
    if (out.empty()) throw ConfigError(field, "needs at least one value");
    return out;
}

std::vector<Protocol> parse_protocol_list(const std::string& s, const std::string& field) {
    std::vector<Protocol> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string name = trim(item);
        if (name.empty()) continue;
        out.push_back(parse_protocol(name, field));
    }
    return out;
}

Config parse_config(std::istream& is) {
    pt::ptree tree;
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("config", e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    reject_unknown(tree, "", {"timing", "scenario", "sweep"});

    Config cfg;
    const auto timing = tree.get_child_optional("timing");
    if (!timing) throw ConfigError("timing", "missing section");
    reject_unknown(*timing, "timing",
                   {"t_frame", "t_np", "t_ap", "t_tran", "t_req", "t_ack", "sifs", "bifs", "delta_idle", "rate"});
    auto req = [&](const char* key, double& dst) {
        const auto v = timing->get_optional<std::string>(key);
        const std::string field = std::string("timing.") + key;
        if (!v) throw ConfigError(field, "missing required field");
        dst = to_double(*v, field);
    };
    TimingParams& t = cfg.timing;
    req("t_frame", t.t_frame);
    req("t_np", t.t_np);
    req("t_ap", t.t_ap);
    req("t_tran", t.t_tran);
    req("t_req", t.t_req);
    req("t_ack", t.t_ack);
    req("sifs", t.sifs);
    req("bifs", t.bifs);
    req("delta_idle", t.delta_idle);
    req("rate", t.rate);
    try {
        t.validate();
    } catch (const ConfigError& e) {
        throw ConfigError("timing." + e.field(), e.what());
    }

    if (const auto sc = tree.get_child_optional("scenario")) {
        reject_unknown(*sc, "scenario",
                       {"k_total", "activity", "activity_value", "protocol", "frames", "seed", "aloha_q",
                        "aloha_slot", "tdma_slot", "include_overheads", "cop_model", "cop_threshold",
                        "l_estimate_noise"});
        ScenarioConfig& s = cfg.scenario;
        auto opt = [&](const char* key) { return sc->get_optional<std::string>(key); };
        const std::string p = "scenario.";
        if (auto v = opt("k_total")) s.k_total = to_int(*v, p + "k_total");
        if (auto v = opt("activity")) s.activity.kind = parse_activity(trim(*v), p + "activity");
        if (auto v = opt("activity_value")) s.activity.value = to_double(*v, p + "activity_value");
        if (auto v = opt("protocol")) s.protocol = parse_protocol(trim(*v), p + "protocol");
        if (auto v = opt("frames")) s.frames = to_int(*v, p + "frames");
        if (auto v = opt("seed")) s.seed = to_uint(*v, p + "seed");
        if (auto v = opt("aloha_q")) s.aloha_q = to_double(*v, p + "aloha_q");
        if (auto v = opt("aloha_slot")) s.aloha_slot = to_double(*v, p + "aloha_slot");
        if (auto v = opt("tdma_slot")) s.tdma_slot = to_double(*v, p + "tdma_slot");
        if (auto v = opt("include_overheads")) s.include_overheads = to_bool(*v, p + "include_overheads");
        if (auto v = opt("cop_model")) s.cop_model = parse_cop_model(trim(*v), p + "cop_model");
        if (auto v = opt("cop_threshold")) s.cop_threshold = parse_cop_threshold(trim(*v), p + "cop_threshold");
        if (auto v = opt("l_estimate_noise")) s.l_estimate_noise = to_double(*v, p + "l_estimate_noise");
        try {
            s.validate();
        } catch (const ConfigError& e) {
            throw ConfigError("scenario." + e.field(), e.what());
        }
    }

    if (const auto sw = tree.get_child_optional("sweep")) {
        reject_unknown(*sw, "sweep", {"axis", "values", "protocols"});
        if (auto v = sw->get_optional<std::string>("axis")) {
            try {
                cfg.sweep.axis = parse_axis(trim(*v));
            } catch (const ConfigError& e) {
                throw ConfigError("sweep.axis", e.what());
            }
        }
        if (auto v = sw->get_optional<std::string>("values")) cfg.sweep.values = parse_value_list(*v, "sweep.values");
        if (auto v = sw->get_optional<std::string>("protocols")) {
            cfg.sweep.protocols = parse_protocol_list(*v, "sweep.protocols");
        }
    }
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path.string() + "'");
    return parse_config(in);
}

std::string render_config(const Config& c) {
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    std::ostringstream os;
    const TimingParams& t = c.timing;
    os << "[timing]\n"
       << "t_frame = " << num(t.t_frame) << "\n"
       << "t_np = " << num(t.t_np) << "\n"
       << "t_ap = " << num(t.t_ap) << "\n"
       << "t_tran = " << num(t.t_tran) << "\n"
       << "t_req = " << num(t.t_req) << "\n"
       << "t_ack = " << num(t.t_ack) << "\n"
       << "sifs = " << num(t.sifs) << "\n"
       << "bifs = " << num(t.bifs) << "\n"
       << "delta_idle = " << num(t.delta_idle) << "\n"
       << "rate = " << num(t.rate) << "\n\n";
    const ScenarioConfig& s = c.scenario;
    os << "[scenario]\n"
       << "k_total = " << s.k_total << "\n"
       << "activity = " << to_string(s.activity.kind) << "\n"
       << "activity_value = " << num(s.activity.value) << "\n"
       << "protocol = " << to_string(s.protocol) << "\n"
       << "frames = " << s.frames << "\n"
       << "seed = " << s.seed << "\n"
       << "aloha_q = " << num(s.aloha_q) << "\n"
       << "aloha_slot = " << num(s.aloha_slot) << "\n"
       << "tdma_slot = " << num(s.tdma_slot) << "\n"
       << "include_overheads = " << (s.include_overheads ? "true" : "false") << "\n"
       << "cop_model = " << to_string(s.cop_model) << "\n"
       << "cop_threshold = " << to_string(s.cop_threshold) << "\n"
       << "l_estimate_noise = " << num(s.l_estimate_noise) << "\n\n";
    os << "[sweep]\n"
       << "axis = " << to_string(c.sweep.axis) << "\n";
    if (!c.sweep.values.empty()) {
        os << "values = ";
        for (std::size_t i = 0; i < c.sweep.values.size(); ++i) os << (i ? "," : "") << num(c.sweep.values[i]);
        os << "\n";
    }
    os << "protocols = ";
    for (std::size_t i = 0; i < c.sweep.protocols.size(); ++i) {
        os << (i ? "," : "") << to_string(c.sweep.protocols[i]);
    }
    os << "\n";
    return os.str();
}

}  // namespace hybridmac
