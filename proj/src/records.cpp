#include "hybridmac/records.hpp"

#include <cmath>
#include <limits>

#include "hybridmac/errors.hpp"
#include "hybridmac/scenario.hpp"

namespace hybridmac {

using nlohmann::json;

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_inf(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

StopReason parse_stop_reason(const std::string& s) {
    if (s == "m_threshold") return StopReason::m_threshold;
    if (s == "time_threshold") return StopReason::time_threshold;
    throw ConfigError("stop_reason", "unknown value '" + s + "'");
}

}  // namespace

TraceRecord trace_record(const FrameTrace& t) {
    return {t.frame_index, t.l_active, t.m_success, t.cop_elapsed, t.top_elapsed, t.stop_reason};
}

json opt_result_to_json(const OptResult& r) {
    return {{"l_active", r.l_active}, {"m_opt", r.m_opt},   {"p_opt", r.p_opt},
            {"t_cop_opt", r.t_cop_opt}, {"c_total", r.c_total}};
}

OptResult opt_result_from_json(const json& j) {
    OptResult r;
    r.l_active = j.at("l_active").get<std::int64_t>();
    r.m_opt = j.at("m_opt").get<std::int64_t>();
    r.p_opt = j.at("p_opt").get<double>();
    r.t_cop_opt = j.at("t_cop_opt").get<double>();
    r.c_total = j.at("c_total").get<double>();
    return r;
}

json sim_stats_to_json(const SimStats& s) {
    return {{"frames", s.frames},
            {"mean_throughput", s.mean_throughput},
            {"utility", s.utility},
            {"mean_delay", finite_or_null(s.mean_delay)},
            {"infeasible_frames", s.infeasible_frames},
            {"delivered", s.delivered}};
}

SimStats sim_stats_from_json(const json& j) {
    SimStats s;
    s.frames = j.at("frames").get<std::int64_t>();
    s.mean_throughput = j.at("mean_throughput").get<double>();
    s.utility = j.at("utility").get<double>();
    s.mean_delay = number_or_inf(j.at("mean_delay"));
    s.infeasible_frames = j.at("infeasible_frames").get<std::int64_t>();
    s.delivered = j.at("delivered").get<std::int64_t>();
    return s;
}

json trace_record_to_json(const TraceRecord& r) {
    return {{"frame_index", r.frame_index}, {"l_active", r.l_active},       {"m_success", r.m_success},
            {"cop_elapsed", r.cop_elapsed}, {"top_elapsed", r.top_elapsed}, {"stop_reason", to_string(r.stop_reason)}};
}

TraceRecord trace_record_from_json(const json& j) {
    TraceRecord r;
    r.frame_index = j.at("frame_index").get<std::int64_t>();
    r.l_active = j.at("l_active").get<std::int64_t>();
    r.m_success = j.at("m_success").get<std::int64_t>();
    r.cop_elapsed = j.at("cop_elapsed").get<double>();
    r.top_elapsed = j.at("top_elapsed").get<double>();
    r.stop_reason = parse_stop_reason(j.at("stop_reason").get<std::string>());
    return r;
}

json frame_stats_to_json(const FrameStats& f) {
    return {{"frame_index", f.frame_index}, {"l_active", f.l_active},       {"delivered", f.delivered},
            {"bits", f.bits},               {"useful_time", f.useful_time}, {"delay_sum", f.delay_sum},
            {"infeasible", f.infeasible}};
}

FrameStats frame_stats_from_json(const json& j) {
    FrameStats f;
    f.frame_index = j.at("frame_index").get<std::int64_t>();
    f.l_active = j.at("l_active").get<std::int64_t>();
    f.delivered = j.at("delivered").get<std::int64_t>();
    f.bits = j.at("bits").get<double>();
    f.useful_time = j.at("useful_time").get<double>();
    f.delay_sum = j.at("delay_sum").get<double>();
    f.infeasible = j.at("infeasible").get<bool>();
    return f;
}

}  // namespace hybridmac
