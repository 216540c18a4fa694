#include "hybridmac/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "hybridmac/errors.hpp"

namespace hybridmac {

void ScenarioConfig::validate() const {
    if (k_total < 0) throw ConfigError("k_total", "must be >= 0");
    if (frames < 1) throw ConfigError("frames", "must be >= 1");
    if (!(activity.value >= 0.0 && activity.value <= 1.0)) {
        throw ConfigError("activity_value", "must lie in [0,1]");
    }
    if (!(aloha_q > 0.0 && aloha_q <= 1.0)) throw ConfigError("aloha_q", "must lie in (0,1]");
    if (aloha_slot < 0.0) throw ConfigError("aloha_slot", "must be >= 0");
    if (tdma_slot < 0.0) throw ConfigError("tdma_slot", "must be >= 0");
    if (!(l_estimate_noise >= 0.0 && l_estimate_noise < 1.0)) {
        throw ConfigError("l_estimate_noise", "must lie in [0,1)");
    }
    if (protocol == Protocol::tdma && k_total < 1) throw ConfigError("k_total", "TDMA needs k_total >= 1");
}

std::string_view to_string(Protocol p) {
    switch (p) {
        case Protocol::hybrid: return "hybrid";
        case Protocol::aloha: return "aloha";
        case Protocol::tdma: return "tdma";
    }
    return "?";
}

std::string_view to_string(ActivityKind k) {
    return k == ActivityKind::fixed_fraction ? "fixed_fraction" : "per_device_prob";
}

std::string_view to_string(CopModel m) { return m == CopModel::exact ? "exact" : "asymptotic"; }

std::string_view to_string(CopThreshold t) { return t == CopThreshold::expected ? "expected" : "frame_slack"; }

std::string_view to_string(StopReason r) {
    return r == StopReason::m_threshold ? "m_threshold" : "time_threshold";
}

Protocol parse_protocol(std::string_view s, const std::string& field) {
    if (s == "hybrid") return Protocol::hybrid;
    if (s == "aloha") return Protocol::aloha;
    if (s == "tdma") return Protocol::tdma;
    throw ConfigError(field, "unknown protocol '" + std::string(s) + "' (hybrid|aloha|tdma)");
}

ActivityKind parse_activity(std::string_view s, const std::string& field) {
    if (s == "fixed_fraction") return ActivityKind::fixed_fraction;
    if (s == "per_device_prob") return ActivityKind::per_device_prob;
    throw ConfigError(field, "unknown activity rule '" + std::string(s) + "' (fixed_fraction|per_device_prob)");
}

CopModel parse_cop_model(std::string_view s, const std::string& field) {
    if (s == "asymptotic") return CopModel::asymptotic;
    if (s == "exact") return CopModel::exact;
    throw ConfigError(field, "unknown COP model '" + std::string(s) + "' (asymptotic|exact)");
}

CopThreshold parse_cop_threshold(std::string_view s, const std::string& field) {
    if (s == "frame_slack") return CopThreshold::frame_slack;
    if (s == "expected") return CopThreshold::expected;
    throw ConfigError(field, "unknown COP threshold '" + std::string(s) + "' (frame_slack|expected)");
}

OptimizerOptions optimizer_options(const ScenarioConfig& config) {
    OptimizerOptions o;
    o.include_overheads = config.include_overheads;
    o.model = config.cop_model;
    return o;
}

namespace {

std::int64_t draw_active(const ScenarioConfig& config, Rng& rng) {
    if (config.activity.kind == ActivityKind::fixed_fraction) {
        return std::llround(config.activity.value * static_cast<double>(config.k_total));
    }
    std::int64_t l = 0;
    for (std::int64_t d = 0; d < config.k_total; ++d) {
        if (rng.bernoulli(config.activity.value)) ++l;
    }
    return l;
}

std::int64_t estimate_active(std::int64_t l_active, double noise, Rng& rng) {
    if (noise <= 0.0) return l_active;
    const double factor = 1.0 + noise * (2.0 * rng.uniform() - 1.0);
    return std::max<std::int64_t>(0, std::llround(static_cast<double>(l_active) * factor));
}

class HybridPlanner {
public:
    HybridPlanner(const ScenarioConfig& config, const TimingParams& params)
        : params_(params), options_(optimizer_options(config)), threshold_(config.cop_threshold) {}

    // nullopt when the optimisation is infeasible
    std::optional<FramePlan> plan(std::int64_t l_estimate) {
        if (l_estimate == 0) return FramePlan{};
        // the BS always plans for at least two contenders
        const std::int64_t l = std::max<std::int64_t>(l_estimate, 2);
        auto it = cache_.find(l);
        if (it == cache_.end()) {
            std::optional<FramePlan> entry;
            try {
                entry = plan_frame(optimize(l, params_, options_), params_, threshold_);
            } catch (const InfeasibleError&) {
                // cached as infeasible
            }
            it = cache_.emplace(l, entry).first;
        }
        return it->second;
    }

private:
    const TimingParams& params_;
    OptimizerOptions options_;
    CopThreshold threshold_;
    std::map<std::int64_t, std::optional<FramePlan>> cache_;
};

}  // namespace

SimStats run_scenario(const ScenarioConfig& config, const TimingParams& params, const ScenarioSinks& sinks) {
    config.validate();
    params.validate();

    Rng rng(config.seed);
    StatsAccumulator acc(params.t_frame);
    HybridPlanner planner(config, params);
    const AlohaConfig aloha{config.aloha_q, config.aloha_slot};
    const TdmaConfig tdma{std::max<std::int64_t>(config.k_total, 1), config.tdma_slot};
    const bool keep_events = static_cast<bool>(sinks.on_trace);

    for (std::int64_t frame = 0; frame < config.frames; ++frame) {
        const std::int64_t l_active = draw_active(config, rng);
        FrameStats stats;
        switch (config.protocol) {
            case Protocol::hybrid: {
                const std::int64_t l_est = estimate_active(l_active, config.l_estimate_noise, rng);
                const std::optional<FramePlan> plan = planner.plan(l_est);
                if (!plan) {
                    stats.frame_index = frame;
                    stats.l_active = l_active;
                    stats.infeasible = true;
                    break;
                }
                const FrameTrace trace = run_frame(frame, l_active, *plan, params, rng, keep_events);
                if (sinks.on_trace) sinks.on_trace(trace);
                stats = frame_stats(trace, params);
                break;
            }
            case Protocol::aloha:
                stats = run_aloha_frame(l_active, aloha, params, rng, frame);
                break;
            case Protocol::tdma:
                stats = run_tdma_frame(l_active, tdma, params, frame);
                break;
        }
        if (sinks.on_frame) sinks.on_frame(stats);
        acc.add(stats);
    }
    return acc.result();
}

}  // namespace hybridmac
