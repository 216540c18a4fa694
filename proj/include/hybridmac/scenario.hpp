#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "hybridmac/baselines.hpp"
#include "hybridmac/metrics.hpp"
#include "hybridmac/optimizer.hpp"
#include "hybridmac/sim_engine.hpp"
#include "hybridmac/timing.hpp"

namespace hybridmac {

enum class Protocol { hybrid, aloha, tdma };

enum class ActivityKind {
    /// L = round(f K) every frame.
    fixed_fraction,
    /// Each of the K devices is active independently with probability a.
    per_device_prob,
};

struct ActivityRule {
    ActivityKind kind = ActivityKind::fixed_fraction;
    double value = 0.3;

    bool operator==(const ActivityRule&) const = default;
};

struct ScenarioConfig {
    std::int64_t k_total = 100;
    ActivityRule activity;
    Protocol protocol = Protocol::hybrid;
    std::int64_t frames = 1000;
    std::uint64_t seed = 1;
    double aloha_q = 0.08;
    /// 0 selects the protocol default (delta_succ for ALOHA, t_tran for TDMA).
    Micros aloha_slot = 0.0;
    Micros tdma_slot = 0.0;
    bool include_overheads = false;
    CopModel cop_model = CopModel::asymptotic;
    CopThreshold cop_threshold = CopThreshold::frame_slack;
    /// Relative half-width of the uniform error in the BS estimate of L.
    double l_estimate_noise = 0.0;

    void validate() const;
    bool operator==(const ScenarioConfig&) const = default;
};

std::string_view to_string(Protocol p);
std::string_view to_string(ActivityKind k);
std::string_view to_string(CopModel m);
std::string_view to_string(CopThreshold t);
std::string_view to_string(StopReason r);
/// Throw ConfigError naming `field` on unknown names.
Protocol parse_protocol(std::string_view s, const std::string& field = "protocol");
ActivityKind parse_activity(std::string_view s, const std::string& field = "activity");
CopModel parse_cop_model(std::string_view s, const std::string& field = "cop_model");
CopThreshold parse_cop_threshold(std::string_view s, const std::string& field = "cop_threshold");

/// Per-frame callbacks. Either may be empty.
struct ScenarioSinks {
    std::function<void(const FrameTrace&)> on_trace;
    std::function<void(const FrameStats&)> on_frame;
};

/// Runs `config.frames` frames of the configured protocol. Identical
/// (config, params) give bit-identical results. Hybrid frames whose
/// optimisation is infeasible count as frames with no delivery.
SimStats run_scenario(const ScenarioConfig& config, const TimingParams& params, const ScenarioSinks& sinks = {});

/// Optimizer settings implied by a scenario.
OptimizerOptions optimizer_options(const ScenarioConfig& config);

}  // namespace hybridmac
