#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hybridmac/optimizer.hpp"
#include "hybridmac/rng.hpp"
#include "hybridmac/timing.hpp"

namespace hybridmac {

enum class DeviceMode { sleeping, contending, awaiting_ap, transmitting, done };

struct DeviceState {
    std::int64_t id = 0;
    bool has_data = false;
    std::optional<std::int64_t> granted_slot;
    DeviceMode mode = DeviceMode::sleeping;
};

enum class CopEventKind { idle, collision, success };

struct CopEvent {
    CopEventKind kind = CopEventKind::idle;
    Micros start = 0.0;  // relative to COP start
    Micros duration = 0.0;
    std::int64_t device = -1;  // winner of a success event
};

enum class StopReason { m_threshold, time_threshold };

/// COP result before the AP/TOP are laid out.
struct CopOutcome {
    std::int64_t m_success = 0;
    Micros cop_elapsed = 0.0;
    StopReason stop_reason = StopReason::m_threshold;
    std::vector<CopEvent> events;
    /// Device ids in the order they won.
    std::vector<std::int64_t> winners;
};

/// Runs p-persistent contention among devices 0..l_active-1.
///
/// Each slot boundary first checks the two thresholds (successes >= m_cap,
/// then elapsed >= t_cop_cap); otherwise every remaining contender
/// transmits with probability p. A busy period that starts before the
/// time threshold always completes. When no contenders remain the COP ends
/// at once with StopReason::time_threshold.
CopOutcome run_cop(std::int64_t l_active, double p, std::int64_t m_cap, Micros t_cop_cap,
                   const TimingParams& params, Rng& rng, bool record_events = true);

/// Time threshold applied at the BS.
enum class CopThreshold {
    /// Largest COP that still leaves room for m_cap slots after the worst
    /// overshoot: t_frame - t_np - t_ap - m_cap t_tran - max_event.
    frame_slack,
    /// min(T_COP,opt, frame_slack): the expected COP time itself.
    expected,
};

/// Parameters broadcast in the NP.
struct FramePlan {
    std::int64_t m_cap = 0;
    double p = 0.0;
    Micros t_cop_cap = 0.0;
};

/// Turns an optimisation result into broadcast caps that keep the frame
/// budget: m_cap is lowered if the frame cannot absorb the overshoot guard.
FramePlan plan_frame(const OptResult& opt, const TimingParams& params, CopThreshold threshold);

struct Grant {
    std::int64_t device = 0;
    std::int64_t slot = 0;
    Micros start = 0.0;  // relative to frame start
    Micros end = 0.0;
};

struct FrameTrace {
    std::int64_t frame_index = 0;
    std::int64_t l_active = 0;
    std::int64_t m_success = 0;
    Micros cop_elapsed = 0.0;
    Micros top_elapsed = 0.0;
    StopReason stop_reason = StopReason::m_threshold;
    std::vector<CopEvent> cop_events;
    FramePlan plan;
    /// AP announcement: winners in success order with their TOP slots.
    std::vector<Grant> grants;
    std::vector<DeviceState> devices;
};

/// NP, COP, AP, TOP for one frame. The winners get consecutive TOP slots in
/// the order they succeeded.
FrameTrace run_frame(std::int64_t frame_index, std::int64_t l_active, const FramePlan& plan,
                     const TimingParams& params, Rng& rng, bool record_events = true);

}  // namespace hybridmac
