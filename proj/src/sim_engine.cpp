#include "hybridmac/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hybridmac {

namespace {

// Probabilities that nobody / exactly one of n contenders transmits.
struct SlotOdds {
    double none = 1.0;
    double one = 0.0;
};

SlotOdds slot_odds(std::int64_t n, double p) {
    if (n == 0) return {1.0, 0.0};
    if (p >= 1.0) return {0.0, n == 1 ? 1.0 : 0.0};
    const double lg = std::log1p(-p);
    const auto nd = static_cast<double>(n);
    return {std::exp(nd * lg), nd * p * std::exp((nd - 1.0) * lg)};
}

}  // namespace

CopOutcome run_cop(std::int64_t l_active, double p, std::int64_t m_cap, Micros t_cop_cap,
                   const TimingParams& params, Rng& rng, bool record_events) {
    CopOutcome out;
    std::vector<std::int64_t> contenders(static_cast<std::size_t>(std::max<std::int64_t>(l_active, 0)));
    std::iota(contenders.begin(), contenders.end(), std::int64_t{0});

    const Micros d_idle = params.delta_idle;
    const Micros d_coll = params.delta_coll();
    const Micros d_succ = params.delta_succ();

    SlotOdds odds = slot_odds(static_cast<std::int64_t>(contenders.size()), p);
    auto record = [&](CopEventKind kind, Micros duration, std::int64_t device) {
        if (record_events) {
            out.events.push_back({kind, out.cop_elapsed, duration, device});
        }
        out.cop_elapsed += duration;
    };

    while (true) {
        if (out.m_success >= m_cap) {
            out.stop_reason = StopReason::m_threshold;
            break;
        }
        if (out.cop_elapsed >= t_cop_cap || contenders.empty()) {
            out.stop_reason = StopReason::time_threshold;
            break;
        }
        const double u = rng.uniform();
        if (u < odds.none) {
            record(CopEventKind::idle, d_idle, -1);
        } else if (u < odds.none + odds.one) {
            const auto k = static_cast<std::size_t>(rng.below(contenders.size()));
            const std::int64_t winner = contenders[k];
            contenders[k] = contenders.back();
            contenders.pop_back();
            record(CopEventKind::success, d_succ, winner);
            out.winners.push_back(winner);
            ++out.m_success;
            odds = slot_odds(static_cast<std::int64_t>(contenders.size()), p);
        } else {
            record(CopEventKind::collision, d_coll, -1);
        }
    }
    return out;
}

FramePlan plan_frame(const OptResult& opt, const TimingParams& params, CopThreshold threshold) {
    FramePlan plan;
    plan.p = opt.p_opt;
    plan.m_cap = opt.m_opt;
    auto slack = [&](std::int64_t m) {
        return params.t_frame - params.t_np - params.t_ap - static_cast<double>(m) * params.t_tran -
               params.max_event();
    };
    while (plan.m_cap > 0 && slack(plan.m_cap) <= 0.0) {
        --plan.m_cap;
    }
    plan.t_cop_cap = std::max(slack(plan.m_cap), 0.0);
    if (threshold == CopThreshold::expected) {
        plan.t_cop_cap = std::min(plan.t_cop_cap, opt.t_cop_opt);
    }
    return plan;
}

FrameTrace run_frame(std::int64_t frame_index, std::int64_t l_active, const FramePlan& plan,
                     const TimingParams& params, Rng& rng, bool record_events) {
    FrameTrace trace;
    trace.frame_index = frame_index;
    trace.l_active = l_active;
    trace.plan = plan;

    // NP: every active device wakes up and contends.
    trace.devices.resize(static_cast<std::size_t>(l_active));
    for (std::int64_t id = 0; id < l_active; ++id) {
        trace.devices[static_cast<std::size_t>(id)] = {id, true, std::nullopt, DeviceMode::contending};
    }

    CopOutcome cop = run_cop(l_active, plan.p, plan.m_cap, plan.t_cop_cap, params, rng, record_events);
    for (const std::int64_t id : cop.winners) {
        trace.devices[static_cast<std::size_t>(id)].mode = DeviceMode::awaiting_ap;
    }

    // AP: announce winners and their TOP slots; losers go back to sleep.
    const Micros top_start = params.t_np + cop.cop_elapsed + params.t_ap;
    trace.grants.reserve(cop.winners.size());
    for (std::size_t slot = 0; slot < cop.winners.size(); ++slot) {
        const std::int64_t id = cop.winners[slot];
        const Micros start = top_start + static_cast<double>(slot) * params.t_tran;
        trace.grants.push_back({id, static_cast<std::int64_t>(slot), start, start + params.t_tran});
        auto& dev = trace.devices[static_cast<std::size_t>(id)];
        dev.granted_slot = static_cast<std::int64_t>(slot);
        dev.mode = DeviceMode::transmitting;
    }
    for (auto& dev : trace.devices) {
        // TOP runs to completion within the frame.
        dev.mode = dev.granted_slot ? DeviceMode::done : DeviceMode::sleeping;
    }

    trace.m_success = cop.m_success;
    trace.cop_elapsed = cop.cop_elapsed;
    trace.stop_reason = cop.stop_reason;
    trace.cop_events = std::move(cop.events);
    trace.top_elapsed = static_cast<double>(trace.m_success) * params.t_tran;
    return trace;
}

}  // namespace hybridmac
