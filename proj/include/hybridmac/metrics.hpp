#pragma once

#include <cstdint>
#include <limits>

#include "hybridmac/optimizer.hpp"
#include "hybridmac/sim_engine.hpp"
#include "hybridmac/timing.hpp"

namespace hybridmac {

/// Per-frame measurements shared by all three protocols.
struct FrameStats {
    std::int64_t frame_index = 0;
    std::int64_t l_active = 0;
    /// Devices that completed a delivery this frame.
    std::int64_t delivered = 0;
    double bits = 0.0;
    /// Time spent in useful (collision-free data) transmission.
    Micros useful_time = 0.0;
    /// Sum over delivering devices of their completion time since frame start.
    Micros delay_sum = 0.0;
    bool infeasible = false;
};

struct SimStats {
    std::int64_t frames = 0;
    /// Bits per frame.
    double mean_throughput = 0.0;
    /// Mean useful_time / t_frame.
    double utility = 0.0;
    /// Mean completion time over delivering devices; +inf if none delivered.
    Micros mean_delay = std::numeric_limits<double>::infinity();
    std::int64_t infeasible_frames = 0;
    std::int64_t delivered = 0;

    bool operator==(const SimStats&) const = default;
};

class StatsAccumulator {
public:
    explicit StatsAccumulator(Micros t_frame) : t_frame_(t_frame) {}

    void add(const FrameStats& f);
    SimStats result() const;

private:
    Micros t_frame_;
    std::int64_t frames_ = 0;
    std::int64_t infeasible_ = 0;
    std::int64_t delivered_ = 0;
    double bits_ = 0.0;
    double utility_ = 0.0;
    double delay_ = 0.0;
};

/// T_TOP / T_frame.
double utility(const FrameTrace& trace, const TimingParams& params);

/// Folds a hybrid frame into the shared measurements.
FrameStats frame_stats(const FrameTrace& trace, const TimingParams& params);

/// Closed-form mean delay of a scheduled device:
/// T_NP + T_COP + T_AP + ((T_frame - T_COP - T_NP - T_AP)/2)(1 - 1/M) + T_tran.
/// Throws DomainError when m_opt == 0.
Micros analytic_delay(const OptResult& opt, const TimingParams& params);

/// rate * t_frame.
inline double capacity_bits(const TimingParams& params) { return params.rate * params.t_frame; }

}  // namespace hybridmac
