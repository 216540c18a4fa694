#include "hybridmac/metrics.hpp"

#include "hybridmac/errors.hpp"

namespace hybridmac {

void StatsAccumulator::add(const FrameStats& f) {
    ++frames_;
    if (f.infeasible) ++infeasible_;
    delivered_ += f.delivered;
    bits_ += f.bits;
    utility_ += f.useful_time / t_frame_;
    delay_ += f.delay_sum;
}

SimStats StatsAccumulator::result() const {
    SimStats s;
    s.frames = frames_;
    s.infeasible_frames = infeasible_;
    s.delivered = delivered_;
    if (frames_ > 0) {
        s.mean_throughput = bits_ / static_cast<double>(frames_);
        s.utility = utility_ / static_cast<double>(frames_);
    }
    if (delivered_ > 0) {
        s.mean_delay = delay_ / static_cast<double>(delivered_);
    }
    return s;
}

double utility(const FrameTrace& trace, const TimingParams& params) {
    return trace.top_elapsed / params.t_frame;
}

FrameStats frame_stats(const FrameTrace& trace, const TimingParams& params) {
    FrameStats f;
    f.frame_index = trace.frame_index;
    f.l_active = trace.l_active;
    f.delivered = trace.m_success;
    f.bits = static_cast<double>(trace.m_success) * params.rate * params.t_tran;
    f.useful_time = trace.top_elapsed;
    for (const Grant& g : trace.grants) {
        f.delay_sum += g.end;
    }
    return f;
}

Micros analytic_delay(const OptResult& opt, const TimingParams& params) {
    if (opt.m_opt < 1) {
        throw DomainError("delay is undefined without scheduled devices (m_opt = 0)");
    }
    const double m = static_cast<double>(opt.m_opt);
    const Micros top_wait = (params.t_frame - opt.t_cop_opt - params.t_np - params.t_ap) / 2.0 * (1.0 - 1.0 / m);
    return params.t_np + opt.t_cop_opt + params.t_ap + top_wait + params.t_tran;
}

}  // namespace hybridmac
