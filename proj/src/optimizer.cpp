#include "hybridmac/optimizer.hpp"

#include <cmath>
#include <string>

#include "hybridmac/errors.hpp"

namespace hybridmac {

Micros cop_time(std::int64_t m, std::int64_t l_active, double p, const TimingParams& params,
                const OptimizerOptions& options) {
    const ContentionPoint point{l_active, m, p};
    if (options.model == CopModel::exact) {
        return t_cop_exact(point, params, options.count);
    }
    return t_cop_asymptotic(point, params);
}

PMinimum min_cop_over_p(std::int64_t m, std::int64_t l_active, const TimingParams& params,
                        const OptimizerOptions& options) {
    if (!(options.p_tolerance > 0.0)) {
        throw DomainError("p tolerance must be > 0");
    }
    const ContentionPoint probe{l_active, m, 0.5};
    probe.validate();

    // Convex in p, so golden section converges to the unique minimiser. Large
    // p overflows to +inf, and ties move the bracket left, towards finite values.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = kPSearchEpsilon;
    double hi = 1.0 - kPSearchEpsilon;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    Micros fc = cop_time(m, l_active, c, params, options);
    Micros fd = cop_time(m, l_active, d, params, options);
    while (hi - lo > options.p_tolerance) {
        if (fc <= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = cop_time(m, l_active, c, params, options);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = cop_time(m, l_active, d, params, options);
        }
    }
    const double p = fc <= fd ? c : d;
    return {p, cop_time(m, l_active, p, params, options)};
}

Micros frame_budget(const TimingParams& params, bool include_overheads) {
    return include_overheads ? params.t_frame - params.t_np - params.t_ap : params.t_frame;
}

OptResult optimize(std::int64_t l_active, const TimingParams& params, const OptimizerOptions& options) {
    if (l_active < 2) {
        throw DomainError("optimisation needs l_active >= 2, got " + std::to_string(l_active));
    }
    params.validate();
    const Micros budget = frame_budget(params, options.include_overheads);

    auto fits = [&](std::int64_t m, PMinimum& best) {
        best = min_cop_over_p(m, l_active, params, options);
        return best.t_cop + static_cast<double>(m) * params.t_tran <= budget;
    };

    PMinimum best_lo;
    if (!fits(1, best_lo)) {
        throw InfeasibleError("a single transmission does not fit: min COP " + std::to_string(best_lo.t_cop) +
                              " us + t_tran exceeds budget " + std::to_string(budget) + " us");
    }

    // min_p T(M, p) + M t_tran is strictly increasing in M: bisect for the
    // last feasible M in [1, L-1].
    std::int64_t lo = 1;
    std::int64_t hi = l_active - 1;
    PMinimum best_hi;
    if (fits(hi, best_hi)) {
        lo = hi;
        best_lo = best_hi;
    } else {
        while (hi - lo > 1) {
            const std::int64_t mid = lo + (hi - lo) / 2;
            PMinimum probe;
            if (fits(mid, probe)) {
                lo = mid;
                best_lo = probe;
            } else {
                hi = mid;
            }
        }
    }

    OptResult r;
    r.l_active = l_active;
    r.m_opt = lo;
    r.p_opt = best_lo.p;
    r.t_cop_opt = best_lo.t_cop;
    r.c_total = static_cast<double>(lo) * params.rate * params.t_tran;
    return r;
}

}  // namespace hybridmac
