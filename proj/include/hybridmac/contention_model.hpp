#pragma once

// Closed-form expectations for p-persistent CSMA contention.
//
// The i-th success among L active devices is modelled as a renewal of
// identical slots: an idle slot (nobody attempts), a collision (>= 2
// attempts) or a success (exactly one attempt). With n contenders and
// per-slot probability p,
//
//   E[N^c]  = (1 - (1-p)^n) / (n p (1-p)^(n-1)) - 1
//   E[Idle] = (1-p)^n / (1 - (1-p)^n) * delta_idle
//
// and the expected contention time for M successes is the sum over i of
// (E[N^c]+1) E[Idle] + E[N^c] delta_coll + delta_succ.
//
// All powers of (1-p) are evaluated in log space so the formulas stay finite
// and free of cancellation for L up to ~1e5.

#include <cstdint>

#include "hybridmac/timing.hpp"

namespace hybridmac {

/// How many devices are still contending for the i-th success.
enum class ContenderCount {
    /// n = L - i: the i-th success sees L - i rivals, as in the closed-form
    /// sum written with that index.
    others,
    /// n = L - i + 1: the i-th success is won among every device that has
    /// not yet succeeded. This is what an L-device simulation measures.
    remaining,
};

struct ContentionPoint {
    std::int64_t l_active = 0;
    std::int64_t m_target = 0;
    double p = 0.0;

    /// Throws DomainError / DegenerateIndexError. `m_target == 0` is accepted
    /// (empty sum).
    void validate() const;
};

/// Expected collisions preceding the i-th success, with n = L - i contenders.
double expected_collisions(std::int64_t l_active, std::int64_t i, double p);

/// Expected idle time before each busy period of the i-th success
/// (n = L - i contenders).
Micros expected_idle(std::int64_t l_active, std::int64_t i, double p, const TimingParams& params);

/// Same quantities keyed directly by the number of contenders n >= 1.
double collisions_with(std::int64_t contenders, double p);
Micros idle_with(std::int64_t contenders, double p, Micros delta_idle);
/// Expected time to the next success with n contenders.
Micros success_time_with(std::int64_t contenders, double p, const TimingParams& params);

/// Expected COP duration for M successes (finite sum).
Micros t_cop_exact(const ContentionPoint& point, const TimingParams& params,
                   ContenderCount count = ContenderCount::remaining);

/// Large-L approximation, linear in M:
/// M [ delta_idle/(Lp) + delta_succ + (1/(Lp(1-p)^(L-1)) - 1/(Lp) - 1) delta_coll ].
Micros t_cop_asymptotic(const ContentionPoint& point, const TimingParams& params);

/// Per-success cost of the asymptotic form (t_cop_asymptotic at M = 1).
Micros asymptotic_cost_per_success(std::int64_t l_active, double p, const TimingParams& params);

enum class Sign { negative = -1, zero = 0, positive = 1 };

/// Central second difference of t_cop_asymptotic in p with step h.
/// Throws StepTooLargeError when p - h or p + h leaves (0,1).
double t_cop_second_difference_p(const ContentionPoint& point, const TimingParams& params, double h);

/// Sign of t_cop_second_difference_p.
Sign t_cop_second_derivative_sign(const ContentionPoint& point, const TimingParams& params, double h);

/// Second difference of t_cop_asymptotic in M (M-1, M, M+1). Requires M >= 1.
double t_cop_second_difference_m(const ContentionPoint& point, const TimingParams& params);

}  // namespace hybridmac
