#include "hybridmac/contention_model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hybridmac/errors.hpp"

namespace hybridmac {

namespace {

void require_probability(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("contention probability must lie in (0,1), got " + std::to_string(p));
    }
}

// expm1(x) - x without cancellation near 0.
double expm1_minus_x(double x) {
    if (std::abs(x) < 1e-2) {
        double term = x * x / 2.0;
        double sum = 0.0;
        for (int k = 3; k < 12; ++k) {
            sum += term;
            term *= x / k;
        }
        return sum + term;
    }
    return std::expm1(x) - x;
}

// -log(1-p) - p = p^2/2 + p^3/3 + ...
double neg_log1m_minus_p(double p) {
    if (p < 1e-2) {
        double pk = p * p;
        double sum = 0.0;
        for (int k = 2; k < 14; ++k) {
            sum += pk / k;
            pk *= p;
        }
        return sum;
    }
    return -std::log1p(-p) - p;
}

void check_index(std::int64_t l_active, std::int64_t i) {
    if (i < 1) {
        throw DegenerateIndexError("success index must be >= 1, got " + std::to_string(i));
    }
    if (i >= l_active) {
        throw DegenerateIndexError("success index " + std::to_string(i) +
                                   " must be below the active count " + std::to_string(l_active));
    }
}

void check_contenders(std::int64_t n) {
    if (n < 1) {
        throw DegenerateIndexError("need at least one contender, got " + std::to_string(n));
    }
}

}  // namespace

void ContentionPoint::validate() const {
    require_probability(p);
    if (m_target < 0) {
        throw DegenerateIndexError("m_target must be >= 0");
    }
    if (m_target > 0 && m_target > l_active - 1) {
        throw DegenerateIndexError("m_target " + std::to_string(m_target) + " must not exceed l_active - 1 = " +
                                   std::to_string(l_active - 1));
    }
}

double collisions_with(std::int64_t contenders, double p) {
    require_probability(p);
    check_contenders(contenders);
    // E[N] = (1/r - 1 - (n-1)p) / (np), r = (1-p)^(n-1)
    //      = (expm1(x) - x + (n-1)(a - p)) / (np),  a = -log1p(-p), x = (n-1)a
    const auto n = static_cast<double>(contenders);
    const double a = -std::log1p(-p);
    const double x = (n - 1.0) * a;
    const double numer = expm1_minus_x(x) + (n - 1.0) * neg_log1m_minus_p(p);
    return numer / (n * p);
}

Micros idle_with(std::int64_t contenders, double p, Micros delta_idle) {
    require_probability(p);
    check_contenders(contenders);
    // q / (1 - q) = 1 / (1/q - 1) = 1 / expm1(n a)
    const double na = static_cast<double>(contenders) * -std::log1p(-p);
    return delta_idle / std::expm1(na);
}

Micros success_time_with(std::int64_t contenders, double p, const TimingParams& params) {
    const double collisions = collisions_with(contenders, p);
    // (E[N] + 1) E[Idle] collapses to delta_idle (1-p) / (np); the product form
    // turns into inf * 0 once E[N] overflows
    const Micros idle_total = params.delta_idle * (1.0 - p) / (static_cast<double>(contenders) * p);
    return idle_total + collisions * params.delta_coll() + params.delta_succ();
}

double expected_collisions(std::int64_t l_active, std::int64_t i, double p) {
    require_probability(p);
    check_index(l_active, i);
    return collisions_with(l_active - i, p);
}

Micros expected_idle(std::int64_t l_active, std::int64_t i, double p, const TimingParams& params) {
    require_probability(p);
    check_index(l_active, i);
    return idle_with(l_active - i, p, params.delta_idle);
}

Micros t_cop_exact(const ContentionPoint& point, const TimingParams& params, ContenderCount count) {
    point.validate();
    const std::int64_t shift = count == ContenderCount::remaining ? 1 : 0;
    Micros total = 0.0;
    for (std::int64_t i = 1; i <= point.m_target; ++i) {
        total += success_time_with(point.l_active - i + shift, point.p, params);
    }
    return total;
}

Micros asymptotic_cost_per_success(std::int64_t l_active, double p, const TimingParams& params) {
    require_probability(p);
    if (l_active < 1) {
        throw DegenerateIndexError("l_active must be >= 1");
    }
    const auto l = static_cast<double>(l_active);
    const double lp = l * p;
    // 1/(Lp(1-p)^(L-1)) - 1/(Lp) = expm1((L-1) a) / (Lp)
    const double growth = std::expm1((l - 1.0) * -std::log1p(-p));
    const double collisions = growth / lp - 1.0;
    return params.delta_idle / lp + params.delta_succ() + collisions * params.delta_coll();
}

Micros t_cop_asymptotic(const ContentionPoint& point, const TimingParams& params) {
    point.validate();
    return static_cast<double>(point.m_target) * asymptotic_cost_per_success(point.l_active, point.p, params);
}

double t_cop_second_difference_p(const ContentionPoint& point, const TimingParams& params, double h) {
    point.validate();
    if (!(h > 0.0) || !(point.p - h > 0.0) || !(point.p + h < 1.0)) {
        throw StepTooLargeError("p +/- h must stay inside (0,1)");
    }
    auto at = [&](double p) {
        ContentionPoint q = point;
        q.p = p;
        return t_cop_asymptotic(q, params);
    };
    return at(point.p + h) - 2.0 * at(point.p) + at(point.p - h);
}

Sign t_cop_second_derivative_sign(const ContentionPoint& point, const TimingParams& params, double h) {
    const double d2 = t_cop_second_difference_p(point, params, h);
    if (d2 > 0.0) return Sign::positive;
    if (d2 < 0.0) return Sign::negative;
    return Sign::zero;
}

double t_cop_second_difference_m(const ContentionPoint& point, const TimingParams& params) {
    point.validate();
    if (point.m_target < 1) {
        throw DegenerateIndexError("second difference in M needs M >= 1");
    }
    // the three evaluations share one per-success cost, so combine the integer
    // weights first: f(m+1) - 2 f(m) + f(m-1) = ((m+1) - 2m + (m-1)) * cost
    const std::int64_t m = point.m_target;
    const std::int64_t weight = (m + 1) - 2 * m + (m - 1);
    return static_cast<double>(weight) * asymptotic_cost_per_success(point.l_active, point.p, params);
}

}  // namespace hybridmac
