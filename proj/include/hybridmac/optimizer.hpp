#pragma once

#include <cstdint>

#include "hybridmac/contention_model.hpp"
#include "hybridmac/timing.hpp"

namespace hybridmac {

/// Which expression of the expected COP time enters the frame constraint.
enum class CopModel {
    asymptotic,
    exact,
};

struct OptimizerOptions {
    /// Budget is t_frame when false; t_frame - t_np - t_ap when true.
    bool include_overheads = false;
    CopModel model = CopModel::asymptotic;
    /// Contender indexing used by the exact model.
    ContenderCount count = ContenderCount::remaining;
    /// Bracket tolerance of the golden-section search on p.
    double p_tolerance = 1e-9;
};

struct OptResult {
    std::int64_t l_active = 0;
    std::int64_t m_opt = 0;
    double p_opt = 0.0;
    Micros t_cop_opt = 0.0;
    /// m_opt * rate * t_tran, bits per frame.
    double c_total = 0.0;

    bool operator==(const OptResult&) const = default;
};

struct PMinimum {
    double p = 0.0;
    Micros t_cop = 0.0;
};

/// Lower end of the open search interval (eps, 1 - eps).
inline constexpr double kPSearchEpsilon = 1e-6;

/// Expected COP time of M successes at p under the selected model.
Micros cop_time(std::int64_t m, std::int64_t l_active, double p, const TimingParams& params,
                const OptimizerOptions& options = {});

/// Golden-section minimisation of the COP time over p for fixed (M, L).
PMinimum min_cop_over_p(std::int64_t m, std::int64_t l_active, const TimingParams& params,
                        const OptimizerOptions& options = {});

/// Frame budget the COP plus TOP must fit in.
Micros frame_budget(const TimingParams& params, bool include_overheads);

/// Largest feasible M and its COP-minimising p.
/// Throws DomainError when l_active < 2 and InfeasibleError when M = 1
/// already exceeds the budget.
OptResult optimize(std::int64_t l_active, const TimingParams& params, const OptimizerOptions& options = {});

}  // namespace hybridmac
