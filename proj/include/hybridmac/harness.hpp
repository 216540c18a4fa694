#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hybridmac/metrics.hpp"
#include "hybridmac/scenario.hpp"
#include "hybridmac/timing.hpp"

namespace hybridmac {

enum class SweepAxis {
    /// Total devices; L follows the base activity rule.
    k_total,
    /// Active devices per frame (fixed); K is raised to L when smaller.
    l_active,
    /// Frame length in microseconds.
    t_frame,
};

std::string_view to_string(SweepAxis a);
SweepAxis parse_axis(std::string_view s);

struct SweepRow {
    Protocol protocol = Protocol::hybrid;
    SweepAxis axis = SweepAxis::k_total;
    double value = 0.0;
    SimStats stats;
    std::uint64_t seed = 0;
    /// Empty on success; otherwise the failure that ended this cell.
    std::string error;
};

/// Seed of the cell (value_index, protocol); independent of which other
/// protocols are part of the sweep.
std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t value_index, Protocol protocol);

/// Scenario and timing of one sweep cell.
std::pair<ScenarioConfig, TimingParams> cell_setup(SweepAxis axis, double value, Protocol protocol,
                                                   const ScenarioConfig& base, const TimingParams& params);

/// One row per (protocol, value), ordered by protocol as given, then value.
/// Cells run on up to `threads` workers (0 = hardware concurrency); the
/// result does not depend on the thread count.
std::vector<SweepRow> sweep(SweepAxis axis, const std::vector<double>& values, const std::vector<Protocol>& protocols,
                            const ScenarioConfig& base, const TimingParams& params, unsigned threads = 0);

/// Fixed CSV column order.
inline constexpr std::string_view kSweepCsvHeader =
    "protocol,axis,value,frames,mean_throughput,utility,mean_delay,infeasible_frames,seed,status";

/// Six significant digits.
std::string format_number(double v);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Parses what write_sweep_csv produced (floats at 6 significant digits).
std::vector<SweepRow> read_sweep_csv(std::istream& is);

}  // namespace hybridmac
