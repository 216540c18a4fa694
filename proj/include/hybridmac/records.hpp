#pragma once

// Line-delimited JSON records emitted by the CLI. Each `*_to_json` has a
// matching parser that restores equal field values; non-finite doubles are
// written as null and read back as +inf.

#include <string>

#include <json.hpp>

#include "hybridmac/metrics.hpp"
#include "hybridmac/optimizer.hpp"
#include "hybridmac/sim_engine.hpp"

namespace hybridmac {

/// Per-frame summary written by `simulate --trace`.
struct TraceRecord {
    std::int64_t frame_index = 0;
    std::int64_t l_active = 0;
    std::int64_t m_success = 0;
    Micros cop_elapsed = 0.0;
    Micros top_elapsed = 0.0;
    StopReason stop_reason = StopReason::m_threshold;

    bool operator==(const TraceRecord&) const = default;
};

TraceRecord trace_record(const FrameTrace& trace);

nlohmann::json opt_result_to_json(const OptResult& r);
OptResult opt_result_from_json(const nlohmann::json& j);

nlohmann::json sim_stats_to_json(const SimStats& s);
SimStats sim_stats_from_json(const nlohmann::json& j);

nlohmann::json trace_record_to_json(const TraceRecord& r);
TraceRecord trace_record_from_json(const nlohmann::json& j);

nlohmann::json frame_stats_to_json(const FrameStats& f);
FrameStats frame_stats_from_json(const nlohmann::json& j);

}  // namespace hybridmac
