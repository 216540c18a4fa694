#pragma once

#include <cstdint>

#include "hybridmac/metrics.hpp"
#include "hybridmac/rng.hpp"
#include "hybridmac/timing.hpp"

namespace hybridmac {

/// Slotted ALOHA within one frame. Pending devices transmit in every slot
/// with probability q until they succeed; nothing carries over to the next
/// frame.
struct AlohaConfig {
    double q = 0.08;
    /// Slot length; 0 selects delta_succ (one request-sized exchange).
    Micros slot = 0.0;

    Micros slot_length(const TimingParams& params) const { return slot > 0.0 ? slot : params.delta_succ(); }
    void validate() const;
};

/// Static TDMA: floor(t_frame/slot) slots per frame, owners cycled over all
/// k_total devices continuing from the previous frame.
struct TdmaConfig {
    std::int64_t k_total = 1;
    /// Slot length; 0 selects t_tran.
    Micros slot = 0.0;

    Micros slot_length(const TimingParams& params) const { return slot > 0.0 ? slot : params.t_tran; }
    void validate() const;
};

/// A success is credited rate * t_tran bits so the three protocols share one
/// throughput unit; useful time is the successful slot time.
FrameStats run_aloha_frame(std::int64_t l_active, const AlohaConfig& cfg, const TimingParams& params, Rng& rng,
                           std::int64_t frame_index = 0);

/// Whether device `id` is one of the `l_active` active devices. Active
/// devices are spread evenly over the id range, so the owners of any run of
/// consecutive slots are active in proportion l_active / k_total.
bool tdma_device_active(std::int64_t id, std::int64_t l_active, std::int64_t k_total);

/// Deterministic; a slot delivers rate * slot bits iff its owner is active.
/// Delay of a device is the end of its first delivering slot.
FrameStats run_tdma_frame(std::int64_t l_active, const TdmaConfig& cfg, const TimingParams& params,
                          std::int64_t frame_index = 0);

}  // namespace hybridmac
