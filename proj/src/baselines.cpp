#include "hybridmac/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hybridmac/errors.hpp"

namespace hybridmac {

void AlohaConfig::validate() const {
    if (!(q > 0.0 && q <= 1.0)) {
        throw ConfigError("aloha_q", "must lie in (0,1], got " + std::to_string(q));
    }
    if (slot < 0.0) {
        throw ConfigError("aloha_slot", "must be > 0 (or 0 for the default)");
    }
}

void TdmaConfig::validate() const {
    if (k_total < 1) {
        throw ConfigError("k_total", "TDMA needs at least one device");
    }
    if (slot < 0.0) {
        throw ConfigError("tdma_slot", "must be > 0 (or 0 for the default)");
    }
}

FrameStats run_aloha_frame(std::int64_t l_active, const AlohaConfig& cfg, const TimingParams& params, Rng& rng,
                           std::int64_t frame_index) {
    cfg.validate();
    FrameStats f;
    f.frame_index = frame_index;
    f.l_active = l_active;

    const Micros slot = cfg.slot_length(params);
    const auto slots = static_cast<std::int64_t>(std::floor(params.t_frame / slot));
    std::int64_t pending = l_active;

    double p_none = 1.0;
    double p_one = 0.0;
    auto refresh = [&] {
        if (pending == 0) return;
        if (cfg.q >= 1.0) {
            p_none = 0.0;
            p_one = pending == 1 ? 1.0 : 0.0;
            return;
        }
        const double lg = std::log1p(-cfg.q);
        const auto n = static_cast<double>(pending);
        p_none = std::exp(n * lg);
        p_one = n * cfg.q * std::exp((n - 1.0) * lg);
    };
    refresh();

    for (std::int64_t k = 1; k <= slots && pending > 0; ++k) {
        const double u = rng.uniform();
        if (u >= p_none && u < p_none + p_one) {
            --pending;
            ++f.delivered;
            f.delay_sum += static_cast<double>(k) * slot;
            refresh();
        }
    }
    f.bits = static_cast<double>(f.delivered) * params.rate * params.t_tran;
    f.useful_time = static_cast<double>(f.delivered) * slot;
    return f;
}

bool tdma_device_active(std::int64_t id, std::int64_t l_active, std::int64_t k_total) {
    // floor((id+1) L / K) - floor(id L / K) is 1 for exactly L ids in [0, K).
    return ((id + 1) * l_active) / k_total - (id * l_active) / k_total == 1;
}

FrameStats run_tdma_frame(std::int64_t l_active, const TdmaConfig& cfg, const TimingParams& params,
                          std::int64_t frame_index) {
    cfg.validate();
    FrameStats f;
    f.frame_index = frame_index;
    f.l_active = l_active;

    const Micros slot = cfg.slot_length(params);
    const auto slots = static_cast<std::int64_t>(std::floor(params.t_frame / slot));
    const std::int64_t k = cfg.k_total;
    const std::int64_t active = std::clamp<std::int64_t>(l_active, 0, k);
    const std::int64_t first_owner = ((frame_index % k) * (slots % k)) % k;

    std::int64_t used = 0;
    for (std::int64_t j = 0; j < slots; ++j) {
        const std::int64_t owner = (first_owner + j) % k;
        if (!tdma_device_active(owner, active, k)) continue;
        ++used;
        // owners repeat only every k slots
        if (j < k) {
            ++f.delivered;
            f.delay_sum += static_cast<double>(j + 1) * slot;
        }
    }
    f.bits = static_cast<double>(used) * params.rate * slot;
    f.useful_time = static_cast<double>(used) * slot;
    return f;
}

}  // namespace hybridmac
