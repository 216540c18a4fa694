#include "hybridmac/timing.hpp"

#include <algorithm>
#include <cmath>

#include "hybridmac/errors.hpp"

namespace hybridmac {

Micros TimingParams::max_event() const noexcept {
    return std::max({delta_idle, delta_coll(), delta_succ()});
}

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(name, "must be a finite value > 0");
    }
}

}  // namespace

void TimingParams::validate() const {
    require_positive(t_frame, "t_frame");
    require_positive(t_np, "t_np");
    require_positive(t_ap, "t_ap");
    require_positive(t_tran, "t_tran");
    require_positive(t_req, "t_req");
    require_positive(t_ack, "t_ack");
    require_positive(sifs, "sifs");
    require_positive(bifs, "bifs");
    require_positive(delta_idle, "delta_idle");
    require_positive(rate, "rate");
    if (t_np + t_ap + t_tran > t_frame) {
        throw ConfigError("t_frame", "must hold t_np + t_ap + t_tran");
    }
}

}  // namespace hybridmac
