#pragma once

namespace hybridmac {

/// Durations are plain doubles in microseconds throughout the library.
using Micros = double;

/// Protocol time constants. All durations in microseconds, `rate` in bits
/// per microsecond (1.728 Gbps == 1728 bit/us).
struct TimingParams {
    Micros t_frame = 50'000.0;
    Micros t_np = 10.2;
    Micros t_ap = 10.2;
    Micros t_tran = 1'000.0;
    Micros t_req = 22.2;
    Micros t_ack = 7.5;
    Micros sifs = 2.5;
    Micros bifs = 7.5;
    Micros delta_idle = 10.0;
    double rate = 1728.0;

    /// Collision period: T_req + BIFS.
    Micros delta_coll() const noexcept { return t_req + bifs; }
    /// Successful request exchange: T_req + SIFS + T_ACK + BIFS.
    Micros delta_succ() const noexcept { return t_req + sifs + t_ack + bifs; }
    /// Longest indivisible contention event.
    Micros max_event() const noexcept;

    /// Bits delivered by one TOP slot.
    double bits_per_slot() const noexcept { return rate * t_tran; }

    /// Throws ConfigError naming the first violated invariant.
    void validate() const;

    bool operator==(const TimingParams&) const = default;
};

/// Reference timing profile with delta_idle = 10 us and a 50 ms frame.
inline TimingParams reference_params(Micros t_frame = 50'000.0) {
    TimingParams p;
    p.t_frame = t_frame;
    return p;
}

}  // namespace hybridmac
