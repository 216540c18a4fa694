#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "hybridmac/contention_model.hpp"
#include "hybridmac/optimizer.hpp"
#include "hybridmac/sim_engine.hpp"

using namespace hybridmac;

namespace {

constexpr double kNoCap = std::numeric_limits<double>::infinity();

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

void check_frame(const FrameTrace& f, const TimingParams& t) {
    CAPTURE(f.frame_index);
    CAPTURE(f.l_active);
    CHECK(f.m_success <= f.plan.m_cap);
    CHECK(t.t_np + f.cop_elapsed + t.t_ap + f.top_elapsed <= t.t_frame);
    CHECK(f.top_elapsed == static_cast<double>(f.m_success) * t.t_tran);
    CHECK(f.cop_elapsed <= f.plan.t_cop_cap + t.max_event());

    double sum = 0.0;
    std::int64_t successes = 0;
    std::set<std::int64_t> winners;
    for (const auto& e : f.cop_events) {
        CHECK(e.start == doctest::Approx(sum).epsilon(1e-12));
        sum += e.duration;
        if (e.kind == CopEventKind::success) {
            ++successes;
            CHECK(winners.insert(e.device).second);
        }
    }
    CHECK(sum == doctest::Approx(f.cop_elapsed).epsilon(1e-12));
    CHECK(successes == f.m_success);

    std::set<std::int64_t> slots;
    std::set<std::int64_t> granted;
    for (std::size_t k = 0; k < f.grants.size(); ++k) {
        const Grant& g = f.grants[k];
        CHECK(slots.insert(g.slot).second);
        CHECK(granted.insert(g.device).second);
        CHECK(g.slot == static_cast<std::int64_t>(k));
        CHECK(g.end - g.start == doctest::Approx(t.t_tran));
        CHECK(g.end <= t.t_frame);
        if (k > 0) CHECK(g.start == doctest::Approx(f.grants[k - 1].end));
    }
    CHECK(granted == winners);

    REQUIRE(f.devices.size() == static_cast<std::size_t>(f.l_active));
    std::int64_t holders = 0;
    for (const auto& d : f.devices) {
        CHECK(d.has_data);
        CHECK(d.granted_slot.has_value() == (winners.count(d.id) == 1));
        CHECK(d.mode == (d.granted_slot ? DeviceMode::done : DeviceMode::sleeping));
        holders += d.granted_slot ? 1 : 0;
    }
    CHECK(holders == f.m_success);
}

}  // namespace

TEST_CASE("run_cop: no contenders") {
    const TimingParams t = reference_params();
    Rng rng(1);
    const CopOutcome a = run_cop(0, 0.5, 5, 100.0, t, rng);
    CHECK(a.m_success == 0);
    CHECK(a.stop_reason == StopReason::time_threshold);
    CHECK(a.cop_elapsed <= 100.0 + t.delta_idle);
    CHECK(a.events.empty());

    const CopOutcome b = run_cop(0, 0.5, 0, 100.0, t, rng);
    CHECK(b.stop_reason == StopReason::m_threshold);
    CHECK(b.cop_elapsed == 0.0);
}

TEST_CASE("run_cop: deterministic single device") {
    const TimingParams t = reference_params();
    Rng rng(3);
    const CopOutcome c = run_cop(1, 1.0, 1, 1e6, t, rng);
    CHECK(c.m_success == 1);
    REQUIRE(c.events.size() == 1);
    CHECK(c.events[0].kind == CopEventKind::success);
    CHECK(c.events[0].device == 0);
    CHECK(c.cop_elapsed == doctest::Approx(39.7));
    CHECK(c.stop_reason == StopReason::m_threshold);
    CHECK(c.winners == std::vector<std::int64_t>{0});
}

TEST_CASE("run_cop: time threshold") {
    const TimingParams t = reference_params();
    Rng rng(5);
    // p tiny: the COP is almost all idle slots
    const CopOutcome c = run_cop(10, 1e-9, 5, 95.0, t, rng);
    CHECK(c.stop_reason == StopReason::time_threshold);
    CHECK(c.cop_elapsed == doctest::Approx(100.0));
    // a cap of zero stops before the first slot
    const CopOutcome z = run_cop(10, 0.5, 5, 0.0, t, rng);
    CHECK(z.stop_reason == StopReason::time_threshold);
    CHECK(z.cop_elapsed == 0.0);
}

TEST_CASE("run_cop agrees with the contention model: 46 winners among 100 at p = 0.06") {
    const TimingParams t = reference_params();
    Rng rng(20240601);
    const int frames = 10000;
    double m = 0.0;
    double elapsed = 0.0;
    for (int k = 0; k < frames; ++k) {
        const CopOutcome c = run_cop(100, 0.06, 46, kNoCap, t, rng, false);
        m += static_cast<double>(c.m_success);
        elapsed += c.cop_elapsed;
    }
    CHECK(rel_err(m / frames, 46.0) <= 0.05);
    CHECK(rel_err(elapsed / frames, t_cop_exact({100, 46, 0.06}, t)) <= 0.05);
}

TEST_CASE("per-success contention time matches the analytic mean") {
    const TimingParams t = reference_params();
    SUBCASE("first success, 10^5 samples") {
        for (auto [l, p] : {std::pair{50, 0.02}, std::pair{100, 0.06}, std::pair{5, 0.3}}) {
            Rng rng(static_cast<std::uint64_t>(l));
            const int samples = 100000;
            double sum = 0.0;
            for (int k = 0; k < samples; ++k) sum += run_cop(l, p, 1, kNoCap, t, rng, false).cop_elapsed;
            CAPTURE(l);
            CHECK(rel_err(sum / samples, success_time_with(l, p, t)) <= 0.02);
        }
    }
    SUBCASE("i-th success sees L - i + 1 contenders") {
        const std::int64_t l = 40;
        const double p = 0.03;
        const int rounds = 20000;
        std::vector<double> per(10, 0.0);
        Rng rng(77);
        for (int r = 0; r < rounds; ++r) {
            const CopOutcome c = run_cop(l, p, 10, kNoCap, t, rng);
            double last = 0.0;
            std::size_t idx = 0;
            for (const auto& e : c.events) {
                if (e.kind != CopEventKind::success) continue;
                const double end = e.start + e.duration;
                per[idx++] += end - last;
                last = end;
            }
        }
        for (std::int64_t i = 1; i <= 10; ++i) {
            CAPTURE(i);
            CHECK(rel_err(per[static_cast<std::size_t>(i - 1)] / rounds, success_time_with(l - i + 1, p, t)) <= 0.03);
        }
    }
}

TEST_CASE("plan_frame keeps the overshoot inside the frame") {
    const TimingParams t = reference_params();
    const OptResult opt = optimize(100, t);
    const FramePlan slack = plan_frame(opt, t, CopThreshold::frame_slack);
    CHECK(slack.m_cap == opt.m_opt);
    CHECK(slack.p == opt.p_opt);
    CHECK(slack.t_cop_cap == doctest::Approx(t.t_frame - t.t_np - t.t_ap - opt.m_opt * t.t_tran - t.max_event()));
    CHECK(slack.t_cop_cap >= opt.t_cop_opt);

    const FramePlan expected = plan_frame(opt, t, CopThreshold::expected);
    CHECK(expected.t_cop_cap == opt.t_cop_opt);

    // 50 slots cannot leave room for the guard in a 50 ms frame
    OptResult tight = opt;
    tight.m_opt = 50;
    const FramePlan lowered = plan_frame(tight, t, CopThreshold::frame_slack);
    CHECK(lowered.m_cap == 49);
    CHECK(lowered.t_cop_cap > 0.0);
}

TEST_CASE("frame invariants over random scenarios") {
    Rng pick(4242);
    for (double frame : {20000.0, 50000.0, 200000.0}) {
        const TimingParams t = reference_params(frame);
        for (std::int64_t l : {0, 1, 2, 3, 17, 46, 47, 100, 500, 3000}) {
            for (auto threshold : {CopThreshold::frame_slack, CopThreshold::expected}) {
                FramePlan plan;
                if (l >= 2) {
                    plan = plan_frame(optimize(l, t), t, threshold);
                } else {
                    plan = plan_frame(optimize(2, t), t, threshold);
                }
                for (int k = 0; k < 30; ++k) {
                    Rng rng(pick.below(1u << 30));
                    const FrameTrace f = run_frame(k, l, plan, t, rng);
                    check_frame(f, t);
                }
            }
        }
    }
}

TEST_CASE("empty TOP") {
    const TimingParams t = reference_params();
    Rng rng(9);
    const FrameTrace f = run_frame(0, 100, FramePlan{0, 0.01, 1000.0}, t, rng);
    CHECK(f.m_success == 0);
    CHECK(f.top_elapsed == 0.0);
    CHECK(f.grants.empty());
    CHECK(f.stop_reason == StopReason::m_threshold);
}

TEST_CASE("delivered bits track the objective") {
    const TimingParams t = reference_params();
    const OptResult opt = optimize(100, t);
    const FramePlan plan = plan_frame(opt, t, CopThreshold::frame_slack);
    Rng rng(123);
    const int frames = 10000;
    double bits = 0.0;
    for (int k = 0; k < frames; ++k) {
        bits += static_cast<double>(run_frame(k, 100, plan, t, rng, false).m_success) * t.rate * t.t_tran;
    }
    CHECK(rel_err(bits / frames, opt.c_total) <= 0.05);
}

TEST_CASE("identical seeds give identical event sequences") {
    const TimingParams t = reference_params();
    const FramePlan plan = plan_frame(optimize(300, t), t, CopThreshold::frame_slack);
    Rng a(55);
    Rng b(55);
    for (int k = 0; k < 20; ++k) {
        const FrameTrace x = run_frame(k, 300, plan, t, a);
        const FrameTrace y = run_frame(k, 300, plan, t, b);
        REQUIRE(x.cop_events.size() == y.cop_events.size());
        for (std::size_t e = 0; e < x.cop_events.size(); ++e) {
            CHECK(x.cop_events[e].kind == y.cop_events[e].kind);
            CHECK(x.cop_events[e].device == y.cop_events[e].device);
            CHECK(x.cop_events[e].start == y.cop_events[e].start);
        }
        CHECK(x.cop_elapsed == y.cop_elapsed);
    }
    Rng c(56);
    Rng d(55);
    CHECK(run_frame(0, 300, plan, t, c).cop_elapsed != run_frame(0, 300, plan, t, d).cop_elapsed);
}
