#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hybridmac/config.hpp"
#include "hybridmac/contention_model.hpp"
#include "hybridmac/errors.hpp"
#include "hybridmac/harness.hpp"
#include "hybridmac/metrics.hpp"
#include "hybridmac/optimizer.hpp"
#include "hybridmac/scenario.hpp"
#include "hybridmac/sim_engine.hpp"

namespace py = pybind11;
using namespace hybridmac;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hybrid contention/TDMA MAC model, optimiser and simulator";

    auto base_error = py::register_exception<Error>(m, "Error");
    py::register_exception<ConfigError>(m, "ConfigError", base_error);
    py::register_exception<DomainError>(m, "DomainError", base_error);
    py::register_exception<DegenerateIndexError>(m, "DegenerateIndexError", base_error);
    py::register_exception<StepTooLargeError>(m, "StepTooLargeError", base_error);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", base_error);

    py::class_<TimingParams>(m, "TimingParams")
        .def(py::init<>())
        .def_readwrite("t_frame", &TimingParams::t_frame)
        .def_readwrite("t_np", &TimingParams::t_np)
        .def_readwrite("t_ap", &TimingParams::t_ap)
        .def_readwrite("t_tran", &TimingParams::t_tran)
        .def_readwrite("t_req", &TimingParams::t_req)
        .def_readwrite("t_ack", &TimingParams::t_ack)
        .def_readwrite("sifs", &TimingParams::sifs)
        .def_readwrite("bifs", &TimingParams::bifs)
        .def_readwrite("delta_idle", &TimingParams::delta_idle)
        .def_readwrite("rate", &TimingParams::rate)
        .def_property_readonly("delta_coll", &TimingParams::delta_coll)
        .def_property_readonly("delta_succ", &TimingParams::delta_succ)
        .def("validate", &TimingParams::validate)
        .def(py::self == py::self);
    m.def("reference_params", &reference_params, py::arg("t_frame") = 50'000.0);

    py::enum_<ContenderCount>(m, "ContenderCount")
        .value("others", ContenderCount::others)
        .value("remaining", ContenderCount::remaining);
    py::enum_<CopModel>(m, "CopModel").value("asymptotic", CopModel::asymptotic).value("exact", CopModel::exact);
    py::enum_<CopThreshold>(m, "CopThreshold")
        .value("frame_slack", CopThreshold::frame_slack)
        .value("expected", CopThreshold::expected);
    py::enum_<Protocol>(m, "Protocol")
        .value("hybrid", Protocol::hybrid)
        .value("aloha", Protocol::aloha)
        .value("tdma", Protocol::tdma);
    py::enum_<ActivityKind>(m, "ActivityKind")
        .value("fixed_fraction", ActivityKind::fixed_fraction)
        .value("per_device_prob", ActivityKind::per_device_prob);
    py::enum_<SweepAxis>(m, "SweepAxis")
        .value("k_total", SweepAxis::k_total)
        .value("l_active", SweepAxis::l_active)
        .value("t_frame", SweepAxis::t_frame);

    m.def("expected_collisions", &expected_collisions, py::arg("l_active"), py::arg("i"), py::arg("p"));
    m.def("expected_idle", &expected_idle, py::arg("l_active"), py::arg("i"), py::arg("p"), py::arg("params"));
    m.def(
        "t_cop_exact",
        [](std::int64_t l, std::int64_t mm, double p, const TimingParams& t, ContenderCount c) {
            return t_cop_exact({l, mm, p}, t, c);
        },
        py::arg("l_active"), py::arg("m"), py::arg("p"), py::arg("params"),
        py::arg("count") = ContenderCount::remaining);
    m.def(
        "t_cop_asymptotic",
        [](std::int64_t l, std::int64_t mm, double p, const TimingParams& t) { return t_cop_asymptotic({l, mm, p}, t); },
        py::arg("l_active"), py::arg("m"), py::arg("p"), py::arg("params"));

    py::class_<OptimizerOptions>(m, "OptimizerOptions")
        .def(py::init<>())
        .def_readwrite("include_overheads", &OptimizerOptions::include_overheads)
        .def_readwrite("model", &OptimizerOptions::model)
        .def_readwrite("count", &OptimizerOptions::count)
        .def_readwrite("p_tolerance", &OptimizerOptions::p_tolerance);
    py::class_<OptResult>(m, "OptResult")
        .def_readonly("l_active", &OptResult::l_active)
        .def_readonly("m_opt", &OptResult::m_opt)
        .def_readonly("p_opt", &OptResult::p_opt)
        .def_readonly("t_cop_opt", &OptResult::t_cop_opt)
        .def_readonly("c_total", &OptResult::c_total)
        .def("__repr__", [](const OptResult& r) {
            return "OptResult(l_active=" + std::to_string(r.l_active) + ", m_opt=" + std::to_string(r.m_opt) +
                   ", p_opt=" + format_number(r.p_opt) + ", t_cop_opt=" + format_number(r.t_cop_opt) + ")";
        });
    m.def("optimize", &optimize, py::arg("l_active"), py::arg("params"), py::arg("options") = OptimizerOptions{});
    m.def("analytic_delay", &analytic_delay, py::arg("opt"), py::arg("params"));

    py::class_<SimStats>(m, "SimStats")
        .def_readonly("frames", &SimStats::frames)
        .def_readonly("mean_throughput", &SimStats::mean_throughput)
        .def_readonly("utility", &SimStats::utility)
        .def_readonly("mean_delay", &SimStats::mean_delay)
        .def_readonly("infeasible_frames", &SimStats::infeasible_frames)
        .def_readonly("delivered", &SimStats::delivered)
        .def(py::self == py::self);

    py::class_<ActivityRule>(m, "ActivityRule")
        .def(py::init<>())
        .def(py::init([](ActivityKind k, double v) { return ActivityRule{k, v}; }), py::arg("kind"), py::arg("value"))
        .def_readwrite("kind", &ActivityRule::kind)
        .def_readwrite("value", &ActivityRule::value);
    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("k_total", &ScenarioConfig::k_total)
        .def_readwrite("activity", &ScenarioConfig::activity)
        .def_readwrite("protocol", &ScenarioConfig::protocol)
        .def_readwrite("frames", &ScenarioConfig::frames)
        .def_readwrite("seed", &ScenarioConfig::seed)
        .def_readwrite("aloha_q", &ScenarioConfig::aloha_q)
        .def_readwrite("aloha_slot", &ScenarioConfig::aloha_slot)
        .def_readwrite("tdma_slot", &ScenarioConfig::tdma_slot)
        .def_readwrite("include_overheads", &ScenarioConfig::include_overheads)
        .def_readwrite("cop_model", &ScenarioConfig::cop_model)
        .def_readwrite("cop_threshold", &ScenarioConfig::cop_threshold)
        .def_readwrite("l_estimate_noise", &ScenarioConfig::l_estimate_noise)
        .def("validate", &ScenarioConfig::validate);
    m.def(
        "run_scenario", [](const ScenarioConfig& c, const TimingParams& t) { return run_scenario(c, t); },
        py::arg("config"), py::arg("params"), py::call_guard<py::gil_scoped_release>());

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("protocol", &SweepRow::protocol)
        .def_readonly("axis", &SweepRow::axis)
        .def_readonly("value", &SweepRow::value)
        .def_readonly("stats", &SweepRow::stats)
        .def_readonly("seed", &SweepRow::seed)
        .def_readonly("error", &SweepRow::error);
    m.def("sweep", &sweep, py::arg("axis"), py::arg("values"), py::arg("protocols"), py::arg("base"),
          py::arg("params"), py::arg("threads") = 0u, py::call_guard<py::gil_scoped_release>());

    py::class_<Config>(m, "Config")
        .def_readonly("timing", &Config::timing)
        .def_readonly("scenario", &Config::scenario);
    m.def(
        "load_config", [](const std::string& path) { return load_config(path); }, py::arg("path"));
}
