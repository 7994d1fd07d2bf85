#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zzlab/dynamics.hpp"
#include "zzlab/errors.hpp"
#include "zzlab/model.hpp"
#include "zzlab/perturbation.hpp"
#include "zzlab/pulse.hpp"
#include "zzlab/spectrum.hpp"
#include "zzlab/sweep.hpp"

namespace py = pybind11;
using namespace zzlab;

PYBIND11_MODULE(_zzlab, m) {
  m.doc() = "Transmon-coupler-transmon ZZ/XY simulator";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<ResourceLimit>(m, "ResourceLimit", error.ptr());
  py::register_exception<SingularParameter>(m, "SingularParameter", error.ptr());
  py::register_exception<IllDefined>(m, "IllDefined", error.ptr());
  py::register_exception<IntegratorFailure>(m, "IntegratorFailure", error.ptr());

  py::enum_<CouplingScaling>(m, "CouplingScaling")
      .value("constant", CouplingScaling::constant)
      .value("sqrt_frequency", CouplingScaling::sqrt_frequency);

  py::class_<ModeSpec>(m, "ModeSpec")
      .def(py::init([](std::string label, double frequency, double anharmonicity, int n_levels) {
             return ModeSpec{std::move(label), frequency, anharmonicity, n_levels};
           }),
           py::arg("label"), py::arg("frequency"), py::arg("anharmonicity") = 0.0, py::arg("n_levels") = 5)
      .def_readwrite("label", &ModeSpec::label)
      .def_readwrite("frequency", &ModeSpec::frequency)
      .def_readwrite("anharmonicity", &ModeSpec::anharmonicity)
      .def_readwrite("n_levels", &ModeSpec::n_levels);

  py::class_<CouplingSpec>(m, "CouplingSpec")
      .def(py::init([](std::string a, std::string b, double strength, CouplingScaling scaling) {
             return CouplingSpec{std::move(a), std::move(b), strength, scaling};
           }),
           py::arg("mode_a"), py::arg("mode_b"), py::arg("strength"),
           py::arg("scaling") = CouplingScaling::constant)
      .def_readwrite("mode_a", &CouplingSpec::mode_a)
      .def_readwrite("mode_b", &CouplingSpec::mode_b)
      .def_readwrite("strength", &CouplingSpec::strength)
      .def_readwrite("scaling", &CouplingSpec::scaling);

  py::class_<DriveSpec>(m, "DriveSpec")
      .def(py::init([](std::string target, double amplitude, double frequency, double phase) {
             return DriveSpec{std::move(target), amplitude, frequency, phase};
           }),
           py::arg("target_mode"), py::arg("amplitude"), py::arg("frequency"), py::arg("phase") = 0.0)
      .def_readwrite("target_mode", &DriveSpec::target_mode)
      .def_readwrite("amplitude", &DriveSpec::amplitude)
      .def_readwrite("frequency", &DriveSpec::frequency)
      .def_readwrite("phase", &DriveSpec::phase);

  py::class_<DeviceSpec>(m, "DeviceSpec")
      .def(py::init([](std::vector<ModeSpec> modes, std::vector<CouplingSpec> couplings, bool rwa) {
             return DeviceSpec{std::move(modes), std::move(couplings), rwa};
           }),
           py::arg("modes"), py::arg("couplings") = std::vector<CouplingSpec>{}, py::arg("rwa") = false)
      .def_readwrite("modes", &DeviceSpec::modes)
      .def_readwrite("couplings", &DeviceSpec::couplings)
      .def_readwrite("rwa", &DeviceSpec::rwa)
      .def_readwrite("energy_offset", &DeviceSpec::energy_offset)
      .def("validate", &DeviceSpec::validate)
      .def("dimension", &DeviceSpec::dimension)
      .def("with_mode_frequency", &DeviceSpec::with_mode_frequency)
      .def("with_coupling", &DeviceSpec::with_coupling)
      .def("with_levels", &DeviceSpec::with_levels);

  m.def("lowering_operator", &lowering_operator, py::arg("n_levels"));
  m.def(
      "build_hamiltonian", [](const DeviceSpec& spec) { return build_hamiltonian(spec).matrix(); }, py::arg("spec"),
      "Hamiltonian in rad/ns.");
  m.def(
      "bare_index", [](const DeviceSpec& spec, std::vector<int> occ) { return bare_index(spec, occ); },
      py::arg("spec"), py::arg("occupations"));

  m.def(
      "zz_strength", [](const DeviceSpec& spec) { return zz_strength(spec); }, py::arg("spec"));
  m.def(
      "dressed_frequencies", [](const DeviceSpec& spec) { return dressed_frequencies(spec); }, py::arg("spec"));
  m.def(
      "xy_strength_resonant", [](const DeviceSpec& spec) { return xy_strength_resonant(spec); }, py::arg("spec"));

  py::class_<CouplingReport>(m, "CouplingReport")
      .def_readonly("zeta", &CouplingReport::zeta)
      .def_readonly("j_resonant", &CouplingReport::j_resonant)
      .def_readonly("omega1", &CouplingReport::omega1)
      .def_readonly("omega2", &CouplingReport::omega2)
      .def_readonly("mixed", &CouplingReport::mixed)
      .def_readonly("overlaps", &CouplingReport::overlaps);
  m.def("coupling_report", &coupling_report, py::arg("spec"), py::arg("hybridization") = 0.25);

  py::class_<DetuningSet>(m, "DetuningSet")
      .def_readonly("delta1", &DetuningSet::delta1)
      .def_readonly("delta2", &DetuningSet::delta2)
      .def_readonly("delta12", &DetuningSet::delta12)
      .def_readonly("delta_bar", &DetuningSet::delta_bar);
  m.def("detunings", &detunings, py::arg("spec"));
  m.def("xy_perturbative", &xy_perturbative, py::arg("spec"));
  m.def("xy_perturbative_counter_rotating", &xy_perturbative_counter_rotating, py::arg("spec"));

  py::class_<ZZBreakdown>(m, "ZZBreakdown")
      .def_readonly("zeta_020", &ZZBreakdown::zeta_020)
      .def_readonly("zeta_200", &ZZBreakdown::zeta_200)
      .def_readonly("zeta_002", &ZZBreakdown::zeta_002)
      .def_readonly("zeta_1", &ZZBreakdown::zeta_1)
      .def_readonly("total", &ZZBreakdown::total)
      .def_readonly("j020", &ZZBreakdown::j020)
      .def_readonly("j200", &ZZBreakdown::j200)
      .def_readonly("j002", &ZZBreakdown::j002)
      .def_readonly("near_singular", &ZZBreakdown::near_singular);
  m.def(
      "zz_perturbative", [](const DeviceSpec& spec) { return zz_perturbative(spec); }, py::arg("spec"));

  py::class_<RegimeReport>(m, "RegimeReport")
      .def_readonly("ratio1", &RegimeReport::ratio1)
      .def_readonly("ratio2", &RegimeReport::ratio2)
      .def_readonly("dispersive", &RegimeReport::dispersive)
      .def_readonly("quasi_dispersive", &RegimeReport::quasi_dispersive)
      .def_readonly("straddling", &RegimeReport::straddling);
  m.def(
      "regime_check", [](const DeviceSpec& spec) { return regime_check(spec); }, py::arg("spec"));

  py::class_<FlatTopPulse>(m, "FlatTopPulse")
      .def(py::init([](double idle, double interaction, double rise, double hold, double start) {
             return FlatTopPulse{idle, interaction, rise, hold, start};
           }),
           py::arg("idle_value"), py::arg("interaction_value"), py::arg("rise_time") = 5.66,
           py::arg("hold_time") = 0.0, py::arg("start_time") = 0.0)
      .def_readwrite("idle_value", &FlatTopPulse::idle_value)
      .def_readwrite("interaction_value", &FlatTopPulse::interaction_value)
      .def_readwrite("rise_time", &FlatTopPulse::rise_time)
      .def_readwrite("hold_time", &FlatTopPulse::hold_time)
      .def_readwrite("start_time", &FlatTopPulse::start_time)
      .def("end_time", &FlatTopPulse::end_time);
  m.def("flattop_value", &flattop_value, py::arg("pulse"), py::arg("t"));

  py::class_<CrResult>(m, "CrResult")
      .def_readonly("resolved", &CrResult::resolved)
      .def_readonly("period", &CrResult::period)
      .def_readonly("j_estimate", &CrResult::j_estimate)
      .def_readonly("contrast", &CrResult::contrast)
      .def_readonly("delta12", &CrResult::delta12)
      .def_readonly("times", &CrResult::times)
      .def_readonly("target_population", &CrResult::target_population);
  m.def("cross_resonance_drive", &cross_resonance_drive, py::arg("spec"), py::arg("amplitude"));
  m.def(
      "cr_period",
      [](const DeviceSpec& spec, const DriveSpec& drive, double duration, double dt, std::size_t samples) {
        return cr_period(spec, drive, duration, CrOptions{dt, samples});
      },
      py::arg("spec"), py::arg("drive"), py::arg("duration"), py::arg("dt") = kDefaultDrivenDt,
      py::arg("samples") = 2000);

  py::class_<GateMetrics>(m, "GateMetrics")
      .def_readonly("swap_error", &GateMetrics::swap_error)
      .def_readonly("leakage_l1", &GateMetrics::leakage_l1)
      .def_readonly("conditional_phase_error", &GateMetrics::conditional_phase_error)
      .def_readonly("fidelity", &GateMetrics::fidelity)
      .def_readonly("hold_time", &GateMetrics::hold_time);
  py::class_<IswapPlan>(m, "IswapPlan")
      .def(py::init([](std::vector<std::pair<std::string, double>> targets, double rise, double hold, double dt) {
             return IswapPlan{std::move(targets), rise, hold, dt};
           }),
           py::arg("targets"), py::arg("rise_time") = 5.66, py::arg("hold_time") = 0.0,
           py::arg("dt") = kDefaultFluxDt)
      .def_readwrite("targets", &IswapPlan::targets)
      .def_readwrite("rise_time", &IswapPlan::rise_time)
      .def_readwrite("hold_time", &IswapPlan::hold_time)
      .def_readwrite("dt", &IswapPlan::dt);
  m.def(
      "iswap_matrix",
      [](const DeviceSpec& idle, const IswapPlan& plan) {
        const auto gate = iswap_unitary(idle, plan.schedule(idle), plan.dt);
        return py::make_tuple(Eigen::Matrix4cd(gate.matrix), gate.leakage);
      },
      py::arg("idle"), py::arg("plan"), "Computational block and per-input leakage.");
  m.def(
      "iswap_metrics",
      [](const DeviceSpec& idle, const IswapPlan& plan) {
        return gate_metrics(iswap_unitary(idle, plan.schedule(idle), plan.dt), plan.hold_time);
      },
      py::arg("idle"), py::arg("plan"));
  m.def(
      "gate_metrics", [](const Eigen::Matrix4cd& m4) { return gate_metrics(m4); }, py::arg("matrix"));
  m.def("iswap_fidelity", &iswap_fidelity, py::arg("matrix"));
  m.def("conditional_phase_error", &conditional_phase_error, py::arg("matrix"));
  m.def("dressed_resonance_target", &dressed_resonance_target, py::arg("idle"), py::arg("coupler"),
        py::arg("coupler_frequency"), py::arg("partner"), py::arg("search_half_width") = 0.05);
  m.def(
      "hold_scan",
      [](const DeviceSpec& idle, const IswapPlan& plan, std::vector<double> holds, unsigned threads) {
        return hold_scan(idle, plan, holds, threads);
      },
      py::arg("idle"), py::arg("plan"), py::arg("holds"), py::arg("threads") = 1);

  m.def("device_at", &device_at, py::arg("base"), py::arg("wc"), py::arg("g12_mhz"));
  m.def(
      "zero_zz_roots",
      [](const DeviceSpec& base, double wc, std::pair<double, double> bracket) {
        return zero_zz_roots(base, wc, bracket);
      },
      py::arg("base"), py::arg("wc"), py::arg("g12_bracket"));
  m.def("zero_xy_g12", &zero_xy_g12, py::arg("base"), py::arg("wc"));
  m.def(
      "landscape",
      [](const DeviceSpec& base, std::tuple<double, double, double> wc, std::tuple<double, double, double> g12,
         const std::string& quantity, unsigned threads) {
        GridSpec grid;
        grid.wc = {std::get<0>(wc), std::get<1>(wc), std::get<2>(wc)};
        grid.g12 = {std::get<0>(g12), std::get<1>(g12), std::get<2>(g12)};
        grid.quantity = quantity_from_string(quantity);
        const auto l = landscape(base, grid, threads);
        py::list rows;
        for (const auto& c : l.cells)
          rows.append(py::make_tuple(c.wc, c.g12, c.value ? py::cast(*c.value) : py::none(), c.masked));
        return rows;
      },
      py::arg("base"), py::arg("wc_axis"), py::arg("g12_axis"), py::arg("quantity") = "zeta_exact",
      py::arg("threads") = 1, "Rows of (wc_GHz, g12_MHz, value_MHz or None, masked).");
  m.def(
      "trace_branches",
      [](const DeviceSpec& base, std::tuple<double, double, double> wc, std::pair<double, double> bracket,
         unsigned threads) {
        const auto points = trace_branches(base, {std::get<0>(wc), std::get<1>(wc), std::get<2>(wc)}, bracket, {},
                                           threads);
        py::list rows;
        for (const auto& p : points)
          rows.append(py::make_tuple(p.wc, p.g12_root, p.zeta_residual, p.maintained_j, to_string(p.branch_id),
                                     p.discontinuity));
        return rows;
      },
      py::arg("base"), py::arg("wc_axis"), py::arg("g12_bracket"), py::arg("threads") = 1,
      "Rows of (wc_GHz, g12_MHz, zeta_kHz, J_MHz, branch, break).");
}
