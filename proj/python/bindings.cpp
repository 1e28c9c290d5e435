#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <vector>

#include "kinetx/iterate.hpp"
#include "kinetx/kinetics.hpp"
#include "kinetx/oracles.hpp"
#include "kinetx/solver.hpp"
#include "kinetx/statmech.hpp"

namespace py = pybind11;
using namespace kinetx;

PYBIND11_MODULE(_kinetx, m) {
  m.doc() = "Analytic, iterative and stochastic solvers for the reversible "
            "binary reaction A + B <-> C + D";
  m.attr("__version__") = "0.1.0";

  py::class_<ReactionSpec>(m, "ReactionSpec")
      .def(py::init<double, double, double, double, double>(), py::arg("n"),
           py::arg("v_B"), py::arg("v_D"), py::arg("sigma_fwd"),
           py::arg("sigma_bwd"))
      .def_readwrite("n", &ReactionSpec::n)
      .def_readwrite("v_B", &ReactionSpec::v_B)
      .def_readwrite("v_D", &ReactionSpec::v_D)
      .def_readwrite("sigma_fwd", &ReactionSpec::sigma_fwd)
      .def_readwrite("sigma_bwd", &ReactionSpec::sigma_bwd);

  py::class_<RateParams>(m, "RateParams")
      .def(py::init<double, double>(), py::arg("a"), py::arg("b"))
      .def_readwrite("a", &RateParams::a)
      .def_readwrite("b", &RateParams::b)
      .def("__repr__", [](const RateParams& r) {
        return "RateParams(a=" + std::to_string(r.a) +
               ", b=" + std::to_string(r.b) + ")";
      });

  py::class_<FixedPoints>(m, "FixedPoints")
      .def_readonly("x_stable", &FixedPoints::x_stable)
      .def_readonly("x_unstable", &FixedPoints::x_unstable)
      .def_readonly("degenerate", &FixedPoints::degenerate);

  py::enum_<Branch>(m, "Branch")
      .value("TANH", Branch::Tanh)
      .value("COTH", Branch::Coth)
      .value("FIXED", Branch::Fixed);

  py::class_<BranchOffset>(m, "BranchOffset")
      .def_readonly("branch", &BranchOffset::branch)
      .def_readonly("offset", &BranchOffset::offset);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("values", &Trajectory::values);

  py::class_<ConjugacyContext>(m, "ConjugacyContext")
      .def_static("make", &ConjugacyContext::make, py::arg("rates"))
      .def_readonly("rates", &ConjugacyContext::rates)
      .def_readonly("sqrt_ab", &ConjugacyContext::sqrt_ab)
      .def_readonly("tau", &ConjugacyContext::tau)
      .def_readonly("step_shift", &ConjugacyContext::step_shift)
      .def_readonly("degenerate", &ConjugacyContext::degenerate);

  py::class_<StochasticRun>(m, "StochasticRun")
      .def_readonly("times", &StochasticRun::times)
      .def_readonly("counts", &StochasticRun::counts)
      .def_readonly("n_total", &StochasticRun::n_total)
      .def_readonly("seed", &StochasticRun::seed);

  py::class_<EnsembleMean>(m, "EnsembleMean")
      .def_readonly("times", &EnsembleMean::times)
      .def_readonly("mean", &EnsembleMean::mean)
      .def_readonly("std_error", &EnsembleMean::std_error)
      .def_readonly("n_total", &EnsembleMean::n_total)
      .def_readonly("trials", &EnsembleMean::trials)
      .def_readonly("seed", &EnsembleMean::seed);

  py::class_<ThermoSpecies>(m, "ThermoSpecies")
      .def(py::init<double, int, double>(), py::arg("mass"),
           py::arg("degeneracy"), py::arg("chem_potential") = 0.0)
      .def_readwrite("mass", &ThermoSpecies::mass)
      .def_readwrite("degeneracy", &ThermoSpecies::degeneracy)
      .def_readwrite("chem_potential", &ThermoSpecies::chem_potential);

  py::class_<ThermoContext>(m, "ThermoContext")
      .def_static("si", &ThermoContext::si, py::arg("temperature"))
      .def_static("natural", &ThermoContext::natural, py::arg("temperature"))
      .def_readonly("temperature", &ThermoContext::temperature)
      .def_readonly("hbar", &ThermoContext::hbar)
      .def_readonly("k_B", &ThermoContext::k_B)
      .def_readonly("natural_units", &ThermoContext::natural_units);

  py::class_<ReactionQuartet>(m, "ReactionQuartet")
      .def(py::init<ThermoSpecies, ThermoSpecies, ThermoSpecies,
                    ThermoSpecies>(),
           py::arg("A"), py::arg("B"), py::arg("C"), py::arg("D"))
      .def_readwrite("A", &ReactionQuartet::A)
      .def_readwrite("B", &ReactionQuartet::B)
      .def_readwrite("C", &ReactionQuartet::C)
      .def_readwrite("D", &ReactionQuartet::D);

  py::class_<SpeedSet>(m, "SpeedSet")
      .def(py::init<double, double, double, double>(), py::arg("v_A"),
           py::arg("v_B"), py::arg("v_C"), py::arg("v_D"))
      .def_readwrite("v_A", &SpeedSet::v_A)
      .def_readwrite("v_B", &SpeedSet::v_B)
      .def_readwrite("v_C", &SpeedSet::v_C)
      .def_readwrite("v_D", &SpeedSet::v_D);

  // kinetics
  m.def("rates_from_spec", &rates_from_spec, py::arg("spec"));
  m.def("fixed_points", &fixed_points, py::arg("rates"));
  m.def("equilibrium_concentration", &equilibrium_concentration,
        py::arg("rates"));
  m.def("equilibrium_ratio", &equilibrium_ratio, py::arg("rates"));
  m.def("characteristic_time", &characteristic_time, py::arg("rates"));
  m.def("near_degenerate", &near_degenerate, py::arg("rates"));
  m.def("tau_gain_loss_form", &tau_gain_loss_form, py::arg("n_A"),
        py::arg("n_C"), py::arg("rate_AC"), py::arg("rate_CA"));
  m.def("mean_free_path", &mean_free_path, py::arg("n_B"), py::arg("sigma"));
  m.def("free_flight_time", &free_flight_time, py::arg("n_B"), py::arg("v_A"),
        py::arg("sigma"));
  m.def("pure_loss_fraction", &pure_loss_fraction, py::arg("t"),
        py::arg("tau_A"));
  m.def("concentration_rate", &concentration_rate, py::arg("rates"),
        py::arg("x"));

  // analytic solver
  m.def("integration_offset", &integration_offset, py::arg("rates"),
        py::arg("x0"));
  m.def("solve_at", &solve_at, py::arg("rates"), py::arg("x0"), py::arg("t"));
  m.def("solve_at_branch_form", &solve_at_branch_form, py::arg("rates"),
        py::arg("x0"), py::arg("t"));
  m.def("solve_a_equals_b", &solve_a_equals_b, py::arg("b"), py::arg("x0"),
        py::arg("t"));
  m.def(
      "solve_series",
      [](const RateParams& rates, double x0, const std::vector<double>& times) {
        return solve_series(rates, x0, times);
      },
      py::arg("rates"), py::arg("x0"), py::arg("times"));
  m.def("solve_complement", &solve_complement, py::arg("rates"),
        py::arg("x0_A"), py::arg("t"));

  // iterate map
  m.def("w_forward", &w_forward, py::arg("ctx"), py::arg("x"));
  m.def("w_inverse", &w_inverse, py::arg("ctx"), py::arg("z"));
  m.def("step_v", &step_v, py::arg("ctx"), py::arg("x"));
  m.def("step_v_degenerate", &step_v_degenerate, py::arg("b"), py::arg("x"));
  m.def("iterate_n", &iterate_n, py::arg("ctx"), py::arg("x0"), py::arg("m"));
  m.def("schroder_residual", &schroder_residual, py::arg("ctx"), py::arg("x"));
  m.def("semigroup_residual", &semigroup_residual, py::arg("rates"),
        py::arg("x0"), py::arg("t1"), py::arg("t2"));

  // oracles
  m.def(
      "rk4_integrate",
      [](const RateParams& rates, double x0, double t_end, double dt) {
        return rk4_integrate(rates, x0, t_end, dt);
      },
      py::arg("rates"), py::arg("x0"), py::arg("t_end"), py::arg("dt"));
  m.def("round_particle_count", &round_particle_count, py::arg("x0"),
        py::arg("n_total"));
  m.def("gillespie_simulate", &gillespie_simulate, py::arg("rates"),
        py::arg("n_total"), py::arg("x0"), py::arg("t_end"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_count_at", &run_count_at, py::arg("run"), py::arg("t"));
  m.def(
      "gillespie_ensemble_mean",
      [](const RateParams& rates, std::int64_t n_total, double x0,
         const std::vector<double>& grid, int trials, std::uint64_t seed) {
        py::gil_scoped_release release;
        return gillespie_ensemble_mean(rates, n_total, x0, grid, trials, seed);
      },
      py::arg("rates"), py::arg("n_total"), py::arg("x0"), py::arg("grid"),
      py::arg("trials"), py::arg("seed"));

  // statistical mechanics bridge
  m.def("thermal_wavelength", &thermal_wavelength, py::arg("species"),
        py::arg("ctx"));
  m.def("fugacity", &fugacity, py::arg("mu"), py::arg("ctx"));
  m.def("classical_concentration", &classical_concentration,
        py::arg("species"), py::arg("ctx"));
  m.def("equipartition_speed", &equipartition_speed, py::arg("mass"),
        py::arg("ctx"));
  m.def("detailed_balance_residual", &detailed_balance_residual,
        py::arg("quartet"), py::arg("speeds"), py::arg("sigma_fwd"),
        py::arg("sigma_bwd"), py::arg("ctx"));
  m.def("predicted_sigma_ratio", &predicted_sigma_ratio, py::arg("quartet"));
}
