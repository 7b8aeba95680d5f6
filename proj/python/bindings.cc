//
// Copyright 2026 The SLQBM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "slqbm/convergence.h"
#include "slqbm/error.h"
#include "slqbm/privacy.h"
#include "slqbm/solver.h"
#include "slqbm/wireless.h"

namespace py = pybind11;
using namespace pybind11::literals;

namespace slqbm {
namespace {

void DeclarePrivacy(py::module_& m) {
  py::class_<PrivacyContext>(m, "PrivacyContext")
      .def(py::init<std::int64_t, double, std::int64_t>(), "d"_a, "delta"_a, "K"_a)
      .def_property_readonly("d", &PrivacyContext::d)
      .def_property_readonly("delta", &PrivacyContext::delta)
      .def_property_readonly("K", &PrivacyContext::K);

  py::class_<MechanismParams>(m, "MechanismParams")
      .def(py::init<std::int64_t, std::int64_t, double, double>(), "q"_a, "n"_a, "p"_a,
           "D"_a = 1.0)
      .def_property_readonly("q", &MechanismParams::q)
      .def_property_readonly("n", &MechanismParams::n)
      .def_property_readonly("p", &MechanismParams::p)
      .def_property_readonly("D", &MechanismParams::D)
      .def_property_readonly("s", &MechanismParams::s)
      .def("variance", &MechanismParams::Variance);

  py::class_<SensitivityBounds>(m, "SensitivityBounds")
      .def_readonly("delta_1", &SensitivityBounds::delta_1)
      .def_readonly("delta_2", &SensitivityBounds::delta_2)
      .def_readonly("delta_inf", &SensitivityBounds::delta_inf);

  m.def("alpha", &Alpha);
  m.def("sensitivity_bounds",
        py::overload_cast<const MechanismParams&, const PrivacyContext&>(
            &ComputeSensitivityBounds),
        "mech"_a, "ctx"_a);
  m.def("dp_variance_feasible",
        py::overload_cast<const MechanismParams&, const PrivacyContext&>(&DpVarianceFeasible),
        "mech"_a, "ctx"_a);
  m.def("s1_term", &S1Term, "n"_a, "p"_a);
  m.def("s2_term", &S2Term, "n"_a, "p"_a, "ctx"_a);
  m.def("epsilon_baseline", &EpsilonBaseline, "mech"_a, "ctx"_a);
  m.def("epsilon_tight", &EpsilonTight, "mech"_a, "ctx"_a);
  m.def(
      "epsilon_tight_terms",
      [](const MechanismParams& mech, const PrivacyContext& ctx) {
        const auto t = EpsilonTightTerms(mech, ctx).AsArray();
        return std::vector<double>(t.begin(), t.end());
      },
      "mech"_a, "ctx"_a);
}

void DeclareWireless(py::module_& m) {
  py::enum_<GainSemantics>(m, "GainSemantics")
      .value("AMPLITUDE", GainSemantics::kAmplitude)
      .value("POWER", GainSemantics::kPower);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("K", &SystemParams::K)
      .def_readwrite("M", &SystemParams::M)
      .def_readwrite("d", &SystemParams::d)
      .def_readwrite("delta", &SystemParams::delta)
      .def_readwrite("T", &SystemParams::T)
      .def_readwrite("W", &SystemParams::W)
      .def_readwrite("omega0", &SystemParams::omega0)
      .def_readwrite("p_min", &SystemParams::p_min)
      .def_readwrite("p_max", &SystemParams::p_max)
      .def_readwrite("gains", &SystemParams::gains)
      .def_readwrite("gain_semantics", &SystemParams::gain_semantics)
      .def("validate", &SystemParams::Validate)
      .def("privacy", &SystemParams::privacy);

  m.def("shannon_rate", &ShannonRate, "power"_a, "gain"_a, "sys"_a);
  m.def(
      "capacity_feasible",
      [](std::int64_t q, std::int64_t n, const std::vector<double>& powers,
         const SystemParams& sys) { return CapacityFeasible(q, n, powers, sys); },
      "q"_a, "n"_a, "powers"_a, "sys"_a);
  m.def(
      "required_power",
      [](std::int64_t q, std::int64_t n, double gain, const SystemParams& sys) {
        return ComputeRequiredPower(q, n, gain, sys).power;
      },
      "q"_a, "n"_a, "gain"_a, "sys"_a);
  m.def("domain_bound", py::overload_cast<const SystemParams&>(&DomainBound), "sys"_a);
}

void DeclareSolver(py::module_& m) {
  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("eps_bar", &SolverConfig::eps_bar)
      .def_readwrite("rho", &SolverConfig::rho)
      .def_readwrite("lambda_step", &SolverConfig::lambda_step)
      .def_readwrite("n_cap", &SolverConfig::n_cap)
      .def_readwrite("bit_cap", &SolverConfig::bit_cap)
      .def_readwrite("threads", &SolverConfig::threads);

  py::class_<Solution>(m, "Solution")
      .def_readonly("q", &Solution::q)
      .def_readonly("n", &Solution::n)
      .def_readonly("p", &Solution::p)
      .def_readonly("powers", &Solution::powers)
      .def_readonly("objective", &Solution::objective)
      .def_readonly("epsilon_achieved", &Solution::epsilon_achieved);

  py::class_<SolveStats>(m, "SolveStats")
      .def_readonly("domain_bound", &SolveStats::domain_bound)
      .def_readonly("qbar", &SolveStats::qbar)
      .def_readonly("grid_points", &SolveStats::grid_points)
      .def_readonly("budget_evaluations", &SolveStats::budget_evaluations)
      .def_readonly("lambda_step", &SolveStats::lambda)
      .def_readonly("eta", &SolveStats::eta)
      .def_readonly("mu", &SolveStats::mu);

  m.def("objective", &Objective, "q"_a, "n"_a, "p"_a);
  m.def(
      "minimal_trials",
      [](const std::function<double(std::int64_t)>& budget, double eps_bar,
         std::int64_t n_cap) { return MinimalTrials(budget, eps_bar, n_cap); },
      "budget"_a, "eps_bar"_a, "n_cap"_a);
  m.def(
      "min_n_for_privacy",
      [](std::int64_t q, double p, const SolverConfig& cfg, const PrivacyContext& ctx) {
        return MinNForPrivacy(q, p, cfg, ctx);
      },
      "q"_a, "p"_a, "cfg"_a, "ctx"_a);
  m.def("n_from_constraints", &NFromConstraints, "q"_a, "p"_a, "n1"_a, "ctx"_a);
  m.def("qbar", &QBar, "sys"_a, "cfg"_a);
  m.def(
      "eta_and_mu",
      [](const SolverConfig& cfg, const PrivacyContext& ctx) {
        const EtaMu em = EtaAndMu(cfg, ctx);
        return py::make_tuple(em.eta, em.mu);
      },
      "cfg"_a, "ctx"_a);
  m.def("lambda_for_rho", &LambdaForRho, "rho"_a, "mu"_a);
  m.def(
      "solve",
      [](const SystemParams& sys, const SolverConfig& cfg) {
        const SolveResult r = Solve(sys, cfg);
        return py::make_tuple(r.solution, r.stats);
      },
      "sys"_a, "cfg"_a);
  m.def("brute_force_solve", &BruteForceSolve, "sys"_a, "cfg"_a, "fine_factor"_a = 1);
}

void DeclareConvergence(py::module_& m) {
  m.def(
      "theoretical_bounds",
      [](std::int64_t d, std::int64_t M, std::int64_t K, double G, std::int64_t q,
         std::int64_t n, double p) {
        const auto b = TheoreticalBounds(d, M, K, G, q, n, p);
        return py::dict("u_hi"_a = b.u_hi, "u_hi_iid"_a = b.u_hi_iid, "b_lo"_a = b.b_lo,
                        "b_hi"_a = b.b_hi);
      },
      "d"_a, "M"_a, "K"_a, "G"_a, "q"_a, "n"_a, "p"_a);
  m.def(
      "iterations_estimate",
      [](double L, double G_f, double theta, double capital_lambda, double sigma_sq) {
        ConvergenceParams conv;
        conv.L = L;
        conv.G_f = G_f;
        conv.theta = theta;
        conv.capital_lambda = capital_lambda;
        const IterationEstimate e = IterationsEstimate(conv, sigma_sq);
        return py::make_tuple(e.exact, e.order);
      },
      "L"_a, "G_f"_a, "theta"_a, "capital_lambda"_a, "sigma_sq"_a);
  m.def("comm_cost", &CommCost, "rounds"_a, "K"_a, "d"_a, "q"_a, "n"_a);
}

}  // namespace
}  // namespace slqbm

PYBIND11_MODULE(_core, m) {
  m.doc() = "Privacy budgets, resource solver and convergence bounds.";

  static py::exception<slqbm::Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const slqbm::Error& e) {
      py::object cls = py::reinterpret_borrow<py::object>(error.ptr());
      py::object instance = cls(e.what());
      instance.attr("code") = std::string(slqbm::ErrorCodeName(e.code()));
      PyErr_SetObject(error.ptr(), instance.ptr());
    }
  });

  slqbm::DeclarePrivacy(m);
  slqbm::DeclareWireless(m);
  slqbm::DeclareSolver(m);
  slqbm::DeclareConvergence(m);
}
