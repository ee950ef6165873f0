#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "taskmech/agent.hpp"
#include "taskmech/econ.hpp"
#include "taskmech/mechanism.hpp"
#include "taskmech/solver.hpp"
#include "taskmech/verifier.hpp"

namespace py = pybind11;
using namespace taskmech;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Truthful reward-schedule solver: optimal control of the "
              "virtual-surplus objective plus IR/IC certification.";

    py::register_exception<UnboundedResponse>(m, "UnboundedResponse");
    py::register_exception<NonMonotoneAlpha>(m, "NonMonotoneAlpha");
    py::register_exception<AlphaExceedsCost>(m, "AlphaExceedsCost");

    py::class_<TypeGrid>(m, "TypeGrid")
        .def(py::init<double, double, int>(), py::arg("lo"), py::arg("hi"), py::arg("n"))
        .def_property_readonly("lo", &TypeGrid::lo)
        .def_property_readonly("hi", &TypeGrid::hi)
        .def_property_readonly("spacing", &TypeGrid::spacing)
        .def("__len__", &TypeGrid::size)
        .def("nodes", [](const TypeGrid& g) {
            return std::vector<double>(g.nodes().begin(), g.nodes().end());
        });

    py::class_<TypeDistribution>(m, "TypeDistribution")
        .def_property_readonly("lo", &TypeDistribution::lo)
        .def_property_readonly("hi", &TypeDistribution::hi)
        .def("density", &TypeDistribution::density)
        .def("cdf", &TypeDistribution::cdf)
        .def("inverse_hazard", &TypeDistribution::inverse_hazard);

    m.def("make_uniform", &make_uniform, py::arg("lo"), py::arg("hi"));
    m.def("make_custom", &make_custom, py::arg("lo"), py::arg("hi"), py::arg("density"),
          py::arg("cdf") = std::vector<double>{});

    py::class_<SatisfactionModel>(m, "SatisfactionModel")
        .def(py::init<double, double>(), py::arg("z1"), py::arg("z2"))
        .def("value", &SatisfactionModel::value)
        .def("marginal", &SatisfactionModel::marginal)
        .def("curvature", &SatisfactionModel::curvature)
        .def("inverse_marginal", &SatisfactionModel::inverse_marginal);

    py::class_<RevenueModel>(m, "RevenueModel")
        .def(py::init<double>(), py::arg("q1"))
        .def("value", &RevenueModel::value)
        .def("marginal", &RevenueModel::marginal);

    py::class_<MarketParams>(m, "MarketParams")
        .def(py::init<double>(), py::arg("p"))
        .def_readonly("p", &MarketParams::p);

    py::class_<Models>(m, "Models")
        .def(py::init<SatisfactionModel, RevenueModel, MarketParams>(), py::arg("pi"),
             py::arg("g"), py::arg("market"));

    py::class_<RewardSchedule>(m, "RewardSchedule")
        .def(py::init([](const TypeGrid& grid, std::vector<double> alpha,
                         std::vector<double> beta) {
                 return RewardSchedule{grid, std::move(alpha), std::move(beta)};
             }),
             py::arg("grid"), py::arg("alpha"), py::arg("beta"))
        .def_readonly("grid", &RewardSchedule::grid)
        .def_readonly("alpha", &RewardSchedule::alpha)
        .def_readonly("beta", &RewardSchedule::beta)
        .def("alpha_at", &RewardSchedule::alpha_at)
        .def("beta_at", &RewardSchedule::beta_at);

    m.def("agent_utility", &agent_utility, py::arg("pi"), py::arg("p"), py::arg("theta"),
          py::arg("x"), py::arg("alpha"), py::arg("beta"));
    m.def("best_participation", &best_participation, py::arg("pi"), py::arg("p"),
          py::arg("theta"), py::arg("alpha"));
    m.def("information_rent", &information_rent);
    m.def("information_rent_slope", &information_rent_slope);
    m.def("compute_beta",
          [](const TypeGrid& grid, const std::vector<double>& alpha,
             const SatisfactionModel& pi, double p) {
              return compute_beta(grid, alpha, pi, p);
          },
          py::arg("grid"), py::arg("alpha"), py::arg("pi"), py::arg("p"));
    m.def("publisher_utility", &publisher_utility);
    m.def("virtual_surplus_integrand", &virtual_surplus_integrand);

    py::class_<ProfitBreakdown>(m, "ProfitBreakdown")
        .def_readonly("direct", &ProfitBreakdown::direct)
        .def_property_readonly("virtual",
                               [](const ProfitBreakdown& p) { return p.virtual_; })
        .def_readonly("residual", &ProfitBreakdown::residual);
    m.def("expected_profit", &expected_profit);

    py::enum_<GammaSchedule>(m, "GammaSchedule")
        .value("Constant", GammaSchedule::Constant)
        .value("Diminishing", GammaSchedule::Diminishing);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("alpha0", &SolverConfig::alpha0)
        .def_readwrite("u_bar", &SolverConfig::u_bar)
        .def_readwrite("u_init", &SolverConfig::u_init)
        .def_readwrite("u_init_scalar", &SolverConfig::u_init_scalar)
        .def_readwrite("gamma0", &SolverConfig::gamma0)
        .def_readwrite("gamma_schedule", &SolverConfig::gamma_schedule)
        .def_readwrite("max_iters", &SolverConfig::max_iters)
        .def_readwrite("tol_u", &SolverConfig::tol_u)
        .def_readwrite("n_grid", &SolverConfig::n_grid)
        .def_readwrite("snapshot_iters", &SolverConfig::snapshot_iters);

    py::class_<SolveTrace>(m, "SolveTrace")
        .def_readonly("objective", &SolveTrace::objective)
        .def_readonly("du_sup", &SolveTrace::du_sup)
        .def_readonly("iterations", &SolveTrace::iterations)
        .def_readonly("alpha_snapshots", &SolveTrace::alpha_snapshots);

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("schedule", &SolveResult::schedule)
        .def_readonly("trace", &SolveResult::trace)
        .def_readonly("control", &SolveResult::control)
        .def_readonly("converged", &SolveResult::converged)
        .def_readonly("profit", &SolveResult::profit);

    m.def("integrate_state",
          [](const std::vector<double>& u, double alpha0, const TypeGrid& grid, double p) {
              return integrate_state(u, alpha0, grid, p);
          },
          py::arg("u"), py::arg("alpha0"), py::arg("grid"), py::arg("p"));
    m.def("virtual_surplus_slope", &virtual_surplus_slope);
    m.def("integrate_costate",
          [](const std::vector<double>& alpha, const TypeGrid& grid, const Models& models,
             const TypeDistribution& dist) {
              return integrate_costate(alpha, grid, models, dist);
          });
    m.def("solve", &solve, py::arg("config"), py::arg("models"), py::arg("dist"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<Alpha0Evaluation>(m, "Alpha0Evaluation")
        .def_readonly("alpha0", &Alpha0Evaluation::alpha0)
        .def_readonly("profit", &Alpha0Evaluation::profit)
        .def_readonly("converged", &Alpha0Evaluation::converged);

    py::class_<Alpha0Result>(m, "Alpha0Result")
        .def_readonly("alpha0", &Alpha0Result::alpha0)
        .def_readonly("profit", &Alpha0Result::profit)
        .def_readonly("best", &Alpha0Result::best)
        .def_readonly("evaluations", &Alpha0Result::evaluations);

    m.def("optimize_alpha0", &optimize_alpha0, py::arg("config"), py::arg("models"),
          py::arg("dist"), py::arg("lo"), py::arg("hi"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<UtilityMatrix>(m, "UtilityMatrix")
        .def_readonly("n", &UtilityMatrix::n)
        .def_readonly("values", &UtilityMatrix::values)
        .def("at", &UtilityMatrix::at);
    m.def("utility_matrix", &utility_matrix);

    py::class_<VerifyThresholds>(m, "VerifyThresholds")
        .def(py::init<>())
        .def_readwrite("ir_min", &VerifyThresholds::ir_min)
        .def_readwrite("ir_binding", &VerifyThresholds::ir_binding)
        .def_readwrite("ic_steps", &VerifyThresholds::ic_steps)
        .def_readwrite("ic_tie_tol", &VerifyThresholds::ic_tie_tol)
        .def_readwrite("envelope", &VerifyThresholds::envelope)
        .def_readwrite("profit_rel", &VerifyThresholds::profit_rel);

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("ir_min_diag", &VerificationReport::ir_min_diag)
        .def_readonly("ir_binding_residual", &VerificationReport::ir_binding_residual)
        .def_readonly("ic_max_deviation_steps", &VerificationReport::ic_max_deviation_steps)
        .def_readonly("ic_worst_gain", &VerificationReport::ic_worst_gain)
        .def_readonly("alpha_monotone", &VerificationReport::alpha_monotone)
        .def_readonly("envelope_max_residual", &VerificationReport::envelope_max_residual)
        .def_readonly("profit_residual", &VerificationReport::profit_residual)
        .def_readonly("profit_direct", &VerificationReport::profit_direct)
        .def_readonly("profit_virtual", &VerificationReport::profit_virtual)
        .def_readonly("passed", &VerificationReport::passed);

    m.def("verify", &verify, py::arg("schedule"), py::arg("models"), py::arg("dist"),
          py::arg("thresholds") = VerifyThresholds{});

    m.def("validate_assumptions", &validate_assumptions);
    py::class_<AssumptionViolation>(m, "AssumptionViolation")
        .def_readonly("location", &AssumptionViolation::location)
        .def_readonly("detail", &AssumptionViolation::detail);

#ifdef TASKMECH_VERSION
    m.attr("__version__") = TASKMECH_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
