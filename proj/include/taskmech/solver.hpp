#pragma once

#include <optional>
#include <span>
#include <vector>

#include "taskmech/econ.hpp"
#include "taskmech/mechanism.hpp"

namespace taskmech {

enum class GammaSchedule { Constant, Diminishing };

struct SolverConfig {
    double alpha0 = 0.0;             // initial state alpha(theta_lo), in [0, p)
    std::optional<double> u_bar;     // control upper bound; default 10*(p-alpha0)/(hi-lo)
    std::vector<double> u_init;      // per-node initial control; empty -> scalar broadcast
    double u_init_scalar = 0.5;
    double gamma0 = 0.01;
    GammaSchedule gamma_schedule = GammaSchedule::Constant;
    int max_iters = 1000;
    double tol_u = 1e-5;             // sup-norm stopping tolerance on control change
    int n_grid = 201;
    std::vector<int> snapshot_iters; // 1-based iterations at which to record alpha
};

struct SolveTrace {
    std::vector<double> objective;  // virtual-surplus objective per iteration
    std::vector<double> du_sup;     // sup-norm control change per iteration
    std::vector<double> u_min;      // control bounds actually attained, per iteration
    std::vector<double> u_max;
    std::vector<std::pair<int, std::vector<double>>> alpha_snapshots;
    int iterations = 0;
};

struct SolveResult {
    RewardSchedule schedule;
    SolveTrace trace;
    std::vector<double> control;    // u backing the returned schedule
    bool converged = false;
    ProfitBreakdown profit{};
};

/// Forward trapezoid integration of alpha' = u from alpha(theta_lo) = alpha0.
/// Throws AlphaExceedsCost if any node reaches p - margin.
std::vector<double> integrate_state(std::span<const double> u, double alpha0,
                                    const TypeGrid& grid, double p,
                                    double margin = -1.0 /* -1 -> 1e-6*p */);

/// Analytic d/dalpha of the virtual-surplus integrand at fixed theta_hat:
///   f * [g'(chi) - pi'(chi)*(1-F)/f - alpha] * dchi/dalpha,
/// with dchi/dalpha = -1/(theta_hat * pi''(chi)). The agent first-order
/// condition theta_hat*pi'(chi) - p = -alpha is already substituted.
double virtual_surplus_slope(double theta_hat, double alpha, const Models& models,
                             const TypeDistribution& dist);

/// Backward trapezoid integration of lambda' = virtual_surplus_slope from
/// lambda(theta_hi) = 0. The result is the negative of the objective's
/// functional gradient with respect to the control.
std::vector<double> integrate_costate(std::span<const double> alpha, const TypeGrid& grid,
                                      const Models& models, const TypeDistribution& dist);

/// One projected update: clamp(u - gamma*lambda, 0, u_bar) per node.
std::vector<double> gradient_projection_step(std::span<const double> u,
                                             std::span<const double> lam, double gamma,
                                             double u_bar);

/// Gradient projection iteration: integrate state, integrate costate, project
/// the control update; stop when the control change drops below tol_u or the
/// iteration budget runs out. On a budget exhaustion the best iterate seen is
/// returned with converged = false. The returned schedule carries beta from
/// compute_beta of the final alpha.
SolveResult solve(const SolverConfig& config, const Models& models,
                  const TypeDistribution& dist);

struct Alpha0Evaluation {
    double alpha0;
    double profit;      // direct form; NaN when the solve failed
    bool converged;
};

struct Alpha0Result {
    double alpha0;
    double profit;
    SolveResult best;
    std::vector<Alpha0Evaluation> evaluations;
};

/// Golden-section search over the free initial state alpha0, maximizing
/// converged direct profit. Interval endpoints are evaluated too, so the
/// returned point dominates them; all evaluations are capped at 40 solves
/// and the bracket tolerance is 1e-3*p. Failed candidates are recorded and
/// skipped.
Alpha0Result optimize_alpha0(const SolverConfig& config, const Models& models,
                             const TypeDistribution& dist, double lo, double hi);

}  // namespace taskmech
