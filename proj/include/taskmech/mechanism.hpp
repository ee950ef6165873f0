#pragma once

#include <span>
#include <vector>

#include "taskmech/econ.hpp"
#include "taskmech/grid.hpp"

namespace taskmech {

/// Discretized reward schedule: alpha (slope) and beta (bias) values on a
/// type grid, interpreted piecewise-linearly between nodes. Linear
/// interpolation preserves the monotonicity of alpha between nodes.
struct RewardSchedule {
    TypeGrid grid;
    std::vector<double> alpha;
    std::vector<double> beta;

    double alpha_at(double theta_hat) const;
    double beta_at(double theta_hat) const;
};

bool alpha_nondecreasing(const RewardSchedule& schedule);

/// Information rent K = alpha*chi + theta*pi(chi) - p*chi with
/// chi = best_participation(theta, alpha).
double information_rent(const SatisfactionModel& pi, double p, double theta,
                        double alpha);

/// dK/dtheta = pi(chi(theta, alpha)); the participation term drops by the
/// agent's first-order condition.
double information_rent_slope(const SatisfactionModel& pi, double p, double theta,
                              double alpha);

/// Bias reward from a nondecreasing slope schedule:
///   beta(theta_j) = cumtrapz of dK/dtheta from theta_lo - K(theta_j).
/// beta at the lowest type is exactly -K there, which pins the lowest
/// type's truthful utility to zero.
std::vector<double> compute_beta(const TypeGrid& grid, std::span<const double> alpha,
                                 const SatisfactionModel& pi, double p);

double publisher_utility(const RevenueModel& g, double x, double reward_paid);

/// Pointwise virtual-surplus integrand
///   [g(chi) - pi(chi)*(1-F)/f + theta_hat*pi(chi) - p*chi] * f(theta_hat).
double virtual_surplus_integrand(double theta_hat, double alpha, const Models& models,
                                 const TypeDistribution& dist);

struct ProfitBreakdown {
    double direct;    // E[g(chi) - alpha*chi - beta]
    double virtual_;  // virtual-surplus form (beta eliminated)
    double residual;  // |direct - virtual_|
};

/// Expected publisher profit in both the direct and the virtual-surplus
/// form, by composite trapezoid on the schedule grid. The residual between
/// the two forms is a quadrature-order quantity whenever beta came from
/// compute_beta.
ProfitBreakdown expected_profit(const RewardSchedule& schedule, const Models& models,
                                const TypeDistribution& dist);

}  // namespace taskmech
