#pragma once

#include <span>
#include <vector>

#include "taskmech/econ.hpp"
#include "taskmech/mechanism.hpp"

namespace taskmech {

struct AgentDecision {
    double x_star;           // chosen participation level
    double theta_hat_star;   // announced type
    double utility;
};

/// U = theta*pi(x) - p*x + alpha*x + beta.
double agent_utility(const SatisfactionModel& pi, double p, double theta, double x,
                     double alpha, double beta);

/// Closed-form best response chi = Gamma((p - alpha)/theta).
/// Throws UnboundedResponse when alpha >= p.
double best_participation(const SatisfactionModel& pi, double p, double theta,
                          double alpha);

/// Uniform x grid on [0, 2 * max_j chi(theta, alpha_j)], so the exhaustive
/// search below never clips an interior optimum.
std::vector<double> default_x_grid(const SatisfactionModel& pi, double p, double theta,
                                   const RewardSchedule& schedule, int n_points);

/// Exhaustive maximization of agent utility over the (x, theta_hat) product
/// grid. Ties break toward smaller theta_hat, then smaller x, so the result
/// is deterministic. Independent of the closed-form route above; used as an
/// oracle against it.
AgentDecision brute_force_best_response(const SatisfactionModel& pi, double p,
                                        double theta, const RewardSchedule& schedule,
                                        std::span<const double> x_grid,
                                        const TypeGrid& theta_hat_grid);

}  // namespace taskmech
