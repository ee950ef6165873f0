#include "taskmech/agent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace taskmech {

double agent_utility(const SatisfactionModel& pi, double p, double theta, double x,
                     double alpha, double beta) {
    if (x < 0.0) throw NegativeParticipation("participation level must be nonnegative");
    return theta * pi.value(x) - p * x + alpha * x + beta;
}

double best_participation(const SatisfactionModel& pi, double p, double theta,
                          double alpha) {
    if (alpha >= p) {
        std::ostringstream msg;
        msg << "reward slope " << alpha << " reaches marginal cost " << p
            << "; agent utility is unbounded in x";
        throw UnboundedResponse(msg.str());
    }
    return pi.inverse_marginal((p - alpha) / theta);
}

std::vector<double> default_x_grid(const SatisfactionModel& pi, double p, double theta,
                                   const RewardSchedule& schedule, int n_points) {
    double chi_max = 0.0;
    for (double a : schedule.alpha)
        chi_max = std::max(chi_max, best_participation(pi, p, theta, a));
    const double x_max = 2.0 * chi_max;
    std::vector<double> xs(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i)
        xs[static_cast<std::size_t>(i)] = x_max * i / (n_points - 1);
    return xs;
}

AgentDecision brute_force_best_response(const SatisfactionModel& pi, double p,
                                        double theta, const RewardSchedule& schedule,
                                        std::span<const double> x_grid,
                                        const TypeGrid& theta_hat_grid) {
    if (x_grid.empty()) throw EmptyGrid("x grid is empty");

    AgentDecision best{0.0, 0.0, -std::numeric_limits<double>::infinity()};
    // theta_hat ascending outer, x ascending inner, strict improvement only:
    // exact ties keep the earlier (smaller) candidate.
    for (int j = 0; j < theta_hat_grid.size(); ++j) {
        const double th_hat = theta_hat_grid.node(j);
        const double a = schedule.alpha_at(th_hat);
        const double b = schedule.beta_at(th_hat);
        for (double x : x_grid) {
            const double u = agent_utility(pi, p, theta, x, a, b);
            if (u > best.utility) best = {x, th_hat, u};
        }
    }
    return best;
}

}  // namespace taskmech
