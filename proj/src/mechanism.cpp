#include "taskmech/mechanism.hpp"

#include <cmath>
#include <sstream>

#include "taskmech/agent.hpp"

namespace taskmech {

namespace {

double interp_nodes(const TypeGrid& grid, const std::vector<double>& v, double theta) {
    if (theta <= grid.lo()) return v.front();
    if (theta >= grid.hi()) return v.back();
    const double t = (theta - grid.lo()) / grid.spacing();
    auto i = static_cast<std::size_t>(t);
    if (i >= v.size() - 1) i = v.size() - 2;
    const double w = t - static_cast<double>(i);
    return v[i] * (1.0 - w) + v[i + 1] * w;
}

}  // namespace

double RewardSchedule::alpha_at(double theta_hat) const {
    return interp_nodes(grid, alpha, theta_hat);
}

double RewardSchedule::beta_at(double theta_hat) const {
    return interp_nodes(grid, beta, theta_hat);
}

bool alpha_nondecreasing(const RewardSchedule& schedule) {
    for (std::size_t i = 1; i < schedule.alpha.size(); ++i)
        if (schedule.alpha[i] < schedule.alpha[i - 1]) return false;
    return true;
}

double information_rent(const SatisfactionModel& pi, double p, double theta,
                        double alpha) {
    const double chi = best_participation(pi, p, theta, alpha);
    return alpha * chi + theta * pi.value(chi) - p * chi;
}

double information_rent_slope(const SatisfactionModel& pi, double p, double theta,
                              double alpha) {
    return pi.value(best_participation(pi, p, theta, alpha));
}

std::vector<double> compute_beta(const TypeGrid& grid, std::span<const double> alpha,
                                 const SatisfactionModel& pi, double p) {
    if (static_cast<int>(alpha.size()) != grid.size())
        throw std::invalid_argument("alpha length does not match the grid");
    for (std::size_t i = 1; i < alpha.size(); ++i) {
        if (alpha[i] < alpha[i - 1]) {
            std::ostringstream msg;
            msg << "alpha decreases between nodes " << i - 1 << " and " << i;
            throw NonMonotoneAlpha(msg.str());
        }
    }

    std::vector<double> slope(alpha.size());
    std::vector<double> rent(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double theta = grid.node(static_cast<int>(i));
        slope[i] = information_rent_slope(pi, p, theta, alpha[i]);
        rent[i] = information_rent(pi, p, theta, alpha[i]);
    }
    std::vector<double> beta = detail::cumulative_trapezoid(slope, grid.spacing());
    for (std::size_t i = 0; i < beta.size(); ++i) beta[i] -= rent[i];
    return beta;
}

double publisher_utility(const RevenueModel& g, double x, double reward_paid) {
    if (x < 0.0) throw NegativeParticipation("participation level must be nonnegative");
    return g.value(x) - reward_paid;
}

double virtual_surplus_integrand(double theta_hat, double alpha, const Models& models,
                                 const TypeDistribution& dist) {
    const double p = models.market.p;
    const double chi = best_participation(models.pi, p, theta_hat, alpha);
    const double bracket = models.g.value(chi) -
                           models.pi.value(chi) * dist.inverse_hazard(theta_hat) +
                           theta_hat * models.pi.value(chi) - p * chi;
    return bracket * dist.density(theta_hat);
}

ProfitBreakdown expected_profit(const RewardSchedule& schedule, const Models& models,
                                const TypeDistribution& dist) {
    const auto& grid = schedule.grid;
    const double p = models.market.p;
    const auto n = static_cast<std::size_t>(grid.size());

    std::vector<double> direct_y(n), virtual_y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = grid.node(static_cast<int>(i));
        const double a = schedule.alpha[i];
        const double chi = best_participation(models.pi, p, theta, a);
        direct_y[i] =
            (models.g.value(chi) - a * chi - schedule.beta[i]) * dist.density(theta);
        virtual_y[i] = virtual_surplus_integrand(theta, a, models, dist);
    }
    ProfitBreakdown out{};
    out.direct = detail::trapezoid(direct_y, grid.spacing());
    out.virtual_ = detail::trapezoid(virtual_y, grid.spacing());
    out.residual = std::abs(out.direct - out.virtual_);
    return out;
}

}  // namespace taskmech
