#include "taskmech/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "taskmech/agent.hpp"

namespace taskmech {

UtilityMatrix utility_matrix(const RewardSchedule& schedule, const SatisfactionModel& pi,
                             double p) {
    const int n = schedule.grid.size();
    UtilityMatrix m;
    m.n = n;
    m.values.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const double theta = schedule.grid.node(i);
        for (int j = 0; j < n; ++j) {
            const double a = schedule.alpha[static_cast<std::size_t>(j)];
            const double b = schedule.beta[static_cast<std::size_t>(j)];
            const double chi = best_participation(pi, p, theta, a);
            m.values[static_cast<std::size_t>(i) * n + j] =
                agent_utility(pi, p, theta, chi, a, b);
        }
    }
    return m;
}

IcSummary check_ic(const UtilityMatrix& matrix, double tie_tol) {
    IcSummary s;
    for (int i = 0; i < matrix.n; ++i) {
        double rowmax = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < matrix.n; ++j) rowmax = std::max(rowmax, matrix.at(i, j));
        int nearest = matrix.n;
        for (int j = 0; j < matrix.n; ++j)
            if (matrix.at(i, j) >= rowmax - tie_tol)
                nearest = std::min(nearest, std::abs(j - i));
        s.max_deviation_steps = std::max(s.max_deviation_steps, nearest);
        s.worst_gain = std::max(s.worst_gain, rowmax - matrix.at(i, i));
    }
    return s;
}

IrSummary check_ir(const UtilityMatrix& matrix, double tol) {
    IrSummary s{};
    s.min_diagonal = std::numeric_limits<double>::infinity();
    for (int i = 0; i < matrix.n; ++i) s.min_diagonal = std::min(s.min_diagonal, matrix.at(i, i));
    s.binding_residual = std::abs(matrix.at(0, 0));
    s.ok = s.min_diagonal >= -tol;
    return s;
}

double check_envelope(const RewardSchedule& schedule, const SatisfactionModel& pi,
                      double p, int refine) {
    const auto& grid = schedule.grid;
    const int n = grid.size();
    const double h = grid.spacing() / refine;

    double worst = 0.0;
    double integral = 0.0, comp = 0.0;
    double prev_k = information_rent_slope(pi, p, grid.node(0), schedule.alpha.front());
    for (int i = 0; i < n; ++i) {
        if (i > 0) {
            // Refined trapezoid over [theta_{i-1}, theta_i], alpha interpolated
            // per the schedule's piecewise-linear rule.
            for (int s = 1; s <= refine; ++s) {
                const double y = grid.node(i - 1) + s * h;
                const double k =
                    information_rent_slope(pi, p, y, schedule.alpha_at(y));
                double term = 0.5 * h * (prev_k + k) - comp;
                double next = integral + term;
                comp = (next - integral) - term;
                integral = next;
                prev_k = k;
            }
        }
        const double theta = grid.node(i);
        const double a = schedule.alpha[static_cast<std::size_t>(i)];
        const double chi = best_participation(pi, p, theta, a);
        const double diag =
            agent_utility(pi, p, theta, chi, a, schedule.beta[static_cast<std::size_t>(i)]);
        worst = std::max(worst, std::abs(diag - integral));
    }
    return worst;
}

VerificationReport verify(const RewardSchedule& schedule, const Models& models,
                          const TypeDistribution& dist,
                          const VerifyThresholds& thresholds) {
    VerificationReport r;
    const double p = models.market.p;

    const UtilityMatrix m = utility_matrix(schedule, models.pi, p);
    const IcSummary ic = check_ic(m, thresholds.ic_tie_tol);
    const IrSummary ir = check_ir(m, -thresholds.ir_min);

    r.ir_min_diag = ir.min_diagonal;
    r.ir_binding_residual = ir.binding_residual;
    r.ic_max_deviation_steps = ic.max_deviation_steps;
    r.ic_worst_gain = ic.worst_gain;
    r.alpha_monotone = alpha_nondecreasing(schedule);
    r.envelope_max_residual = check_envelope(schedule, models.pi, p);

    const ProfitBreakdown profit = expected_profit(schedule, models, dist);
    r.profit_direct = profit.direct;
    r.profit_virtual = profit.virtual_;
    r.profit_residual = profit.residual;

    r.passed = r.ir_min_diag >= thresholds.ir_min &&
               r.ir_binding_residual <= thresholds.ir_binding &&
               r.ic_max_deviation_steps <= thresholds.ic_steps && r.alpha_monotone &&
               r.envelope_max_residual <= thresholds.envelope &&
               r.profit_residual <= thresholds.profit_rel * std::max(1.0, std::abs(r.profit_direct));
    return r;
}

}  // namespace taskmech
