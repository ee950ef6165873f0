#pragma once

#include <vector>

#include "taskmech/econ.hpp"
#include "taskmech/mechanism.hpp"

namespace taskmech {

/// U(theta_i, theta_hat_j) for all node pairs: the agent of true type
/// theta_i announces theta_hat_j and then plays its x best response
/// against the announced slope alpha_j.
struct UtilityMatrix {
    int n = 0;
    std::vector<double> values;  // row-major, n*n

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
};

UtilityMatrix utility_matrix(const RewardSchedule& schedule, const SatisfactionModel& pi,
                             double p);

struct IcSummary {
    // Max over rows of the distance (in grid steps) from the diagonal to the
    // nearest entry within tie_tol of the row maximum. Entries that tie the
    // maximum within tie_tol count as maximizers: flat alpha stretches make
    // whole row segments exactly utility-equivalent, so a raw argmax position
    // is decided by round-off noise there.
    int max_deviation_steps = 0;
    double worst_gain = 0.0;  // max over rows of rowmax - diagonal
};

IcSummary check_ic(const UtilityMatrix& matrix, double tie_tol = 1e-9);

struct IrSummary {
    double min_diagonal;
    double binding_residual;  // |U(0,0)|
    bool ok;                  // min_diagonal >= -tol
};

IrSummary check_ir(const UtilityMatrix& matrix, double tol = 1e-6);

/// Sup over nodes of |U(theta_i, theta_i) - integral of pi(chi(y, alpha(y)))
/// up to theta_i|. The integral is evaluated by trapezoid on a refined grid
/// (alpha interpolated piecewise-linearly), so the residual measures the
/// schedule's quadrature error instead of vanishing identically.
double check_envelope(const RewardSchedule& schedule, const SatisfactionModel& pi,
                      double p, int refine = 16);

struct VerifyThresholds {
    double ir_min = -1e-6;
    double ir_binding = 1e-3;
    int ic_steps = 1;
    double ic_tie_tol = 1e-9;
    double envelope = 1e-3;
    double profit_rel = 1e-3;
};

struct VerificationReport {
    double ir_min_diag = 0.0;
    double ir_binding_residual = 0.0;
    int ic_max_deviation_steps = 0;
    double ic_worst_gain = 0.0;
    bool alpha_monotone = false;
    double envelope_max_residual = 0.0;
    double profit_residual = 0.0;
    double profit_direct = 0.0;
    double profit_virtual = 0.0;
    bool passed = false;
};

/// Runs every check above plus alpha monotonicity and the profit-form
/// residual; failures land in the report, nothing throws.
VerificationReport verify(const RewardSchedule& schedule, const Models& models,
                          const TypeDistribution& dist,
                          const VerifyThresholds& thresholds = {});

}  // namespace taskmech
