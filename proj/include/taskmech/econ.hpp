#pragma once

#include <string>
#include <vector>

#include "taskmech/errors.hpp"
#include "taskmech/grid.hpp"

namespace taskmech {

/// Agent type distribution on a positive interval [lo, hi].
/// The Uniform kind evaluates its density and CDF in closed form; the
/// Custom kind interpolates tabulated values (renormalized on input so
/// that the density integrates to 1 and the CDF spans [0, 1] exactly).
class TypeDistribution {
public:
    enum class Kind { Uniform, Custom };

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    Kind kind() const { return kind_; }

    double density(double theta) const;
    double cdf(double theta) const;

    /// (1 - F(theta)) / f(theta). Computed in this ratio form so the value
    /// at the upper endpoint is exactly 0 even where the hazard diverges.
    double inverse_hazard(double theta) const;

    friend TypeDistribution make_uniform(double lo, double hi);
    friend TypeDistribution make_custom(double lo, double hi,
                                        std::vector<double> density,
                                        std::vector<double> cdf);

private:
    TypeDistribution() = default;

    Kind kind_ = Kind::Uniform;
    double lo_ = 0.0;
    double hi_ = 0.0;
    // Tabulated values on a uniform grid over [lo, hi]; empty for Uniform.
    std::vector<double> f_;
    std::vector<double> cdf_;
};

TypeDistribution make_uniform(double lo, double hi);

/// Custom distribution from density samples on a uniform grid over [lo, hi].
/// Pass an empty cdf to have it derived by cumulative trapezoid.
TypeDistribution make_custom(double lo, double hi, std::vector<double> density,
                             std::vector<double> cdf = {});

double inverse_hazard(const TypeDistribution& dist, double theta);

/// Agent satisfaction family pi(x) = z2/(1-z1) * x^(1-z1).
/// z1 = 0 is constructible (linear pi) so assumption validation can
/// report the concavity violation instead of failing at construction.
class SatisfactionModel {
public:
    SatisfactionModel(double z1, double z2);

    double value(double x) const;            // pi(x)
    double marginal(double x) const;         // pi'(x) = z2 x^-z1
    double curvature(double x) const;        // pi''(x)
    double inverse_marginal(double y) const; // Gamma(y) = (y/z2)^(-1/z1)

    double z1() const { return z1_; }
    double z2() const { return z2_; }

private:
    double z1_, z2_;
};

/// Publisher revenue family g(x) = 1/(1-q1) * x^(1-q1).
class RevenueModel {
public:
    explicit RevenueModel(double q1);

    double value(double x) const;      // g(x)
    double marginal(double x) const;   // g'(x) = x^-q1
    double curvature(double x) const;  // g''(x)

    double q1() const { return q1_; }

private:
    double q1_;
};

struct MarketParams {
    double p;  // marginal participation cost, > 0

    explicit MarketParams(double cost);
};

/// Bundle of the functional primitives one problem instance needs.
struct Models {
    SatisfactionModel pi;
    RevenueModel g;
    MarketParams market;
};

struct AssumptionViolation {
    enum class Kind {
        SatisfactionNotIncreasing,
        SatisfactionNotStrictlyConcave,
        RevenueNotIncreasing,
        RevenueNotStrictlyConcave,
        HazardDecreasing,
    };
    Kind kind;
    double location;  // x or theta where the violation was observed
    std::string detail;
};

/// Samples pi and g on a log-spaced grid in [1e-3, 1e3] for monotonicity and
/// strict concavity, and checks the hazard f/(1-F) is nondecreasing on the
/// type grid interior (the upper endpoint is excluded; F = 1 there).
/// Violations are returned as data, never thrown.
std::vector<AssumptionViolation> validate_assumptions(const TypeDistribution& dist,
                                                      const SatisfactionModel& pi,
                                                      const RevenueModel& g,
                                                      const TypeGrid& grid);

}  // namespace taskmech
