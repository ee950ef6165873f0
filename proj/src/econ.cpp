#include "taskmech/econ.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace taskmech {

namespace {

// Linear interpolation of tabulated values on the uniform grid over [lo, hi].
double interp_uniform(const std::vector<double>& v, double lo, double hi, double x) {
    const auto n = v.size();
    const double dx = (hi - lo) / static_cast<double>(n - 1);
    if (x <= lo) return v.front();
    if (x >= hi) return v.back();
    const double t = (x - lo) / dx;
    auto i = static_cast<std::size_t>(t);
    if (i >= n - 1) i = n - 2;
    const double w = t - static_cast<double>(i);
    return v[i] * (1.0 - w) + v[i + 1] * w;
}

}  // namespace

TypeDistribution make_uniform(double lo, double hi) {
    if (lo <= 0.0) throw NonPositiveSupport("type support must be positive: lo <= 0");
    if (hi <= lo) throw EmptySupport("type support is empty: hi <= lo");
    TypeDistribution d;
    d.kind_ = TypeDistribution::Kind::Uniform;
    d.lo_ = lo;
    d.hi_ = hi;
    return d;
}

TypeDistribution make_custom(double lo, double hi, std::vector<double> density,
                             std::vector<double> cdf) {
    if (lo <= 0.0) throw NonPositiveSupport("type support must be positive: lo <= 0");
    if (hi <= lo) throw EmptySupport("type support is empty: hi <= lo");
    if (density.size() < 3)
        throw std::invalid_argument("custom distribution needs at least 3 density samples");
    for (double f : density)
        if (!(f >= 0.0)) throw std::invalid_argument("density samples must be nonnegative");

    const double dx = (hi - lo) / static_cast<double>(density.size() - 1);
    const double mass = detail::trapezoid(density, dx);
    if (!(mass > 0.0)) throw std::invalid_argument("density has zero total mass");
    for (double& f : density) f /= mass;

    if (cdf.empty()) {
        cdf = detail::cumulative_trapezoid(density, dx);
    } else if (cdf.size() != density.size()) {
        throw std::invalid_argument("cdf and density tables must have equal length");
    }
    // Renormalize the CDF to span [0, 1] exactly and require monotonicity.
    const double c0 = cdf.front(), c1 = cdf.back();
    if (!(c1 > c0)) throw std::invalid_argument("cdf table must increase over the support");
    for (double& c : cdf) c = (c - c0) / (c1 - c0);
    cdf.front() = 0.0;
    cdf.back() = 1.0;
    for (std::size_t i = 1; i < cdf.size(); ++i)
        if (cdf[i] < cdf[i - 1]) throw std::invalid_argument("cdf table must be nondecreasing");

    TypeDistribution d;
    d.kind_ = TypeDistribution::Kind::Custom;
    d.lo_ = lo;
    d.hi_ = hi;
    d.f_ = std::move(density);
    d.cdf_ = std::move(cdf);
    return d;
}

double TypeDistribution::density(double theta) const {
    if (kind_ == Kind::Uniform) {
        if (theta < lo_ || theta > hi_) return 0.0;
        return 1.0 / (hi_ - lo_);
    }
    if (theta < lo_ || theta > hi_) return 0.0;
    return interp_uniform(f_, lo_, hi_, theta);
}

double TypeDistribution::cdf(double theta) const {
    if (theta <= lo_) return 0.0;
    if (theta >= hi_) return 1.0;
    if (kind_ == Kind::Uniform) return (theta - lo_) / (hi_ - lo_);
    return interp_uniform(cdf_, lo_, hi_, theta);
}

double TypeDistribution::inverse_hazard(double theta) const {
    const double f = density(theta);
    if (f <= 0.0) {
        std::ostringstream msg;
        msg << "density vanishes at theta = " << theta;
        throw ZeroDensity(msg.str());
    }
    return (1.0 - cdf(theta)) / f;
}

double inverse_hazard(const TypeDistribution& dist, double theta) {
    return dist.inverse_hazard(theta);
}

SatisfactionModel::SatisfactionModel(double z1, double z2) : z1_(z1), z2_(z2) {
    if (z1 < 0.0 || z1 >= 1.0)
        throw std::invalid_argument("satisfaction exponent z1 must lie in [0, 1)");
    if (!(z2 > 0.0)) throw std::invalid_argument("satisfaction scale z2 must be positive");
}

double SatisfactionModel::value(double x) const {
    return z2_ / (1.0 - z1_) * std::pow(x, 1.0 - z1_);
}

double SatisfactionModel::marginal(double x) const { return z2_ * std::pow(x, -z1_); }

double SatisfactionModel::curvature(double x) const {
    return -z1_ * z2_ * std::pow(x, -z1_ - 1.0);
}

double SatisfactionModel::inverse_marginal(double y) const {
    return std::pow(y / z2_, -1.0 / z1_);
}

RevenueModel::RevenueModel(double q1) : q1_(q1) {
    if (q1 < 0.0 || q1 >= 1.0)
        throw std::invalid_argument("revenue exponent q1 must lie in [0, 1)");
}

double RevenueModel::value(double x) const {
    return 1.0 / (1.0 - q1_) * std::pow(x, 1.0 - q1_);
}

double RevenueModel::marginal(double x) const { return std::pow(x, -q1_); }

double RevenueModel::curvature(double x) const {
    return -q1_ * std::pow(x, -q1_ - 1.0);
}

MarketParams::MarketParams(double cost) : p(cost) {
    if (!(cost > 0.0)) throw std::invalid_argument("marginal cost p must be positive");
}

std::vector<AssumptionViolation> validate_assumptions(const TypeDistribution& dist,
                                                      const SatisfactionModel& pi,
                                                      const RevenueModel& g,
                                                      const TypeGrid& grid) {
    std::vector<AssumptionViolation> out;
    using Kind = AssumptionViolation::Kind;

    // Concavity and monotonicity sampled on a log-spaced x grid.
    constexpr int kSamples = 61;
    const double lx0 = std::log(1e-3), lx1 = std::log(1e3);
    for (int i = 0; i < kSamples; ++i) {
        const double x = std::exp(lx0 + (lx1 - lx0) * i / (kSamples - 1));
        if (!(pi.marginal(x) > 0.0))
            out.push_back({Kind::SatisfactionNotIncreasing, x, "pi'(x) <= 0"});
        if (!(pi.curvature(x) < 0.0))
            out.push_back({Kind::SatisfactionNotStrictlyConcave, x, "pi''(x) >= 0"});
        if (!(g.marginal(x) > 0.0))
            out.push_back({Kind::RevenueNotIncreasing, x, "g'(x) <= 0"});
        if (!(g.curvature(x) < 0.0))
            out.push_back({Kind::RevenueNotStrictlyConcave, x, "g''(x) >= 0"});
    }

    // Hazard monotonicity on the grid interior; the last node is excluded
    // because F = 1 there.
    double prev = -1.0;
    for (int i = 0; i + 1 < grid.size(); ++i) {
        const double theta = grid.node(i);
        const double f = dist.density(theta);
        const double tail = 1.0 - dist.cdf(theta);
        if (!(f > 0.0) || !(tail > 0.0)) continue;
        const double h = f / tail;
        if (i > 0 && h < prev * (1.0 - 1e-12)) {
            out.push_back({Kind::HazardDecreasing, theta, "hazard rate decreases"});
        }
        prev = h;
    }
    return out;
}

}  // namespace taskmech
