#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace taskmech {

/// Uniform discretization of a type interval [lo, hi] with n >= 3 nodes.
/// Endpoints are stored exactly; interior nodes are lo + i*spacing.
class TypeGrid {
public:
    TypeGrid() = default;  // empty placeholder; assign a real grid before use
    TypeGrid(double lo, double hi, int n);

    int size() const { return static_cast<int>(nodes_.size()); }
    double lo() const { return nodes_.front(); }
    double hi() const { return nodes_.back(); }
    double spacing() const { return spacing_; }
    double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    std::span<const double> nodes() const { return nodes_; }

private:
    std::vector<double> nodes_;
    double spacing_ = 0.0;
};

namespace detail {

/// Kahan-compensated composite trapezoid over uniformly spaced samples.
double trapezoid(std::span<const double> y, double dx);

/// Cumulative trapezoid prefix integrals; out[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> y, double dx);

}  // namespace detail

}  // namespace taskmech
