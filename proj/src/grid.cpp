#include "taskmech/grid.hpp"

#include <stdexcept>

namespace taskmech {

TypeGrid::TypeGrid(double lo, double hi, int n) {
    if (n < 3) throw std::invalid_argument("TypeGrid: need at least 3 nodes");
    if (!(hi > lo)) throw std::invalid_argument("TypeGrid: hi must exceed lo");
    spacing_ = (hi - lo) / (n - 1);
    nodes_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) nodes_[static_cast<std::size_t>(i)] = lo + i * spacing_;
    nodes_.front() = lo;
    nodes_.back() = hi;
}

namespace detail {

double trapezoid(std::span<const double> y, double dx) {
    if (y.size() < 2) return 0.0;
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) {
        double term = 0.5 * dx * (y[i] + y[i + 1]) - comp;
        double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

std::vector<double> cumulative_trapezoid(std::span<const double> y, double dx) {
    std::vector<double> out(y.size(), 0.0);
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 1; i < y.size(); ++i) {
        double term = 0.5 * dx * (y[i - 1] + y[i]) - comp;
        double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
        out[i] = sum;
    }
    return out;
}

}  // namespace detail

}  // namespace taskmech
