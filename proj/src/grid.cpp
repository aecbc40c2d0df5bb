#include "slinv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slinv/errors.hpp"

namespace slinv {

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < kMinGrid + 1) {
        throw StructuralError("grid function needs at least " + std::to_string(kMinGrid + 1) +
                              " nodes, got " + std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw StructuralError("grid function: non-finite value at node " +
                                  std::to_string(i));
        }
    }
}

GridFunction GridFunction::sample(std::size_t M, const std::function<double(double)>& f) {
    std::vector<double> v(M + 1);
    for (std::size_t i = 0; i <= M; ++i) {
        v[i] = f(static_cast<double>(i) / static_cast<double>(M));
    }
    return GridFunction(std::move(v));
}

GridFunction GridFunction::zeros(std::size_t M) {
    return GridFunction(std::vector<double>(M + 1, 0.0));
}

double GridFunction::at(double x) const {
    const std::size_t M = intervals();
    const double t = std::clamp(x, 0.0, 1.0) * static_cast<double>(M);
    const std::size_t i = std::min(static_cast<std::size_t>(t), M - 1);
    const double r = t - static_cast<double>(i);
    return (1.0 - r) * values_[i] + r * values_[i + 1];
}

GridFunction GridFunction::resampled(std::size_t M) const {
    if (M == intervals()) return *this;
    return sample(M, [this](double x) { return at(x); });
}

GridFunction GridFunction::plus_linear(double c) const {
    std::vector<double> v(values_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * node(i);
    return GridFunction(std::move(v));
}

std::vector<double> trapezoid_weights(std::size_t M) {
    const double h = 1.0 / static_cast<double>(M);
    std::vector<double> w(M + 1, h);
    w.front() = w.back() = 0.5 * h;
    return w;
}

double grid_mean(const GridFunction& g) {
    const auto w = trapezoid_weights(g.intervals());
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * g[i];
    return s;
}

double grid_l2_norm(const GridFunction& g) {
    const auto w = trapezoid_weights(g.intervals());
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * g[i] * g[i];
    return std::sqrt(s);
}

GaugeComparison gauge_removed_distance(const GridFunction& out, const GridFunction& ref) {
    const GridFunction r = ref.resampled(out.intervals());
    std::vector<double> d(out.values().begin(), out.values().end());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= r[i];
    GridFunction diff(std::move(d));
    const double c = grid_mean(diff);
    std::vector<double> centered(diff.values().begin(), diff.values().end());
    for (double& x : centered) x -= c;
    return {c, grid_l2_norm(GridFunction(std::move(centered)))};
}

}  // namespace slinv
