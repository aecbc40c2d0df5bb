#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace slinv {

constexpr std::size_t kMinGrid = 16;

// Real samples on the uniform nodes x_i = i/M, i = 0..M, of [0,1]. Between
// nodes the function is taken to be piecewise linear.
class GridFunction {
public:
    // Throws StructuralError if values.size() < kMinGrid + 1 or any value is
    // not finite.
    explicit GridFunction(std::vector<double> values);

    static GridFunction sample(std::size_t M, const std::function<double(double)>& f);
    static GridFunction zeros(std::size_t M);

    std::size_t intervals() const { return values_.size() - 1; }
    double step() const { return 1.0 / static_cast<double>(intervals()); }
    double node(std::size_t i) const {
        return static_cast<double>(i) / static_cast<double>(intervals());
    }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    // Piecewise-linear interpolant; x is clamped to [0,1].
    double at(double x) const;

    // Same piecewise-linear function sampled on a grid with M intervals.
    GridFunction resampled(std::size_t M) const;

    // sigma(x) + c x.
    GridFunction plus_linear(double c) const;

    friend bool operator==(const GridFunction&, const GridFunction&) = default;

private:
    std::vector<double> values_;
};

// Composite trapezoid weights on [0,1] for M intervals.
std::vector<double> trapezoid_weights(std::size_t M);

// Trapezoid mean and L2 norm over [0,1].
double grid_mean(const GridFunction& g);
double grid_l2_norm(const GridFunction& g);

struct GaugeComparison {
    double constant;  // mean of (out - ref)
    double l2_error;  // L2 norm of out - ref - constant
};

// Compares two functions after removing the best additive constant. `ref`
// is resampled onto the grid of `out` when the grids differ.
GaugeComparison gauge_removed_distance(const GridFunction& out, const GridFunction& ref);

}  // namespace slinv
