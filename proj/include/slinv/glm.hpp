#pragma once
//
// Inverse spectral problem through the Gelfand-Levitan-Marchenko equation
//
//     k(x,y) + f(x,y) + int_0^x k(x,s) f(s,y) ds = 0,   0 <= y <= x <= 1,
//
// where f is built from the spectral data through a single function phi on
// [0,2]:
//
//     DD, DN:  f(x,y) = phi(x+y) - phi(|x-y|),
//              phi(s) = sum_k ( cos(b_k s) - cos(lambda_k s)/alpha_k )
//     NT, ND:  f(x,y) = phi(x+y) + phi(|x-y|),
//              phi(s) = sum_k ( cos(lambda_k s)/alpha_k - cos(b_k s)/a_k )
//
// with b_k the unperturbed frequencies and a_k the unperturbed norming
// constants (a_1 = 2 for NT, otherwise 1). The primitive of the potential is
//
//     sigma(x) = -2 phi(2x) - 2 int_0^x k(x,s) f(s,x) ds.
//
// Everything is discretized on the nodes x_i = i/M with phi on the nodes
// s_m = m/M of [0,2], so x_i +- y_j always lands on a node; integrals use the
// composite trapezoid rule.
//

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "slinv/grid.hpp"
#include "slinv/spectra.hpp"

namespace slinv {

class PhiTable {
public:
    PhiTable(std::size_t M, std::vector<double> values);

    std::size_t grid() const { return M_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t m) const { return values_[m]; }

private:
    std::size_t M_;
    std::vector<double> values_;  // 2M + 1 samples
};

class KernelF {
public:
    KernelF(PhiTable phi, BoundaryKind kind) : phi_(std::move(phi)), kind_(kind) {}

    // f(x_i, y_j), symmetric in (i, j) by construction.
    double operator()(std::size_t i, std::size_t j) const {
        const double sum = phi_[i + j];
        const double diff = phi_[i > j ? i - j : j - i];
        return dirichlet_at_zero(kind_) ? sum - diff : sum + diff;
    }

    const PhiTable& phi() const { return phi_; }
    BoundaryKind kind() const { return kind_; }
    std::size_t grid() const { return phi_.grid(); }

private:
    PhiTable phi_;
    BoundaryKind kind_;
};

// Lower-triangular samples k(x_i, y_j), j <= i.
class TriangularKernel {
public:
    explicit TriangularKernel(std::size_t M);

    std::size_t grid() const { return M_; }
    std::span<double> row(std::size_t i) { return {data_.data() + offset(i), i + 1}; }
    std::span<const double> row(std::size_t i) const {
        return {data_.data() + offset(i), i + 1};
    }
    double at(std::size_t i, std::size_t j) const { return data_[offset(i) + j]; }

private:
    static std::size_t offset(std::size_t i) { return i * (i + 1) / 2; }

    std::size_t M_;
    std::vector<double> data_;
};

struct ReconstructionResult {
    GridFunction sigma;
    std::optional<double> h;
    double positivity_margin;
    double kernel_hs_norm;
    PhiTable phi;
    TriangularKernel kernel;
};

// Trapezoid weights for int_0^{x_i} on the nodes y_0..y_i (all zero for i = 0).
std::vector<double> row_weights(std::size_t M, std::size_t i);

// Exact finite sum over the stored modes. Throws ValidationError on invalid
// data and StructuralError for M < kMinGrid.
PhiTable assemble_phi(const SpectralData& data, std::size_t M);

KernelF kernel_f(PhiTable phi, BoundaryKind kind);

// Smallest eigenvalue of I + W^(1/2) F W^(1/2), W the trapezoid weights on
// [0,1]. Returned even when it is not positive.
double positivity_margin(const KernelF& f, std::size_t M);

// Row-by-row dense solve of the discretized equation. Throws NumericalError
// when the positivity margin is not positive or a row system is singular.
TriangularKernel solve_glm(const KernelF& f, std::size_t M);

GridFunction recover_sigma(const TriangularKernel& kernel, const KernelF& f,
                           const PhiTable& phi);

// h such that u^[1](1) + h u(1) = 0 for the first eigenfunction of the
// recovered sigma. Only for NT and DN.
double recover_h(const GridFunction& sigma, double lambda1, BoundaryKind kind);

// 2 d/dx k(x,x) by finite differences; meaningful only for smooth data.
GridFunction smooth_q_diagnostic(const TriangularKernel& kernel);

// Full pipeline: validation, phi, f, positivity, kernel, sigma, h.
ReconstructionResult reconstruct(const SpectralData& data, std::size_t M);

// Diagnostics.

// Max over j <= i of |k(x_i,y_j) + f(x_i,y_j) + sum_s w_s k(x_i,y_s) f(y_s,y_j)|.
double glm_residual(const TriangularKernel& kernel, const KernelF& f);

// Max entry of (I + K)(I + F)(I + K)^T - I with every operator written in the
// W^(1/2)-symmetrized trapezoid discretization.
double factorization_residual(const TriangularKernel& kernel, const KernelF& f);

// L2 norm of the kernel over the triangle, i.e. the Hilbert-Schmidt norm of K.
double kernel_hs_norm(const TriangularKernel& kernel);

}  // namespace slinv
