#pragma once
//
// Direct spectral problem: eigenvalues and norming constants of the operator
//
//     l(u) = -(u^[1])' - sigma u^[1] - sigma^2 u,    u^[1] = u' - sigma u,
//
// for a grid-sampled primitive sigma, by shooting on the first-order system
//
//     u'     =  sigma u + u^[1]
//     u^[1]' = -(sigma^2 + lambda^2) u - sigma u^[1]
//
// Initial data depend on the boundary kind at x = 0:
//     DD, DN:  u(0) = 0,      u^[1](0) = sqrt2 lambda
//     NT, ND:  u(0) = sqrt2,  u^[1](0) = 0
//

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "slinv/grid.hpp"
#include "slinv/spectra.hpp"

namespace slinv {

struct ShootOptions {
    // Lower bound on integrator steps per oscillation period 2 pi / lambda.
    // Steps never exceed one sigma cell; cells where sigma changes by more
    // than 0.02 are split further.
    std::size_t steps_per_period = 32;
    bool keep_trajectory = false;
};

struct ShootResult {
    double u1 = 0.0;         // u(1)
    double du1 = 0.0;        // u^[1](1)
    double l2norm_sq = 0.0;  // integral of u^2 over [0,1]
    // (u, u^[1]) at the sigma nodes, when requested.
    std::optional<std::vector<std::pair<double, double>>> trajectory;
};

struct CharParams {
    BoundaryKind kind = BoundaryKind::DD;
    double h = 0.0;  // third-type parameter, used for NT and DN only
};

// Integrates the quasi-derivative system with the kind-specific
// normalization. Throws StructuralError for lambda < 0 or non-finite lambda.
ShootResult shoot(const GridFunction& sigma, double lambda, BoundaryKind kind,
                  const ShootOptions& opts = {});

// DD, ND: u(1).  NT, DN: u^[1](1) + h u(1).
double characteristic(const GridFunction& sigma, double lambda, const CharParams& params,
                      const ShootOptions& opts = {});

// First `count` positive zeros of the characteristic, strictly increasing.
// Throws NumericalError when the scan window holds fewer sign changes.
std::vector<double> eigenvalues(const GridFunction& sigma, std::size_t count,
                                const CharParams& params, const ShootOptions& opts = {});

// Squared L2 norms of the kind-normalized eigenfunctions. Throws
// NumericalError naming the first index whose boundary residual shows it is
// not an eigenvalue.
std::vector<double> norming_constants(const GridFunction& sigma,
                                      const std::vector<double>& lambdas,
                                      const CharParams& params, const ShootOptions& opts = {});

// eigenvalues + norming_constants; NT/DN data carry params.h.
SpectralData direct_spectral_data(const GridFunction& sigma, std::size_t count,
                                  const CharParams& params, const ShootOptions& opts = {});

}  // namespace slinv
