#pragma once
//
// Experiments built on the direct and inverse solvers: round trips,
// isospectral families, forward-stability probes and the Gram-matrix
// conditioning of the sine/cosine systems attached to a spectrum.
//

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "slinv/direct.hpp"
#include "slinv/glm.hpp"
#include "slinv/grid.hpp"
#include "slinv/spectra.hpp"

namespace slinv {

struct RoundTripReport {
    GridFunction sigma_in;
    GridFunction sigma_out;
    std::optional<double> h_out;
    double gauge_constant = 0.0;  // mean of sigma_out - sigma_in
    double l2_error = 0.0;        // after removing gauge_constant
    std::vector<double> spectral_replay_errors;  // |lambda_in - lambda_replay|, k = 1..count
    double margin = 0.0;
};

struct StabilityRow {
    double eps = 0.0;
    double data_perturbation_norm = 0.0;  // l2 norm of (d mu, d beta)
    double sigma_error = 0.0;             // gauge-removed L2 distance
};

enum class RieszBasis { Sine, Cosine };

// sigma -> spectral data -> sigma_out on an M grid -> compare and replay.
RoundTripReport roundtrip_report(const GridFunction& sigma, std::size_t count,
                                 const CharParams& params, std::size_t M);

// Member of the isospectral set of `lambdas` with norming constants 1 + beta.
ReconstructionResult isospectral_member(std::span<const double> lambdas,
                                        std::span<const double> beta, BoundaryKind kind,
                                        std::size_t M);

// |lambda_k - replayed lambda_k| for the first `count` eigenvalues of the
// reconstructed operator.
std::vector<double> replay_errors(const ReconstructionResult& result, const SpectralData& data,
                                  std::size_t count);

// For each eps, perturbs (mu, beta) along one seeded random unit direction
// scaled to l2 norm eps, reconstructs and records the gauge-removed change in
// sigma. Directions violating the data conditions are redrawn; throws
// NumericalError if none is admissible for some eps.
std::vector<StabilityRow> stability_probe(const SpectralData& data,
                                          std::span<const double> eps_list, std::size_t M,
                                          std::uint64_t seed);

// Condition number of the Gram matrix of {sqrt2 sin(lambda_k x)} or
// {sqrt2 cos(lambda_k x)} in L2(0,1), entries integrated in closed form.
// Returns +inf for a singular Gram matrix.
double riesz_condition(std::span<const double> lambdas, RieszBasis basis);

}  // namespace slinv
