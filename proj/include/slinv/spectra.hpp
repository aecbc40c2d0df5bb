#pragma once
//
// Spectral data model for Sturm-Liouville operators -(u^[1])' - s u^[1] - s^2 u
// with the four supported boundary kinds, plus validation against the
// positivity / monotonicity / square-summability conditions on (lambda, alpha).
//
// Indices k are 1-based throughout the public surface, matching the usual
// labelling lambda_1 < lambda_2 < ...
//

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slinv/errors.hpp"

namespace slinv {

// DD: Dirichlet at 0 and 1.
// NT: Neumann-type at 0 (u^[1](0) = 0), third type at 1 (u^[1](1) + h u(1) = 0).
// ND: Neumann-type at 0, Dirichlet at 1.
// DN: Dirichlet at 0, third type at 1.
enum class BoundaryKind { DD, NT, ND, DN };

std::string_view to_string(BoundaryKind kind);
// Throws StructuralError on an unknown tag.
BoundaryKind parse_boundary_kind(std::string_view tag);

// Unperturbed frequency: DD -> pi k, NT -> pi (k-1), ND/DN -> pi (k-1/2).
double base_frequency(BoundaryKind kind, std::size_t k);

// Dirichlet condition at x = 0 (eigenfunctions normalized by u^[1](0) = sqrt2 lambda,
// sine reference system). Otherwise u(0) = sqrt2 and a cosine reference system.
constexpr bool dirichlet_at_zero(BoundaryKind kind) {
    return kind == BoundaryKind::DD || kind == BoundaryKind::DN;
}

// Third-type condition at x = 1, carrying a parameter h.
constexpr bool third_type_at_one(BoundaryKind kind) {
    return kind == BoundaryKind::NT || kind == BoundaryKind::DN;
}

// Norming constant of the k-th unperturbed eigenfunction. Equal to 1 except for
// NT, k = 1, where the reference eigenfunction is the constant sqrt2.
double base_norming_constant(BoundaryKind kind, std::size_t k);

// Immutable spectral data. Construction only enforces structure (non-empty,
// equal lengths, finite values); the spectral conditions are checked by
// validate_spectral_data.
class SpectralData {
public:
    SpectralData(BoundaryKind kind, std::vector<double> lambda, std::vector<double> alpha,
                 std::optional<double> h = std::nullopt);

    BoundaryKind kind() const { return kind_; }
    std::span<const double> lambda() const { return lambda_; }
    std::span<const double> alpha() const { return alpha_; }
    std::optional<double> h() const { return h_; }
    std::size_t size() const { return lambda_.size(); }

    SpectralData with_h(std::optional<double> h) const;

    friend bool operator==(const SpectralData&, const SpectralData&) = default;

private:
    BoundaryKind kind_;
    std::vector<double> lambda_;
    std::vector<double> alpha_;
    std::optional<double> h_;
};

struct Violation {
    enum class Code { NonpositiveLambda, NonMonotoneLambda, NonpositiveAlpha };

    Code code;
    std::size_t index;  // 1-based k of the offending entry

    // "A1" for eigenvalue clauses, "A2" for norming constants.
    std::string_view condition() const;
    std::string_view code_name() const;
    std::string message() const;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    double ell2_mu = 0.0;
    double ell2_beta = 0.0;

    // One line naming the first violation, for error messages.
    std::string summary() const;
};

// Raised when data fails validation; carries the full report.
class ValidationError : public Error {
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

struct Remainders {
    std::vector<double> mu;    // lambda_k - base(k)
    std::vector<double> beta;  // alpha_k - 1
};

ValidationReport validate_spectral_data(const SpectralData& data);

Remainders remainders(const SpectralData& data);

// Inverse of remainders. Throws StructuralError on length mismatch and
// ValidationError when the assembled data is not valid.
SpectralData synthesize_data(BoundaryKind kind, std::span<const double> mu,
                             std::span<const double> beta,
                             std::optional<double> h = std::nullopt);

// Spectrum of the operator with potential q + c, i.e. sigma(x) -> sigma(x) + c x.
// lambda_k -> sqrt(lambda_k^2 + c). Under the Dirichlet-at-0 normalization
// u^[1](0) = sqrt2 lambda the norming constants scale by (lambda_k^2 + c)/lambda_k^2;
// under u(0) = sqrt2 they are unchanged. A stored h moves to h + c so that the
// physical condition at x = 1 is preserved. Throws ValidationError if
// lambda_1^2 + c <= 0.
SpectralData shift_spectrum(const SpectralData& data, double c);

}  // namespace slinv
