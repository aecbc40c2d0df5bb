#include "slinv/spectra.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace slinv {

namespace {

constexpr double pi = std::numbers::pi;

double ell2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

std::string_view to_string(BoundaryKind kind) {
    switch (kind) {
        case BoundaryKind::DD: return "DD";
        case BoundaryKind::NT: return "NT";
        case BoundaryKind::ND: return "ND";
        case BoundaryKind::DN: return "DN";
    }
    return "??";
}

BoundaryKind parse_boundary_kind(std::string_view tag) {
    if (tag == "DD") return BoundaryKind::DD;
    if (tag == "NT") return BoundaryKind::NT;
    if (tag == "ND") return BoundaryKind::ND;
    if (tag == "DN") return BoundaryKind::DN;
    throw StructuralError("unknown boundary kind '" + std::string(tag) + "'");
}

double base_frequency(BoundaryKind kind, std::size_t k) {
    const double kk = static_cast<double>(k);
    switch (kind) {
        case BoundaryKind::DD: return pi * kk;
        case BoundaryKind::NT: return pi * (kk - 1.0);
        case BoundaryKind::ND:
        case BoundaryKind::DN: return pi * (kk - 0.5);
    }
    return 0.0;
}

double base_norming_constant(BoundaryKind kind, std::size_t k) {
    return (kind == BoundaryKind::NT && k == 1) ? 2.0 : 1.0;
}

SpectralData::SpectralData(BoundaryKind kind, std::vector<double> lambda,
                           std::vector<double> alpha, std::optional<double> h)
    : kind_(kind), lambda_(std::move(lambda)), alpha_(std::move(alpha)), h_(h) {
    if (lambda_.empty()) throw StructuralError("spectral data: empty eigenvalue list");
    if (lambda_.size() != alpha_.size()) {
        std::ostringstream os;
        os << "spectral data: " << lambda_.size() << " eigenvalues but " << alpha_.size()
           << " norming constants";
        throw StructuralError(os.str());
    }
    for (std::size_t i = 0; i < lambda_.size(); ++i) {
        if (!std::isfinite(lambda_[i]) || !std::isfinite(alpha_[i])) {
            throw StructuralError("spectral data: non-finite entry at index " +
                                  std::to_string(i + 1));
        }
    }
    if (h_ && !std::isfinite(*h_)) throw StructuralError("spectral data: non-finite h");
}

SpectralData SpectralData::with_h(std::optional<double> h) const {
    return SpectralData(kind_, lambda_, alpha_, h);
}

std::string_view Violation::condition() const {
    return code == Code::NonpositiveAlpha ? "A2" : "A1";
}

std::string_view Violation::code_name() const {
    switch (code) {
        case Code::NonpositiveLambda: return "nonpositive_lambda";
        case Code::NonMonotoneLambda: return "non_monotone_lambda";
        case Code::NonpositiveAlpha: return "nonpositive_alpha";
    }
    return "unknown";
}

std::string Violation::message() const {
    std::ostringstream os;
    os << "(" << condition() << ") ";
    switch (code) {
        case Code::NonpositiveLambda: os << "nonpositive lambda"; break;
        case Code::NonMonotoneLambda: os << "non-monotone"; break;
        case Code::NonpositiveAlpha: os << "nonpositive alpha"; break;
    }
    os << " at index " << index;
    return os.str();
}

std::string ValidationReport::summary() const {
    if (ok) return "ok";
    std::string s = violations.front().message();
    if (violations.size() > 1) {
        s += " (+" + std::to_string(violations.size() - 1) + " more)";
    }
    return s;
}

ValidationError::ValidationError(ValidationReport report)
    : Error("validation failed: " + report.summary()), report_(std::move(report)) {}

ValidationReport validate_spectral_data(const SpectralData& data) {
    ValidationReport rep;
    const auto lam = data.lambda();
    const auto alp = data.alpha();
    for (std::size_t i = 0; i < lam.size(); ++i) {
        const std::size_t k = i + 1;
        if (!(lam[i] > 0.0)) rep.violations.push_back({Violation::Code::NonpositiveLambda, k});
        if (i > 0 && !(lam[i] > lam[i - 1])) {
            rep.violations.push_back({Violation::Code::NonMonotoneLambda, k});
        }
        if (!(alp[i] > 0.0)) rep.violations.push_back({Violation::Code::NonpositiveAlpha, k});
    }
    const Remainders r = remainders(data);
    rep.ell2_mu = ell2(r.mu);
    rep.ell2_beta = ell2(r.beta);
    rep.ok = rep.violations.empty();
    return rep;
}

Remainders remainders(const SpectralData& data) {
    Remainders r;
    r.mu.reserve(data.size());
    r.beta.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        r.mu.push_back(data.lambda()[i] - base_frequency(data.kind(), i + 1));
        r.beta.push_back(data.alpha()[i] - 1.0);
    }
    return r;
}

SpectralData synthesize_data(BoundaryKind kind, std::span<const double> mu,
                             std::span<const double> beta, std::optional<double> h) {
    if (mu.size() != beta.size()) {
        throw StructuralError("synthesize_data: mu and beta lengths differ");
    }
    std::vector<double> lambda(mu.size());
    std::vector<double> alpha(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        lambda[i] = base_frequency(kind, i + 1) + mu[i];
        alpha[i] = 1.0 + beta[i];
    }
    SpectralData data(kind, std::move(lambda), std::move(alpha), h);
    ValidationReport rep = validate_spectral_data(data);
    if (!rep.ok) throw ValidationError(std::move(rep));
    return data;
}

SpectralData shift_spectrum(const SpectralData& data, double c) {
    const auto lam = data.lambda();
    const auto alp = data.alpha();
    std::vector<double> lambda(lam.size());
    std::vector<double> alpha(alp.begin(), alp.end());
    for (std::size_t i = 0; i < lam.size(); ++i) {
        const double sq = lam[i] * lam[i] + c;
        if (!(sq > 0.0)) {
            ValidationReport rep;
            rep.ok = false;
            rep.violations.push_back({Violation::Code::NonpositiveLambda, i + 1});
            throw ValidationError(std::move(rep));
        }
        lambda[i] = std::sqrt(sq);
        if (dirichlet_at_zero(data.kind())) alpha[i] *= sq / (lam[i] * lam[i]);
    }
    std::optional<double> h = data.h();
    if (h) *h += c;
    return SpectralData(data.kind(), std::move(lambda), std::move(alpha), h);
}

}  // namespace slinv
