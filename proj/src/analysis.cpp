#include "slinv/analysis.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace slinv {

namespace {

double sinc(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }

std::vector<double> replay(const GridFunction& sigma, std::span<const double> lambda,
                           BoundaryKind kind, std::optional<double> h, std::size_t count) {
    const CharParams params{kind, h.value_or(0.0)};
    const std::vector<double> got = eigenvalues(sigma, count, params);
    std::vector<double> err(count);
    for (std::size_t k = 0; k < count; ++k) err[k] = std::abs(lambda[k] - got[k]);
    return err;
}

}  // namespace

RoundTripReport roundtrip_report(const GridFunction& sigma, std::size_t count,
                                 const CharParams& params, std::size_t M) {
    const SpectralData data = direct_spectral_data(sigma, count, params);
    ReconstructionResult rec = reconstruct(data, M);
    const GaugeComparison cmp = gauge_removed_distance(rec.sigma, sigma);
    std::vector<double> errs = replay(rec.sigma, data.lambda(), data.kind(), rec.h, count);
    return RoundTripReport{sigma,          std::move(rec.sigma), rec.h, cmp.constant,
                           cmp.l2_error,   std::move(errs),      rec.positivity_margin};
}

ReconstructionResult isospectral_member(std::span<const double> lambdas,
                                        std::span<const double> beta, BoundaryKind kind,
                                        std::size_t M) {
    std::vector<double> alpha(beta.size());
    for (std::size_t k = 0; k < beta.size(); ++k) alpha[k] = 1.0 + beta[k];
    const SpectralData data(kind, std::vector<double>(lambdas.begin(), lambdas.end()),
                            std::move(alpha));
    return reconstruct(data, M);
}

std::vector<double> replay_errors(const ReconstructionResult& result, const SpectralData& data,
                                  std::size_t count) {
    if (count > data.size()) {
        throw StructuralError("replay_errors: count exceeds stored spectrum");
    }
    return replay(result.sigma, data.lambda(), data.kind(), result.h, count);
}

std::vector<StabilityRow> stability_probe(const SpectralData& data,
                                          std::span<const double> eps_list, std::size_t M,
                                          std::uint64_t seed) {
    constexpr int kMaxDraws = 64;
    const Remainders base = remainders(data);
    const std::size_t K = data.size();
    const ReconstructionResult reference = reconstruct(data, M);

    std::vector<StabilityRow> rows;
    rows.reserve(eps_list.size());
    for (double eps : eps_list) {
        if (!(eps >= 0.0) || !std::isfinite(eps)) {
            throw StructuralError("stability_probe: eps must be finite and nonnegative");
        }
        // Reseeding per eps keeps every row on the same direction unless it has
        // to be redrawn.
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::optional<SpectralData> perturbed;
        double norm = 0.0;
        for (int draw = 0; draw < kMaxDraws && !perturbed; ++draw) {
            std::vector<double> dir(2 * K);
            double len = 0.0;
            for (double& x : dir) {
                x = normal(rng);
                len += x * x;
            }
            len = std::sqrt(len);
            if (len == 0.0) continue;
            std::vector<double> mu(base.mu), beta(base.beta);
            double n2 = 0.0;
            for (std::size_t k = 0; k < K; ++k) {
                const double dm = eps * dir[k] / len;
                const double db = eps * dir[K + k] / len;
                mu[k] += dm;
                beta[k] += db;
                n2 += dm * dm + db * db;
            }
            try {
                perturbed = synthesize_data(data.kind(), mu, beta, data.h());
                norm = std::sqrt(n2);
            } catch (const ValidationError&) {
                // inadmissible direction, draw again
            }
        }
        if (!perturbed) {
            std::ostringstream os;
            os << "stability_probe: every perturbation of size " << eps
               << " violates the data conditions";
            throw NumericalError(os.str());
        }
        const ReconstructionResult r = reconstruct(*perturbed, M);
        rows.push_back({eps, norm, gauge_removed_distance(r.sigma, reference.sigma).l2_error});
    }
    return rows;
}

double riesz_condition(std::span<const double> lambdas, RieszBasis basis) {
    const auto n = static_cast<Eigen::Index>(lambdas.size());
    if (n == 0) throw StructuralError("riesz_condition: empty frequency list");
    const double sign = basis == RieszBasis::Sine ? -1.0 : 1.0;
    Eigen::MatrixXd G(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k <= j; ++k) {
            const double a = lambdas[static_cast<std::size_t>(j)];
            const double b = lambdas[static_cast<std::size_t>(k)];
            // int_0^1 2 sin(ax) sin(bx) dx = sinc(a-b) - sinc(a+b); cosine: +.
            const double g = sinc(a - b) + sign * sinc(a + b);
            G(j, k) = g;
            G(k, j) = g;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    const double hi = es.eigenvalues()(n - 1);
    if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

}  // namespace slinv
