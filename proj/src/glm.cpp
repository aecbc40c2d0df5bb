#include "slinv/glm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <string>

#include "slinv/direct.hpp"

namespace slinv {

namespace {

void require_grid(std::size_t M, const char* who) {
    if (M < kMinGrid) {
        throw StructuralError(std::string(who) + ": grid M=" + std::to_string(M) +
                              " below minimum " + std::to_string(kMinGrid));
    }
}

void require_same_grid(std::size_t a, std::size_t b, const char* who) {
    if (a != b) {
        throw StructuralError(std::string(who) + ": grid mismatch (" + std::to_string(a) +
                              " vs " + std::to_string(b) + ")");
    }
}

// Prefixes the failing stage to library errors raised inside `fn`.
template <class Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const NumericalError& e) {
        throw NumericalError(std::string(name) + ": " + e.what());
    } catch (const StructuralError& e) {
        throw StructuralError(std::string(name) + ": " + e.what());
    }
}

void solve_rows(const KernelF& f, TriangularKernel& kernel) {
    const std::size_t M = kernel.grid();
    kernel.row(0)[0] = -f(0, 0);
    Eigen::MatrixXd A;
    Eigen::VectorXd rhs;
    Eigen::VectorXd sw;
    for (std::size_t i = 1; i <= M; ++i) {
        const auto n = static_cast<Eigen::Index>(i + 1);
        const std::vector<double> w = row_weights(M, i);
        sw.resize(n);
        for (Eigen::Index s = 0; s < n; ++s) sw[s] = std::sqrt(w[static_cast<std::size_t>(s)]);

        // Unknown z = W^(1/2) k solves (I + W^(1/2) F W^(1/2)) z = -W^(1/2) f(x_i, .).
        A.resize(n, n);
        rhs.resize(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            rhs[j] = -sw[j] * f(i, uj);
            for (Eigen::Index s = 0; s <= j; ++s) {
                const double v = sw[j] * f(uj, static_cast<std::size_t>(s)) * sw[s];
                A(j, s) = v;
                A(s, j) = v;
            }
            A(j, j) += 1.0;
        }

        Eigen::VectorXd z;
        Eigen::LLT<Eigen::MatrixXd> llt(A);
        if (llt.info() == Eigen::Success) {
            z = llt.solve(rhs);
        } else {
            Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
            if (!lu.isInvertible()) {
                throw NumericalError("singular GLM row system at row " + std::to_string(i));
            }
            z = lu.solve(rhs);
        }
        auto row = kernel.row(i);
        for (Eigen::Index s = 0; s < n; ++s) {
            // The end-point weights are positive, so the back-substitution is safe.
            row[static_cast<std::size_t>(s)] = z[s] / sw[s];
        }
    }
}

}  // namespace

PhiTable::PhiTable(std::size_t M, std::vector<double> values)
    : M_(M), values_(std::move(values)) {
    if (values_.size() != 2 * M_ + 1) {
        throw StructuralError("phi table: expected " + std::to_string(2 * M_ + 1) +
                              " samples, got " + std::to_string(values_.size()));
    }
}

TriangularKernel::TriangularKernel(std::size_t M) : M_(M), data_((M + 1) * (M + 2) / 2, 0.0) {}

std::vector<double> row_weights(std::size_t M, std::size_t i) {
    const double h = 1.0 / static_cast<double>(M);
    std::vector<double> w(i + 1, h);
    if (i == 0) {
        w[0] = 0.0;
    } else {
        w.front() = w.back() = 0.5 * h;
    }
    return w;
}

PhiTable assemble_phi(const SpectralData& data, std::size_t M) {
    require_grid(M, "assemble_phi");
    ValidationReport rep = validate_spectral_data(data);
    if (!rep.ok) throw ValidationError(std::move(rep));

    const BoundaryKind kind = data.kind();
    // DD/DN: cos(b s) - cos(lambda s)/alpha; NT/ND: the opposite sign.
    const double sign = dirichlet_at_zero(kind) ? 1.0 : -1.0;
    const std::size_t n = 2 * M + 1;
    std::vector<double> phi(n, 0.0);
    const auto lam = data.lambda();
    const auto alp = data.alpha();
    for (std::size_t k = 1; k <= data.size(); ++k) {
        const double b = base_frequency(kind, k);
        const double a0 = base_norming_constant(kind, k);
        const double l = lam[k - 1];
        const double a = alp[k - 1];
        if (l == b && a == a0) continue;  // on-base mode contributes exactly zero
        for (std::size_t m = 0; m < n; ++m) {
            const double s = static_cast<double>(m) / static_cast<double>(M);
            phi[m] += sign * (std::cos(b * s) / a0 - std::cos(l * s) / a);
        }
    }
    return PhiTable(M, std::move(phi));
}

KernelF kernel_f(PhiTable phi, BoundaryKind kind) { return KernelF(std::move(phi), kind); }

double positivity_margin(const KernelF& f, std::size_t M) {
    require_same_grid(f.grid(), M, "positivity_margin");
    const auto n = static_cast<Eigen::Index>(M + 1);
    const std::vector<double> W = trapezoid_weights(M);
    Eigen::MatrixXd U(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        for (Eigen::Index j = 0; j <= i; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            const double v = std::sqrt(W[ui] * W[uj]) * f(ui, uj);
            U(i, j) = v;
            U(j, i) = v;
        }
        U(i, i) += 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(U, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericalError("positivity_margin: eigenvalue iteration did not converge");
    }
    return es.eigenvalues()(0);
}

TriangularKernel solve_glm(const KernelF& f, std::size_t M) {
    require_same_grid(f.grid(), M, "solve_glm");
    const double margin = positivity_margin(f, M);
    if (!(margin > 0.0)) {
        std::ostringstream os;
        os << "solve_glm: I + F is not positive (margin " << margin << ")";
        throw NumericalError(os.str());
    }
    TriangularKernel kernel(M);
    solve_rows(f, kernel);
    return kernel;
}

GridFunction recover_sigma(const TriangularKernel& kernel, const KernelF& f,
                           const PhiTable& phi) {
    const std::size_t M = kernel.grid();
    require_same_grid(f.grid(), M, "recover_sigma");
    require_same_grid(phi.grid(), M, "recover_sigma");
    std::vector<double> sigma(M + 1);
    for (std::size_t i = 0; i <= M; ++i) {
        const std::vector<double> w = row_weights(M, i);
        const auto k = kernel.row(i);
        double integral = 0.0;
        for (std::size_t s = 0; s <= i; ++s) integral += w[s] * k[s] * f(s, i);
        sigma[i] = -2.0 * phi[2 * i] - 2.0 * integral;
    }
    return GridFunction(std::move(sigma));
}

double recover_h(const GridFunction& sigma, double lambda1, BoundaryKind kind) {
    if (!third_type_at_one(kind)) {
        throw StructuralError("recover_h: boundary kind " + std::string(to_string(kind)) +
                              " has no third-type condition");
    }
    const ShootResult r = shoot(sigma, lambda1, kind);
    if (std::abs(r.u1) < 1e-12 * std::sqrt(r.l2norm_sq)) {
        throw NumericalError(
            "recover_h: u(1) vanishes, data inconsistent with a third-type condition at x=1");
    }
    return -r.du1 / r.u1;
}

GridFunction smooth_q_diagnostic(const TriangularKernel& kernel) {
    const std::size_t M = kernel.grid();
    const double h = 1.0 / static_cast<double>(M);
    std::vector<double> d(M + 1);
    for (std::size_t i = 0; i <= M; ++i) d[i] = kernel.at(i, i);
    std::vector<double> q(M + 1);
    q[0] = 2.0 * (-3.0 * d[0] + 4.0 * d[1] - d[2]) / (2.0 * h);
    q[M] = 2.0 * (3.0 * d[M] - 4.0 * d[M - 1] + d[M - 2]) / (2.0 * h);
    for (std::size_t i = 1; i < M; ++i) q[i] = 2.0 * (d[i + 1] - d[i - 1]) / (2.0 * h);
    return GridFunction(std::move(q));
}

ReconstructionResult reconstruct(const SpectralData& data, std::size_t M) {
    PhiTable phi = stage("assemble_phi", [&] { return assemble_phi(data, M); });
    KernelF f = kernel_f(phi, data.kind());
    const double margin = stage("positivity", [&] { return positivity_margin(f, M); });
    if (!(margin > 0.0)) {
        std::ostringstream os;
        os << "positivity: I + F is not positive (margin " << margin << ")";
        throw NumericalError(os.str());
    }
    TriangularKernel kernel(M);
    stage("solve_glm", [&] {
        solve_rows(f, kernel);
        return 0;
    });
    GridFunction sigma = stage("recover_sigma", [&] { return recover_sigma(kernel, f, phi); });
    std::optional<double> h;
    if (third_type_at_one(data.kind())) {
        h = stage("recover_h", [&] { return recover_h(sigma, data.lambda()[0], data.kind()); });
    }
    const double hs = kernel_hs_norm(kernel);
    return ReconstructionResult{std::move(sigma), h, margin, hs, std::move(phi),
                                std::move(kernel)};
}

double glm_residual(const TriangularKernel& kernel, const KernelF& f) {
    const std::size_t M = kernel.grid();
    require_same_grid(f.grid(), M, "glm_residual");
    double worst = 0.0;
    for (std::size_t i = 0; i <= M; ++i) {
        const std::vector<double> w = row_weights(M, i);
        const auto k = kernel.row(i);
        for (std::size_t j = 0; j <= i; ++j) {
            double r = k[j] + f(i, j);
            for (std::size_t s = 0; s <= i; ++s) r += w[s] * k[s] * f(s, j);
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

double factorization_residual(const TriangularKernel& kernel, const KernelF& f) {
    const std::size_t M = kernel.grid();
    require_same_grid(f.grid(), M, "factorization_residual");
    const auto n = static_cast<Eigen::Index>(M + 1);
    const std::vector<double> W = trapezoid_weights(M);
    Eigen::MatrixXd IK = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd IF = Eigen::MatrixXd::Identity(n, n);
    for (std::size_t i = 0; i <= M; ++i) {
        const std::vector<double> w = row_weights(M, i);
        const auto k = kernel.row(i);
        const auto ii = static_cast<Eigen::Index>(i);
        for (std::size_t s = 0; s <= i; ++s) {
            IK(ii, static_cast<Eigen::Index>(s)) += std::sqrt(W[i]) * k[s] * w[s] / std::sqrt(W[s]);
        }
        for (std::size_t j = 0; j <= M; ++j) {
            IF(ii, static_cast<Eigen::Index>(j)) += std::sqrt(W[i] * W[j]) * f(i, j);
        }
    }
    const Eigen::MatrixXd R = IK * IF * IK.transpose() - Eigen::MatrixXd::Identity(n, n);
    return R.cwiseAbs().maxCoeff();
}

double kernel_hs_norm(const TriangularKernel& kernel) {
    const std::size_t M = kernel.grid();
    const std::vector<double> W = trapezoid_weights(M);
    double s = 0.0;
    for (std::size_t i = 0; i <= M; ++i) {
        const std::vector<double> w = row_weights(M, i);
        const auto k = kernel.row(i);
        double r = 0.0;
        for (std::size_t j = 0; j <= i; ++j) r += w[j] * k[j] * k[j];
        s += W[i] * r;
    }
    return std::sqrt(s);
}

}  // namespace slinv
