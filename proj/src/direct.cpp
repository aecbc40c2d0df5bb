#include "slinv/direct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace slinv {

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt2 = std::numbers::sqrt2;
// Largest change of sigma across one integrator step.
constexpr double kMaxSigmaRise = 0.02;

// Traceless 2x2 matrix [[a, b], [c, -a]]. The quasi-derivative system matrix,
// its Magnus exponent and every commutator built from them stay in this class.
struct Traceless {
    double a = 0.0, b = 0.0, c = 0.0;

    Traceless operator+(const Traceless& o) const { return {a + o.a, b + o.b, c + o.c}; }
    Traceless operator-(const Traceless& o) const { return {a - o.a, b - o.b, c - o.c}; }
    Traceless operator*(double s) const { return {a * s, b * s, c * s}; }

    double det() const { return -(a * a + b * c); }
};

// [X, Y] = XY - YX
Traceless commutator(const Traceless& x, const Traceless& y) {
    return {x.b * y.c - y.b * x.c, 2.0 * (x.a * y.b - x.b * y.a), 2.0 * (x.c * y.a - x.a * y.c)};
}

// tr(XY)
double trace_product(const Traceless& x, const Traceless& y) {
    return 2.0 * x.a * y.a + x.b * y.c + x.c * y.b;
}

struct Vec2 {
    double u = 0.0, v = 0.0;
};

Vec2 apply(const Traceless& m, const Vec2& y) {
    return {m.a * y.u + m.b * y.v, m.c * y.u - m.a * y.v};
}

// For a traceless W with W^2 = -d I:
//   exp(W)                      = C I + S W
//   int_0^1 S(1-s) S(s) ds       = Iss
// where C = cos(sqrt d), S = sin(sqrt d)/sqrt d, continued analytically for d <= 0.
struct ExpCoefficients {
    double C, S, Iss;
};

ExpCoefficients exp_coefficients(double d) {
    if (std::abs(d) < 1e-2) {
        // Power series in d; eight terms are exact to rounding for |d| < 1e-2.
        double C = 0.0, S = 0.0, Iss = 0.0;
        double dn = 1.0;    // (-d)^n
        double dnm1 = 0.0;  // (-d)^(n-1)
        double f2n = 1.0;   // (2n)!
        for (int n = 0; n < 8; ++n) {
            if (n > 0) f2n *= static_cast<double>((2 * n - 1) * (2 * n));
            const double f2n1 = f2n * static_cast<double>(2 * n + 1);
            C += dn / f2n;
            S += dn / f2n1;
            // (S - C)/(2d), term by term.
            Iss -= 0.5 * dnm1 * (1.0 / f2n1 - 1.0 / f2n);
            dnm1 = dn;
            dn *= -d;
        }
        return {C, S, Iss};
    }
    double C, S;
    if (d > 0.0) {
        const double w = std::sqrt(d);
        C = std::cos(w);
        S = std::sin(w) / w;
    } else {
        const double w = std::sqrt(-d);
        C = std::cosh(w);
        S = std::sinh(w) / w;
    }
    return {C, S, (S - C) / (2.0 * d)};
}

// One step of the fourth-order Magnus integrator applied to the block system
//
//   d/dx [y ]   [A 0] [y ]        A = [[sigma, 1], [-(sigma^2 + E), -sigma]]
//        [yE] = [G A] [yE],       G = [[0, 0], [-1, 0]],   E = lambda^2,
//
// whose lower block is the derivative of y with respect to E. The block
// exponent is [[Om, 0], [Gam, Om]] and its exponential [[e^Om, 0], [L, e^Om]]
// with L = int_0^1 e^{(1-s)Om} Gam e^{sOm} ds, all in closed form.
class MagnusStepper {
public:
    explicit MagnusStepper(double energy) : energy_(energy) {}

    void step(double sigma_a, double sigma_b, double h, Vec2& y, Vec2& ye) const {
        static const double r3 = std::sqrt(3.0);
        const double c1 = 0.5 - r3 / 6.0;
        const double c2 = 0.5 + r3 / 6.0;
        const Traceless A1 = system(sigma_a + c1 * (sigma_b - sigma_a));
        const Traceless A2 = system(sigma_a + c2 * (sigma_b - sigma_a));
        const Traceless G{0.0, 0.0, -1.0};

        const double k = r3 * h * h / 12.0;
        const Traceless Om = (A1 + A2) * (0.5 * h) + commutator(A2, A1) * k;
        const Traceless Gam = G * h + commutator(A2 - A1, G) * k;

        const double d = Om.det();
        const ExpCoefficients e = exp_coefficients(d);
        const double tau = trace_product(Gam, Om);

        // L = S Gam + tau (S/2 I + Iss Om), using the traceless identities
        // Om Gam + Gam Om = tr(Gam Om) I and Om Gam Om = tr(Gam Om) Om + d Gam.
        const Vec2 Ey = expo(Om, e, y);
        const Vec2 Gy = apply(Gam, y);
        const Vec2 Oy = apply(Om, y);
        Vec2 Ly{e.S * Gy.u + tau * (0.5 * e.S * y.u + e.Iss * Oy.u),
                e.S * Gy.v + tau * (0.5 * e.S * y.v + e.Iss * Oy.v)};
        const Vec2 Eye = expo(Om, e, ye);
        ye = {Ly.u + Eye.u, Ly.v + Eye.v};
        y = Ey;
    }

private:
    Traceless system(double sigma) const { return {sigma, 1.0, -(sigma * sigma + energy_)}; }

    static Vec2 expo(const Traceless& Om, const ExpCoefficients& e, const Vec2& y) {
        const Vec2 Oy = apply(Om, y);
        return {e.C * y.u + e.S * Oy.u, e.C * y.v + e.S * Oy.v};
    }

    double energy_;
};

void require_lambda(double lambda) {
    if (!std::isfinite(lambda) || lambda < 0.0) {
        std::ostringstream os;
        os << "shoot: lambda must be finite and nonnegative, got " << lambda;
        throw StructuralError(os.str());
    }
}

// Normalized residual: zero exactly at eigenvalues, O(|lambda - lambda_k|) near one.
double boundary_residual(const ShootResult& r, double lambda, const CharParams& p) {
    const double scale = std::sqrt(r.l2norm_sq);
    if (third_type_at_one(p.kind)) {
        return std::abs(r.du1 + p.h * r.u1) / (scale * (1.0 + lambda + std::abs(p.h)));
    }
    return std::abs(r.u1) / scale;
}

double residual_value(const ShootResult& r, const CharParams& p) {
    return third_type_at_one(p.kind) ? r.du1 + p.h * r.u1 : r.u1;
}

}  // namespace

ShootResult shoot(const GridFunction& sigma, double lambda, BoundaryKind kind,
                  const ShootOptions& opts) {
    require_lambda(lambda);
    const std::size_t M = sigma.intervals();
    const double cell = sigma.step();
    const double max_step =
        2.0 * pi / (static_cast<double>(std::max<std::size_t>(opts.steps_per_period, 1)) *
                    std::max(lambda, 1.0));
    const std::size_t base_sub =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(cell / max_step - 1e-12)));

    // Integrate with lambda-independent data and rescale at the end so that
    // the E-derivative carries no initial term.
    const bool dirichlet = dirichlet_at_zero(kind);
    Vec2 y = dirichlet ? Vec2{0.0, 1.0} : Vec2{sqrt2, 0.0};
    const double scale = dirichlet ? sqrt2 * lambda : 1.0;
    Vec2 ye{0.0, 0.0};

    ShootResult res;
    if (opts.keep_trajectory) {
        res.trajectory.emplace();
        res.trajectory->reserve(M + 1);
        res.trajectory->emplace_back(scale * y.u, scale * y.v);
    }

    const MagnusStepper stepper(lambda * lambda);
    const auto vals = sigma.values();
    for (std::size_t i = 0; i < M; ++i) {
        const double s0 = vals[i];
        // steep cells (jumps in sigma) get extra substeps
        const std::size_t sub = std::max(
            base_sub, static_cast<std::size_t>(std::ceil(std::abs(vals[i + 1] - s0) / kMaxSigmaRise)));
        const double h = cell / static_cast<double>(sub);
        const double ds = (vals[i + 1] - s0) / static_cast<double>(sub);
        for (std::size_t j = 0; j < sub; ++j) {
            const double sa = s0 + ds * static_cast<double>(j);
            stepper.step(sa, sa + ds, h, y, ye);
        }
        if (opts.keep_trajectory) res.trajectory->emplace_back(scale * y.u, scale * y.v);
    }

    res.u1 = scale * y.u;
    res.du1 = scale * y.v;
    // Lagrange identity: int_0^1 u^2 = u^[1](1) dE u(1) - u(1) dE u^[1](1).
    res.l2norm_sq = scale * scale * (y.v * ye.u - y.u * ye.v);
    return res;
}

double characteristic(const GridFunction& sigma, double lambda, const CharParams& params,
                      const ShootOptions& opts) {
    ShootOptions o = opts;
    o.keep_trajectory = false;
    return residual_value(shoot(sigma, lambda, params.kind, o), params);
}

std::vector<double> eigenvalues(const GridFunction& sigma, std::size_t count,
                                const CharParams& params, const ShootOptions& opts) {
    if (count == 0) throw StructuralError("eigenvalues: count must be at least 1");
    const double lo = std::max(base_frequency(params.kind, 1) - 0.5 * pi, 1e-9);
    const double hi = base_frequency(params.kind, count) + 0.5 * pi;
    const double dl = pi / 16.0;
    auto F = [&](double l) { return characteristic(sigma, l, params, opts); };

    std::vector<double> roots;
    roots.reserve(count);
    auto refine = [&](double a, double fa, double b) {
        // Bisection down to a few ulps; sign changes of an entire function.
        for (int it = 0; it < 200; ++it) {
            const double m = 0.5 * (a + b);
            if (m <= a || m >= b || b - a <= 4e-16 * std::max(1.0, b)) break;
            const double fm = F(m);
            if (fm == 0.0) return m;
            if ((fm < 0.0) == (fa < 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };

    const std::size_t n_scan = static_cast<std::size_t>(std::ceil((hi - lo) / dl));
    double x_prev = lo;
    double f_prev = F(lo);
    if (f_prev == 0.0) roots.push_back(lo);
    for (std::size_t j = 1; j <= n_scan && roots.size() < count; ++j) {
        const double x = std::min(lo + dl * static_cast<double>(j), hi);
        const double f = F(x);
        if (f == 0.0) {
            roots.push_back(x);
        } else if (f_prev != 0.0 && (f < 0.0) != (f_prev < 0.0)) {
            roots.push_back(refine(x_prev, f_prev, x));
        }
        x_prev = x;
        f_prev = f;
    }
    if (roots.size() < count) {
        std::ostringstream os;
        os << "eigenvalues: found " << roots.size() << " of " << count
           << " sign changes of the characteristic in (" << lo << ", " << hi
           << "]; operator not positive or scan too coarse";
        throw NumericalError(os.str());
    }
    return roots;
}

std::vector<double> norming_constants(const GridFunction& sigma,
                                      const std::vector<double>& lambdas,
                                      const CharParams& params, const ShootOptions& opts) {
    std::vector<double> alpha;
    alpha.reserve(lambdas.size());
    ShootOptions o = opts;
    o.keep_trajectory = false;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const double l = lambdas[i];
        const ShootResult r = shoot(sigma, l, params.kind, o);
        const double res = boundary_residual(r, l, params);
        if (!(res <= 1e-8 * std::max(1.0, l))) {
            std::ostringstream os;
            os << "norming_constants: lambda at index " << i + 1 << " (" << l
               << ") is not an eigenvalue, boundary residual " << res;
            throw NumericalError(os.str());
        }
        alpha.push_back(r.l2norm_sq);
    }
    return alpha;
}

SpectralData direct_spectral_data(const GridFunction& sigma, std::size_t count,
                                  const CharParams& params, const ShootOptions& opts) {
    std::vector<double> lam = eigenvalues(sigma, count, params, opts);
    std::vector<double> alp = norming_constants(sigma, lam, params, opts);
    std::optional<double> h;
    if (third_type_at_one(params.kind)) h = params.h;
    SpectralData data(params.kind, std::move(lam), std::move(alp), h);
    ValidationReport rep = validate_spectral_data(data);
    if (!rep.ok) throw ValidationError(std::move(rep));
    return data;
}

}  // namespace slinv
