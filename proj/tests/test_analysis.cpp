#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "slinv/analysis.hpp"

using namespace slinv;
using oracle::pi;

namespace {

std::vector<double> pik(std::size_t K) {
    std::vector<double> l;
    for (std::size_t k = 1; k <= K; ++k) l.push_back(pi * static_cast<double>(k));
    return l;
}

}  // namespace

TEST(RoundTripTest, Zero) {
    const auto rep = roundtrip_report(GridFunction::zeros(256), 64, {}, 256);
    EXPECT_LE(rep.l2_error, 1e-10);
    ASSERT_EQ(rep.spectral_replay_errors.size(), 64u);
    EXPECT_LE(oracle::max_abs(rep.spectral_replay_errors), 1e-10);
    EXPECT_GT(rep.margin, 0.0);
}

TEST(RoundTripTest, ConstantPotentialImprovesWithCount) {
    const auto s = oracle::linear_sigma(256, 2.0);
    const auto r64 = roundtrip_report(s, 64, {}, 256);
    const auto r128 = roundtrip_report(s, 128, {}, 256);
    EXPECT_LE(r64.l2_error, 0.1);
    EXPECT_LT(r128.l2_error, r64.l2_error);
}

TEST(RoundTripTest, Step) {
    const auto rep = roundtrip_report(oracle::step_sigma(256), 64, {}, 256);
    EXPECT_LE(rep.l2_error, 0.15);
    for (std::size_t k = 0; k < 10; ++k) EXPECT_LE(rep.spectral_replay_errors[k], 1e-3);
    EXPECT_GE(rep.l2_error, 0.0);
    EXPECT_EQ(rep.sigma_in, oracle::step_sigma(256));
}

TEST(RoundTripTest, GaugeConstantIsMeanOffset) {
    const auto s = GridFunction::sample(256, [](double) { return 1.5; });
    const auto rep = roundtrip_report(s, 32, {}, 256);
    EXPECT_NEAR(rep.gauge_constant, -1.5, 1e-10);
}

TEST(IsospectralTest, ZeroBetaIsFree) {
    const auto l = pik(32);
    const std::vector<double> beta(32, 0.0);
    const auto r = isospectral_member(l, beta, BoundaryKind::DD, 128);
    for (double v : r.sigma.values()) EXPECT_EQ(v, 0.0);
}

TEST(IsospectralTest, MemberKeepsSpectrum) {
    const auto l = pik(64);
    std::vector<double> beta(64, 0.0);
    beta[0] = 0.25;
    const auto r = isospectral_member(l, beta, BoundaryKind::DD, 256);
    EXPECT_GE(gauge_removed_distance(r.sigma, GridFunction::zeros(256)).l2_error, 0.01);
    const SpectralData data(BoundaryKind::DD, l, std::vector<double>(64, 1.0));
    EXPECT_LE(oracle::max_abs(replay_errors(r, data, 10)), 1e-3);
    const auto replayed = direct_spectral_data(r.sigma, 10, {});
    EXPECT_NEAR(replayed.alpha()[0], 1.25, 0.01);
}

TEST(IsospectralTest, DistinctMembersShareSpectrum) {
    const auto l = pik(64);
    std::vector<double> b1(64, 0.0), b2(64, 0.0);
    b1[0] = 0.25;
    b2[0] = -0.2;
    const auto r1 = isospectral_member(l, b1, BoundaryKind::DD, 256);
    const auto r2 = isospectral_member(l, b2, BoundaryKind::DD, 256);
    EXPECT_GE(gauge_removed_distance(r1.sigma, r2.sigma).l2_error, 0.05);
    const auto e1 = eigenvalues(r1.sigma, 10, {});
    const auto e2 = eigenvalues(r2.sigma, 10, {});
    for (std::size_t k = 0; k < 10; ++k) EXPECT_NEAR(e1[k], e2[k], 1e-3);
}

TEST(IsospectralTest, ReplayCountBounded) {
    const auto l = pik(8);
    const std::vector<double> beta(8, 0.0);
    const auto r = isospectral_member(l, beta, BoundaryKind::DD, 64);
    const SpectralData data(BoundaryKind::DD, l, std::vector<double>(8, 1.0));
    EXPECT_THROW(replay_errors(r, data, 9), StructuralError);
}

TEST(StabilityTest, ZeroEpsilon) {
    const std::vector<double> eps{0.0};
    const auto rows = stability_probe(oracle::base_data(BoundaryKind::DD, 64), eps, 256, 12345);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].sigma_error, 0.0);
    EXPECT_EQ(rows[0].data_perturbation_norm, 0.0);
}

TEST(StabilityTest, BaseDataLocallyLinear) {
    const std::vector<double> eps{1e-3, 1e-2};
    const auto rows = stability_probe(oracle::base_data(BoundaryKind::DD, 64), eps, 256, 12345);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_NEAR(rows[0].data_perturbation_norm, 1e-3, 1e-15);
    EXPECT_NEAR(rows[1].data_perturbation_norm, 1e-2, 1e-15);
    const double ratio = rows[1].sigma_error / rows[0].sigma_error;
    EXPECT_GE(ratio, 5.0);
    EXPECT_LE(ratio, 20.0);
}

TEST(StabilityTest, ConstantPotentialData) {
    const std::vector<double> eps{1e-2};
    const auto rows = stability_probe(oracle::dd_constant_data(64, 2.0), eps, 256, 12345);
    EXPECT_LE(rows[0].sigma_error, 0.2);
    EXPECT_GT(rows[0].sigma_error, 0.0);
}

TEST(StabilityTest, Errors) {
    const auto d = oracle::base_data(BoundaryKind::DD, 16);
    const std::vector<double> neg{-1e-3};
    EXPECT_THROW(stability_probe(d, neg, 64, 1), StructuralError);
    // every direction of this size breaks positivity or monotonicity
    const std::vector<double> huge{1e3};
    EXPECT_THROW(stability_probe(d, huge, 64, 1), NumericalError);
}

TEST(RieszTest, OrthonormalSystems) {
    std::vector<double> half;
    for (std::size_t k = 1; k <= 40; ++k) half.push_back(pi * (k - 0.5));
    EXPECT_NEAR(riesz_condition(pik(40), RieszBasis::Sine), 1.0, 1e-10);
    EXPECT_NEAR(riesz_condition(half, RieszBasis::Cosine), 1.0, 1e-10);
}

TEST(RieszTest, PerturbedFrequencies) {
    std::vector<double> l;
    for (std::size_t k = 1; k <= 40; ++k) l.push_back(pi * k + 0.1 / k);
    const double c = riesz_condition(l, RieszBasis::Sine);
    EXPECT_GT(c, 1.0);
    EXPECT_LE(c, 1.5);
}

TEST(RieszTest, Errors) {
    EXPECT_THROW(riesz_condition(std::vector<double>{}, RieszBasis::Sine), StructuralError);
}

// Properties

TEST(AnalysisProperty, ConstantSigmaRoundTrip) {
    for (double c : {-1.0, 0.5, 3.0}) {
        const auto s = GridFunction::sample(256, [c](double) { return c; });
        const auto rep = roundtrip_report(s, 64, {}, 256);
        EXPECT_LE(rep.l2_error, 1e-10) << "c=" << c;
    }
}

TEST(AnalysisProperty, StabilityMonotoneInEps) {
    const std::vector<double> eps{1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2};
    for (const auto& d : {oracle::base_data(BoundaryKind::DD, 64), oracle::dd_constant_data(64, 2.0)}) {
        const auto rows = stability_probe(d, eps, 128, 12345);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            EXPECT_GE(rows[i].sigma_error, 0.0);
            EXPECT_GE(rows[i].data_perturbation_norm, 0.0);
            if (i > 0) EXPECT_GE(rows[i].sigma_error, 0.9 * rows[i - 1].sigma_error);
        }
    }
}

TEST(AnalysisProperty, StabilityIsSeeded) {
    const std::vector<double> eps{1e-3, 1e-2};
    const auto d = oracle::base_data(BoundaryKind::DD, 32);
    const auto a = stability_probe(d, eps, 64, 99);
    const auto b = stability_probe(d, eps, 64, 99);
    const auto c = stability_probe(d, eps, 64, 100);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].sigma_error, b[i].sigma_error);
        EXPECT_NE(a[i].sigma_error, c[i].sigma_error);
    }
}

TEST(AnalysisProperty, NearDuplicateFrequencyIllConditions) {
    auto l = pik(20);
    const double clean = riesz_condition(l, RieszBasis::Sine);
    EXPECT_EQ(riesz_condition(l, RieszBasis::Sine), clean);
    l[1] = l[0] + 1e-3;
    EXPECT_GT(riesz_condition(l, RieszBasis::Sine), 1e3);
}
