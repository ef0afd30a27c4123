#include "gabordual/dual_synthesis.hpp"
#include "gabordual/windows.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gabordual;

namespace {

constexpr double kA = 1.0;
constexpr double kB = 1.0 / 3.0;

const GridSpec& grid120() {
    static const GridSpec g = grid_for_lattice(kA, kB, 120);
    return g;
}
SampledWindow b2() { return sample(bspline2(), grid120()); }
SampledWindow dual_h2() { return sample(h2(), grid120()); }

double residual(const SampledWindow& phi) { return duality_residual(b2(), phi, kA, kB).max_residual; }

} // namespace

TEST(OverlapSet, Bspline2AndH2) {
    const auto K = overlap_set_K(b2(), dual_h2(), kA, kB);
    EXPECT_EQ(K.ks, (std::vector<long>{-2, -1, 0, 1, 2}));
    EXPECT_EQ(K.support_candidates, K.ks);
}

TEST(OverlapSet, MatchesIntervalOverlapOracle) {
    // supp h2 = [-1, 3], supp B2 + k = [k, k + 2]: positive-length overlap iff -3 < k < 3
    for (long k = -6; k <= 6; ++k) {
        const double lo = std::max(-1.0, double(k)), hi = std::min(3.0, k + 2.0);
        const bool candidate = hi > lo;
        const auto& c = overlap_set_K(b2(), dual_h2(), kA, kB).support_candidates;
        EXPECT_EQ(std::find(c.begin(), c.end(), k) != c.end(), candidate) << k;
    }
}

TEST(OverlapSet, DisjointSupportsGiveEmptySet) {
    const GridSpec grid = grid_for_lattice(10.0, 0.05, 100);
    const auto g = sample(bspline2(), grid);
    const auto far = translate(g, 30.0);
    const auto K = overlap_set_K(g, far, 10.0, 0.05);
    EXPECT_EQ(K.ks, (std::vector<long>{3}));
    const SampledWindow gap(grid, 350, std::vector<double>(3, 1.0));  // [35, 35.2]
    EXPECT_TRUE(overlap_set_K(g, gap, 10.0, 0.05).ks.empty());
}

TEST(CompactDual, ZeroPerturbationReturnsStartingDual) {
    const auto phi = compact_dual(b2(), dual_h2(), kA, kB, SampledWindow::zero(grid120()), 6);
    EXPECT_EQ(max_abs_difference(phi, dual_h2()), 0.0);
}

TEST(CompactDual, LinearInPerturbation) {
    const auto gd = dual_h2();
    const auto p1 = compact_dual(b2(), gd, kA, kB, 0.1 * b2(), 6) - gd;
    const auto p3 = compact_dual(b2(), gd, kA, kB, 0.3 * b2(), 6) - gd;
    EXPECT_LT(max_abs_difference(p3, 3.0 * p1), 1e-15);
}

TEST(CompactDual, SupportWithinPredictedInterval) {
    std::mt19937 rng(5);
    for (int t = 0; t < 5; ++t) {
        const auto w = oracle::sample(oracle::random_test_function(rng), grid120());
        auto phi = compact_dual(b2(), dual_h2(), kA, kB, w, 7);
        phi.trim(0.0);
        // supp phi within supp gd united with supp w + k, k in [-2, 2]
        EXPECT_GE(phi.support_lo(), std::min(-1.0, w.support_lo() - 2.0) - 1e-12);
        EXPECT_LE(phi.support_hi(), std::max(3.0, w.support_hi() + 2.0) + 1e-12);
    }
}

TEST(CompactDual, ResidualDecreasesWithTruncationOrder) {
    for (double lambda : {0.1, 0.5}) {
        double previous = 1e300;
        for (long J : {6L, 7L, 14L, 28L}) {
            const double r = residual(compact_dual(b2(), dual_h2(), kA, kB, lambda * b2(), J));
            EXPECT_LT(r, previous) << lambda << " J=" << J;
            previous = r;
        }
    }
}

TEST(CompactDual, RealOutputForRealInputs) {
    const auto c = compact_dual_construction(b2(), dual_h2(), kA, kB, 0.1 * b2(), 6);
    EXPECT_EQ(c.phi.max_abs_imag(), 0.0);
    EXPECT_EQ(c.coefficients.size(), 5u * 13u);
    for (const auto& [k, tail] : c.tail_energy) EXPECT_GE(tail, 0.0);
}

TEST(CompactDual, TailEnergyShrinksWithJ) {
    const auto c6 = compact_dual_construction(b2(), dual_h2(), kA, kB, 0.1 * b2(), 6);
    const auto c28 = compact_dual_construction(b2(), dual_h2(), kA, kB, 0.1 * b2(), 28);
    for (long k : c6.K.ks) {
        EXPECT_GT(c6.tail_energy.at(k), 0.0) << k;
        EXPECT_LT(c28.tail_energy.at(k), c6.tail_energy.at(k)) << k;
    }
}

TEST(CompactDual, RejectsNonDualStart) {
    EXPECT_THROW(compact_dual(b2(), b2(), kA, kB, 0.1 * b2(), 6), DualityError);
    EXPECT_THROW(compact_dual(b2(), dual_h2(), kA, kB, 0.1 * b2(), -1), std::invalid_argument);
}

TEST(PCoefficient, AgreesWithComplexCoefficient) {
    const auto g = b2(), gd = dual_h2();
    for (long k = -2; k <= 2; ++k)
        for (long j = 0; j <= 20; ++j) {
            const complex c = gabor_coefficient(gd, g, j, k, kA, kB);
            const double pc = p_coefficient(gd, g, j, k, kA, kB, PCoefficient::Kind::Cos).value;
            const double ps = p_coefficient(gd, g, j, k, kA, kB, PCoefficient::Kind::Sin).value;
            EXPECT_LT(std::abs(c - complex(pc, -ps)), 1e-12) << j << ',' << k;
        }
}

TEST(PCoefficient, RejectsComplexWindows) {
    EXPECT_THROW(p_coefficient(modulate(dual_h2(), 0.5), b2(), 1, 0, kA, kB, PCoefficient::Kind::Cos),
                 std::invalid_argument);
    EXPECT_THROW(real_compact_dual(b2(), dual_h2(), kA, kB, modulate(b2(), 0.5), 3), std::invalid_argument);
}

TEST(RealCompactDual, MatchesComplexRoute) {
    const auto w = 0.1 * b2();
    for (long J : {0L, 6L, 7L, 14L}) {
        const auto phi_c = compact_dual(b2(), dual_h2(), kA, kB, w, J);
        const auto phi_r = real_compact_dual(b2(), dual_h2(), kA, kB, w, J);
        EXPECT_LT(max_abs_difference(phi_c, phi_r), 1e-12) << J;
    }
}

TEST(RealCompactDual, DcOnlyForm) {
    const auto w = 0.1 * b2();
    const auto phi = real_compact_dual(b2(), dual_h2(), kA, kB, w, 0);
    auto expected = dual_h2() + w;
    for (long k = -2; k <= 2; ++k) {
        const double dc = inner_product(dual_h2(), translate(b2(), double(k))).real();
        expected.axpy(-dc, translate(w, double(k)));
    }
    EXPECT_LT(max_abs_difference(phi, expected), 1e-15);
}

TEST(Symmetry, WindowsAndConstructedDual) {
    EXPECT_TRUE(symmetry_check(b2(), 1.0, 1e-15));
    EXPECT_TRUE(symmetry_check(dual_h2(), 1.0, 1e-15));
    EXPECT_FALSE(symmetry_check(b2(), 0.5, 1e-3));
    for (long J : {6L, 7L})
        EXPECT_TRUE(symmetry_check(compact_dual(b2(), dual_h2(), kA, kB, 0.1 * b2(), J), 1.0, 1e-12)) << J;
    const SampledWindow half(grid120(), 0, std::vector<double>{1.0, 2.0, 2.0, 1.0});
    EXPECT_TRUE(symmetry_check(half, 1.5 / 120, 1e-15));
}

TEST(GaborIterate, TightFrameFixedPoint) {
    // indicator on [0, 1): S = 3I, canonical dual g/3, lambda = 1/3 reaches it in one step
    const SampledWindow box(grid120(), 0, std::vector<double>(120, 1.0));
    const auto canonical = (1.0 / 3) * box;
    const auto tr = gabor_iterate(box, canonical, kA, kB, 0.25, 5);
    for (const auto& it : tr.iterates) EXPECT_LT(max_abs_difference(it, canonical), 1e-15);
    EXPECT_NEAR(tr.contraction, 0.25, 1e-14);
}

TEST(GaborIterate, Bspline2AutoLambda) {
    const auto g = b2();
    const auto fb = frame_bounds_estimate(GaborSpec{g, kA, kB});
    const double lambda = fb.optimal_lambda();
    EXPECT_NEAR(lambda, 4.0 / 9, 1e-12);
    const auto tr = gabor_iterate(g, dual_h2(), kA, kB, lambda, 25);
    EXPECT_NEAR(tr.contraction, 1.0 / 3, 1e-12);
    ASSERT_EQ(tr.iterates.size(), 26u);
    ASSERT_EQ(tr.step_deltas.size(), 25u);
    for (std::size_t p = 1; p < tr.step_deltas.size(); ++p)
        if (tr.step_deltas[p - 1] > 1e-13)
            EXPECT_LE(tr.step_deltas[p] / tr.step_deltas[p - 1], tr.contraction + 1e-6) << p;
    for (std::size_t p = 0; p < tr.iterates.size(); ++p) {
        EXPECT_LT(tr.duality_residuals[p], 1e-6);
        EXPECT_GE(tr.supports[p].first, tr.support_bounds[p].first - 1e-12);
        EXPECT_LE(tr.supports[p].second, tr.support_bounds[p].second + 1e-12);
    }
}

TEST(GaborIterate, ApproximateDualResidualContracts) {
    const auto phi = compact_dual(b2(), dual_h2(), kA, kB, 0.1 * b2(), 6);
    GaborIterateOptions opt;
    opt.certificate_tol = 1.0;
    const auto tr = gabor_iterate(b2(), phi, kA, kB, 4.0 / 9, 10, opt);
    const double r0 = tr.duality_residuals.front();
    for (double r : tr.duality_residuals) EXPECT_LE(r, 10 * r0);
    EXPECT_LT(tr.duality_residuals.back(), 1e-3 * r0);
}

TEST(GaborIterate, NormStaysBounded) {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> scale(-0.2, 0.2);
    for (int t = 0; t < 10; ++t) {
        const auto phi = compact_dual(b2(), dual_h2(), kA, kB, scale(rng) * b2(), 6);
        GaborIterateOptions opt;
        opt.certificate_tol = 1.0;
        const auto tr = gabor_iterate(b2(), phi, kA, kB, 4.0 / 9, 15, opt);
        EXPECT_LE(l2_norm(tr.iterates.back()), l2_norm(phi) + 1e-3);
    }
}

TEST(GaborIterate, StepMatchesPerturbationForm) {
    // g^1 = g^0 + lambda g - lambda S g^0, and the perturbation form with w = lambda g
    // approaches it as J grows
    const double lambda = 4.0 / 9;
    const auto tr = gabor_iterate(b2(), dual_h2(), kA, kB, lambda, 1);
    double previous = 1e300;
    for (long J : {7L, 14L, 28L, 56L}) {
        const double d = max_abs_difference(compact_dual(b2(), dual_h2(), kA, kB, lambda * b2(), J), tr.iterates[1]);
        EXPECT_LT(d, previous) << J;
        previous = d;
    }
    EXPECT_LT(previous, 1e-2);
}

TEST(GaborIterate, ErrorsAndDegenerateCases) {
    EXPECT_THROW(gabor_iterate(b2(), dual_h2(), kA, kB, 1.0, 3), ContractionError);
    EXPECT_THROW(gabor_iterate(b2(), dual_h2(), kA, kB, -0.1, 3), ContractionError);
    EXPECT_THROW(gabor_iterate(b2(), b2(), kA, kB, 0.4, 3), DualityError);
    const auto tr = gabor_iterate(b2(), dual_h2(), kA, kB, 0.4, 0);
    ASSERT_EQ(tr.iterates.size(), 1u);
    EXPECT_TRUE(tr.step_deltas.empty());
    EXPECT_EQ(max_abs_difference(tr.iterates[0], dual_h2()), 0.0);
}
