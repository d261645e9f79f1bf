#include "gabor/dual.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gabor;
using fixtures::q;

namespace {

double max_residual(const DualWindow& h, long n, int samples) {
    auto [lo, hi] = duality_interval(h.params(), n);
    double worst = 0;
    for (int k = 0; k <= samples; ++k) {
        Rational x = lo + (hi - lo) * Rational(k, samples);
        worst = std::max(worst, std::fabs(duality_residual_at(h, n, x)));
    }
    return worst;
}

bool has_zero(const std::vector<ZeroPoint>& v, const Rational& r) {
    for (const auto& z : v)
        if (compare(z.location, r) == 0) return true;
    return false;
}

}  // namespace

TEST(ZeroSets, WorkedExample) {
    Window g = fixtures::example_window();
    auto zs = build_zero_sets(g, lattice_params(g.alpha(), q(1), q(3, 5)));
    ASSERT_EQ(zs.Y.size(), 2u);
    EXPECT_EQ(zs.r(0), 2u);
    EXPECT_TRUE(has_zero(zs.Y[0], q(1, 5)));
    EXPECT_TRUE(has_zero(zs.Y[0], q(9, 10)));
    ASSERT_EQ(zs.r(1), 1u);
    EXPECT_TRUE(has_zero(zs.Y[1], q(1, 5)));
    ASSERT_EQ(zs.l(0), 1u);
    EXPECT_TRUE(has_zero(zs.W[0], q(-9, 10)));
    EXPECT_EQ(zs.l(1), 0u);
}

TEST(ZeroSets, PositiveWindowAndKappaZero) {
    Window g = make_bspline(2);
    auto zs = build_zero_sets(g, lattice_params(g.alpha(), q(6, 5), q(7, 10)));
    EXPECT_EQ(zs.r(0), 1u);
    EXPECT_EQ(zs.l(0), 1u);
    for (std::size_t n = 1; n < zs.Y.size(); ++n) {
        EXPECT_EQ(zs.r(n), 0u);
        EXPECT_EQ(zs.l(n), 0u);
    }
    auto z0 = build_zero_sets(g, lattice_params(g.alpha(), q(17, 10), q(7, 20)));
    EXPECT_EQ(z0.Y.size(), 1u);
}

TEST(Epsilon, WorkedExampleBallConditions) {
    Window g = fixtures::example_window();
    auto p = lattice_params(g.alpha(), q(1), q(3, 5));
    auto zs = build_zero_sets(g, p);
    auto bs = choose_epsilon(g, zs, p);
    EXPECT_GT(bs.epsilon, 0);
    EXPECT_GT(bs.delta, 0);
    EXPECT_EQ(bs.halvings, 0);
    // the n = 1 ball is centred near 1/5 + 2/3 = 13/15
    bool found = false;
    for (const auto& b : bs.plus)
        if (b.n == 1) {
            found = true;
            EXPECT_TRUE(b.contains(q(13, 15)));
            EXPECT_NE(g.eval_exact(Rational(q(13, 15) - 1)), 0);
        }
    EXPECT_TRUE(found);
}

TEST(Epsilon, NearbyZeroForcesHalving) {
    // extra zero 1/1000 to the right of y~ - a = -2/15
    Rational extra = q(-2, 15) + q(1, 1000);
    Window g = fixtures::polynomial_with_zeros(q(9, 10), {q(1, 5), extra});
    auto d = check_frame(g, q(1), q(3, 5));
    ASSERT_EQ(d.verdict, Verdict::Frame);
    auto zs = build_zero_sets(g, *d.params);
    auto bs = choose_epsilon(g, zs, *d.params);
    EXPECT_GT(bs.halvings, 0);
    EXPECT_LT(bs.epsilon, q(1, 1000));
    for (const auto& b : bs.plus) EXPECT_GT(g.min_abs_on(Rational(b.lo() - 1), Rational(b.hi() - 1)), 0.0);
}

TEST(Dual, WorkedExampleStructure) {
    Window g = fixtures::example_window();
    DualWindow h = construct_dual(g, q(1), q(3, 5));
    EXPECT_EQ(h.params().M, 2);
    EXPECT_EQ(h.support_radius(), q(19, 10));
    for (int k = 0; k <= 100; ++k) {
        Rational x = q(-1, 10) + q(1, 5) * Rational(k, 100);
        EXPECT_DOUBLE_EQ(h(x), 0.6 / g.eval(x));
    }
    EXPECT_EQ(h(q(1, 5)), 0.0);
    EXPECT_EQ(h(q(13, 15)), 0.0);
    EXPECT_EQ(h(q(9, 10)), 0.0);
    EXPECT_EQ(h(q(-9, 10)), 0.0);
    EXPECT_EQ(h(q(21, 10)), 0.0);
    EXPECT_EQ(h(q(-2)), 0.0);
    EXPECT_EQ(h(q(1)), 0.0);  // gap ]alpha, 1/b[
}

TEST(Dual, WorkedExampleResidual) {
    DualWindow h = construct_dual(fixtures::example_window(), q(1), q(3, 5));
    for (long n = -1; n <= 1; ++n) EXPECT_LT(max_residual(h, n, 4000), 1e-12) << n;
}

TEST(Dual, PositiveSplineManyBands) {
    Window g = make_bspline(2);
    DualWindow h = construct_dual(g, q(6, 5), q(7, 10));
    EXPECT_EQ(h.params().M, 6);
    EXPECT_LE(h.support_radius(), q(36, 5));
    for (long n = -(h.params().M - 1); n <= h.params().M - 1; ++n) EXPECT_LT(max_residual(h, n, 500), 1e-9) << n;
    for (int k = 0; k < 50; ++k) {
        Rational x = q(36, 5) + Rational(k, 10);
        EXPECT_EQ(h(x), 0.0);
        EXPECT_EQ(h(Rational(-x)), 0.0);
    }
}

TEST(Dual, KappaZeroPositiveWindow) {
    Window g = make_bspline(3);  // alpha = 3/2
    DualWindow h = construct_dual(g, q(2), q(27, 100));
    ASSERT_EQ(h.params().kappa, 0);
    EXPECT_DOUBLE_EQ(h(q(0)), 0.27 / g.eval(q(0)));
    EXPECT_DOUBLE_EQ(h(q(1)), 0.27 / g.eval(q(1)));  // [0, a] side
    EXPECT_EQ(h(q(-1)), 0.0);
    EXPECT_EQ(h(q(16, 10)), 0.0);
    for (int k = 0; k <= 200; ++k) {
        Rational x = q(-2) + Rational(2 * k, 200);
        EXPECT_NEAR(duality_residual_at(h, 0, x), 0.0, 1e-12);
    }
}

TEST(Dual, SingleBandPositiveWindow) {
    Window g = make_bspline(2);
    DualWindow h = construct_dual(g, q(1), q(2, 5));
    EXPECT_EQ(h.params().M, 1);
    for (int k = 0; k <= 200; ++k) EXPECT_NEAR(duality_residual_at(h, 0, q(-1) + Rational(k, 200)), 0.0, 1e-12);
}

TEST(Dual, RejectsNonFrames) {
    EXPECT_THROW(construct_dual(fixtures::obstructed_window(), q(1), q(3, 5)), NotAFrame);
    EXPECT_THROW(construct_dual(fixtures::example_window(), q(2), q(1, 4)), NotAFrame);
}

TEST(Dual, ExactSingularPointOfBand) {
    Window g = fixtures::example_window();
    DualWindow h = construct_dual(g, q(1), q(3, 5));
    // x + a = 1/b + y+ is where the band denominator g(x - 1/b + a) vanishes
    Rational x = q(5, 3) + q(1, 5) - 1;
    EXPECT_EQ(h(Rational(x + 1)), 0.0);
    EXPECT_EQ(duality_residual_at(h, 1, x), 0.0);
}

TEST(Dual, IrrationalZeros) {
    // zeros at +-sqrt(2)/7 are inside the positive and negative sides for a = 1
    Polynomial p = Polynomial({q(81, 100), q(0), q(-1)}) * Polynomial({q(-2, 49), q(0), q(1)});
    Window g = make_polynomial_window(q(9, 10), p);
    auto d = check_frame(g, q(1), q(3, 5));
    ASSERT_EQ(d.verdict, Verdict::Frame);
    DualWindow h = construct_dual(g, q(1), q(3, 5));
    for (long n = -1; n <= 1; ++n) EXPECT_LT(max_residual(h, n, 3000), 1e-9) << n;
}

TEST(Dual, VanishingSetsAndBound) {
    DualWindow h = construct_dual(make_bspline(2), q(6, 5), q(7, 10));
    const auto& p = h.params();
    for (long n = 1; n <= p.kappa; ++n) {
        Rational lo = p.alpha + p.a * (n - 1), hi = p.inv_b() * n;
        for (int k = 1; k < 50; ++k) {
            Rational x = lo + (hi - lo) * Rational(k, 50);
            EXPECT_EQ(h(x), 0.0);
            EXPECT_EQ(h(Rational(x + p.a)), 0.0);
            EXPECT_EQ(h(Rational(-x)), 0.0);
        }
    }
    double worst = 0;
    for (int k = 0; k <= 20000; ++k) worst = std::max(worst, std::fabs(h(q(-6) + Rational(12 * k, 20000) + q(1, 77777))));
    EXPECT_LE(worst, h.sup_bound());
}

TEST(Dual, ExportsCasesAndGrid) {
    DualWindow h = construct_dual(fixtures::example_window(), q(1), q(3, 5));
    auto j = h.cases_json();
    EXPECT_EQ(j["schema"], "gabor.dual.cases/1");
    EXPECT_EQ(j["kappa"], 1);
    EXPECT_EQ(j["bands"].size(), 2u);
    EXPECT_EQ(j["core"]["interval"][0], "-1/10");
    std::string csv = h.grid_csv(101);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 102);
}
