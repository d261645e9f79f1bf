#include "gabor/lattice.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace gabor;
using fixtures::q;

namespace {

// Brute force: scan M upwards and kappa over [0, M] with the defining inequalities.
std::pair<long, long> brute_force(const Rational& alpha, const Rational& a, const Rational& b) {
    Rational ab = a * b;
    long M = -1;
    for (long m = 1; m <= 1000000; ++m)
        if (Rational(m - 1, m) <= ab && ab < Rational(m, m + 1)) {
            M = m;
            break;
        }
    long kappa = -1;
    for (long k = 0; k <= M; ++k)
        if ((1 - ab) * k <= b * alpha) kappa = k;
    return {M, kappa};
}

}  // namespace

TEST(Lattice, WorkedExample) {
    auto c = classify_params(q(9, 10), q(1), q(3, 5));
    ASSERT_TRUE(std::holds_alternative<LatticeParams>(c));
    auto p = std::get<LatticeParams>(c);
    EXPECT_EQ(p.M, 2);
    EXPECT_EQ(p.kappa, 1);
    EXPECT_EQ(p.step(), q(2, 3));
}

TEST(Lattice, DerivedExamples) {
    auto p = std::get<LatticeParams>(classify_params(q(1), q(1), q(1, 2)));
    EXPECT_EQ(p.M, 2);
    EXPECT_EQ(p.kappa, 1);
    auto r = std::get<LatticeParams>(classify_params(q(9, 10), q(17, 10), q(7, 20)));
    EXPECT_EQ(r.M, 2);
    EXPECT_EQ(r.kappa, 0);
}

TEST(Lattice, RegionGates) {
    auto c = classify_params(q(9, 10), q(9, 5), q(1, 10));
    ASSERT_TRUE(std::holds_alternative<OutOfScope>(c));
    EXPECT_EQ(std::get<OutOfScope>(c).reason, OutOfScope::Reason::TranslationAtLeastTwoAlpha);
    EXPECT_EQ(std::get<OutOfScope>(classify_params(q(1), q(1, 2), q(1))).reason, OutOfScope::Reason::TranslationBelowAlpha);
    EXPECT_EQ(std::get<OutOfScope>(classify_params(q(1), q(1), q(1))).reason, OutOfScope::Reason::DensityAtLeastOne);
    EXPECT_EQ(std::get<OutOfScope>(classify_params(q(1), q(1), q(2, 5))).reason, OutOfScope::Reason::SingleBand);
    EXPECT_THROW(classify_params(q(1), q(0), q(1, 2)), std::invalid_argument);
    EXPECT_THROW(classify_params(q(1), q(1), q(-1, 2)), std::invalid_argument);
}

TEST(Lattice, BandBoundaryBelongsToNextBand) {
    // ab = 2/3 = M/(M+1) for M = 2 lies in the M = 3 band
    auto p = std::get<LatticeParams>(classify_params(q(1), q(1), q(2, 3)));
    EXPECT_EQ(p.M, 3);
    // ab = 1/2 starts the M = 2 band
    EXPECT_EQ(std::get<LatticeParams>(classify_params(q(1), q(1), q(1, 2))).M, 2);
}

TEST(Lattice, RandomizedAgreementWithBruteForceAndKappaBound) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; ++t) {
        Rational alpha = fixtures::random_rational(rng, q(1, 10), q(3), 53) + q(1, 10);
        Rational a = fixtures::random_rational(rng, alpha, Rational(2 * alpha), 101);
        Rational b = fixtures::random_rational(rng, Rational(1 / (2 * a)), Rational(1 / a), 211);
        auto c = classify_params(alpha, a, b);
        if (!std::holds_alternative<LatticeParams>(c)) continue;
        auto p = std::get<LatticeParams>(c);
        auto [M, kappa] = brute_force(alpha, a, b);
        ASSERT_EQ(p.M, M);
        ASSERT_EQ(p.kappa, kappa);
        ASSERT_LE(p.kappa, p.M - 1);
        ASSERT_GE(p.kappa, 0);
        Rational ab = a * b;
        ASSERT_LE((1 - ab) * p.kappa, b * alpha);
        ASSERT_GT((1 - ab) * (p.kappa + 1), b * alpha);
    }
}
