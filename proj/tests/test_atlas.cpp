#include "gabor/analysis.hpp"
#include "gabor/atlas.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gabor;
using fixtures::q;

TEST(Classify, ListedPoints) {
    EXPECT_EQ(classify_bspline_point(3, q(3), q(1, 4)).label, Label::NotFrame_aGeN);
    EXPECT_EQ(classify_bspline_point(3, q(1, 2), q(2)).label, Label::NotFrame_bInteger);
    EXPECT_EQ(classify_bspline_point(2, q(3, 2), q(1, 2)).label, Label::Frame_RegionB);
    EXPECT_EQ(classify_bspline_point(4, q(1), q(1, 4)).label, Label::Frame_bSmall);
    auto r = classify_bspline_point(4, q(1, 2), q(1, 3));
    EXPECT_EQ(r.label, Label::Frame_RationalA);
    EXPECT_EQ(r.k, 1);
    EXPECT_EQ(r.p, 2);
    EXPECT_EQ(r.evidence(), "a=1/2");
}

TEST(Classify, DensityAndOtherRules) {
    EXPECT_EQ(classify_bspline_point(3, q(2), q(1, 2)).label, Label::NotFrame_abGe1);
    EXPECT_EQ(classify_bspline_point(3, q(5), q(1, 2)).label, Label::NotFrame_aGeN);
    auto v = classify_bspline_point(4, q(7, 5), q(1, 2));
    EXPECT_EQ(v.label, Label::Frame_ReciprocalIntegerB);
    EXPECT_EQ(v.evidence(), "b=1/2");
    // large numerator: only the k-multiple search applies
    auto t = classify_bspline_point(4, q(101, 211), q(2, 5));
    ASSERT_EQ(t.label, Label::Frame_TranslationMultiple);
    EXPECT_EQ(t.k, 5);
    EXPECT_THROW(classify_bspline_point(1, q(1), q(1, 2)), std::invalid_argument);
    EXPECT_THROW(classify_bspline_point(3, q(0), q(1, 2)), std::invalid_argument);
}

TEST(Reduce, ConditionalExample) {
    auto r = reduce_to_strip(6, q(1, 2), q(1, 3));
    EXPECT_EQ(r.kind, StripReduction::Conditional);
    EXPECT_EQ(r.M, 2);
    EXPECT_EQ(r.a_prime, q(2));
}

TEST(Reduce, OversamplingAndGuards) {
    // 2ab = 2/9: M = 4, a' = 8/3 in [2, 4), a'b = 8/9
    auto r = reduce_to_strip(4, q(1, 3), q(1, 3));
    EXPECT_EQ(r.kind, StripReduction::Oversampling);
    EXPECT_EQ(r.M, 4);
    EXPECT_EQ(r.a_prime, q(8, 3));
    EXPECT_THROW(reduce_to_strip(4, q(3, 2), q(1, 3)), std::invalid_argument);
    EXPECT_THROW(reduce_to_strip(4, q(1, 10), q(1, 5)), std::invalid_argument);
    EXPECT_THROW(reduce_to_strip(8, q(1, 10), q(2)), std::invalid_argument);
}

TEST(Reduce, MIsTheExactBand) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        Rational a = fixtures::random_rational(rng, q(1, 100), q(3));
        Rational b = fixtures::random_rational(rng, q(1, 3), q(3));
        if (a * b * 2 >= 1 || b.get_den() == 1) continue;
        auto r = reduce_to_strip(3, a, b);
        Rational t = a * b * 2;
        EXPECT_TRUE(Rational(1, r.M + 1) <= t && t < Rational(1, r.M));
        EXPECT_EQ(r.a_prime, a * 2 * r.M);
    }
}

TEST(Atlas, SweepInvariants) {
    auto at = render_atlas(3, q(0), q(3), q(0), q(3), 60);
    ASSERT_EQ(at.cells.size(), 3600u);
    long strip = 0, unknown = 0;
    for (const auto& c : at.cells) {
        auto rules = applicable_rules(3, c.a, c.b);
        bool f = false, nf = false;
        for (auto l : rules) f |= is_frame(l), nf |= is_not_frame(l);
        EXPECT_FALSE(f && nf) << to_string(c.a) << "," << to_string(c.b);
        Label l = c.label.label;
        if (c.a >= 3 || c.a * c.b >= 1) EXPECT_TRUE(is_not_frame(l));
        if (l == Label::NotFrame_bInteger) EXPECT_TRUE(c.b == 2 || c.b == 3);
        if (l == Label::Frame_TranslationMultiple) {
            Rational ak = c.a * c.label.k;
            EXPECT_TRUE(c.b * 3 > 1 && c.b * 3 < 2 && ak * 2 >= 3 && ak * c.b < 1);
        }
        if (l == Label::ConditionalOnStrip) {
            ++strip;
            Rational ap = *c.label.a_prime;
            EXPECT_TRUE(ap * 2 < 3 && ap * c.b * 2 >= 1 && ap * c.b < 1);
        }
        unknown += l == Label::Unknown;
    }
    EXPECT_GT(strip, 0);
    EXPECT_GT(unknown, 0);
}

TEST(Atlas, RegionBAgreesWithEngine) {
    for (long N : {2, 3, 4}) {
        Window g = make_bspline(static_cast<int>(N));
        auto at = render_atlas(N, q(0), Rational(N), q(0), q(2), 24);
        for (const auto& c : at.cells) {
            if (c.a * 2 < N || c.a >= N) continue;
            auto d = check_frame(g, c.a, c.b);
            if (d.verdict == Verdict::OutOfScope) continue;
            EXPECT_EQ(d.verdict == Verdict::Frame, is_frame(c.label.label));
            EXPECT_EQ(d.verdict == Verdict::NotFrame, is_not_frame(c.label.label));
        }
    }
}

TEST(Atlas, SingleCellAndExports) {
    auto at = render_atlas(2, q(1), q(2), q(0), q(1), 1);
    ASSERT_EQ(at.cells.size(), 1u);
    EXPECT_EQ(at.cells[0].a, q(3, 2));
    EXPECT_EQ(at.cells[0].label.label, classify_bspline_point(2, q(3, 2), q(1, 2)).label);
    auto csv = render_atlas(2, q(0), q(2), q(0), q(3), 4).csv();
    EXPECT_EQ(csv.rfind("a,b,label,evidence\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 17);
    EXPECT_NE(at.svg().find("<rect"), std::string::npos);
    EXPECT_THROW(render_atlas(2, q(0), q(2), q(0), q(3), 0), std::invalid_argument);
}

TEST(Atlas, DeterministicAcrossThreads) {
    setenv("GABOR_THREADS", "1", 1);
    auto one = render_atlas(3, q(0), q(3), q(0), q(3), 30).csv();
    setenv("GABOR_THREADS", "4", 1);
    auto four = render_atlas(3, q(0), q(3), q(0), q(3), 30).csv();
    unsetenv("GABOR_THREADS");
    EXPECT_EQ(one, four);
}
