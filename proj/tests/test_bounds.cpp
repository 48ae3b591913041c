#include <gtest/gtest.h>

#include "fanowb/bounds.hpp"

using namespace fanowb;

TEST(K0, Values) {
    EXPECT_EQ(k0(2), 0);
    EXPECT_EQ(k0(3), 4);
    EXPECT_EQ(k0(4), 66);
    EXPECT_EQ(k0(5), 1021684);
    // 1 + 2 C(1021688, 4) + C(1021689, 5)
    EXPECT_EQ(k0(6), 1 + 2 * binomial(BigInt(1021688), 4) + binomial(BigInt(1021689), 5));
}

TEST(K0, StrictlyIncreasingAndPowerBound) {
    for (long d = 3; d <= 6; ++d) EXPECT_LT(k0(d - 1), k0(d));
    EXPECT_EQ(k0_power_bound(5).bound, BigInt(16777216));
    for (long d = 5; d <= 6; ++d) EXPECT_TRUE(k0_power_bound(d).holds) << d;
    auto b7 = k0_power_bound(7, true);
    EXPECT_TRUE(b7.holds);
    EXPECT_LT(k0(6, true), k0(7, true));
}

TEST(K0, Gating) {
    try {
        k0(7);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SearchSpaceTooLarge);
    }
    EXPECT_THROW(k0(1), Error);
}

TEST(N0, Values) {
    EXPECT_EQ(n0(2), 1);
    EXPECT_EQ(n0(3), 11);
    // ceil(C(70,4)/67) + 66 = ceil(916895/67) + 66
    EXPECT_EQ(n0(4), 13685 + 66);
    for (long d = 2; d <= 6; ++d) EXPECT_TRUE(n0_power_bound(d).holds) << d;
    EXPECT_TRUE(n0_power_bound(4).separate_case);
    EXPECT_FALSE(n0_power_bound(5).separate_case);
}

TEST(BinomBound, Examples) {
    auto b = binom_bound_check(6, 5);
    EXPECT_TRUE(b.holds);
    EXPECT_EQ(b.binom, 462);
    EXPECT_EQ(b.power, 7776);
    auto out = binom_bound_check(2, 5);
    EXPECT_FALSE(out.holds);
    EXPECT_FALSE(out.in_hypothesis);
    EXPECT_EQ(out.binom, 21);
}

TEST(BinomBound, ExhaustiveRange) {
    for (long x = 6; x <= 200; ++x)
        for (long d = 5; d <= 12; ++d) {
            auto b = binom_bound_check(x, d);
            EXPECT_TRUE(b.in_hypothesis);
            ASSERT_TRUE(b.holds) << x << " " << d;
        }
}

TEST(ThresholdReport, CubicSurface) {
    auto r = threshold_report(3, 3, 1, -1, 1);
    EXPECT_TRUE(r.predicate("lines_expected_dim").value);
    EXPECT_TRUE(r.predicate("conjecture_range").value);
    EXPECT_EQ(r.expected.fano, 0);
    EXPECT_EQ(*r.k0, 4);
    EXPECT_EQ(*r.n0, 11);
    EXPECT_EQ(r.predicate("lines_expected_dim").inequality, "n >= 2d-4: 3 >= 2");
}

TEST(ThresholdReport, CubicThreefold) {
    auto r = threshold_report(4, 3, 1, -1, 1);
    EXPECT_FALSE(r.predicate("lines_irreducible").value);
    EXPECT_TRUE(r.predicate("lines_expected_dim").value);
    EXPECT_EQ(r.expected.fano, 2);
}

TEST(ThresholdReport, CurvesRange) {
    auto r = threshold_report(10, 3, 1, -1, 2);
    EXPECT_TRUE(r.predicate("curves_range").value);
    EXPECT_EQ(r.expected_curves, 2 * 8 + 6);
    EXPECT_FALSE(threshold_report(4, 3, 1, -1, 2).predicate("curves_range").value);
}

TEST(ThresholdReport, CounterexampleAtLinesIsNLessThanD) {
    for (long d = 2; d <= 30; ++d)
        for (long n = 2; n <= 40; ++n)
            EXPECT_EQ(threshold_report(n, d, 1, -1, 1).predicate("counterexample_range").value, n < d) << n << " " << d;
}

TEST(ThresholdReport, UnirationalityHypothesisAndNotes) {
    // d = 3, r = 0: k >= 1 + 2 C(1,1) + C(2,0) = 4 = k0(3)
    auto r = threshold_report(20, 3, 4, -1, 1, 0);
    EXPECT_TRUE(r.predicate("unirationality_hypothesis").value);
    EXPECT_FALSE(threshold_report(20, 3, 3, -1, 1, 0).predicate("unirationality_hypothesis").value);
    EXPECT_FALSE(threshold_report(20, 4, 3, -1, 1).notes.empty());
    EXPECT_FALSE(threshold_report(20, 7, 3, -1, 1).k0);
    EXPECT_THROW(threshold_report(2, 3, 2, -1, 1), Error);
}

TEST(ThresholdReport, Pure) {
    for (long n = 3; n < 8; ++n)
        for (long d = 1; d < 6; ++d) EXPECT_EQ(threshold_report(n, d, 1, 0, 2, 1), threshold_report(n, d, 1, 0, 2, 1));
}

TEST(ThresholdReport, PlanesExist) {
    // lines on cubic surfaces: 2*2 >= 4
    EXPECT_TRUE(threshold_report(3, 3, 1, -1, 1).predicate("planes_exist").value);
    // lines on quintic surfaces: 4 < 6
    EXPECT_FALSE(threshold_report(3, 5, 1, -1, 1).predicate("planes_exist").value);
}
