#include <gtest/gtest.h>

#include <cmath>

#include "northcott/bounds.hpp"
#include "support.hpp"

using namespace northcott;

namespace {
double to_d(const Rational& r) { return r.convert_to<double>(); }
}  // namespace

TEST(Silverman, Examples) {
    Enclosure s = silverman_lower_bound({1, 2, 8});
    EXPECT_EQ(s.width(), 0);
    EXPECT_NEAR(to_d(s.midpoint()), std::pow(2.0, -0.5) * std::pow(8.0, 0.25), 1e-11);
    EXPECT_NEAR(to_d(s.midpoint()), 1.18921, 1e-5);

    Enclosure one = silverman_lower_bound({1, 3, 1});
    EXPECT_LT(one.hi(), 1);
    EXPECT_NEAR(to_d(one.midpoint()), std::pow(3.0, -1.0 / 4), 1e-11);

    Enclosure s5 = silverman_lower_bound({1, 2, 5});
    EXPECT_NEAR(to_d(s5.midpoint()), 1.05737, 1e-5);
    EXPECT_LT(s5.hi(), Rational(127202, 100000));
}

TEST(Silverman, ArchimedeanPlaces) {
    // delta_K = 1 instead of [K:Q] = 2 gives a larger bound
    Enclosure full = silverman_lower_bound({2, 2, 100});
    Enclosure one = silverman_lower_bound({2, 2, 100}, 1u);
    EXPECT_EQ(compare(one, full), 1);
    EXPECT_THROW(silverman_lower_bound({2, 2, 100}, 3u), DomainError);
    EXPECT_THROW(silverman_lower_bound({1, 1, 100}), DomainError);
}

TEST(DeltaBound, Examples) {
    EXPECT_NEAR(to_d(delta_lower_bound({1, 2, 8}).midpoint()), 0.5 * std::pow(8.0, 0.25), 1e-11);
    Enclosure half = delta_lower_bound({1, 2, 1});
    ASSERT_TRUE(half.exact());
    EXPECT_EQ(half.exact()->radicand, Rational(1, 2));
    EXPECT_EQ(half.exact()->index, 1u);
    EXPECT_NEAR(to_d(delta_lower_bound({1, 2, 1000000}).midpoint()), 0.5 * std::pow(10.0, 1.5), 1e-9);
}

TEST(DeltaBound, NeverAboveSilverman) {
    for (unsigned base = 1; base <= 4; ++base)
        for (unsigned m = 2; m <= 7; ++m)
            for (long N : {1L, 2L, 7L, 64L, 1000L, 123456789L}) {
                StepBoundInput in{base, m, N};
                auto c = compare(delta_lower_bound(in), silverman_lower_bound(in));
                ASSERT_TRUE(c.has_value());
                EXPECT_LE(*c, 0);
            }
}

TEST(NormBound, Examples) {
    EXPECT_EQ(eisenstein_step_norm_bound(2, 2, 2), 4);
    EXPECT_EQ(eisenstein_step_norm_bound(5, 1, 3), 25);
    EXPECT_EQ(eisenstein_step_norm_bound(13, 1, 2), 13);
    EXPECT_THROW(eisenstein_step_norm_bound(4, 1, 2), DomainError);
    EXPECT_THROW(eisenstein_step_norm_bound(3, 1, 1), DomainError);
}

TEST(Criterion, Examples) {
    EXPECT_NEAR(to_d(criterion_quantity_lower(5, 2).midpoint()), std::pow(5.0, 0.25), 1e-11);
    EXPECT_NEAR(to_d(criterion_quantity_lower(97, 9).midpoint()), std::pow(97.0, 1.0 / 18), 1e-11);
    Enclosure t = criterion_quantity_lower(pow(BigInt(3), 6), 3);
    ASSERT_TRUE(t.exact());
    EXPECT_EQ(t.exact()->radicand, 3);
    EXPECT_EQ(t.exact()->index, 1u);
    EXPECT_THROW(criterion_quantity_lower(5, 1), DomainError);
}

TEST(Criterion, WeakerThanEveryIntermediateDegree) {
    for (auto p : first_primes(25))
        for (unsigned d = 2; d <= 9; ++d)
            for (unsigned m = 2; m <= d; ++m)
                for (unsigned k0 = 1; k0 <= 3; ++k0) {
                    Radical lower{Rational(p), 2 * d};
                    EXPECT_LE(compare(lower, eisenstein_exact_quantity(p, k0, m)), 0) << p << " " << d << " " << m;
                }
}

TEST(Bf, Monomial) {
    auto r = bf_constant({0, 0, 1});
    EXPECT_EQ(r.b_f, 1);
    EXPECT_EQ(r.height_cap, 1);
}

TEST(Bf, ShiftedSquare) {
    auto r = bf_constant({-1, 0, 1});
    // optimum of min(1 - 1/rho, rho^-2) is 1/phi^2
    EXPECT_NEAR(to_d(r.b_f), (3 - std::sqrt(5.0)) / 2, 1e-9);
    EXPECT_LE(r.b_f, Rational(3819660113, 10000000000));
    EXPECT_LT(r.height_cap, 7);
}

TEST(Bf, NonarchimedeanFactors) {
    auto r = bf_constant({1, 0, 0, 2});
    EXPECT_LT(r.b_f, 1);
    ASSERT_EQ(r.nonarchimedean.size(), 1u);
    EXPECT_EQ(r.nonarchimedean[0].first, 2);
    auto h = bf_constant({Rational(1, 3), 0, 1});
    EXPECT_LT(h.b_f, 1);
    EXPECT_THROW(bf_constant({1, 2}), DomainError);
}

TEST(Bf, SamplingFindsNoCounterexample) {
    auto o = testsupport::bf_harness(20260101, 1500);
    EXPECT_EQ(o.counterexamples, 0);
    EXPECT_EQ(o.undecided, 0);
    EXPECT_EQ(o.pass, 1500);
}

TEST(Bf, GrowthPastTheCap) {
    // H(a) > 1/b^2 forces H(f(a)) > H(a)^(3/2)
    auto f = std::vector<Rational>{-1, 0, 1};
    auto r = bf_constant(f);
    for (long a : {7L, 8L, 20L, 100L}) {
        Rational y = Rational(a) * a - 1;
        EXPECT_GT(pow(Rational(abs(num(y))), 2), pow(Rational(a), 3));
        EXPECT_GT(Rational(a), r.height_cap);
    }
}
