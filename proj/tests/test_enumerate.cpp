#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "northcott/bounds.hpp"
#include "northcott/enumerate.hpp"

using namespace northcott;

namespace {

double to_d(const Rational& r) { return r.convert_to<double>(); }

// Mahler measure of a primitive quadratic in floating point.
double quad_mahler(long a0, long a1, long a2) {
    double disc = double(a1) * a1 - 4.0 * a2 * a0;
    if (disc < 0) return std::max<double>(a2, std::labs(a0));
    double s = std::sqrt(disc);
    double r1 = (-a1 + s) / (2.0 * a2), r2 = (-a1 - s) / (2.0 * a2);
    return a2 * std::max(1.0, std::fabs(r1)) * std::max(1.0, std::fabs(r2));
}

bool is_square(long n) {
    if (n < 0) return false;
    long r = std::lround(std::sqrt(double(n)));
    return r * r == n;
}

// Minimal polynomials of degree <= 2 with height <= X, by looping over the
// coefficient box directly. M(f) is an algebraic integer, so a rational T can
// only tie with an integral M; near-integral values are treated as ties.
std::set<IntPoly> naive(long xn, long xd, unsigned dmax) {
    std::set<IntPoly> out;
    for (long b = 1; b * xd <= xn; ++b)
        for (long a = -xn / xd; a <= xn / xd; ++a)
            if (std::gcd(std::labs(a), b) == 1 && std::labs(a) * xd <= xn) out.insert(IntPoly({a, b}));
    if (dmax < 2) return out;
    const double T = double(xn) * xn / (double(xd) * xd);
    const bool integral_T = (xn * xn) % (xd * xd) == 0;
    for (long a2 = 1; a2 <= 9; ++a2)
        for (long a1 = -18; a1 <= 18; ++a1)
            for (long a0 = -9; a0 <= 9; ++a0) {
                if (a0 == 0 || std::gcd(std::gcd(std::labs(a0), std::labs(a1)), a2) != 1) continue;
                if (is_square(a1 * a1 - 4 * a2 * a0)) continue;
                double m = quad_mahler(a0, a1, a2);
                bool tie = integral_T && std::fabs(m - T) < 1e-6;
                if (m < T || tie) out.insert(IntPoly({a0, a1, a2}));
            }
    return out;
}

std::set<IntPoly> minpolys(const std::vector<Found>& v) {
    std::set<IntPoly> s;
    for (const auto& f : v) s.insert(f.number.minpoly());
    return s;
}

std::vector<Found> run(unsigned d, Rational X, bool all = false, unsigned jobs = 1) {
    EnumQuery q;
    q.max_degree = d;
    q.height_cap = X;
    q.all_conjugates = all;
    q.jobs = jobs;
    return enum_bounded_height(q);
}

}  // namespace

TEST(Enumerate, SmallCounts) {
    EXPECT_EQ(run(1, 2).size(), 7u);
    EXPECT_EQ(run(1, 3).size(), 15u);
    auto k = run(2, 1, true);
    EXPECT_EQ(k.size(), 9u);
    for (const auto& f : k) EXPECT_EQ(f.height.exact()->radicand, 1);
}

TEST(Enumerate, KroneckerBoundary) {
    std::set<IntPoly> expect = {IntPoly({0, 1}),    IntPoly({1, 1}),    IntPoly({-1, 1}),
                                IntPoly({1, 0, 1}), IntPoly({1, 1, 1}), IntPoly({1, -1, 1})};
    EXPECT_EQ(minpolys(run(2, 1)), expect);
    // degree 4 adds the cyclotomic quartics Phi_5, Phi_8, Phi_10, Phi_12
    auto four = minpolys(run(4, 1));
    EXPECT_EQ(four.size(), 10u);
    for (const auto& f : four) EXPECT_TRUE(detail::is_cyclotomic(f) || f == IntPoly({0, 1})) << format_poly(f);
}

TEST(Enumerate, BelowOneIsEmpty) {
    EXPECT_TRUE(run(2, Rational(9, 10)).empty());
    EXPECT_THROW(run(5, 2), UnsupportedError);
}

TEST(Enumerate, MatchesNaiveOracle) {
    const std::pair<long, long> caps[] = {{1, 1}, {3, 2}, {2, 1}, {5, 2}, {3, 1}};
    for (auto [n, d] : caps)
        for (unsigned dmax = 1; dmax <= 2; ++dmax)
            EXPECT_EQ(minpolys(run(dmax, Rational(n, d))), naive(n, d, dmax)) << n << "/" << d << " d=" << dmax;
}

TEST(Enumerate, Monotone) {
    auto small = minpolys(run(2, Rational(3, 2))), big = minpolys(run(2, 2)), cubic = minpolys(run(3, Rational(3, 2)));
    for (const auto& f : small) {
        EXPECT_TRUE(big.count(f));
        EXPECT_TRUE(cubic.count(f));
    }
}

TEST(Enumerate, HeightsWithinCap) {
    Rational X(7, 5);
    auto v = run(3, X);
    for (const auto& f : v) EXPECT_LE(f.height.lo(), X) << f.number.str();
    for (std::size_t i = 1; i < v.size(); ++i) EXPECT_LE(v[i - 1].number.degree(), v[i].number.degree());
}

TEST(Enumerate, JobsDoNotChangeOutput) {
    auto a = run(3, Rational(5, 4), true, 1), b = run(3, Rational(5, 4), true, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].number, b[i].number);
}

TEST(Enumerate, Filters) {
    EnumQuery q;
    q.max_degree = 2;
    q.height_cap = 2;
    q.field_filter = IntPoly({-2, 0, 1});
    for (const auto& f : enum_bounded_height(q)) EXPECT_TRUE(same_field(f.number.minpoly(), IntPoly({-2, 0, 1})));
    q.field_filter.reset();
    q.membership_filter = IntPoly({1, 0, 1});
    std::set<IntPoly> got = minpolys(enum_bounded_height(q));
    EXPECT_TRUE(got.count(IntPoly({1, 0, 1})));
    EXPECT_TRUE(got.count(IntPoly({1, 2})));
    EXPECT_FALSE(got.count(IntPoly({1, 1, 1})));
    EXPECT_FALSE(got.count(IntPoly({-2, 0, 1})));
}

TEST(Delta, Examples) {
    auto s2 = delta_oracle(IntPoly({-2, 0, 1}));
    ASSERT_TRUE(s2.value.exact());
    EXPECT_EQ(s2.value.exact()->radicand, 2);
    EXPECT_EQ(s2.value.exact()->index, 2u);

    auto s5 = delta_oracle(IntPoly({-5, 0, 1}));
    EXPECT_EQ(s5.delta.degree(), 2);
    EXPECT_EQ(abs(s5.delta.minpoly().coeff(1)), 1);
    EXPECT_NEAR(to_d(s5.value.midpoint()), std::sqrt((1 + std::sqrt(5.0)) / 2), 1e-10);

    auto z3 = delta_oracle(IntPoly({1, 1, 1}));
    EXPECT_EQ(z3.value.exact()->radicand, 1);

    auto c2 = delta_oracle(IntPoly({-2, 0, 0, 1}));
    EXPECT_EQ(c2.value.exact()->radicand, 2);
    EXPECT_EQ(c2.value.exact()->index, 3u);

    EXPECT_THROW(delta_oracle(IntPoly({-2, 0, 1}), Rational(13, 10)), NotFoundError);
    EXPECT_THROW(delta_oracle(IntPoly({-4, 0, 1})), DomainError);
    EXPECT_THROW(delta_oracle(IntPoly({-2, 0, 0, 0, 1})), UnsupportedError);
}

TEST(Delta, IntermediateInfimum) {
    EXPECT_EQ(intermediate_delta_infimum(IntPoly({-2, 0, 1})).exact()->radicand, 2);
    EXPECT_EQ(intermediate_delta_infimum(IntPoly({1, 1, 1})).exact()->radicand, 1);
    EXPECT_NEAR(to_d(intermediate_delta_infimum(IntPoly({-2, 0, 0, 1})).midpoint()), std::cbrt(2.0), 1e-10);
}

TEST(Delta, NeverAboveDefiningRoot) {
    for (long a : {2L, 3L, 6L, 7L, 10L, 11L}) {
        IntPoly m({-a, 0, 1});
        auto c = compare(delta_oracle(m).value, weil_height(m, default_tol()));
        ASSERT_TRUE(c.has_value());
        EXPECT_LE(*c, 0);
    }
}

TEST(Delta, SilvermanValidationQuadratic) {
    for (long D = -30; D <= 30; ++D) {
        if (D == 0 || D == 1) continue;
        bool sqfree = true;
        for (long p = 2; p * p <= std::labs(D); ++p)
            if (std::labs(D) % (p * p) == 0) sqfree = false;
        if (!sqfree) continue;
        long disc = ((D % 4) + 4) % 4 == 1 ? D : 4 * D;
        auto delta = delta_oracle(IntPoly({-D, 0, 1})).value;
        auto lower = silverman_lower_bound({1, 2, BigInt(std::labs(disc))});
        auto c = compare(lower, delta);
        ASSERT_TRUE(c.has_value()) << D;
        EXPECT_LE(*c, 0) << D;
    }
}

TEST(FiniteN, Examples) {
    EXPECT_EQ(finite_N_check(NumberField::rationals(), 2).points.size(), 7u);
    auto r2 = finite_N_check(NumberField::make(AlgebraicNumber::largest_real_root(IntPoly({-2, 0, 1}))), 1);
    EXPECT_EQ(r2.points.size(), 3u);
    EXPECT_TRUE(r2.complete);
    auto gi = finite_N_check(NumberField::make(AlgebraicNumber::from_root(IntPoly({1, 0, 1}), 0)), 1);
    EXPECT_EQ(gi.points.size(), 5u);
    for (const auto& p : gi.points) EXPECT_EQ(element_minpoly(p.element), p.minpoly);
}
