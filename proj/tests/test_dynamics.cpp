#include <gtest/gtest.h>

#include <random>

#include "northcott/dynamics.hpp"
#include "support.hpp"

using namespace northcott;

namespace {

FieldPtr Q() { return NumberField::rationals(); }
FieldPtr gauss() { return NumberField::make(AlgebraicNumber::from_root(IntPoly({1, 0, 1}), 0)); }

NumberFieldElement q(const FieldPtr& K, Rational r) { return NumberFieldElement::rational(K, r); }

std::set<std::vector<Rational>> coord_set(const PreperiodicResult& r) {
    std::set<std::vector<Rational>> s;
    for (const auto& p : r.points) s.insert(p.point.coords());
    return s;
}

}  // namespace

TEST(Orbit, Examples) {
    auto K = Q();
    auto sq = PolyMap::rational(K, {0, 0, 1});
    auto o = orbit(sq, q(K, -1), 10);
    EXPECT_EQ(o.status, OrbitStatus::preperiodic);
    EXPECT_EQ(o.tail, 1u);
    EXPECT_EQ(o.cycle, 1u);

    auto o2 = orbit(PolyMap::rational(K, {-1, 0, 1}), q(K, 0), 10);
    EXPECT_EQ(o2.status, OrbitStatus::preperiodic);
    EXPECT_EQ(o2.tail, 0u);
    EXPECT_EQ(o2.cycle, 2u);

    auto o3 = orbit(PolyMap::rational(K, {1, 0, 1}), q(K, 1), 10, Rational(10));
    EXPECT_EQ(o3.status, OrbitStatus::escaped);
    ASSERT_EQ(o3.points.size(), 4u);
    const long heights[] = {1, 2, 5, 26};
    for (int i = 0; i < 4; ++i) EXPECT_EQ(o3.points[i].rational_value(), heights[i]);
    EXPECT_EQ(o3.escape_step, 3u);

    auto o4 = orbit(PolyMap::rational(K, {1, 0, 1}), q(K, 1), 2);
    EXPECT_EQ(o4.status, OrbitStatus::budget_exhausted);

    EXPECT_THROW(orbit(sq, q(gauss(), 1), 3), DomainError);
    EXPECT_THROW(PolyMap::rational(K, {1, 1}), DomainError);
}

TEST(Preperiodic, OverQ) {
    auto K = Q();
    std::set<std::vector<Rational>> expect = {{-1}, {0}, {1}};
    EXPECT_EQ(coord_set(preperiodic_points(PolyMap::rational(K, {0, 0, 1}))), expect);
    auto r = preperiodic_points(PolyMap::rational(K, {-1, 0, 1}));
    EXPECT_EQ(coord_set(r), expect);
    EXPECT_GT(r.candidates, 3u);
    // x^2 - 2 has the real interval [-2, 2] as Julia set: -2, -1, 0, 1, 2 are all preperiodic
    auto c2 = preperiodic_points(PolyMap::rational(K, {-2, 0, 1}));
    EXPECT_EQ(coord_set(c2), (std::set<std::vector<Rational>>{{-2}, {-1}, {0}, {1}, {2}}));
}

TEST(Preperiodic, GaussianField) {
    auto K = gauss();
    auto r = preperiodic_points(PolyMap::rational(K, {0, 0, 1}));
    std::set<std::vector<Rational>> expect = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    EXPECT_EQ(coord_set(r), expect);
}

TEST(Preperiodic, PowerMapsGiveRootsOfUnity) {
    std::vector<FieldPtr> fields = {Q(), gauss(), NumberField::make(AlgebraicNumber::from_root(IntPoly({1, 1, 1}), 0)),
                                    NumberField::make(AlgebraicNumber::largest_real_root(IntPoly({-2, 0, 0, 1})))};
    for (const auto& K : fields)
        for (int d = 2; d <= 3; ++d) {
            std::vector<Rational> c(d + 1, Rational(0));
            c[d] = 1;
            auto got = coord_set(preperiodic_points(PolyMap::rational(K, c)));
            std::set<std::vector<Rational>> expect;
            for (const auto& p : finite_N_check(K, 1).points) expect.insert(p.element.coords());
            EXPECT_EQ(got, expect) << format_poly(K->poly()) << " d=" << d;
        }
}

TEST(Preperiodic, SetIsInvariantAndOrbitsAgree) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coef(-2, 2), deg(2, 3);
    int tried = 0;
    for (int trial = 0; trial < 40 && tried < 10; ++trial) {
        std::vector<Rational> c(deg(rng) + 1);
        for (auto& x : c) x = coef(rng);
        c.back() = (trial % 2) ? 1 : -1;
        if (bf_constant(c).height_cap > 40) continue;
        PolyMap f = PolyMap::rational(Q(), c);
        auto r = preperiodic_points(f);
        auto set = coord_set(r);
        for (const auto& p : r.points) {
            EXPECT_TRUE(set.count(f(p.point).coords()));
            EXPECT_EQ(orbit(f, p.point, 1000).status, OrbitStatus::preperiodic);
        }
        for (long x = -30; x <= 30; ++x)
            if (!set.count({Rational(x)}))
                EXPECT_EQ(orbit(f, q(Q(), x), 50, r.bf.height_cap).status, OrbitStatus::escaped);
        ++tried;
    }
    EXPECT_GE(tried, 5);
}

TEST(Preperiodic, JobsDoNotChangeOutput) {
    auto K = NumberField::make(AlgebraicNumber::from_root(IntPoly({1, 1, 1}), 0));
    auto f = PolyMap::rational(K, {0, 0, 0, 1});
    EXPECT_EQ(preperiodic_points(f, 1).tsv(), preperiodic_points(f, 4).tsv());
    auto g = PolyMap::rational(NumberField::rationals(), {-2, 0, 1});
    EXPECT_EQ(preperiodic_points(g, 1).tsv(), preperiodic_points(g, 4).tsv());
}

TEST(Preperiodic, Unsupported) {
    auto K4 = NumberField::make(AlgebraicNumber::largest_real_root(IntPoly({-2, 0, 0, 0, 1})));
    EXPECT_THROW(preperiodic_points(PolyMap::rational(K4, {0, 0, 1})), UnsupportedError);
    auto K = gauss();
    PolyMap g(K, {q(K, 0), NumberFieldElement::generator(K), q(K, 1)});
    EXPECT_THROW(preperiodic_points(g), UnsupportedError);
    EXPECT_EQ(orbit(g, q(K, 0), 5).status, OrbitStatus::preperiodic);
}

TEST(GrowthLaw, AboveTheCapHeightsGrow) {
    // H(a) > 1/b_f^2 forces H(f(a)) > H(a)^(3/2)
    std::mt19937_64 rng(99);
    int checked = 0;
    const std::vector<std::vector<Rational>> maps = {{0, 0, 1}, {-1, 0, 1}, {1, 0, 1}, {-2, 0, 1},
                                                     {0, 1, 1}, {0, 0, 0, 1}, {1, -1, 0, 1}, {0, 0, -1}};
    for (int trial = 0; trial < 200; ++trial) {
        const auto& c = maps[trial % maps.size()];
        auto bf = bf_constant(c);
        IntPoly g = testsupport::random_irreducible(rng, 1, 2, 60);
        auto K = NumberField::make(AlgebraicNumber::from_root(g, 0));
        auto a = NumberFieldElement::generator(K);
        if (compare_height(g, bf.height_cap) <= 0) continue;
        auto y = PolyMap::rational(K, c)(a);
        Rational tol(BigInt(1), BigInt(1) << 40);
        Enclosure ha = weil_height(g, tol), hy = weil_height(element_minpoly(y), tol);
        EXPECT_GT(pow(hy.lo(), 2), pow(ha.hi(), 3)) << format_poly(g);
        ++checked;
    }
    EXPECT_GT(checked, 100);
}
