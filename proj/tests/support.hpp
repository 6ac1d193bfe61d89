#pragma once

// Shared oracles and seeded generators for the unit and acceptance suites.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "northcott/algnum.hpp"
#include "northcott/bounds.hpp"
#include "northcott/numfield.hpp"

namespace testsupport {

using namespace northcott;

inline IntPoly random_irreducible(std::mt19937_64& rng, int min_deg, int max_deg, int range) {
    std::uniform_int_distribution<int> deg(min_deg, max_deg), coef(-range, range);
    while (true) {
        std::vector<BigInt> c(deg(rng) + 1);
        for (auto& x : c) x = coef(rng);
        if (c.back() <= 0) continue;
        IntPoly f(c);
        if (f.degree() >= 2 && c.front() == 0) continue;
        if (is_irreducible(f)) return primitive_positive(f);
    }
}

inline std::vector<Rational> random_map(std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(2, max_deg), nu(-3, 3), de(1, 3);
    std::vector<Rational> c(deg(rng) + 1);
    for (auto& x : c) x = Rational(nu(rng), de(rng));
    while (c.back() == 0) c.back() = Rational(nu(rng), de(rng));
    return c;
}

struct BfOutcome {
    int pass = 0, counterexamples = 0, undecided = 0;
};

/// Checks H(f(a)) >= b_f H(a)^d on `samples` seeded random (f, a) pairs.
/// Exact ties are only expected for f = +-x^d, where H(f(a)) = H(a)^d.
inline BfOutcome bf_harness(std::uint64_t seed, int samples) {
    std::mt19937_64 rng(seed);
    BfOutcome out;
    for (int s = 0; s < samples; ++s) {
        std::vector<Rational> f = random_map(rng, 3);
        if (s % 10 == 0) {  // exercise the tie case too
            f.assign(f.size(), Rational(0));
            f.back() = (s % 20 == 0) ? 1 : -1;
        }
        const unsigned d = static_cast<unsigned>(f.size() - 1);
        const Rational b = bf_constant(f).b_f;
        IntPoly g = random_irreducible(rng, 1, 3, 5);
        auto K = NumberField::make(AlgebraicNumber::from_root(g, 0));
        NumberFieldElement a = NumberFieldElement::generator(K);
        NumberFieldElement y = NumberFieldElement::rational(K, 0);
        for (std::size_t i = f.size(); i-- > 0;) y = y * a + NumberFieldElement::rational(K, f[i]);
        IntPoly my = element_minpoly(y);
        bool decided = false;
        for (int e = 20; e <= 80 && !decided; e += 30) {
            Rational tol(BigInt(1), BigInt(1) << e);
            Enclosure ha = weil_height(g, tol), hy = weil_height(my, tol);
            Rational rhs_hi = b * pow(ha.hi(), d), rhs_lo = b * pow(ha.lo(), d);
            if (ha.exact() && hy.exact()) {
                // compare b^? exactly is not needed: both closed forms, decide by radicals
                Radical lhs = *hy.exact(), r = *ha.exact();
                // H(y)^(k) vs b^k H(a)^(dk) with k = lcm of indices
                unsigned k = std::lcm(lhs.index, r.index);
                Rational L = pow(lhs.radicand, k / lhs.index);
                Rational R = pow(b, k) * pow(r.radicand, d * (k / r.index));
                if (L >= R)
                    ++out.pass;
                else
                    ++out.counterexamples;
                decided = true;
            } else if (hy.lo() >= rhs_hi) {
                ++out.pass;
                decided = true;
            } else if (hy.hi() < rhs_lo) {
                ++out.counterexamples;
                decided = true;
            }
        }
        if (!decided) {
            bool monomial = std::count(f.begin(), f.end(), Rational(0)) == static_cast<long>(d) && abs(f.back()) == 1;
            if (monomial)
                ++out.pass;
            else
                ++out.undecided;
        }
    }
    return out;
}

}  // namespace testsupport
