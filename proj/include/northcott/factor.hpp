#pragma once

// Factorisation over Q: squarefree decomposition, then per squarefree part
// a modular factorisation, Hensel lifting and subset recombination.

#include <algorithm>
#include <utility>
#include <vector>

#include "northcott/bigint.hpp"
#include "northcott/modp.hpp"
#include "northcott/poly.hpp"

namespace northcott {

struct Factor {
    IntPoly poly;  ///< primitive, positive leading coefficient
    unsigned multiplicity;
    friend bool operator==(const Factor&, const Factor&) = default;
};

/// Yun's algorithm on a primitive, positively led polynomial of degree >= 1.
inline std::vector<Factor> squarefree_decomposition(const IntPoly& f) {
    std::vector<Factor> out;
    IntPoly a = primitive_positive(f);
    if (a.degree() < 1) return out;
    IntPoly b = a.derivative();
    IntPoly c = primitive_positive(gcd(a, b));
    IntPoly w = div_exact(a, c);
    IntPoly y = div_exact(b, c);
    IntPoly z = y - w.derivative();
    unsigned i = 1;
    while (w.degree() > 0) {
        IntPoly g = z.is_zero() ? w : primitive_positive(gcd(w, z));
        if (g.degree() > 0) out.push_back({g, i});
        w = div_exact(w, g);
        y = div_exact(z, g);
        z = y - w.derivative();
        ++i;
    }
    return out;
}

namespace detail {

inline IntPoly mod_coeffs(const IntPoly& f, const BigInt& m, bool keep_lead = false) {
    std::vector<BigInt> v = f.coeffs();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (keep_lead && i + 1 == v.size()) continue;
        v[i] %= m;
        if (v[i] < 0) v[i] += m;
    }
    return IntPoly(std::move(v));
}

inline IntPoly symmetric_coeffs(const IntPoly& f, const BigInt& m) {
    std::vector<BigInt> v = f.coeffs();
    const BigInt half = m / 2;
    for (auto& c : v) {
        c %= m;
        if (c < 0) c += m;
        if (c > half) c -= m;
    }
    return IntPoly(std::move(v));
}

inline IntPoly lift_poly(const modp::Poly& a) {
    std::vector<BigInt> v;
    for (auto c : a) v.emplace_back(c);
    return IntPoly(std::move(v));
}

/// One-prime-at-a-time Hensel lifting of f = g*h (mod p) to mod p^steps,
/// with g monic and lead(h) = lead(f).
inline std::pair<IntPoly, IntPoly> hensel_two(const IntPoly& f, const modp::Poly& g0, const modp::Poly& h0,
                                              modp::u64 p, unsigned steps) {
    auto [s, t] = modp::ext_gcd(g0, h0, p);
    IntPoly g = lift_poly(g0);
    std::vector<BigInt> hv = lift_poly(h0).coeffs();
    hv.back() = f.lead();
    IntPoly h(std::move(hv));
    BigInt pk = p;
    const BigInt bp(p);
    for (unsigned k = 1; k < steps; ++k) {
        IntPoly err = f - g * h;
        for (const auto& c : err.coeffs())
            if (c % pk != 0) throw ConsistencyError("Hensel lifting invariant broken");
        modp::Poly e = modp::reduce(err.div_exact(pk), p);
        auto [q, r] = modp::divmod(modp::mul(e, t, p), g0, p);
        modp::Poly dh = modp::add(modp::mul(e, s, p), modp::mul(q, h0, p), p);
        BigInt next = pk * bp;
        g = mod_coeffs(g + pk * lift_poly(r), next, true);
        h = mod_coeffs(h + pk * lift_poly(dh), next, true);
        pk = next;
    }
    return {g, h};
}

/// Lifts the monic modular factors of f to monic factors mod p^steps.
inline std::vector<IntPoly> hensel_multi(const IntPoly& f, const std::vector<modp::Poly>& parts, modp::u64 p,
                                         unsigned steps) {
    if (parts.size() == 1) {
        BigInt modulus = pow(BigInt(p), steps);
        BigInt inv;
        mpz_invert(inv.backend().data(), f.lead().backend().data(), modulus.backend().data());
        return {mod_coeffs(inv * f, modulus)};
    }
    const std::size_t mid = parts.size() / 2;
    std::vector<modp::Poly> left(parts.begin(), parts.begin() + mid), right(parts.begin() + mid, parts.end());
    modp::Poly g0{1}, h0{1};
    for (const auto& q : left) g0 = modp::mul(g0, q, p);
    for (const auto& q : right) h0 = modp::mul(h0, q, p);
    h0 = modp::scale(h0, modp::reduce(IntPoly::constant(f.lead()), p)[0], p);
    auto [g, h] = hensel_two(f, g0, h0, p, steps);
    auto a = hensel_multi(g, left, p, steps);
    auto b = hensel_multi(h, right, p, steps);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline BigInt coefficient_bound(const IntPoly& f) {
    BigInt norm2 = 0;
    for (const auto& c : f.coeffs()) norm2 += c * c;
    BigInt b = (isqrt(norm2) + 1) << f.degree();
    return 2 * abs(f.lead()) * b + 1;
}

/// Irreducible factors of a primitive, squarefree f with positive lead.
inline std::vector<IntPoly> zassenhaus(const IntPoly& f) {
    if (f.degree() <= 1) return {f};
    // Pick, among the first few good primes, one with the fewest modular factors.
    std::vector<modp::Poly> best;
    modp::u64 best_p = 0;
    int good = 0;
    for (auto p64 : first_primes(200)) {
        modp::u64 p = p64;
        if (p == 2 || !modp::good_reduction(f, p)) continue;
        auto parts = modp::factor_squarefree(modp::reduce(f, p), p);
        if (best_p == 0 || parts.size() < best.size()) {
            best = parts;
            best_p = p;
        }
        if (best.size() == 1 || ++good == 6) break;
    }
    if (best_p == 0) throw ConsistencyError("no good reduction prime found");
    if (best.size() == 1) return {f};

    const BigInt bound = coefficient_bound(f);
    unsigned steps = 1;
    BigInt modulus = best_p;
    while (modulus <= bound) {
        modulus *= best_p;
        ++steps;
    }
    std::vector<IntPoly> lifted = hensel_multi(f, best, best_p, steps);

    std::vector<IntPoly> found;
    IntPoly rest = f;
    std::size_t s = 1;
    while (2 * s <= lifted.size()) {
        bool progressed = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            IntPoly g = IntPoly::constant(rest.lead()), h = IntPoly::constant(rest.lead());
            for (std::size_t i = 0, k = 0; i < lifted.size(); ++i) {
                if (k < s && idx[k] == i) {
                    g = symmetric_coeffs(g * lifted[i], modulus);
                    ++k;
                } else {
                    h = symmetric_coeffs(h * lifted[i], modulus);
                }
            }
            if (g.degree() > 0 && h.degree() > 0) {
                IntPoly pg = primitive_positive(g), ph = primitive_positive(h);
                if (pg * ph == rest) {
                    found.push_back(pg);
                    rest = ph;
                    std::vector<IntPoly> keep;
                    for (std::size_t i = 0, k = 0; i < lifted.size(); ++i) {
                        if (k < s && idx[k] == i)
                            ++k;
                        else
                            keep.push_back(lifted[i]);
                    }
                    lifted = std::move(keep);
                    progressed = true;
                    break;
                }
            }
            // next combination
            std::size_t pos = s;
            while (pos > 0 && idx[pos - 1] == lifted.size() - s + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t j = pos; j < s; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!progressed) ++s;
    }
    found.push_back(rest);
    return found;
}

}  // namespace detail

/// Complete factorisation over Q into primitive irreducibles with positive
/// leading coefficients, sorted by (degree, coefficients). Constants yield an
/// empty list.
inline std::vector<Factor> factor_over_Q(const IntPoly& p) {
    if (p.is_zero()) throw DomainError("cannot factor the zero polynomial");
    std::vector<Factor> out;
    for (const auto& [part, mult] : squarefree_decomposition(p))
        for (auto& g : detail::zassenhaus(part)) out.push_back({primitive_positive(g), mult});
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
        if (a.poly == b.poly) return a.multiplicity < b.multiplicity;
        return a.poly < b.poly;
    });
    return out;
}

/// True iff p is irreducible over Q (degree >= 1, single factor of multiplicity one).
inline bool is_irreducible(const IntPoly& p) {
    if (p.degree() < 1) return false;
    if (p.degree() == 1) return true;
    auto f = factor_over_Q(p);
    return f.size() == 1 && f[0].multiplicity == 1;
}

/// Squarefree part: product of the distinct irreducible factors.
inline IntPoly squarefree_part(const IntPoly& p) {
    IntPoly out = IntPoly::constant(1);
    for (const auto& [g, m] : squarefree_decomposition(p)) out = out * g;
    return out;
}

}  // namespace northcott
