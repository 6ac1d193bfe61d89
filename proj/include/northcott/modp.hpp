#pragma once

// Polynomial arithmetic over a small prime field F_p (p < 2^31) and the
// distinct-degree / equal-degree splitting used by the factoriser.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "northcott/bigint.hpp"
#include "northcott/poly.hpp"

namespace northcott::modp {

using u64 = std::uint64_t;

/// Coefficients in [0, p), constant term first, no trailing zeros.
using Poly = std::vector<u64>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline u64 mul_mod(u64 a, u64 b, u64 p) { return (a * b) % p; }

inline u64 pow_mod(u64 b, u64 e, u64 p) {
    u64 r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = mul_mod(r, b, p);
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    return r;
}
inline u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

inline Poly reduce(const IntPoly& f, u64 p) {
    Poly out;
    const BigInt bp(p);
    for (const auto& c : f.coeffs()) {
        BigInt r = c % bp;
        if (r < 0) r += bp;
        out.push_back(static_cast<u64>(r));
    }
    trim(out);
    return out;
}

inline Poly add(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
    trim(r);
    return r;
}
inline Poly sub(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
    trim(r);
    return r;
}
inline Poly mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}
inline Poly scale(const Poly& a, u64 s, u64 p) {
    Poly r = a;
    for (auto& x : r) x = mul_mod(x, s, p);
    trim(r);
    return r;
}

inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, u64 p) {
    Poly r = a;
    const int db = deg(b);
    if (deg(a) < db) return {{}, r};
    const u64 inv = inv_mod(b.back(), p);
    Poly q(deg(a) - db + 1, 0);
    for (int i = deg(a) - db; i >= 0; --i) {
        u64 c = mul_mod(r[i + db], inv, p);
        q[i] = c;
        if (!c) continue;
        for (int j = 0; j <= db; ++j) r[i + j] = (r[i + j] + p - mul_mod(c, b[j], p)) % p;
    }
    r.resize(db);
    trim(r);
    trim(q);
    return {q, r};
}
inline Poly rem(const Poly& a, const Poly& b, u64 p) { return divmod(a, b, p).second; }

inline Poly monic(const Poly& a, u64 p) {
    if (a.empty()) return a;
    return scale(a, inv_mod(a.back(), p), p);
}

inline Poly gcd(Poly a, Poly b, u64 p) {
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

/// Returns (s, t) with s*a + t*b = 1; a and b coprime.
inline std::pair<Poly, Poly> ext_gcd(const Poly& a, const Poly& b, u64 p) {
    Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1, p);
        Poly s2 = sub(s0, mul(q, s1, p), p);
        Poly t2 = sub(t0, mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (deg(r0) != 0) throw ConsistencyError("ext_gcd: inputs not coprime mod p");
    u64 inv = inv_mod(r0[0], p);
    return {scale(s0, inv, p), scale(t0, inv, p)};
}

inline Poly derivative(const Poly& a, u64 p) {
    Poly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mul_mod(a[i], i % p, p));
    trim(r);
    return r;
}

/// base^e mod m, with an arbitrary-size exponent.
inline Poly pow_mod(const Poly& base, const BigInt& e, const Poly& m, u64 p) {
    Poly result{1};
    result = rem(result, m, p);
    Poly b = rem(base, m, p);
    const std::size_t bits = e == 0 ? 0 : msb(e) + 1;
    for (std::size_t i = bits; i-- > 0;) {
        result = rem(mul(result, result, p), m, p);
        if (bit_test(e, static_cast<unsigned>(i))) result = rem(mul(result, b, p), m, p);
    }
    return result;
}

/// f mod p is squarefree and keeps its degree.
inline bool good_reduction(const IntPoly& f, u64 p) {
    if (f.lead() % p == 0) return false;
    Poly fp = reduce(f, p);
    return deg(gcd(fp, derivative(fp, p), p)) == 0;
}

/// Distinct-degree factorisation of a monic squarefree f: (product, degree).
inline std::vector<std::pair<Poly, int>> distinct_degree(Poly f, u64 p) {
    std::vector<std::pair<Poly, int>> out;
    const Poly x{0, 1};
    Poly h = rem(x, f, p);
    for (int d = 1; 2 * d <= deg(f); ++d) {
        h = pow_mod(h, BigInt(p), f, p);
        Poly g = gcd(f, sub(h, x, p), p);
        if (deg(g) > 0) {
            out.emplace_back(g, d);
            f = divmod(f, g, p).first;
            h = rem(h, f, p);
        }
    }
    if (deg(f) > 0) out.emplace_back(f, deg(f));
    return out;
}

/// Cantor-Zassenhaus equal-degree splitting (odd p) of a monic product of
/// irreducibles of degree d. The generator is caller-seeded.
inline std::vector<Poly> equal_degree(const Poly& f, int d, u64 p, std::mt19937_64& rng) {
    if (deg(f) == d) return {f};
    const BigInt e = (pow(BigInt(p), static_cast<unsigned>(d)) - 1) / 2;
    std::uniform_int_distribution<u64> coin(0, p - 1);
    while (true) {
        Poly a(deg(f), 0);
        for (auto& c : a) c = coin(rng);
        trim(a);
        if (deg(a) < 1) continue;
        Poly g = gcd(f, a, p);
        if (deg(g) == 0) g = gcd(f, sub(pow_mod(a, e, f, p), Poly{1}, p), p);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            auto left = equal_degree(g, d, p, rng);
            auto right = equal_degree(divmod(f, g, p).first, d, p, rng);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
}

/// Monic irreducible factors of a squarefree f over F_p (p odd), sorted.
inline std::vector<Poly> factor_squarefree(const Poly& f, u64 p, std::uint64_t seed = 0x9e3779b97f4a7c15ULL) {
    std::mt19937_64 rng(seed);
    std::vector<Poly> out;
    for (auto& [g, d] : distinct_degree(monic(f, p), p)) {
        auto parts = equal_degree(g, d, p, rng);
        out.insert(out.end(), parts.begin(), parts.end());
    }
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

}  // namespace northcott::modp
