#pragma once

// Closed-form lower bounds: Silverman's discriminant inequality, the
// simplified delta bound, Eisenstein norm divisors, criterion quantities and
// the dynamical constant b_f.

#include <set>
#include <vector>

#include "northcott/bigint.hpp"
#include "northcott/errors.hpp"
#include "northcott/interval.hpp"

namespace northcott {

inline Rational default_tol() { return Rational(BigInt(1), BigInt("1000000000000")); }

struct StepBoundInput {
    unsigned base_degree = 1;  ///< [K:Q]
    unsigned m = 2;            ///< relative degree
    BigInt N = 1;              ///< norm of the relative discriminant

    void validate() const {
        if (base_degree < 1) throw DomainError("base degree must be positive");
        if (m < 2) throw DomainError("relative degree must be at least 2");
        if (N < 1) throw DomainError("norm of the relative discriminant must be >= 1");
    }
};

/// [m^(-delta/(2(m-1))) N^(1/(2m(m-1)))]^(1/[K:Q]); delta defaults to [K:Q].
inline Enclosure silverman_lower_bound(const StepBoundInput& in, std::optional<unsigned> archimedean_places = {},
                                       const Rational& tol = default_tol()) {
    in.validate();
    const unsigned delta = archimedean_places.value_or(in.base_degree);
    if (delta < 1 || delta > in.base_degree) throw DomainError("archimedean places must lie in [1, base degree]");
    const unsigned k = 2 * in.m * (in.m - 1) * in.base_degree;
    Rational radicand = Rational(in.N) / Rational(pow(BigInt(in.m), delta * in.m));
    return Enclosure::of_radical({radicand, k}, tol);
}

/// (1/2) N^(1/(2[K:Q]m(m-1))).
inline Enclosure delta_lower_bound(const StepBoundInput& in, const Rational& tol = default_tol()) {
    in.validate();
    const unsigned k = 2 * in.m * (in.m - 1) * in.base_degree;
    return Enclosure::of_radical({Rational(in.N) / Rational(pow(BigInt(2), k)), k}, tol);
}

/// p^([K:Q](m-1)), a divisor of the relative discriminant norm at a totally
/// ramified step over a base where p is unramified.
inline BigInt eisenstein_step_norm_bound(const BigInt& p, unsigned base_degree, unsigned m) {
    if (!is_prime(p)) throw DomainError("eisenstein_step_norm_bound needs a prime, got " + to_string(p));
    if (m < 2) throw DomainError("relative degree must be at least 2");
    if (base_degree < 1) throw DomainError("base degree must be positive");
    return pow(p, base_degree * (m - 1));
}

/// p^(1/(2d)), the uniform lower bound at an Eisenstein step of degree d.
inline Enclosure criterion_quantity_lower(const BigInt& p, unsigned d, unsigned k0_degree = 1,
                                          const Rational& tol = default_tol()) {
    if (d < 2) throw DomainError("criterion quantity needs d >= 2");
    if (k0_degree < 1) throw DomainError("base field degree must be positive");
    if (p < 1) throw DomainError("criterion quantity needs a positive integer");
    return Enclosure::of_radical({Rational(p), 2 * d}, tol);
}

/// The sharper step value p^(k0(m-1)/m^2) for an intermediate degree m.
inline Radical eisenstein_exact_quantity(const BigInt& p, unsigned k0_degree, unsigned m) {
    return {Rational(pow(p, k0_degree * (m - 1))), m * m};
}

/// p^(1/e) for the degree-3 (e = 9) and Galois-closure (e = 18) steps.
inline Enclosure prime_root(const BigInt& p, unsigned e, const Rational& tol = default_tol()) {
    return Enclosure::of_radical({Rational(p), e}, tol);
}

struct BfResult {
    Rational b_f;         ///< exact rational in (0, 1]
    Rational height_cap;  ///< 1 / b_f^2
    Rational archimedean;
    std::vector<std::pair<BigInt, Rational>> nonarchimedean;  ///< primes with c_p < 1
};

namespace detail {

/// max over rho >= 1 of min(|a_d| - S/rho, rho^-d), by bisection on the crossing.
inline Rational archimedean_constant(const Rational& lead, const Rational& S, unsigned d) {
    const Rational one = 1;
    if (S == 0) return std::min(one, lead);
    auto value = [&](const Rational& rho) { return std::min(lead - S / rho, one / pow(rho, d)); };
    Rational lo = 1, hi = 1;
    // lead - S/rho is increasing and rho^-d decreasing in rho
    while (lead - S / hi < one / pow(hi, d)) hi *= 2;
    if (hi == 1) return value(Rational(1));
    for (int it = 0; it < 48; ++it) {
        Rational mid = floor_dyadic((lo + hi) / 2, 60);
        if (mid <= lo || mid >= hi) break;
        if (lead - S / mid < one / pow(mid, d))
            lo = mid;
        else
            hi = mid;
    }
    Rational best = std::max(value(lo), value(hi));
    return std::max(best, Rational(0));
}

inline Rational padic_abs(const Rational& x, const BigInt& p) {
    if (x == 0) return 0;
    unsigned vn = valuation(abs(num(x)), p), vd = valuation(den(x), p);
    if (vn >= vd) return Rational(BigInt(1), pow(p, vn - vd));
    return Rational(pow(p, vd - vn));
}

}  // namespace detail

/// A constant b_f in (0, 1] with H(f(a)) >= b_f H(a)^d for every algebraic a,
/// built as the product of local constants: at each place the leading term
/// dominates once |a| is past an explicit radius.
inline BfResult bf_constant(const std::vector<Rational>& f) {
    std::vector<Rational> c = f;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.size() < 3) throw DomainError("b_f needs a polynomial of degree >= 2");
    const unsigned d = static_cast<unsigned>(c.size() - 1);
    const Rational lead = abs(c.back());
    Rational S = 0;
    for (unsigned i = 0; i < d; ++i) S += abs(c[i]);

    BfResult out;
    out.archimedean = detail::archimedean_constant(lead, S, d);
    if (out.archimedean <= 0) throw ConsistencyError("archimedean constant is not positive");
    Rational b = out.archimedean;

    std::set<BigInt> primes;
    for (const auto& a : c) {
        if (a == 0) continue;
        for (const auto& [p, e] : factor_integer(den(a))) primes.insert(p);
    }
    for (const auto& [p, e] : factor_integer(abs(num(c.back())))) primes.insert(p);
    for (const auto& p : primes) {
        Rational rho = 1;
        for (unsigned i = 0; i < d; ++i) rho = std::max(rho, detail::padic_abs(c[i] / c.back(), p));
        Rational cp = std::min({Rational(1), detail::padic_abs(c.back(), p), 1 / pow(rho, d)});
        if (cp < 1) out.nonarchimedean.emplace_back(p, cp);
        b *= cp;
    }
    out.b_f = std::min(Rational(1), b);
    out.height_cap = 1 / (out.b_f * out.b_f);
    return out;
}

}  // namespace northcott
