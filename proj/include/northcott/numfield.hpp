#pragma once

// Exact arithmetic in Q(theta) = Q[x]/(m) with a chosen complex embedding,
// Trager norms, and subfield membership.

#include <memory>
#include <string>
#include <vector>

#include "northcott/algnum.hpp"
#include "northcott/errors.hpp"
#include "northcott/factor.hpp"
#include "northcott/poly.hpp"

namespace northcott {

class NumberField {
public:
    explicit NumberField(AlgebraicNumber gen) : gen_(std::move(gen)), modulus_(gen_.minpoly()) {}
    static std::shared_ptr<const NumberField> make(AlgebraicNumber gen) {
        return std::make_shared<const NumberField>(std::move(gen));
    }
    /// Q itself, generated by the root of x.
    static std::shared_ptr<const NumberField> rationals() { return make(AlgebraicNumber::rational(0)); }

    const AlgebraicNumber& generator() const { return gen_; }
    const IntPoly& poly() const { return gen_.minpoly(); }
    const RatPoly& modulus() const { return modulus_; }
    int degree() const { return gen_.degree(); }

    friend bool operator==(const NumberField& a, const NumberField& b) { return a.gen_ == b.gen_; }

private:
    AlgebraicNumber gen_;
    RatPoly modulus_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Extended Euclid over Q[x]: returns (g, s, t) with s a + t b = g, g monic.
inline std::tuple<RatPoly, RatPoly, RatPoly> ext_gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly r0 = a, r1 = b, s0({Rational(1)}), s1, t0, t1({Rational(1)});
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        RatPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational inv = 1 / r0.lead();
    return {inv * r0, inv * s0, inv * t0};
}

class NumberFieldElement {
public:
    NumberFieldElement(FieldPtr field, std::vector<Rational> coords) : field_(std::move(field)) {
        if (!field_) throw DomainError("element without a field");
        RatPoly c(std::move(coords));
        coords_ = divmod(c, field_->modulus()).second;
    }
    static NumberFieldElement rational(FieldPtr field, const Rational& r) {
        return NumberFieldElement(std::move(field), {r});
    }
    static NumberFieldElement generator(FieldPtr field) {
        if (field->degree() == 1) {
            const IntPoly& m = field->poly();
            return rational(field, Rational(-m.coeff(0), m.coeff(1)));
        }
        return NumberFieldElement(std::move(field), {Rational(0), Rational(1)});
    }

    const FieldPtr& field() const { return field_; }
    /// n coordinates over the power basis 1, theta, ..., theta^(n-1).
    std::vector<Rational> coords() const {
        std::vector<Rational> v(field_->degree(), Rational(0));
        for (std::size_t i = 0; i < coords_.coeffs().size(); ++i) v[i] = coords_.coeffs()[i];
        return v;
    }
    const RatPoly& poly() const { return coords_; }
    bool is_zero() const { return coords_.is_zero(); }
    bool is_rational() const { return coords_.degree() <= 0; }
    Rational rational_value() const {
        if (!is_rational()) throw DomainError("element is not rational");
        return coords_.coeff(0);
    }

    std::string str() const {
        std::string s;
        auto v = coords();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ' ';
            s += to_string(v[i]);
        }
        return s;
    }

    friend bool operator==(const NumberFieldElement& a, const NumberFieldElement& b) {
        return same_field(a, b) && a.coords_ == b.coords_;
    }
    friend bool operator<(const NumberFieldElement& a, const NumberFieldElement& b) {
        return a.coords() < b.coords();
    }

    friend NumberFieldElement operator+(const NumberFieldElement& a, const NumberFieldElement& b) {
        check(a, b);
        return NumberFieldElement(a.field_, a.coords_ + b.coords_, 0);
    }
    friend NumberFieldElement operator-(const NumberFieldElement& a, const NumberFieldElement& b) {
        check(a, b);
        return NumberFieldElement(a.field_, a.coords_ - b.coords_, 0);
    }
    friend NumberFieldElement operator*(const NumberFieldElement& a, const NumberFieldElement& b) {
        check(a, b);
        return NumberFieldElement(a.field_, divmod(a.coords_ * b.coords_, a.field_->modulus()).second, 0);
    }
    NumberFieldElement inverse() const {
        if (is_zero()) throw DomainError("division by zero in number field");
        auto [g, s, t] = ext_gcd(coords_, field_->modulus());
        if (g.degree() != 0) throw ConsistencyError("field modulus is not irreducible");
        return NumberFieldElement(field_, divmod(s, field_->modulus()).second, 0);
    }
    friend NumberFieldElement operator/(const NumberFieldElement& a, const NumberFieldElement& b) {
        check(a, b);
        return a * b.inverse();
    }
    NumberFieldElement pow(unsigned e) const {
        NumberFieldElement r = rational(field_, 1), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

private:
    NumberFieldElement(FieldPtr f, RatPoly reduced, int) : field_(std::move(f)), coords_(std::move(reduced)) {}
    static bool same_field(const NumberFieldElement& a, const NumberFieldElement& b) {
        return a.field_ == b.field_ || *a.field_ == *b.field_;
    }
    static void check(const NumberFieldElement& a, const NumberFieldElement& b) {
        if (!same_field(a, b)) throw DomainError("number field elements over different generators");
    }

    FieldPtr field_;
    RatPoly coords_;
};

enum class NfOp { add, sub, mul, div };

inline NumberFieldElement nf_arith(const NumberFieldElement& x, const NumberFieldElement& y, NfOp op) {
    switch (op) {
        case NfOp::add: return x + y;
        case NfOp::sub: return x - y;
        case NfOp::mul: return x * y;
        case NfOp::div: return x / y;
    }
    throw DomainError("unknown field operation");
}

namespace detail {

/// p(r(y)) for integer polynomials.
inline IntPoly compose(const IntPoly& p, const IntPoly& r) {
    IntPoly acc;
    for (int i = p.degree(); i >= 0; --i) acc = acc * r + IntPoly::constant(p.coeff(i));
    return acc;
}

/// Res_y(q(y), p(x - s y)) as a polynomial in x, by evaluation and interpolation.
inline IntPoly trager_norm(const IntPoly& p, const IntPoly& q, long s) {
    const int D = p.degree() * q.degree();
    std::vector<BigInt> xs, ys;
    for (int k = 0; k <= D; ++k) {
        IntPoly lin(std::vector<BigInt>{BigInt(k), BigInt(-s)});
        xs.emplace_back(k);
        ys.push_back(resultant(q, compose(p, lin)));
    }
    return interpolate_integer(xs, ys);
}

inline bool is_squarefree(const IntPoly& f) { return gcd(f, f.derivative()).degree() == 0; }

/// First shift in 0, 1, -1, 2, -2, ... with squarefree norm.
inline std::pair<long, IntPoly> squarefree_norm(const IntPoly& p, const IntPoly& q) {
    for (long k = 0; k < 200; ++k) {
        long s = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
        IntPoly n = trager_norm(p, q, s);
        if (!n.is_zero() && is_squarefree(n)) return {s, n};
    }
    throw ConsistencyError("no squarefree Trager norm found");
}

inline IntPoly charpoly(const NumberFieldElement& x) {
    const IntPoly& m = x.field()->poly();
    auto [L, c] = x.poly().clear_denominators();
    const int n = m.degree();
    std::vector<BigInt> xs, ys;
    for (int k = 0; k <= n; ++k) {
        // L*y - C(theta) at y = k
        IntPoly h = IntPoly::constant(L * k) - c;
        xs.emplace_back(k);
        ys.push_back(resultant(m, h));
    }
    return interpolate_integer(xs, ys);
}

}  // namespace detail

/// Primitive minimal polynomial over Q of a field element.
inline IntPoly element_minpoly(const NumberFieldElement& x) {
    if (x.is_rational()) {
        Rational r = x.rational_value();
        return IntPoly(std::vector<BigInt>{-num(r), den(r)});
    }
    IntPoly m = primitive_positive(squarefree_part(detail::charpoly(x)));
    if (!is_irreducible(m)) throw ConsistencyError("characteristic polynomial is not a minimal-polynomial power");
    return m;
}

/// True iff p has a root in Q[y]/(q) (q irreducible, p irreducible).
inline bool has_root_in_field(const IntPoly& p, const IntPoly& q) {
    if (p.degree() < 1) throw DomainError("polynomial of degree >= 1 expected");
    if (p.degree() == 1 || q.degree() == 1) return p.degree() == 1 || !rational_roots(p).empty();
    if (q.degree() % p.degree() != 0) return false;
    auto [s, n] = detail::squarefree_norm(p, q);
    for (const auto& f : factor_over_Q(n))
        if (f.poly.degree() == q.degree()) return true;
    return false;
}

/// Q[x]/(p) isomorphic to Q[x]/(q), for irreducible p, q.
inline bool same_field(const IntPoly& p, const IntPoly& q) {
    if (!is_irreducible(p) || !is_irreducible(q)) throw DomainError("same_field expects irreducible polynomials");
    if (p.degree() != q.degree()) return false;
    return has_root_in_field(p, q);
}

// ---------------------------------------------------------------------------
// Polynomials over a number field, enough for Trager's gcd step.

namespace detail {

using KPoly = std::vector<NumberFieldElement>;

inline void ktrim(KPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline KPoly kmul(const KPoly& a, const KPoly& b, const FieldPtr& K) {
    if (a.empty() || b.empty()) return {};
    KPoly r(a.size() + b.size() - 1, NumberFieldElement::rational(K, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    ktrim(r);
    return r;
}

inline KPoly krem(KPoly a, const KPoly& b) {
    const std::size_t db = b.size() - 1;
    NumberFieldElement inv = b.back().inverse();
    while (a.size() > db && !a.empty()) {
        NumberFieldElement c = a.back() * inv;
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t j = 0; j <= db; ++j) a[shift + j] = a[shift + j] - c * b[j];
        a.pop_back();
        ktrim(a);
    }
    return a;
}

inline KPoly kgcd(KPoly a, KPoly b) {
    ktrim(a);
    ktrim(b);
    while (!b.empty()) {
        KPoly r = krem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return a;
    NumberFieldElement inv = a.back().inverse();
    for (auto& c : a) c = c * inv;
    return a;
}

/// f(x + t) in K[x] for f with rational coefficients.
inline KPoly kshift(const IntPoly& f, const NumberFieldElement& t, const FieldPtr& K) {
    KPoly acc;
    const KPoly lin{t, NumberFieldElement::rational(K, 1)};
    for (int i = f.degree(); i >= 0; --i) {
        acc = kmul(acc, lin, K);
        if (acc.empty()) acc.push_back(NumberFieldElement::rational(K, 0));
        acc[0] = acc[0] + NumberFieldElement::rational(K, Rational(f.coeff(i)));
        ktrim(acc);
    }
    return acc;
}

}  // namespace detail

/// All roots of p lying in K, sorted by coordinates.
inline std::vector<NumberFieldElement> roots_in_field(const IntPoly& p, const FieldPtr& K) {
    std::vector<NumberFieldElement> out;
    for (const auto& [g, mult] : factor_over_Q(p)) {
        (void)mult;
        if (g.degree() == 1) {
            out.push_back(NumberFieldElement::rational(K, Rational(-g.coeff(0), g.coeff(1))));
            continue;
        }
        if (K->degree() % g.degree() != 0) continue;
        auto [s, n] = detail::squarefree_norm(g, K->poly());
        const NumberFieldElement theta = NumberFieldElement::generator(K);
        const NumberFieldElement stheta = NumberFieldElement::rational(K, s) * theta;
        // gtilde(x) = g(x - s theta)
        const detail::KPoly gt = detail::kshift(g, NumberFieldElement::rational(K, 0) - stheta, K);
        for (const auto& f : factor_over_Q(n)) {
            if (f.poly.degree() != K->degree()) continue;
            detail::KPoly fk = detail::kshift(f.poly, NumberFieldElement::rational(K, 0), K);
            detail::KPoly h = detail::kgcd(gt, fk);
            if (h.size() != 2) throw ConsistencyError("Trager gcd did not produce a linear factor");
            // root of gtilde is -h0; root of g is that minus s theta
            out.push_back(NumberFieldElement::rational(K, 0) - h[0] - stheta);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// A complex ball around the value of x under the field's embedding.
inline Ball approximate(const NumberFieldElement& x, const Rational& radius) {
    RootDisk d = x.field()->generator().refined(radius);
    Ball t = Ball::of(d), acc;
    const auto& c = x.poly().coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + Ball::exact(c[i]);
    return acc;
}

/// The algebraic number that x is under the field's embedding.
inline AlgebraicNumber to_algebraic(const NumberFieldElement& x) {
    IntPoly m = element_minpoly(x);
    if (m.degree() == 1) return AlgebraicNumber::rational(Rational(-m.coeff(0), m.coeff(1)));
    for (unsigned bits = 32;; bits *= 2) {
        Rational r(BigInt(1), BigInt(1) << bits);
        Ball b = approximate(x, r);
        auto roots = refine_roots(m, r);
        std::vector<std::size_t> hits;
        for (std::size_t k = 0; k < roots.size(); ++k)
            if (b.overlaps(roots[k])) hits.push_back(k);
        if (hits.size() == 1) return AlgebraicNumber::from_root(m, hits[0]);
        if (bits > (1u << 14)) throw ConsistencyError("could not identify the root of an element");
    }
}

/// Primitive element alpha + k beta of Q(alpha, beta) for the chosen
/// embeddings, as an algebraic number; k is the multiplier used.
inline std::pair<AlgebraicNumber, long> compositum_generator(const AlgebraicNumber& alpha,
                                                             const AlgebraicNumber& beta) {
    const IntPoly& p = alpha.minpoly();
    const IntPoly& q = beta.minpoly();
    for (long k = 1; k < 200; ++k) {
        // roots of Res_y(q(y), p(x - k y)) are alpha_i + k beta_j
        IntPoly n = detail::trager_norm(p, q, k);
        if (!detail::is_squarefree(n)) continue;
        for (unsigned bits = 32;; bits *= 2) {
            Rational r(BigInt(1), BigInt(1) << bits);
            Ball a = Ball::of(alpha.refined(r)), b = Ball::of(beta.refined(r));
            Ball v = a + Ball::exact(k) * b;
            std::vector<AlgebraicNumber> hits;
            for (const auto& f : factor_over_Q(n)) {
                auto roots = refine_roots(f.poly, r);
                for (std::size_t i = 0; i < roots.size(); ++i)
                    if (v.overlaps(roots[i])) hits.push_back(AlgebraicNumber::from_root(f.poly, i));
            }
            if (hits.size() == 1) return {hits[0], k};
            if (bits > (1u << 14)) throw ConsistencyError("could not identify the compositum generator");
        }
    }
    throw ConsistencyError("no primitive element found");
}

}  // namespace northcott
