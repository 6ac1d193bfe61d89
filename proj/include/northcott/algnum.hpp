#pragma once

// Algebraic numbers as (irreducible minimal polynomial, root index) and their
// absolute multiplicative Weil heights.

#include <string>
#include <string_view>

#include "northcott/errors.hpp"
#include "northcott/factor.hpp"
#include "northcott/interval.hpp"
#include "northcott/poly.hpp"
#include "northcott/roots.hpp"

namespace northcott {

/// Complex ball: center re + i im, radius rad.
struct Ball {
    Rational re = 0, im = 0, rad = 0;

    static Ball of(const RootDisk& d) { return {d.re, d.im, d.radius}; }
    static Ball exact(const Rational& x) { return {x, Rational(0), Rational(0)}; }

    /// Upper bound for the modulus of the center (|re| + |im|).
    Rational mag() const { return abs(re) + abs(im); }

    friend Ball operator+(const Ball& a, const Ball& b) { return {a.re + b.re, a.im + b.im, a.rad + b.rad}; }
    friend Ball operator-(const Ball& a, const Ball& b) { return {a.re - b.re, a.im - b.im, a.rad + b.rad}; }
    friend Ball operator*(const Ball& a, const Ball& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re,
                a.mag() * b.rad + b.mag() * a.rad + a.rad * b.rad};
    }
    bool overlaps(const RootDisk& d) const {
        Rational dx = re - d.re, dy = im - d.im, s = rad + d.radius;
        return dx * dx + dy * dy <= s * s;
    }
};

/// Keeps ball sizes in check by rounding the center to a dyadic grid.
inline Ball round_ball(const Ball& b, unsigned bits) {
    Rational re = floor_dyadic(b.re, bits), im = floor_dyadic(b.im, bits);
    Rational slack = abs(b.re - re) + abs(b.im - im);
    return {re, im, ceil_dyadic(b.rad + slack, bits)};
}

class AlgebraicNumber {
public:
    /// The root with the given index (in isolate_roots order) of an
    /// irreducible polynomial.
    static AlgebraicNumber from_root(const IntPoly& p, std::size_t index) {
        IntPoly q = primitive_positive(p);
        if (!is_irreducible(q)) throw DomainError("minimal polynomial must be irreducible: " + format_poly_human(q));
        auto roots = isolate_roots(q);
        if (index >= roots.size())
            throw DomainError("root index " + std::to_string(index) + " out of range for degree " +
                              std::to_string(q.degree()));
        return AlgebraicNumber(std::move(q), index, roots[index]);
    }

    static AlgebraicNumber rational(const Rational& r) {
        IntPoly p(std::vector<BigInt>{-num(r), den(r)});
        return AlgebraicNumber(p, 0, RootDisk{r, Rational(0), Rational(0), true});
    }

    /// The largest real root of an irreducible polynomial (e.g. the positive
    /// real radical of x^d - c).
    static AlgebraicNumber largest_real_root(const IntPoly& p) {
        IntPoly q = primitive_positive(p);
        if (!is_irreducible(q)) throw DomainError("minimal polynomial must be irreducible: " + format_poly_human(q));
        auto roots = isolate_roots(q);
        for (std::size_t k = roots.size(); k-- > 0;)
            if (roots[k].real) return AlgebraicNumber(q, k, roots[k]);
        throw NotFoundError("no real root: " + format_poly_human(q));
    }

    /// Parses "poly=<coeffs or human form>; root=<k>"; root defaults to 0.
    static AlgebraicNumber parse(std::string_view text) {
        std::string poly;
        std::size_t root = 0;
        bool have_poly = false;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t semi = text.find(';', pos);
            if (semi == std::string_view::npos) semi = text.size();
            std::string_view part = text.substr(pos, semi - pos);
            pos = semi + 1;
            while (!part.empty() && std::isspace(static_cast<unsigned char>(part.front()))) part.remove_prefix(1);
            while (!part.empty() && std::isspace(static_cast<unsigned char>(part.back()))) part.remove_suffix(1);
            if (part.empty()) continue;
            std::size_t eq = part.find('=');
            if (eq == std::string_view::npos) throw ParseError("expected key=value in algebraic number: " + std::string(part));
            std::string_view key = part.substr(0, eq), val = part.substr(eq + 1);
            if (key == "poly") {
                poly = std::string(val);
                have_poly = true;
            } else if (key == "root") {
                try {
                    root = std::stoul(std::string(val));
                } catch (const std::exception&) {
                    throw ParseError("bad root index: " + std::string(val));
                }
            } else {
                throw ParseError("unknown key in algebraic number: " + std::string(key));
            }
        }
        if (!have_poly) throw ParseError("algebraic number needs poly=");
        return from_root(parse_poly(poly), root);
    }

    const IntPoly& minpoly() const { return minpoly_; }
    int degree() const { return minpoly_.degree(); }
    std::size_t root_index() const { return index_; }
    const RootDisk& disk() const { return disk_; }
    bool is_real() const { return disk_.real; }

    /// The isolating disk refined to radius at most r.
    RootDisk refined(const Rational& r) const {
        if (disk_.radius <= r) return disk_;
        return refine_roots(minpoly_, r)[index_];
    }

    std::string str() const { return "poly=" + format_poly(minpoly_) + "; root=" + std::to_string(index_); }

    friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
        return a.minpoly_ == b.minpoly_ && a.index_ == b.index_;
    }

private:
    AlgebraicNumber(IntPoly p, std::size_t k, RootDisk d) : minpoly_(std::move(p)), index_(k), disk_(std::move(d)) {}

    IntPoly minpoly_;
    std::size_t index_;
    RootDisk disk_;
};

namespace detail {

/// Exactly two nonzero coefficients: lead x^d and a constant.
inline bool is_binomial(const IntPoly& p) {
    if (p.degree() < 1 || p.coeff(0) == 0) return false;
    for (int i = 1; i < p.degree(); ++i)
        if (p.coeff(i) != 0) return false;
    return true;
}

inline Enclosure root_of_interval(const Interval& m, unsigned d, const Rational& tol) {
    for (unsigned bits = 32;; bits *= 2) {
        Interval h{root_interval(m.lo, d, bits).lo, root_interval(m.hi, d, bits).hi};
        if (h.width() <= tol) return Enclosure(h);
        if (bits > (1u << 20)) throw ConsistencyError("root enclosure did not converge");
    }
}

}  // namespace detail

namespace detail {

inline unsigned euler_phi(unsigned m) {
    unsigned r = m;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        r -= r / p;
    }
    if (m > 1) r -= r / m;
    return r;
}

/// Irreducible g is a cyclotomic polynomial (Kronecker: exactly when M(g) = 1).
inline bool is_cyclotomic(const IntPoly& g) {
    if (!g.is_monic() || abs(g.coeff(0)) != 1) return false;
    const unsigned n = static_cast<unsigned>(g.degree());
    // phi(m) >= sqrt(m/2), so m <= 2 n^2
    for (unsigned m = 1; m <= 2 * n * n + 2; ++m) {
        if (euler_phi(m) != n) continue;
        if (divides(g, IntPoly::monomial(1, m) - IntPoly::constant(1))) return true;
    }
    return false;
}

/// Exact M(g) for irreducible g when it is an integer that can be certified.
inline std::optional<BigInt> exact_irreducible_mahler(const IntPoly& g) {
    if (g.degree() == 1 || is_binomial(g)) return std::max(abs(g.coeff(0)), abs(g.lead()));
    if (is_cyclotomic(g)) return BigInt(1);
    Interval m = mahler_interval(g, Rational(1, 4));
    BigInt k = num(m.hi) / den(m.hi);
    if (m.contains(Rational(k)) && compare_mahler(g, Rational(k)) == 0) return k;
    return std::nullopt;
}

}  // namespace detail

/// Mahler measure of a nonzero polynomial. Exact when every irreducible
/// factor has a certified integral measure (binomials, cyclotomics, ...).
inline Enclosure mahler_measure(const IntPoly& p, const Rational& tol) {
    if (tol <= 0) throw DomainError("tolerance must be positive");
    if (p.is_zero()) throw DomainError("Mahler measure of the zero polynomial");
    if (p.degree() == 0) return Enclosure::of_rational(Rational(abs(p.lead())));
    BigInt k = content_primitive(p).first;
    for (const auto& [g, e] : factor_over_Q(p)) {
        auto mg = detail::exact_irreducible_mahler(g);
        if (!mg) return Enclosure(mahler_interval(p, tol));
        k *= pow(*mg, e);
    }
    return Enclosure::of_rational(Rational(k));
}

/// Absolute multiplicative Weil height M(minpoly)^(1/deg); it depends only on
/// the minimal polynomial.
inline Enclosure weil_height(const IntPoly& minpoly, const Rational& tol) {
    if (tol <= 0) throw DomainError("tolerance must be positive");
    IntPoly q = primitive_positive(minpoly);
    if (q.degree() < 1) throw DomainError("height needs a polynomial of degree >= 1");
    const unsigned d = static_cast<unsigned>(q.degree());
    if (d == 1) return Enclosure::of_rational(Rational(std::max(abs(q.coeff(0)), abs(q.coeff(1)))));
    if (detail::is_binomial(q)) return Enclosure::of_radical({Rational(std::max(abs(q.coeff(0)), abs(q.lead()))), d}, tol);
    Enclosure m = mahler_measure(q, tol / 2);
    if (m.exact()) return Enclosure::of_radical({m.exact()->radicand, d}, tol);
    return detail::root_of_interval(m.box(), d, tol);
}

inline Enclosure weil_height(const AlgebraicNumber& a, const Rational& tol) { return weil_height(a.minpoly(), tol); }

/// Exact sign of H(root of minpoly) - x for rational x >= 0.
inline int compare_height(const IntPoly& minpoly, const Rational& x) {
    IntPoly q = primitive_positive(minpoly);
    const unsigned d = static_cast<unsigned>(q.degree());
    Rational t = pow(x, d);
    if (d == 1 || detail::is_binomial(q)) {
        Rational m = Rational(std::max(abs(q.coeff(0)), abs(q.lead())));
        return m < t ? -1 : (m > t ? 1 : 0);
    }
    return compare_mahler(q, t);
}

inline std::ostream& operator<<(std::ostream& os, const AlgebraicNumber& a) { return os << a.str(); }

}  // namespace northcott
