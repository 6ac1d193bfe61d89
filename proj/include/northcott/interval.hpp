#pragma once

// Certified real enclosures with exact rational endpoints, plus the
// closed-form radical values that let heights of radicals be exact.

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>

#include "northcott/bigint.hpp"
#include "northcott/errors.hpp"

namespace northcott {

/// Closed real interval [lo, hi] with rational endpoints.
struct Interval {
    Rational lo, hi;

    Interval() = default;
    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw ConsistencyError("interval with lo > hi");
    }
    static Interval point(const Rational& v) { return {v, v}; }

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }

    friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
    friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
    friend Interval operator*(const Interval& a, const Interval& b) {
        Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
        return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.lo <= 0 && b.hi >= 0) throw DomainError("interval division by an interval containing zero");
        return a * Interval(1 / b.hi, 1 / b.lo);
    }
};

inline Interval max_with(const Interval& a, const Rational& c) { return {std::max(a.lo, c), std::max(a.hi, c)}; }

/// floor(v * 2^bits) / 2^bits and the matching ceiling.
inline Rational floor_dyadic(const Rational& v, unsigned bits) {
    BigInt scaled = num(v) << bits;
    BigInt q = scaled / den(v);
    if (q * den(v) > scaled) q -= 1;
    return Rational(q, BigInt(1) << bits);
}
inline Rational ceil_dyadic(const Rational& v, unsigned bits) {
    BigInt scaled = num(v) << bits;
    BigInt q = scaled / den(v);
    if (q * den(v) < scaled) q += 1;
    return Rational(q, BigInt(1) << bits);
}
inline Interval round_outward(const Interval& a, unsigned bits) {
    return {floor_dyadic(a.lo, bits), ceil_dyadic(a.hi, bits)};
}

/// Enclosure of x^(1/k) for rational x >= 0, of width at most 2^-bits / den(x).
inline Interval root_interval(const Rational& x, unsigned k, unsigned bits) {
    if (x < 0) throw DomainError("real root of a negative number");
    if (k == 0) throw DomainError("zeroth root");
    const BigInt a = num(x), b = den(x);
    // x^(1/k) = (a b^(k-1))^(1/k) / b
    BigInt scaled = (a * pow(b, k - 1)) << (bits * k);
    BigInt r = iroot(scaled, k);
    BigInt denom = b << bits;
    if (pow(r, k) == scaled) return Interval::point(Rational(r, denom));
    return {Rational(r, denom), Rational(r + 1, denom)};
}

/// sqrt enclosure of a nonnegative interval.
inline Interval sqrt_interval(const Interval& a, unsigned bits) {
    return {root_interval(std::max(a.lo, Rational(0)), 2, bits).lo, root_interval(a.hi, 2, bits).hi};
}

/// Enclosure of e^n for integer n >= 0 via the alternating-free Taylor tail.
inline Interval exp_integer(unsigned n, unsigned bits) {
    // e in [S_N, S_N + 1/(N! N)].
    Rational s = 0, term = 1;
    unsigned N = 1;
    for (;; ++N) {
        s += term;
        term /= N;
        if (term < Rational(1, BigInt(1) << (bits + 2 * n + 8))) break;
    }
    Interval e(s, s + term * 2);
    Interval out = Interval::point(1);
    for (unsigned i = 0; i < n; ++i) out = out * e;
    return out;
}

/// The exact real number radicand^(1/index), radicand >= 0.
struct Radical {
    Rational radicand;
    unsigned index = 1;

    friend bool operator==(const Radical& a, const Radical& b) {
        return compare_radicals(a.radicand, a.index, b.radicand, b.index) == 0;
    }
};

inline int compare(const Radical& a, const Radical& b) {
    return compare_radicals(a.radicand, a.index, b.radicand, b.index);
}

/// Canonical form: smallest index such that the value is unchanged.
inline Radical simplify(Radical r) {
    for (unsigned k = 2; k <= r.index; ++k) {
        while (r.index % k == 0) {
            BigInt a = iroot(num(r.radicand), k), b = iroot(den(r.radicand), k);
            if (pow(a, k) != num(r.radicand) || pow(b, k) != den(r.radicand)) break;
            r.radicand = Rational(a, b);
            r.index /= k;
        }
    }
    return r;
}

inline std::string format_radical(const Radical& r) {
    if (r.index == 1) return to_string(r.radicand);
    return to_string(r.radicand) + "^(1/" + std::to_string(r.index) + ")";
}

namespace detail {

/// Sign-aware 10^e for e of either sign.
inline Rational pow10(long e) {
    BigInt t = pow(BigInt(10), static_cast<unsigned>(e < 0 ? -e : e));
    return e < 0 ? Rational(BigInt(1), t) : Rational(t);
}

}  // namespace detail

/// Decimal rendering of v with `digits` significant digits, rounded toward
/// -infinity (round_up = false) or +infinity (round_up = true).
inline std::string format_decimal(const Rational& v, bool round_up, int digits = 12) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    Rational a = abs(v);
    // exponent E with 10^E <= a < 10^(E+1)
    long E = static_cast<long>(msb(num(a))) - static_cast<long>(msb(den(a)));
    E = static_cast<long>(E * 0.30102999566398120);
    while (detail::pow10(E) > a) --E;
    while (detail::pow10(E + 1) <= a) ++E;
    // magnitude rounding: toward +inf for positive round_up, toward -inf for negative
    const bool away = (round_up != neg);
    Rational scaled = a * detail::pow10(digits - 1 - E);
    BigInt m = num(scaled) / den(scaled);
    if (away && Rational(m) != scaled) m += 1;
    if (m == pow(BigInt(10), static_cast<unsigned>(digits))) {
        m /= 10;
        ++E;
    }
    std::string ds = m.str();
    std::string out;
    if (E >= -5 && E < 15) {
        if (E >= 0) {
            if (static_cast<long>(ds.size()) <= E + 1) {
                out = ds + std::string(E + 1 - ds.size(), '0');
            } else {
                out = ds.substr(0, E + 1) + "." + ds.substr(E + 1);
            }
        } else {
            out = "0." + std::string(-E - 1, '0') + ds;
        }
    } else {
        out = ds.substr(0, 1) + "." + ds.substr(1) + "e" + (E < 0 ? "-" : "+") + std::to_string(E < 0 ? -E : E);
    }
    return neg ? "-" + out : out;
}

inline std::string format_interval(const Interval& i, int digits = 12) {
    return "[" + format_decimal(i.lo, false, digits) + ", " + format_decimal(i.hi, true, digits) + "]";
}

/// Certified enclosure of a real number. When `exact` is set the value is
/// known in closed form and the box is only a decimal rendering aid.
class Enclosure {
public:
    Enclosure() = default;
    explicit Enclosure(Interval box) : box_(std::move(box)) {}

    static Enclosure of_rational(const Rational& v) {
        Enclosure e(Interval::point(v));
        e.exact_ = Radical{v, 1};
        return e;
    }
    /// radicand^(1/index) with a box no wider than tol.
    static Enclosure of_radical(Radical r, const Rational& tol) {
        if (tol <= 0) throw DomainError("tolerance must be positive");
        r = simplify(r);
        unsigned bits = 16;
        Interval box = root_interval(r.radicand, r.index, bits);
        while (box.width() > tol) {
            bits *= 2;
            box = root_interval(r.radicand, r.index, bits);
        }
        Enclosure e(box);
        e.exact_ = r;
        return e;
    }

    const Interval& box() const { return box_; }
    const Rational& lo() const { return box_.lo; }
    const Rational& hi() const { return box_.hi; }
    Rational midpoint() const { return box_.midpoint(); }
    bool is_exact() const { return exact_.has_value(); }
    const std::optional<Radical>& exact() const { return exact_; }
    /// Zero for closed-form values, otherwise hi - lo.
    Rational width() const { return exact_ ? Rational(0) : box_.width(); }

    std::string str() const {
        std::string s = format_interval(box_);
        if (exact_) s += " = " + format_radical(*exact_);
        return s;
    }

private:
    Interval box_;
    std::optional<Radical> exact_;
};

inline std::ostream& operator<<(std::ostream& os, const Enclosure& e) { return os << e.str(); }

/// Certified ordering: -1/0/+1, or nullopt when the boxes overlap and no
/// closed form decides.
inline std::optional<int> compare(const Enclosure& a, const Enclosure& b) {
    if (a.exact() && b.exact()) return compare(*a.exact(), *b.exact());
    if (a.hi() < b.lo()) return -1;
    if (a.lo() > b.hi()) return 1;
    return std::nullopt;
}

}  // namespace northcott
