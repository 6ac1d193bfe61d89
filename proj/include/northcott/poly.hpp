#pragma once

// Dense univariate polynomials over Z and Q, with the exact elimination
// routines (resultant, discriminant) and text syntax shared by every module.

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "northcott/bigint.hpp"
#include "northcott/errors.hpp"

namespace northcott {

/// Integer polynomial, constant term first. The zero polynomial has no
/// coefficients and degree -1; otherwise the leading coefficient is nonzero.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static IntPoly constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }
    static IntPoly monomial(const BigInt& c, unsigned k) {
        std::vector<BigInt> v(k + 1, BigInt(0));
        v[k] = c;
        return IntPoly(std::move(v));
    }
    /// c_1 x^d + c_0
    static IntPoly binomial(unsigned d, const BigInt& lead, const BigInt& constant) {
        std::vector<BigInt> v(d + 1, BigInt(0));
        v[d] = lead;
        v[0] += constant;
        return IntPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<BigInt>& coeffs() const { return c_; }
    BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
    const BigInt& lead() const {
        if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    BigInt content() const {
        BigInt g = 0;
        for (const auto& a : c_) g = gcd(g, a);
        return g;
    }
    bool is_primitive() const { return content() == 1; }

    IntPoly derivative() const {
        std::vector<BigInt> v;
        for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * static_cast<unsigned long>(i));
        return IntPoly(std::move(v));
    }

    template <class T>
    T eval(const T& x) const {
        T acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(*it);
        return acc;
    }

    /// p(x + t)
    IntPoly shift(const BigInt& t) const {
        std::vector<BigInt> v = c_;
        const std::size_t n = v.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j-- > i;) v[j] += t * v[j + 1];
        return IntPoly(std::move(v));
    }

    /// p(-x)
    IntPoly reflect() const {
        std::vector<BigInt> v = c_;
        for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
        return IntPoly(std::move(v));
    }

    IntPoly operator-() const {
        std::vector<BigInt> v = c_;
        for (auto& a : v) a = -a;
        return IntPoly(std::move(v));
    }
    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> v(std::max(a.c_.size(), b.c_.size()), BigInt(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
        return IntPoly(std::move(v));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> v(a.c_.size() + b.c_.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(v));
    }
    friend IntPoly operator*(const BigInt& s, const IntPoly& a) {
        std::vector<BigInt> v = a.c_;
        for (auto& x : v) x *= s;
        return IntPoly(std::move(v));
    }
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator<(const IntPoly& a, const IntPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (std::size_t i = a.c_.size(); i-- > 0;)
            if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
        return false;
    }

    /// Divides every coefficient by s; throws unless exact.
    IntPoly div_exact(const BigInt& s) const {
        std::vector<BigInt> v = c_;
        for (auto& a : v) {
            if (a % s != 0) throw DomainError("inexact scalar division");
            a /= s;
        }
        return IntPoly(std::move(v));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<BigInt> c_;
};

/// (content, primitive part) with positive content. Zero input is rejected.
inline std::pair<BigInt, IntPoly> content_primitive(const IntPoly& p) {
    if (p.is_zero()) throw DomainError("content of the zero polynomial");
    BigInt c = p.content();
    return {c, p.div_exact(c)};
}

/// Primitive part normalised to a positive leading coefficient.
inline IntPoly primitive_positive(const IntPoly& p) {
    IntPoly q = content_primitive(p).second;
    return q.lead() < 0 ? -q : q;
}

/// Exact quotient a / b in Z[x]; throws if b does not divide a.
inline IntPoly div_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    std::vector<BigInt> r = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) {
        if (a.is_zero()) return {};
        throw DomainError("inexact polynomial division");
    }
    std::vector<BigInt> q(a.degree() - db + 1, BigInt(0));
    for (int i = a.degree() - db; i >= 0; --i) {
        const BigInt& top = r[i + db];
        if (top % b.lead() != 0) throw DomainError("inexact polynomial division");
        q[i] = top / b.lead();
        for (int j = 0; j <= db; ++j) r[i + j] -= q[i] * b.coeffs()[j];
    }
    for (const auto& x : r)
        if (x != 0) throw DomainError("inexact polynomial division");
    return IntPoly(std::move(q));
}

/// True iff b divides a in Z[x].
inline bool divides(const IntPoly& b, const IntPoly& a) {
    try {
        (void)div_exact(a, b);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

/// Pseudo-remainder lead(b)^(deg a - deg b + 1) * a mod b.
inline IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> r = a.coeffs();
    const int db = b.degree();
    int dr = a.degree();
    while (dr >= db && dr >= 0) {
        BigInt top = r[dr];
        for (auto& x : r) x *= b.lead();
        for (int j = 0; j <= db; ++j) r[dr - db + j] -= top * b.coeffs()[j];
        r.pop_back();
        while (!r.empty() && r.back() == 0) r.pop_back();
        dr = static_cast<int>(r.size()) - 1;
    }
    return IntPoly(std::move(r));
}

/// gcd in Z[x], primitive with positive leading coefficient (content gcd
/// folded in).
inline IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero()) return {};
    if (a.is_zero()) return b.content() * primitive_positive(b);
    if (b.is_zero()) return a.content() * primitive_positive(a);
    BigInt cont = gcd(a.content(), b.content());
    IntPoly u = primitive_positive(a), v = primitive_positive(b);
    if (u.degree() < v.degree()) std::swap(u, v);
    while (!v.is_zero()) {
        IntPoly r = pseudo_rem(u, v);
        u = v;
        v = r.is_zero() ? r : primitive_positive(r);
    }
    return cont * primitive_positive(u);
}

namespace detail {

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline BigInt bareiss_det(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sgn = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    return sgn > 0 ? m[n - 1][n - 1] : BigInt(-m[n - 1][n - 1]);
}

}  // namespace detail

/// Res(p, q) as the determinant of the Sylvester matrix. Both inputs nonzero.
inline BigInt resultant(const IntPoly& p, const IntPoly& q) {
    if (p.is_zero() || q.is_zero()) throw DomainError("resultant with the zero polynomial");
    const int m = p.degree(), n = q.degree();
    if (m == 0) return pow(p.lead(), static_cast<unsigned>(n));
    if (n == 0) return pow(q.lead(), static_cast<unsigned>(m));
    const int size = m + n;
    std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, BigInt(0)));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) s[r][r + j] = p.coeffs()[m - j];
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) s[n + r][r + j] = q.coeffs()[n - j];
    return detail::bareiss_det(std::move(s));
}

/// Disc(p) = (-1)^(d(d-1)/2) Res(p, p') / lead(p), for deg p >= 2.
inline BigInt discriminant(const IntPoly& p) {
    const int d = p.degree();
    if (d < 2) throw DomainError("discriminant needs degree >= 2");
    BigInt r = resultant(p, p.derivative());
    if (r % p.lead() != 0) throw ConsistencyError("resultant not divisible by leading coefficient");
    r /= p.lead();
    return ((d * (d - 1) / 2) % 2 == 0) ? r : BigInt(-r);
}

/// Monic p whose non-leading coefficients are all divisible by `prime` and
/// whose constant term is not divisible by prime^2.
inline bool is_eisenstein(const IntPoly& p, const BigInt& prime) {
    if (!p.is_monic()) throw DomainError("Eisenstein test needs a monic polynomial");
    if (!is_prime(prime)) throw DomainError("Eisenstein test needs a positive prime, got " + to_string(prime));
    if (p.degree() < 1) return false;
    for (int i = 0; i < p.degree(); ++i)
        if (p.coeffs()[i] % prime != 0) return false;
    return p.coeffs()[0] % (prime * prime) != 0;
}

namespace detail {
inline std::vector<BigInt> positive_divisors(const BigInt& n) {
    std::vector<BigInt> divs{1};
    for (const auto& [p, e] : factor_integer(n)) {
        const std::size_t base = divs.size();
        BigInt pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}
}  // namespace detail

/// Distinct rational roots in increasing order, by divisor search on the
/// constant and leading coefficients.
inline std::vector<Rational> rational_roots(const IntPoly& p) {
    if (p.is_zero()) throw DomainError("rational roots of the zero polynomial");
    std::vector<Rational> roots;
    std::size_t low = 0;
    while (low < p.coeffs().size() && p.coeffs()[low] == 0) ++low;
    if (low > 0) roots.emplace_back(0);
    IntPoly q(std::vector<BigInt>(p.coeffs().begin() + low, p.coeffs().end()));
    if (q.degree() >= 1) {
        auto nums = detail::positive_divisors(q.coeffs()[0]);
        auto dens = detail::positive_divisors(q.lead());
        for (const auto& a : nums)
            for (const auto& b : dens) {
                if (gcd(a, b) != 1) continue;
                for (int s : {1, -1}) {
                    Rational r(BigInt(s * a), b);
                    if (q.eval(r) == 0) roots.push_back(r);
                }
            }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// ---------------------------------------------------------------------------
// Polynomials over Q, used for number-field arithmetic.

class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    explicit RatPoly(const IntPoly& p) {
        for (const auto& a : p.coeffs()) c_.emplace_back(a);
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const Rational& lead() const {
        if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
        return c_.back();
    }

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
        std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
        return RatPoly(std::move(v));
    }
    RatPoly operator-() const {
        std::vector<Rational> v = c_;
        for (auto& a : v) a = -a;
        return RatPoly(std::move(v));
    }
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return RatPoly(std::move(v));
    }
    friend RatPoly operator*(const Rational& s, const RatPoly& a) {
        std::vector<Rational> v = a.c_;
        for (auto& x : v) x *= s;
        return RatPoly(std::move(v));
    }
    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

    /// (quotient, remainder) of Euclidean division by a nonzero divisor.
    friend std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
        if (b.is_zero()) throw DomainError("division by the zero polynomial");
        std::vector<Rational> r = a.c_;
        const int db = b.degree();
        if (a.degree() < db) return {RatPoly(), a};
        std::vector<Rational> q(a.degree() - db + 1, Rational(0));
        for (int i = a.degree() - db; i >= 0; --i) {
            q[i] = r[i + db] / b.lead();
            for (int j = 0; j <= db; ++j) r[i + j] -= q[i] * b.c_[j];
        }
        r.resize(db);
        return {RatPoly(std::move(q)), RatPoly(std::move(r))};
    }

    template <class T>
    T eval(const T& x) const {
        T acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(*it);
        return acc;
    }

    /// (common denominator, integer numerator polynomial)
    std::pair<BigInt, IntPoly> clear_denominators() const {
        BigInt l = 1;
        for (const auto& a : c_) l = lcm(l, den(a));
        std::vector<BigInt> v;
        for (const auto& a : c_) v.push_back(num(a) * (l / den(a)));
        return {l, IntPoly(std::move(v))};
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Primitive integer polynomial proportional to p, positive leading coefficient.
inline IntPoly to_primitive(const RatPoly& p) {
    return primitive_positive(p.clear_denominators().second);
}

/// Lagrange interpolation through (xs[i], ys[i]) with distinct integer nodes;
/// the result must have integer coefficients.
inline IntPoly interpolate_integer(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys) {
    // Newton divided differences over Q.
    const std::size_t n = xs.size();
    std::vector<Rational> dd(ys.begin(), ys.end());
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / Rational(xs[i] - xs[i - k]);
    RatPoly acc({dd[n - 1]});
    for (std::size_t i = n - 1; i-- > 0;) acc = acc * RatPoly({Rational(-xs[i]), Rational(1)}) + RatPoly({dd[i]});
    std::vector<BigInt> out;
    for (const auto& a : acc.coeffs()) {
        if (den(a) != 1) throw ConsistencyError("interpolated polynomial is not integral");
        out.push_back(num(a));
    }
    return IntPoly(std::move(out));
}

// ---------------------------------------------------------------------------
// Text syntax.

/// Coefficient-list form, constant term first: "-5 0 0 1". Zero prints "0".
inline std::string format_poly(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        if (i) out += ' ';
        out += to_string(p.coeffs()[i]);
    }
    return out;
}

/// Human form, highest degree first: "x^3 - 5".
inline std::string format_poly_human(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        BigInt a = p.coeffs()[i];
        if (a == 0) continue;
        bool neg = a < 0;
        BigInt m = abs(a);
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (i == 0 || m != 1) out += to_string(m);
        if (i >= 1) out += "x";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const IntPoly& p) { return os << format_poly(p); }

namespace detail {

inline IntPoly parse_human_poly(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParseError("empty polynomial");
    std::vector<BigInt> coeffs;
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        int sgn = 1;
        if (s[i] == '+' || s[i] == '-') {
            sgn = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw ParseError("expected '+' or '-' in polynomial '" + std::string(text) + "'");
        }
        first = false;
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        BigInt c = (i > start) ? parse_bigint(s.substr(start, i - start)) : BigInt(1);
        bool had_digits = i > start;
        unsigned power = 0;
        if (i < s.size() && s[i] == '*') {
            if (!had_digits) throw ParseError("dangling '*' in polynomial '" + std::string(text) + "'");
            ++i;
            if (i >= s.size() || s[i] != 'x') throw ParseError("expected 'x' after '*'");
        }
        if (i < s.size() && s[i] == 'x') {
            ++i;
            power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t ps = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (i == ps) throw ParseError("missing exponent in polynomial '" + std::string(text) + "'");
                power = static_cast<unsigned>(std::stoul(s.substr(ps, i - ps)));
                if (power > 4096) throw ParseError("exponent too large");
            }
        } else if (!had_digits) {
            throw ParseError("unexpected character in polynomial '" + std::string(text) + "'");
        }
        if (coeffs.size() <= power) coeffs.resize(power + 1, BigInt(0));
        coeffs[power] += sgn * c;
    }
    return IntPoly(std::move(coeffs));
}

}  // namespace detail

/// Accepts either a whitespace- or comma-separated integer coefficient list,
/// constant term first ("-5 0 0 1"), or the human form ("x^3 - 5").
inline IntPoly parse_poly(std::string_view text) {
    if (text.find('x') != std::string_view::npos) return detail::parse_human_poly(text);
    std::vector<BigInt> coeffs;
    std::string tok;
    auto flush = [&] {
        if (!tok.empty()) coeffs.push_back(parse_bigint(tok));
        tok.clear();
    };
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',')
            flush();
        else
            tok += ch;
    }
    flush();
    if (coeffs.empty()) throw ParseError("empty polynomial");
    return IntPoly(std::move(coeffs));
}

}  // namespace northcott
