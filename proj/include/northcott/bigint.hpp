#pragma once

// Exact scalar types and integer number theory used across the library.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "northcott/errors.hpp"

namespace northcott {

namespace mp = boost::multiprecision;

using BigInt = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

inline BigInt num(const Rational& r) { return BigInt(mp::numerator(r)); }
inline BigInt den(const Rational& r) { return BigInt(mp::denominator(r)); }

inline BigInt abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }
inline Rational abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

inline BigInt gcd(const BigInt& a, const BigInt& b) { return BigInt(mp::gcd(a, b)); }
inline BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    return abs(BigInt(a / gcd(a, b) * b));
}

inline BigInt pow(const BigInt& b, unsigned e) { return BigInt(mp::pow(b, e)); }
inline Rational pow(const Rational& b, unsigned e) {
    return Rational(pow(num(b), e), pow(den(b), e));
}

inline int sign(const BigInt& a) { return a.sign(); }
inline int sign(const Rational& a) { return a.sign(); }

inline std::string to_string(const BigInt& a) { return a.str(); }
inline std::string to_string(const Rational& a) {
    if (den(a) == 1) return num(a).str();
    return num(a).str() + "/" + den(a).str();
}

/// Parses an optionally signed decimal integer. No whitespace allowed.
namespace detail {
inline std::string trim_ws(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}
}  // namespace detail

inline BigInt parse_bigint(std::string_view s) {
    if (s.empty()) throw ParseError("empty integer");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw ParseError("malformed integer '" + std::string(s) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') throw ParseError("malformed integer '" + std::string(s) + "'");
    BigInt v(std::string(s.substr(i)));
    return s[0] == '-' ? BigInt(-v) : v;
}

/// Parses "a", "a/b" or a finite decimal such as "1e-12" or "0.25".
inline Rational parse_rational(std::string_view s) {
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        BigInt d = parse_bigint(s.substr(slash + 1));
        if (d == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
        return Rational(parse_bigint(s.substr(0, slash)), d);
    }
    auto epos = s.find_first_of("eE");
    std::string_view mant = s.substr(0, epos);
    long exp10 = 0;
    if (epos != std::string_view::npos) exp10 = static_cast<long>(parse_bigint(s.substr(epos + 1)));
    auto dot = mant.find('.');
    std::string digits(mant);
    if (dot != std::string_view::npos) {
        digits.erase(dot, 1);
        exp10 -= static_cast<long>(mant.size() - dot - 1);
    }
    Rational r(parse_bigint(digits));
    BigInt ten = pow(BigInt(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
    return exp10 < 0 ? Rational(r / ten) : Rational(r * ten);
}

/// floor(sqrt(n)) for n >= 0.
inline BigInt isqrt(const BigInt& n) {
    if (n < 0) throw DomainError("isqrt of negative number");
    return BigInt(mp::sqrt(n));
}

inline bool is_square(const BigInt& n) {
    if (n < 0) return false;
    BigInt r = isqrt(n);
    return r * r == n;
}

/// floor(n^(1/k)) for n >= 0, k >= 1.
inline BigInt iroot(const BigInt& n, unsigned k) {
    if (n < 0) throw DomainError("iroot of negative number");
    if (k == 1 || n < 2) return n;
    BigInt r;
    mpz_root(r.backend().data(), n.backend().data(), k);
    return r;
}

inline bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    static const int small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (int p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    return mp::miller_rabin_test(n, 25);
}

/// Largest e with p^e | n (n != 0).
inline unsigned valuation(BigInt n, const BigInt& p) {
    if (n == 0) throw DomainError("valuation of zero");
    unsigned e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

/// Prime factorization of |n| by trial division; n != 0. Intended for the
/// small integers that appear as coefficients and discriminants here.
inline std::map<BigInt, unsigned> factor_integer(BigInt n) {
    if (n == 0) throw DomainError("cannot factor zero");
    n = abs(n);
    std::map<BigInt, unsigned> out;
    for (BigInt p : {BigInt(2), BigInt(3)}) {
        while (n % p == 0) {
            n /= p;
            ++out[p];
        }
    }
    for (BigInt p = 5; p * p <= n; p += 2) {
        if (is_prime(n)) break;
        if (p > 100000000) throw UnsupportedError("integer too large to factor by trial division");
        while (n % p == 0) {
            n /= p;
            ++out[p];
        }
    }
    if (n > 1) ++out[n];
    return out;
}

/// The first `count` primes, by a growing sieve of Eratosthenes.
inline std::vector<std::uint64_t> first_primes(std::size_t count) {
    std::size_t limit = 64;
    while (true) {
        std::vector<bool> composite(limit + 1, false);
        std::vector<std::uint64_t> primes;
        for (std::size_t i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            primes.push_back(i);
            if (primes.size() == count) return primes;
            for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
        }
        limit *= 2;
    }
}

/// Exact sign-aware comparison of a^(1/m) and b^(1/n) for a, b >= 0.
inline int compare_radicals(const Rational& a, unsigned m, const Rational& b, unsigned n) {
    Rational lhs = pow(a, n), rhs = pow(b, m);
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace northcott
