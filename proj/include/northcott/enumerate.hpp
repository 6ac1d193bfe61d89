#pragma once

// Bounded-height enumeration over Q (Northcott's theorem made executable) and
// the brute-force delta oracle built on it.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "northcott/algnum.hpp"
#include "northcott/errors.hpp"
#include "northcott/factor.hpp"
#include "northcott/numfield.hpp"
#include "northcott/parallel.hpp"

namespace northcott {

struct EnumQuery {
    unsigned max_degree = 1;
    Rational height_cap = 1;
    std::optional<IntPoly> field_filter;       ///< generates a field isomorphic to Q[x]/(filter)
    std::optional<IntPoly> membership_filter;  ///< lies in Q[x]/(gen)
    bool all_conjugates = false;               ///< one entry per root instead of per minpoly
    unsigned jobs = 1;
};

struct Found {
    AlgebraicNumber number;
    Enclosure height;
};

namespace detail {

using i128 = __int128;

inline long double ld(i128 v) { return static_cast<long double>(v); }

/// Squarefree kernel of a nonzero integer, sign kept.
inline BigInt squarefree_kernel(const BigInt& n) {
    BigInt k = n < 0 ? BigInt(-1) : BigInt(1);
    for (const auto& [p, e] : factor_integer(abs(n)))
        if (e % 2) k *= p;
    return k;
}

/// Primes at which n has odd valuation.
inline std::vector<BigInt> odd_primes_of(const BigInt& n) {
    std::vector<BigInt> out;
    for (const auto& [p, e] : factor_integer(abs(n)))
        if (e % 2) out.push_back(p);
    return out;
}

/// Certified rejection test: some Graeffe iterate shows M(f) > T.
/// Works on f(x), whose k-th iterate has Mahler measure M(f)^(2^k), and uses
/// |c_i| <= C(d,i) M for every coefficient. Long double comparisons use a
/// relative margin far above their rounding error.
class GraeffeFilter {
public:
    GraeffeFilter(unsigned d, const Rational& T) : d_(d) {
        const long double t = T.convert_to<long double>();
        long double tk = t;
        for (unsigned s = 0; s <= kSteps; ++s) {
            bound_[s].resize(d + 1);
            for (unsigned i = 0; i <= d; ++i) bound_[s][i] = binom(d, i) * tk * (1 + 1e-12L);
            tk *= tk;
        }
    }

    bool exceeds(const std::vector<i128>& f) const {
        std::vector<i128> c = f, n(d_ + 1);
        for (unsigned s = 0; s <= kSteps; ++s) {
            long double total = 0;
            for (unsigned i = 0; i <= d_; ++i) {
                const long double a = ld(c[i] < 0 ? -c[i] : c[i]);
                if (a > bound_[s][i]) return true;
                total += a;
            }
            if (s == kSteps || total > 1e17L) return false;
            // g(x^2) = f(x) f(-x) up to sign
            for (unsigned k = 0; k <= d_; ++k) {
                i128 acc = 0;
                for (unsigned i = 0; i <= 2 * k && i <= d_; ++i) {
                    const unsigned j = 2 * k - i;
                    if (j > d_) continue;
                    i128 term = c[i] * c[j];
                    acc += (j % 2) ? -term : term;
                }
                n[k] = acc;
            }
            std::swap(c, n);
        }
        return false;
    }

private:
    static constexpr unsigned kSteps = 3;
    static long double binom(unsigned n, unsigned k) {
        long double r = 1;
        for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    }
    unsigned d_;
    std::vector<long double> bound_[kSteps + 1];
};

inline BigInt binom_big(unsigned n, unsigned k) {
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline BigInt floor_rat(const Rational& r) {
    BigInt q = num(r) / den(r);
    if (Rational(q) > r) q -= 1;
    return q;
}

inline bool quick_irreducible(const IntPoly& f) {
    if (f.degree() <= 1) return true;
    if (f.degree() <= 3) return rational_roots(f).empty();
    return is_irreducible(f);
}

using PolyPredicate = std::function<bool(const IntPoly&)>;

/// Primitive irreducible polynomials of degree d with positive lead and
/// M(f) <= T. With `half` set, only those with a_(d-1) >= 0 (one of each
/// pair f(x), +-f(-x)).
inline std::vector<IntPoly> enum_minpolys(unsigned d, const Rational& T, const PolyPredicate& keep, bool half,
                                          unsigned jobs) {
    std::vector<IntPoly> out;
    if (T < 1) return out;
    if (d == 1) {
        const BigInt t = floor_rat(T);
        for (BigInt b = 1; b <= t; ++b)
            for (BigInt a = -t; a <= t; ++a) {
                if (a == 0 && b != 1) continue;
                if (gcd(abs(a), b) != 1) continue;
                IntPoly f(std::vector<BigInt>{a, b});
                if (!keep || keep(f)) out.push_back(f);
            }
        std::sort(out.begin(), out.end());
        return out;
    }
    std::vector<long> bound(d + 1);
    for (unsigned i = 0; i <= d; ++i) {
        BigInt b = floor_rat(Rational(binom_big(d, i)) * T);
        if (b > BigInt(1) << 40) throw UnsupportedError("enumeration box too large");
        bound[i] = b.convert_to<long>();
    }
    long double volume = bound[d] * (2.0L * bound[0]);
    for (unsigned i = 1; i < d; ++i) volume *= (half && i == d - 1) ? bound[i] + 1.0L : 2.0L * bound[i] + 1;
    if (volume > 2e9L) throw UnsupportedError("enumeration box too large (degree " + std::to_string(d) + ")");
    const GraeffeFilter filter(d, T);
    // one task per (lead, constant) pair
    std::vector<std::pair<long, long>> tasks;
    for (long ad = 1; ad <= bound[d]; ++ad)
        for (long a0 = -bound[0]; a0 <= bound[0]; ++a0)
            if (a0 != 0) tasks.emplace_back(ad, a0);
    auto work = [&](std::size_t t) {
        std::vector<IntPoly> found;
        const auto [ad, a0] = tasks[t];
        std::vector<long> c(d + 1, 0);
        c[d] = ad;
        c[0] = a0;
        // odometer over the middle coefficients
        for (unsigned i = 1; i < d; ++i) c[i] = (half && i == d - 1) ? 0 : -bound[i];
        while (true) {
            std::vector<i128> w(c.begin(), c.end());
            if (!filter.exceeds(w)) {
                long g = 0;
                for (long x : c) g = std::gcd(g, std::labs(x));
                if (g == 1) {
                    std::vector<BigInt> bc(c.begin(), c.end());
                    IntPoly f(std::move(bc));
                    if (quick_irreducible(f) && (!keep || keep(f)) && compare_mahler(f, T) <= 0)
                        found.push_back(std::move(f));
                }
            }
            unsigned i = 1;
            while (i < d && c[i] == bound[i]) {
                c[i] = (half && i == d - 1) ? 0 : -bound[i];
                ++i;
            }
            if (i == d) break;
            ++c[i];
        }
        return found;
    };
    auto parts = parallel_map<std::vector<IntPoly>>(tasks.size(), jobs, work);
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end());
    return out;
}

/// f(-x) normalised to positive lead.
inline IntPoly negate_variable(const IntPoly& f) {
    std::vector<BigInt> c = f.coeffs();
    for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return primitive_positive(IntPoly(std::move(c)));
}

/// Sort key: degree, Mahler enclosure midpoint, coefficients.
inline void sort_by_height(std::vector<IntPoly>& v) {
    std::map<IntPoly, Rational> key;
    for (const auto& f : v) key[f] = mahler_measure(f, Rational(1, BigInt(1) << 64)).midpoint();
    std::sort(v.begin(), v.end(), [&](const IntPoly& a, const IntPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        if (key[a] != key[b]) return key[a] < key[b];
        return a < b;
    });
}

}  // namespace detail

/// All algebraic numbers of degree <= max_degree and height <= height_cap.
inline std::vector<Found> enum_bounded_height(const EnumQuery& q, const Rational& tol = Rational(1, BigInt(1) << 40)) {
    if (q.max_degree > 4) throw UnsupportedError("enumeration supports degree <= 4");
    if (q.max_degree < 1) throw DomainError("max_degree must be at least 1");
    std::vector<Found> out;
    if (q.height_cap < 1) return out;

    detail::PolyPredicate keep;
    std::optional<BigInt> filter_kernel;
    std::optional<std::vector<BigInt>> gen_primes;
    if (q.field_filter) {
        if (!is_irreducible(*q.field_filter)) throw DomainError("field filter must be irreducible");
        if (q.field_filter->degree() >= 2) filter_kernel = detail::squarefree_kernel(discriminant(*q.field_filter));
    }
    BigInt gen_disc = 1;
    if (q.membership_filter) {
        if (!is_irreducible(*q.membership_filter)) throw DomainError("membership filter must be irreducible");
        if (q.membership_filter->degree() >= 2) gen_disc = discriminant(*q.membership_filter);
    }
    keep = [&](const IntPoly& f) {
        if (q.field_filter) {
            const IntPoly& g = *q.field_filter;
            if (f.degree() != g.degree()) return false;
            if (f.degree() >= 2 && detail::squarefree_kernel(discriminant(f)) != *filter_kernel) return false;
            if (!has_root_in_field(f, g)) return false;
        }
        if (q.membership_filter) {
            const IntPoly& g = *q.membership_filter;
            if (g.degree() % f.degree() != 0) return false;
            if (f.degree() >= 2)
                for (const auto& p : detail::odd_primes_of(discriminant(f)))
                    if (gen_disc % p != 0) return false;
            if (!has_root_in_field(f, g)) return false;
        }
        return true;
    };

    std::vector<IntPoly> polys;
    for (unsigned d = 1; d <= q.max_degree; ++d) {
        if (q.field_filter && static_cast<int>(d) != q.field_filter->degree()) continue;
        if (q.membership_filter && q.membership_filter->degree() % d != 0) continue;
        const Rational T = pow(q.height_cap, d);
        const bool symmetric = d >= 2;
        auto part = detail::enum_minpolys(d, T, keep, symmetric, q.jobs);
        std::set<IntPoly> all(part.begin(), part.end());
        if (symmetric)
            for (const auto& f : part) all.insert(detail::negate_variable(f));
        polys.insert(polys.end(), all.begin(), all.end());
    }
    detail::sort_by_height(polys);
    for (const auto& f : polys) {
        Enclosure h = weil_height(f, tol);
        const std::size_t copies = q.all_conjugates ? static_cast<std::size_t>(f.degree()) : 1;
        for (std::size_t k = 0; k < copies; ++k) out.push_back({AlgebraicNumber::from_root(f, k), h});
    }
    return out;
}

struct DeltaResult {
    AlgebraicNumber delta;
    Enclosure value;
    Rational cap_used;
};

/// The minimal height of a generator of Q[x]/(M), by exhaustive search with
/// a growing cap (or the given cap when supplied).
inline DeltaResult delta_oracle(const IntPoly& M, std::optional<Rational> x_cap = {}, unsigned jobs = 1,
                                const Rational& tol = Rational(1, BigInt(1) << 40)) {
    IntPoly m = primitive_positive(M);
    if (!is_irreducible(m)) throw DomainError("delta oracle needs an irreducible polynomial");
    if (m.degree() > 3) throw UnsupportedError("delta oracle supports degree <= 3");
    const unsigned n = static_cast<unsigned>(m.degree());
    if (n == 1) return {AlgebraicNumber::rational(0), Enclosure::of_rational(1), Rational(1)};
    // Grow the Mahler bound T = X^n; every cap on the way is certified complete.
    std::vector<Rational> caps;
    if (x_cap) {
        caps.push_back(*x_cap);
    } else {
        Enclosure own = weil_height(m, Rational(1, 1000));
        Rational top = pow(own.hi(), n);
        for (Rational T = 1; T < top; T = T * 3 / 2) caps.push_back(Rational(root_interval(T, n, 20).hi));
        caps.push_back(own.hi());
    }
    for (const auto& X : caps) {
        EnumQuery q;
        q.max_degree = n;
        q.height_cap = X;
        q.field_filter = m;
        q.jobs = jobs;
        auto found = enum_bounded_height(q, tol);
        if (!found.empty()) return {found.front().number, found.front().height, X};
    }
    throw NotFoundError("no generator of height <= cap");
}

/// inf of H over K \ Q for K = Q[x]/(K_i), as min over all degrees >= 2 that divide [K:Q].
inline Enclosure intermediate_delta_infimum(const IntPoly& K_i, std::optional<Rational> x_cap = {}, unsigned jobs = 1) {
    IntPoly k = primitive_positive(K_i);
    if (!is_irreducible(k)) throw DomainError("field polynomial must be irreducible");
    if (k.degree() > 3) throw UnsupportedError("intermediate delta supports degree <= 3");
    if (k.degree() < 2) throw DomainError("K_i must be a proper extension of Q");
    // degree <= 3: the only proper subfield is Q, so every non-rational element generates K
    return delta_oracle(k, x_cap, jobs).value;
}

struct FieldPoint {
    NumberFieldElement element;
    IntPoly minpoly;
    Enclosure height;
};

struct FiniteNResult {
    std::vector<FieldPoint> points;
    bool complete = true;  ///< false when some divisor degree of [K:Q] exceeds the enumeration cap
};

/// All elements of K = Q(theta) with H <= X.
inline FiniteNResult finite_N_check(const FieldPtr& K, const Rational& X, unsigned jobs = 1) {
    if (K->degree() > 8) throw UnsupportedError("finite_N_check supports fields of degree <= 8");
    FiniteNResult out;
    const unsigned n = static_cast<unsigned>(K->degree());
    unsigned maxd = 0;
    for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) {
            if (d <= 4)
                maxd = d;
            else
                out.complete = false;
        }
    EnumQuery q;
    q.max_degree = maxd;
    q.height_cap = X;
    if (n >= 2) q.membership_filter = K->poly();
    q.jobs = jobs;
    for (const auto& f : enum_bounded_height(q)) {
        for (auto& e : roots_in_field(f.number.minpoly(), K)) out.points.push_back({e, f.number.minpoly(), f.height});
    }
    return out;
}

}  // namespace northcott
