#pragma once

// Parametrised radical families p_i^(1/d_i): the bounded/divergent verdict,
// the compositum example with d = floor(sqrt(log p)), the roots-of-unity
// variant and the index shift.

#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "northcott/algnum.hpp"
#include "northcott/bounds.hpp"
#include "northcott/errors.hpp"
#include "northcott/numfield.hpp"
#include "northcott/parallel.hpp"

namespace northcott {

struct PrimeRule {
    enum class Kind { explicit_list, nth_prime_offset } kind = Kind::nth_prime_offset;
    std::vector<BigInt> list;
    unsigned offset = 0;  ///< p_i is the (i + offset)-th prime
};

struct ExponentRule {
    enum class Kind { constant, identity, floor_sqrt_log_p, shift_plus_one, product_d2_plus_d, explicit_list };
    Kind kind = Kind::identity;
    unsigned value = 1;
    std::vector<unsigned> list;
    std::shared_ptr<const ExponentRule> inner;

    static ExponentRule constant(unsigned d) { return {Kind::constant, d, {}, nullptr}; }
    static ExponentRule identity() { return {Kind::identity, 0, {}, nullptr}; }
    static ExponentRule floor_sqrt_log_p() { return {Kind::floor_sqrt_log_p, 0, {}, nullptr}; }
    static ExponentRule shift_plus_one(ExponentRule r) {
        return {Kind::shift_plus_one, 0, {}, std::make_shared<const ExponentRule>(std::move(r))};
    }
    static ExponentRule product_d2_plus_d(ExponentRule r) {
        return {Kind::product_d2_plus_d, 0, {}, std::make_shared<const ExponentRule>(std::move(r))};
    }
    static ExponentRule explicit_list(std::vector<unsigned> v) { return {Kind::explicit_list, 0, std::move(v), nullptr}; }

    std::string str() const;
};

enum class RootChoice { real_positive, any };

struct FamilySpec {
    PrimeRule primes;
    ExponentRule exponents;
    RootChoice root = RootChoice::real_positive;
    unsigned twist = 0;  ///< zeta_d^twist p^(1/d) when root == any; the height does not depend on it
};

inline std::string ExponentRule::str() const {
    switch (kind) {
        case Kind::constant: return "constant(" + std::to_string(value) + ")";
        case Kind::identity: return "identity";
        case Kind::floor_sqrt_log_p: return "floor_sqrt_log_p";
        case Kind::shift_plus_one: return "shift_plus_one(" + inner->str() + ")";
        case Kind::product_d2_plus_d: return "product_d2_plus_d(" + inner->str() + ")";
        case Kind::explicit_list: {
            std::string s = "list(";
            for (std::size_t i = 0; i < list.size(); ++i) s += (i ? "," : "") + std::to_string(list[i]);
            return s + ")";
        }
    }
    return "?";
}

namespace detail {

inline std::vector<std::string> split_commas(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(trim_ws(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim_ws(cur));
    return out;
}

inline std::string_view strip_call(std::string_view s, std::string_view name) {
    if (s.size() < name.size() + 2 || s.substr(0, name.size()) != name || s[name.size()] != '(' || s.back() != ')')
        return {};
    return s.substr(name.size() + 1, s.size() - name.size() - 2);
}

inline unsigned parse_small(std::string_view s) {
    BigInt v = parse_bigint(s);
    if (v < 0 || v > 1000000) throw ParseError("value out of range: " + std::string(s));
    return v.convert_to<unsigned>();
}

}  // namespace detail

/// "nth+K" or "list(2,3,5)".
inline PrimeRule parse_prime_rule(std::string_view s) {
    PrimeRule r;
    if (s.substr(0, 4) == "nth+") {
        r.offset = detail::parse_small(s.substr(4));
        return r;
    }
    if (auto body = detail::strip_call(s, "list"); !body.empty()) {
        r.kind = PrimeRule::Kind::explicit_list;
        for (const auto& t : detail::split_commas(body)) r.list.push_back(parse_bigint(t));
        return r;
    }
    throw ParseError("unknown prime rule '" + std::string(s) + "'");
}

/// identity, constant(d), floor_sqrt_log_p, shift_plus_one(R), product_d2_plus_d(R), list(d1,d2,...).
inline ExponentRule parse_exponent_rule(std::string_view s) {
    if (s == "identity") return ExponentRule::identity();
    if (s == "floor_sqrt_log_p") return ExponentRule::floor_sqrt_log_p();
    if (auto b = detail::strip_call(s, "constant"); !b.empty()) return ExponentRule::constant(detail::parse_small(b));
    if (auto b = detail::strip_call(s, "shift_plus_one"); !b.empty())
        return ExponentRule::shift_plus_one(parse_exponent_rule(b));
    if (auto b = detail::strip_call(s, "product_d2_plus_d"); !b.empty())
        return ExponentRule::product_d2_plus_d(parse_exponent_rule(b));
    if (auto b = detail::strip_call(s, "list"); !b.empty()) {
        std::vector<unsigned> v;
        for (const auto& t : detail::split_commas(b)) v.push_back(detail::parse_small(t));
        return ExponentRule::explicit_list(std::move(v));
    }
    throw ParseError("unknown exponent rule '" + std::string(s) + "'");
}

namespace detail {

/// floor(sqrt(log p)) for an integer p >= 1: the largest k with e^(k^2) < p.
/// e^(k^2) is irrational for k >= 1, so refining always decides.
inline unsigned floor_sqrt_log(const BigInt& p) {
    static const std::vector<Interval> cache = [] {
        std::vector<Interval> v;
        for (unsigned k = 1; k <= 7; ++k) v.push_back(exp_integer(k * k, 64));
        return v;
    }();
    unsigned k = 0;
    while (true) {
        const unsigned next = k + 1;
        Interval e = next <= cache.size() ? cache[next - 1] : exp_integer(next * next, 64);
        for (unsigned bits = 128; e.contains(Rational(p)); bits *= 2) e = exp_integer(next * next, bits);
        if (e.hi < Rational(p))
            k = next;
        else
            return k;
    }
}

inline unsigned eval_exponent(const ExponentRule& r, std::size_t i, const BigInt& p) {
    switch (r.kind) {
        case ExponentRule::Kind::constant: return r.value;
        case ExponentRule::Kind::identity: return static_cast<unsigned>(i);
        case ExponentRule::Kind::floor_sqrt_log_p: return floor_sqrt_log(p);
        case ExponentRule::Kind::shift_plus_one: return eval_exponent(*r.inner, i, p) + 1;
        case ExponentRule::Kind::product_d2_plus_d: {
            unsigned d = eval_exponent(*r.inner, i, p);
            return d * d + d;
        }
        case ExponentRule::Kind::explicit_list:
            if (i > r.list.size()) throw DomainError("exponent list has only " + std::to_string(r.list.size()) + " entries");
            return r.list[i - 1];
    }
    throw DomainError("unknown exponent rule");
}

/// The primes p_1..p_n of the rule.
inline std::vector<BigInt> family_primes(const PrimeRule& r, std::size_t n) {
    std::vector<BigInt> out;
    if (r.kind == PrimeRule::Kind::explicit_list) {
        if (n > r.list.size()) throw DomainError("prime list has only " + std::to_string(r.list.size()) + " entries");
        for (std::size_t i = 0; i < n; ++i) {
            if (!is_prime(r.list[i])) throw DomainError(to_string(r.list[i]) + " is not a prime");
            out.push_back(r.list[i]);
        }
        return out;
    }
    auto ps = first_primes(n + r.offset);
    for (std::size_t i = 0; i < n; ++i) out.push_back(BigInt(ps[i + r.offset]));
    return out;
}

enum class Growth { constant, sqrt_log, sqrt_log_product, at_least_index, unknown };

inline Growth growth_of(const ExponentRule& r) {
    switch (r.kind) {
        case ExponentRule::Kind::constant: return Growth::constant;
        case ExponentRule::Kind::identity: return Growth::at_least_index;
        case ExponentRule::Kind::floor_sqrt_log_p: return Growth::sqrt_log;
        case ExponentRule::Kind::shift_plus_one: return growth_of(*r.inner);
        case ExponentRule::Kind::product_d2_plus_d: {
            Growth g = growth_of(*r.inner);
            return g == Growth::sqrt_log ? Growth::sqrt_log_product : g;
        }
        case ExponentRule::Kind::explicit_list: return Growth::unknown;
    }
    return Growth::unknown;
}

/// Smallest integer c with c^k >= a.
inline BigInt ceil_root(const BigInt& a, unsigned k) {
    BigInt c = iroot(a, k);
    if (pow(c, k) < a) c += 1;
    return c;
}

}  // namespace detail

struct FamilyRow {
    std::size_t i = 0;
    BigInt p;
    unsigned d = 0;
    Enclosure height;
};

enum class FamilyVerdict { bounded, divergent, undetermined };

inline std::string to_string(FamilyVerdict v) {
    switch (v) {
        case FamilyVerdict::bounded: return "bounded";
        case FamilyVerdict::divergent: return "divergent";
        case FamilyVerdict::undetermined: return "undetermined";
    }
    return "?";
}

struct FamilyReport {
    std::vector<FamilyRow> rows;
    FamilyVerdict verdict = FamilyVerdict::undetermined;
    std::string reason;
    std::optional<BigInt> witness_cap;  ///< H(p_i^(1/d_i)) <= cap for every i >= 1, when bounded
    std::size_t distinct = 0;

    std::string tsv() const {
        std::ostringstream os;
        os << "i\tp\td\tH_lo\tH_hi\n";
        for (const auto& r : rows)
            os << r.i << '\t' << r.p << '\t' << r.d << '\t' << format_decimal(r.height.lo(), false) << '\t'
               << format_decimal(r.height.hi(), true) << '\n';
        os << "# verdict=" << to_string(verdict) << '\n';
        os << "# reason=" << reason << '\n';
        if (witness_cap) os << "# witness cap=" << *witness_cap << " elements=" << distinct << '\n';
        return os.str();
    }
};

/// Rows (i, p_i, d_i, H(p_i^(1/d_i))) for i = 1..n and a verdict that holds
/// for the whole infinite family, not only the prefix.
inline FamilyReport radical_family_analyze(const FamilySpec& spec, std::size_t n, const Rational& tol = default_tol(),
                                           unsigned jobs = 1) {
    if (n < 1) throw DomainError("prefix length must be at least 1");
    const auto primes = detail::family_primes(spec.primes, n);
    FamilyReport rep;
    rep.rows = parallel_map<FamilyRow>(n, jobs, [&](std::size_t k) {
        const std::size_t i = k + 1;
        const unsigned d = detail::eval_exponent(spec.exponents, i, primes[k]);
        if (d == 0) throw DomainError("exponent rule gives d_" + std::to_string(i) + " = 0 at p = " + to_string(primes[k]));
        return FamilyRow{i, primes[k], d, Enclosure::of_radical({Rational(primes[k]), d}, tol)};
    });
    std::set<std::pair<BigInt, unsigned>> values;
    BigInt prefix_cap = 1;
    for (const auto& r : rep.rows) {
        values.emplace(r.p, r.d);
        prefix_cap = std::max(prefix_cap, detail::ceil_root(r.p, r.d));
    }
    rep.distinct = values.size();

    if (spec.primes.kind == PrimeRule::Kind::explicit_list) {
        rep.reason = "explicit prime list: prefix only";
        return rep;
    }
    const unsigned k = spec.primes.offset;
    switch (detail::growth_of(spec.exponents)) {
        case detail::Growth::constant:
            rep.verdict = FamilyVerdict::divergent;
            rep.reason = "d_i is constant, so H = p_i^(1/d) grows with p_i";
            break;
        case detail::Growth::sqrt_log:
            rep.verdict = FamilyVerdict::divergent;
            rep.reason = "d_i <= sqrt(log p_i) + s, so log H >= log p_i / (sqrt(log p_i) + s) is unbounded";
            break;
        case detail::Growth::sqrt_log_product:
            // with m = floor(sqrt(log p)) >= 1, log p < (m+1)^2 and d >= m^2 + m, so H < e^((m+1)/m) <= e^2 < 8
            rep.verdict = FamilyVerdict::bounded;
            rep.reason = "d_i >= m^2 + m with m = floor(sqrt(log p_i)) >= 1, so H < e^((m+1)/m) <= e^2";
            rep.witness_cap = std::max(prefix_cap, BigInt(8));
            break;
        case detail::Growth::at_least_index: {
            // Bertrand: p_(i+k) < 2^i p_k (p_0 = 1), and d_i >= i
            const BigInt pk = k == 0 ? BigInt(1) : BigInt(first_primes(k).back());
            const unsigned m = static_cast<unsigned>(n + 1);
            const BigInt tail = detail::ceil_root(pow(BigInt(2), m) * pk, m);
            rep.verdict = FamilyVerdict::bounded;
            rep.reason = "d_i >= i and p_(i+k) < 2^i p_k, so H_i <= 2 p_k^(1/i)";
            rep.witness_cap = std::max(prefix_cap, tail);
            break;
        }
        case detail::Growth::unknown: rep.reason = "explicit exponent list: prefix only"; break;
    }
    return rep;
}

/// Q(p_1^(1/d_1), ..., p_k^(1/d_k)) for the longest prefix of degree <= max_degree,
/// with the real positive radicals. Returns the field and the prefix length.
inline std::pair<FieldPtr, std::size_t> family_prefix_field(const FamilyReport& rep, unsigned max_degree) {
    AlgebraicNumber gen = AlgebraicNumber::rational(0);
    std::size_t used = 0;
    for (const auto& r : rep.rows) {
        std::vector<BigInt> c(r.d + 1, BigInt(0));
        c[0] = -r.p;
        c[r.d] = 1;
        AlgebraicNumber a = AlgebraicNumber::largest_real_root(IntPoly(c));
        AlgebraicNumber next = gen.degree() == 1 ? a : compositum_generator(gen, a).first;
        if (next.degree() > static_cast<int>(max_degree)) break;
        gen = next;
        ++used;
    }
    return {NumberField::make(gen), used};
}

// ---------------------------------------------------------------------------
// The compositum example: p_i the (i+1)-th prime, d_i = floor(sqrt(log p_i)).

struct CompositumRow {
    std::size_t i = 0;
    BigInt p;
    unsigned d = 0;
    Radical col1, col2, col3;  ///< p^(1/d), p^(1/(d+1)), p^(1/(d^2+d))
};

struct Crossing {
    BigInt threshold;
    std::optional<std::size_t> index;  ///< from this row on, columns 1 and 2 stay above the threshold
};

struct CompositumReport {
    std::vector<CompositumRow> rows;
    std::size_t n = 0;
    Radical max_col3;
    std::size_t argmax = 0;
    BigInt argmax_p;
    bool identity_holds = true;
    std::vector<Crossing> crossings;
    std::vector<std::pair<std::size_t, Radical>> tail_minima;  ///< min of columns 1, 2 over rows >= start

    std::string tsv(const Rational& tol = default_tol()) const {
        std::ostringstream os;
        os << "i\tp\td\tcol1_lo\tcol1_hi\tcol2_lo\tcol2_hi\tcol3_lo\tcol3_hi\n";
        auto cols = [&](const Radical& r) {
            Enclosure e = Enclosure::of_radical(r, tol);
            return format_decimal(e.lo(), false) + "\t" + format_decimal(e.hi(), true);
        };
        for (const auto& r : rows)
            os << r.i << '\t' << r.p << '\t' << r.d << '\t' << cols(r.col1) << '\t' << cols(r.col2) << '\t' << cols(r.col3)
               << '\n';
        os << "# rows=" << n << '\n';
        os << "# max_col3=" << Enclosure::of_radical(max_col3, tol).str() << " at i=" << argmax << " p=" << argmax_p << '\n';
        os << "# identity col1/col2=col3: " << (identity_holds ? "exact" : "FAILED") << '\n';
        for (const auto& [start, v] : tail_minima)
            os << "# tail_min from=" << start << " value=" << Enclosure::of_radical(v, tol).str() << '\n';
        for (const auto& c : crossings) {
            os << "# threshold=" << c.threshold << " crossed_from=";
            if (c.index)
                os << *c.index;
            else
                os << "none";
            os << '\n';
        }
        return os.str();
    }
};

inline CompositumReport compositum_demo(std::size_t n, std::vector<BigInt> thresholds = {BigInt(2), BigInt(3)},
                                        bool keep_rows = true, unsigned jobs = 1) {
    if (n < 1) throw DomainError("prefix length must be at least 1");
    auto ps = first_primes(n + 1);
    auto rows = parallel_map<CompositumRow>(n, jobs, [&](std::size_t k) {
        CompositumRow r;
        r.i = k + 1;
        r.p = BigInt(ps[k + 1]);
        r.d = detail::floor_sqrt_log(r.p);
        if (r.d < 1) throw ConsistencyError("d_i = 0 at p = " + to_string(r.p));
        r.col1 = {Rational(r.p), r.d};
        r.col2 = {Rational(r.p), r.d + 1};
        r.col3 = {Rational(r.p), r.d * r.d + r.d};
        return r;
    });
    CompositumReport rep;
    rep.n = n;
    rep.max_col3 = rows[0].col3;
    rep.argmax = rows[0].i;
    rep.argmax_p = rows[0].p;
    for (const auto& r : rows) {
        if (compare(r.col3, rep.max_col3) > 0) {
            rep.max_col3 = r.col3;
            rep.argmax = r.i;
            rep.argmax_p = r.p;
        }
        // p^(1/d) / p^(1/(d+1)) = p^(1/(d^2+d)): exponents agree and the quotient
        // of the radicals raised to d^2+d is p on both sides
        const unsigned e = r.d * r.d + r.d;
        if (Rational(1, r.d) - Rational(1, r.d + 1) != Rational(1, e) ||
            pow(r.p, e / r.d) / pow(r.p, e / (r.d + 1)) != r.p)
            rep.identity_holds = false;
    }
    // min(col1, col2) = col2 since d + 1 > d; suffix minima of col2
    std::vector<Radical> suffix(n);
    suffix[n - 1] = rows[n - 1].col2;
    for (std::size_t k = n - 1; k-- > 0;)
        suffix[k] = compare(rows[k].col2, suffix[k + 1]) < 0 ? rows[k].col2 : suffix[k + 1];
    for (std::size_t start = 1; start <= n; start *= 10) rep.tail_minima.emplace_back(start, suffix[start - 1]);
    for (const auto& t : thresholds) {
        Crossing c{t, std::nullopt};
        for (std::size_t k = n; k-- > 0;) {
            if (compare(suffix[k], Radical{Rational(t), 1}) <= 0) break;
            c.index = k + 1;
        }
        rep.crossings.push_back(c);
    }
    if (keep_rows) rep.rows = std::move(rows);
    return rep;
}

// ---------------------------------------------------------------------------

struct UnityRow {
    std::size_t i = 0;
    BigInt p;
    unsigned d = 0;
    IntPoly minpoly;  ///< of (zeta_d p^(1/d)) / p^(1/d)
    Enclosure height;
    bool computed = false;  ///< true when the quotient was formed inside Q(p^(1/d), zeta_d p^(1/d))
};

namespace detail {

inline std::size_t twisted_root_index(const IntPoly& f, const BigInt& p, unsigned d, unsigned twist) {
    const double r = std::pow(p.convert_to<double>(), 1.0 / d), t = 2 * std::numbers::pi * twist / d;
    const double re = r * std::cos(t), im = r * std::sin(t);
    auto disks = isolate_roots(f);
    std::size_t best = 0;
    double dist = 1e300;
    for (std::size_t k = 0; k < disks.size(); ++k) {
        double dr = disks[k].re.convert_to<double>() - re, di = disks[k].im.convert_to<double>() - im;
        if (dr * dr + di * di < dist) {
            dist = dr * dr + di * di;
            best = k;
        }
    }
    return best;
}

inline IntPoly cyclotomic_poly(unsigned m) {
    IntPoly f = IntPoly::monomial(BigInt(1), m) - IntPoly({1});
    for (unsigned j = 1; j < m; ++j)
        if (m % j == 0) f = div_exact(f, cyclotomic_poly(j));
    return f;
}

inline std::optional<NumberFieldElement> locate(const std::vector<NumberFieldElement>& cands, const AlgebraicNumber& x) {
    for (unsigned bits = 32; bits <= 4096; bits *= 2) {
        const Rational r(BigInt(1), BigInt(1) << bits);
        const RootDisk disk = x.refined(r);
        std::vector<std::size_t> hits;
        for (std::size_t k = 0; k < cands.size(); ++k)
            if (approximate(cands[k], r).overlaps(disk)) hits.push_back(k);
        if (hits.size() == 1) return cands[hits[0]];
        if (hits.empty()) return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace detail

/// For rows with d_i >= 2, zeta = (zeta_d p^(1/d)) / p^(1/d) as an element of
/// the compositum; computed exactly for d <= max_computed_degree.
inline std::vector<UnityRow> roots_of_unity_variant(const FamilySpec& spec, std::size_t n, unsigned max_computed_degree = 4,
                                                    const Rational& tol = default_tol()) {
    if (n < 1) throw DomainError("prefix length must be at least 1");
    const auto primes = detail::family_primes(spec.primes, n);
    const unsigned twist = spec.twist == 0 ? 1 : spec.twist;
    std::vector<UnityRow> out;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = k + 1;
        const unsigned d = detail::eval_exponent(spec.exponents, i, primes[k]);
        if (d < 2) continue;
        UnityRow row{i, primes[k], d, {}, {}, false};
        std::vector<BigInt> c(d + 1, BigInt(0));
        c[0] = -primes[k];
        c[d] = 1;
        const IntPoly f(c);
        if (d <= max_computed_degree) {
            AlgebraicNumber alpha = AlgebraicNumber::largest_real_root(f);
            AlgebraicNumber beta = AlgebraicNumber::from_root(f, detail::twisted_root_index(f, primes[k], d, twist));
            auto K = NumberField::make(compositum_generator(alpha, beta).first);
            auto roots = roots_in_field(f, K);
            auto a = detail::locate(roots, alpha), b = detail::locate(roots, beta);
            if (!a || !b) throw ConsistencyError("radicals not found in the compositum");
            row.minpoly = element_minpoly(*b / *a);
            row.computed = true;
        } else {
            row.minpoly = detail::cyclotomic_poly(d / std::gcd(d, twist));
        }
        row.height = weil_height(row.minpoly, tol);
        out.push_back(std::move(row));
    }
    return out;
}

struct ShiftIndex {
    std::optional<std::size_t> i0;
    std::string justification;
};

/// The least i0 <= horizon with p_i > max(d_1, ..., d_i) for all i0 <= i <= horizon.
inline ShiftIndex compute_shift_index(const FamilySpec& spec, std::size_t horizon) {
    if (horizon < 1) throw DomainError("horizon must be at least 1");
    const auto primes = detail::family_primes(spec.primes, horizon);
    unsigned running = 0;
    std::optional<std::size_t> last_bad;
    for (std::size_t k = 0; k < horizon; ++k) {
        running = std::max(running, detail::eval_exponent(spec.exponents, k + 1, primes[k]));
        if (primes[k] <= running) last_bad = k + 1;
    }
    ShiftIndex out;
    if (!last_bad) {
        out.i0 = 1;
        out.justification = "p_i > max(d_1..d_i) for every i <= " + std::to_string(horizon);
    } else if (*last_bad < horizon) {
        out.i0 = *last_bad + 1;
        out.justification = "p_" + std::to_string(*last_bad) + " = " + to_string(primes[*last_bad - 1]) +
                            " is not above max(d_1..d_" + std::to_string(*last_bad) + "); all later i <= " +
                            std::to_string(horizon) + " pass";
    } else {
        out.justification = "p_" + std::to_string(horizon) + " fails at the horizon";
    }
    return out;
}

}  // namespace northcott
