#pragma once

// Tower certificates: Eisenstein towers, towers of degree <= 3 steps and
// towers of cubic Galois closures. Field discriminants are never computed;
// "p does not divide Delta" is checked through Disc(minpoly), "p divides
// Delta" through an Eisenstein shift or an odd valuation of Disc.

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "northcott/bounds.hpp"
#include "northcott/errors.hpp"
#include "northcott/factor.hpp"
#include "northcott/poly.hpp"

namespace northcott {

enum class StepKind { eisenstein, deg3, deg3_galois_closure };

inline std::string to_string(StepKind k) {
    switch (k) {
        case StepKind::eisenstein: return "eisenstein";
        case StepKind::deg3: return "deg3";
        case StepKind::deg3_galois_closure: return "deg3_galois_closure";
    }
    return "?";
}

struct StepSpec {
    StepKind kind = StepKind::eisenstein;
    IntPoly poly;
    BigInt prime = 0;
    std::optional<char> tag;  ///< 'a'..'d', Galois-closure steps only
    std::optional<BigInt> a0, b0, c;
    std::optional<unsigned> l;
};

struct TowerSpec {
    std::optional<IntPoly> base;
    std::vector<StepSpec> steps;
};

struct Check {
    std::string name;
    bool pass = false;
    std::string witness;
    bool conditional = false;  ///< neither passed nor refuted by the implemented witnesses
};

struct StepRecord {
    std::size_t index = 0;
    unsigned degree = 0;
    BigInt prime;
    IntPoly poly;
    StepKind kind = StepKind::eisenstein;
    std::vector<Check> checks;
    Enclosure criterion_lower;
    Enclosure delta_lower;
};

enum class Verdict { certified_prefix, violation, conditional };

struct Certificate {
    std::vector<StepRecord> steps;
    Verdict verdict = Verdict::certified_prefix;
    std::size_t verdict_step = 0;
    std::string verdict_check;

    std::string str() const;
};

// ---------------------------------------------------------------------------
// Spec files.

/// Strict reader for the `[base]` / `[step]` format; '#' starts a comment.
inline TowerSpec parse_tower_spec(std::string_view text) {
    TowerSpec spec;
    enum class Section { none, base, step } section = Section::none;
    std::set<std::string> seen;
    bool have_base = false;
    std::vector<int> step_lines;

    auto finish_step = [&](int line) {
        if (section != Section::step) return;
        const std::size_t i = spec.steps.size();
        for (const char* key : {"kind", "poly", "prime"})
            if (!seen.count(key))
                throw ParseError("step " + std::to_string(i) + ": missing " + key + "=", line);
    };

    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        line = detail::trim_ws(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line == "[base]") {
                if (have_base) throw ParseError("duplicate [base] section", lineno);
                if (!spec.steps.empty()) throw ParseError("[base] must precede the steps", lineno);
                finish_step(lineno);
                have_base = true;
                section = Section::base;
            } else if (line == "[step]") {
                finish_step(lineno);
                section = Section::step;
                spec.steps.emplace_back();
                step_lines.push_back(lineno);
            } else {
                throw ParseError("unknown section " + line, lineno);
            }
            if (section == Section::step || section == Section::base) seen.clear();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", lineno);
        const std::string key = detail::trim_ws(std::string_view(line).substr(0, eq));
        const std::string val = detail::trim_ws(std::string_view(line).substr(eq + 1));
        if (section == Section::none) throw ParseError("key outside a section", lineno);
        if (!seen.insert(key).second) throw ParseError("duplicate key " + key, lineno);
        if (val.empty()) throw ParseError("empty value for " + key, lineno);
        try {
            if (section == Section::base) {
                if (key != "poly") throw ParseError("unknown key " + key + " in [base]", lineno);
                spec.base = parse_poly(val);
                continue;
            }
            StepSpec& s = spec.steps.back();
            if (key == "kind") {
                if (val == "eisenstein")
                    s.kind = StepKind::eisenstein;
                else if (val == "deg3")
                    s.kind = StepKind::deg3;
                else if (val == "deg3_galois_closure")
                    s.kind = StepKind::deg3_galois_closure;
                else
                    throw ParseError("unknown kind " + val, lineno);
            } else if (key == "poly") {
                s.poly = parse_poly(val);
            } else if (key == "prime") {
                s.prime = parse_bigint(val);
            } else if (key == "tag") {
                if (val.size() != 1 || val[0] < 'a' || val[0] > 'd') throw ParseError("tag must be one of a, b, c, d", lineno);
                s.tag = val[0];
            } else if (key == "a0") {
                s.a0 = parse_bigint(val);
            } else if (key == "b0") {
                s.b0 = parse_bigint(val);
            } else if (key == "c") {
                s.c = parse_bigint(val);
            } else if (key == "l") {
                BigInt v = parse_bigint(val);
                if (v < 0 || v > 1000) throw ParseError("l out of range", lineno);
                s.l = v.convert_to<unsigned>();
            } else {
                throw ParseError("unknown key " + key, lineno);
            }
        } catch (const ParseError& e) {
            if (e.line() > 0) throw;
            throw ParseError(e.what(), lineno);
        }
    }
    finish_step(lineno);
    if (spec.steps.empty()) throw ParseError("tower spec has no [step] section", lineno);
    for (std::size_t i = 1; i < spec.steps.size(); ++i)
        if (spec.steps[i].kind != spec.steps[0].kind)
            throw ParseError("step " + std::to_string(i + 1) + ": all steps must have the same kind", step_lines[i]);
    return spec;
}

// ---------------------------------------------------------------------------
// Discriminant bookkeeping.

/// |Delta_K| / |Delta_M|^[K:M], the norm of the relative discriminant.
inline BigInt disc_tower_relation(const BigInt& delta_M, const BigInt& delta_K, unsigned rel_degree) {
    if (delta_M == 0 || delta_K == 0) throw DomainError("discriminants must be nonzero");
    if (rel_degree < 1) throw DomainError("relative degree must be positive");
    const BigInt d = pow(abs(delta_M), rel_degree);
    if (abs(delta_K) % d != 0)
        throw ConsistencyError("|" + to_string(delta_K) + "| is not divisible by |" + to_string(delta_M) + "|^" +
                               std::to_string(rel_degree));
    return abs(delta_K) / d;
}

/// Primes dividing some input; every prime ramified in the compositum is among them.
inline std::set<BigInt> ramified_primes_compositum(const std::vector<BigInt>& discs) {
    std::set<BigInt> out;
    for (const auto& d : discs) {
        if (d == 0) throw DomainError("discriminants must be nonzero");
        for (const auto& [p, e] : factor_integer(abs(d))) out.insert(p);
    }
    return out;
}

namespace detail {

/// f(x + t).
inline IntPoly taylor_shift(const IntPoly& f, const BigInt& t) {
    IntPoly out;
    const IntPoly lin({t, BigInt(1)});
    for (int i = f.degree(); i >= 0; --i) out = out * lin + IntPoly::constant(f.coeff(i));
    return out;
}

/// Witness that p ramifies in Q[x]/(f): Eisenstein after a shift |t| <= p, or
/// odd ord_p Disc(f) for monic f.
inline std::optional<std::string> ramification_witness(const IntPoly& f, const BigInt& p, const BigInt& disc) {
    if (f.is_monic()) {
        for (BigInt t = 0; t <= p; ++t)
            for (const BigInt s : {t, BigInt(-t)}) {
                if (t == 0 && s != t) continue;
                if (!is_eisenstein(taylor_shift(f, s), p)) continue;
                if (s == 0) return "Eisenstein at " + to_string(p);
                return "Eisenstein at " + to_string(p) + " after x -> x" + (s < 0 ? " - " : " + ") + to_string(abs(s));
            }
        const unsigned v = valuation(abs(disc), p);
        if (v % 2) return "ord_" + to_string(p) + " Disc = " + std::to_string(v) + " is odd";
    }
    return std::nullopt;
}

/// delta_lower_bound for N = p^e, with the radical reduced up front so that
/// long towers do not build p^e explicitly.
inline Enclosure step_delta_lower(const BigInt& p, unsigned long long e, unsigned long long base, unsigned m,
                                  const Rational& tol) {
    const unsigned long long k = 2ULL * base * m * (m - 1);
    if (k > (1ULL << 20)) throw UnsupportedError("tower degree too large for the delta bound");
    const unsigned long long g = std::gcd(e, k);
    return Enclosure::of_radical({Rational(pow(p, static_cast<unsigned>(e / g)), pow(BigInt(2), static_cast<unsigned>(k / g))),
                                  static_cast<unsigned>(k / g)},
                                 tol);
}

inline void require_prime(const StepSpec& s, std::size_t i) {
    if (!is_prime(s.prime))
        throw DomainError("step " + std::to_string(i) + ": " + to_string(s.prime) + " is not a prime");
}

/// p does not divide Disc of any earlier poly or of the base.
inline Check freshness(const BigInt& p, const std::vector<std::pair<IntPoly, BigInt>>& earlier) {
    for (const auto& [g, disc] : earlier)
        if (disc % p == 0)
            return {"fresh", false, to_string(p) + " divides Disc(" + format_poly_human(g) + ") = " + to_string(disc)};
    return {"fresh", true, {}};
}

inline std::vector<std::pair<IntPoly, BigInt>> base_discs(const TowerSpec& spec, unsigned& base_degree) {
    std::vector<std::pair<IntPoly, BigInt>> out;
    base_degree = 1;
    if (spec.base && spec.base->degree() >= 1) {
        if (!is_irreducible(*spec.base)) throw DomainError("base polynomial must be irreducible");
        base_degree = static_cast<unsigned>(spec.base->degree());
        if (base_degree >= 2) out.emplace_back(*spec.base, discriminant(*spec.base));
    }
    return out;
}

inline void finish(Certificate& cert) {
    for (const auto& s : cert.steps)
        for (const auto& c : s.checks)
            if (!c.pass && !c.conditional) {
                cert.verdict = Verdict::violation;
                cert.verdict_step = s.index;
                cert.verdict_check = c.name;
                return;
            }
    for (const auto& s : cert.steps)
        for (const auto& c : s.checks)
            if (c.conditional) {
                cert.verdict = Verdict::conditional;
                cert.verdict_step = s.index;
                cert.verdict_check = c.name;
                return;
            }
    cert.verdict = Verdict::certified_prefix;
}

inline void require_kind(const TowerSpec& spec, StepKind k) {
    if (spec.steps.empty()) throw DomainError("tower has no steps");
    for (std::size_t i = 0; i < spec.steps.size(); ++i)
        if (spec.steps[i].kind != k)
            throw DomainError("step " + std::to_string(i + 1) + " is " + to_string(spec.steps[i].kind) + ", expected " +
                              to_string(k));
}

/// Shared part of the degree-3 and Galois-closure checks: p | Disc with a
/// ramification witness, and freshness.
inline void ramification_checks(StepRecord& r, const BigInt& disc,
                                const std::vector<std::pair<IntPoly, BigInt>>& earlier) {
    const BigInt& p = r.prime;
    if (disc % p != 0) {
        r.checks.push_back({"ramified", false, to_string(p) + " does not divide Disc = " + to_string(disc)});
    } else if (auto w = ramification_witness(r.poly, p, disc)) {
        r.checks.push_back({"ramified", true, *w});
    } else {
        r.checks.push_back({"ramified", false, to_string(p) + " divides Disc = " + to_string(disc) + ", no witness", true});
    }
    r.checks.push_back(freshness(p, earlier));
}

}  // namespace detail

inline Certificate check_eisenstein_tower(const TowerSpec& spec, const Rational& tol = default_tol()) {
    detail::require_kind(spec, StepKind::eisenstein);
    unsigned base_degree = 1;
    auto earlier = detail::base_discs(spec, base_degree);
    Certificate cert;
    for (std::size_t i = 0; i < spec.steps.size(); ++i) {
        const StepSpec& s = spec.steps[i];
        if (!s.poly.is_monic()) throw DomainError("step " + std::to_string(i + 1) + ": polynomial must be monic");
        if (s.poly.degree() < 2) throw DomainError("step " + std::to_string(i + 1) + ": degree must be at least 2");
        detail::require_prime(s, i + 1);
        StepRecord r;
        r.index = i + 1;
        r.kind = s.kind;
        r.poly = s.poly;
        r.prime = s.prime;
        r.degree = static_cast<unsigned>(s.poly.degree());
        const bool eis = is_eisenstein(s.poly, s.prime);
        r.checks.push_back({"eisenstein", eis, eis ? std::string() : "not " + to_string(s.prime) + "-Eisenstein"});
        r.checks.push_back(detail::freshness(s.prime, earlier));
        r.criterion_lower = criterion_quantity_lower(s.prime, r.degree, base_degree, tol);
        r.delta_lower = detail::step_delta_lower(s.prime, 1ULL * base_degree * (r.degree - 1), base_degree, r.degree, tol);
        earlier.emplace_back(s.poly, discriminant(s.poly));
        base_degree *= r.degree;
        cert.steps.push_back(std::move(r));
    }
    detail::finish(cert);
    return cert;
}

inline Certificate check_deg3_tower(const TowerSpec& spec, const Rational& tol = default_tol()) {
    detail::require_kind(spec, StepKind::deg3);
    unsigned base_degree = 1;
    auto earlier = detail::base_discs(spec, base_degree);
    Certificate cert;
    for (std::size_t i = 0; i < spec.steps.size(); ++i) {
        const StepSpec& s = spec.steps[i];
        const int d = s.poly.degree();
        if (d < 2 || d > 3) throw DomainError("step " + std::to_string(i + 1) + ": degree must be 2 or 3");
        detail::require_prime(s, i + 1);
        StepRecord r;
        r.index = i + 1;
        r.kind = s.kind;
        r.poly = s.poly;
        r.prime = s.prime;
        r.degree = static_cast<unsigned>(d);
        const bool irr = is_irreducible(s.poly);
        r.checks.push_back({"irreducible", irr, irr ? std::string() : "reducible over Q"});
        const BigInt disc = discriminant(s.poly);
        detail::ramification_checks(r, disc, earlier);
        r.criterion_lower = prime_root(s.prime, 9, tol);
        r.delta_lower = detail::step_delta_lower(s.prime, 1, base_degree, r.degree, tol);
        earlier.emplace_back(s.poly, disc);
        base_degree *= r.degree;
        cert.steps.push_back(std::move(r));
    }
    detail::finish(cert);
    return cert;
}

namespace detail {

inline bool is_square_int(const BigInt& n) {
    if (n < 0) return false;
    BigInt r = isqrt(n);
    return r * r == n;
}

inline Check galois_condition(const StepSpec& s, const BigInt& disc, std::size_t i) {
    const IntPoly& f = s.poly;
    switch (*s.tag) {
        case 'a': {
            bool ok = is_square_int(disc);
            return {"condition_a", ok, "Disc = " + to_string(disc) + (ok ? " is a square" : " is not a square")};
        }
        case 'b': {
            bool ok = f.is_monic() && f.degree() == 3 && f.coeff(2) == 0 && f.coeff(1) == 0;
            return {"condition_b", ok, ok ? "x^3 - q with q = " + to_string(-f.coeff(0)) : "not of the form x^3 - q"};
        }
        case 'c': {
            if (!f.is_monic()) return {"condition_c", false, "not monic"};
            unsigned v = valuation(abs(disc), s.prime);
            return {"condition_c", v % 2 == 1, "ord_" + to_string(s.prime) + " Disc = " + std::to_string(v)};
        }
        case 'd': {
            if (!s.a0 || !s.b0 || !s.c || !s.l)
                throw DomainError("step " + std::to_string(i) + ": condition d needs a0, b0, c and l");
            const unsigned l = *s.l;
            if (l != 1 && l != 2) return {"condition_d", false, "l must be 1 or 2"};
            const BigInt c3 = pow(*s.c, 3);
            std::vector<BigInt> co(4, BigInt(0));
            co[3] = 1;
            co[l] += *s.a0 * c3;
            co[0] += pow(*s.b0, l) * c3;
            if (IntPoly(co) != f) return {"condition_d", false, "does not match x^3 + a0 c^3 x^l + b0^l c^3"};
            const BigInt g = gcd(abs(2 * *s.a0 * *s.c), abs(3 * *s.b0));
            return {"condition_d", g == 1, "gcd(2 a0 c, 3 b0) = " + to_string(g)};
        }
    }
    throw DomainError("unknown condition tag");
}

}  // namespace detail

inline Certificate check_galois_closure_tower(const TowerSpec& spec, const Rational& tol = default_tol()) {
    detail::require_kind(spec, StepKind::deg3_galois_closure);
    unsigned base_degree = 1;
    auto earlier = detail::base_discs(spec, base_degree);
    Certificate cert;
    for (std::size_t i = 0; i < spec.steps.size(); ++i) {
        const StepSpec& s = spec.steps[i];
        if (!s.tag) throw DomainError("step " + std::to_string(i + 1) + ": missing condition tag");
        if (s.poly.degree() != 3) throw DomainError("step " + std::to_string(i + 1) + ": polynomial must be cubic");
        detail::require_prime(s, i + 1);
        StepRecord r;
        r.index = i + 1;
        r.kind = s.kind;
        r.poly = s.poly;
        r.prime = s.prime;
        const bool irr = is_irreducible(s.poly);
        r.checks.push_back({"irreducible", irr, irr ? std::string() : "reducible over Q"});
        const BigInt disc = discriminant(s.poly);
        // degree of the splitting field
        r.degree = detail::is_square_int(disc) ? 3u : 6u;
        detail::ramification_checks(r, disc, earlier);
        r.checks.push_back(detail::galois_condition(s, disc, i + 1));
        r.criterion_lower = prime_root(s.prime, 18, tol);
        r.delta_lower = detail::step_delta_lower(s.prime, 1, base_degree, r.degree, tol);
        earlier.emplace_back(s.poly, disc);
        base_degree *= r.degree;
        cert.steps.push_back(std::move(r));
    }
    detail::finish(cert);
    return cert;
}

/// Dispatch on the (common) step kind.
inline Certificate certify(const TowerSpec& spec, const Rational& tol = default_tol()) {
    if (spec.steps.empty()) throw DomainError("tower has no steps");
    switch (spec.steps.front().kind) {
        case StepKind::eisenstein: return check_eisenstein_tower(spec, tol);
        case StepKind::deg3: return check_deg3_tower(spec, tol);
        case StepKind::deg3_galois_closure: return check_galois_closure_tower(spec, tol);
    }
    throw DomainError("unknown step kind");
}

inline std::string Certificate::str() const {
    std::ostringstream os;
    for (const auto& s : steps) {
        os << "STEP " << s.index << ": kind=" << to_string(s.kind) << " poly=" << format_poly_human(s.poly)
           << " degree=" << s.degree << " prime=" << s.prime;
        for (const auto& c : s.checks) {
            os << ' ' << c.name << '=' << (c.pass ? "pass" : c.conditional ? "conditional" : "FAIL");
            if (!c.witness.empty()) os << " (" << c.witness << ')';
        }
        os << " criterion_lower=" << s.criterion_lower.str() << " delta_lower=" << format_interval(s.delta_lower.box())
           << '\n';
    }
    switch (verdict) {
        case Verdict::certified_prefix: os << "VERDICT: CERTIFIED-PREFIX\n"; break;
        case Verdict::violation: os << "VERDICT: VIOLATION step=" << verdict_step << " check=" << verdict_check << '\n'; break;
        case Verdict::conditional:
            os << "VERDICT: CONDITIONAL step=" << verdict_step << " check=" << verdict_check << '\n';
            break;
    }
    return os.str();
}

}  // namespace northcott
