#pragma once

// Orbits of polynomial maps over a number field and the finite set of
// preperiodic points, found by enumerating everything below the height cap
// 1/b_f^2 and iterating.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "northcott/bounds.hpp"
#include "northcott/enumerate.hpp"
#include "northcott/numfield.hpp"
#include "northcott/parallel.hpp"

namespace northcott {

class PolyMap {
public:
    /// Coefficients constant term first, all in the same field.
    PolyMap(FieldPtr field, std::vector<NumberFieldElement> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (c_.size() < 3) throw DomainError("polynomial map needs degree >= 2");
        for (const auto& a : c_)
            if (!(*a.field() == *field_)) throw DomainError("map coefficient lies over a different generator");
    }
    static PolyMap rational(FieldPtr field, const std::vector<Rational>& coeffs) {
        std::vector<NumberFieldElement> c;
        for (const auto& r : coeffs) c.push_back(NumberFieldElement::rational(field, r));
        return PolyMap(std::move(field), std::move(c));
    }

    const FieldPtr& field() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<NumberFieldElement>& coeffs() const { return c_; }

    bool has_rational_coeffs() const {
        return std::all_of(c_.begin(), c_.end(), [](const NumberFieldElement& a) { return a.is_rational(); });
    }
    std::vector<Rational> rational_coeffs() const {
        std::vector<Rational> out;
        for (const auto& a : c_) out.push_back(a.rational_value());
        return out;
    }

    NumberFieldElement operator()(const NumberFieldElement& x) const {
        if (!(*x.field() == *field_)) throw DomainError("point lies over a different generator than the map");
        NumberFieldElement acc = c_.back();
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

private:
    FieldPtr field_;
    std::vector<NumberFieldElement> c_;
};

enum class OrbitStatus { preperiodic, escaped, budget_exhausted };

inline std::string to_string(OrbitStatus s) {
    switch (s) {
        case OrbitStatus::preperiodic: return "preperiodic";
        case OrbitStatus::escaped: return "escaped";
        case OrbitStatus::budget_exhausted: return "budget_exhausted";
    }
    return "?";
}

struct Orbit {
    std::vector<NumberFieldElement> points;  ///< a, f(a), ...; for a preperiodic orbit ends with the first repeat
    OrbitStatus status = OrbitStatus::budget_exhausted;
    std::size_t tail = 0, cycle = 0;
    std::size_t escape_step = 0;  ///< index in points of the first iterate with H > cap
};

/// Iterates f from a. Stops at the first exact repeat, at the first iterate
/// whose height is certified above height_cap, or after max_steps steps.
inline Orbit orbit(const PolyMap& f, const NumberFieldElement& a, std::size_t max_steps,
                   std::optional<Rational> height_cap = {}) {
    if (!(*a.field() == *f.field())) throw DomainError("point lies over a different generator than the map");
    Orbit o;
    std::map<std::vector<Rational>, std::size_t> seen;
    NumberFieldElement x = a;
    for (std::size_t step = 0;; ++step) {
        auto key = x.coords();
        if (auto it = seen.find(key); it != seen.end()) {
            o.points.push_back(x);
            o.status = OrbitStatus::preperiodic;
            o.tail = it->second;
            o.cycle = step - it->second;
            return o;
        }
        o.points.push_back(x);
        if (height_cap && compare_height(element_minpoly(x), *height_cap) > 0) {
            o.status = OrbitStatus::escaped;
            o.escape_step = step;
            return o;
        }
        if (step == max_steps) return o;
        seen.emplace(std::move(key), step);
        x = f(x);
    }
}

struct PreperiodicPoint {
    NumberFieldElement point;
    std::size_t tail = 0, cycle = 0;
};

struct PreperiodicResult {
    std::vector<PreperiodicPoint> points;  ///< sorted by coordinates
    BfResult bf;
    std::size_t candidates = 0;

    std::string tsv() const {
        std::ostringstream os;
        os << "point\ttail\tcycle\n";
        for (const auto& p : points) os << p.point.str() << '\t' << p.tail << '\t' << p.cycle << '\n';
        os << "# b_f>=" << format_decimal(bf.b_f, false) << " height_cap<=" << format_decimal(bf.height_cap, true)
           << " candidates=" << candidates << '\n';
        return os.str();
    }
};

/// All preperiodic points of f in its field (degree <= 3, rational coefficients).
inline PreperiodicResult preperiodic_points(const PolyMap& f, unsigned jobs = 1) {
    const FieldPtr& K = f.field();
    if (K->degree() > 3) throw UnsupportedError("preperiodic points need a field of degree <= 3");
    if (!f.has_rational_coeffs()) throw UnsupportedError("b_f is implemented for maps with rational coefficients");
    PreperiodicResult out;
    out.bf = bf_constant(f.rational_coeffs());
    auto cand = finite_N_check(K, out.bf.height_cap, jobs);
    if (!cand.complete) throw ConsistencyError("candidate enumeration is incomplete");
    out.candidates = cand.points.size();
    if (out.candidates > 200000) throw UnsupportedError("too many candidates below the height cap to iterate");
    // an orbit that stays below the cap lives in the finite candidate set and repeats within |set| + 1 steps
    const std::size_t budget = cand.points.size() + 1;
    auto orbits = parallel_map<Orbit>(cand.points.size(), jobs, [&](std::size_t k) {
        return orbit(f, cand.points[k].element, budget, out.bf.height_cap);
    });
    for (std::size_t k = 0; k < orbits.size(); ++k) {
        const Orbit& o = orbits[k];
        if (o.status == OrbitStatus::budget_exhausted) throw ConsistencyError("orbit exceeded the finiteness budget");
        if (o.status == OrbitStatus::preperiodic) out.points.push_back({cand.points[k].element, o.tail, o.cycle});
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const PreperiodicPoint& a, const PreperiodicPoint& b) { return a.point < b.point; });
    return out;
}

}  // namespace northcott
