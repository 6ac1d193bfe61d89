#pragma once

// Certified complex root isolation and Mahler measures.
//
// Roots are approximated by Aberth iteration in fixed-point big-integer
// arithmetic, then certified: the disk of radius n|p(z)|/|p'(z)| around each
// approximation z holds a root, and pairwise disjoint disks hold one each.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "northcott/errors.hpp"
#include "northcott/factor.hpp"
#include "northcott/interval.hpp"
#include "northcott/poly.hpp"

namespace northcott {

/// A certified disk holding exactly one root of a squarefree polynomial.
struct RootDisk {
    Rational re, im;  ///< center
    Rational radius;  ///< may be zero for exactly known roots
    bool real = false;

    Interval re_interval() const { return {re - radius, re + radius}; }
    Interval im_interval() const { return {im - radius, im + radius}; }
    bool contains(const Rational& x, const Rational& y) const {
        Rational dx = x - re, dy = y - im;
        return dx * dx + dy * dy <= radius * radius;
    }
};

namespace detail {

/// Gaussian integer standing for (re + i im) / 2^prec.
struct Fix {
    BigInt re, im;
};

inline Fix fmul(const Fix& a, const Fix& b, unsigned prec) {
    return {(a.re * b.re - a.im * b.im) >> prec, (a.re * b.im + a.im * b.re) >> prec};
}
inline Fix fdiv(const Fix& a, const Fix& b, unsigned prec) {
    BigInt n2 = b.re * b.re + b.im * b.im;
    if (n2 == 0) return {BigInt(0), BigInt(0)};
    BigInt re = a.re * b.re + a.im * b.im, im = a.im * b.re - a.re * b.im;
    return {(re << prec) / n2, (im << prec) / n2};
}

/// (p(z), p'(z)) in fixed point.
inline std::pair<Fix, Fix> feval(const IntPoly& p, const Fix& z, unsigned prec) {
    Fix v{BigInt(0), BigInt(0)}, d{BigInt(0), BigInt(0)};
    for (int i = p.degree(); i >= 0; --i) {
        d = fmul(d, z, prec);
        d.re += v.re;
        d.im += v.im;
        v = fmul(v, z, prec);
        v.re += p.coeff(i) << prec;
    }
    return {v, d};
}

/// Aberth iteration; returns true when the corrections have settled.
inline bool aberth(const IntPoly& p, std::vector<Fix>& z, unsigned prec, int max_iter) {
    const std::size_t n = z.size();
    const BigInt settle = BigInt(1) << 6;
    for (int it = 0; it < max_iter; ++it) {
        bool done = true;
        for (std::size_t i = 0; i < n; ++i) {
            auto [v, d] = feval(p, z[i], prec);
            if (v.re == 0 && v.im == 0) continue;
            Fix ratio = fdiv(v, d, prec);
            Fix sum{BigInt(0), BigInt(0)};
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                Fix diff{z[i].re - z[j].re, z[i].im - z[j].im};
                Fix inv = fdiv(Fix{BigInt(1) << prec, BigInt(0)}, diff, prec);
                sum.re += inv.re;
                sum.im += inv.im;
            }
            Fix rs = fmul(ratio, sum, prec);
            Fix denom{(BigInt(1) << prec) - rs.re, -rs.im};
            Fix w = fdiv(ratio, denom, prec);
            if (denom.re == 0 && denom.im == 0) w = ratio;
            z[i].re -= w.re;
            z[i].im -= w.im;
            if (abs(w.re) > settle || abs(w.im) > settle) done = false;
        }
        if (done) return true;
    }
    return false;
}

/// Upper bound for sqrt(x), x >= 0, as a dyadic with `bits` fractional bits.
inline Rational sqrt_up(const Rational& x, unsigned bits) { return root_interval(x, 2, bits).hi; }

/// Henrici radius n|p(z)|/|p'(z)| rounded up; nullopt when p'(z) = 0.
inline std::optional<Rational> inclusion_radius(const IntPoly& p, const Rational& re, const Rational& im,
                                                unsigned bits) {
    // exact evaluation over Q(i)
    Rational vr = 0, vi = 0, dr = 0, di = 0;
    for (int k = p.degree(); k >= 0; --k) {
        Rational ndr = dr * re - di * im + vr, ndi = dr * im + di * re + vi;
        dr = ndr;
        di = ndi;
        Rational nvr = vr * re - vi * im + Rational(p.coeff(k)), nvi = vr * im + vi * re;
        vr = nvr;
        vi = nvi;
    }
    Rational d2 = dr * dr + di * di;
    if (d2 == 0) return std::nullopt;
    Rational n = p.degree();
    return sqrt_up(n * n * (vr * vr + vi * vi) / d2, bits);
}

inline bool disks_disjoint(const Rational& ar, const Rational& ai, const Rational& ra, const Rational& br,
                           const Rational& bi, const Rational& rb) {
    Rational dx = ar - br, dy = ai - bi, s = ra + rb;
    return dx * dx + dy * dy > s * s;
}

/// One certification attempt at the given approximations.
inline std::optional<std::vector<RootDisk>> certify(const IntPoly& p, const std::vector<Fix>& z, unsigned prec) {
    const std::size_t n = z.size();
    const BigInt scale = BigInt(1) << prec;
    std::vector<RootDisk> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i].re = Rational(z[i].re, scale);
        d[i].im = Rational(z[i].im, scale);
        auto r = inclusion_radius(p, d[i].re, d[i].im, prec + 8);
        if (!r) return std::nullopt;
        d[i].radius = *r;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!disks_disjoint(d[i].re, d[i].im, d[i].radius, d[j].re, d[j].im, d[j].radius)) return std::nullopt;
    // Real-coefficient symmetry: a disk that avoids every other disk after
    // conjugation holds a real root; one off the axis holds a non-real root.
    std::vector<RootDisk> out;
    for (std::size_t i = 0; i < n; ++i) {
        bool isolated_from_mirror = true;
        for (std::size_t j = 0; j < n && isolated_from_mirror; ++j)
            if (j != i && !disks_disjoint(d[i].re, -d[i].im, d[i].radius, d[j].re, d[j].im, d[j].radius))
                isolated_from_mirror = false;
        if (isolated_from_mirror) {
            RootDisk r = d[i];
            r.radius += abs(r.im);
            r.im = 0;
            r.real = true;
            out.push_back(r);
        } else if (abs(d[i].im) > d[i].radius) {
            if (d[i].im > 0) {
                RootDisk up = d[i], down = d[i];
                down.im = -down.im;
                out.push_back(up);
                out.push_back(down);
            }
        } else {
            return std::nullopt;
        }
    }
    if (out.size() != n) return std::nullopt;
    return out;
}

inline void sort_roots(std::vector<RootDisk>& r) {
    std::sort(r.begin(), r.end(), [](const RootDisk& a, const RootDisk& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    });
}

inline std::vector<RootDisk> isolate_squarefree(const IntPoly& p, unsigned start_prec) {
    const int n = p.degree();
    if (n < 1) return {};
    if (n == 1) {
        Rational r(-p.coeff(0), p.coeff(1));
        return {RootDisk{r, Rational(0), Rational(0), true}};
    }
    // Initial points on a circle of the Fujiwara-type radius.
    double radius = 0;
    const double lead = std::abs(p.lead().convert_to<double>());
    for (int i = 0; i < n; ++i) {
        double c = std::abs(p.coeff(i).convert_to<double>()) / lead;
        radius = std::max(radius, 2 * std::pow(c, 1.0 / (n - i)));
    }
    radius = std::max(radius, 1.0);
    unsigned prec = start_prec;
    std::vector<Fix> z(n);
    for (int k = 0; k < n; ++k) {
        const double ang = 2 * M_PI * k / n + 0.4;
        const double s = std::ldexp(1.0, 52);
        z[k].re = (BigInt(std::trunc(radius * std::cos(ang) * s)) << prec) >> 52;
        z[k].im = (BigInt(std::trunc(radius * std::sin(ang) * s)) << prec) >> 52;
    }
    while (true) {
        aberth(p, z, prec, 60 + 4 * n + static_cast<int>(prec / 8));
        if (auto out = certify(p, z, prec)) {
            sort_roots(*out);
            return *out;
        }
        if (prec > (1u << 16)) throw ConsistencyError("root isolation did not converge");
        for (auto& w : z) {
            w.re <<= prec;
            w.im <<= prec;
        }
        prec *= 2;
    }
}

}  // namespace detail

/// Isolating disks for the distinct complex roots of p, sorted by center
/// (real part, then imaginary part). Deterministic.
inline std::vector<RootDisk> isolate_roots(const IntPoly& p) {
    if (p.is_zero()) throw DomainError("zero polynomial has no isolated roots");
    return detail::isolate_squarefree(squarefree_part(p), 64);
}

/// Disks at least as tight as `max_radius`, in the same order as isolate_roots.
inline std::vector<RootDisk> refine_roots(const IntPoly& p, const Rational& max_radius) {
    IntPoly q = squarefree_part(p);
    std::vector<RootDisk> base = detail::isolate_squarefree(q, 64);
    auto tight = [&](const std::vector<RootDisk>& v) {
        for (const auto& r : v)
            if (r.radius > max_radius) return false;
        return true;
    };
    if (tight(base)) return base;
    unsigned prec = 128;
    while (true) {
        std::vector<RootDisk> fine = detail::isolate_squarefree(q, prec);
        if (tight(fine)) {
            // match each coarse disk with the fine disk whose center it holds
            std::vector<RootDisk> out;
            for (const auto& b : base) {
                auto it = std::find_if(fine.begin(), fine.end(), [&](const RootDisk& f) {
                    Rational dx = f.re - b.re, dy = f.im - b.im, s = b.radius + f.radius;
                    return dx * dx + dy * dy <= s * s;
                });
                if (it == fine.end()) throw ConsistencyError("refined root does not match its coarse disk");
                out.push_back(*it);
            }
            return out;
        }
        prec *= 2;
        if (prec > (1u << 16)) throw ConsistencyError("root refinement did not converge");
    }
}

namespace detail {

/// |z| over a disk, as an interval.
inline Interval modulus_interval(const RootDisk& r, unsigned bits) {
    Interval c = sqrt_interval(Interval::point(r.re * r.re + r.im * r.im), bits);
    return {std::max(Rational(0), c.lo - r.radius), c.hi + r.radius};
}

/// Enclosure of M(p) for squarefree p from disks of the given precision.
inline Interval mahler_from_disks(const IntPoly& p, const std::vector<RootDisk>& disks, unsigned bits) {
    Interval m = Interval::point(Rational(abs(p.lead())));
    for (const auto& r : disks) {
        m = m * max_with(modulus_interval(r, bits), Rational(1));
        m = round_outward(m, bits + 16);
    }
    return m;
}

inline Interval mahler_squarefree(const IntPoly& p, unsigned prec) {
    return mahler_from_disks(p, isolate_squarefree(p, prec), prec);
}

inline BigInt binomial(unsigned n, unsigned k) {
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace detail

/// Enclosure of the Mahler measure with width at most tol.
inline Interval mahler_interval(const IntPoly& p, const Rational& tol) {
    if (tol <= 0) throw DomainError("tolerance must be positive");
    if (p.is_zero()) throw DomainError("Mahler measure of the zero polynomial");
    auto [c, prim] = content_primitive(p);
    if (prim.degree() == 0) return Interval::point(Rational(abs(p.lead())));
    const auto parts = squarefree_decomposition(prim);
    for (unsigned prec = 64;; prec *= 2) {
        Interval m = Interval::point(Rational(c));
        for (const auto& [g, e] : parts) {
            Interval mg = detail::mahler_squarefree(g, prec);
            for (unsigned k = 0; k < e; ++k) m = m * mg;
        }
        if (m.width() <= tol) return m;
        if (prec > (1u << 16)) throw ConsistencyError("Mahler measure refinement did not converge");
    }
}

/// Exact sign of M(p)^2 - t^2 for squarefree p and rational t >= 0.
///
/// M(p)^2 is an algebraic integer of degree at most max_k C(n,k)^2 whose
/// conjugates are all bounded by M(p)^2, so a nonzero difference from t^2
/// has an explicit lower bound. Refining below that gap decides equality.
inline int compare_mahler(const IntPoly& p, const Rational& t) {
    if (t < 0) throw DomainError("compare_mahler: negative threshold");
    IntPoly q = primitive_positive(p);
    if (squarefree_part(q) != q) throw DomainError("compare_mahler expects a squarefree polynomial");
    const int n = q.degree();
    if (n < 1) {
        Rational l = abs(q.lead());
        return l < t ? -1 : (l > t ? 1 : 0);
    }
    BigInt D = 1;
    for (int k = 0; k <= n; ++k) D = std::max(D, pow(detail::binomial(n, k), 2));
    const Rational t2 = t * t;
    const BigInt v = den(t2);
    for (unsigned prec = 64;; prec *= 2) {
        Interval m = detail::mahler_squarefree(q, prec);
        Interval g = m * m;
        if (g.hi < t2) return -1;
        if (g.lo > t2) return 1;
        // |v gamma - u| >= 1 / (v B)^(D-1) for any conjugate-bounded gamma != t^2
        Rational B = std::max(Rational(1), g.hi + t2);
        Rational vb = Rational(v) * B;
        if (D > 100000) throw UnsupportedError("degree too large for exact Mahler comparison");
        Rational gap = 1 / (Rational(v) * pow(vb, static_cast<unsigned>(D) - 1));
        if (g.width() < gap) return 0;
        if (prec > (1u << 20)) throw ConsistencyError("Mahler comparison did not converge");
    }
}

}  // namespace northcott
