// Acceptance runner: one PASS/FAIL line per criterion, exit status = number of failures.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "northcott/dynamics.hpp"
#include "northcott/enumerate.hpp"
#include "northcott/families.hpp"
#include "northcott/towers.hpp"
#include "support.hpp"

using namespace northcott;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double to_d(const Rational& r) { return r.convert_to<double>(); }
double mid(const Enclosure& e) { return to_d(e.midpoint()); }

IntPoly pure(unsigned d, const BigInt& a) {
    std::vector<BigInt> c(d + 1, BigInt(0));
    c[0] = -a;
    c[d] = 1;
    return IntPoly(c);
}

std::vector<long> primes_upto(long n) {
    std::vector<long> out;
    for (long p = 2; p <= n; ++p) {
        bool prime = true;
        for (long q = 2; q * q <= p; ++q)
            if (p % q == 0) prime = false;
        if (prime) out.push_back(p);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Proc {
    int code;
    std::string out;
};

Proc run_cli(const std::string& args) {
    std::string cmd = std::string("'") + NORTHCOTT_CLI + "' " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return {-1, ""};
    std::string out;
    char buf[1 << 14];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    int st = pclose(f);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string sample(const char* name) { return std::string(NORTHCOTT_SAMPLES_DIR) + "/" + name; }

// ---------------------------------------------------------------------------

Outcome discriminant_formula() {
    Outcome o;
    int mismatches = 0, abs_mismatches = 0, cases = 0;
    std::set<unsigned> bad_degrees;
    for (long p : primes_upto(97))
        for (unsigned d = 2; d <= 9; ++d) {
            ++cases;
            BigInt stated = pow(BigInt(d), d) * pow(BigInt(p), d - 1);
            if ((d * (d - 1) / 2) % 2) stated = -stated;
            BigInt got = discriminant(pure(d, BigInt(p)));
            if (got != stated) {
                ++mismatches;
                bad_degrees.insert(d);
            }
            if (abs(got) != abs(stated)) ++abs_mismatches;
        }
    o.pass = mismatches == 0;
    o.detail = std::to_string(cases - mismatches) + "/" + std::to_string(cases) + " exact; |Disc| agrees in " +
               std::to_string(cases - abs_mismatches) + "/" + std::to_string(cases);
    if (!bad_degrees.empty()) {
        o.detail += "; sign differs for d in {";
        for (auto d : bad_degrees) o.detail += (d == *bad_degrees.begin() ? "" : ",") + std::to_string(d);
        o.detail += "}, where Disc(x^d - p) carries the extra factor (-1)^(d-1)";
    }
    return o;
}

Outcome radical_heights() {
    Outcome o;
    int cases = 0;
    double worst = 0;
    for (long p : primes_upto(100))
        for (unsigned d = 1; d <= 10; ++d) {
            ++cases;
            Enclosure h = weil_height(AlgebraicNumber::largest_real_root(pure(d, BigInt(p))), default_tol());
            bool closed = h.width() == 0 && h.exact() && compare(*h.exact(), Radical{Rational(p), d}) == 0;
            double err = std::fabs(mid(h) - std::pow(double(p), 1.0 / d)) / std::pow(double(p), 1.0 / d);
            worst = std::max(worst, err);
            if (!closed || err > 1e-12 || pow(h.lo(), d) > p || pow(h.hi(), d) < p) {
                o.pass = false;
                o.detail = "p=" + std::to_string(p) + " d=" + std::to_string(d) + " ";
            }
        }
    std::ostringstream ss;
    ss << cases << " radicals, all width 0, max relative midpoint error " << worst;
    o.detail += ss.str();
    return o;
}

/// Discriminant of Q(a^(1/3)) for cube-free a = f g^2 (f, g squarefree, coprime).
BigInt pure_cubic_field_disc(long a) {
    long f = 1, g = 1;
    for (long q = 2, r = a; r > 1; ++q)
        while (r % q == 0) {
            int e = 0;
            while (r % q == 0) r /= q, ++e;
            (e == 1 ? f : g) *= q;
        }
    const long m = a % 9;
    const long k = (m == 1 || m == 8) ? 3 : 27;
    return BigInt(-k * f * f * g * g);
}

long cube_free(long a) {
    for (long q = 2; q * q * q <= a; ++q)
        while (a % (q * q * q) == 0) a /= q * q * q;
    return a;
}

Outcome silverman_consistency() {
    Outcome o;
    int checked = 0;
    for (long D = -30; D <= 30; ++D) {
        if (D == 0 || D == 1) continue;
        bool sqfree = true;
        for (long p = 2; p * p <= std::labs(D); ++p)
            if (std::labs(D) % (p * p) == 0) sqfree = false;
        if (!sqfree) continue;
        const long disc = ((D % 4) + 4) % 4 == 1 ? D : 4 * D;
        auto c = compare(silverman_lower_bound({1, 2, BigInt(std::labs(disc))}), delta_oracle(IntPoly({-D, 0, 1})).value);
        ++checked;
        if (!c || *c > 0) {
            o.pass = false;
            o.detail += "D=" + std::to_string(D) + " ";
        }
    }
    std::set<long> seen;
    for (long a = 2; a <= 20; ++a) {
        const long m = cube_free(a);
        if (m == 1 || !seen.insert(m).second) continue;
        const BigInt fd = pure_cubic_field_disc(m), pd = discriminant(pure(3, BigInt(m)));
        if (pd % fd != 0 || !detail::is_square_int(BigInt(pd / fd))) {
            o.pass = false;
            o.detail += "disc(a=" + std::to_string(m) + ") ";
            continue;
        }
        auto c = compare(silverman_lower_bound({1, 3, abs(fd)}), delta_oracle(pure(3, BigInt(m))).value);
        ++checked;
        if (!c || *c > 0) {
            o.pass = false;
            o.detail += "a=" + std::to_string(m) + " ";
        }
    }
    o.detail += std::to_string(checked) + " fields (quadratic |D| <= 30, pure cubic a <= 20 with the field discriminant)";
    return o;
}

Outcome delta_goldens() {
    Outcome o;
    const double phi = (1 + std::sqrt(5.0)) / 2;
    struct G {
        IntPoly m;
        double value;
        const char* name;
    };
    const std::vector<G> gs = {{IntPoly({-2, 0, 1}), std::sqrt(2.0), "sqrt2"},
                               {IntPoly({-5, 0, 1}), std::sqrt(phi), "sqrt5"},
                               {IntPoly({1, 1, 1}), 1.0, "zeta3"},
                               {IntPoly({-2, 0, 0, 1}), std::cbrt(2.0), "cbrt2"}};
    const Rational tol(BigInt(1), BigInt(10000000000LL));
    for (const auto& g : gs) {
        auto d = delta_oracle(g.m, {}, 1, tol);
        const bool ok = d.value.width() <= tol && std::fabs(mid(d.value) - g.value) < 1e-10;
        if (!ok) o.pass = false;
        o.detail += std::string(g.name) + "=" + format_interval(d.value.box(), 11) + " ";
    }
    return o;
}

Outcome family_negative_branch() {
    Outcome o;
    auto rep = radical_family_analyze({parse_prime_rule("nth+0"), parse_exponent_rule("identity")}, 100);
    std::set<std::pair<BigInt, unsigned>> elems;
    bool under2 = true;
    for (const auto& r : rep.rows) {
        elems.insert({r.p, r.d});
        if (r.height.hi() > 2) under2 = false;
    }
    auto [K, used] = family_prefix_field(rep, 6);
    auto found = finite_N_check(K, Rational(2));
    std::set<IntPoly> mins;
    for (const auto& pt : found.points) mins.insert(pt.minpoly);
    std::size_t confirmed = 0;
    for (std::size_t k = 0; k < used; ++k)
        if (mins.count(pure(rep.rows[k].d, rep.rows[k].p))) ++confirmed;
    auto cli = run_cli("family --primes nth+0 --exp identity --n 100");
    const bool witness_out = cli.out.find("# witness cap=2 elements=100\n") != std::string::npos;
    o.pass = elems.size() == 100 && under2 && rep.verdict == FamilyVerdict::bounded && rep.witness_cap &&
             *rep.witness_cap == 2 && used >= 3 && confirmed == used && cli.code == 2 && witness_out;
    o.detail = std::to_string(elems.size()) + " distinct with H <= 2; prefix field degree " + std::to_string(K->degree()) +
               " holds " + std::to_string(confirmed) + "/" + std::to_string(used) + " witnesses; cli exit " +
               std::to_string(cli.code);
    return o;
}

Outcome compositum() {
    Outcome o;
    const std::size_t n = 100000;
    auto rep = compositum_demo(n, {BigInt(3)}, true);
    const double maxv = mid(Enclosure::of_radical(rep.max_col3, default_tol()));
    bool ok = std::fabs(maxv - std::sqrt(53.0)) < 1e-6 && rep.argmax_p == 53 && rep.identity_holds;
    // independent scan: floor(sqrt(log p)) in doubles, columns compared through integer powers
    auto ps = first_primes(n + 1);
    double best = 0;
    long best_p = 0;
    std::size_t last_low = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const long p = static_cast<long>(ps[k + 1]);
        const unsigned d = static_cast<unsigned>(std::floor(std::sqrt(std::log(double(p)))));
        const double c3 = std::pow(double(p), 1.0 / (d * d + d));
        if (c3 > best) best = c3, best_p = p;
        if (!(BigInt(p) > pow(BigInt(3), d + 1) && BigInt(p) > pow(BigInt(3), d))) last_low = k + 1;
    }
    const auto& cross = rep.crossings.at(0);
    ok = ok && best_p == 53 && cross.index && *cross.index == last_low + 1;
    o.pass = ok;
    o.detail = "max p^(1/(d^2+d)) = " + format_decimal(Enclosure::of_radical(rep.max_col3, default_tol()).lo(), false) +
               " at p=" + to_string(rep.argmax_p) + "; above 3 from index " +
               (cross.index ? std::to_string(*cross.index) : std::string("none")) +
               "; identity col1/col2 = col3 " + (rep.identity_holds ? "exact" : "FAILED");
    return o;
}

Outcome eisenstein_tower() {
    Outcome o;
    auto cert = certify(parse_tower_spec(read_file(sample("eisenstein.tower"))));
    const long ps[] = {2, 3, 5, 7};
    const unsigned ds[] = {2, 3, 5, 7};
    bool ok = cert.verdict == Verdict::certified_prefix && cert.steps.size() == 4;
    for (std::size_t i = 0; ok && i < 4; ++i) {
        const auto& c = cert.steps[i].criterion_lower;
        const double want = std::pow(double(ps[i]), 1.0 / (2 * ds[i]));
        ok = c.exact() && compare(*c.exact(), Radical{Rational(ps[i]), 2 * ds[i]}) == 0 &&
             std::fabs(mid(c) - want) < 5e-13 && c.box().width() < Rational(1, BigInt("1000000000000"));
    }
    // collide: reuse 2 at the last step
    auto collide = parse_tower_spec(read_file(sample("eisenstein.tower")));
    collide.steps[3].poly = pure(7, BigInt(2));
    collide.steps[3].prime = 2;
    auto bad = certify(collide);
    ok = ok && bad.verdict == Verdict::violation && bad.verdict_step == 4;
    auto file = certify(parse_tower_spec(read_file(sample("collision.tower"))));
    ok = ok && file.verdict == Verdict::violation && file.verdict_step == 4;
    o.pass = ok;
    o.detail = "criterion_lower 2^(1/4) 3^(1/6) 5^(1/10) 7^(1/14); collision -> VIOLATION step=" +
               std::to_string(bad.verdict_step) + " check=" + bad.verdict_check;
    return o;
}

Outcome cubic_towers() {
    Outcome o;
    auto d3 = check_deg3_tower(parse_tower_spec(read_file(sample("deg3.tower"))));
    bool ok = d3.verdict == Verdict::certified_prefix;
    for (const auto& s : d3.steps)
        ok = ok && s.criterion_lower.exact() && compare(*s.criterion_lower.exact(), Radical{Rational(s.prime), 9}) == 0;
    auto gc = check_galois_closure_tower(parse_tower_spec(read_file(sample("galois.tower"))));
    ok = ok && gc.verdict == Verdict::certified_prefix;
    for (const auto& s : gc.steps)
        ok = ok && s.criterion_lower.exact() && compare(*s.criterion_lower.exact(), Radical{Rational(s.prime), 18}) == 0;
    StepSpec a{StepKind::deg3_galois_closure, IntPoly({1, -2, -1, 1}), BigInt(7), 'a'};
    StepSpec b{StepKind::deg3_galois_closure, pure(3, BigInt(2)), BigInt(2), 'a'};
    const auto ca = detail::galois_condition(a, discriminant(a.poly), 1);
    const auto cb = detail::galois_condition(b, discriminant(b.poly), 1);
    ok = ok && ca.pass && !cb.pass && discriminant(a.poly) == 49 && discriminant(b.poly) == -108;
    o.pass = ok;
    o.detail = "deg3 steps p^(1/9), closure steps p^(1/18); condition a: " + ca.witness + " / " + cb.witness;
    return o;
}

/// Numbers of degree <= d and height <= X by brute force over minimal
/// polynomials with floating-point Mahler measure.
std::size_t naive_count(int d, double X) {
    std::size_t count = 0;
    const int B = static_cast<int>(std::floor(X));
    for (int b = 1; b <= B; ++b)
        for (int a = -B; a <= B; ++a)
            if (std::gcd(a, b) == 1) ++count;
    if (d < 2) return count;
    const int T = static_cast<int>(std::floor(X * X));
    for (int a2 = 1; a2 <= T; ++a2)
        for (int a1 = -2 * T; a1 <= 2 * T; ++a1)
            for (int a0 = -T; a0 <= T; ++a0) {
                if (std::gcd(std::gcd(a2, std::abs(a1)), std::abs(a0)) != 1) continue;
                const long disc = long(a1) * a1 - 4L * a2 * a0;
                const long s = static_cast<long>(std::llround(std::sqrt(double(std::labs(disc)))));
                if (disc >= 0 && s * s == disc) continue;
                double m = a2;
                if (disc > 0) {
                    const double r1 = (-a1 + std::sqrt(double(disc))) / (2.0 * a2), r2 = (-a1 - std::sqrt(double(disc))) / (2.0 * a2);
                    m *= std::max(1.0, std::fabs(r1)) * std::max(1.0, std::fabs(r2));
                } else {
                    const double mod2 = double(a0) / a2;
                    m *= std::max(1.0, mod2);
                }
                if (m <= X * X + 1e-9) count += 2;
            }
    return count;
}

Outcome kronecker_enumeration() {
    Outcome o;
    auto count = [](unsigned d, long X) {
        EnumQuery q;
        q.max_degree = d;
        q.height_cap = X;
        q.all_conjugates = true;
        return enum_bounded_height(q).size();
    };
    const std::size_t n21 = naive_count(2, 1), n12 = naive_count(1, 2), n13 = naive_count(1, 3);
    const std::size_t e21 = count(2, 1), e12 = count(1, 2), e13 = count(1, 3);
    std::size_t mism = 0;
    for (long X : {1L, 2L, 3L})
        if (count(2, X) != naive_count(2, double(X))) ++mism;
    o.pass = e21 == 9 && e12 == 7 && e13 == 15 && n21 == 9 && n12 == 7 && n13 == 15 && mism == 0;
    o.detail = "enum(d<=2,X=1)=" + std::to_string(e21) + " enum(1,2)=" + std::to_string(e12) + " enum(1,3)=" +
               std::to_string(e13) + "; naive oracle " + std::to_string(n21) + "/" + std::to_string(n12) + "/" +
               std::to_string(n13) + ", d<=2 X<=3 disagreements " + std::to_string(mism);
    return o;
}

Outcome dynamics() {
    Outcome o;
    auto Q = NumberField::rationals();
    auto Gi = NumberField::make(AlgebraicNumber::from_root(IntPoly({1, 0, 1}), 0));
    auto points = [](const PreperiodicResult& r) {
        std::set<std::vector<Rational>> s;
        for (const auto& p : r.points) s.insert(p.point.coords());
        return s;
    };
    bool ok = true;
    double slowest = 0;
    auto timed = [&](const PolyMap& f) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = preperiodic_points(f);
        slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        return points(r);
    };
    const std::set<std::vector<Rational>> zero_pm1 = {{-1}, {0}, {1}};
    ok = ok && timed(PolyMap::rational(Q, {0, 0, 1})) == zero_pm1;
    ok = ok && timed(PolyMap::rational(Q, {-1, 0, 1})) == zero_pm1;
    ok = ok && timed(PolyMap::rational(Gi, {0, 0, 1})) ==
                   std::set<std::vector<Rational>>{{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    ok = ok && slowest <= 60;
    auto h = testsupport::bf_harness(20260101, 10000);
    ok = ok && h.counterexamples == 0 && h.undecided == 0;
    o.pass = ok;
    std::ostringstream ss;
    ss << "preperiodic sets match, slowest " << slowest << " s; b_f harness " << h.pass << " pass, " << h.counterexamples
       << " counterexamples, " << h.undecided << " undecided";
    o.detail = ss.str();
    return o;
}

Outcome determinism() {
    Outcome o;
    const std::vector<std::string> cmds = {
        "height 'x^3 - 5' --root 0",
        "disc 'x^7 - 7'",
        "factor 'x^6 - 1'",
        "certify '" + sample("eisenstein.tower") + "'",
        "certify '" + sample("galois.tower") + "'",
        "family --primes nth+0 --exp identity --n 100",
        "compositum-demo --n 100000",
        "enumerate --degree 2 --cap 2",
        "delta 'x^3 - 2'",
        "orbit --map '1; 0; 1' --point 1",
        "preperiodic --map '-1; 0; 1'",
        "preperiodic --map '0; 0; 1' --field 'x^2 + 1'",
    };
    int bad = 0;
    for (const auto& c : cmds) {
        auto a = run_cli(c + " --jobs 1"), b = run_cli(c + " --jobs 4"), a2 = run_cli(c + " --jobs 1"),
             b2 = run_cli(c + " --jobs 4");
        if (a.out.empty() || a.out != b.out || a.out != a2.out || b.out != b2.out || a.code != b.code) {
            ++bad;
            o.detail += "[" + c + "] ";
        }
    }
    o.pass = bad == 0;
    o.detail += std::to_string(cmds.size() - bad) + "/" + std::to_string(cmds.size()) +
                " commands byte-identical over 2 runs x --jobs {1,4}";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"discriminant formula", discriminant_formula},
        {"radical heights", radical_heights},
        {"silverman consistency", silverman_consistency},
        {"delta goldens", delta_goldens},
        {"bounded family witness", family_negative_branch},
        {"compositum demo", compositum},
        {"eisenstein tower", eisenstein_tower},
        {"cubic towers", cubic_towers},
        {"kronecker enumeration", kronecker_enumeration},
        {"dynamics", dynamics},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failures;
        std::printf("%s %2zu %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
