#pragma once

// The `northcott` command line. run() parses, dispatches and maps outcomes
// to exit codes: 0 ok, 2 negative finding, 3 bad input, 4 beyond caps.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "northcott/dynamics.hpp"
#include "northcott/enumerate.hpp"
#include "northcott/families.hpp"
#include "northcott/towers.hpp"

namespace northcott::cli {

enum Exit : int { ok = 0, failure = 1, negative = 2, bad_input = 3, unsupported = 4 };

namespace detail {

inline std::vector<Rational> parse_coords(std::string_view text) {
    std::vector<Rational> out;
    std::string tok;
    auto flush = [&] {
        if (!tok.empty()) out.push_back(parse_rational(tok));
        tok.clear();
    };
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',')
            flush();
        else
            tok += ch;
    }
    flush();
    if (out.empty()) throw ParseError("empty coordinate list");
    return out;
}

inline NumberFieldElement parse_element(const FieldPtr& K, std::string_view text) {
    auto c = parse_coords(text);
    if (c.size() > static_cast<std::size_t>(K->degree()))
        throw ParseError("'" + std::string(text) + "' has more coordinates than the field degree " +
                         std::to_string(K->degree()));
    return NumberFieldElement(K, c);
}

/// "c0; c1; c2", constant term first, each coefficient a coordinate list.
inline PolyMap parse_map(const FieldPtr& K, std::string_view text) {
    std::vector<NumberFieldElement> c;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t semi = text.find(';', pos);
        if (semi == std::string_view::npos) semi = text.size();
        c.push_back(parse_element(K, text.substr(pos, semi - pos)));
        pos = semi + 1;
    }
    return PolyMap(K, std::move(c));
}

inline FieldPtr make_field(const std::optional<std::string>& poly, std::size_t root) {
    if (!poly) return NumberField::rationals();
    return NumberField::make(AlgebraicNumber::from_root(parse_poly(*poly), root));
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline bool use_color(const std::ostream& err) {
    return &err == &std::cerr && std::getenv("NO_COLOR") == nullptr && isatty(STDERR_FILENO);
}

}  // namespace detail

/// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Heights, Northcott checks and preperiodic points", "northcott"};
    app.require_subcommand(1);

    std::string tol_text = "1e-12", out_path;
    unsigned jobs = 1;
    app.add_option("--tol", tol_text, "enclosure width");
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));

    std::ostringstream rep;
    int code = ok;
    std::function<void()> action;
    Rational tol;

    std::optional<std::string> field_poly;
    std::size_t root = 0;
    auto field_opts = [&](CLI::App* s) {
        s->add_option("--field", field_poly, "generating polynomial of the field (default Q)");
        s->add_option("--root", root, "root index of the generator");
    };
    auto sub = [&](const char* name, const char* desc) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };

    std::string poly_text;

    auto* height = sub("height", "Weil height of a root of an irreducible polynomial");
    height->add_option("poly", poly_text)->required();
    height->add_option("--root", root, "root index");
    height->callback([&] {
        action = [&] {
            auto a = AlgebraicNumber::from_root(parse_poly(poly_text), root);
            rep << "poly=" << format_poly_human(a.minpoly()) << " root=" << a.root_index() << '\n';
            rep << "H = " << weil_height(a, tol).str() << '\n';
        };
    });

    auto* disc = sub("disc", "discriminant of a polynomial");
    disc->add_option("poly", poly_text)->required();
    disc->callback([&] {
        action = [&] {
            IntPoly f = parse_poly(poly_text);
            if (f.degree() < 1) throw DomainError("discriminant needs degree >= 1");
            rep << discriminant(f) << '\n';
        };
    });

    auto* factor = sub("factor", "factorisation over Q");
    factor->add_option("poly", poly_text)->required();
    factor->callback([&] {
        action = [&] {
            IntPoly f = parse_poly(poly_text);
            rep << "content\t" << content_primitive(f).first * (f.lead() < 0 ? -1 : 1) << '\n';
            for (const auto& fa : factor_over_Q(f)) rep << format_poly_human(fa.poly) << '\t' << fa.multiplicity << '\n';
        };
    });

    std::string spec_path;
    auto* certify_cmd = sub("certify", "check a tower spec file");
    certify_cmd->add_option("spec", spec_path)->required();
    certify_cmd->callback([&] {
        action = [&] {
            Certificate cert = certify(parse_tower_spec(detail::read_file(spec_path)), tol);
            rep << cert.str();
            if (cert.verdict != Verdict::certified_prefix) code = negative;
        };
    });

    std::string primes_text = "nth+0", exp_text;
    std::size_t n = 100;
    std::optional<unsigned> confirm_degree;
    std::optional<std::size_t> shift_horizon;
    bool unity = false;
    unsigned twist = 0;
    auto* family = sub("family", "radical family p_i^(1/d_i): heights and Northcott verdict");
    family->add_option("--primes", primes_text, "nth+K or list(...)");
    family->add_option("--exp", exp_text, "exponent rule")->required();
    family->add_option("--n", n, "prefix length");
    family->add_option("--confirm", confirm_degree, "enumerate the prefix field up to this degree at the witness cap");
    family->add_option("--shift", shift_horizon, "report the shift index up to this horizon");
    family->add_flag("--unity", unity, "roots-of-unity variant instead of the radicals");
    family->add_option("--twist", twist, "zeta_d power for --unity");
    family->callback([&] {
        action = [&] {
            FamilySpec spec{parse_prime_rule(primes_text), parse_exponent_rule(exp_text)};
            spec.twist = twist;
            if (unity) {
                rep << "i\tp\td\tminpoly\tH_lo\tH_hi\n";
                for (const auto& r : roots_of_unity_variant(spec, n, 4, tol))
                    rep << r.i << '\t' << r.p << '\t' << r.d << '\t' << format_poly_human(r.minpoly) << '\t'
                        << format_decimal(r.height.lo(), false) << '\t' << format_decimal(r.height.hi(), true) << '\n';
                return;
            }
            FamilyReport fr = radical_family_analyze(spec, n, tol, jobs);
            rep << fr.tsv();
            if (shift_horizon) {
                auto s = compute_shift_index(spec, *shift_horizon);
                rep << "# shift_index=" << (s.i0 ? std::to_string(*s.i0) : std::string("none")) << " (" << s.justification
                    << ")\n";
            }
            if (confirm_degree && fr.witness_cap) {
                auto [K, used] = family_prefix_field(fr, *confirm_degree);
                auto found = finite_N_check(K, Rational(*fr.witness_cap), jobs);
                std::set<IntPoly> mins;
                for (const auto& pt : found.points) mins.insert(pt.minpoly);
                std::size_t confirmed = 0;
                for (std::size_t k = 0; k < used; ++k) {
                    std::vector<BigInt> c(fr.rows[k].d + 1, BigInt(0));
                    c[0] = -fr.rows[k].p;
                    c.back() = 1;
                    if (mins.count(IntPoly(c))) ++confirmed;
                }
                rep << "# prefix field degree=" << K->degree() << " radicals=" << used << " confirmed=" << confirmed
                    << " elements_below_cap=" << found.points.size()
                    << (found.complete ? "" : " (degrees above 4 not enumerated)") << '\n';
            }
            if (fr.verdict == FamilyVerdict::bounded) code = negative;
        };
    });

    std::size_t demo_n = 100000;
    bool summary = false;
    std::vector<std::string> thresholds{"2", "3"};
    auto* demo = sub("compositum-demo", "p^(1/d), p^(1/(d+1)), p^(1/(d^2+d)) over shifted primes");
    demo->add_option("--n", demo_n, "number of primes");
    demo->add_option("--threshold", thresholds, "crossing thresholds")->delimiter(',');
    demo->add_flag("--summary", summary, "omit the per-row table");
    demo->callback([&] {
        action = [&] {
            std::vector<BigInt> ts;
            for (const auto& t : thresholds) ts.push_back(parse_bigint(t));
            auto r = compositum_demo(demo_n, ts, !summary, jobs);
            std::string tsv = r.tsv(tol);
            if (summary) tsv = tsv.substr(tsv.find('\n') + 1);
            rep << tsv;
        };
    });

    unsigned degree = 1;
    std::string cap_text;
    std::optional<std::string> field_filter, member_filter;
    bool conjugates = false;
    auto* enumerate = sub("enumerate", "algebraic numbers of bounded degree and height");
    enumerate->add_option("--degree", degree, "maximal degree")->required();
    enumerate->add_option("--cap", cap_text, "height cap X")->required();
    enumerate->add_option("--field", field_filter, "keep generators of this field");
    enumerate->add_option("--member", member_filter, "keep elements of this field");
    enumerate->add_flag("--conjugates", conjugates, "one row per root");
    enumerate->callback([&] {
        action = [&] {
            EnumQuery q;
            q.max_degree = degree;
            q.height_cap = parse_rational(cap_text);
            if (field_filter) q.field_filter = parse_poly(*field_filter);
            if (member_filter) q.membership_filter = parse_poly(*member_filter);
            q.all_conjugates = conjugates;
            q.jobs = jobs;
            auto found = enum_bounded_height(q, tol);
            rep << (conjugates ? "minpoly\troot\tH_lo\tH_hi\n" : "minpoly\tH_lo\tH_hi\n");
            for (const auto& f : found) {
                rep << format_poly_human(f.number.minpoly()) << '\t';
                if (conjugates) rep << f.number.root_index() << '\t';
                rep << format_decimal(f.height.lo(), false) << '\t' << format_decimal(f.height.hi(), true) << '\n';
            }
            rep << "# count=" << found.size() << '\n';
        };
    });

    std::optional<std::string> delta_cap;
    auto* delta = sub("delta", "least height of a generator of Q[x]/(poly)");
    delta->add_option("poly", poly_text)->required();
    delta->add_option("--cap", delta_cap, "search only up to this height");
    delta->callback([&] {
        action = [&] {
            std::optional<Rational> cap;
            if (delta_cap) cap = parse_rational(*delta_cap);
            auto d = delta_oracle(parse_poly(poly_text), cap, jobs, tol);
            rep << "generator=" << format_poly_human(d.delta.minpoly()) << " root=" << d.delta.root_index() << '\n';
            rep << "delta = " << d.value.str() << '\n';
        };
    });

    std::string map_text, point_text;
    std::size_t steps = 100;
    std::optional<std::string> orbit_cap;
    auto* orbit_cmd = sub("orbit", "iterate a polynomial map from a point");
    orbit_cmd->add_option("--map", map_text, "c0; c1; ...; each a coordinate list")->required();
    orbit_cmd->add_option("--point", point_text, "coordinate list")->required();
    orbit_cmd->add_option("--steps", steps, "iteration budget");
    orbit_cmd->add_option("--cap", orbit_cap, "escape height (default 1/b_f^2 for rational maps)");
    field_opts(orbit_cmd);
    orbit_cmd->callback([&] {
        action = [&] {
            FieldPtr K = detail::make_field(field_poly, root);
            PolyMap f = detail::parse_map(K, map_text);
            std::optional<Rational> cap;
            if (orbit_cap)
                cap = parse_rational(*orbit_cap);
            else if (f.has_rational_coeffs())
                cap = bf_constant(f.rational_coeffs()).height_cap;
            Orbit o = orbit(f, detail::parse_element(K, point_text), steps, cap);
            rep << "step\tpoint\n";
            for (std::size_t k = 0; k < o.points.size(); ++k) rep << k << '\t' << o.points[k].str() << '\n';
            rep << "# status=" << to_string(o.status);
            if (o.status == OrbitStatus::preperiodic) rep << " tail=" << o.tail << " cycle=" << o.cycle;
            if (o.status == OrbitStatus::escaped) rep << " escape_step=" << o.escape_step;
            if (cap) rep << " cap<=" << format_decimal(*cap, true);
            rep << '\n';
        };
    });

    auto* prep = sub("preperiodic", "all preperiodic points of a map over its field");
    prep->add_option("--map", map_text, "c0; c1; ...; each a coordinate list")->required();
    field_opts(prep);
    prep->callback([&] {
        action = [&] {
            FieldPtr K = detail::make_field(field_poly, root);
            rep << preperiodic_points(detail::parse_map(K, map_text), jobs).tsv();
        };
    });

    const bool color = detail::use_color(err);
    auto fail = [&](const std::string& msg, int c) {
        err << (color ? "\x1b[31merror:\x1b[0m " : "error: ") << msg << '\n';
        return c;
    };

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        return fail(e.what(), bad_input);
    }

    try {
        tol = parse_rational(tol_text);
        if (tol <= 0) throw DomainError("--tol must be positive");
        action();
    } catch (const ParseError& e) {
        return fail(e.what(), bad_input);
    } catch (const DomainError& e) {
        return fail(e.what(), bad_input);
    } catch (const ConsistencyError& e) {
        return fail(e.what(), bad_input);
    } catch (const NotFoundError& e) {
        return fail(e.what(), bad_input);
    } catch (const UnsupportedError& e) {
        return fail(e.what(), unsupported);
    } catch (const std::exception& e) {
        return fail(e.what(), failure);
    }

    if (out_path.empty()) {
        out << rep.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) return fail("cannot write " + out_path, bad_input);
        f << rep.str();
    }
    return code;
}

}  // namespace northcott::cli
