// Acceptance run: one PASS/FAIL line per criterion, with wall time. Exits 1
// if any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fanowb/fanowb.hpp"

using namespace fanowb;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (detail.size() < 600) detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

struct Criterion {
    int id;
    std::string title;
    double time_limit;  // seconds; 0 = none
    std::function<Outcome()> run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sample(const std::string& name) { return std::string(FANOWB_SAMPLES_DIR) + "/" + name; }

/// stdout of the CLI; exit status appended as "\nrc=N".
std::string run_cli(const std::string& args) {
    std::string cmd = std::string(FANOWB_CLI) + " " + args + " 2>&1";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    if (!pipe) return "popen failed";
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
    int status = pclose(pipe.release());
    return out + "\nrc=" + std::to_string(WEXITSTATUS(status));
}

// --------------------------------------------------- shared census family

struct CensusCase {
    std::string name;
    Hypersurface<PrimeField> x;
    std::vector<KPlane<PrimeField>> lines;
};

/// Smooth hypersurfaces with d <= 3, n <= 4, p <= 7 and all their F_p lines.
const std::vector<CensusCase>& census_family() {
    static const std::vector<CensusCase> family = [] {
        std::vector<CensusCase> out;
        auto add = [&](std::string name, Hypersurface<PrimeField> x) {
            auto c = enumerate_kplanes(x, 1);
            out.push_back({std::move(name), x, *c.planes});
        };
        for (std::uint64_t p : {5u, 7u}) {
            PrimeField f(p);
            std::string ps = "/F_" + std::to_string(p);
            add("quadric surface" + ps, Hypersurface<PrimeField>(parse_form("x0*x3 - x1*x2", 4, f)));
            add("quadric threefold" + ps, Hypersurface<PrimeField>(parse_form("x0*x3 - x1*x2 + x4^2", 5, f)));
            add("fermat cubic surface" + ps, Hypersurface<PrimeField>(fermat_form(f, 3, 3)));
            for (auto [n, d] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {4, 2}, {4, 3}})
                for (std::uint64_t seed : {1u, 2u}) {
                    auto ex = random_smooth(n, d, p, 64, 1000 * p + 100 * n + 10 * d + seed);
                    add("random(" + std::to_string(n) + "," + std::to_string(d) + ")#" + std::to_string(seed) + ps,
                        ex.x);
                }
        }
        return out;
    }();
    return family;
}

// ------------------------------------------------------------- criteria

Outcome bounds_table() {
    Outcome o;
    const long expect[] = {0, 4, 66, 1021684};
    for (long d = 2; d <= 5; ++d) o.check(k0(d) == expect[d - 2], "k0(" + std::to_string(d) + ") = " + k0(d).str());
    auto b = k0_power_bound(5);
    o.check(b.bound == 16777216 && b.holds, "k0(5) <= 2^24");
    o.check(n0(3) == 11, "n0(3) = " + n0(3).str());
    for (long x = 6; x <= 200; ++x)
        for (long d = 5; d <= 12; ++d)
            if (!binom_bound_check(x, d).holds) o.check(false, "binom bound fails at " + std::to_string(x) + "," + std::to_string(d));
    return o;
}

Outcome twenty_seven_lines() {
    Outcome o;
    for (std::uint64_t p : {7u, 13u}) {
        PrimeField f(p);
        Hypersurface<PrimeField> x(fermat_form(f, 3, 3));
        auto c = enumerate_kplanes(x, 1);
        o.check(c.count == 27, "F_" + std::to_string(p) + " count " + std::to_string(c.count));
        for (const auto& l : *c.planes) {
            o.check(contains(x, l), "line not contained");
            auto t = diagnose(x, l, 7);
            o.check(t.tangent_dim() == 0, "tangent_dim " + std::to_string(t.tangent_dim()));
        }
    }
    return o;
}

Outcome ruling_count() {
    Outcome o;
    for (std::uint64_t q : {3u, 5u, 7u, 11u}) {
        PrimeField f(q);
        Hypersurface<PrimeField> x(parse_form("x0*x3 - x1*x2", 4, f));
        auto c = enumerate_kplanes(x, 1);
        o.check(c.count == 2 * (q + 1), "F_" + std::to_string(q) + " count " + std::to_string(c.count));
    }
    auto est = dimension_estimate(parse_form("x0*x3 - x1*x2", 4, RationalField{}), 1, 5, 13);
    o.check(est.estimate == 1 && est.expected == 1 && est.expected == 2 * 3 - 2 - 3,
            "estimate " + std::to_string(est.estimate) + " expected " + est.expected.str());
    return o;
}

Outcome delta_bridge() {
    Outcome o;
    std::size_t lines = 0;
    for (const auto& cs : census_family()) {
        int n = cs.x.ambient_dim();
        for (const auto& l : cs.lines) {
            auto t = diagnose(cs.x, l, 11);
            auto s = normal_bundle_splitting(cs.x, l);
            o.check(n - 1 - t.delta == s.h0_table.at(-1), cs.name + ": n-1-delta != h0(N(-1))");
            ++lines;
        }
    }
    o.check(lines > 0, "no lines tested");
    if (o.pass) o.detail = std::to_string(lines) + " lines on " + std::to_string(census_family().size()) + " hypersurfaces";
    return o;
}

Outcome splitting_constraints() {
    Outcome o;
    std::size_t lines = 0;
    for (const auto& cs : census_family()) {
        int n = cs.x.ambient_dim(), d = cs.x.degree();
        bool quadric3 = cs.name.rfind("quadric threefold", 0) == 0;
        bool cubic2 = n == 3 && d == 3;
        for (const auto& l : cs.lines) {
            auto s = normal_bundle_splitting(cs.x, l);
            int sum = 0, mx = -1000;
            for (int a : s.a) {
                sum += a;
                mx = std::max(mx, a);
            }
            o.check(sum == n - d - 1 && (s.a.empty() || mx <= 1), cs.name + ": bad splitting");
            if (quadric3) o.check(s.free && s.a == std::vector<int>{1, 0}, cs.name + ": expected free {1,0}");
            if (cubic2) o.check(!s.free && s.a == std::vector<int>{-1}, cs.name + ": expected non-free {-1}");
            ++lines;
        }
    }
    if (o.pass) o.detail = std::to_string(lines) + " lines";
    return o;
}

Outcome lemma_bound() {
    Outcome o;
    std::size_t checks = 0;
    for (const auto& cs : census_family()) {
        int n = cs.x.ambient_dim();
        for (const auto& l : cs.lines) {
            auto c = RationalCurve<PrimeField>::line(l);
            for (std::uint64_t i = 0; i < 5; ++i) {
                int h = h0_twisted_tangent(cs.x, c, 0, projective_point(cs.x.field(), 1, i));
                o.check(h <= n, cs.name + ": line exceeds e*n");
                ++checks;
            }
        }
    }
    int conics = 0;
    Rng pick(2024);
    for (std::uint64_t p : {7u, 11u})
        for (int n = 3; n <= 5; ++n)
            for (std::uint64_t seed = 0; seed < 4; ++seed) {
                PrimeField f(p);
                auto ex = example_planed(f, n, 2, 0, 500 + seed);
                auto pt = ex.marked->row(0);
                auto par = quadric_param(ex.x.form(), std::span<const Fp>(pt), seed);
                auto c = conic_on_quadric(par, pick);
                if (!c) {
                    o.check(false, "no conic found");
                    continue;
                }
                o.check(c->lies_on(ex.x) && c->degree() == 2 && basepoint_free(*c), "conic not on X");
                for (std::uint64_t i = 0; i < 5; ++i) {
                    int h = h0_twisted_tangent(ex.x, *c, 0, projective_point(f, 1, i));
                    o.check(h <= 2 * n, "conic exceeds e*n");
                    ++checks;
                }
                ++conics;
            }
    o.check(conics >= 20, "only " + std::to_string(conics) + " conics");
    if (o.pass) o.detail = std::to_string(conics) + " conics, " + std::to_string(checks) + " (curve, q) pairs";
    return o;
}

Outcome tangency_bound() {
    Outcome o;
    int configs = 0, tolerated = 0;
    for (std::uint64_t p : {7u, 11u})
        for (auto [n, d] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {4, 3}})
            for (int r = 1; r <= 2; ++r)
                for (std::uint64_t seed = 0; seed < 2; ++seed) {
                    PrimeField f(p);
                    auto ex = random_smooth(n, d, p, 64, 77 + 1000 * seed + 10 * r + n + 100 * d);
                    Rng rng(derive_seed(seed, p * 100 + r));
                    std::vector<Form<PrimeField>> lower;
                    for (int i = 0; i < r; ++i)
                        lower.push_back(random_form(f, n + 1, 1 + static_cast<int>(rng.below(d - 1)), rng));
                    auto rep = tangency_locus(ex.x.form(), lower);
                    std::uint64_t bound = 8;
                    for (int i = 1; i < r; ++i) bound *= p;
                    ++configs;
                    if (rep.count > bound) {
                        if (singular_search(ex.x).singular)
                            ++tolerated;
                        else
                            o.check(false, "count " + std::to_string(rep.count) + " > " + std::to_string(bound));
                    }
                }
    o.check(configs >= 20, "only " + std::to_string(configs) + " configurations");
    if (o.pass) o.detail = std::to_string(configs) + " configurations, " + std::to_string(tolerated) + " tolerated";
    return o;
}

Outcome residual_identities() {
    Outcome o;
    RationalField qq;
    KPlane<RationalField> g(qq, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    Hypersurface<RationalField> quad(parse_form("x0*x3 - x1*x2", 4, qq));
    Hypersurface<RationalField> cub(parse_form("x0^2*x2 + x1^2*x3 + x2^3 + x3^3", 4, qq));
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        auto a = rng.nonzero_vector(qq, 2);
        for (const auto* x : {&quad, &cub}) {
            auto r = residual_at(*x, g, std::span<const Rational>(a));
            o.check(r.restricted == r.y * Form<RationalField>::variable(qq, 3, 2), "t-division identity");
            auto s = boundary_series(*x, g);
            o.check(s.member(r.fiber) == r.z, "Z(a) differs from the series member");
            for (const auto& c : s.coefficients) o.check(c.is_zero() || c.degree() == 1, "series not linear in a");
        }
        // closed forms: quadric Y = a3 x0 - a2 x1; cubic Y = a2 x0^2 + a3 x1^2 + (a2^3 + a3^3) t^2
        auto an = normalize_projective(qq, a);
        auto rq = residual_at(quad, g, std::span<const Rational>(a));
        Form<RationalField> yq(qq, 3, 1);
        yq.add_term({1, 0, 0}, an[1]);
        yq.add_term({0, 1, 0}, -an[0]);
        o.check(rq.y == yq, "quadric residual closed form");
        auto rc = residual_at(cub, g, std::span<const Rational>(a));
        Form<RationalField> yc(qq, 3, 2);
        yc.add_term({2, 0, 0}, an[0]);
        yc.add_term({0, 2, 0}, an[1]);
        yc.add_term({0, 0, 2}, an[0] * an[0] * an[0] + an[1] * an[1] * an[1]);
        o.check(rc.y == yc, "cubic residual closed form");
    }
    // basepoint freeness: smooth acceptance examples vs the singular control
    auto free_on = [&](const std::string& form, std::uint64_t p) {
        PrimeField f(p);
        Hypersurface<PrimeField> x(parse_form(form, 4, f));
        KPlane<PrimeField> gp(f, {{f.one(), f.zero(), f.zero(), f.zero()}, {f.zero(), f.one(), f.zero(), f.zero()}});
        return basepoint_free_check(x, gp, next_prime(p + 2));
    };
    for (std::uint64_t p : {7u, 11u, 13u}) {
        o.check(free_on("x0*x3 - x1*x2", p).free, "quadric series has a base point");
        o.check(free_on("x0^2*x2 + x1^2*x3 + x2^3 + x3^3", p).free, "cubic series has a base point");
    }
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        PrimeField f(7);
        auto ex = example_planed(f, 3, 3, 1, seed);
        o.check(basepoint_free_check(ex.x, *ex.marked).free, "planed cubic series has a base point");
    }
    auto ctl = free_on("x0*x1*x2 + x0^2*x3 + x2^3 + x3^3", 7);
    o.check(!ctl.free && ctl.witness_ambient && *ctl.witness_ambient == std::vector<Fp>{{0, 7}, {1, 7}, {0, 7}, {0, 7}},
            "singular control not flagged at [0,1,0,0]");
    return o;
}

Outcome quadric_param_identity() {
    Outcome o;
    int tested = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        int n = 2 + static_cast<int>(seed % 4);  // N = 2..5
        PrimeField f(seed % 2 ? 11 : 13);
        auto ex = example_planed(f, n, 2, 0, 900 + seed);
        auto pt = ex.marked->row(0);
        auto par = quadric_param(ex.x.form(), std::span<const Fp>(pt), seed);
        o.check(ex.x.form().substitute(par.components).is_zero(), "Q(p(v)) != 0");
        o.check(par.dominant, "parameterization not dominant");
        ++tested;
    }
    o.detail = std::to_string(tested) + " quadrics";
    return o;
}

const char* kCubic = "x0^2*x2 + x1^2*x3 + x2^3 + x3^3";

Outcome sampler() {
    Outcome o;
    PrimeField f(7);
    Hypersurface<PrimeField> x(parse_form(kCubic, 4, f));
    KPlane<PrimeField> g(f, {{f.one(), f.zero(), f.zero(), f.zero()}, {f.zero(), f.one(), f.zero(), f.zero()}});
    auto rep = unirational_sample(x, g, 2000, 42);
    o.check(rep.all_on_x, "point off X");
    for (const auto& p : rep.points) o.check(is_zero(x.form().eval(p)), "point off X");
    o.check(rep.x_points.has_value(), "X(F_7) not enumerated");
    o.check(rep.hit_fraction && *rep.hit_fraction >= 0.5, "hit fraction below 0.5");
    std::ostringstream d;
    d << rep.distinct << "/" << rep.x_points.value_or(0) << " points hit";
    o.detail = o.pass ? d.str() : o.detail + " (" + d.str() + ")";
    return o;
}

Outcome determinism() {
    Outcome o;
    // library level: identical JSON across reruns and worker counts
    PrimeField f7(7);
    Hypersurface<PrimeField> fermat(fermat_form(f7, 3, 3));
    auto c1 = to_json(enumerate_kplanes(fermat, 1, std::nullopt, 1), true).dump();
    auto c4 = to_json(enumerate_kplanes(fermat, 1, std::nullopt, 4), true).dump();
    o.check(c1 == c4, "census jobs=4 differs from jobs=1");
    Hypersurface<PrimeField> cubic(parse_form(kCubic, 4, f7));
    KPlane<PrimeField> g(f7, {{f7.one(), f7.zero(), f7.zero(), f7.zero()}, {f7.zero(), f7.one(), f7.zero(), f7.zero()}});
    auto s1 = to_json(unirational_sample(cubic, g, 2000, 42, 1), true).dump();
    auto s2 = to_json(unirational_sample(cubic, g, 2000, 42, 1), true).dump();
    auto s4 = to_json(unirational_sample(cubic, g, 2000, 42, 4), true).dump();
    o.check(s1 == s2 && s1 == s4, "sampler JSON not reproducible");

    // CLI level: byte-identical stdout
    std::vector<std::string> runs = {
        "fano census --input " + sample("fermat33.json") + " --k 1 --prime 7 --list",
        "fano census --input " + sample("fermat33.json") + " --k 1 --prime 13 --list",
        "fano census --input " + sample("quadric3.json") + " --k 1 --prime 11 --list",
        "fano estimate --input " + sample("quadric3.json") + " --k 1 --primes 5,13",
        "unirat sample --input " + sample("cubic_planed.json") + " --samples 2000 --seed 42 --list",
    };
    for (const auto& args : runs) {
        auto a = run_cli(args), b = run_cli(args);
        o.check(a == b, "rerun differs: " + args);
        o.check(a.size() > 6 && a.substr(a.size() - 4) == "rc=0", "nonzero exit: " + args);
    }
    for (std::uint64_t p : {7u, 13u}) {
        std::string base = "fano census --input " + sample("fermat33.json") + " --k 1 --list --prime " + std::to_string(p);
        o.check(run_cli(base + " --jobs 1") == run_cli(base + " --jobs 4"), "CLI census jobs=4 differs at p=" + std::to_string(p));
    }
    std::string sbase = "unirat sample --input " + sample("cubic_planed.json") + " --samples 2000 --seed 42 --list";
    o.check(run_cli(sbase + " --jobs 1") == run_cli(sbase + " --jobs 4"), "CLI sampler jobs=4 differs");
    return o;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "bound table exactness", 1.0, bounds_table},
        {2, "27 lines on the Fermat cubic over F_7 and F_13", 30.0, twenty_seven_lines},
        {3, "ruling count 2(q+1) and dimension estimate", 10.0, ruling_count},
        {4, "delta bridge n-1-delta = h0(N(-1))", 0, delta_bridge},
        {5, "splitting constraints", 0, splitting_constraints},
        {6, "h0(f*T_X(-q)) <= e*n for lines and conics", 0, lemma_bound},
        {7, "tangency locus counts <= 8 p^(r-1)", 0, tangency_bound},
        {8, "residual identities and basepoint freeness", 0, residual_identities},
        {9, "quadric parameterization identity", 0, quadric_param_identity},
        {10, "unirational sampler on the cubic surface", 60.0, sampler},
        {11, "determinism across reruns and worker counts", 0, determinism},
    };
    // the shared census family is built once, outside the timed criteria
    census_family();
    int failed = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = seconds_since(t0);
        if (c.time_limit > 0 && secs >= c.time_limit) {
            o.pass = false;
            o.detail += (o.detail.empty() ? "" : "; ") + std::string("over the time limit");
        }
        char line[160];
        std::snprintf(line, sizeof line, "%s [%2d] %-52s %8.3f s", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs);
        std::cout << line;
        if (!o.detail.empty()) std::cout << "  (" << o.detail << ")";
        std::cout << std::endl;
        if (!o.pass) ++failed;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
