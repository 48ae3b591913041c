// fanowb: command-line front end. Every command prints one JSON report on
// stdout (or flattened "key = value" lines with --text); errors go to stderr.
// Exit codes: 0 ok, 2 input error, 3 budget exhausted, 4 internal invariant.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fanowb/fanowb.hpp"

using namespace fanowb;

namespace {

struct Options {
    std::string input;
    std::optional<std::uint64_t> prime;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::uint64_t budget = kDefaultPointBudget;
    bool json = false;
    bool text = false;
    bool timing = false;
    bool list = false;

    // geometry
    std::string point, center, line, gamma, x0, at, curve, lower, vanish, primes;
    std::optional<int> through;
    int k = 1, m = 0, n = 3, d = 3, e = 1, s = -1, r = -1, x = 6, attempts = kDefaultSmoothRetries;
    std::uint64_t samples = 2000;
    std::uint64_t cap = kDefaultCensusCap;
    std::optional<std::uint64_t> second_prime;
    double threshold = 0.5;
    int retries = kDefaultSampleRetries;
    bool allow_large = false;
    std::string output;
};

Options opt;

/// Thrown for usage problems detected after parsing (missing --input, ...).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

HypersurfaceFile load() {
    if (opt.input.empty()) throw UsageError("--input is required for this command");
    return read_hypersurface_file(opt.input);
}

/// Runs `fn` with the field chosen by --prime, else the file's field.
template <class Fn>
Json with_field(const HypersurfaceFile& h, Fn&& fn) {
    auto p = opt.prime ? opt.prime : h.prime;
    if (p) return fn(PrimeField(*p));
    return fn(RationalField{});
}

/// Same, but the command needs a finite field.
template <class Fn>
Json with_prime(const HypersurfaceFile& h, Fn&& fn) {
    auto p = opt.prime ? opt.prime : h.prime;
    if (!p) fail(ErrorKind::Unsupported, "this command needs a prime field; pass --prime");
    return fn(PrimeField(*p));
}

template <ExactField F>
std::vector<typename F::value_type> parse_vector(const F& field, const std::string& text, const char* flag) {
    if (text.empty()) throw UsageError(std::string(flag) + " is required for this command");
    auto rows = parse_rows(field, text);
    require(rows.size() == 1, ErrorKind::InvalidInput, std::string(flag) + " takes a single vector");
    return rows.front();
}

template <ExactField F>
KPlane<F> parse_plane(const F& field, const std::string& text, const char* flag) {
    if (text.empty()) throw UsageError(std::string(flag) + " is required for this command");
    return KPlane<F>(field, parse_rows(field, text));
}

/// --gamma rows, else marked plane --through (default 0).
template <ExactField F>
KPlane<F> gamma_plane(const HypersurfaceFile& h, const F& field) {
    if (!opt.gamma.empty()) return parse_plane(field, opt.gamma, "--gamma");
    auto marked = build_marked_planes(h, field);
    int idx = opt.through.value_or(0);
    require(idx >= 0 && idx < static_cast<int>(marked.size()), ErrorKind::InvalidInput,
            "no marked plane " + std::to_string(idx) + " in the input; pass --gamma");
    return marked[idx];
}

template <ExactField F>
std::vector<Form<F>> parse_forms(const F& field, const std::string& text, int nvars, const char* flag) {
    std::vector<Form<F>> out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ';'))
        if (piece.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_form(piece, nvars, field));
    require(!out.empty() || text.empty(), ErrorKind::InvalidInput, std::string(flag) + " has no forms");
    return out;
}

template <ExactField F>
RationalCurve<F> parse_curve(const Hypersurface<F>& x, const F& field) {
    if (!opt.line.empty()) return RationalCurve<F>::line(parse_plane(field, opt.line, "--line"));
    if (opt.curve.empty()) throw UsageError("--curve or --line is required for this command");
    auto comps = parse_forms(field, opt.curve, 2, "--curve");
    require(static_cast<int>(comps.size()) == x.ambient_dim() + 1, ErrorKind::DimensionMismatch,
            "--curve needs n+1 binary forms separated by ';'");
    return RationalCurve<F>(std::move(comps));
}

std::pair<std::uint64_t, std::uint64_t> prime_pair() {
    if (opt.primes.empty()) return {5, 13};
    auto comma = opt.primes.find(',');
    if (comma == std::string::npos) throw UsageError("--primes takes two primes \"p1,p2\"");
    try {
        return {std::stoull(opt.primes.substr(0, comma)), std::stoull(opt.primes.substr(comma + 1))};
    } catch (const std::exception&) {
        throw UsageError("--primes takes two primes \"p1,p2\"");
    }
}

// ---------------------------------------------------------------- commands

Json cmd_expand_point() {
    auto h = load();
    return with_field(h, [&](const auto& field) -> Json {
        auto x = build_hypersurface(h, field);
        auto p = parse_vector(field, opt.point, "--point");
        std::optional<std::vector<std::decay_t<decltype(p.front())>>> x0;
        if (!opt.x0.empty()) x0 = parse_vector(field, opt.x0, "--x0");
        auto e = expand_at_point(x, std::span<const std::decay_t<decltype(p.front())>>(p), x0, opt.seed);
        Json j = to_json(e);
        j["reassembly_ok"] = e.reassemble() == e.transformed;
        if (!opt.at.empty()) {
            auto a = parse_vector(field, opt.at, "--at");
            j["diagnostics"] = to_json(linear_diagnostics(e, std::span<const std::decay_t<decltype(a.front())>>(a)));
        }
        return j;
    });
}

Json cmd_expand_plane() {
    auto h = load();
    return with_field(h, [&](const auto& field) -> Json {
        auto x = build_hypersurface(h, field);
        auto c = parse_plane(field, opt.center, "--center");
        auto e = expand_at_plane(x, c);
        Json j = to_json(e);
        j["reassembly_ok"] = e.reassemble() == e.transformed;
        if (!opt.at.empty()) {
            auto a = parse_vector(field, opt.at, "--at");
            j["diagnostics"] = to_json(linear_diagnostics(e, std::span<const std::decay_t<decltype(a.front())>>(a)));
        }
        return j;
    });
}

Json cmd_expand_diagnose() {
    auto h = load();
    return with_field(h, [&](const auto& field) -> Json {
        auto x = build_hypersurface(h, field);
        auto phi = parse_plane(field, opt.center, "--center");
        Json j;
        j["plane"] = to_json(phi);
        j["diagnostics"] = to_json(diagnose(x, phi, opt.seed));
        return j;
    });
}

Json cmd_tangency() {
    auto h = load();
    return with_prime(h, [&](const PrimeField& field) -> Json {
        auto x = build_hypersurface(h, field);
        auto lower = parse_forms(field, opt.lower, x.form().nvars(), "--lower");
        auto rep = tangency_locus(x.form(), lower, opt.jobs, opt.budget);
        Json j = to_json(rep, opt.list);
        j["r"] = lower.size();
        j["singular_check"] = to_json(singular_search(x, 1, opt.jobs, opt.budget));
        return j;
    });
}

Json cmd_fano_fiber() {
    auto h = load();
    return with_field(h, [&](const auto& field) -> Json {
        using F = std::decay_t<decltype(field)>;
        auto x = build_hypersurface(h, field);
        auto fib = fano_fiber(x, parse_plane(field, opt.center, "--center"));
        Json j;
        j["center"] = to_json(fib.expansion.center);
        j["expected_dim"] = fib.expected_dim;
        Json eqs = Json::array();
        for (std::size_t i = 0; i < fib.expansion.indices.size(); ++i)
            eqs.push_back(Json{{"I", render_multiset(fib.expansion.indices[i])}, {"c", to_json(fib.equations()[i])}});
        j["equations"] = eqs;
        if constexpr (F::is_prime_field) {
            auto pts = fiber_points(fib, opt.budget);
            j["count"] = pts.size();
            Json list = Json::array();
            for (const auto& a : pts)
                list.push_back(Json{{"a", vector_json(a)}, {"tangent_dim", tangent_dim(fib, std::span<const Fp>(a))}});
            j["points"] = list;
        }
        return j;
    });
}

Json cmd_fano_census() {
    auto h = load();
    return with_prime(h, [&](const PrimeField& field) -> Json {
        auto x = build_hypersurface(h, field);
        std::optional<KPlane<PrimeField>> through;
        if (opt.through) through = gamma_plane(h, field);
        auto c = enumerate_kplanes(x, opt.k, through, opt.jobs, opt.budget, opt.list ? opt.cap : 0);
        Json j = to_json(c, opt.list);
        j["expected"] = to_json(expected_dims(x.ambient_dim(), x.degree(), opt.k));
        return j;
    });
}

Json cmd_fano_estimate() {
    auto h = load();
    auto recipe = parse_form(h.form, h.n + 1, RationalField{}, h.d);
    auto [p1, p2] = prime_pair();
    return to_json(dimension_estimate(recipe, opt.k, p1, p2, opt.jobs, opt.budget));
}

Json cmd_curve_splitting() {
    auto h = load();
    return with_field(h, [&](const auto& field) -> Json {
        auto x = build_hypersurface(h, field);
        auto l = parse_plane(field, opt.line, "--line");
        auto st = normal_bundle_splitting(x, l);
        Json j = to_json(st);
        auto diag = diagnose(x, l, opt.seed);
        j["delta"] = diag.delta;
        j["delta_bridge_check"] = x.ambient_dim() - 1 - diag.delta == st.h0_table.at(-1);
        return j;
    });
}

Json cmd_curve_h0() {
    auto h = load();
    return with_field(h, [&](const auto& field) -> Json {
        auto x = build_hypersurface(h, field);
        auto c = parse_curve(x, field);
        std::optional<std::vector<std::decay_t<decltype(field.one())>>> q;
        if (!opt.vanish.empty()) q = parse_vector(field, opt.vanish, "--vanish");
        Json j;
        j["e"] = c.degree();
        j["m"] = opt.m;
        j["vanish_at"] = q ? vector_json(*q) : Json(nullptr);
        j["h0"] = h0_twisted_tangent(x, c, opt.m, q);
        if (q) j["bound_en"] = c.degree() * x.ambient_dim();
        return j;
    });
}

Json cmd_curve_free() {
    auto h = load();
    return with_field(h, [&](const auto& field) -> Json {
        auto x = build_hypersurface(h, field);
        auto c = parse_curve(x, field);
        Json j;
        j["e"] = c.degree();
        j["basepoint_free"] = basepoint_free(c);
        j["free"] = is_free(x, c);
        j["expected_dim"] = to_json(expected_dim_curves(x.ambient_dim(), x.degree(), c.degree()));
        return j;
    });
}

Json cmd_unirat_sample() {
    auto h = load();
    return with_prime(h, [&](const PrimeField& field) -> Json {
        auto x = build_hypersurface(h, field);
        auto g = gamma_plane(h, field);
        auto rep = unirational_sample(x, g, opt.samples, opt.seed, opt.jobs, opt.retries, opt.threshold, opt.budget);
        Json j;
        j["gamma"] = to_json(g);
        Json body = to_json(rep, opt.list);
        for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
        j["threshold_note"] =
            "a dominant map misses O(p^(n-2)) of ~p^(n-1) points, and each tower step also needs a root of Z";
        return j;
    });
}

Json cmd_unirat_quadric() {
    auto h = load();
    return with_field(h, [&](const auto& field) -> Json {
        auto x = build_hypersurface(h, field);
        auto p = parse_vector(field, opt.point, "--point");
        auto q = quadric_param(x.form(), std::span<const std::decay_t<decltype(p.front())>>(p), opt.seed);
        Json j = to_json(q);
        j["identity_ok"] = x.form().substitute(q.components).is_zero();
        return j;
    });
}

Json cmd_unirat_series() {
    auto h = load();
    return with_prime(h, [&](const PrimeField& field) -> Json {
        auto x = build_hypersurface(h, field);
        auto g = gamma_plane(h, field);
        Json j = to_json(boundary_series(x, g));
        if (x.degree() >= 2) j["basepoints"] = to_json(basepoint_free_check(x, g, opt.second_prime, opt.budget));
        return j;
    });
}

Json cmd_unirat_bertini() {
    auto h = load();
    return with_prime(h, [&](const PrimeField& field) -> Json {
        auto x = build_hypersurface(h, field);
        auto g = gamma_plane(h, field);
        require(x.degree() >= 2, ErrorKind::DegreeZeroResidual, "a hyperplane has an empty boundary series");
        return to_json(bertini_strata(boundary_series(x, g).linear_series(), opt.budget));
    });
}

Json cmd_bounds_k0() {
    return Json{{"d", opt.d}, {"k0", to_json(k0(opt.d, opt.allow_large))}};
}

Json cmd_bounds_n0() {
    auto b = n0_power_bound(opt.d, opt.allow_large);
    Json j{{"d", opt.d}, {"n0", to_json(b.value)}, {"bound", "2^" + std::to_string(msb(b.bound))},
           {"within_bound", b.holds}};
    if (b.separate_case) j["note"] = "d = 4 is checked directly; the binomial lemma needs d >= 5";
    return j;
}

Json cmd_bounds_report() {
    std::optional<long> r;
    if (opt.r >= 0) r = opt.r;
    return to_json(threshold_report(opt.n, opt.d, opt.k, opt.s, opt.e, r));
}

Json cmd_bounds_binom() { return to_json(binom_bound_check(opt.x, opt.d)); }

Json example_output(const ExampleHypersurface<PrimeField>& ex) {
    std::vector<KPlane<PrimeField>> marked;
    if (ex.marked) marked.push_back(*ex.marked);
    Json file = hypersurface_json(ex.x, marked);
    if (!opt.output.empty()) {
        std::ofstream out(opt.output);
        if (!out) throw UsageError("cannot write --output " + opt.output);
        out << file.dump(2) << '\n';
    }
    return Json{{"hypersurface", file}, {"seed", ex.seed}, {"attempts", ex.attempts}};
}

std::uint64_t need_prime() {
    if (!opt.prime) throw UsageError("--prime is required for this command");
    return *opt.prime;
}

Json cmd_examples_fermat() { return example_output(example_fermat(PrimeField(need_prime()), opt.n, opt.d)); }
Json cmd_examples_conical() {
    return example_output(example_conical(PrimeField(need_prime()), opt.n, opt.d, opt.seed, opt.attempts, opt.budget));
}
Json cmd_examples_planed() {
    return example_output(
        example_planed(PrimeField(need_prime()), opt.n, opt.d, opt.m, opt.seed, opt.attempts, opt.budget));
}
Json cmd_examples_random() {
    return example_output(random_smooth(opt.n, opt.d, need_prime(), opt.attempts, opt.seed, opt.budget));
}

// ------------------------------------------------------------------ output

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::SearchSpaceTooLarge:
        case ErrorKind::RetryBudgetExhausted:
        case ErrorKind::SmoothnessNotAchieved:
        case ErrorKind::DownwardSetNotFound: return 3;
        case ErrorKind::InvariantViolation: return 4;
        default: return 2;
    }
}

std::string hint(ErrorKind k, const std::string& what) {
    if (what.find("gated") != std::string::npos) return "--allow-large: permit degrees above 6";
    switch (k) {
        case ErrorKind::NotPrime: return "--prime: pass an odd prime below 2^31";
        case ErrorKind::CharacteristicTooSmall: return "--prime: choose p > d";
        case ErrorKind::SearchSpaceTooLarge: return "--budget: raise the point-visit budget or use a smaller prime";
        case ErrorKind::RetryBudgetExhausted: return "--retries: raise the retry budget or change --seed";
        case ErrorKind::SmoothnessNotAchieved: return "--attempts: raise the attempt budget or change --seed";
        case ErrorKind::DownwardSetNotFound: return "--seed: retry with another seed";
        case ErrorKind::PointNotOnX:
        case ErrorKind::PointNotOnQ:
        case ErrorKind::PointSingular: return "--point: pass a smooth point of the hypersurface";
        case ErrorKind::PlaneNotInX: return "--center/--line: pass a plane contained in X";
        case ErrorKind::CurveNotOnX: return "--curve/--line: the curve must lie on X";
        case ErrorKind::NotNested:
        case ErrorKind::PhiInsideX:
        case ErrorKind::DegreeZeroResidual: return "--gamma/--through: pass a plane inside X of degree d >= 2";
        case ErrorKind::TwistOutOfWindow: return "--m: the twist must satisfy e*m >= -1 (m >= 0 with --vanish)";
        case ErrorKind::Unsupported: return "--prime: this command needs a finite field";
        case ErrorKind::NonHomogeneous:
        case ErrorKind::UnknownVariable:
        case ErrorKind::DegreeMismatch: return "--input: check the form string against n and d";
        case ErrorKind::InvariantViolation: return "internal invariant violated; please report with the seed";
        default: return "check the command's flags (--help)";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fanowb: Fano schemes, normal bundles, unirational samplers and bounds"};
    app.require_subcommand(1);
    std::function<Json()> action;
    std::string command;

    auto common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input) sub->add_option("--input", opt.input, "hypersurface JSON file")->check(CLI::ExistingFile);
        sub->add_option("--prime,--field", opt.prime, "prime field (overrides the file)");
        sub->add_option("--seed", opt.seed, "64-bit seed");
        sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--budget", opt.budget, "point-visit budget");
        sub->add_flag("--json", opt.json, "JSON output (default)");
        sub->add_flag("--text", opt.text, "flattened key = value output");
        sub->add_flag("--timing", opt.timing, "add elapsed_ms to the report");
    };
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, Json (*fn)(),
                    bool needs_input = true) {
        auto* sub = parent->add_subcommand(name, desc);
        common(sub, needs_input);
        sub->callback([&, sub, fn] {
            action = fn;
            command = sub->get_parent()->get_name() == app.get_name() ? sub->get_name()
                                                                      : sub->get_parent()->get_name() + " " + sub->get_name();
        });
        return sub;
    };

    auto* expand = app.add_subcommand("expand", "local expansions at a point or plane");
    expand->require_subcommand(1);
    auto* ep = leaf(expand, "point", "f = sum f_i x0^(d-i) at a point", cmd_expand_point);
    ep->add_option("--point", opt.point, "point coordinates \"a,b,...\"");
    ep->add_option("--x0", opt.x0, "linear form used as x0 (random if omitted)");
    ep->add_option("--at", opt.at, "fiber point for linear diagnostics");
    auto* epl = leaf(expand, "plane", "f = sum c_I x^I along a (k-1)-plane", cmd_expand_plane);
    epl->add_option("--center", opt.center, "center rows \"r0;r1;...\"");
    epl->add_option("--at", opt.at, "fiber point for linear diagnostics");
    auto* ed = leaf(expand, "diagnose", "delta and a downward set for a k-plane on X", cmd_expand_diagnose);
    ed->add_option("--center", opt.center, "k-plane rows");

    auto* fano = app.add_subcommand("fano", "Fano fibers, censuses and dimension estimates");
    fano->require_subcommand(1);
    auto* ff = leaf(fano, "fiber", "k-planes through a center", cmd_fano_fiber);
    ff->add_option("--center", opt.center, "center rows");
    auto* fc = leaf(fano, "census", "count F_p-rational k-planes on X", cmd_fano_census);
    fc->add_option("--k", opt.k, "plane dimension")->check(CLI::NonNegativeNumber);
    fc->add_option("--through", opt.through, "only planes through marked plane IDX");
    fc->add_option("--gamma", opt.gamma, "center rows for --through (instead of a marked plane)");
    fc->add_flag("--list", opt.list, "include the planes");
    fc->add_option("--cap", opt.cap, "maximum number of listed planes");
    auto* fe = leaf(fano, "estimate", "log_p census ratio over two primes", cmd_fano_estimate);
    fe->add_option("--k", opt.k, "plane dimension");
    fe->add_option("--primes", opt.primes, "\"p1,p2\" (default 5,13)");

    auto* curve = app.add_subcommand("curve", "rational curves: splitting, h0, freeness");
    curve->require_subcommand(1);
    auto* cs = leaf(curve, "splitting", "normal bundle splitting of a line", cmd_curve_splitting);
    cs->add_option("--line", opt.line, "line rows \"r0;r1\"");
    auto* ch = leaf(curve, "h0", "h0 of the twisted pullback of T_X", cmd_curve_h0);
    ch->add_option("--curve", opt.curve, "n+1 binary forms in x0,x1 separated by ';'");
    ch->add_option("--line", opt.line, "a line instead of --curve");
    ch->add_option("--m", opt.m, "twist");
    ch->add_option("--vanish", opt.vanish, "point (s,t) of P^1 where sections vanish");
    auto* cf = leaf(curve, "free", "freeness of a rational curve", cmd_curve_free);
    cf->add_option("--curve", opt.curve, "n+1 binary forms separated by ';'");
    cf->add_option("--line", opt.line, "a line instead of --curve");

    auto* uni = app.add_subcommand("unirat", "residual construction and sampler");
    uni->require_subcommand(1);
    auto* us = leaf(uni, "sample", "push random parameters through the reduction tower", cmd_unirat_sample);
    us->add_option("--gamma", opt.gamma, "marked plane rows");
    us->add_option("--through", opt.through, "marked plane index in the input");
    us->add_option("--samples", opt.samples, "number of samples");
    us->add_option("--retries", opt.retries, "retries per sample");
    us->add_option("--threshold", opt.threshold, "hit-fraction threshold for dominance evidence");
    us->add_flag("--list", opt.list, "include the distinct points");
    auto* uq = leaf(uni, "quadric", "projection from a point of a quadric", cmd_unirat_quadric);
    uq->add_option("--point", opt.point, "point of the quadric");
    auto* use = leaf(uni, "series", "boundary series and basepoint check", cmd_unirat_series);
    use->add_option("--gamma", opt.gamma, "marked plane rows");
    use->add_option("--through", opt.through, "marked plane index in the input");
    use->add_option("--second-prime", opt.second_prime, "recheck basepoints modulo this prime");
    auto* ub = leaf(uni, "bertini", "singular strata of the boundary series", cmd_unirat_bertini);
    ub->add_option("--gamma", opt.gamma, "marked plane rows");
    ub->add_option("--through", opt.through, "marked plane index in the input");

    auto* bounds = app.add_subcommand("bounds", "closed-form bounds");
    bounds->require_subcommand(1);
    auto* bk = leaf(bounds, "k0", "k0(d)", cmd_bounds_k0, false);
    bk->add_option("--d", opt.d, "degree")->required();
    bk->add_flag("--allow-large", opt.allow_large, "permit d > 6");
    auto* bn = leaf(bounds, "n0", "n0(d) and the 2^(d!) bound", cmd_bounds_n0, false);
    bn->add_option("--d", opt.d, "degree")->required();
    bn->add_flag("--allow-large", opt.allow_large, "permit d > 6");
    auto* br = leaf(bounds, "report", "threshold predicates for (n,d,k,s,e)", cmd_bounds_report, false);
    br->add_option("--n", opt.n)->required();
    br->add_option("--d", opt.d)->required();
    br->add_option("--k", opt.k);
    br->add_option("--s", opt.s);
    br->add_option("--e", opt.e);
    br->add_option("--r", opt.r, "r for the unirationality hypothesis");
    auto* bb = leaf(bounds, "binom", "4 C(x+d,d) < x^d", cmd_bounds_binom, false);
    bb->add_option("--x", opt.x)->required();
    bb->add_option("--d", opt.d)->required();

    auto* ex = app.add_subcommand("examples", "example hypersurfaces (input-file format)");
    ex->require_subcommand(1);
    for (auto [name, fn] : std::vector<std::pair<std::string, Json (*)()>>{{"fermat", cmd_examples_fermat},
                                                                           {"conical", cmd_examples_conical},
                                                                           {"planed", cmd_examples_planed},
                                                                           {"random-smooth", cmd_examples_random}}) {
        auto* s = leaf(ex, name, name + " example", fn, false);
        s->add_option("--n", opt.n);
        s->add_option("--d", opt.d);
        s->add_option("--m", opt.m, "marked plane dimension (planed)");
        s->add_option("--attempts", opt.attempts, "smoothness attempts");
        s->add_option("--output", opt.output, "also write the hypersurface file here");
    }

    auto* tg = leaf(&app, "tangency", "points where V(h) is tangent to V(h_1..h_r)", cmd_tangency);
    tg->add_option("--lower", opt.lower, "forms h_i separated by ';'");
    tg->add_flag("--list", opt.list, "include the points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        auto start = std::chrono::steady_clock::now();
        Json body = action();
        Json report = envelope(command, body);
        report["seed"] = opt.seed;
        if (opt.timing)
            report["elapsed_ms"] =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (opt.text)
            flatten(report, "", std::cout);
        else
            std::cout << report.dump() << '\n';
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\nhint: " << hint(e.kind(), e.what()) << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return 4;
    }
}
