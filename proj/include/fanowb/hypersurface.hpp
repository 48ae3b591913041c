#pragma once

// Hypersurfaces X = V(f) in P^n, plane containment, exhaustive singular
// point search over prime fields, and generators for the standard example
// families (Fermat, conical hyperplane section, hypersurfaces containing a
// marked linear space).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fanowb/form.hpp"
#include "fanowb/parallel.hpp"
#include "fanowb/projective.hpp"
#include "fanowb/random.hpp"

namespace fanowb {

inline constexpr std::uint64_t kDefaultPointBudget = 100'000'000;

template <ExactField F>
class Hypersurface {
public:
    explicit Hypersurface(Form<F> form) : form_(std::move(form)) {
        require(!form_.is_zero(), ErrorKind::InvalidInput, "hypersurface form is zero");
        require(form_.nvars() >= 3, ErrorKind::InvalidInput, "ambient dimension n must be at least 2");
        require(form_.degree() >= 1, ErrorKind::InvalidInput, "degree must be at least 1");
    }

    int ambient_dim() const { return form_.nvars() - 1; }
    int degree() const { return form_.degree(); }
    const Form<F>& form() const { return form_; }
    const F& field() const { return form_.field(); }

private:
    Form<F> form_;
};

/// f restricted to P: a form of degree d in dim(P)+1 variables.
template <ExactField F>
Form<F> restrict_to(const Form<F>& f, const KPlane<F>& plane) {
    require(plane.ambient_dim() + 1 == f.nvars(), ErrorKind::DimensionMismatch,
            "plane lives in P^" + std::to_string(plane.ambient_dim()) + ", form has " +
                std::to_string(f.nvars()) + " variables");
    auto par = plane.parametrization();
    return f.substitute(par);
}

template <ExactField F>
bool contains(const Hypersurface<F>& x, const KPlane<F>& plane) {
    return restrict_to(x.form(), plane).is_zero();
}

template <ExactField F>
bool is_singular_point(const Form<F>& f, const std::vector<Form<F>>& partials,
                       std::span<const typename F::value_type> q) {
    if (!is_zero(f.eval(q))) return false;
    for (const auto& g : partials)
        if (!is_zero(g.eval(q))) return false;
    return true;
}

struct SingularReport {
    bool singular = false;
    std::vector<Fp> witness;  // canonical-order first witness
    int extension = 0;        // r at which the witness was found
    int search_bound = 1;     // R
    std::vector<std::uint64_t> searched_field_sizes;
    std::string note;
};

namespace detail {

/// First singular point of V(f) over F_q in canonical order, scanning in
/// `chunks` disjoint ranges merged by smallest index.
inline std::optional<std::vector<Fp>> first_singular_point(const Form<PrimeField>& f, int jobs,
                                                           std::uint64_t budget) {
    const auto& field = f.field();
    int n = f.nvars() - 1;
    auto total = projective_point_count(field.size(), n);
    if (!total || *total > budget)
        fail(ErrorKind::SearchSpaceTooLarge,
             "P^" + std::to_string(n) + "(F_" + std::to_string(field.size()) + ") exceeds the point budget of " +
                 std::to_string(budget));
    auto partials = partial_derivatives(f);
    if (jobs <= 1) {
        for (std::uint64_t i = 0; i < *total; ++i) {
            auto q = projective_point(field, n, i);
            if (is_singular_point(f, partials, q)) return q;
        }
        return std::nullopt;
    }
    std::size_t chunks = static_cast<std::size_t>(jobs) * 8;
    std::uint64_t per = (*total + chunks - 1) / chunks;
    std::vector<std::optional<std::uint64_t>> found(chunks);
    parallel_for(chunks, jobs, [&](std::size_t c) {
        std::uint64_t lo = c * per, hi = std::min<std::uint64_t>(*total, lo + per);
        for (std::uint64_t i = lo; i < hi; ++i)
            if (is_singular_point(f, partials, projective_point(field, n, i))) {
                found[c] = i;
                return;
            }
    });
    for (const auto& fi : found)
        if (fi) return projective_point(field, n, *fi);
    return std::nullopt;
}

}  // namespace detail

/// Exhaustive singular-point search. r = 1 scans P^n(F_p); for 2 <= r <= R
/// the integer lift of f is reduced modulo the first prime above p^r and
/// rescanned (a stand-in for F_{p^r}; extension fields are not modeled).
inline SingularReport singular_search(const Hypersurface<PrimeField>& x, int max_extension = 1, int jobs = 1,
                                      std::uint64_t budget = kDefaultPointBudget) {
    require(max_extension >= 1, ErrorKind::InvalidInput, "extension bound must be >= 1");
    SingularReport rep;
    rep.search_bound = max_extension;
    rep.note =
        "F_p scan is exhaustive; r > 1 rescans over the next prime above p^r as heuristic evidence, "
        "not over F_{p^r}";
    std::uint64_t p = x.field().size();
    for (int r = 1; r <= max_extension; ++r) {
        std::uint64_t q = p;
        if (r > 1) {
            auto pr = checked_pow(p, r);
            require(pr.has_value(), ErrorKind::SearchSpaceTooLarge, "p^r overflows");
            q = next_prime(*pr);
        }
        PrimeField fq(q);
        Form<PrimeField> g = r == 1 ? x.form() : reduce_form(x.form(), fq);
        rep.searched_field_sizes.push_back(q);
        if (auto w = detail::first_singular_point(g, jobs, budget)) {
            rep.singular = true;
            rep.witness = *w;
            rep.extension = r;
            return rep;
        }
    }
    return rep;
}

/// Every F_p singular point of V(f), in canonical order.
inline std::vector<std::vector<Fp>> singular_points(const Form<PrimeField>& f,
                                                    std::uint64_t budget = kDefaultPointBudget) {
    const auto& field = f.field();
    int n = f.nvars() - 1;
    auto total = projective_point_count(field.size(), n);
    require(total && *total <= budget, ErrorKind::SearchSpaceTooLarge, "point budget exceeded");
    auto partials = partial_derivatives(f);
    std::vector<std::vector<Fp>> out;
    for (std::uint64_t i = 0; i < *total; ++i) {
        auto q = projective_point(field, n, i);
        if (is_singular_point(f, partials, q)) out.push_back(std::move(q));
    }
    return out;
}

/// Form with independent uniform coefficients on every monomial of the
/// given degree in the variables flagged by `use` (all variables if empty).
template <ExactField F>
Form<F> random_form(const F& field, int nvars, int degree, Rng& rng, const std::vector<bool>& use = {}) {
    Form<F> f(field, nvars, degree);
    for (const auto& e : all_exponents(nvars, degree)) {
        bool ok = true;
        if (!use.empty())
            for (int i = 0; i < nvars; ++i)
                if (e[i] && !use[i]) ok = false;
        if (ok) f.add_term(e, rng.element(field));
    }
    return f;
}

template <ExactField F>
Form<F> fermat_form(const F& field, int n, int d) {
    Form<F> f(field, n + 1, d);
    for (int i = 0; i <= n; ++i) {
        Exponent e(n + 1, 0);
        e[i] = static_cast<std::uint16_t>(d);
        f.add_term(e, field.one());
    }
    return f;
}

enum class ExampleKind { Fermat, Conical, Planed };

template <ExactField F>
struct ExampleHypersurface {
    Hypersurface<F> x;
    std::optional<KPlane<F>> marked;  // marked plane (or vertex point)
    std::uint64_t seed = 0;           // seed of the accepted attempt
    int attempts = 1;
};

inline constexpr int kDefaultSmoothRetries = 64;

namespace detail {

inline bool smooth_evidence(const Hypersurface<PrimeField>& x, std::uint64_t budget) {
    return !singular_search(x, 1, 1, budget).singular;
}

}  // namespace detail

/// Fermat hypersurface sum x_i^d.
template <ExactField F>
ExampleHypersurface<F> example_fermat(const F& field, int n, int d) {
    return {Hypersurface<F>(fermat_form(field, n, d)), std::nullopt, 0, 1};
}

/// f = g + x0*h with g in x2..xn only; V(f, x0) is a cone with vertex
/// [0,1,0,...,0], which is returned as the marked point.
inline ExampleHypersurface<PrimeField> example_conical(const PrimeField& field, int n, int d, std::uint64_t seed,
                                                       int retries = kDefaultSmoothRetries,
                                                       std::uint64_t budget = kDefaultPointBudget) {
    require(field.characteristic() > static_cast<std::uint32_t>(d), ErrorKind::CharacteristicTooSmall, "need p > d");
    std::vector<bool> tail(n + 1, true);
    tail[0] = tail[1] = false;
    std::vector<Fp> vertex(n + 1, field.zero());
    vertex[1] = field.one();
    for (int a = 0; a < retries; ++a) {
        std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(a));
        Rng rng(s);
        Form<PrimeField> g = random_form(field, n + 1, d, rng, tail);
        Form<PrimeField> h = random_form(field, n + 1, d - 1, rng);
        Form<PrimeField> f = g + Form<PrimeField>::variable(field, n + 1, 0) * h;
        if (f.is_zero()) continue;
        Hypersurface<PrimeField> x(f);
        if (detail::smooth_evidence(x, budget))
            return {x, KPlane<PrimeField>::point(field, vertex), s, a + 1};
    }
    fail(ErrorKind::SmoothnessNotAchieved, "conical example after " + std::to_string(retries) + " attempts");
}

/// f = sum_{i=m+1}^{n} x_i * g_i with random g_i of degree d-1, so X
/// contains the m-plane V(x_{m+1}, ..., x_n).
inline ExampleHypersurface<PrimeField> example_planed(const PrimeField& field, int n, int d, int m,
                                                      std::uint64_t seed, int retries = kDefaultSmoothRetries,
                                                      std::uint64_t budget = kDefaultPointBudget) {
    require(m >= 0 && 2 * m <= n - 1, ErrorKind::InvalidInput,
            "a smooth hypersurface in P^" + std::to_string(n) + " cannot contain a " + std::to_string(m) + "-plane");
    require(field.characteristic() > static_cast<std::uint32_t>(d), ErrorKind::CharacteristicTooSmall, "need p > d");
    std::vector<std::vector<Fp>> rows;
    for (int i = 0; i <= m; ++i) {
        std::vector<Fp> r(n + 1, field.zero());
        r[i] = field.one();
        rows.push_back(r);
    }
    KPlane<PrimeField> plane(field, rows);
    for (int a = 0; a < retries; ++a) {
        std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(a));
        Rng rng(s);
        Form<PrimeField> f(field, n + 1, d);
        for (int i = m + 1; i <= n; ++i)
            f += Form<PrimeField>::variable(field, n + 1, i) * random_form(field, n + 1, d - 1, rng);
        if (f.is_zero()) continue;
        Hypersurface<PrimeField> x(f);
        if (detail::smooth_evidence(x, budget)) return {x, plane, s, a + 1};
    }
    fail(ErrorKind::SmoothnessNotAchieved, "planed example after " + std::to_string(retries) + " attempts");
}

/// A random hypersurface with no F_p singular point.
inline ExampleHypersurface<PrimeField> random_smooth(int n, int d, std::uint64_t p, int attempts, std::uint64_t seed,
                                                     std::uint64_t budget = kDefaultPointBudget) {
    PrimeField field(p);
    require(p > static_cast<std::uint64_t>(d), ErrorKind::CharacteristicTooSmall, "need p > d");
    for (int a = 0; a < attempts; ++a) {
        std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(a));
        Rng rng(s);
        Form<PrimeField> f = random_form(field, n + 1, d, rng);
        if (f.is_zero()) continue;
        Hypersurface<PrimeField> x(f);
        if (detail::smooth_evidence(x, budget)) return {x, std::nullopt, s, a + 1};
    }
    fail(ErrorKind::SmoothnessNotAchieved, "no smooth sample in " + std::to_string(attempts) + " attempts");
}

}  // namespace fanowb
