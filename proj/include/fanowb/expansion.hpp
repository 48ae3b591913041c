#pragma once

// Local expansions of a hypersurface equation around a point and around a
// linear subspace, linear parts of the resulting local Fano equations, the
// rank delta, downward index sets, and tangency loci.
//
// Coordinates: an expansion fixes an invertible matrix A and rewrites f in
// y-coordinates, x = A y. The first k columns of A span the center, so the
// center becomes V(y_k, ..., y_n). The fiber coordinates are y_k..y_n; a
// fiber point a stands for the plane spanned by the center and A (0,..,0,a).

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fanowb/hypersurface.hpp"

namespace fanowb {

/// Multiset on {0..k-1}, stored as sorted indices.
using Multiset = std::vector<int>;

inline std::vector<Multiset> multisets_of_size(int k, int size) {
    std::vector<Multiset> out;
    if (size == 0) {
        out.push_back({});
        return out;
    }
    if (k <= 0) return out;
    Multiset cur(size, 0);
    for (;;) {
        out.push_back(cur);
        int i = size - 1;
        while (i >= 0 && cur[i] == k - 1) --i;
        if (i < 0) break;
        int v = cur[i] + 1;
        for (int j = i; j < size; ++j) cur[j] = v;
    }
    return out;
}

/// T: all multisets on {0..k-1} of size at most d-1, largest first.
inline std::vector<Multiset> index_set(int k, int d) {
    std::vector<Multiset> t;
    for (int s = d - 1; s >= 0; --s)
        for (auto& m : multisets_of_size(k, s)) t.push_back(std::move(m));
    return t;
}

inline Exponent multiset_exponent(const Multiset& m, int k) {
    Exponent e(k, 0);
    for (int i : m) ++e[i];
    return e;
}

inline std::string render_multiset(const Multiset& m) {
    std::string s = "{";
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
    return s + "}";
}

/// Downward: every I with |I| < d-1 has I + {j} in the family for all j < k.
inline bool is_downward(const std::vector<Multiset>& family, int k, int d) {
    std::set<Multiset> s;
    for (auto m : family) {
        require(static_cast<int>(m.size()) <= d - 1, ErrorKind::IndexOutOfRange,
                render_multiset(m) + " has size >= d");
        for (int i : m) require(i >= 0 && i < k, ErrorKind::IndexOutOfRange, render_multiset(m) + " leaves {0..k-1}");
        std::sort(m.begin(), m.end());
        s.insert(m);
    }
    for (const auto& m : s) {
        if (static_cast<int>(m.size()) >= d - 1) continue;
        for (int j = 0; j < k; ++j) {
            Multiset up = m;
            up.insert(std::upper_bound(up.begin(), up.end(), j), j);
            if (!s.count(up)) return false;
        }
    }
    return true;
}

namespace detail {

/// f(A y) with x = A y.
template <ExactField F>
Form<F> change_coordinates(const Form<F>& f, const Matrix<F>& a) {
    std::vector<Form<F>> images;
    for (int j = 0; j < a.rows(); ++j) images.push_back(Form<F>::linear(f.field(), a.row(j)));
    return f.substitute(images);
}

template <ExactField F>
Matrix<F> columns_to_matrix(const F& field, const std::vector<std::vector<typename F::value_type>>& cols) {
    return Matrix<F>::from_rows(field, cols).transpose();
}

}  // namespace detail

template <ExactField F>
struct PointExpansion {
    using value_type = typename F::value_type;
    KPlane<F> center;
    Matrix<F> change;          // A, x = A y; column 0 is the center
    std::vector<value_type> x0_form;  // the linear form used as y0 (up to scale)
    Form<F> transformed;       // f(A y)
    std::vector<Form<F>> pieces;  // pieces[i-1] = f_i, a form in y1..yn
    std::optional<std::uint64_t> seed;

    Form<F> reassemble() const {
        const auto& field = transformed.field();
        int nv = transformed.nvars(), d = transformed.degree();
        Form<F> r(field, nv, d);
        for (int i = 1; i <= d; ++i) r += pieces[i - 1] * Form<F>::variable(field, nv, 0).pow(d - i);
        return r;
    }
};

/// f = sum_i f_i y0^{d-i} around a point. If `x0` is empty a random linear
/// form not vanishing at the point is drawn from `seed`.
template <ExactField F>
PointExpansion<F> expand_at_point(const Hypersurface<F>& x, std::span<const typename F::value_type> point,
                                  std::optional<std::vector<typename F::value_type>> x0 = std::nullopt,
                                  std::uint64_t seed = 0) {
    using V = typename F::value_type;
    const auto& field = x.field();
    int nv = x.form().nvars();
    require(static_cast<int>(point.size()) == nv, ErrorKind::DimensionMismatch, "point has wrong length");
    require(!is_zero_vector<F>(point), ErrorKind::InvalidInput, "zero vector is not a projective point");
    require(is_zero(x.form().eval(point)), ErrorKind::PointNotOnX, "point is not on X");
    auto pairing = [&](const std::vector<V>& l) {
        V s = field.zero();
        for (int i = 0; i < nv; ++i) s = s + l[i] * point[i];
        return s;
    };
    std::optional<std::uint64_t> used_seed;
    std::vector<V> lam;
    if (x0) {
        require(static_cast<int>(x0->size()) == nv, ErrorKind::DimensionMismatch, "x0 form has wrong length");
        lam = *x0;
        require(!is_zero(pairing(lam)), ErrorKind::CoordinateVanishesAtCenter, "the chosen x0 vanishes at the point");
    } else {
        Rng rng(seed);
        used_seed = seed;
        do lam = rng.vector(field, nv);
        while (is_zero(pairing(lam)));
    }
    auto ker = nullspace_rank(Matrix<F>::from_rows(field, {lam})).basis;
    std::vector<std::vector<V>> cols{std::vector<V>(point.begin(), point.end())};
    for (auto& v : ker) cols.push_back(std::move(v));
    Matrix<F> a = detail::columns_to_matrix(field, cols);
    Form<F> g = detail::change_coordinates(x.form(), a);
    int d = g.degree();
    std::vector<Form<F>> pieces;
    for (int i = 1; i <= d; ++i) pieces.emplace_back(field, nv, i);
    for (const auto& [e, c] : g.terms()) {
        int i = d - e[0];
        require(i >= 1, ErrorKind::InvariantViolation, "y0^d term survives at a point of X");
        Exponent r = e;
        r[0] = 0;
        pieces[i - 1].add_term(r, c);
    }
    return {KPlane<F>::point(field, std::vector<V>(point.begin(), point.end())), a, lam, g, pieces, used_seed};
}

template <ExactField F>
struct PlaneExpansion {
    using value_type = typename F::value_type;
    KPlane<F> center;  // (k-1)-plane, k basis rows
    int k = 0;
    Matrix<F> change;  // A, x = A y
    Form<F> transformed;
    std::vector<Multiset> indices;  // T, largest first
    std::vector<Form<F>> coeffs;    // coeffs[i] = c_{indices[i]}, a form in y_k..y_n

    int ambient_dim() const { return change.rows() - 1; }
    int fiber_dim() const { return ambient_dim() - k; }

    const Form<F>& coefficient(Multiset m) const {
        std::sort(m.begin(), m.end());
        for (std::size_t i = 0; i < indices.size(); ++i)
            if (indices[i] == m) return coeffs[i];
        fail(ErrorKind::IndexOutOfRange, render_multiset(m) + " is not in T");
    }

    Form<F> reassemble() const {
        const auto& field = transformed.field();
        int nv = transformed.nvars();
        Form<F> r(field, nv, transformed.degree());
        for (std::size_t i = 0; i < indices.size(); ++i) {
            Exponent e(nv, 0);
            for (int j : indices[i]) ++e[j];
            r += coeffs[i] * Form<F>::monomial(field, e, field.one());
        }
        return r;
    }

    /// Padded y-vector (0,..,0,a) for a fiber point a.
    std::vector<value_type> fiber_y(std::span<const value_type> a) const {
        require(static_cast<int>(a.size()) == fiber_dim() + 1, ErrorKind::DimensionMismatch, "fiber point length");
        std::vector<value_type> y(k, change.field().zero());
        y.insert(y.end(), a.begin(), a.end());
        return y;
    }

    /// The k-plane spanned by the center and the fiber point a.
    KPlane<F> fiber_plane(std::span<const value_type> a) const {
        require(!is_zero_vector<F>(a), ErrorKind::InvalidInput, "zero fiber vector");
        return center.extended_by(change.apply(fiber_y(a)));
    }

    /// Normalized fiber coordinates of a k-plane containing the center.
    std::vector<value_type> fiber_point_of(const KPlane<F>& phi) const {
        require(phi.dim() == k && phi.contains(center), ErrorKind::NotNested, "plane does not contain the center");
        auto inv = change.inverse_matrix();
        for (int i = 0; i <= k; ++i) {
            auto y = inv->apply(phi.row(i));
            std::vector<value_type> a(y.begin() + k, y.end());
            if (!is_zero_vector<F>(a)) return normalize_projective(change.field(), a);
        }
        fail(ErrorKind::InvariantViolation, "plane reduces to its center");
    }
};

/// Default change of coordinates: the center's RREF rows, then the
/// standard vectors of its non-pivot columns.
template <ExactField F>
Matrix<F> default_change(const KPlane<F>& center) {
    const auto& field = center.field();
    int nv = center.ambient_dim() + 1;
    std::vector<std::vector<typename F::value_type>> cols = center.basis().row_vectors();
    for (int j : center.complement_columns()) {
        std::vector<typename F::value_type> e(nv, field.zero());
        e[j] = field.one();
        cols.push_back(e);
    }
    return detail::columns_to_matrix(field, cols);
}

/// f = sum_{I in T} c_I y^I along a (k-1)-plane contained in X.
template <ExactField F>
PlaneExpansion<F> expand_at_plane(const Hypersurface<F>& x, const KPlane<F>& center, const Matrix<F>& a) {
    const auto& field = x.field();
    int nv = x.form().nvars();
    require(center.ambient_dim() + 1 == nv, ErrorKind::DimensionMismatch, "center lives in another space");
    require(contains(x, center), ErrorKind::PlaneNotInX, "center is not contained in X");
    int k = center.dim() + 1;
    require(a.rows() == nv && a.cols() == nv && a.rank() == nv, ErrorKind::InvalidInput,
            "coordinate change must be an invertible square matrix");
    {
        std::vector<std::vector<typename F::value_type>> first;
        for (int i = 0; i < k; ++i) first.push_back(a.col(i));
        require(KPlane<F>(field, first) == center, ErrorKind::InvalidInput,
                "the first k columns of the coordinate change must span the center");
    }
    Form<F> g = detail::change_coordinates(x.form(), a);
    int d = g.degree();
    auto t = index_set(k, d);
    std::map<Exponent, std::size_t> where;
    std::vector<Form<F>> coeffs;
    for (std::size_t i = 0; i < t.size(); ++i) {
        where[multiset_exponent(t[i], k)] = i;
        coeffs.emplace_back(field, nv, d - static_cast<int>(t[i].size()));
    }
    for (const auto& [e, c] : g.terms()) {
        Exponent head(e.begin(), e.begin() + k);
        auto it = where.find(head);
        require(it != where.end(), ErrorKind::InvariantViolation, "a pure center monomial survives");
        Exponent r = e;
        std::fill(r.begin(), r.begin() + k, 0);
        coeffs[it->second].add_term(r, c);
    }
    return {center, k, a, g, t, coeffs};
}

template <ExactField F>
PlaneExpansion<F> expand_at_plane(const Hypersurface<F>& x, const KPlane<F>& center) {
    return expand_at_plane(x, center, default_change(center));
}

template <ExactField F>
struct TangentDiagnostics {
    using value_type = typename F::value_type;
    int k = 0;                        // center has k basis vectors; 1 for a point expansion
    int ambient_dim = 0;
    std::vector<value_type> at;       // normalized fiber point
    int chart = 0;                    // fiber coordinate set to 1 (index into at)
    std::vector<Multiset> indices;
    std::vector<std::vector<value_type>> linear_parts;  // over y_k..y_n, chart entry 0
    int delta = 0;
    std::optional<std::vector<Multiset>> downward_set;
    std::vector<std::uint64_t> seeds;
    int attempts = 0;

    int tangent_dim() const { return ambient_dim - k - delta; }

    /// Linear part i as a form in x_k..x_n.
    Form<F> linear_form(const F& field, std::size_t i) const {
        std::vector<value_type> full(k, field.zero());
        full.insert(full.end(), linear_parts[i].begin(), linear_parts[i].end());
        return Form<F>::linear(field, full);
    }
};

namespace detail {

/// Linear parts at fiber point a of forms in y_k..y_n (forms carry all n+1
/// variables; the first k are absent).
template <ExactField F>
TangentDiagnostics<F> linear_parts_at(const F& field, int k, const std::vector<Multiset>& indices,
                                      const std::vector<Form<F>>& forms, std::span<const typename F::value_type> a) {
    using V = typename F::value_type;
    int nv = forms.empty() ? k + static_cast<int>(a.size()) : forms.front().nvars();
    require(static_cast<int>(a.size()) == nv - k, ErrorKind::DimensionMismatch, "fiber point length");
    require(!is_zero_vector<F>(a), ErrorKind::InvalidInput, "zero fiber vector");
    TangentDiagnostics<F> t;
    t.k = k;
    t.ambient_dim = nv - 1;
    t.at = normalize_projective(field, std::vector<V>(a.begin(), a.end()));
    while (is_zero(t.at[t.chart])) ++t.chart;
    t.indices = indices;
    std::vector<V> y(k, field.zero());
    y.insert(y.end(), t.at.begin(), t.at.end());
    for (std::size_t i = 0; i < forms.size(); ++i) {
        require(is_zero(forms[i].eval(y)), ErrorKind::NotAFanoPoint,
                "equation " + render_multiset(indices[i]) + " does not vanish at the fiber point");
        auto g = forms[i].gradient_at(y);
        std::vector<V> lp(g.begin() + k, g.end());
        lp[t.chart] = field.zero();
        t.linear_parts.push_back(std::move(lp));
    }
    t.delta = rank_of(field, t.linear_parts, nv - k);
    return t;
}

/// Greedy downward basis: scan T largest first; take I when its linear
/// part raises the rank and all of I + {j} are already taken.
template <ExactField F>
std::vector<Multiset> greedy_downward(const F& field, const TangentDiagnostics<F>& t, int d) {
    std::set<Multiset> taken;
    std::vector<Multiset> order;
    Matrix<F> acc(field, 0, static_cast<int>(t.at.size()));
    int rank = 0;
    for (std::size_t i = 0; i < t.indices.size(); ++i) {
        const auto& m = t.indices[i];
        if (static_cast<int>(m.size()) < d - 1) {
            bool closed = true;
            for (int j = 0; j < t.k && closed; ++j) {
                Multiset up = m;
                up.insert(std::upper_bound(up.begin(), up.end(), j), j);
                closed = taken.count(up) > 0;
            }
            if (!closed) continue;
        }
        Matrix<F> next = acc;
        next.append_row(t.linear_parts[i]);
        int r = next.rank();
        if (r > rank) {
            acc = std::move(next);
            rank = r;
            taken.insert(m);
            order.push_back(m);
        }
    }
    return order;
}

}  // namespace detail

template <ExactField F>
TangentDiagnostics<F> linear_diagnostics(const PointExpansion<F>& e, std::span<const typename F::value_type> a) {
    const auto& field = e.transformed.field();
    int d = e.transformed.degree();
    std::vector<Multiset> idx;
    for (int i = 1; i <= d; ++i) idx.push_back(Multiset(d - i, 0));
    auto t = detail::linear_parts_at(field, 1, idx, e.pieces, a);
    if (e.seed) t.seeds.push_back(*e.seed);
    t.attempts = 1;
    return t;
}

template <ExactField F>
TangentDiagnostics<F> linear_diagnostics(const PlaneExpansion<F>& e, std::span<const typename F::value_type> a) {
    auto t = detail::linear_parts_at(e.transformed.field(), e.k, e.indices, e.coeffs, a);
    t.attempts = 1;
    return t;
}

inline constexpr int kDefaultDownwardRetries = 32;

/// Diagnoses the k-plane phi on X (k = phi.dim() >= 1): draws a random
/// (k-1)-plane center inside phi and random complementary coordinates,
/// computes delta and a downward basis of the linear parts. Retries with a
/// fresh center until the greedy basis has size delta.
template <ExactField F>
TangentDiagnostics<F> diagnose(const Hypersurface<F>& x, const KPlane<F>& phi, std::uint64_t seed,
                               int retries = kDefaultDownwardRetries) {
    using V = typename F::value_type;
    const auto& field = x.field();
    int k = phi.dim(), nv = x.form().nvars();
    require(k >= 1, ErrorKind::InvalidInput, "diagnosed plane must have dimension >= 1");
    require(contains(x, phi), ErrorKind::NotAFanoPoint, "plane is not contained in X");
    std::vector<std::uint64_t> seeds;
    for (int attempt = 0; attempt < retries; ++attempt) {
        std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(attempt));
        seeds.push_back(s);
        Rng rng(s);
        Matrix<F> mix(field, k + 1, k + 1);
        do {
            for (int i = 0; i <= k; ++i)
                for (int j = 0; j <= k; ++j) mix(i, j) = rng.element(field);
        } while (mix.rank() < k + 1);
        auto inner = (mix * phi.basis()).row_vectors();
        std::vector<std::vector<V>> cols(inner.begin(), inner.end());
        Matrix<F> a(field, nv, nv);
        for (;;) {
            auto trial = cols;
            while (static_cast<int>(trial.size()) < nv) trial.push_back(rng.vector(field, nv));
            a = detail::columns_to_matrix(field, trial);
            if (a.rank() == nv) break;
        }
        std::vector<std::vector<V>> lam(inner.begin(), inner.begin() + k);
        auto e = expand_at_plane(x, KPlane<F>(field, lam), a);
        std::vector<V> at(nv - k, field.zero());
        at[0] = field.one();
        auto t = linear_diagnostics(e, std::span<const V>(at));
        auto down = detail::greedy_downward(field, t, x.degree());
        if (static_cast<int>(down.size()) == t.delta) {
            t.downward_set = std::move(down);
            t.seeds = seeds;
            t.attempts = attempt + 1;
            return t;
        }
    }
    fail(ErrorKind::DownwardSetNotFound,
         "no downward basis after " + std::to_string(retries) + " centers (seed " + std::to_string(seed) + ")");
}

struct TangencyReport {
    std::vector<std::vector<Fp>> points;  // canonical order
    std::uint64_t count = 0;
    int dim_estimate = -1;  // round(log_p count), -1 when empty
};

inline int log_estimate(std::uint64_t count, std::uint64_t p) {
    if (count == 0) return -1;
    return static_cast<int>(std::lround(std::log(static_cast<double>(count)) / std::log(static_cast<double>(p))));
}

/// Points of V(h, lower...) where grad h lies in the span of the gradients
/// of the lower forms, by exhaustive scan of P^n(F_p).
inline TangencyReport tangency_locus(const Form<PrimeField>& h, const std::vector<Form<PrimeField>>& lower,
                                     int jobs = 1, std::uint64_t budget = kDefaultPointBudget) {
    const auto& field = h.field();
    int nv = h.nvars(), n = nv - 1;
    for (const auto& g : lower) {
        require(g.nvars() == nv, ErrorKind::DimensionMismatch, "lower forms use another variable set");
        require(g.field() == field, ErrorKind::DimensionMismatch, "lower forms live over another field");
    }
    auto total = projective_point_count(field.size(), n);
    require(total && *total <= budget, ErrorKind::SearchSpaceTooLarge, "tangency scan exceeds the point budget");
    auto dh = partial_derivatives(h);
    std::vector<std::vector<Form<PrimeField>>> dl;
    for (const auto& g : lower) dl.push_back(partial_derivatives(g));
    auto hit = [&](const std::vector<Fp>& q) {
        if (!is_zero(h.eval(q))) return false;
        for (const auto& g : lower)
            if (!is_zero(g.eval(q))) return false;
        Matrix<PrimeField> m(field, 0, nv);
        for (const auto& grads : dl) {
            std::vector<Fp> row;
            for (const auto& gi : grads) row.push_back(gi.eval(q));
            m.append_row(row);
        }
        int r = m.rank();
        std::vector<Fp> row;
        for (const auto& gi : dh) row.push_back(gi.eval(q));
        m.append_row(row);
        return m.rank() == r;
    };
    std::size_t chunks = jobs <= 1 ? 1 : static_cast<std::size_t>(jobs) * 8;
    std::uint64_t per = (*total + chunks - 1) / chunks;
    std::vector<std::vector<std::vector<Fp>>> found(chunks);
    parallel_for(chunks, jobs, [&](std::size_t c) {
        std::uint64_t lo = c * per, hi = std::min<std::uint64_t>(*total, lo + per);
        for (std::uint64_t i = lo; i < hi; ++i) {
            auto q = projective_point(field, n, i);
            if (hit(q)) found[c].push_back(std::move(q));
        }
    });
    TangencyReport rep;
    for (auto& f : found)
        for (auto& q : f) rep.points.push_back(std::move(q));
    rep.count = rep.points.size();
    rep.dim_estimate = log_estimate(rep.count, field.size());
    return rep;
}

}  // namespace fanowb
