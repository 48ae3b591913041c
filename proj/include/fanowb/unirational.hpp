#pragma once

// Residual hypersurfaces, the boundary linear series they cut on a marked
// plane, Bertini strata of linear series, stereographic parameterization of
// quadrics, and a sampler that pushes random parameters through the
// degree-reduction tower down to a quadric.
//
// Frame convention: for a k-plane Gamma in X and a (k+1)-plane Phi
// containing it, Phi gets coordinates (x_0..x_k, t) with the point
// sum_i x_i Gamma_i + t v, where Gamma_i are the RREF rows of Gamma and v
// = A (0,..,0,a) for the default coordinate change A of Gamma and the
// normalized fiber coordinates a of Phi.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fanowb/curves.hpp"
#include "fanowb/expansion.hpp"

namespace fanowb {

template <ExactField F>
struct ResidualDatum {
    using value_type = typename F::value_type;
    KPlane<F> gamma;
    KPlane<F> phi;
    std::vector<value_type> fiber;  // a, normalized
    Matrix<F> frame;                // rows Gamma_0..Gamma_k, v
    Form<F> restricted;             // f on Phi, k+2 variables (t last)
    Form<F> y;                      // restricted / t, degree d-1
    Form<F> z;                      // y at t = 0, a form on Gamma (k+1 variables)

    /// Ambient vector of a point given in frame coordinates.
    std::vector<value_type> ambient(std::span<const value_type> c) const {
        return frame.transpose().apply(c);
    }
};

namespace detail {

template <ExactField F>
void check_gamma(const Hypersurface<F>& x, const KPlane<F>& gamma) {
    require(gamma.ambient_dim() == x.ambient_dim(), ErrorKind::DimensionMismatch, "Gamma lives in another space");
    require(gamma.dim() < x.ambient_dim(), ErrorKind::InvalidInput, "Gamma must be a proper subspace");
    require(contains(x, gamma), ErrorKind::NotNested, "Gamma is not contained in X");
}

}  // namespace detail

/// Residual to Gamma in the (k+1)-plane with fiber coordinates a.
template <ExactField F>
ResidualDatum<F> residual_at(const Hypersurface<F>& x, const KPlane<F>& gamma,
                             std::span<const typename F::value_type> a) {
    using V = typename F::value_type;
    const auto& field = x.field();
    detail::check_gamma(x, gamma);
    require(x.degree() >= 2, ErrorKind::DegreeZeroResidual, "a hyperplane leaves a residual of degree 0");
    int k = gamma.dim(), nv = x.form().nvars();
    require(static_cast<int>(a.size()) == nv - k - 1, ErrorKind::DimensionMismatch, "fiber vector length");
    require(!is_zero_vector<F>(a), ErrorKind::NotNested, "zero fiber vector does not define Phi");
    auto an = normalize_projective(field, std::vector<V>(a.begin(), a.end()));
    Matrix<F> change = default_change(gamma);
    std::vector<V> y(k + 1, field.zero());
    y.insert(y.end(), an.begin(), an.end());
    auto v = change.apply(y);
    auto rows = gamma.basis().row_vectors();
    rows.push_back(v);
    Matrix<F> frame = Matrix<F>::from_rows(field, rows);
    std::vector<Form<F>> images;
    for (int j = 0; j < nv; ++j) images.push_back(Form<F>::linear(field, frame.col(j)));
    Form<F> r = x.form().substitute(images);
    require(!r.is_zero(), ErrorKind::PhiInsideX, "Phi is contained in X");
    int d = x.degree(), t = k + 1;
    Form<F> yf(field, k + 2, d - 1), zf(field, k + 1, d - 1);
    for (const auto& [e, c] : r.terms()) {
        require(e[t] >= 1, ErrorKind::InvariantViolation, "restriction to Phi is not divisible by t");
        Exponent q = e;
        --q[t];
        yf.add_term(q, c);
        if (q[t] == 0) zf.add_term(Exponent(q.begin(), q.begin() + t), c);
    }
    return {gamma, KPlane<F>(field, rows), an, frame, r, yf, zf};
}

/// Residual to Gamma in a given (k+1)-plane Phi containing it.
template <ExactField F>
ResidualDatum<F> residual(const Hypersurface<F>& x, const KPlane<F>& gamma, const KPlane<F>& phi) {
    require(phi.dim() == gamma.dim() + 1 && phi.contains(gamma), ErrorKind::NotNested,
            "Phi must be a (k+1)-plane containing Gamma");
    auto inv = *default_change(gamma).inverse_matrix();
    int k = gamma.dim();
    for (int i = 0; i < phi.dim() + 1; ++i) {
        auto y = inv.apply(phi.row(i));
        std::vector<typename F::value_type> a(y.begin() + k + 1, y.end());
        if (!is_zero_vector<F>(a)) return residual_at(x, gamma, std::span<const typename F::value_type>(a));
    }
    fail(ErrorKind::InvariantViolation, "Phi reduces to Gamma");
}

/// A linear system on P^k spanned by forms of a common degree; members are
/// indexed by P^m, m = #basis - 1.
template <ExactField F>
struct LinearSeries {
    std::vector<Form<F>> basis;

    int param_dim() const { return static_cast<int>(basis.size()) - 1; }

    Form<F> member(std::span<const typename F::value_type> a) const {
        require(a.size() == basis.size(), ErrorKind::DimensionMismatch, "parameter vector length");
        Form<F> r(basis.front().field(), basis.front().nvars(), basis.front().degree());
        for (std::size_t j = 0; j < basis.size(); ++j) r += basis[j].scaled(a[j]);
        return r;
    }
};

/// Z(a) = sum_{|I| = d-1} c_I(a) x^I: one row per multiset I of size d-1 on
/// the k+1 basis vectors of Gamma; rows are linear forms in the fiber
/// coordinates a_{k+1}..a_n.
template <ExactField F>
struct BoundarySeries {
    KPlane<F> gamma;
    int degree = 0;                      // d
    std::vector<Multiset> rows;          // |I| = d-1
    std::vector<Form<F>> coefficients;   // c_I, linear, in n-k variables

    int fiber_size() const { return gamma.ambient_dim() - gamma.dim(); }

    Form<F> member(std::span<const typename F::value_type> a) const {
        const auto& field = gamma.field();
        int g = gamma.dim() + 1;
        Form<F> z(field, g, std::max(0, degree - 1));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto c = coefficients[i].eval(a);
            if (!is_zero(c)) z += Form<F>::monomial(field, multiset_exponent(rows[i], g), c);
        }
        return z;
    }

    LinearSeries<F> linear_series() const {
        const auto& field = gamma.field();
        LinearSeries<F> s;
        for (int j = 0; j < fiber_size(); ++j) {
            std::vector<typename F::value_type> e(fiber_size(), field.zero());
            e[j] = field.one();
            s.basis.push_back(member(e));
        }
        return s;
    }
};

template <ExactField F>
BoundarySeries<F> boundary_series(const Hypersurface<F>& x, const KPlane<F>& gamma) {
    detail::check_gamma(x, gamma);
    const auto& field = x.field();
    int d = x.degree(), k = gamma.dim(), nv = x.form().nvars();
    BoundarySeries<F> s{gamma, d, {}, {}};
    if (d == 1) return s;
    auto e = expand_at_plane(x, gamma);
    std::vector<int> tail;
    for (int j = k + 1; j < nv; ++j) tail.push_back(j);
    std::vector<int> map(nv, -1);
    for (std::size_t j = 0; j < tail.size(); ++j) map[tail[j]] = static_cast<int>(j);
    for (std::size_t i = 0; i < e.indices.size(); ++i) {
        if (static_cast<int>(e.indices[i].size()) != d - 1) continue;
        s.rows.push_back(e.indices[i]);
        Form<F> c(field, nv - k - 1, 1);
        for (const auto& [ex, coef] : e.coeffs[i].terms()) {
            Exponent r(nv - k - 1, 0);
            for (int j = k + 1; j < nv; ++j) r[map[j]] = ex[j];
            c.add_term(r, coef);
        }
        s.coefficients.push_back(std::move(c));
    }
    return s;
}

struct BasepointReport {
    bool free = true;
    std::optional<std::vector<Fp>> witness;          // on Gamma, Gamma coordinates
    std::optional<std::vector<Fp>> witness_ambient;  // in P^n
    std::vector<std::uint64_t> searched_field_sizes;
    bool exact = false;  // decided over the algebraic closure (Gamma a line)
    std::string note;
};

/// Common zeros of all members on Gamma: exhaustive over P^k(F_p), plus an
/// exact gcd test when Gamma is a line.
inline BasepointReport basepoint_free_check(const BoundarySeries<PrimeField>& series,
                                            std::uint64_t budget = kDefaultPointBudget) {
    const auto& field = series.gamma.field();
    BasepointReport rep;
    rep.searched_field_sizes.push_back(field.size());
    auto ls = series.linear_series();
    int k = series.gamma.dim();
    auto total = projective_point_count(field.size(), k);
    require(total && *total <= budget, ErrorKind::SearchSpaceTooLarge, "Gamma scan exceeds the point budget");
    for (std::uint64_t i = 0; i < *total && rep.free; ++i) {
        auto q = projective_point(field, k, i);
        bool common = true;
        for (const auto& b : ls.basis)
            if (!is_zero(b.eval(q))) {
                common = false;
                break;
            }
        if (common) {
            rep.free = false;
            rep.witness = q;
            rep.witness_ambient = series.gamma.at(q);
        }
    }
    if (k == 1 && !ls.basis.empty()) {
        rep.exact = true;
        bool gcd_free = binary_gcd_degree(ls.basis) == 0;
        if (rep.free && !gcd_free) {
            rep.free = false;
            rep.note = "base point defined only over an extension of F_p (gcd test)";
        }
    }
    if (ls.basis.empty()) rep.note = "empty series";
    return rep;
}

/// As above, and again for the reduction of the integer lift of X modulo
/// `second_prime` when Gamma stays inside it there.
inline BasepointReport basepoint_free_check(const Hypersurface<PrimeField>& x, const KPlane<PrimeField>& gamma,
                                            std::optional<std::uint64_t> second_prime = std::nullopt,
                                            std::uint64_t budget = kDefaultPointBudget) {
    auto rep = basepoint_free_check(boundary_series(x, gamma), budget);
    if (!rep.free || !second_prime) return rep;
    PrimeField f2(*second_prime);
    require(*second_prime > static_cast<std::uint64_t>(x.degree()), ErrorKind::CharacteristicTooSmall,
            "second prime must exceed d");
    Hypersurface<PrimeField> x2(reduce_form(x.form(), f2));
    std::vector<std::vector<Fp>> rows;
    for (const auto& r : gamma.basis().row_vectors()) {
        std::vector<Fp> v;
        for (auto c : r) v.push_back(f2.from_int(c.symmetric()));
        rows.push_back(v);
    }
    KPlane<PrimeField> g2(f2, rows);
    if (!contains(x2, g2)) {
        rep.note = "Gamma does not lift to F_" + std::to_string(*second_prime) + "; second prime skipped";
        return rep;
    }
    auto rep2 = basepoint_free_check(boundary_series(x2, g2), budget);
    rep.searched_field_sizes.push_back(*second_prime);
    if (!rep2.free) {
        rep.free = false;
        rep.note = "base point over F_" + std::to_string(*second_prime);
    }
    return rep;
}

struct BertiniStratum {
    int j = 0;
    std::uint64_t count = 0;
    int evidence_dim = -1;
    int bound = 0;  // m - j
    bool within_bound = true;
};

struct BertiniStrata {
    int param_dim = 0;         // m
    int base_dim = -1;         // b: evidence dimension of the base locus
    std::uint64_t base_points = 0;
    std::vector<BertiniStratum> strata;
    bool violation = false;
};

/// For every member D_a of the series over F_p: count F_p singular points
/// off the base locus, take their evidence dimension s(a) = round(log_p),
/// and bucket S_j = {a : s(a) >= j + b}.
inline BertiniStrata bertini_strata(const LinearSeries<PrimeField>& series,
                                    std::uint64_t budget = kDefaultPointBudget) {
    require(!series.basis.empty(), ErrorKind::InvalidInput, "empty linear series");
    const auto& field = series.basis.front().field();
    std::uint64_t p = field.size();
    int k = series.basis.front().nvars() - 1, m = series.param_dim();
    auto gamma_pts = projective_point_count(p, k);
    auto params = projective_point_count(p, m);
    require(gamma_pts && params && *gamma_pts <= budget && *params <= budget / std::max<std::uint64_t>(1, *gamma_pts),
            ErrorKind::SearchSpaceTooLarge, "Bertini scan exceeds the point budget");
    std::vector<std::vector<Fp>> pts;
    for (std::uint64_t i = 0; i < *gamma_pts; ++i) pts.push_back(projective_point(field, k, i));
    std::vector<bool> base(pts.size(), true);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (const auto& b : series.basis)
            if (!is_zero(b.eval(pts[i]))) {
                base[i] = false;
                break;
            }
    BertiniStrata out;
    out.param_dim = m;
    for (bool b : base) out.base_points += b;
    out.base_dim = log_estimate(out.base_points, p);
    std::vector<int> evidence;
    for (std::uint64_t ai = 0; ai < *params; ++ai) {
        auto a = projective_point(field, m, ai);
        auto z = series.member(a);
        std::vector<Form<PrimeField>> dz;
        for (int i = 0; i <= k; ++i) dz.push_back(z.derivative(i));
        std::uint64_t sing = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (base[i]) continue;
            if (is_singular_point(z, dz, std::span<const Fp>(pts[i]))) ++sing;
        }
        evidence.push_back(log_estimate(sing, p));
    }
    for (int j = 0; j <= m + 1; ++j) {
        BertiniStratum s;
        s.j = j;
        for (int e : evidence)
            if (e >= j + out.base_dim) ++s.count;
        s.evidence_dim = log_estimate(s.count, p);
        s.bound = m - j;
        s.within_bound = s.evidence_dim <= s.bound;
        out.violation = out.violation || !s.within_bound;
        out.strata.push_back(s);
        if (s.count == 0) break;
    }
    return out;
}

template <ExactField F>
struct QuadricParam {
    std::vector<Form<F>> components;  // degree 2 in N+1 variables; variable `pivot` unused
    int pivot = 0;
    bool dominant = false;            // affine Jacobian rank N at a random parameter
    std::uint64_t seed = 0;
};

/// Second intersection of lines through pt: p(w) = B(pt,w) w - Q(w) pt with
/// B(pt,w) = grad Q(pt) . w, for w on the hyperplane w_pivot = 0, where
/// pivot is the first nonzero coordinate of pt.
template <ExactField F>
QuadricParam<F> quadric_param(const Form<F>& q, std::span<const typename F::value_type> pt, std::uint64_t seed = 0) {
    using V = typename F::value_type;
    const auto& field = q.field();
    int nv = q.nvars();
    require(q.degree() == 2, ErrorKind::InvalidInput, "quadric_param needs a quadric");
    require(static_cast<int>(pt.size()) == nv, ErrorKind::DimensionMismatch, "point length");
    require(!is_zero_vector<F>(pt), ErrorKind::InvalidInput, "zero vector is not a point");
    require(is_zero(q.eval(pt)), ErrorKind::PointNotOnQ, "point is not on the quadric");
    auto grad = q.gradient_at(pt);
    require(!is_zero_vector<F>(std::span<const V>(grad)), ErrorKind::PointSingular, "point is singular on Q");
    QuadricParam<F> out;
    while (is_zero(pt[out.pivot])) ++out.pivot;
    out.seed = seed;
    Form<F> b = Form<F>::linear(field, grad);
    Form<F> qw = q;
    // variable `pivot` must not appear: set it to zero
    std::vector<Form<F>> kill;
    for (int i = 0; i < nv; ++i)
        kill.push_back(i == out.pivot ? Form<F>(field, nv, 1) : Form<F>::variable(field, nv, i));
    b = b.substitute(kill);
    qw = q.substitute(kill);
    for (int i = 0; i < nv; ++i) {
        Form<F> c(field, nv, 2);
        if (i != out.pivot) c += b * Form<F>::variable(field, nv, i);
        c -= qw.scaled(pt[i]);
        out.components.push_back(std::move(c));
    }
    // dominance: Jacobian in the N free variables has rank N somewhere
    Rng rng(seed);
    for (int attempt = 0; attempt < 8 && !out.dominant; ++attempt) {
        auto w = rng.vector(field, nv);
        w[out.pivot] = field.zero();
        Matrix<F> jac(field, nv, nv - 1);
        for (int r = 0; r < nv; ++r) {
            int col = 0;
            for (int i = 0; i < nv; ++i) {
                if (i == out.pivot) continue;
                jac(r, col++) = out.components[r].derivative(i).eval(w);
            }
        }
        out.dominant = jac.rank() == nv - 1;
    }
    return out;
}

/// A smooth conic on Q: the parameterization restricted to a random line
/// of the parameter hyperplane. Rejects restrictions with a base point
/// (degree drops) or a non-reduced image (double line).
inline std::optional<RationalCurve<PrimeField>> conic_on_quadric(const QuadricParam<PrimeField>& param, Rng& rng,
                                                                 int attempts = 32) {
    const auto& field = param.components.front().field();
    int nv = param.components.front().nvars();
    for (int attempt = 0; attempt < attempts; ++attempt) {
        auto u = rng.vector(field, nv);
        auto v = rng.vector(field, nv);
        u[param.pivot] = field.zero();
        v[param.pivot] = field.zero();
        std::vector<Form<PrimeField>> line;
        for (int i = 0; i < nv; ++i) line.push_back(Form<PrimeField>::linear(field, std::vector<Fp>{u[i], v[i]}));
        std::vector<Form<PrimeField>> comps;
        for (const auto& c : param.components) comps.push_back(c.substitute(line));
        if (binary_gcd_degree(comps) != 0) continue;
        // image spans a plane iff the 3 coefficient columns are independent
        Matrix<PrimeField> coeff(field, nv, 3);
        for (int i = 0; i < nv; ++i)
            for (const auto& [e, c] : comps[i].terms()) coeff(i, e[1]) = c;
        if (coeff.rank() != 3) continue;
        return RationalCurve<PrimeField>(std::move(comps));
    }
    return std::nullopt;
}

struct FailureTally {
    std::uint64_t no_root = 0;
    std::uint64_t singular_residual = 0;
    std::uint64_t degenerate_phi = 0;

    FailureTally& operator+=(const FailureTally& o) {
        no_root += o.no_root;
        singular_residual += o.singular_residual;
        degenerate_phi += o.degenerate_phi;
        return *this;
    }
    friend bool operator==(const FailureTally&, const FailureTally&) = default;
};

enum class StepFailure { None, NoRoot, SingularResidual, DegeneratePhi };

struct ReductionOutcome {
    StepFailure failure = StepFailure::None;
    std::optional<ResidualDatum<PrimeField>> datum;
    std::vector<Fp> lambda;  // point of Z on Gamma, in frame coordinates of Phi (t = 0)
};

/// One reduction step with r = 0: random Phi through Gamma, residual Y,
/// a uniformly chosen F_p point Lambda of Z = Y cap Gamma. Residuals of
/// degree >= 3 must pass the singular scan; a quadric residual only needs
/// Lambda to be a smooth point of it.
inline ReductionOutcome reduction_step(const Hypersurface<PrimeField>& x, const KPlane<PrimeField>& gamma, Rng& rng,
                                       std::uint64_t budget = kDefaultPointBudget) {
    const auto& field = x.field();
    int k = gamma.dim(), nv = x.form().nvars();
    ReductionOutcome out;
    auto a = rng.nonzero_vector(field, nv - k - 1);
    std::optional<ResidualDatum<PrimeField>> datum;
    try {
        datum = residual_at(x, gamma, std::span<const Fp>(a));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::PhiInsideX) throw;
        out.failure = StepFailure::DegeneratePhi;
        return out;
    }
    std::vector<std::vector<Fp>> roots;
    auto total = projective_point_count(field.size(), k);
    require(total && *total <= budget, ErrorKind::SearchSpaceTooLarge, "root scan on Gamma exceeds the budget");
    for (std::uint64_t i = 0; i < *total; ++i) {
        auto q = projective_point(field, k, i);
        if (is_zero(datum->z.eval(q))) roots.push_back(std::move(q));
    }
    if (roots.empty()) {
        out.failure = StepFailure::NoRoot;
        return out;
    }
    auto lam = roots[rng.below(roots.size())];
    lam.push_back(field.zero());
    int dy = datum->y.degree();
    if (dy >= 3) {
        if (singular_search(Hypersurface<PrimeField>(datum->y), 1, 1, budget).singular) {
            out.failure = StepFailure::SingularResidual;
            return out;
        }
    } else if (dy == 2) {
        if (is_zero_vector<PrimeField>(datum->y.gradient_at(lam))) {
            out.failure = StepFailure::SingularResidual;
            return out;
        }
    }
    out.datum = std::move(datum);
    out.lambda = std::move(lam);
    return out;
}

inline constexpr int kDefaultSampleRetries = 16;

struct TowerSampleReport {
    std::uint64_t requested = 0;
    std::uint64_t produced = 0;
    bool all_on_x = true;
    std::uint64_t distinct = 0;
    std::optional<std::uint64_t> x_points;  // |X(F_p)| when enumerable
    std::optional<double> hit_fraction;
    double threshold = 0.5;
    std::optional<bool> dominance_evidence;
    FailureTally failures;
    std::uint64_t seed = 0;
    std::vector<std::vector<Fp>> points;  // distinct points, canonical order
};

namespace detail {

inline std::vector<Fp> matrix_left_apply(const Matrix<PrimeField>& rows, std::span<const Fp> coeffs) {
    return rows.transpose().apply(coeffs);
}

/// One tower descent for a single sample; nullopt when every retry failed.
inline std::optional<std::vector<Fp>> sample_once(const Hypersurface<PrimeField>& x, const KPlane<PrimeField>& gamma,
                                                  Rng& rng, int retries, FailureTally& tally, std::uint64_t budget) {
    const auto& field = x.field();
    int nv = x.form().nvars();
    for (int attempt = 0; attempt < retries; ++attempt) {
        Form<PrimeField> cur = x.form();
        KPlane<PrimeField> g = gamma;
        Matrix<PrimeField> embed = Matrix<PrimeField>::identity(field, nv);  // rows: level coords -> ambient
        std::vector<Fp> base_point;
        bool failed = false;
        while (cur.degree() > 2) {
            auto step = reduction_step(Hypersurface<PrimeField>(cur), g, rng, budget);
            if (step.failure != StepFailure::None) {
                if (step.failure == StepFailure::NoRoot) ++tally.no_root;
                if (step.failure == StepFailure::SingularResidual) ++tally.singular_residual;
                if (step.failure == StepFailure::DegeneratePhi) ++tally.degenerate_phi;
                failed = true;
                break;
            }
            embed = step.datum->frame * embed;
            cur = step.datum->y;
            g = KPlane<PrimeField>::point(field, step.lambda);
        }
        if (failed) continue;
        std::vector<Fp> local;
        if (cur.degree() == 2) {
            // a point of g, smooth on cur
            std::vector<Fp> pt;
            if (g.dim() == 0) {
                pt = g.row(0);
            } else {
                pt = g.at(rng.nonzero_vector(field, g.dim() + 1));
            }
            if (is_zero_vector<PrimeField>(cur.gradient_at(pt))) {
                ++tally.singular_residual;
                continue;
            }
            auto par = quadric_param(cur, std::span<const Fp>(pt));
            auto w = rng.vector(field, cur.nvars());
            w[par.pivot] = field.zero();
            for (const auto& c : par.components) local.push_back(c.eval(w));
            if (is_zero_vector<PrimeField>(local)) {
                ++tally.degenerate_phi;
                continue;
            }
        } else {
            // degree 1: a random point of the hyperplane
            auto lin = cur.gradient_at(std::vector<Fp>(cur.nvars(), field.zero()));
            auto ker = nullspace_rank(Matrix<PrimeField>::from_rows(field, {lin})).basis;
            local.assign(cur.nvars(), field.zero());
            auto coeffs = rng.nonzero_vector(field, static_cast<int>(ker.size()));
            for (std::size_t j = 0; j < ker.size(); ++j)
                for (int i = 0; i < cur.nvars(); ++i) local[i] = local[i] + coeffs[j] * ker[j][i];
        }
        auto amb = matrix_left_apply(embed, local);
        if (is_zero_vector<PrimeField>(amb)) {
            ++tally.degenerate_phi;
            continue;
        }
        return normalize_projective(field, amb);
    }
    return std::nullopt;
}

}  // namespace detail

/// Draws `samples` tower samples; sample i uses its own generator seeded by
/// derive_seed(seed, i), so the report does not depend on `jobs`.
inline TowerSampleReport unirational_sample(const Hypersurface<PrimeField>& x, const KPlane<PrimeField>& gamma,
                                            std::uint64_t samples, std::uint64_t seed, int jobs = 1,
                                            int retries = kDefaultSampleRetries, double threshold = 0.5,
                                            std::uint64_t budget = kDefaultPointBudget) {
    detail::check_gamma(x, gamma);
    const auto& field = x.field();
    require(field.size() > static_cast<std::uint64_t>(x.degree()), ErrorKind::CharacteristicTooSmall, "need p > d");
    std::vector<std::optional<std::vector<Fp>>> got(samples);
    std::vector<FailureTally> tallies(samples);
    parallel_for(samples, jobs, [&](std::size_t i) {
        Rng rng(derive_seed(seed, i));
        got[i] = detail::sample_once(x, gamma, rng, retries, tallies[i], budget);
    });
    TowerSampleReport rep;
    rep.requested = samples;
    rep.seed = seed;
    rep.threshold = threshold;
    std::set<std::vector<std::uint32_t>> seen;
    std::map<std::vector<std::uint32_t>, std::vector<Fp>> by_key;
    for (std::uint64_t i = 0; i < samples; ++i) {
        rep.failures += tallies[i];
        if (!got[i]) continue;
        ++rep.produced;
        if (!is_zero(x.form().eval(*got[i]))) rep.all_on_x = false;
        std::vector<std::uint32_t> key;
        for (auto c : *got[i]) key.push_back(c.v);
        by_key.emplace(key, *got[i]);
    }
    rep.distinct = by_key.size();
    // canonical order: leading index ascending, then tail lexicographic
    std::vector<std::pair<std::pair<int, std::vector<std::uint32_t>>, std::vector<Fp>>> ordered;
    for (auto& [key, pt] : by_key) {
        int lead = 0;
        while (key[lead] == 0) ++lead;
        ordered.push_back({{lead, key}, pt});
    }
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& o : ordered) rep.points.push_back(std::move(o.second));
    auto total = projective_point_count(field.size(), x.ambient_dim());
    if (total && *total <= budget) {
        std::uint64_t on = 0;
        for (std::uint64_t i = 0; i < *total; ++i)
            if (is_zero(x.form().eval(projective_point(field, x.ambient_dim(), i)))) ++on;
        rep.x_points = on;
        if (on > 0) {
            rep.hit_fraction = static_cast<double>(rep.distinct) / static_cast<double>(on);
            rep.dominance_evidence = *rep.hit_fraction >= threshold;
        }
    }
    return rep;
}

}  // namespace fanowb
