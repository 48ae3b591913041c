#pragma once

// Rational curves P^1 -> X, h^0 of twisted pullbacks of T_X computed as
// kernels of coefficient matrices (Euler sequence), normal bundle splitting
// of lines and freeness.
//
// Twists: m counts multiples of f*O(1) = O(e). Sections of f*T_X(m) are
// tuples g of binary forms of degree e(m+1) with sum_i (d_i f)(C) g_i = 0,
// taken modulo the Euler image h*C, h of degree e*m. This is exact while
// H^1(O(e*m)) = 0, i.e. e*m >= -1. Imposing g(q) = 0 computes
// f*T_X(m)(-q) with correction h^0(O(e*m - 1)), exact for e*m >= 0.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fanowb/hypersurface.hpp"

namespace fanowb {

template <ExactField F>
class RationalCurve {
public:
    using value_type = typename F::value_type;

    explicit RationalCurve(std::vector<Form<F>> components) : c_(std::move(components)) {
        require(c_.size() >= 3, ErrorKind::InvalidInput, "a curve needs n+1 >= 3 components");
        int e = c_.front().degree();
        bool nonzero = false;
        for (const auto& g : c_) {
            require(g.nvars() == 2, ErrorKind::InvalidInput, "components must be binary forms");
            require(g.degree() == e, ErrorKind::DegreeMismatch, "components must share a degree");
            nonzero = nonzero || !g.is_zero();
        }
        require(e >= 1, ErrorKind::InvalidInput, "curve degree must be >= 1");
        require(nonzero, ErrorKind::InvalidInput, "all components vanish");
    }

    /// The line P(span(rows)) parameterized by (s, t) -> s*row0 + t*row1.
    static RationalCurve line(const KPlane<F>& l) {
        require(l.dim() == 1, ErrorKind::InvalidInput, "not a line");
        return RationalCurve(l.parametrization());
    }

    int degree() const { return c_.front().degree(); }
    int ambient_dim() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Form<F>>& components() const { return c_; }
    const F& field() const { return c_.front().field(); }

    bool lies_on(const Hypersurface<F>& x) const {
        require(x.form().nvars() == static_cast<int>(c_.size()), ErrorKind::DimensionMismatch,
                "curve and X live in different spaces");
        return x.form().substitute(c_).is_zero();
    }

    std::vector<value_type> at(std::span<const value_type> st) const {
        std::vector<value_type> v;
        for (const auto& g : c_) v.push_back(g.eval(st));
        return v;
    }

private:
    std::vector<Form<F>> c_;
};

namespace detail {

/// Coefficients of a univariate polynomial, lowest degree first, trimmed.
template <ExactField F>
using Poly = std::vector<typename F::value_type>;

template <ExactField F>
void trim(Poly<F>& a) {
    while (!a.empty() && is_zero(a.back())) a.pop_back();
}

template <ExactField F>
Poly<F> poly_mod(Poly<F> a, const Poly<F>& b) {
    auto lead_inv = inverse(b.back());
    while (a.size() >= b.size()) {
        auto c = a.back() * lead_inv;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - c * b[i];
        trim<F>(a);
    }
    return a;
}

template <ExactField F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
    trim<F>(a);
    trim<F>(b);
    while (!b.empty()) {
        auto r = poly_mod<F>(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace detail

/// Degree of the gcd of a family of binary forms (variables s = x0, t = x1):
/// zero iff the forms have no common zero over the algebraic closure.
template <ExactField F>
int binary_gcd_degree(const std::vector<Form<F>>& forms) {
    int e = -1;
    int t_order = std::numeric_limits<int>::max();
    detail::Poly<F> g;
    bool any = false;
    for (const auto& f : forms) {
        require(f.nvars() == 2, ErrorKind::InvalidInput, "binary forms expected");
        if (f.is_zero()) continue;
        e = f.degree();
        // dehomogenize at t = 1: coefficient of s^i
        detail::Poly<F> p(e + 1, f.field().zero());
        for (const auto& [ex, c] : f.terms()) p[ex[0]] = c;
        detail::trim<F>(p);
        t_order = std::min(t_order, e - static_cast<int>(p.size()) + 1);
        g = any ? detail::poly_gcd<F>(g, p) : p;
        any = true;
    }
    if (!any) return e;
    return t_order + static_cast<int>(g.size()) - 1;
}

template <ExactField F>
bool basepoint_free(const RationalCurve<F>& c) {
    return binary_gcd_degree(c.components()) == 0;
}

/// h^0(f*T_X(m)) and, with `vanish_at`, h^0(f*T_X(m)(-q)).
template <ExactField F>
int h0_twisted_tangent(const Hypersurface<F>& x, const RationalCurve<F>& c, int m,
                       std::optional<std::vector<typename F::value_type>> vanish_at = std::nullopt) {
    using V = typename F::value_type;
    const auto& field = x.field();
    int e = c.degree(), nv = x.form().nvars();
    require(c.ambient_dim() + 1 == nv, ErrorKind::DimensionMismatch, "curve and X live in different spaces");
    require(c.lies_on(x), ErrorKind::CurveNotOnX, "curve does not lie on X");
    if (vanish_at)
        require(m >= 0, ErrorKind::TwistOutOfWindow, "vanishing condition needs m >= 0");
    else
        require(e * m >= -1, ErrorKind::TwistOutOfWindow, "twist e*m must be >= -1");
    int deg_g = e * (m + 1);
    auto partials = partial_derivatives(x.form());
    std::vector<Form<F>> pulled;
    for (const auto& p : partials) pulled.push_back(p.substitute(c.components()));
    int deg_p = e * (x.degree() - 1);
    int rows = deg_p + deg_g + 1;
    int unknowns = nv * (deg_g + 1);
    // unknown (i, j): coefficient of s^{deg_g - j} t^j in g_i
    Matrix<F> m_eq(field, rows, unknowns);
    for (int i = 0; i < nv; ++i)
        for (const auto& [ex, coef] : pulled[i].terms())
            for (int j = 0; j <= deg_g; ++j) m_eq(ex[1] + j, i * (deg_g + 1) + j) = m_eq(ex[1] + j, i * (deg_g + 1) + j) + coef;
    if (vanish_at) {
        require(vanish_at->size() == 2 && !is_zero_vector<F>(*vanish_at), ErrorKind::InvalidInput,
                "q must be a point (s:t) of P^1");
        const V& s = (*vanish_at)[0];
        const V& t = (*vanish_at)[1];
        for (int i = 0; i < nv; ++i) {
            std::vector<V> row(unknowns, field.zero());
            for (int j = 0; j <= deg_g; ++j) row[i * (deg_g + 1) + j] = power(field, s, deg_g - j) * power(field, t, j);
            m_eq.append_row(row);
        }
    }
    int kernel = unknowns - m_eq.rank();
    int correction = vanish_at ? std::max(0, e * m) : std::max(0, e * m + 1);
    return kernel - correction;
}

struct SplittingType {
    std::vector<int> a;               // descending
    std::map<int, int> h0_table;      // m -> h^0(N(m)), m = -1..d-2
    bool free = false;
};

/// Splitting type of N_{l/X} from phi(m) = h^0(N(m)) = h^0(T_X|l(m)) - (m+3):
/// phi(-1) counts a_i = 1 and phi(j) - phi(j-1) = #{a_i >= -j}.
template <ExactField F>
SplittingType normal_bundle_splitting(const Hypersurface<F>& x, const KPlane<F>& line) {
    int n = x.ambient_dim(), d = x.degree();
    auto c = RationalCurve<F>::line(line);
    SplittingType st;
    for (int m = -1; m <= std::max(-1, d - 2); ++m) st.h0_table[m] = h0_twisted_tangent(x, c, m) - (m + 3);
    int ones = st.h0_table[-1];
    std::vector<int> a(std::max(0, ones), 1);
    int prev = ones;
    bool ok = ones >= 0;
    for (int j = 0; j <= d - 2 && ok; ++j) {
        int at_least = st.h0_table[j] - st.h0_table[j - 1];
        int exact = at_least - prev;
        if (exact < 0) ok = false;
        for (int i = 0; i < exact; ++i) a.push_back(-j);
        prev = at_least;
    }
    int sum = 0;
    for (int v : a) sum += v;
    ok = ok && static_cast<int>(a.size()) == n - 2 && sum == n - d - 1;
    if (ok)
        for (const auto& [m, h] : st.h0_table) {
            int expect = 0;
            for (int v : a) expect += std::max(0, v + m + 1);
            if (expect != h) ok = false;
        }
    if (!ok) {
        if constexpr (F::is_prime_field) {
            auto partials = partial_derivatives(x.form());
            for (std::uint64_t i = 0; i < x.field().size() + 1; ++i) {
                auto st_pt = projective_point(x.field(), 1, i);
                auto q = line.at(st_pt);
                if (is_singular_point(x.form(), partials, std::span<const Fp>(q)))
                    fail(ErrorKind::PointSingular, "X is singular along the line; N is not a bundle of rank n-2");
            }
        }
        fail(ErrorKind::InvariantViolation, "h0 table is inconsistent with a splitting of rank n-2");
    }
    st.a = std::move(a);
    st.free = st.a.empty() || st.a.back() >= 0;
    return st;
}

/// Freeness of a rational curve: f*T_X = (+) O(b_i) is globally generated
/// iff evaluation at one point is onto, i.e. h^0(f*T_X) - h^0(f*T_X(-q))
/// equals the rank n-1.
template <ExactField F>
bool is_free(const Hypersurface<F>& x, const RationalCurve<F>& c) {
    const auto& field = x.field();
    std::vector<typename F::value_type> q{field.one(), field.zero()};
    return h0_twisted_tangent(x, c, 0) - h0_twisted_tangent(x, c, 0, q) == x.ambient_dim() - 1;
}

inline BigInt expected_dim_curves(long n, long d, long e) {
    require(e >= 1, ErrorKind::InvalidInput, "need e >= 1");
    return BigInt(e) * (n + 1 - d) + n - 4;
}

}  // namespace fanowb
