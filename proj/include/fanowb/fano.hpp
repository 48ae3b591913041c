#pragma once

// Fano fibers (k-planes through a fixed (k-1)-plane), brute-force censuses
// of k-planes on X over F_p, expected dimensions and two-prime dimension
// estimates.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fanowb/expansion.hpp"

namespace fanowb {

template <ExactField F>
struct FanoFiber {
    using value_type = typename F::value_type;
    PlaneExpansion<F> expansion;
    int expected_dim = 0;  // n - k - C(d+k-1, k)

    int k() const { return expansion.k; }
    const std::vector<Form<F>>& equations() const { return expansion.coeffs; }

    bool satisfied_at(std::span<const value_type> a) const {
        auto y = expansion.fiber_y(a);
        for (const auto& c : expansion.coeffs)
            if (!is_zero(c.eval(y))) return false;
        return true;
    }
};

template <ExactField F>
FanoFiber<F> fano_fiber(const Hypersurface<F>& x, const KPlane<F>& center) {
    auto e = expand_at_plane(x, center);
    int n = x.ambient_dim(), k = e.k, d = x.degree();
    auto dim = BigInt(n - k) - binomial(d + k - 1, k);
    return {std::move(e), static_cast<int>(dim)};
}

/// F_p points of the fiber, in canonical order of P^{n-k}.
inline std::vector<std::vector<Fp>> fiber_points(const FanoFiber<PrimeField>& fib,
                                                 std::uint64_t budget = kDefaultPointBudget) {
    const auto& field = fib.expansion.change.field();
    int m = fib.expansion.fiber_dim();
    auto total = projective_point_count(field.size(), m);
    require(total && *total <= budget, ErrorKind::SearchSpaceTooLarge, "fiber scan exceeds the point budget");
    std::vector<std::vector<Fp>> out;
    for (std::uint64_t i = 0; i < *total; ++i) {
        auto a = projective_point(field, m, i);
        if (fib.satisfied_at(a)) out.push_back(std::move(a));
    }
    return out;
}

/// Dimension of the Zariski tangent space of the fiber at a: n - k - delta.
template <ExactField F>
int tangent_dim(const FanoFiber<F>& fib, std::span<const typename F::value_type> a) {
    return linear_diagnostics(fib.expansion, a).tangent_dim();
}

struct ExpectedDims {
    BigInt fano;         // (k+1)(n-k) - C(d+k, k)
    BigInt fiber;        // n - k - C(d+k-1, k)
    BigInt point_fiber;  // n - 1 - d
    friend bool operator==(const ExpectedDims&, const ExpectedDims&) = default;
};

inline ExpectedDims expected_dims(long n, long d, long k) {
    require(n > k && k >= 0 && d >= 1, ErrorKind::InvalidInput, "need n > k >= 0 and d >= 1");
    return {BigInt(k + 1) * (n - k) - binomial(d + k, k), BigInt(n - k) - binomial(d + k - 1, k), BigInt(n - 1 - d)};
}

inline constexpr std::uint64_t kDefaultCensusCap = 1'000'000;

struct PlaneCensus {
    int n = 0, d = 0, k = 0;
    std::uint64_t p = 0;
    std::uint64_t count = 0;
    std::uint64_t visited = 0;  // planes tested
    std::string method;         // "grassmannian" or "through-center"
    std::optional<std::vector<KPlane<PrimeField>>> planes;  // when count <= cap
};

namespace detail {

/// A form over F_p flattened for fast repeated evaluation.
class FlatForm {
public:
    explicit FlatForm(const Form<PrimeField>& f) : p_(f.field().size()), nv_(f.nvars()), deg_(f.degree()) {
        for (const auto& [e, c] : f.terms()) {
            coeff_.push_back(c.v);
            exps_.insert(exps_.end(), e.begin(), e.end());
        }
    }

    bool vanishes_at(const std::uint64_t* x, std::uint64_t* pw) const {
        // pw: scratch of size nv * (deg + 1)
        for (int i = 0; i < nv_; ++i) {
            std::uint64_t* r = pw + i * (deg_ + 1);
            r[0] = 1;
            for (int j = 1; j <= deg_; ++j) r[j] = r[j - 1] * x[i] % p_;
        }
        std::uint64_t s = 0;
        for (std::size_t t = 0; t < coeff_.size(); ++t) {
            std::uint64_t v = coeff_[t];
            const std::uint16_t* e = exps_.data() + t * nv_;
            for (int i = 0; i < nv_; ++i)
                if (e[i]) v = v * pw[i * (deg_ + 1) + e[i]] % p_;
            s += v;
        }
        return s % p_ == 0;
    }

    int nvars() const { return nv_; }
    int degree() const { return deg_; }

private:
    std::uint64_t p_;
    int nv_, deg_;
    std::vector<std::uint64_t> coeff_;
    std::vector<std::uint16_t> exps_;
};

/// Containment of span(rows) in V(f): the restriction g(t_0..t_k) is zero
/// iff g(1, t_1..t_k) vanishes on {0..d}^k (each t_i has degree <= d and
/// p > d, so the grid has d+1 distinct values per variable).
class ContainmentTester {
public:
    ContainmentTester(const FlatForm& f, int k)
        : f_(f), k_(k), pw_(static_cast<std::size_t>(f.nvars()) * (f.degree() + 1)), x_(f.nvars()),
          grid_(k, 0) {
        std::uint64_t pts = 1;
        for (int i = 0; i < k; ++i) pts *= static_cast<std::uint64_t>(f.degree() + 1);
        grid_points_ = pts;
    }

    bool contains(const std::vector<std::vector<std::uint64_t>>& rows, std::uint64_t p) {
        int nv = f_.nvars();
        for (std::uint64_t g = 0; g < grid_points_; ++g) {
            std::uint64_t idx = g;
            for (int i = 0; i < k_; ++i) {
                grid_[i] = idx % (f_.degree() + 1);
                idx /= (f_.degree() + 1);
            }
            for (int j = 0; j < nv; ++j) {
                std::uint64_t v = rows[0][j];
                for (int i = 0; i < k_; ++i) v += grid_[i] * rows[i + 1][j];
                x_[j] = v % p;
            }
            if (!f_.vanishes_at(x_.data(), pw_.data())) return false;
        }
        return true;
    }

private:
    const FlatForm& f_;
    int k_;
    std::vector<std::uint64_t> pw_, x_, grid_;
    std::uint64_t grid_points_ = 1;
};

struct PivotPattern {
    std::vector<int> pivots;
    std::vector<std::pair<int, int>> free;  // (row, col) of free RREF entries
    std::uint64_t size = 1;                 // p^{#free}
};

inline std::vector<PivotPattern> pivot_patterns(int n, int k, std::uint64_t p) {
    std::vector<PivotPattern> out;
    std::vector<int> piv(k + 1);
    for (int i = 0; i <= k; ++i) piv[i] = i;
    for (;;) {
        PivotPattern pat;
        pat.pivots = piv;
        for (int r = 0; r <= k; ++r)
            for (int c = piv[r] + 1; c <= n; ++c)
                if (std::find(piv.begin(), piv.end(), c) == piv.end()) pat.free.emplace_back(r, c);
        auto sz = checked_pow(p, static_cast<int>(pat.free.size()));
        require(sz.has_value(), ErrorKind::SearchSpaceTooLarge, "Grassmannian chart overflows");
        pat.size = *sz;
        out.push_back(std::move(pat));
        int i = k;
        while (i >= 0 && piv[i] == n - k + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j <= k; ++j) piv[j] = piv[j - 1] + 1;
    }
    return out;
}

/// Fixed-size work units, so the merge order never depends on `jobs`.
inline constexpr std::uint64_t kCensusChunk = 4096;

}  // namespace detail

/// Number of F_p points of the Grassmannian of k-planes in P^n, or nullopt
/// on overflow.
inline std::optional<std::uint64_t> grassmannian_size(int n, int k, std::uint64_t p) {
    std::uint64_t total = 0;
    for (const auto& pat : detail::pivot_patterns(n, k, p)) {
        if (total > std::numeric_limits<std::uint64_t>::max() - pat.size) return std::nullopt;
        total += pat.size;
    }
    return total;
}

/// Exact count of F_p-rational k-planes on X. Iterates RREF representatives
/// chart by chart, so every plane is visited once. With `through`, only the
/// fiber of planes containing that (k-1)-plane is scanned.
inline PlaneCensus enumerate_kplanes(const Hypersurface<PrimeField>& x, int k,
                                     const std::optional<KPlane<PrimeField>>& through = std::nullopt, int jobs = 1,
                                     std::uint64_t budget = kDefaultPointBudget,
                                     std::uint64_t cap = kDefaultCensusCap) {
    const auto& field = x.field();
    int n = x.ambient_dim(), d = x.degree();
    std::uint64_t p = field.size();
    require(k >= 0 && k < n, ErrorKind::InvalidInput, "need 0 <= k < n");
    require(p > static_cast<std::uint64_t>(d), ErrorKind::CharacteristicTooSmall, "need p > d");
    PlaneCensus c;
    c.n = n;
    c.d = d;
    c.k = k;
    c.p = p;
    std::vector<KPlane<PrimeField>> found;

    if (through) {
        require(through->dim() == k - 1, ErrorKind::InvalidInput, "center must have dimension k-1");
        c.method = "through-center";
        auto fib = fano_fiber(x, *through);
        auto pts = fiber_points(fib, budget);
        c.visited = *projective_point_count(p, n - k);
        c.count = pts.size();
        if (c.count <= cap)
            for (const auto& a : pts) found.push_back(fib.expansion.fiber_plane(a));
        if (c.count <= cap) c.planes = std::move(found);
        return c;
    }

    c.method = "grassmannian";
    auto total = grassmannian_size(n, k, p);
    require(total && *total <= budget, ErrorKind::SearchSpaceTooLarge,
            "Grassmannian G(" + std::to_string(k) + "," + std::to_string(n) + ")(F_" + std::to_string(p) +
                ") exceeds the budget of " + std::to_string(budget));
    c.visited = *total;
    auto pats = detail::pivot_patterns(n, k, p);
    struct Unit {
        std::size_t pattern;
        std::uint64_t lo, hi;
    };
    std::vector<Unit> units;
    for (std::size_t i = 0; i < pats.size(); ++i)
        for (std::uint64_t lo = 0; lo < pats[i].size; lo += detail::kCensusChunk)
            units.push_back({i, lo, std::min(pats[i].size, lo + detail::kCensusChunk)});
    detail::FlatForm flat(x.form());
    std::vector<std::vector<std::vector<std::vector<std::uint64_t>>>> hits(units.size());
    parallel_for(units.size(), jobs, [&](std::size_t u) {
        const auto& unit = units[u];
        const auto& pat = pats[unit.pattern];
        detail::ContainmentTester tester(flat, k);
        std::vector<std::vector<std::uint64_t>> rows(k + 1, std::vector<std::uint64_t>(n + 1, 0));
        for (int r = 0; r <= k; ++r) rows[r][pat.pivots[r]] = 1;
        for (std::uint64_t idx = unit.lo; idx < unit.hi; ++idx) {
            std::uint64_t v = idx;
            for (auto it = pat.free.rbegin(); it != pat.free.rend(); ++it) {
                rows[it->first][it->second] = v % p;
                v /= p;
            }
            if (tester.contains(rows, p)) hits[u].push_back(rows);
        }
    });
    for (const auto& h : hits) c.count += h.size();
    if (c.count <= cap) {
        for (const auto& h : hits)
            for (const auto& rows : h) {
                std::vector<std::vector<Fp>> fr;
                for (const auto& r : rows) {
                    std::vector<Fp> v;
                    for (auto e : r) v.push_back(field.element(e));
                    fr.push_back(std::move(v));
                }
                found.emplace_back(field, fr);
            }
        c.planes = std::move(found);
    }
    return c;
}

struct DimensionEstimate {
    std::uint64_t p1 = 0, p2 = 0;
    std::uint64_t count1 = 0, count2 = 0;
    int estimate = -1;
    BigInt expected;  // expected dimension of F_k(X)
};

/// Counts k-planes on the reductions of an integer-coefficient recipe
/// modulo two primes and estimates dim as round(log(c2/c1) / log(p2/p1)).
/// Both counts zero gives -1; one count zero falls back to log_p of the other.
inline DimensionEstimate dimension_estimate(const Form<RationalField>& recipe, int k, std::uint64_t p1,
                                            std::uint64_t p2, int jobs = 1,
                                            std::uint64_t budget = kDefaultPointBudget) {
    require(p1 != p2, ErrorKind::InvalidInput, "the two primes must differ");
    DimensionEstimate est;
    est.p1 = p1;
    est.p2 = p2;
    auto count = [&](std::uint64_t p) {
        PrimeField f(p);
        Hypersurface<PrimeField> x(reduce_form(recipe, f));
        return enumerate_kplanes(x, k, std::nullopt, jobs, budget, 0).count;
    };
    est.count1 = count(p1);
    est.count2 = count(p2);
    int n = recipe.nvars() - 1;
    est.expected = expected_dims(n, recipe.degree(), k).fano;
    if (est.count1 == 0 && est.count2 == 0)
        est.estimate = -1;
    else if (est.count1 == 0)
        est.estimate = log_estimate(est.count2, p2);
    else if (est.count2 == 0)
        est.estimate = log_estimate(est.count1, p1);
    else
        est.estimate = static_cast<int>(std::lround(
            std::log(static_cast<double>(est.count2) / static_cast<double>(est.count1)) /
            std::log(static_cast<double>(p2) / static_cast<double>(p1))));
    return est;
}

}  // namespace fanowb
