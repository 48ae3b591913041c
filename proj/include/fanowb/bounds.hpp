#pragma once

// Closed-form bounds and threshold predicates, evaluated in exact integer
// arithmetic. Fractional inequalities are cleared of denominators before
// comparison.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fanowb/curves.hpp"
#include "fanowb/fano.hpp"

namespace fanowb {

/// Degrees above this need `allow_large`: k0(7) already involves binomials
/// of numbers near 10^28.
inline constexpr long kMaxUngatedDegree = 6;

namespace detail {

inline BigInt pow2(unsigned long e) {
    BigInt r = 1;
    r <<= e;
    return r;
}

inline unsigned long factorial_ul(long n) {
    unsigned long r = 1;
    for (long i = 2; i <= n; ++i) r *= static_cast<unsigned long>(i);
    return r;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

inline void check_degree(long d, bool allow_large) {
    require(d >= 2, ErrorKind::InvalidInput, "need d >= 2");
    require(allow_large || d <= kMaxUngatedDegree, ErrorKind::SearchSpaceTooLarge,
            "d = " + std::to_string(d) + " is gated; pass allow_large");
}

}  // namespace detail

/// k0(2) = 0, k0(d) = 1 + 2 C(k0(d-1)+d-2, d-2) + C(k0(d-1)+d-1, d-1).
inline BigInt k0(long d, bool allow_large = false) {
    detail::check_degree(d, allow_large);
    static std::mutex mu;
    static std::map<long, BigInt> cache{{2, BigInt(0)}};
    std::lock_guard lock(mu);
    long top = cache.rbegin()->first;
    for (long j = top + 1; j <= d; ++j) {
        const BigInt& prev = cache.at(j - 1);
        cache[j] = 1 + 2 * binomial(prev + j - 2, j - 2) + binomial(prev + j - 1, j - 1);
    }
    return cache.at(d);
}

/// n0(d) = ceil(C(k0+d, d) / (k0+1)) + k0 with k0 = k0(d).
inline BigInt n0(long d, bool allow_large = false) {
    BigInt k = k0(d, allow_large);
    return detail::ceil_div(binomial(k + d, d), k + 1) + k;
}

struct BinomBound {
    long x = 0, d = 0;
    bool holds = false;          // 4 C(x+d, d) < x^d
    bool in_hypothesis = false;  // d >= 5 and x >= 6
    BigInt binom, power;
};

inline BinomBound binom_bound_check(long x, long d) {
    BinomBound b;
    b.x = x;
    b.d = d;
    b.binom = binomial(BigInt(x + d), d);
    b.power = boost::multiprecision::pow(BigInt(x), static_cast<unsigned>(d));
    b.holds = 4 * b.binom < b.power;
    b.in_hypothesis = d >= 5 && x >= 6;
    return b;
}

struct PowerBound {
    long d = 0;
    BigInt value, bound;
    bool holds = false;
    bool separate_case = false;  // d = 4 is not covered by the binomial lemma; checked directly
};

/// k0(d) <= 2^{(d-1)!}.
inline PowerBound k0_power_bound(long d, bool allow_large = false) {
    PowerBound b{d, k0(d, allow_large), detail::pow2(detail::factorial_ul(d - 1))};
    b.holds = b.value <= b.bound;
    return b;
}

/// n0(d) <= 2^{d!}.
inline PowerBound n0_power_bound(long d, bool allow_large = false) {
    PowerBound b{d, n0(d, allow_large), detail::pow2(detail::factorial_ul(d))};
    b.holds = b.value <= b.bound;
    b.separate_case = d == 4;
    return b;
}

struct Predicate {
    std::string name;
    std::string inequality;  // with the inputs substituted
    bool value = false;
    friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct BoundReport {
    long n = 0, d = 0, k = 0, s = -1, e = 1;
    std::optional<long> r;
    std::optional<BigInt> k0, n0;                // when 2 <= d <= kMaxUngatedDegree
    std::map<std::string, BigInt> binomials;
    std::vector<Predicate> predicates;
    ExpectedDims expected;
    BigInt expected_curves;
    std::vector<std::string> notes;

    const Predicate& predicate(const std::string& name) const {
        for (const auto& p : predicates)
            if (p.name == name) return p;
        fail(ErrorKind::InvalidInput, "no predicate named " + name);
    }
    friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

namespace detail {

inline std::string str(const BigInt& v) { return v.str(); }

inline Predicate ge(std::string name, const std::string& form, const BigInt& lhs, const BigInt& rhs) {
    return {std::move(name), form + ": " + str(lhs) + " >= " + str(rhs), lhs >= rhs};
}

inline Predicate lt(std::string name, const std::string& form, const BigInt& lhs, const BigInt& rhs) {
    return {std::move(name), form + ": " + str(lhs) + " < " + str(rhs), lhs < rhs};
}

}  // namespace detail

inline BoundReport threshold_report(long n, long d, long k, long s, long e, std::optional<long> r = std::nullopt) {
    require(n > k && k >= 0, ErrorKind::InvalidInput, "need n > k >= 0");
    require(d >= 1, ErrorKind::InvalidInput, "need d >= 1");
    require(s >= -1, ErrorKind::InvalidInput, "need s >= -1");
    require(e >= 1, ErrorKind::InvalidInput, "need e >= 1");
    require(!r || *r >= 0, ErrorKind::InvalidInput, "need r >= 0");
    using detail::ge;
    using detail::lt;
    BoundReport rep;
    rep.n = n;
    rep.d = d;
    rep.k = k;
    rep.s = s;
    rep.e = e;
    rep.r = r;
    if (d >= 2 && d <= kMaxUngatedDegree) {
        rep.k0 = k0(d);
        rep.n0 = n0(d);
    }
    BigInt N = n, D = d, K = k, E = e;
    BigInt c_plane = binomial(BigInt(d + k - 1), k);  // C(d+k-1, k)
    BigInt c_all = binomial(BigInt(d + k), k);        // C(d+k, k)
    rep.binomials["C(d+k-1,k)"] = c_plane;
    rep.binomials["C(d+k,k)"] = c_all;

    auto& p = rep.predicates;
    p.push_back(ge("conjecture_range", "n >= d", N, D));
    p.push_back(ge("lines_expected_dim", "n >= 2d-4", N, 2 * D - 4));
    {
        Predicate a = ge("lines_irreducible", "n >= 2d-1 and n >= 4", N, 2 * D - 1);
        a.inequality += ", " + std::to_string(n) + " >= 4";
        a.value = a.value && n >= 4;
        p.push_back(a);
    }
    p.push_back(ge("planes_irreducible_expected", "n >= 2C(d+k-1,k)+k", N, 2 * c_plane + K));
    p.push_back(ge("planes_expected_dim_singular", "n >= 2C(d+k-1,k)+max(s-1,k-2)", N,
                   2 * c_plane + BigInt(std::max(s - 1, k - 2))));
    p.push_back(ge("planes_irreducible_singular", "n >= 2C(d+k-1,k)+max(s+1,k)", N,
                   2 * c_plane + BigInt(std::max(s + 1, k))));
    // n < 2/(k+1) C(d+k,k) - 1  <=>  (k+1)(n+1) < 2 C(d+k,k)
    p.push_back(lt("counterexample_range", "(k+1)(n+1) < 2C(d+k,k)", (K + 1) * (N + 1), 2 * c_all));
    p.push_back(ge("planes_exist", "(k+1)(n-k) >= C(k+d,d)", (K + 1) * (N - K), c_all));
    // d <= (e+n)/(e+1)  <=>  d(e+1) <= e+n
    p.push_back(ge("curves_range", "e+n >= d(e+1)", E + N, D * (E + 1)));
    // d > 3 + (n-1)/e  <=>  e(d-3) > n-1
    p.push_back(lt("conical_stable_maps", "n-1 < e(d-3)", N - 1, E * (D - 3)));
    if (r) {
        BigInt c1 = d >= 2 ? binomial(BigInt(d + *r - 2), d - 2) : BigInt(0);
        BigInt c2 = binomial(BigInt(d + *r - 1), *r);
        rep.binomials["C(d+r-2,d-2)"] = c1;
        rep.binomials["C(d+r-1,r)"] = c2;
        p.push_back(ge("unirationality_hypothesis", "k >= 1+2C(d+r-2,d-2)+C(d+r-1,r)", K, 1 + 2 * c1 + c2));
        rep.notes.push_back("C(d+r-1,r) = C(d+r-1,d-1); printed once");
    }
    rep.expected = expected_dims(n, d, k);
    rep.expected_curves = expected_dim_curves(n, d, e);
    if (d == 4) rep.notes.push_back("n0(4) <= 2^24 is checked directly; the binomial lemma needs d >= 5");
    if (d > kMaxUngatedDegree) rep.notes.push_back("k0, n0 omitted for d > 6 (gated)");
    return rep;
}

}  // namespace fanowb
