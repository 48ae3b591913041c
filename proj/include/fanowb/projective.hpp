#pragma once

// Projective points and linear subspaces.
//
// Canonical point order over F_p: a point is scaled so its first nonzero
// coordinate is 1; points are ordered first by the position of that
// leading 1 (ascending), then lexicographically by the remaining
// coordinates read as integers 0..p-1. Every exhaustive scan in the
// library walks this order, and "first witness" always means first in it.

#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "fanowb/form.hpp"
#include "fanowb/matrix.hpp"

namespace fanowb {

/// p^e with overflow reported as nullopt.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t p, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / p) return std::nullopt;
        r *= p;
    }
    return r;
}

/// Number of F_p-points of P^m, or nullopt on overflow.
inline std::optional<std::uint64_t> projective_point_count(std::uint64_t p, int m) {
    auto top = checked_pow(p, m + 1);
    if (!top) return std::nullopt;
    return (*top - 1) / (p - 1);
}

/// The index-th point of P^m(F_p) in canonical order.
inline std::vector<Fp> projective_point(const PrimeField& f, int m, std::uint64_t index) {
    std::uint64_t p = f.size();
    std::vector<Fp> pt(m + 1, f.zero());
    for (int lead = 0; lead <= m; ++lead) {
        std::uint64_t block = *checked_pow(p, m - lead);
        if (index < block) {
            pt[lead] = f.one();
            for (int j = m; j > lead; --j) {
                pt[j] = f.element(index % p);
                index /= p;
            }
            return pt;
        }
        index -= block;
    }
    fail(ErrorKind::IndexOutOfRange, "projective point index past the end");
}

/// Scales v so its first nonzero entry is 1; the zero vector is returned as is.
template <ExactField F>
std::vector<typename F::value_type> normalize_projective(const F& field, std::vector<typename F::value_type> v) {
    for (const auto& x : v)
        if (!is_zero(x)) {
            auto inv = inverse(x);
            for (auto& y : v) y = y * inv;
            return v;
        }
    (void)field;
    return v;
}

template <ExactField F>
bool is_zero_vector(std::span<const typename F::value_type> v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

/// Linear subspace of P^n of projective dimension k, stored as the unique
/// RREF basis of its (k+1)-dimensional cone.
template <ExactField F>
class KPlane {
public:
    using value_type = typename F::value_type;

    KPlane(const F& field, const std::vector<std::vector<value_type>>& rows) : basis_(make(field, rows)) {}

    static KPlane point(const F& field, std::vector<value_type> v) { return KPlane(field, {std::move(v)}); }

    const F& field() const { return basis_.field(); }
    int dim() const { return basis_.rows() - 1; }
    int ambient_dim() const { return basis_.cols() - 1; }
    const Matrix<F>& basis() const { return basis_; }
    std::vector<value_type> row(int i) const { return basis_.row(i); }

    std::vector<int> pivots() const {
        std::vector<int> piv;
        for (int i = 0; i < basis_.rows(); ++i)
            for (int j = 0; j < basis_.cols(); ++j)
                if (!is_zero(basis_(i, j))) {
                    piv.push_back(j);
                    break;
                }
        return piv;
    }

    /// Standard coordinate indices not used as pivots; together with the
    /// basis rows they give a basis of the ambient space.
    std::vector<int> complement_columns() const {
        std::vector<bool> used(basis_.cols(), false);
        for (int c : pivots()) used[c] = true;
        std::vector<int> out;
        for (int j = 0; j < basis_.cols(); ++j)
            if (!used[j]) out.push_back(j);
        return out;
    }

    /// Ambient vector sum_i t_i * row_i.
    std::vector<value_type> at(std::span<const value_type> t) const {
        require(static_cast<int>(t.size()) == dim() + 1, ErrorKind::DimensionMismatch, "plane coordinates");
        std::vector<value_type> v(basis_.cols(), field().zero());
        for (int i = 0; i <= dim(); ++i)
            for (int j = 0; j < basis_.cols(); ++j) v[j] = v[j] + t[i] * basis_(i, j);
        return v;
    }

    /// n+1 linear forms in k+1 fresh variables: x_j = sum_i t_i * B(i, j).
    std::vector<Form<F>> parametrization() const {
        std::vector<Form<F>> out;
        for (int j = 0; j < basis_.cols(); ++j) out.push_back(Form<F>::linear(field(), basis_.col(j)));
        return out;
    }

    bool contains_point(std::span<const value_type> v) const {
        Matrix<F> m = basis_;
        m.append_row(v);
        return m.rank() == dim() + 1;
    }

    bool contains(const KPlane& other) const {
        for (int i = 0; i <= other.dim(); ++i)
            if (!contains_point(other.row(i))) return false;
        return true;
    }

    /// The plane spanned by this one and one more vector.
    KPlane extended_by(std::span<const value_type> v) const {
        auto rows = basis_.row_vectors();
        rows.emplace_back(v.begin(), v.end());
        return KPlane(field(), rows);
    }

    friend bool operator==(const KPlane& a, const KPlane& b) { return a.basis_ == b.basis_; }

    /// "r0c0,r0c1,...;r1c0,..." with field rendering of entries.
    std::string render_rows() const {
        std::string s;
        for (int i = 0; i < basis_.rows(); ++i) {
            if (i) s += ";";
            for (int j = 0; j < basis_.cols(); ++j) {
                if (j) s += ",";
                s += field().render(basis_(i, j));
            }
        }
        return s;
    }

private:
    static Matrix<F> make(const F& field, const std::vector<std::vector<value_type>>& rows) {
        require(!rows.empty(), ErrorKind::InvalidInput, "a plane needs at least one basis vector");
        Matrix<F> m = Matrix<F>::from_rows(field, rows);
        auto piv = m.rref_in_place();
        require(static_cast<int>(piv.size()) == m.rows(), ErrorKind::InvalidInput,
                "basis rows are linearly dependent");
        return m;
    }

    Matrix<F> basis_;
};

/// Parses "a,b,c;d,e,f" (rows separated by ';', entries by ',', entries
/// integers or fractions).
template <ExactField F>
std::vector<std::vector<typename F::value_type>> parse_rows(const F& field, const std::string& text) {
    std::vector<std::vector<typename F::value_type>> rows;
    std::stringstream rs(text);
    std::string row;
    while (std::getline(rs, row, ';')) {
        std::vector<typename F::value_type> r;
        std::stringstream es(row);
        std::string tok;
        while (std::getline(es, tok, ',')) {
            std::string t;
            for (char c : tok)
                if (!std::isspace(static_cast<unsigned char>(c))) t += c;
            if (t.empty()) fail(ErrorKind::InvalidInput, "empty entry in \"" + text + "\"");
            auto slash = t.find('/');
            try {
                if (slash == std::string::npos)
                    r.push_back(field.from_big(BigInt(t)));
                else
                    r.push_back(field.from_fraction(BigInt(t.substr(0, slash)), BigInt(t.substr(slash + 1))));
            } catch (const std::runtime_error&) {
                fail(ErrorKind::InvalidInput, "bad number \"" + t + "\" in \"" + text + "\"");
            }
        }
        if (!r.empty()) rows.push_back(std::move(r));
    }
    if (rows.empty()) fail(ErrorKind::InvalidInput, "no rows in \"" + text + "\"");
    return rows;
}

}  // namespace fanowb
