#pragma once

// Dense matrices over an exact field with Gauss-Jordan elimination.
// Pivoting takes the first nonzero entry in the column; there are no
// tolerances anywhere.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fanowb/scalar.hpp"

namespace fanowb {

template <ExactField F>
class Matrix {
public:
    using value_type = typename F::value_type;

    Matrix(F field, int rows, int cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, field_.zero()) {}

    static Matrix from_rows(const F& field, const std::vector<std::vector<value_type>>& rows, int cols = -1) {
        int c = rows.empty() ? cols : static_cast<int>(rows[0].size());
        require(c >= 0, ErrorKind::InvalidInput, "cannot infer column count of an empty matrix");
        Matrix m(field, static_cast<int>(rows.size()), c);
        for (int i = 0; i < m.rows_; ++i) {
            require(static_cast<int>(rows[i].size()) == c, ErrorKind::DimensionMismatch, "ragged rows");
            for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix identity(const F& field, int n) {
        Matrix m(field, n, n);
        for (int i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }

    const F& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    value_type& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const value_type& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    std::vector<value_type> row(int i) const {
        return {a_.begin() + static_cast<std::ptrdiff_t>(i) * cols_, a_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_};
    }
    std::vector<value_type> col(int j) const {
        std::vector<value_type> c;
        c.reserve(rows_);
        for (int i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }
    std::vector<std::vector<value_type>> row_vectors() const {
        std::vector<std::vector<value_type>> r;
        for (int i = 0; i < rows_; ++i) r.push_back(row(i));
        return r;
    }

    void append_row(std::span<const value_type> r) {
        require(static_cast<int>(r.size()) == cols_, ErrorKind::DimensionMismatch, "row length");
        a_.insert(a_.end(), r.begin(), r.end());
        ++rows_;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        require(a.cols_ == b.rows_, ErrorKind::DimensionMismatch, "matrix product shape");
        Matrix r(a.field_, a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const auto& x = a(i, k);
                if (is_zero(x)) continue;
                for (int j = 0; j < b.cols_; ++j) r(i, j) = r(i, j) + x * b(k, j);
            }
        return r;
    }

    std::vector<value_type> apply(std::span<const value_type> v) const {
        require(static_cast<int>(v.size()) == cols_, ErrorKind::DimensionMismatch, "vector length");
        std::vector<value_type> r(rows_, field_.zero());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] = r[i] + (*this)(i, j) * v[j];
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    std::vector<int> rref_in_place() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int piv = -1;
            for (int i = r; i < rows_; ++i)
                if (!is_zero((*this)(i, c))) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            if (piv != r)
                for (int j = 0; j < cols_; ++j) std::swap((*this)(piv, j), (*this)(r, j));
            auto inv = inverse((*this)(r, c));
            for (int j = c; j < cols_; ++j) (*this)(r, j) = (*this)(r, j) * inv;
            for (int i = 0; i < rows_; ++i) {
                if (i == r) continue;
                auto factor = (*this)(i, c);
                if (is_zero(factor)) continue;
                for (int j = c; j < cols_; ++j) (*this)(i, j) = (*this)(i, j) - factor * (*this)(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    Matrix rref() const {
        Matrix m = *this;
        m.rref_in_place();
        return m;
    }

    int rank() const {
        Matrix m = *this;
        return static_cast<int>(m.rref_in_place().size());
    }

    std::optional<Matrix> inverse_matrix() const {
        require(rows_ == cols_, ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
        Matrix aug(field_, rows_, 2 * cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_ + i) = field_.one();
        }
        auto piv = aug.rref_in_place();
        if (static_cast<int>(piv.size()) < rows_ || piv[rows_ - 1] >= cols_) return std::nullopt;
        Matrix inv(field_, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
        return inv;
    }

private:
    F field_;
    int rows_;
    int cols_;
    std::vector<value_type> a_;
};

template <ExactField F>
struct NullspaceResult {
    int rank;
    std::vector<std::vector<typename F::value_type>> basis;
};

/// Rank and an exact nullspace basis (one vector per free column, with a 1
/// in that column).
template <ExactField F>
NullspaceResult<F> nullspace_rank(const Matrix<F>& m) {
    Matrix<F> r = m;
    auto pivots = r.rref_in_place();
    const F& field = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    NullspaceResult<F> out{static_cast<int>(pivots.size()), {}};
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename F::value_type> v(m.cols(), field.zero());
        v[free] = field.one();
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(static_cast<int>(i), free);
        out.basis.push_back(std::move(v));
    }
    return out;
}

/// Some solution of m * x = b, or nullopt when inconsistent.
template <ExactField F>
std::optional<std::vector<typename F::value_type>> solve(const Matrix<F>& m, std::span<const typename F::value_type> b) {
    require(static_cast<int>(b.size()) == m.rows(), ErrorKind::DimensionMismatch, "right-hand side length");
    Matrix<F> aug(m.field(), m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto piv = aug.rref_in_place();
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    std::vector<typename F::value_type> x(m.cols(), m.field().zero());
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(static_cast<int>(i), m.cols());
    return x;
}

/// Rank of a list of equal-length vectors.
template <ExactField F>
int rank_of(const F& field, const std::vector<std::vector<typename F::value_type>>& vecs, int len) {
    if (vecs.empty()) return 0;
    return Matrix<F>::from_rows(field, vecs, len).rank();
}

}  // namespace fanowb
