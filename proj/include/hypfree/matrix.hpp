#pragma once

// Dense exact linear algebra over any exact field type.

#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polynomial.hpp"
#include "scalar.hpp"

namespace hypfree {

template <class T>
concept ExactField = std::regular<T> && requires(T a, T b) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { a / b } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
    { a.is_zero() } -> std::convertible_to<bool>;
    T(0);
    T(1);
};

template <ExactField T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("Matrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    void append_row(std::span<const T> values) {
        if (rows_ == 0 && cols_ == 0)
            cols_ = values.size();
        if (values.size() != cols_)
            throw std::invalid_argument("Matrix::append_row: width mismatch");
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t c = 0; c < cols_; ++c)
            std::swap((*this)(a, c), (*this)(b, c));
    }

    std::vector<T> apply(std::span<const T> v) const {
        if (v.size() != cols_)
            throw std::invalid_argument("Matrix::apply: dimension mismatch");
        std::vector<T> out(rows_, T(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!(*this)(r, c).is_zero() && !v[c].is_zero())
                    out[r] = out[r] + (*this)(r, c) * v[c];
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("Matrix product: dimension mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero())
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero())
                        out(i, j) = out(i, j) + a(i, k) * b(k, j);
            }
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Reduced row echelon form. `transform` satisfies transform * input == rref
/// when requested.
template <ExactField T>
struct Echelon {
    Matrix<T> rref;
    std::vector<std::size_t> pivots;
    std::optional<Matrix<T>> transform;
    std::size_t rank() const noexcept { return pivots.size(); }
};

namespace detail {
template <ExactField T>
void eliminate_column(Matrix<T>& m, std::size_t pivot_row, std::size_t col, Matrix<T>* tr) {
    T inv = T(1) / m(pivot_row, col);
    for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(pivot_row, c).is_zero())
            m(pivot_row, c) = m(pivot_row, c) * inv;
    if (tr)
        for (std::size_t c = 0; c < tr->cols(); ++c)
            if (!(*tr)(pivot_row, c).is_zero())
                (*tr)(pivot_row, c) = (*tr)(pivot_row, c) * inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r == pivot_row || m(r, col).is_zero())
            continue;
        T f = m(r, col);
        for (std::size_t c = col; c < m.cols(); ++c)
            if (!m(pivot_row, c).is_zero())
                m(r, c) = m(r, c) - f * m(pivot_row, c);
        if (tr)
            for (std::size_t c = 0; c < tr->cols(); ++c)
                if (!(*tr)(pivot_row, c).is_zero())
                    (*tr)(r, c) = (*tr)(r, c) - f * (*tr)(pivot_row, c);
    }
}
} // namespace detail

/// Gauss-Jordan elimination; the pivot in each column is the first nonzero
/// entry at or below the current row, so the result is deterministic.
template <ExactField T>
Echelon<T> row_reduce(Matrix<T> m, bool with_transform = false) {
    Echelon<T> out;
    std::optional<Matrix<T>> tr;
    if (with_transform)
        tr = Matrix<T>::identity(m.rows());
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col).is_zero())
            ++p;
        if (p == m.rows())
            continue;
        m.swap_rows(p, row);
        if (tr)
            tr->swap_rows(p, row);
        detail::eliminate_column(m, row, col, tr ? &*tr : nullptr);
        out.pivots.push_back(col);
        ++row;
    }
    out.rref = std::move(m);
    out.transform = std::move(tr);
    return out;
}

template <ExactField T>
struct KernelResult {
    std::size_t rank = 0;
    std::vector<std::vector<T>> basis;
};

/// Basis of the right null space. One vector per free column f, with a 1 in
/// position f and zeros in the other free positions.
template <ExactField T>
KernelResult<T> kernel_basis(const Matrix<T>& m) {
    Echelon<T> e = row_reduce(m);
    KernelResult<T> out;
    out.rank = e.rank();
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : e.pivots)
        is_pivot[p] = true;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<T> v(m.cols(), T(0));
        v[f] = T(1);
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            if (!e.rref(r, f).is_zero())
                v[e.pivots[r]] = -e.rref(r, f);
        out.basis.push_back(std::move(v));
    }
    return out;
}

template <ExactField T>
std::size_t matrix_rank(const Matrix<T>& m) {
    return row_reduce(m).rank();
}

/// Solves m * x = rhs; returns the solution with free variables set to 0,
/// or nullopt when inconsistent.
template <ExactField T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& rhs) {
    if (rhs.size() != m.rows())
        throw std::invalid_argument("solve: rhs size mismatch");
    Matrix<T> aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            aug(r, c) = m(r, c);
        aug(r, m.cols()) = rhs[r];
    }
    Echelon<T> e = row_reduce(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == m.cols())
        return std::nullopt;
    std::vector<T> x(m.cols(), T(0));
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        x[e.pivots[r]] = e.rref(r, m.cols());
    return x;
}

/// Incrementally grown row space, kept in echelon form keyed by pivot
/// column. Used to test membership and extract complements.
template <ExactField T>
class SpanBuilder {
  public:
    explicit SpanBuilder(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return rows_.size(); }

    /// Residual of v after reduction against the current rows.
    std::vector<T> reduce(std::vector<T> v) const {
        if (v.size() != dim_)
            throw std::invalid_argument("SpanBuilder: dimension mismatch");
        for (const auto& [pivot, row] : rows_) {
            if (v[pivot].is_zero())
                continue;
            T f = v[pivot];
            for (std::size_t c = pivot; c < dim_; ++c)
                if (!row[c].is_zero())
                    v[c] = v[c] - f * row[c];
        }
        return v;
    }

    bool contains(std::vector<T> v) const {
        auto r = reduce(std::move(v));
        for (const auto& x : r)
            if (!x.is_zero())
                return false;
        return true;
    }

    /// Adds v; returns false if it was already in the span.
    bool insert(std::vector<T> v) {
        v = reduce(std::move(v));
        std::size_t p = 0;
        while (p < dim_ && v[p].is_zero())
            ++p;
        if (p == dim_)
            return false;
        T inv = T(1) / v[p];
        for (std::size_t c = p; c < dim_; ++c)
            if (!v[c].is_zero())
                v[c] = v[c] * inv;
        rows_.emplace(p, std::move(v));
        return true;
    }

  private:
    std::size_t dim_;
    std::map<std::size_t, std::vector<T>> rows_;
};

using ExactMatrix = Matrix<Scalar>;
using PolyMatrix = std::vector<std::vector<HomPoly>>;

namespace detail {
inline HomPoly cofactor_det(const PolyMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
    const std::size_t n = m.size();
    if (row == n)
        return HomPoly::constant(m[0][0].vars(), Scalar(1));
    HomPoly total;
    bool started = false;
    int sign = 1;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        std::size_t c = cols[k];
        const HomPoly& entry = m[row][c];
        if (!entry.is_zero()) {
            cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
            HomPoly minor = cofactor_det(m, cols, row + 1);
            cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
            HomPoly term = entry * minor;
            if (sign < 0)
                term = -term;
            if (!started) {
                total = std::move(term);
                started = true;
            } else {
                total += term;
            }
        }
        sign = -sign;
    }
    if (!started) {
        int d = 0;
        for (std::size_t r = row; r < n; ++r)
            for (const auto& e : m[r])
                if (!e.is_zero()) {
                    d += e.degree();
                    break;
                }
        return HomPoly(m[0][0].vars(), d);
    }
    return total;
}

inline HomPoly bareiss_det(PolyMatrix m) {
    const std::size_t n = m.size();
    const int vars = m[0][0].vars();
    HomPoly prev = HomPoly::constant(vars, Scalar(1));
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero())
                ++p;
            if (p == n)
                return HomPoly(vars, 0);
            std::swap(m[k], m[p]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                HomPoly num = m[k][k] * m[i][j];
                num -= m[i][k] * m[k][j];
                auto q = exact_divide(num, prev);
                if (!q)
                    throw std::logic_error("det_poly: Bareiss step not exact");
                m[i][j] = std::move(*q);
            }
            m[i][k] = HomPoly(vars, 0);
        }
        prev = m[k][k];
    }
    HomPoly d = m[n - 1][n - 1];
    return negate ? -d : d;
}
} // namespace detail

/// Determinant of a square matrix of homogeneous polynomials. Cofactor
/// expansion up to 4x4, fraction-free Bareiss elimination beyond.
inline HomPoly det_poly(const PolyMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0)
        throw std::invalid_argument("det_poly: empty matrix");
    for (const auto& row : m)
        if (row.size() != n)
            throw std::invalid_argument("det_poly: matrix is not square");
    if (n <= 4) {
        std::vector<std::size_t> cols(n);
        for (std::size_t i = 0; i < n; ++i)
            cols[i] = i;
        return detail::cofactor_det(m, cols, 0);
    }
    return detail::bareiss_det(m);
}

} // namespace hypfree
