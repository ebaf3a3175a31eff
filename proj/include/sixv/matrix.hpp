#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sixv/errors.hpp"
#include "sixv/field.hpp"

namespace sixv {

/// Dense matrix over an exact field F.  Row index first; sizes here are
/// small (weight-space blocks and finite-dimensional auxiliary spaces), so
/// the plain cubic algorithms are all we need.
template <class F>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), d_(rows * cols) {}

    static Matrix identity(size_t n, const F& one) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    F& operator()(size_t i, size_t j) { return d_[i * cols_ + j]; }
    const F& operator()(size_t i, size_t j) const { return d_[i * cols_ + j]; }

    bool is_zero() const {
        for (const F& x : d_)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix operator-() const {
        Matrix m(rows_, cols_);
        for (size_t k = 0; k < d_.size(); ++k) m.d_[k] = -d_[k];
        return m;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DomainError("matrix shape mismatch");
        Matrix m(a.rows_, a.cols_);
        for (size_t k = 0; k < m.d_.size(); ++k) m.d_[k] = a.d_[k] + b.d_[k];
        return m;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DomainError("matrix shape mismatch");
        Matrix m(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                const F& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (size_t j = 0; j < b.cols_; ++j) {
                    const F& bkj = b(k, j);
                    if (!bkj.is_zero()) m(i, j) += aik * bkj;
                }
            }
        return m;
    }

    Matrix scaled(const F& s) const {
        Matrix m(rows_, cols_);
        for (size_t k = 0; k < d_.size(); ++k) m.d_[k] = d_[k] * s;
        return m;
    }

    Matrix transposed() const {
        Matrix m(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    F trace() const {
        if (rows_ != cols_) throw DomainError("trace of non-square matrix");
        F t;
        for (size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    /// Determinant by Gaussian elimination with exact field arithmetic.
    F det() const {
        if (rows_ != cols_) throw DomainError("determinant of non-square matrix");
        if (rows_ == 0) throw DomainError("determinant of empty matrix");
        Matrix w = *this;
        size_t n = rows_;
        bool negate = false;
        F acc; // assembled as a product of pivots below
        bool acc_set = false;
        for (size_t col = 0; col < n; ++col) {
            size_t piv = col;
            while (piv < n && w(piv, col).is_zero()) ++piv;
            if (piv == n) return F(); // zero column: singular
            if (piv != col) {
                for (size_t j = col; j < n; ++j) std::swap(w(piv, j), w(col, j));
                negate = !negate;
            }
            const F pivot = w(col, col);
            if (acc_set)
                acc *= pivot;
            else {
                acc = pivot;
                acc_set = true;
            }
            for (size_t i = col + 1; i < n; ++i) {
                if (w(i, col).is_zero()) continue;
                F f = w(i, col) / pivot;
                for (size_t j = col; j < n; ++j) w(i, j) -= f * w(col, j);
            }
        }
        return negate ? -acc : acc;
    }

    /// Solves A x = rhs for square nonsingular A; throws SingularSampleError
    /// when the elimination meets a zero pivot column.
    static std::vector<F> solve(Matrix a, std::vector<F> rhs) {
        if (a.rows_ != a.cols_ || rhs.size() != a.rows_)
            throw DomainError("matrix shape mismatch in solve");
        size_t n = a.rows_;
        for (size_t col = 0; col < n; ++col) {
            size_t piv = col;
            while (piv < n && a(piv, col).is_zero()) ++piv;
            if (piv == n) throw SingularSampleError("singular linear system");
            if (piv != col) {
                for (size_t j = col; j < n; ++j) std::swap(a(piv, j), a(col, j));
                std::swap(rhs[piv], rhs[col]);
            }
            const F pivot = a(col, col);
            for (size_t i = col + 1; i < n; ++i) {
                if (a(i, col).is_zero()) continue;
                F f = a(i, col) / pivot;
                for (size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
                rhs[i] -= f * rhs[col];
            }
        }
        std::vector<F> x(n);
        for (size_t ii = n; ii-- > 0;) {
            F s = rhs[ii];
            for (size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
            x[ii] = s / a(ii, ii);
        }
        return x;
    }

private:
    size_t rows_, cols_;
    std::vector<F> d_;
};

} // namespace sixv
