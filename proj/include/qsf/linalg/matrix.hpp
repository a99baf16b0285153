#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qsf {

struct SingularMatrix : std::domain_error {
    SingularMatrix() : std::domain_error("singular matrix") {}
};

/// Dense row-major matrix over an exact field.
template <class T>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const
    {
        for (const auto& x : a_) {
            if (!x.is_zero()) return false;
        }
        return true;
    }

    Matrix transpose() const
    {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        }
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        Matrix r(a.rows_, b.cols_);
        std::vector<T> acc;
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const T& y = b(k, j);
                    if (y.is_zero()) continue;
                    r(i, j) += x * y;
                }
            }
        }
        return r;
    }

    friend Matrix operator+(Matrix a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
        for (std::size_t i = 0; i < a.a_.size(); ++i) {
            if (!b.a_[i].is_zero()) a.a_[i] += b.a_[i];
        }
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
        for (std::size_t i = 0; i < a.a_.size(); ++i) {
            if (!b.a_[i].is_zero()) a.a_[i] -= b.a_[i];
        }
        return a;
    }

    friend Matrix operator*(const T& s, Matrix a)
    {
        for (auto& x : a.a_) {
            if (!x.is_zero()) x = s * x;
        }
        return a;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    // Gauss-Jordan elimination; any nonzero pivot will do in an exact field.
    Matrix inverse() const
    {
        if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
        const std::size_t n = rows_;
        Matrix a(*this);
        Matrix inv = identity(n);
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            while (p < n && a(p, c).is_zero()) ++p;
            if (p == n) throw SingularMatrix{};
            if (p != c) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(a(p, j), a(c, j));
                    std::swap(inv(p, j), inv(c, j));
                }
            }
            const T piv = a(c, c).inverse();
            for (std::size_t j = 0; j < n; ++j) {
                if (!a(c, j).is_zero()) a(c, j) = a(c, j) * piv;
                if (!inv(c, j).is_zero()) inv(c, j) = inv(c, j) * piv;
            }
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || a(r, c).is_zero()) continue;
                const T f = a(r, c);
                for (std::size_t j = 0; j < n; ++j) {
                    if (!a(c, j).is_zero()) a(r, j) -= f * a(c, j);
                    if (!inv(c, j).is_zero()) inv(r, j) -= f * inv(c, j);
                }
            }
        }
        return inv;
    }

    // Inverse of an upper-triangular matrix by back substitution.
    Matrix upper_triangular_inverse() const
    {
        const std::size_t n = rows_;
        Matrix inv(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t ii = j + 1; ii-- > 0;) {
                T s = ii == j ? T(1) : T();
                for (std::size_t k = ii + 1; k <= j; ++k) {
                    if (!(*this)(ii, k).is_zero() && !inv(k, j).is_zero()) s -= (*this)(ii, k) * inv(k, j);
                }
                if ((*this)(ii, ii).is_zero()) throw SingularMatrix{};
                inv(ii, j) = s.is_zero() ? s : s / (*this)(ii, ii);
            }
        }
        return inv;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

} // namespace qsf
