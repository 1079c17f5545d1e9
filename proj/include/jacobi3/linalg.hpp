#pragma once

// Small dense complex and real matrices (g <= 4, 2g-column period matrices).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "jacobi3/errors.hpp"
#include "jacobi3/mp.hpp"

namespace jacobi3 {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw invalid_input("matrix product shape mismatch");
        Matrix p(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
            }
        return p;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    template <class S>
    Matrix& scale(const S& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

template <class R>
using CMatrix = Matrix<Complex<R>>;

using IntMatrix = Matrix<long long>;

/// LU with partial pivoting; returns determinant and (optionally) the inverse.
/// Throws numeric_error when the pivot ratio signals near-singularity.
template <class R>
Complex<R> lu_solve(const CMatrix<R>& a, CMatrix<R>* inverse, double min_pivot_ratio = 0) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw invalid_input("square matrix required");
    CMatrix<R> m = a;
    CMatrix<R> inv = CMatrix<R>::identity(n);
    Complex<R> det(R(1), R(0));
    R max_entry(0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) max_entry = std::max(max_entry, abs(m(i, j)));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        R best = abs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            R v = abs(m(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0 || (min_pivot_ratio > 0 && to_double(best) < min_pivot_ratio * to_double(max_entry)))
            throw numeric_error("matrix is singular to working precision");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(k, j), m(piv, j));
                std::swap(inv(k, j), inv(piv, j));
            }
            det = -det;
        }
        det *= m(k, k);
        const Complex<R> p = m(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            m(k, j) /= p;
            inv(k, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const Complex<R> f = m(i, k);
            if (f.re == 0 && f.im == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    if (inverse) *inverse = std::move(inv);
    return det;
}

template <class R>
CMatrix<R> inverse(const CMatrix<R>& a, double min_pivot_ratio = 0) {
    CMatrix<R> inv;
    lu_solve(a, &inv, min_pivot_ratio);
    return inv;
}

template <class R>
Complex<R> determinant(const CMatrix<R>& a) {
    return lu_solve<R>(a, nullptr);
}

template <class R>
Matrix<R> real_part(const CMatrix<R>& a) {
    Matrix<R> r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).re;
    return r;
}

template <class R>
Matrix<R> imag_part(const CMatrix<R>& a) {
    Matrix<R> r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).im;
    return r;
}

template <class R>
double max_abs(const CMatrix<R>& a) {
    double m = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, to_double(abs(a(i, j))));
    return m;
}

/// ||a - a^T||_max.
template <class R>
double symmetry_residual(const CMatrix<R>& a) {
    double m = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) m = std::max(m, to_double(abs(a(i, j) - a(j, i))));
    return m;
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations (double).
inline std::vector<double> symmetric_eigenvalues(Matrix<double> a) {
    const std::size_t n = a.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

template <class R>
Matrix<double> to_double_matrix(const Matrix<R>& a) {
    Matrix<double> d(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) d(i, j) = to_double(a(i, j));
    return d;
}

/// Smallest eigenvalue of the (symmetrized) imaginary part.
template <class R>
double min_eig_imag(const CMatrix<R>& tau) {
    Matrix<double> y = to_double_matrix(imag_part(tau));
    for (std::size_t i = 0; i < y.rows(); ++i)
        for (std::size_t j = i + 1; j < y.cols(); ++j) y(i, j) = y(j, i) = 0.5 * (y(i, j) + y(j, i));
    return symmetric_eigenvalues(y).front();
}

/// Upper-triangular U with U^T U = a (a symmetric positive definite).
inline Matrix<double> cholesky_upper(const Matrix<double>& a) {
    const std::size_t n = a.rows();
    Matrix<double> u(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = a(i, i);
        for (std::size_t k = 0; k < i; ++k) s -= u(k, i) * u(k, i);
        if (!(s > 0)) throw invalid_input("matrix is not positive definite");
        u(i, i) = std::sqrt(s);
        for (std::size_t j = i + 1; j < n; ++j) {
            double t = a(i, j);
            for (std::size_t k = 0; k < i; ++k) t -= u(k, i) * u(k, j);
            u(i, j) = t / u(i, i);
        }
    }
    return u;
}

}  // namespace jacobi3
