#pragma once

// Homogeneous polynomials in three variables with exact rational
// coefficients, and the left action of GL3(Q) on them.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "jacobi3/errors.hpp"
#include "jacobi3/rational.hpp"

namespace jacobi3 {

using Exponent = std::array<int, 3>;

/// Number of monomials of degree d in three variables.
constexpr std::size_t monomial_count(int d) { return static_cast<std::size_t>((d + 1) * (d + 2) / 2); }

/// Position of x^i y^j z^k in the descending lexicographic order
/// (d,0,0), (d-1,1,0), (d-1,0,1), (d-2,2,0), ...
constexpr std::size_t monomial_index(int d, int i, int j) {
    return static_cast<std::size_t>((d - i) * (d - i + 1) / 2 + (d - i - j));
}

/// All exponent triples of degree d in descending lexicographic order.
inline std::vector<Exponent> monomials(int d) {
    std::vector<Exponent> out;
    out.reserve(monomial_count(d));
    for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
    return out;
}

class TernaryForm {
public:
    TernaryForm() = default;

    explicit TernaryForm(int degree) : degree_(degree), coeffs_(monomial_count(degree)) {
        if (degree < 0) throw invalid_input("negative form degree");
    }

    int degree() const { return degree_; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    Rational& coeff(int i, int j, int k) {
        check(i, j, k);
        return coeffs_[monomial_index(degree_, i, j)];
    }
    const Rational& coeff(int i, int j, int k) const {
        check(i, j, k);
        return coeffs_[monomial_index(degree_, i, j)];
    }
    const Rational& coeff(const Exponent& e) const { return coeff(e[0], e[1], e[2]); }
    Rational& coeff(const Exponent& e) { return coeff(e[0], e[1], e[2]); }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    /// Partial derivative with respect to variable 0, 1 or 2.
    TernaryForm partial(int var) const {
        if (degree_ == 0) return TernaryForm(0);
        TernaryForm out(degree_ - 1);
        for (const auto& e : monomials(degree_)) {
            if (e[var] == 0) continue;
            Exponent f = e;
            --f[var];
            out.coeff(f) += coeff(e) * e[var];
        }
        return out;
    }

    TernaryForm& operator*=(const Rational& s) {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }
    TernaryForm& operator+=(const TernaryForm& o) {
        if (o.degree_ != degree_) throw invalid_input("adding forms of different degree");
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }

    friend TernaryForm operator*(TernaryForm f, const Rational& s) { return f *= s; }
    friend TernaryForm operator*(const Rational& s, TernaryForm f) { return f *= s; }
    friend TernaryForm operator+(TernaryForm a, const TernaryForm& b) { return a += b; }

    friend TernaryForm operator*(const TernaryForm& a, const TernaryForm& b) {
        TernaryForm out(a.degree_ + b.degree_);
        const auto ea = monomials(a.degree_);
        const auto eb = monomials(b.degree_);
        for (std::size_t p = 0; p < ea.size(); ++p) {
            if (a.coeffs_[p] == 0) continue;
            for (std::size_t q = 0; q < eb.size(); ++q) {
                if (b.coeffs_[q] == 0) continue;
                out.coeff(ea[p][0] + eb[q][0], ea[p][1] + eb[q][1], ea[p][2] + eb[q][2]) += a.coeffs_[p] * b.coeffs_[q];
            }
        }
        return out;
    }

    friend bool operator==(const TernaryForm& a, const TernaryForm& b) {
        return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }

    /// Evaluates at an arbitrary point with any coefficient-compatible ring.
    template <class T>
    T evaluate(const T& x, const T& y, const T& z) const {
        T acc(0);
        for (const auto& e : monomials(degree_)) {
            const Rational& c = coeff(e);
            if (c == 0) continue;
            T term(c);
            for (int p = 0; p < e[0]; ++p) term *= x;
            for (int p = 0; p < e[1]; ++p) term *= y;
            for (int p = 0; p < e[2]; ++p) term *= z;
            acc += term;
        }
        return acc;
    }

    static TernaryForm monomial(int i, int j, int k, const Rational& c = 1) {
        TernaryForm f(i + j + k);
        f.coeff(i, j, k) = c;
        return f;
    }

    /// Linear form a x + b y + c z.
    static TernaryForm linear(const Rational& a, const Rational& b, const Rational& c) {
        TernaryForm f(1);
        f.coeff(1, 0, 0) = a;
        f.coeff(0, 1, 0) = b;
        f.coeff(0, 0, 1) = c;
        return f;
    }

private:
    void check(int i, int j, int k) const {
        if (i < 0 || j < 0 || k < 0 || i + j + k != degree_)
            throw invalid_input("exponent triple does not match form degree " + std::to_string(degree_));
    }

    int degree_ = 0;
    std::vector<Rational> coeffs_ = std::vector<Rational>(1);
};

/// Invertible 3x3 rational matrix acting on column vectors (x, y, z).
class GL3Matrix {
public:
    using Entries = std::array<std::array<Rational, 3>, 3>;

    explicit GL3Matrix(const Entries& e) : e_(e) {
        det_ = e_[0][0] * (e_[1][1] * e_[2][2] - e_[1][2] * e_[2][1]) -
               e_[0][1] * (e_[1][0] * e_[2][2] - e_[1][2] * e_[2][0]) +
               e_[0][2] * (e_[1][0] * e_[2][1] - e_[1][1] * e_[2][0]);
        if (det_ == 0) throw invalid_input("singular matrix cannot act on forms");
    }

    static GL3Matrix identity() {
        Entries e;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) e[i][j] = (i == j) ? 1 : 0;
        return GL3Matrix(e);
    }

    static GL3Matrix scalar(const Rational& s) {
        Entries e;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) e[i][j] = (i == j) ? s : Rational(0);
        return GL3Matrix(e);
    }

    const Rational& operator()(int i, int j) const { return e_[i][j]; }
    const Rational& det() const { return det_; }
    const Entries& entries() const { return e_; }

    GL3Matrix inverse() const {
        Entries inv;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
                const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
                inv[i][j] = (e_[r0][c0] * e_[r1][c1] - e_[r0][c1] * e_[r1][c0]) / det_;
            }
        return GL3Matrix(inv);
    }

    friend GL3Matrix operator*(const GL3Matrix& a, const GL3Matrix& b) {
        Entries p;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                p[i][j] = 0;
                for (int k = 0; k < 3; ++k) p[i][j] += a.e_[i][k] * b.e_[k][j];
            }
        return GL3Matrix(p);
    }

private:
    Entries e_;
    Rational det_;
};

/// Substitution x -> m x, i.e. the form x |-> F(m x).
inline TernaryForm substitute(const GL3Matrix& m, const TernaryForm& f) {
    const int d = f.degree();
    std::array<TernaryForm, 3> rows{TernaryForm::linear(m(0, 0), m(0, 1), m(0, 2)),
                                    TernaryForm::linear(m(1, 0), m(1, 1), m(1, 2)),
                                    TernaryForm::linear(m(2, 0), m(2, 1), m(2, 2))};
    std::array<std::vector<TernaryForm>, 3> powers;
    for (int v = 0; v < 3; ++v) {
        powers[v].push_back(TernaryForm::monomial(0, 0, 0));
        for (int p = 1; p <= d; ++p) powers[v].push_back(powers[v].back() * rows[v]);
    }
    TernaryForm out(d);
    for (const auto& e : monomials(d)) {
        const Rational& c = f.coeff(e);
        if (c == 0) continue;
        out += c * (powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]]);
    }
    return out;
}

/// Left action (u . F)(x) = F(u^{-1} x).
inline TernaryForm gl3_act(const GL3Matrix& u, const TernaryForm& f) { return substitute(u.inverse(), f); }

}  // namespace jacobi3
