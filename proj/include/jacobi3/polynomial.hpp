#pragma once

// Univariate and bivariate polynomials: exact arithmetic over Q for the
// discriminant in y, numeric root finding over C.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "jacobi3/errors.hpp"
#include "jacobi3/mp.hpp"
#include "jacobi3/rational.hpp"

namespace jacobi3 {

/// Dense univariate polynomial, coefficients in ascending order of degree.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }
    const Rational& lead() const { return c_.back(); }

    UPoly derivative() const {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
        return UPoly(std::move(d));
    }

    Rational evaluate(const Rational& x) const {
        Rational r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    template <class R>
    Complex<R> evaluate(const Complex<R>& x) const {
        Complex<R> r;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + Complex<R>(from_rational<R>(c_[i]), R(0));
        return r;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return UPoly(std::move(c));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return UPoly(std::move(c));
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(c));
    }
    friend UPoly operator*(const Rational& s, const UPoly& a) {
        std::vector<Rational> c = a.c_;
        for (auto& x : c) x *= s;
        return UPoly(std::move(c));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    /// Quotient and remainder of a by b.
    friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw invalid_input("polynomial division by zero");
        std::vector<Rational> r = a.c_;
        const int db = b.degree();
        std::vector<Rational> q(std::max(0, a.degree() - db + 1));
        for (int i = a.degree(); i >= db; --i) {
            const Rational t = r[i] / b.lead();
            if (t == 0) continue;
            q[i - db] = t;
            for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.c_[j];
        }
        return {UPoly(std::move(q)), UPoly(std::move(r))};
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        return Rational(1) / lead() * *this;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Product of the distinct irreducible factors, monic.
inline UPoly squarefree_part(const UPoly& p) {
    if (p.degree() <= 0) return p.monic();
    return divmod(p, gcd(p, p.derivative())).first.monic();
}

inline bool is_squarefree(const UPoly& p) { return gcd(p, p.derivative()).degree() == 0; }

/// Polynomial of degree < xs.size() through the points (xs[i], ys[i]).
inline UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    const std::size_t n = xs.size();
    // Newton divided differences
    std::vector<Rational> dd = ys;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
    UPoly result({dd[n - 1]});
    for (std::size_t i = n - 1; i-- > 0;) result = result * UPoly({-xs[i], Rational(1)}) + UPoly({dd[i]});
    return result;
}

/// Discriminant of a univariate polynomial of degree n >= 1:
/// (-1)^{n(n-1)/2} Res(p, p') / lead(p).
inline Rational discriminant(const UPoly& p) {
    const int n = p.degree();
    if (n < 1) throw invalid_input("discriminant needs degree >= 1");
    const UPoly dp = p.derivative();
    const int m = n - 1;
    SquareMatrix<Rational> s(n + m);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) s(r, r + k) = p.coeff(n - k);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) s(m + r, r + k) = dp.coeff(m - k);
    Rational res = determinant(s);
    if ((n * (n - 1) / 2) % 2) res = -res;
    return res / p.lead();
}

/// Bivariate polynomial sum c[j][i] x^i y^j with rational coefficients.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(std::vector<std::vector<Rational>> c) : c_(std::move(c)) {}

    /// Degree in y (index of the last nonzero row).
    int degree_y() const {
        for (std::size_t j = c_.size(); j-- > 0;)
            for (const auto& a : c_[j])
                if (a != 0) return static_cast<int>(j);
        return -1;
    }
    int degree_x() const {
        int d = -1;
        for (const auto& row : c_)
            for (std::size_t i = 0; i < row.size(); ++i)
                if (row[i] != 0) d = std::max(d, static_cast<int>(i));
        return d;
    }

    Rational coeff(int i, int j) const {
        if (j < 0 || j >= static_cast<int>(c_.size())) return 0;
        const auto& row = c_[j];
        return i >= 0 && i < static_cast<int>(row.size()) ? row[i] : Rational(0);
    }
    void set(int i, int j, const Rational& v) {
        if (j >= static_cast<int>(c_.size())) c_.resize(j + 1);
        if (i >= static_cast<int>(c_[j].size())) c_[j].resize(i + 1);
        c_[j][i] = v;
    }

    /// Coefficient of y^j as a polynomial in x.
    UPoly y_coeff(int j) const {
        if (j < 0 || j >= static_cast<int>(c_.size())) return {};
        return UPoly(c_[j]);
    }

    BiPoly d_dy() const {
        BiPoly out;
        for (std::size_t j = 1; j < c_.size(); ++j)
            for (std::size_t i = 0; i < c_[j].size(); ++i) out.set(static_cast<int>(i), static_cast<int>(j - 1), c_[j][i] * static_cast<long>(j));
        return out;
    }
    BiPoly d_dx() const {
        BiPoly out;
        for (std::size_t j = 0; j < c_.size(); ++j)
            for (std::size_t i = 1; i < c_[j].size(); ++i) out.set(static_cast<int>(i - 1), static_cast<int>(j), c_[j][i] * static_cast<long>(i));
        return out;
    }

    /// Polynomial in y obtained by fixing x.
    UPoly at_x(const Rational& x) const {
        std::vector<Rational> c;
        for (const auto& row : c_) c.push_back(UPoly(row).evaluate(x));
        return UPoly(std::move(c));
    }

    const std::vector<std::vector<Rational>>& rows() const { return c_; }

private:
    std::vector<std::vector<Rational>> c_;
};

/// Numeric copy of a BiPoly in a given real type, evaluated by Horner in x
/// for every y-coefficient.
template <class R>
class NumericBiPoly {
public:
    NumericBiPoly() = default;
    explicit NumericBiPoly(const BiPoly& p) {
        for (const auto& row : p.rows()) {
            std::vector<R> r;
            for (const auto& a : row) r.push_back(from_rational<R>(a));
            rows_.push_back(std::move(r));
        }
        while (!rows_.empty() && std::all_of(rows_.back().begin(), rows_.back().end(), [](const R& a) { return a == 0; }))
            rows_.pop_back();
    }

    int degree_y() const { return static_cast<int>(rows_.size()) - 1; }

    /// Coefficients (ascending in y) of P(x, .) at the given x.
    std::vector<Complex<R>> fiber(const Complex<R>& x) const {
        std::vector<Complex<R>> c;
        c.reserve(rows_.size());
        for (const auto& row : rows_) {
            Complex<R> v;
            for (std::size_t i = row.size(); i-- > 0;) v = v * x + Complex<R>(row[i], R(0));
            c.push_back(v);
        }
        return c;
    }

    Complex<R> operator()(const Complex<R>& x, const Complex<R>& y) const { return horner(fiber(x), y); }

private:
    std::vector<std::vector<R>> rows_;
};

/// Value of sum c[j] y^j.
template <class R>
Complex<R> horner(const std::vector<Complex<R>>& c, const Complex<R>& y) {
    Complex<R> v;
    for (std::size_t j = c.size(); j-- > 0;) v = v * y + c[j];
    return v;
}

/// Value and derivative of sum c[j] y^j.
template <class R>
std::pair<Complex<R>, Complex<R>> horner_with_derivative(const std::vector<Complex<R>>& c, const Complex<R>& y) {
    Complex<R> v, d;
    for (std::size_t j = c.size(); j-- > 0;) {
        d = d * y + v;
        v = v * y + c[j];
    }
    return {v, d};
}

/// All roots of sum c[j] y^j (double precision, Aberth iteration). The leading
/// coefficient must be nonzero.
inline std::vector<std::complex<double>> roots_double(const std::vector<std::complex<double>>& c,
                                                      const std::vector<std::complex<double>>* start = nullptr) {
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 1) return {};
    if (c.back() == 0.0) throw numeric_error("leading coefficient vanishes in root finding");
    auto eval = [&](std::complex<double> z) {
        std::complex<double> v = 0, d = 0;
        for (int j = n; j >= 0; --j) {
            d = d * z + v;
            v = v * z + c[j];
        }
        return std::make_pair(v, d);
    };
    std::vector<std::complex<double>> z(n);
    if (start && static_cast<int>(start->size()) == n) {
        z = *start;
    } else {
        // Cauchy-type radius for the initial circle
        double rad = 0;
        for (int j = 0; j < n; ++j) rad = std::max(rad, std::pow(std::abs(c[j] / c[n]), 1.0 / (n - j)));
        rad = std::max(rad, 1e-3);
        for (int k = 0; k < n; ++k) z[k] = std::polar(rad, 2 * M_PI * (k + 0.4) / n + 0.3);
    }
    for (int it = 0; it < 500; ++it) {
        double change = 0;
        for (int k = 0; k < n; ++k) {
            const auto [v, d] = eval(z[k]);
            if (v == 0.0) continue;
            const std::complex<double> ratio = v / d;
            std::complex<double> s = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) s += 1.0 / (z[k] - z[j]);
            const std::complex<double> w = ratio / (1.0 - ratio * s);
            z[k] -= w;
            change = std::max(change, std::abs(w) / std::max(1.0, std::abs(z[k])));
        }
        if (change < 1e-15) break;
    }
    return z;
}

/// Newton refinement of an approximate simple root of sum c[j] y^j.
template <class R>
Complex<R> newton_polish(const std::vector<Complex<R>>& c, Complex<R> y, int max_iter = 100) {
    const R tol = RealTraits<R>::epsilon() * R(16);
    for (int it = 0; it < max_iter; ++it) {
        const auto [v, d] = horner_with_derivative(c, y);
        if (v.re == 0 && v.im == 0) return y;
        if (d.re == 0 && d.im == 0) throw numeric_error("Newton step at a critical point");
        const Complex<R> step = v / d;
        y -= step;
        R scale = abs(y);
        if (scale < R(1)) scale = R(1);
        if (abs(step) <= tol * scale) return y;
    }
    return y;
}

}  // namespace jacobi3
