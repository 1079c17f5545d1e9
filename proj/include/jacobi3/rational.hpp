#pragma once

// Exact rational helpers on top of GMP: parsing, formatting, powers and
// fraction-free determinants.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jacobi3/errors.hpp"

namespace jacobi3 {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or "p" (optional sign, no decimal point).
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw invalid_input("empty rational literal");
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        const bool ok = (c >= '0' && c <= '9') || c == '/' || ((c == '-' || c == '+') && i == 0);
        if (!ok) throw invalid_input("malformed rational literal '" + s + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    Rational q;
    if (q.set_str(s, 10) != 0) throw invalid_input("malformed rational literal '" + s + "'");
    if (q.get_den() == 0) throw invalid_input("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

/// Canonical "p/q" form; integers are printed as "p/1" so the format is uniform.
inline std::string format_rational(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational pow(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) throw invalid_input("zero to a negative power");
        return pow(Rational(1) / base, -exponent);
    }
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Integer pow2(unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

/// Dense row-major square matrix used by the exact linear algebra.
template <class T>
struct SquareMatrix {
    std::size_t n = 0;
    std::vector<T> a;

    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t size) : n(size), a(size * size, T(0)) {}

    T& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// Bareiss fraction-free elimination. Every division is exact, so the
/// intermediate entries stay integral and bounded by Hadamard-type minors.
inline Integer bareiss_determinant(SquareMatrix<Integer> m) {
    const std::size_t n = m.n;
    if (n == 0) return 1;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
            if (swap_row == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : Integer(-m(n - 1, n - 1));
}

/// Exact determinant of a rational matrix: clear each row's denominators,
/// run Bareiss over Z, divide the row scalings back out.
inline Rational determinant(const SquareMatrix<Rational>& m) {
    const std::size_t n = m.n;
    SquareMatrix<Integer> z(n);
    Integer scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j) {
            Rational t = m(i, j) * l;
            z(i, j) = t.get_num();
        }
        scale *= l;
    }
    Rational d(bareiss_determinant(std::move(z)), scale);
    d.canonicalize();
    return d;
}

}  // namespace jacobi3
