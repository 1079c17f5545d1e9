#pragma once

// Working-precision arithmetic. Numerical code is templated on the real type R,
// which is either double (tracking, quick checks) or the MPFR-backed Real.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <ios>
#include <limits>
#include <string>

#include "jacobi3/errors.hpp"
#include "jacobi3/rational.hpp"

namespace jacobi3 {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

constexpr unsigned default_precision_bits = 212;

inline unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

/// Sets the precision of newly created Real values for the current thread.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
        if (bits < 24 || bits > 8192) throw invalid_input("precision must lie in [24, 8192] bits");
        Real::default_precision(bits_to_digits10(bits));
    }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

template <class R>
struct RealTraits;

template <>
struct RealTraits<double> {
    static double pi() { return 3.14159265358979323846264338327950288; }
    static double from_rational(const Rational& q) { return q.get_d(); }
    static double epsilon() { return std::numeric_limits<double>::epsilon(); }
    static unsigned bits() { return 53; }
    static double to_double(double x) { return x; }
};

template <>
struct RealTraits<Real> {
    static Real pi() {
        Real r;
        mpfr_const_pi(r.backend().data(), MPFR_RNDN);
        return r;
    }
    static Real from_rational(const Rational& q) {
        Real r;
        mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static Real epsilon() {
        Real r = 1;
        return ldexp(r, -static_cast<int>(bits()) + 1);
    }
    static unsigned bits() {
        Real probe;
        return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
    }
    static double to_double(const Real& x) { return x.convert_to<double>(); }
};

template <class R>
R pi_v() {
    return RealTraits<R>::pi();
}

template <class R>
R from_rational(const Rational& q) {
    return RealTraits<R>::from_rational(q);
}

template <class R>
double to_double(const R& x) {
    return RealTraits<R>::to_double(x);
}

/// Minimal complex number over an arbitrary real type.
template <class R>
struct Complex {
    R re{0};
    R im{0};

    Complex() = default;
    Complex(R r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    Complex(R r, R i) : re(std::move(r)), im(std::move(i)) {}
    template <class S, class = std::enable_if_t<std::is_arithmetic_v<S> && !std::is_same_v<S, R>>>
    Complex(S r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        R r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator*=(const R& s) {
        re *= s;
        im *= s;
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        const R den = o.re * o.re + o.im * o.im;
        R r = (re * o.re + im * o.im) / den;
        im = (im * o.re - re * o.im) / den;
        re = std::move(r);
        return *this;
    }
    Complex& operator/=(const R& s) {
        re /= s;
        im /= s;
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator*(Complex a, const R& s) { return a *= s; }
    friend Complex operator*(const R& s, Complex a) { return a *= s; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator/(Complex a, const R& s) { return a /= s; }
    friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

template <class R>
Complex<R> conj(const Complex<R>& z) {
    return {z.re, -z.im};
}

template <class R>
R norm(const Complex<R>& z) {
    return z.re * z.re + z.im * z.im;
}

template <class R>
R abs(const Complex<R>& z) {
    using std::hypot;
    return hypot(z.re, z.im);
}

template <class R>
R arg(const Complex<R>& z) {
    using std::atan2;
    return atan2(z.im, z.re);
}

template <class R>
Complex<R> exp(const Complex<R>& z) {
    using std::cos;
    using std::exp;
    using std::sin;
    const R m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

/// exp(i theta) for real theta.
template <class R>
Complex<R> expi(const R& theta) {
    using std::cos;
    using std::sin;
    return {cos(theta), sin(theta)};
}

/// Principal square root.
template <class R>
Complex<R> sqrt(const Complex<R>& z) {
    using std::sqrt;
    const R r = abs(z);
    if (r == 0) return {R(0), R(0)};
    if (z.re >= 0) {
        const R t = sqrt((r + z.re) / 2);
        return {t, z.im / (2 * t)};
    }
    R t = sqrt((r - z.re) / 2);
    if (z.im < 0) t = -t;
    return {z.im / (2 * t), t};
}

template <class R>
Complex<R> ipow(Complex<R> base, unsigned long e) {
    Complex<R> acc(R(1), R(0));
    while (e) {
        if (e & 1u) acc *= base;
        base *= base;
        e >>= 1u;
    }
    return acc;
}

template <class R>
Complex<R> from_rational(const Rational& re, const Rational& im) {
    return {from_rational<R>(re), from_rational<R>(im)};
}

/// Converts between real types (double <-> Real).
template <class To, class From>
To convert(const From& x) {
    if constexpr (std::is_same_v<To, From>) {
        return x;
    } else if constexpr (std::is_same_v<To, double>) {
        return to_double(x);
    } else {
        return To(x);
    }
}

template <class To, class From>
Complex<To> convert(const Complex<From>& z) {
    return {convert<To>(z.re), convert<To>(z.im)};
}

/// Decimal rendering with the given number of significant digits.
inline std::string to_decimal(const Real& x, unsigned digits) { return x.str(static_cast<std::streamsize>(digits), std::ios::scientific); }

inline std::string to_decimal(double x, unsigned digits = 17) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", static_cast<int>(digits > 1 ? digits - 1 : 0), x);
    return buf;
}

inline Real parse_real(const std::string& text) {
    try {
        return Real(text);
    } catch (const std::exception&) {
        throw invalid_input("malformed decimal '" + text + "'");
    }
}

}  // namespace jacobi3
