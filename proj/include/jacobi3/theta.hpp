#pragma once

// Theta constants with half-integer characteristics, the products built from
// them, and the action of Sp(2g, Z) on the Siegel upper half space.
//
// Convention: q^x = exp(i pi x), so
//   theta[e1; e2](z, tau) = sum_n exp(i pi (v^T tau v + 2 v^T (z + e2/2))),  v = n + e1/2.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "jacobi3/errors.hpp"
#include "jacobi3/linalg.hpp"
#include "jacobi3/mp.hpp"

namespace jacobi3 {

struct ThetaCharacteristic {
    std::vector<int> eps1, eps2;

    int genus() const { return static_cast<int>(eps1.size()); }
    int dot() const {
        int s = 0;
        for (std::size_t i = 0; i < eps1.size(); ++i) s += eps1[i] * eps2[i];
        return s;
    }
    bool even() const { return dot() % 2 == 0; }

    std::string label() const {
        std::string s = "[";
        for (int e : eps1) s += static_cast<char>('0' + e);
        s += ";";
        for (int e : eps2) s += static_cast<char>('0' + e);
        return s + "]";
    }

    friend bool operator==(const ThetaCharacteristic& a, const ThetaCharacteristic& b) {
        return a.eps1 == b.eps1 && a.eps2 == b.eps2;
    }
};

/// All 2^(2g) characteristics with entries in {0,1}; eps1 major, both in
/// lexicographic order.
inline std::vector<ThetaCharacteristic> enumerate_characteristics(int g) {
    if (g < 1 || g > 4) throw invalid_input("characteristics supported for 1 <= g <= 4");
    std::vector<ThetaCharacteristic> out;
    const int n = 1 << g;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ThetaCharacteristic ch;
            for (int i = 0; i < g; ++i) {
                ch.eps1.push_back((a >> (g - 1 - i)) & 1);
                ch.eps2.push_back((b >> (g - 1 - i)) & 1);
            }
            out.push_back(std::move(ch));
        }
    return out;
}

inline std::vector<ThetaCharacteristic> even_characteristics(int g) {
    std::vector<ThetaCharacteristic> out;
    for (auto& ch : enumerate_characteristics(g))
        if (ch.even()) out.push_back(std::move(ch));
    return out;
}

/// Symmetric g x g complex matrix with positive definite imaginary part.
template <class R>
class SiegelPoint {
public:
    /// Validates symmetry to `rel_tol * ||tau||` (default 2^(8-p)) and Im tau > 0,
    /// then symmetrizes exactly.
    explicit SiegelPoint(CMatrix<R> tau, double rel_tol = -1) : tau_(std::move(tau)) {
        const std::size_t g = tau_.rows();
        if (g == 0 || g != tau_.cols()) throw invalid_input("tau must be a nonempty square matrix");
        if (rel_tol < 0) rel_tol = std::ldexp(1.0, 8 - static_cast<int>(RealTraits<R>::bits()));
        const double scale = std::max(1.0, max_abs(tau_));
        if (symmetry_residual(tau_) > rel_tol * scale)
            throw invalid_input("tau is not symmetric to working precision");
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = i + 1; j < g; ++j) {
                Complex<R> avg = (tau_(i, j) + tau_(j, i)) * R(0.5);
                tau_(i, j) = avg;
                tau_(j, i) = avg;
            }
        min_eig_ = min_eig_imag(tau_);
        if (!(min_eig_ > 0)) throw invalid_input("Im tau is not positive definite");
    }

    int genus() const { return static_cast<int>(tau_.rows()); }
    const CMatrix<R>& tau() const { return tau_; }
    double min_eig_im() const { return min_eig_; }

private:
    CMatrix<R> tau_;
    double min_eig_ = 0;
};


/// M = [[a, b], [c, d]] with M^T J M = J.
class SymplecticMatrix {
public:
    explicit SymplecticMatrix(IntMatrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() % 2 != 0) throw invalid_input("symplectic matrix must be 2g x 2g");
        if (!(m_.transpose() * standard_j(genus()) * m_ == standard_j(genus())))
            throw invalid_input("matrix is not symplectic");
    }

    int genus() const { return static_cast<int>(m_.rows() / 2); }
    const IntMatrix& matrix() const { return m_; }
    IntMatrix a() const { return m_.block(0, 0, genus(), genus()); }
    IntMatrix b() const { return m_.block(0, genus(), genus(), genus()); }
    IntMatrix c() const { return m_.block(genus(), 0, genus(), genus()); }
    IntMatrix d() const { return m_.block(genus(), genus(), genus(), genus()); }

    static IntMatrix standard_j(int g) {
        IntMatrix j(2 * g, 2 * g);
        for (int i = 0; i < g; ++i) {
            j(i, g + i) = 1;
            j(g + i, i) = -1;
        }
        return j;
    }

    static SymplecticMatrix identity(int g) { return SymplecticMatrix(IntMatrix::identity(2 * g)); }

    /// [[0, -I], [I, 0]]: tau -> -tau^{-1}.
    static SymplecticMatrix inversion(int g) {
        IntMatrix m(2 * g, 2 * g);
        for (int i = 0; i < g; ++i) {
            m(i, g + i) = -1;
            m(g + i, i) = 1;
        }
        return SymplecticMatrix(m);
    }

    /// [[I, B], [0, I]] with B symmetric: tau -> tau + B.
    static SymplecticMatrix translation(const IntMatrix& b) {
        const int g = static_cast<int>(b.rows());
        IntMatrix m = IntMatrix::identity(2 * g);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) m(i, g + j) = b(i, j);
        return SymplecticMatrix(m);
    }

    /// [[U, 0], [0, U^{-T}]] for U unimodular given with its inverse.
    static SymplecticMatrix rotation(const IntMatrix& u, const IntMatrix& u_inv) {
        const int g = static_cast<int>(u.rows());
        if (!(u * u_inv == IntMatrix::identity(g))) throw invalid_input("rotation: inverse mismatch");
        IntMatrix m(2 * g, 2 * g);
        const IntMatrix uit = u_inv.transpose();
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) {
                m(i, j) = u(i, j);
                m(g + i, g + j) = uit(i, j);
            }
        return SymplecticMatrix(m);
    }

    friend SymplecticMatrix operator*(const SymplecticMatrix& x, const SymplecticMatrix& y) {
        return SymplecticMatrix(x.m_ * y.m_);
    }

private:
    IntMatrix m_;
};

template <class R>
CMatrix<R> to_complex(const IntMatrix& m) {
    CMatrix<R> c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = Complex<R>(R(static_cast<double>(m(i, j))), R(0));
    return c;
}

template <class R>
struct SpActionResult {
    SiegelPoint<R> tau;
    Complex<R> det_j;  // det(c tau + d)
};

/// M . tau = (a tau + b)(c tau + d)^{-1}, with det(c tau + d).
template <class R>
SpActionResult<R> sp_action(const SymplecticMatrix& m, const SiegelPoint<R>& tau) {
    if (m.genus() != tau.genus()) throw invalid_input("genus mismatch in sp_action");
    const CMatrix<R>& t = tau.tau();
    const CMatrix<R> num = to_complex<R>(m.a()) * t + to_complex<R>(m.b());
    const CMatrix<R> j = to_complex<R>(m.c()) * t + to_complex<R>(m.d());
    CMatrix<R> jinv;
    Complex<R> det;
    try {
        det = lu_solve(j, &jinv, 1e-12);
    } catch (const numeric_error&) {
        throw numeric_error("c tau + d is ill-conditioned");
    }
    CMatrix<R> out = num * jinv;
    const double tol = std::ldexp(1.0, 8 - static_cast<int>(RealTraits<R>::bits())) * std::max(1.0, max_abs(jinv)) *
                       std::max(1.0, max_abs(j)) * 16;
    return {SiegelPoint<R>(std::move(out), tol), det};
}

template <class R>
struct ThetaValue {
    Complex<R> value;
    R error_bound;  // absolute bound on |computed - exact|
};

struct ThetaOptions {
    double radius_cap = 200;          // reject ellipsoids longer than this many lattice steps
    std::size_t max_points = 50'000'000;
};

namespace detail {

/// Lattice points n in Z^g with (n + shift)^T Y (n + shift) <= r2, enumerated with
/// the first coordinate innermost. Calls visit(n_first, n_last, rest) per line.
inline void enumerate_ellipsoid(const Matrix<double>& y, const std::vector<double>& shift, double r2,
                                const std::function<void(long, long, const std::vector<long>&)>& visit,
                                std::size_t max_points) {
    const std::size_t g = y.rows();
    const Matrix<double> u = cholesky_upper(y);
    std::vector<long> n(g, 0);
    std::size_t count = 0;
    // recursive over coordinates g-1 .. 1, line over coordinate 0
    std::function<void(int, double)> rec = [&](int i, double rem) {
        // partial sum s_i = sum_{j > i} U_ij w_j with w = n + shift
        double s = 0;
        for (std::size_t j = i + 1; j < g; ++j) s += u(i, j) * (static_cast<double>(n[j]) + shift[j]);
        const double center = -s / u(i, i) - shift[i];
        const double half = std::sqrt(std::max(rem, 0.0)) / u(i, i);
        const long lo = static_cast<long>(std::ceil(center - half - 1e-12));
        const long hi = static_cast<long>(std::floor(center + half + 1e-12));
        if (i == 0) {
            if (lo <= hi) {
                count += static_cast<std::size_t>(hi - lo + 1);
                if (count > max_points) throw numeric_error("theta lattice enumeration exceeds point cap");
                visit(lo, hi, n);
            }
            return;
        }
        for (long k = lo; k <= hi; ++k) {
            n[i] = k;
            const double t = u(i, i) * (static_cast<double>(k) + shift[i]) + s;
            rec(i - 1, rem - t * t);
        }
        n[i] = 0;
    };
    rec(static_cast<int>(g) - 1, r2);
}

struct TruncationPlan {
    double r2 = 0;
    double tail = 0;  // bound on the discarded part, before the e^{pi u Y^-1 u} factor
};

/// R^2 such that e^{-pi R^2/2} (1 + sqrt(2/lambda))^g <= 2^{-target_bits}.
inline TruncationPlan plan_truncation(int g, double lambda, unsigned target_bits, const ThetaOptions& opt) {
    const double lam = 0.99 * lambda;
    const double growth = g * std::log1p(std::sqrt(2 / lam));
    TruncationPlan plan;
    plan.r2 = (2 / M_PI) * (target_bits * M_LN2 + growth);
    // the ellipsoid reaches R / sqrt(lambda) lattice steps along its longest axis
    if (std::sqrt(plan.r2 / lam) > opt.radius_cap) throw numeric_error("theta truncation radius exceeds cap");
    plan.tail = std::exp(-M_PI * plan.r2 / 2 + growth);
    return plan;
}

}  // namespace detail

/// theta[eps](z, tau) by direct summation over a truncation ellipsoid.
template <class R>
ThetaValue<R> theta(const ThetaCharacteristic& eps, const std::vector<Complex<R>>& z, const SiegelPoint<R>& tau,
                    const ThetaOptions& opt = {}) {
    const int g = tau.genus();
    if (eps.genus() != g || static_cast<int>(z.size()) != g) throw invalid_input("theta: dimension mismatch");
    const unsigned p = RealTraits<R>::bits();
    const CMatrix<R>& t = tau.tau();
    const Matrix<double> y = to_double_matrix(imag_part(t));

    // center of the Gaussian: -Y^{-1} Im z; amplitude factor exp(pi u^T Y^-1 u)
    std::vector<double> u(g);
    for (int i = 0; i < g; ++i) u[i] = to_double(z[i].im);
    CMatrix<double> yc(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) yc(i, j) = Complex<double>(y(i, j), 0.0);
    const CMatrix<double> yinv = inverse(yc);
    std::vector<double> c(g, 0.0);
    double quad = 0;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) c[i] -= yinv(i, j).re * u[j];
        quad -= c[i] * u[i];
    }
    const double amp = std::exp(M_PI * quad);

    const auto plan = detail::plan_truncation(g, tau.min_eig_im(), p + 4, opt);
    std::vector<double> shift(g);
    for (int i = 0; i < g; ++i) shift[i] = eps.eps1[i] * 0.5 - c[i];

    const R pi = pi_v<R>();
    const Complex<R> ipi(R(0), pi);
    std::vector<Complex<R>> w(g);
    for (int i = 0; i < g; ++i) w[i] = z[i] + Complex<R>(R(eps.eps2[i]) / 2, R(0));
    const Complex<R> step_growth = exp(ipi * R(2) * t(0, 0));

    Complex<R> sum;
    std::size_t terms = 0;
    detail::enumerate_ellipsoid(
        y, shift, plan.r2 * (1 + 1e-9) + 1e-9,
        [&](long lo, long hi, const std::vector<long>& n) {
            std::vector<R> v(g);
            v[0] = R(static_cast<double>(lo)) + R(eps.eps1[0]) / 2;
            for (int i = 1; i < g; ++i) v[i] = R(static_cast<double>(n[i])) + R(eps.eps1[i]) / 2;
            // exponent E(v) = i pi (v^T tau v + 2 v^T w); ratio along e_0
            Complex<R> tv0, quadform, lin;
            for (int i = 0; i < g; ++i) {
                Complex<R> row;
                for (int j = 0; j < g; ++j) row += t(i, j) * v[j];
                if (i == 0) tv0 = row;
                quadform += row * v[i];
                lin += w[i] * v[i];
            }
            Complex<R> term = exp(ipi * (quadform + R(2) * lin));
            Complex<R> ratio = exp(ipi * (R(2) * tv0 + t(0, 0) + R(2) * w[0]));
            for (long k = lo; k <= hi; ++k) {
                sum += term;
                term *= ratio;
                ratio *= step_growth;
            }
            terms += static_cast<std::size_t>(hi - lo + 1);
        },
        opt.max_points);

    ThetaValue<R> out;
    out.value = sum;
    const double round = static_cast<double>(terms + 8) * 64 * std::ldexp(1.0, -static_cast<int>(p));
    out.error_bound = R(amp * (plan.tail + round));
    return out;
}

/// All theta constants theta[e](0, tau) for a list of characteristics, sharing
/// the lattice sum across the 2^g values of e2 for each e1.
template <class R>
std::vector<ThetaValue<R>> theta_constants(const std::vector<ThetaCharacteristic>& chars, const SiegelPoint<R>& tau,
                                           const ThetaOptions& opt = {}) {
    const int g = tau.genus();
    const unsigned p = RealTraits<R>::bits();
    const CMatrix<R>& t = tau.tau();
    const Matrix<double> y = to_double_matrix(imag_part(t));
    const auto plan = detail::plan_truncation(g, tau.min_eig_im(), p + 4, opt);
    const R pi = pi_v<R>();
    const Complex<R> ipi(R(0), pi);
    const Complex<R> step_growth = exp(ipi * R(2) * t(0, 0));
    const int n2 = 1 << g;

    auto bits_of = [g](const std::vector<int>& e) {
        int k = 0;
        for (int i = 0; i < g; ++i) k = (k << 1) | e[i];
        return k;
    };

    std::vector<ThetaValue<R>> out(chars.size());
    std::vector<bool> need_e1(n2, false);
    for (const auto& ch : chars) {
        if (ch.genus() != g) throw invalid_input("characteristic genus mismatch");
        need_e1[bits_of(ch.eps1)] = true;
    }

    for (int a = 0; a < n2; ++a) {
        if (!need_e1[a]) continue;
        std::vector<int> e1(g);
        for (int i = 0; i < g; ++i) e1[i] = (a >> (g - 1 - i)) & 1;
        std::vector<double> shift(g);
        for (int i = 0; i < g; ++i) shift[i] = e1[i] * 0.5;

        // sums[b] = sum_n exp(i pi v^T tau v) (-1)^{n . e2(b)}
        std::vector<Complex<R>> sums(n2);
        std::size_t terms = 0;
        detail::enumerate_ellipsoid(
            y, shift, plan.r2 * (1 + 1e-9) + 1e-9,
            [&](long lo, long hi, const std::vector<long>& n) {
                std::vector<R> v(g);
                v[0] = R(static_cast<double>(lo)) + R(e1[0]) / 2;
                for (int i = 1; i < g; ++i) v[i] = R(static_cast<double>(n[i])) + R(e1[i]) / 2;
                Complex<R> tv0, quadform;
                for (int i = 0; i < g; ++i) {
                    Complex<R> row;
                    for (int j = 0; j < g; ++j) row += t(i, j) * v[j];
                    if (i == 0) tv0 = row;
                    quadform += row * v[i];
                }
                Complex<R> term = exp(ipi * quadform);
                Complex<R> ratio = exp(ipi * (R(2) * tv0 + t(0, 0)));
                // parity of n_1..n_{g-1} against each e2, then n_0 toggles bit g-1 of b
                std::vector<int> base_sign(n2);
                for (int b = 0; b < n2; ++b) {
                    long s = 0;
                    for (int i = 1; i < g; ++i) s += n[i] * ((b >> (g - 1 - i)) & 1);
                    base_sign[b] = (s % 2 == 0) ? 1 : -1;
                }
                for (long k = lo; k <= hi; ++k) {
                    const bool odd_k = (k % 2) != 0;
                    for (int b = 0; b < n2; ++b) {
                        const bool flips = odd_k && ((b >> (g - 1)) & 1);
                        if ((base_sign[b] > 0) != flips)
                            sums[b] += term;
                        else
                            sums[b] -= term;
                    }
                    term *= ratio;
                    ratio *= step_growth;
                }
                terms += static_cast<std::size_t>(hi - lo + 1);
            },
            opt.max_points);

        const double round = static_cast<double>(terms + 8) * 64 * std::ldexp(1.0, -static_cast<int>(p));
        for (std::size_t idx = 0; idx < chars.size(); ++idx) {
            const auto& ch = chars[idx];
            if (bits_of(ch.eps1) != a) continue;
            // constant factor exp(i pi e1.e2 / 2) = i^{e1.e2}
            Complex<R> phase(R(1), R(0));
            for (int k = 0; k < ch.dot() % 4; ++k) phase *= Complex<R>(R(0), R(1));
            out[idx].value = phase * sums[bits_of(ch.eps2)];
            out[idx].error_bound = R(plan.tail + round);
        }
    }
    return out;
}

/// Elementary symmetric polynomials e_0..e_k of the inputs by the recurrence
/// on prod (1 + x_i t).
template <class T>
std::vector<T> elementary_symmetric(const std::vector<T>& x, std::size_t k) {
    std::vector<T> e(k + 1, T(0));
    e[0] = T(1);
    for (const auto& xi : x)
        for (std::size_t j = std::min(k, x.size()); j >= 1; --j) e[j] += xi * e[j - 1];
    return e;
}

/// Even theta constants at tau together with the quantities derived from them.
template <class R>
struct EvenThetaConstants {
    std::vector<ThetaCharacteristic> chars;
    std::vector<ThetaValue<R>> values;

    double max_abs_theta() const {
        double m = 0;
        for (const auto& v : values) m = std::max(m, to_double(abs(v.value)));
        return m;
    }
};

template <class R>
EvenThetaConstants<R> even_theta_constants(const SiegelPoint<R>& tau, const ThetaOptions& opt = {}) {
    EvenThetaConstants<R> tc;
    tc.chars = even_characteristics(tau.genus());
    tc.values = theta_constants(tc.chars, tau, opt);
    return tc;
}

/// A derived modular quantity with an absolute error bound and the scale
/// max|theta|^k used by the zero test.
template <class R>
struct ModularQuantity {
    Complex<R> value;
    R error_bound;
    R scale;
};

/// Raw product P(tau) of the even theta constants (no (2 i pi)^{gh} factor).
/// The scale is max|theta|^(number of factors).
template <class R>
ModularQuantity<R> chi_product(const EvenThetaConstants<R>& tc) {
    Complex<R> prod(R(1), R(0));
    R upper(1), exact_abs(1), maxabs(0);
    for (const auto& v : tc.values) {
        prod *= v.value;
        const R a = abs(v.value);
        upper *= a + v.error_bound;
        exact_abs *= a;
        if (a > maxabs) maxabs = a;
    }
    R scale(1);
    for (std::size_t i = 0; i < tc.values.size(); ++i) scale *= maxabs;
    const R round = exact_abs * R(4.0 * tc.values.size()) * RealTraits<R>::epsilon();
    return {prod, upper - exact_abs + round, scale};
}

template <class R>
ModularQuantity<R> chi_product(const SiegelPoint<R>& tau, const ThetaOptions& opt = {}) {
    const int g = tau.genus();
    if (g < 2 || g > 4) throw invalid_input("chi_product needs 2 <= g <= 4");
    return chi_product(even_theta_constants(tau, opt));
}

/// Thirty-fifth elementary symmetric function of the eighth powers of the 36
/// even theta constants (genus 3). The scale is e35(|theta|^8), the size of
/// the sum without cancellation.
template <class R>
ModularQuantity<R> sigma140(const EvenThetaConstants<R>& tc) {
    if (tc.values.size() != 36) throw invalid_input("sigma140 needs the 36 even genus-3 theta constants");
    std::vector<Complex<R>> x;
    std::vector<R> xabs, xup;
    R maxabs(0);
    for (const auto& v : tc.values) {
        x.push_back(ipow(v.value, 8));
        const R a = abs(v.value);
        if (a > maxabs) maxabs = a;
        R au = a + v.error_bound;
        R a8 = a * a;
        a8 *= a8;
        a8 *= a8;
        R au8 = au * au;
        au8 *= au8;
        au8 *= au8;
        xabs.push_back(a8);
        xup.push_back(au8);
    }
    const auto e = elementary_symmetric(x, 35);
    const auto eabs = elementary_symmetric(xabs, 35);
    const auto eup = elementary_symmetric(xup, 35);
    const R round = eabs[35] * R(1024.0) * RealTraits<R>::epsilon();
    return {e[35], eup[35] - eabs[35] + round, eabs[35]};
}

template <class R>
ModularQuantity<R> sigma140(const SiegelPoint<R>& tau, const ThetaOptions& opt = {}) {
    if (tau.genus() != 3) throw invalid_input("sigma140 is defined for genus 3");
    return sigma140(even_theta_constants(tau, opt));
}

/// Outcome of the numerical zero test.
enum class ZeroTest { zero, nonzero, indeterminate };

/// |value| < max(10^{-0.15 p} scale, 64 error_bound, input_tol scale) counts as
/// zero; values within one decade of the threshold are indeterminate.
template <class R>
ZeroTest zero_test(const ModularQuantity<R>& q, double input_tol = 0, double* threshold_out = nullptr,
                   double* ratio_out = nullptr) {
    using std::log10;
    const double p = RealTraits<R>::bits();
    // work in log10 to survive the huge dynamic range of weight-140 quantities
    const double log_scale = q.scale > 0 ? to_double(log10(q.scale)) : -std::numeric_limits<double>::infinity();
    double log_thr = -0.15 * p + log_scale;
    if (q.error_bound > 0) log_thr = std::max(log_thr, std::log10(64.0) + to_double(log10(q.error_bound)));
    if (input_tol > 0) log_thr = std::max(log_thr, std::log10(input_tol) + log_scale);
    const R a = abs(q.value);
    const double log_val = a > 0 ? to_double(log10(a)) : -std::numeric_limits<double>::infinity();
    if (threshold_out) *threshold_out = log_thr;
    if (ratio_out) *ratio_out = log_val - log_thr;
    if (log_val < log_thr - 1) return ZeroTest::zero;
    if (log_val > log_thr + 1) return ZeroTest::nonzero;
    return ZeroTest::indeterminate;
}

/// Which even theta constants vanish, and the verdicts for P and sigma140 that
/// follow from it. P vanishes exactly when one factor does. Each term of
/// e35(theta^8) omits one factor, so sigma140 vanishes when two or more
/// factors vanish; with no vanishing factor it can still cancel, which is
/// tested against e35(|theta|^8).
struct VanishingProfile {
    std::vector<ZeroTest> theta;      // per even characteristic
    std::vector<double> log_margin;   // log10 |theta| - log10 threshold
    int zero_count = 0;
    int indeterminate_count = 0;
    ZeroTest chi = ZeroTest::nonzero;
    ZeroTest sigma = ZeroTest::nonzero;
    double sigma_log_margin = 0;      // only meaningful when no theta vanishes
};

template <class R>
VanishingProfile vanishing_profile(const EvenThetaConstants<R>& tc, double input_tol = 0) {
    VanishingProfile vp;
    R maxabs(0);
    for (const auto& v : tc.values) maxabs = std::max(maxabs, abs(v.value));
    for (const auto& v : tc.values) {
        double margin = 0;
        const ZeroTest t = zero_test(ModularQuantity<R>{v.value, v.error_bound, maxabs}, input_tol, nullptr, &margin);
        vp.theta.push_back(t);
        vp.log_margin.push_back(margin);
        if (t == ZeroTest::zero) ++vp.zero_count;
        if (t == ZeroTest::indeterminate) ++vp.indeterminate_count;
    }
    const int z = vp.zero_count, u = vp.indeterminate_count;
    vp.chi = z >= 1 ? ZeroTest::zero : (u > 0 ? ZeroTest::indeterminate : ZeroTest::nonzero);
    if (tc.values.size() != 36) {
        vp.sigma = ZeroTest::indeterminate;
        return vp;
    }
    if (z >= 2) {
        vp.sigma = ZeroTest::zero;
    } else if (z + u >= 2) {
        vp.sigma = ZeroTest::indeterminate;
    } else if (z == 1) {
        vp.sigma = ZeroTest::nonzero;
    } else {
        vp.sigma = zero_test(sigma140(tc), input_tol, nullptr, &vp.sigma_log_margin);
        if (u > 0 && vp.sigma == ZeroTest::nonzero) vp.sigma = ZeroTest::indeterminate;
    }
    return vp;
}

}  // namespace jacobi3
