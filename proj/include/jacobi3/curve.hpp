#pragma once

// Affine models y-projected onto the x-line: smooth plane quartics in the
// chart z = 1 with the classical differentials, and hyperelliptic curves.

#include <algorithm>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "jacobi3/discriminant.hpp"
#include "jacobi3/errors.hpp"
#include "jacobi3/mp.hpp"
#include "jacobi3/polynomial.hpp"
#include "jacobi3/resultant.hpp"
#include "jacobi3/ternary_form.hpp"

namespace jacobi3 {

/// P(x, y) = 0 with differentials f_j(x, y) dx / P_y(x, y).
struct AffineCurve {
    BiPoly poly;
    std::vector<BiPoly> numerators;
    int genus = 0;
    /// Substitution x -> u x applied to the plane model to make the projection
    /// admissible (identity when none was needed).
    GL3Matrix chart_change = GL3Matrix::identity();
    std::string kind;

    int sheets() const { return poly.degree_y(); }
};

/// F(x, y, 1).
inline BiPoly dehomogenize(const TernaryForm& f) {
    BiPoly p;
    for (const auto& e : monomials(f.degree()))
        if (f.coeff(e) != 0) p.set(e[0], e[1], f.coeff(e));
    return p;
}

/// Numerators of the classical basis: the monomials of degree d - 3 in
/// descending lexicographic order (x, y, z for quartics).
inline std::vector<TernaryForm> classical_differentials(const TernaryForm& f) {
    if (f.degree() < 3) throw invalid_input("classical differentials need degree >= 3");
    if (discriminant(f).value == 0) throw invalid_input("curve is singular");
    std::vector<TernaryForm> out;
    for (const auto& e : monomials(f.degree() - 3)) out.push_back(TernaryForm::monomial(e[0], e[1], e[2]));
    return out;
}

namespace detail {

/// The y^d coefficient is nonzero and F(x, y, 0) has d distinct roots, so the
/// projection from (0:1:0) is unramified over infinity.
inline bool admissible_projection(const TernaryForm& f) {
    const int d = f.degree();
    if (f.coeff(0, d, 0) == 0) return false;
    std::vector<Rational> c(d + 1);
    for (int j = 0; j <= d; ++j) c[j] = f.coeff(d - j, j, 0);
    return is_squarefree(UPoly(c));
}

}  // namespace detail

/// Affine model of a smooth plane quartic with its classical differentials.
/// When the projection is not admissible, a random determinant-one integer
/// substitution is applied first (seeded, so runs are reproducible).
inline AffineCurve quartic_curve(const TernaryForm& f, unsigned long seed = 1) {
    if (f.degree() != 4) throw invalid_input("plane quartic expected");
    const auto nums = classical_differentials(f);
    AffineCurve c;
    c.kind = "quartic";
    c.genus = 3;
    TernaryForm g = f;
    if (!detail::admissible_projection(g)) {
        std::mt19937_64 rng(seed);
        bool ok = false;
        for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
            const GL3Matrix u = detail::random_unimodular(rng);
            g = substitute(u, f);
            if (detail::admissible_projection(g)) {
                c.chart_change = u;
                ok = true;
            }
        }
        if (!ok) throw numeric_error("no admissible projection found");
    }
    c.poly = dehomogenize(g);
    for (const auto& n : nums) c.numerators.push_back(dehomogenize(n));
    return c;
}

/// y^2 = f(x) with f squarefree of degree 7 or 8 and differentials
/// x^i dx / (2y), i = 0, 1, 2.
inline AffineCurve hyperelliptic_curve(const UPoly& f) {
    if (f.degree() != 7 && f.degree() != 8) throw invalid_input("hyperelliptic genus 3 needs degree 7 or 8");
    if (!is_squarefree(f)) throw invalid_input("f is not squarefree");
    AffineCurve c;
    c.kind = "hyperelliptic";
    c.genus = 3;
    c.poly.set(0, 2, Rational(1));
    for (int i = 0; i <= f.degree(); ++i)
        if (f.coeff(i) != 0) c.poly.set(i, 0, -f.coeff(i));
    for (int i = 0; i < 3; ++i) {
        BiPoly n;
        n.set(i, 0, Rational(1));
        c.numerators.push_back(n);
    }
    return c;
}

/// Disc_y P as an exact polynomial in x, by evaluation and interpolation.
inline UPoly y_discriminant(const BiPoly& p) {
    const int n = p.degree_y();
    if (n < 1) throw invalid_input("curve has no y-dependence");
    const int dx = std::max(0, p.degree_x());
    const int bound = (2 * n - 1) * dx;
    std::vector<Rational> xs, ys;
    for (int k = 0; k <= bound; ++k) {
        const Rational x(k - bound / 2);
        const UPoly fiber = p.at_x(x);
        if (fiber.degree() != n) throw invalid_input("leading y-coefficient must be constant");
        xs.push_back(x);
        ys.push_back(discriminant(fiber));
    }
    return interpolate(xs, ys);
}

template <class R>
std::complex<double> to_std(const Complex<R>& z) {
    return {to_double(z.re), to_double(z.im)};
}

template <class R>
Complex<R> from_std(const std::complex<double>& z) {
    return Complex<R>(R(z.real()), R(z.imag()));
}

/// Roots of the squarefree part of a rational polynomial, polished at the
/// working precision of R.
template <class R>
std::vector<Complex<R>> polynomial_roots(const UPoly& p) {
    const UPoly q = squarefree_part(p);
    if (q.degree() < 1) return {};
    std::vector<std::complex<double>> cd;
    std::vector<Complex<R>> cr;
    for (const auto& a : q.coeffs()) {
        cd.emplace_back(a.get_d(), 0.0);
        cr.emplace_back(from_rational<R>(a), R(0));
    }
    std::vector<Complex<R>> out;
    for (const auto& z : roots_double(cd)) out.push_back(newton_polish(cr, from_std<R>(z)));
    return out;
}

/// Finite branch points of the x-projection, sorted by argument around their
/// barycenter.
template <class R>
std::vector<Complex<R>> branch_points(const AffineCurve& c) {
    const UPoly disc = y_discriminant(c.poly);
    if (disc.is_zero()) throw invalid_input("y-discriminant vanishes identically");
    auto pts = polynomial_roots<R>(disc);
    Complex<R> center;
    for (const auto& b : pts) center += b;
    if (!pts.empty()) center /= R(static_cast<double>(pts.size()));
    std::vector<std::pair<double, Complex<R>>> keyed;
    for (const auto& b : pts) {
        const auto d = to_std(b - center);
        keyed.emplace_back(std::abs(d) < 1e-300 ? -4.0 : std::arg(d), b);
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Complex<R>> out;
    for (auto& kb : keyed) out.push_back(kb.second);
    return out;
}

}  // namespace jacobi3
