#pragma once

// Period matrices by Gauss-Legendre integration along the monodromy loops.
//
// For loop k and sheet s let S_k[s] be the integral along the outgoing
// segment and C_k[s] the integral around the circle, both starting on sheet
// s. The lifted loop (k, s) has period S_k[s] + C_k[s] - S_k[sigma_k(s)],
// since the way back runs along the segment on the arrival sheet.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "jacobi3/curve.hpp"
#include "jacobi3/errors.hpp"
#include "jacobi3/homology.hpp"
#include "jacobi3/linalg.hpp"
#include "jacobi3/monodromy.hpp"
#include "jacobi3/mp.hpp"
#include "jacobi3/quadrature.hpp"
#include "jacobi3/theta.hpp"

namespace jacobi3 {

struct PeriodOptions {
    MonodromyOptions monodromy;
    int nodes = 0;  // Gauss-Legendre nodes per piece; 0 picks from the precision
};

struct PeriodDiagnostics {
    int rh_total = 0;
    int rh_expected = 0;
    double symmetry_residual = 0;     // max |tau - tau^T| / max(1, max |tau|)
    double min_eig_im_tau = 0;
    double error_estimate = 0;        // relative change against a coarser rule
    bool halves_negated = false;      // Omega1 negated to put tau in the upper half space
    cplx base_point;
    int nodes = 0;
};

/// Omega = [Omega1 Omega2]: rows are differentials, columns b-cycles then
/// a-cycles, tau = Omega2^{-1} Omega1.
template <class R>
struct PeriodMatrix {
    int genus = 0;
    CMatrix<R> omega1, omega2, tau;
    PeriodDiagnostics diagnostics;

    SiegelPoint<R> siegel() const {
        const double tol = std::max(4 * diagnostics.symmetry_residual,
                                    std::ldexp(1.0, 8 - static_cast<int>(RealTraits<R>::bits())));
        return SiegelPoint<R>(tau, tol);
    }
};

/// Builds a PeriodMatrix from its two halves, computing tau and the Riemann
/// relation diagnostics.
template <class R>
PeriodMatrix<R> make_period_matrix(CMatrix<R> omega1, CMatrix<R> omega2) {
    if (omega1.rows() != omega1.cols() || omega2.rows() != omega2.cols() || omega1.rows() != omega2.rows())
        throw invalid_input("period halves must be square of equal size");
    PeriodMatrix<R> pm;
    pm.genus = static_cast<int>(omega1.rows());
    CMatrix<R> inv;
    try {
        lu_solve(omega2, &inv, 1e-14);
    } catch (const numeric_error&) {
        throw numeric_error("Omega2 is singular to working precision");
    }
    pm.tau = inv * omega1;
    pm.omega1 = std::move(omega1);
    pm.omega2 = std::move(omega2);
    pm.diagnostics.symmetry_residual = symmetry_residual(pm.tau) / std::max(1.0, max_abs(pm.tau));
    pm.diagnostics.min_eig_im_tau = min_eig_imag(pm.tau);
    return pm;
}

namespace detail {

inline int default_nodes(unsigned bits) {
    // every piece keeps its singularities outside the Bernstein ellipse of
    // parameter 2 + sqrt(5), so the error decays like (2 + sqrt 5)^(-2N)
    return static_cast<int>(std::ceil(bits * std::log(2.0) / (2 * std::log(2 + std::sqrt(5.0))))) + 6;
}

/// Per-sheet integrals of all differentials for a fine and a coarse rule.
template <class R>
struct PieceSums {
    std::vector<std::vector<Complex<R>>> fine, coarse;  // [sheet][differential]
};

template <class R>
class LoopIntegrator {
public:
    LoopIntegrator(const AffineCurve& c, int fine_nodes, int coarse_nodes)
        : tracker_(c.poly), p_(c.poly), fine_(gauss_legendre<R>(fine_nodes)), coarse_(gauss_legendre<R>(coarse_nodes)) {
        for (const auto& f : c.numerators) nums_.emplace_back(f);
        n_ = c.sheets();
    }

    /// Integrates along `piece`, starting from the double fiber `roots`
    /// (continued to the end of the piece on return); sums are added to `acc`.
    void integrate(const PathPiece& piece, std::vector<cplx>& roots, PieceSums<R>& acc) const {
        struct Sample {
            R t;
            const R* weight;
            bool fine;
        };
        std::vector<Sample> samples;
        for (std::size_t i = 0; i < fine_.nodes.size(); ++i)
            samples.push_back({(fine_.nodes[i] + R(1)) / R(2), &fine_.weights[i], true});
        for (std::size_t i = 0; i < coarse_.nodes.size(); ++i)
            samples.push_back({(coarse_.nodes[i] + R(1)) / R(2), &coarse_.weights[i], false});
        std::stable_sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.t < b.t; });
        std::vector<double> ts;
        for (const auto& s : samples) ts.push_back(to_double(s.t));
        const auto tracked = tracker_.track(piece, roots, ts);

        for (std::size_t i = 0; i < samples.size(); ++i) {
            const auto [x, dx] = piece.eval(samples[i].t);
            const auto coeffs = p_.fiber(x);
            const Complex<R> scale = dx * (*samples[i].weight / R(2));
            std::vector<Complex<R>> ys(n_);
            for (int s = 0; s < n_; ++s) {
                const cplx yd = tracked[i][s];
                ys[s] = newton_polish(coeffs, Complex<R>(R(yd.real()), R(yd.imag())));
                if (std::abs(to_std(ys[s]) - yd) > 1e-7 * (1 + std::abs(yd)))
                    throw numeric_error("fiber refinement left the tracked sheet");
            }
            for (int s = 0; s < n_; ++s) {
                const Complex<R> py = horner_with_derivative(coeffs, ys[s]).second;
                const Complex<R> factor = scale / py;
                auto& dst = samples[i].fine ? acc.fine[s] : acc.coarse[s];
                for (std::size_t j = 0; j < nums_.size(); ++j) dst[j] += nums_[j](x, ys[s]) * factor;
            }
        }
    }

    PieceSums<R> zero() const {
        PieceSums<R> z;
        z.fine.assign(n_, std::vector<Complex<R>>(nums_.size()));
        z.coarse = z.fine;
        return z;
    }

    const FiberTracker& tracker() const { return tracker_; }

private:
    FiberTracker tracker_;
    NumericBiPoly<R> p_;
    std::vector<NumericBiPoly<R>> nums_;
    const GaussRule<R>& fine_;
    const GaussRule<R>& coarse_;
    int n_ = 0;
};

}  // namespace detail

/// Period matrix of the curve's differentials over a symplectic homology
/// basis built from its monodromy.
template <class R>
PeriodMatrix<R> periods(const AffineCurve& c, const PeriodOptions& opt = {}) {
    const MonodromyData md = monodromy(c, opt.monodromy);
    const HomologyBasis hb = homology_symplectic_basis(md);
    if (!(symplectic_form(md, hb) == SymplecticMatrix::standard_j(hb.genus)))
        throw inconsistency_error("symplectic reduction did not reach the standard form");
    const int g = hb.genus;
    if (static_cast<int>(c.numerators.size()) != g)
        throw invalid_input("number of differentials differs from the genus");

    MonodromyOptions mo = opt.monodromy;
    mo.base_point = md.base;
    const auto [x0, loops] = layout_loops(md.branch_points, mo);

    const int fine = opt.nodes > 0 ? opt.nodes : detail::default_nodes(RealTraits<R>::bits());
    const int coarse = std::max(2, fine - std::max(3, fine / 4));
    detail::LoopIntegrator<R> integ(c, fine, coarse);
    const int n = md.sheets, m = static_cast<int>(loops.size());

    // lifted-loop periods, [rule][edge][differential]
    std::vector<std::vector<std::vector<Complex<R>>>> edge_periods(2, std::vector<std::vector<Complex<R>>>(n * m));
    for (int k = 0; k < m; ++k) {
        const auto& L = loops[k];
        std::vector<cplx> y = md.base_fiber;
        auto seg = integ.zero();
        for (const auto& piece : L.outward) integ.integrate(piece, y, seg);
        const std::vector<cplx> start = y;
        auto circ = integ.zero();
        for (const auto& piece : L.circle) integ.integrate(piece, y, circ);
        for (int s = 0; s < n; ++s)
            if (match_root(y[s], start) != md.sigma[k][s]) throw inconsistency_error("monodromy changed between passes");
        for (int s = 0; s < n; ++s) {
            const int t = md.sigma[k][s];
            for (int rule = 0; rule < 2; ++rule) {
                const auto& sg = rule == 0 ? seg.fine : seg.coarse;
                const auto& cc = rule == 0 ? circ.fine : circ.coarse;
                std::vector<Complex<R>> v(g);
                for (int j = 0; j < g; ++j) v[j] = sg[s][j] + cc[s][j] - sg[t][j];
                edge_periods[rule][k * n + s] = std::move(v);
            }
        }
    }

    auto cycle_period = [&](int rule, const EdgeChain& chain) {
        std::vector<Complex<R>> v(g);
        for (std::size_t e = 0; e < chain.size(); ++e) {
            if (chain[e] == 0) continue;
            const R coef(static_cast<double>(chain[e]));
            for (int j = 0; j < g; ++j) v[j] += edge_periods[rule][e][j] * coef;
        }
        return v;
    };
    std::vector<CMatrix<R>> o1(2, CMatrix<R>(g, g)), o2(2, CMatrix<R>(g, g));
    for (int rule = 0; rule < 2; ++rule)
        for (int t = 0; t < g; ++t) {
            const auto pa = cycle_period(rule, hb.a[t]);
            const auto pb = cycle_period(rule, hb.b[t]);
            for (int j = 0; j < g; ++j) {
                o2[rule](j, t) = pa[j];
                o1[rule](j, t) = pb[j];
            }
        }

    PeriodMatrix<R> pm = make_period_matrix(o1[0], o2[0]);
    if (pm.diagnostics.min_eig_im_tau < 0) {
        // the pairing orientation gave -tau; use the basis (a, -b)
        o1[0].scale(R(-1));
        o1[1].scale(R(-1));
        pm = make_period_matrix(o1[0], o2[0]);
        pm.diagnostics.halves_negated = true;
    }
    double diff = 0;
    for (int r = 0; r < g; ++r)
        for (int t = 0; t < g; ++t)
            diff = std::max({diff, to_double(abs(o1[0](r, t) - o1[1](r, t))), to_double(abs(o2[0](r, t) - o2[1](r, t)))});
    const double scale = std::max(max_abs(o1[0]), max_abs(o2[0]));
    pm.diagnostics.error_estimate = scale > 0 ? diff / scale : diff;
    pm.diagnostics.rh_total = md.ramification_total();
    pm.diagnostics.rh_expected = 2 * (g + n - 1);
    pm.diagnostics.base_point = x0;
    pm.diagnostics.nodes = fine;
    if (pm.diagnostics.rh_total != pm.diagnostics.rh_expected)
        throw inconsistency_error("Riemann-Hurwitz count failed");

    const double sym_tol = std::is_same_v<R, double> ? 1e-9 : std::ldexp(1.0, -static_cast<int>(RealTraits<R>::bits()) / 2);
    if (!(pm.diagnostics.min_eig_im_tau > 0) || pm.diagnostics.symmetry_residual > sym_tol)
        throw numeric_error("Riemann relations fail: symmetry residual " + std::to_string(pm.diagnostics.symmetry_residual) +
                            ", min eigenvalue of Im tau " + std::to_string(pm.diagnostics.min_eig_im_tau));
    return pm;
}

/// Omega -> lambda Omega, a change of differential basis by lambda times the
/// identity.
template <class R>
PeriodMatrix<R> scale_periods(const PeriodMatrix<R>& pm, const Complex<R>& lambda) {
    if (lambda.re == 0 && lambda.im == 0) throw invalid_input("scale factor must be nonzero");
    CMatrix<R> a = pm.omega1, b = pm.omega2;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            a(i, j) *= lambda;
            b(i, j) *= lambda;
        }
    PeriodMatrix<R> out = make_period_matrix(std::move(a), std::move(b));
    out.diagnostics.error_estimate = pm.diagnostics.error_estimate;
    out.diagnostics.rh_total = pm.diagnostics.rh_total;
    out.diagnostics.rh_expected = pm.diagnostics.rh_expected;
    out.diagnostics.base_point = pm.diagnostics.base_point;
    out.diagnostics.nodes = pm.diagnostics.nodes;
    out.diagnostics.halves_negated = pm.diagnostics.halves_negated;
    return out;
}

/// Rows of Omega replaced by M Omega (a change of differential basis).
template <class R>
PeriodMatrix<R> transform_rows(const PeriodMatrix<R>& pm, const CMatrix<R>& m) {
    PeriodMatrix<R> out = make_period_matrix(m * pm.omega1, m * pm.omega2);
    out.diagnostics.error_estimate = pm.diagnostics.error_estimate;
    out.diagnostics.rh_total = pm.diagnostics.rh_total;
    out.diagnostics.rh_expected = pm.diagnostics.rh_expected;
    out.diagnostics.base_point = pm.diagnostics.base_point;
    out.diagnostics.nodes = pm.diagnostics.nodes;
    return out;
}

}  // namespace jacobi3
