#pragma once

// Loops around the branch points and analytic continuation of the fiber
// roots along them.
//
// Every loop leaves the base point x0 along a straight segment, circles its
// branch point counterclockwise and returns along the same segment. Fiber
// roots are tracked in double precision; the integration layer refines them
// at the working precision.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "jacobi3/curve.hpp"
#include "jacobi3/errors.hpp"
#include "jacobi3/polynomial.hpp"

namespace jacobi3 {

using cplx = std::complex<double>;
using Permutation = std::vector<int>;

inline Permutation compose(const Permutation& first, const Permutation& then) {
    Permutation out(first.size());
    for (std::size_t s = 0; s < first.size(); ++s) out[s] = then[first[s]];
    return out;
}

inline Permutation inverse(const Permutation& p) {
    Permutation out(p.size());
    for (std::size_t s = 0; s < p.size(); ++s) out[p[s]] = static_cast<int>(s);
    return out;
}

inline bool is_identity(const Permutation& p) {
    for (std::size_t s = 0; s < p.size(); ++s)
        if (p[s] != static_cast<int>(s)) return false;
    return true;
}

inline int cycle_count(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    int cycles = 0;
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (seen[s]) continue;
        ++cycles;
        for (std::size_t t = s; !seen[t]; t = p[t]) seen[t] = true;
    }
    return cycles;
}

/// A path piece: segment a -> b, or arc center + (a - center) e^{2 pi i f} for
/// f (a fraction of a full turn) from f0 to f1. Arcs are anchored at their
/// start point so that the path stays exactly closed at any working precision.
struct PathPiece {
    bool arc = false;
    cplx a, b;
    cplx center;
    double f0 = 0, f1 = 0;

    cplx at(double t) const {
        if (!arc) return a + (b - a) * t;
        return center + (a - center) * std::polar(1.0, 2 * M_PI * (f0 + (f1 - f0) * t));
    }

    /// Point and velocity dx/dt at the working precision of R.
    template <class R>
    std::pair<Complex<R>, Complex<R>> eval(const R& t) const {
        const Complex<R> ar(R(a.real()), R(a.imag()));
        if (!arc) {
            const Complex<R> d = Complex<R>(R(b.real()), R(b.imag())) - ar;
            return {ar + d * t, d};
        }
        const Complex<R> c(R(center.real()), R(center.imag()));
        const R turn = R(2) * pi_v<R>();
        const R span = (R(f1) - R(f0)) * turn;
        const Complex<R> rot = expi(R(f0) * turn + span * t);
        const Complex<R> off = (ar - c) * rot;
        return {c + off, Complex<R>(R(0), span) * off};
    }

    static PathPiece segment(cplx from, cplx to) {
        PathPiece p;
        p.a = from;
        p.b = to;
        return p;
    }
    static PathPiece circle_arc(cplx c, cplx start, double f0, double f1) {
        PathPiece p;
        p.arc = true;
        p.center = c;
        p.a = start;
        p.f0 = f0;
        p.f1 = f1;
        p.b = p.at(1);
        return p;
    }
};

inline double distance_to_segment(cplx p, cplx a, cplx b) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0) return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + d * t));
}

struct LoopLayout {
    cplx branch;
    double radius = 0;
    cplx circle_start;
    double angle = 0;                  // direction of the branch point seen from x0
    std::vector<PathPiece> outward;    // x0 -> circle_start
    std::vector<PathPiece> circle;     // counterclockwise, closed
};

struct MonodromyOptions {
    std::optional<cplx> base_point;    // default: chosen for maximal clearance
    int base_choice = 0;               // pick the n-th best candidate direction
    int arcs_per_circle = 12;
};

namespace detail {

/// Splits a -> b until every piece is no longer than its distance to the
/// nearest branch point.
inline void subdivide_segment(cplx a, cplx b, const std::vector<cplx>& branch, std::vector<PathPiece>& out,
                              int depth = 0) {
    double dist = 1e300;
    for (const auto& p : branch) dist = std::min(dist, distance_to_segment(p, a, b));
    if (std::abs(b - a) <= dist || depth > 60) {
        if (depth > 60) throw numeric_error("path passes through a branch point");
        out.push_back(PathPiece::segment(a, b));
        return;
    }
    const cplx mid = 0.5 * (a + b);
    subdivide_segment(a, mid, branch, out, depth + 1);
    subdivide_segment(mid, b, branch, out, depth + 1);
}

inline double layout_clearance(cplx x0, const std::vector<cplx>& branch) {
    double clear = 1e300;
    for (std::size_t k = 0; k < branch.size(); ++k)
        for (std::size_t j = 0; j < branch.size(); ++j)
            if (j != k) clear = std::min(clear, distance_to_segment(branch[j], x0, branch[k]));
    return clear;
}

}  // namespace detail

/// Base point outside the branch locus and loops sorted counterclockwise as
/// seen from it.
inline std::pair<cplx, std::vector<LoopLayout>> layout_loops(const std::vector<cplx>& branch,
                                                             const MonodromyOptions& opt = {}) {
    const std::size_t m = branch.size();
    if (m == 0) throw invalid_input("no branch points");
    cplx center = 0;
    for (const auto& b : branch) center += b;
    center /= static_cast<double>(m);
    double spread = 0;
    for (const auto& b : branch) spread = std::max(spread, std::abs(b - center));
    const double dist = 2.5 * spread + 1;

    cplx x0;
    if (opt.base_point) {
        x0 = *opt.base_point;
    } else {
        // real branch points are collinear, so a real offset would stack loops
        std::vector<std::pair<double, cplx>> cands;
        for (int i = 0; i < 64; ++i) {
            const cplx c = center + std::polar(dist, 2 * M_PI * i / 64 + 0.1);
            cands.emplace_back(detail::layout_clearance(c, branch), c);
        }
        std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        x0 = cands[std::min<std::size_t>(opt.base_choice, cands.size() - 1)].second;
    }
    for (const auto& b : branch)
        if (std::abs(b - x0) < 1e-8 * (1 + spread)) throw numeric_error("base point coincides with a branch point");

    const cplx toward = center - x0;
    std::vector<LoopLayout> loops(m);
    for (std::size_t k = 0; k < m; ++k) {
        loops[k].branch = branch[k];
        loops[k].angle = std::arg((branch[k] - x0) / toward);
    }
    std::stable_sort(loops.begin(), loops.end(), [](const LoopLayout& a, const LoopLayout& b) { return a.angle < b.angle; });

    for (std::size_t k = 0; k < m; ++k) {
        auto& L = loops[k];
        double r = 0.5 * std::abs(L.branch - x0);
        for (std::size_t j = 0; j < m; ++j) {
            if (j == k) continue;
            r = std::min(r, 0.45 * std::abs(loops[j].branch - L.branch));
            r = std::min(r, 0.9 * distance_to_segment(L.branch, x0, loops[j].branch));
        }
        if (!(r > 1e-12 * (1 + spread))) throw numeric_error("branch points too close to lay out loops");
        L.radius = r;
        const cplx dir = (x0 - L.branch) / std::abs(x0 - L.branch);
        L.circle_start = L.branch + r * dir;
        detail::subdivide_segment(x0, L.circle_start, branch, L.outward);
        for (int i = 0; i < opt.arcs_per_circle; ++i)
            L.circle.push_back(PathPiece::circle_arc(L.branch, L.circle_start, static_cast<double>(i) / opt.arcs_per_circle,
                                                     static_cast<double>(i + 1) / opt.arcs_per_circle));
    }
    return {x0, loops};
}

/// Predictor-corrector continuation of all fiber roots of P(x, .) along a
/// path piece, in double precision.
class FiberTracker {
public:
    explicit FiberTracker(const BiPoly& p) : p_(p), px_(p.d_dx()) {}

    std::vector<cplx> fiber_coeffs(cplx x) const {
        std::vector<cplx> c;
        for (const auto& z : p_.fiber(Complex<double>(x.real(), x.imag()))) c.emplace_back(z.re, z.im);
        return c;
    }

    /// Roots at x sorted by (real, imaginary) part; the sheet labels at x0.
    std::vector<cplx> roots_at(cplx x) const {
        auto r = roots_double(fiber_coeffs(x));
        const auto c = fiber_coeffs(x);
        for (auto& y : r) y = polish(c, y);
        std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
        return r;
    }

    /// Continues `roots` (the fiber at piece.at(0)) to the parameters in
    /// `samples` (ascending, within [0, 1]) and to t = 1. Returns the roots at
    /// every sample; `roots` is left holding the fiber at t = 1.
    std::vector<std::vector<cplx>> track(const PathPiece& piece, std::vector<cplx>& roots,
                                         const std::vector<double>& samples = {}) const {
        std::vector<std::vector<cplx>> out;
        double t = 0, h = 0.05;
        std::size_t next = 0;
        auto emit = [&]() {
            while (next < samples.size() && samples[next] <= t + 1e-15) {
                out.push_back(roots);
                ++next;
            }
        };
        emit();
        int guard = 0;
        while (t < 1) {
            if (++guard > 2000000) throw numeric_error("root tracking did not finish");
            double target = std::min(1.0, t + h);
            if (next < samples.size() && samples[next] < target) target = samples[next];
            std::vector<cplx> moved;
            if (step(piece, t, target, roots, moved)) {
                roots = std::move(moved);
                t = target;
                emit();
                h = std::min(0.25, h * 1.6);
            } else {
                h *= 0.5;
                if (h < 1e-13) throw numeric_error("root tracking step underflow near a branch point");
            }
        }
        while (next < samples.size()) {
            out.push_back(roots);
            ++next;
        }
        return out;
    }

private:
    cplx polish(const std::vector<cplx>& c, cplx y) const {
        for (int it = 0; it < 8; ++it) {
            cplx v = 0, d = 0;
            for (std::size_t j = c.size(); j-- > 0;) {
                d = d * y + v;
                v = v * y + c[j];
            }
            if (d == 0.0) break;
            const cplx s = v / d;
            y -= s;
            if (std::abs(s) <= 1e-15 * std::max(1.0, std::abs(y))) break;
        }
        return y;
    }

    bool step(const PathPiece& piece, double t0, double t1, const std::vector<cplx>& y0, std::vector<cplx>& y1) const {
        const cplx x0 = piece.at(t0), x1 = piece.at(t1);
        const auto c0 = fiber_coeffs(x0);
        const auto cx = [&] {
            std::vector<cplx> c;
            for (const auto& z : px_.fiber(Complex<double>(x0.real(), x0.imag()))) c.emplace_back(z.re, z.im);
            return c;
        }();
        const auto c1 = fiber_coeffs(x1);
        const std::size_t n = y0.size();
        double sep = 1e300;
        std::vector<double> sep_s(n, 1e300);
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t u = 0; u < n; ++u)
                if (u != s) sep_s[s] = std::min(sep_s[s], std::abs(y0[s] - y0[u]));
        for (double v : sep_s) sep = std::min(sep, v);
        y1.resize(n);
        for (std::size_t s = 0; s < n; ++s) {
            // Euler predictor dy = -P_x / P_y dx
            cplx v = 0, d = 0;
            for (std::size_t j = c0.size(); j-- > 0;) {
                d = d * y0[s] + v;
                v = v * y0[s] + c0[j];
            }
            cplx pxv = 0;
            for (std::size_t j = cx.size(); j-- > 0;) pxv = pxv * y0[s] + cx[j];
            if (d == 0.0) return false;
            const cplx pred = y0[s] - pxv / d * (x1 - x0);
            cplx y = pred;
            bool converged = false;
            for (int it = 0; it < 12; ++it) {
                cplx w = 0, dw = 0;
                for (std::size_t j = c1.size(); j-- > 0;) {
                    dw = dw * y + w;
                    w = w * y + c1[j];
                }
                if (dw == 0.0) return false;
                const cplx corr = w / dw;
                y -= corr;
                if (std::abs(corr) <= 1e-14 * std::max(1.0, std::abs(y))) {
                    converged = true;
                    break;
                }
            }
            if (!converged) return false;
            if (std::abs(y - pred) > 0.05 * sep_s[s] || std::abs(y - y0[s]) > 0.25 * sep_s[s]) return false;
            y1[s] = y;
        }
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t u = s + 1; u < n; ++u)
                if (std::abs(y1[s] - y1[u]) < 0.25 * sep) return false;
        return true;
    }

    NumericBiPoly<double> p_, px_;
};

/// Index of the root in `targets` that `y` continues to; throws when the
/// match is ambiguous.
inline int match_root(cplx y, const std::vector<cplx>& targets) {
    double sep = 1e300;
    for (std::size_t a = 0; a < targets.size(); ++a)
        for (std::size_t b = a + 1; b < targets.size(); ++b) sep = std::min(sep, std::abs(targets[a] - targets[b]));
    int best = -1;
    double bd = 1e300;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const double d = std::abs(y - targets[t]);
        if (d < bd) {
            bd = d;
            best = static_cast<int>(t);
        }
    }
    if (bd > 0.25 * sep) throw numeric_error("ambiguous sheet matching");
    return best;
}

/// Branch points in loop order with the local monodromy of each loop.
struct MonodromyData {
    cplx base;
    std::vector<cplx> branch_points;
    std::vector<Permutation> sigma;
    Permutation sigma_infinity;        // inverse of the product in loop order
    std::vector<cplx> base_fiber;      // sheet labels
    int sheets = 0;

    /// Sum of n - #cycles over all local monodromies, infinity included.
    int ramification_total() const {
        int t = 0;
        for (const auto& s : sigma) t += sheets - cycle_count(s);
        return t + sheets - cycle_count(sigma_infinity);
    }
    /// Genus from Riemann-Hurwitz for a connected n-sheeted cover of P^1.
    int genus() const { return ramification_total() / 2 - sheets + 1; }

    bool transitive() const {
        std::vector<bool> seen(sheets, false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            const int s = stack.back();
            stack.pop_back();
            for (const auto& p : sigma)
                for (int t : {p[s], inverse(p)[s]})
                    if (!seen[t]) {
                        seen[t] = true;
                        stack.push_back(t);
                    }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }
};

namespace detail {

/// Product sigma_1 then sigma_2 ... in loop order.
inline Permutation loop_product(const std::vector<Permutation>& sigma, int n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    for (const auto& s : sigma) p = compose(p, s);
    return p;
}

}  // namespace detail

/// Local monodromies of the x-projection. Checks transitivity and, for plane
/// quartics (unramified over infinity), the product relation.
inline MonodromyData monodromy(const AffineCurve& c, const MonodromyOptions& opt = {}) {
    std::vector<cplx> branch;
    for (const auto& b : branch_points<double>(c)) branch.push_back(to_std(b));
    const auto [x0, loops] = layout_loops(branch, opt);
    FiberTracker tracker(c.poly);
    MonodromyData md;
    md.base = x0;
    md.sheets = c.sheets();
    md.base_fiber = tracker.roots_at(x0);
    for (const auto& L : loops) {
        md.branch_points.push_back(L.branch);
        std::vector<cplx> y = md.base_fiber;
        for (const auto& piece : L.outward) tracker.track(piece, y);
        const std::vector<cplx> start = y;
        for (const auto& piece : L.circle) tracker.track(piece, y);
        Permutation s(md.sheets);
        for (int k = 0; k < md.sheets; ++k) s[k] = match_root(y[k], start);
        md.sigma.push_back(s);
    }
    md.sigma_infinity = inverse(detail::loop_product(md.sigma, md.sheets));
    if (!md.transitive()) throw inconsistency_error("monodromy group is not transitive");
    return md;
}

}  // namespace jacobi3
