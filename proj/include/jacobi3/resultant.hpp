#pragma once

// Multivariate resultant of three ternary forms through Macaulay's
// determinant quotient.
//
// For degrees d1, d2, d3 let D = d1 + d2 + d3 - 2. Every monomial of degree D
// is divisible by x^d1, y^d2 or z^d3; a monomial m is assigned to the first
// such power x_i^di and its row holds the coefficients of (m / x_i^di) f_i.
// The determinant of this square matrix equals Res(f1, f2, f3) times the
// principal minor on the monomials divisible by at least two of the powers.

#include <array>
#include <cstddef>
#include <map>
#include <mutex>
#include <random>
#include <vector>

#include "jacobi3/errors.hpp"
#include "jacobi3/rational.hpp"
#include "jacobi3/ternary_form.hpp"

namespace jacobi3 {

namespace detail {

struct MacaulayLayout {
    std::vector<Exponent> columns;     // degree-D monomials, descending lex
    std::vector<int> row_form;         // which f_i fills the row of each monomial
    std::vector<std::size_t> extraneous;  // indices of monomials divisible by two powers
};

inline MacaulayLayout build_layout(const std::array<int, 3>& deg) {
    const int total = deg[0] + deg[1] + deg[2] - 2;
    MacaulayLayout layout;
    layout.columns = monomials(total);
    for (std::size_t idx = 0; idx < layout.columns.size(); ++idx) {
        const auto& e = layout.columns[idx];
        int first = -1, hits = 0;
        for (int v = 0; v < 3; ++v) {
            if (e[v] >= deg[v]) {
                if (first < 0) first = v;
                ++hits;
            }
        }
        if (first < 0) throw inconsistency_error("Macaulay monomial not divisible by any power");
        layout.row_form.push_back(first);
        if (hits >= 2) layout.extraneous.push_back(idx);
    }
    return layout;
}

/// Layouts depend only on the degree triple; the memo never changes results.
inline const MacaulayLayout& layout_for(const std::array<int, 3>& deg) {
    static std::mutex mu;
    static std::map<std::array<int, 3>, MacaulayLayout> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(deg);
    if (it == memo.end()) it = memo.emplace(deg, build_layout(deg)).first;
    return it->second;
}

/// det(M) and det(M') for the three forms, in that order.
inline std::array<Rational, 2> macaulay_quotient_parts(const std::array<const TernaryForm*, 3>& f) {
    const std::array<int, 3> deg{f[0]->degree(), f[1]->degree(), f[2]->degree()};
    const auto& layout = layout_for(deg);
    const int total = deg[0] + deg[1] + deg[2] - 2;
    const std::size_t n = layout.columns.size();

    SquareMatrix<Rational> m(n);
    for (std::size_t r = 0; r < n; ++r) {
        const int which = layout.row_form[r];
        Exponent shift = layout.columns[r];
        shift[which] -= deg[which];
        const TernaryForm& form = *f[which];
        for (const auto& e : monomials(form.degree())) {
            const Rational& c = form.coeff(e);
            if (c == 0) continue;
            const std::size_t col = monomial_index(total, e[0] + shift[0], e[1] + shift[1]);
            m(r, col) = c;
        }
    }

    const std::size_t k = layout.extraneous.size();
    SquareMatrix<Rational> minor(k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) minor(a, b) = m(layout.extraneous[a], layout.extraneous[b]);

    return {determinant(m), determinant(minor)};
}

/// Raw Macaulay quotient, or nullopt-like flag when the extraneous minor vanishes.
inline bool macaulay_quotient(const std::array<const TernaryForm*, 3>& f, Rational& out) {
    const auto parts = macaulay_quotient_parts(f);
    if (parts[1] == 0) return false;
    out = parts[0] / parts[1];
    return true;
}

/// Random unimodular integer matrices with small entries, product of elementary
/// shears so that det = 1 exactly.
inline GL3Matrix random_unimodular(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 2), coef(-2, 2);
    GL3Matrix u = GL3Matrix::identity();
    for (int step = 0; step < 4; ++step) {
        const int i = pick(rng);
        int j = pick(rng);
        if (j == i) j = (i + 1) % 3;
        GL3Matrix::Entries e = GL3Matrix::identity().entries();
        e[i][j] = coef(rng);
        u = u * GL3Matrix(e);
    }
    return u;
}

inline Rational normalization_constant(const std::array<int, 3>& deg) {
    const TernaryForm px = TernaryForm::monomial(deg[0], 0, 0);
    const TernaryForm py = TernaryForm::monomial(0, deg[1], 0);
    const TernaryForm pz = TernaryForm::monomial(0, 0, deg[2]);
    Rational value;
    if (!macaulay_quotient({&px, &py, &pz}, value) || value == 0)
        throw inconsistency_error("Macaulay normalization degenerate");
    return value;
}

}  // namespace detail

/// Normalized resultant: Res(x^d1, y^d2, z^d3) = 1, vanishing exactly when the
/// three forms have a common nontrivial zero over the algebraic closure.
inline Rational macaulay_resultant(const TernaryForm& f1, const TernaryForm& f2, const TernaryForm& f3) {
    for (const TernaryForm* f : {&f1, &f2, &f3}) {
        if (f->degree() < 1) throw invalid_input("resultant needs forms of degree >= 1");
        if (f->is_zero()) throw invalid_input("resultant of a zero form");
    }
    const std::array<int, 3> deg{f1.degree(), f2.degree(), f3.degree()};
    const Rational norm = detail::normalization_constant(deg);

    Rational value;
    if (detail::macaulay_quotient({&f1, &f2, &f3}, value)) return value / norm;

    // The extraneous minor vanished for this input. Res(f_i + t x_i^d_i) is a
    // polynomial in t of degree d1 d2 + d1 d3 + d2 d3 whose minor is nonzero
    // for all but finitely many t; interpolate it exactly and read off t = 0.
    const int points = deg[0] * deg[1] + deg[0] * deg[2] + deg[1] * deg[2] + 1;
    std::vector<Rational> ts, vs;
    for (int t = 1; static_cast<int>(ts.size()) < points; ++t) {
        if (t > 64 * points) throw inconsistency_error("Macaulay perturbation degenerate");
        TernaryForm g1 = f1, g2 = f2, g3 = f3;
        g1.coeff(deg[0], 0, 0) += t;
        g2.coeff(0, deg[1], 0) += t;
        g3.coeff(0, 0, deg[2]) += t;
        if (!detail::macaulay_quotient({&g1, &g2, &g3}, value)) continue;
        ts.emplace_back(t);
        vs.push_back(value);
    }
    // Lagrange interpolation at t = 0
    Rational res = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        Rational w = vs[i];
        for (std::size_t j = 0; j < ts.size(); ++j)
            if (j != i) w *= ts[j] / (ts[j] - ts[i]);
        res += w;
    }
    return res / norm;
}

}  // namespace jacobi3
