#pragma once

// Homology of the covering surface from the monodromy graph.
//
// Vertices are the sheets over x0; the lift of loop k starting on sheet s is
// the edge (k, s) from s to sigma_k(s). Closed walks in this graph span
// H1 of the surface punctured over the branch points; the intersection
// pairing is read off from the cyclic order of half-edges at each vertex, and
// its kernel (the puncture classes) drops out in the symplectic reduction.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "jacobi3/errors.hpp"
#include "jacobi3/linalg.hpp"
#include "jacobi3/monodromy.hpp"

namespace jacobi3 {

/// Integer coefficients on the edges, indexed k * sheets + s.
using EdgeChain = std::vector<long long>;

namespace detail {

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw numeric_error("integer overflow in homology reduction");
    return r;
}

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw numeric_error("integer overflow in homology reduction");
    return r;
}

}  // namespace detail

/// Closed walks of the monodromy graph: one per edge outside a BFS spanning
/// tree rooted at sheet 0.
inline std::vector<EdgeChain> fundamental_cycles(const MonodromyData& md) {
    const int n = md.sheets, m = static_cast<int>(md.sigma.size());
    const int edges = n * m;
    std::vector<int> parent_edge(n, -1), parent_sign(n, 0);
    std::vector<bool> reached(n, false), in_tree(edges, false);
    reached[0] = true;
    std::vector<int> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const int v = queue[qi];
        for (int e = 0; e < edges; ++e) {
            const int k = e / n, s = e % n, t = md.sigma[k][s];
            int other = -1, sign = 0;
            if (s == v && !reached[t]) {
                other = t;
                sign = 1;
            } else if (t == v && !reached[s]) {
                other = s;
                sign = -1;
            }
            if (other < 0) continue;
            reached[other] = true;
            parent_edge[other] = e;
            parent_sign[other] = sign;
            in_tree[e] = true;
            queue.push_back(other);
        }
    }
    if (!std::all_of(reached.begin(), reached.end(), [](bool b) { return b; }))
        throw inconsistency_error("monodromy graph is disconnected");

    // chain of the tree path from the root to v
    auto tree_path = [&](int v) {
        EdgeChain c(edges, 0);
        while (v != 0) {
            const int e = parent_edge[v];
            c[e] += parent_sign[v];
            const int k = e / n, s = e % n;
            v = parent_sign[v] > 0 ? s : md.sigma[k][s];
        }
        return c;
    };
    std::vector<EdgeChain> out;
    for (int e = 0; e < edges; ++e) {
        if (in_tree[e]) continue;
        const int k = e / n, s = e % n, t = md.sigma[k][s];
        EdgeChain c = tree_path(s);
        c[e] += 1;
        const EdgeChain back = tree_path(t);
        for (int i = 0; i < edges; ++i) c[i] -= back[i];
        out.push_back(std::move(c));
    }
    return out;
}

/// Intersection number of two closed chains. Loops are indexed in their
/// counterclockwise order around x0; at every vertex the outgoing half-edge
/// of loop k sits just clockwise of the incoming one. The second chain is
/// pushed off to the left of every edge, so crossings only happen near the
/// vertices, where its strands are routed clockwise to a point behind all
/// half-edges.
inline long long intersection_number(const MonodromyData& md, const EdgeChain& a, const EdgeChain& b) {
    const int n = md.sheets, m = static_cast<int>(md.sigma.size());
    std::vector<Permutation> inv;
    for (const auto& s : md.sigma) inv.push_back(inverse(s));
    long long total = 0;
    for (int v = 0; v < n; ++v) {
        // prefix[k] = net outflow of a through the half-edges clockwise of the
        // strand slot of loop k, which lies between its out-half and in-half
        std::vector<long long> prefix(m, 0);
        long long acc = 0;
        for (int k = 0; k < m; ++k) {
            acc = detail::checked_add(acc, a[k * n + v]);          // out-half of edge (k, v)
            prefix[k] = acc;
            acc = detail::checked_add(acc, -a[k * n + inv[k][v]]); // in-half of edge (k, sigma_k^-1 v)
        }
        for (int k = 0; k < m; ++k) {
            const long long out = b[k * n + v], in = b[k * n + inv[k][v]];
            total = detail::checked_add(total, detail::checked_mul(out - in, prefix[k]));
        }
    }
    return total;
}

inline IntMatrix intersection_matrix(const MonodromyData& md, const std::vector<EdgeChain>& cycles) {
    const std::size_t r = cycles.size();
    IntMatrix k(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            k(i, j) = intersection_number(md, cycles[i], cycles[j]);
            k(j, i) = intersection_number(md, cycles[j], cycles[i]);
            if (k(j, i) != -k(i, j)) throw inconsistency_error("intersection pairing is not skew-symmetric");
        }
    return k;
}

/// Result of the integer reduction: rows of `transform` express the new basis
/// in the input basis; the first g rows are a-cycles, the next g b-cycles, with
/// a_i . b_j = delta_ij and all other pairings zero; the remaining rows span
/// the kernel.
struct SymplecticReduction {
    int genus = 0;
    IntMatrix transform;
};

/// Frobenius-style reduction of a skew-symmetric integer form by unimodular
/// congruence. Pivots are the entries of smallest absolute value, ties broken
/// by position, so the result is deterministic.
inline SymplecticReduction symplectic_reduction(const IntMatrix& form) {
    using detail::checked_add;
    using detail::checked_mul;
    const std::size_t r = form.rows();
    IntMatrix k = form;
    IntMatrix basis = IntMatrix::identity(r);
    // e_i <- e_i + c e_j
    auto add = [&](std::size_t i, std::size_t j, long long c) {
        if (c == 0) return;
        for (std::size_t t = 0; t < r; ++t) basis(i, t) = checked_add(basis(i, t), checked_mul(c, basis(j, t)));
        for (std::size_t t = 0; t < r; ++t) k(i, t) = checked_add(k(i, t), checked_mul(c, k(j, t)));
        for (std::size_t t = 0; t < r; ++t) k(t, i) = checked_add(k(t, i), checked_mul(c, k(t, j)));
    };
    auto floor_div = [](long long a, long long b) {
        long long q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
        return q;
    };
    std::vector<std::size_t> remaining(r);
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (;;) {
        long long best = 0;
        std::size_t bi = 0, bj = 0;
        for (std::size_t x = 0; x < remaining.size(); ++x)
            for (std::size_t y = x + 1; y < remaining.size(); ++y) {
                const long long v = k(remaining[x], remaining[y]);
                if (v != 0 && (best == 0 || std::llabs(v) < best)) {
                    best = std::llabs(v);
                    bi = remaining[x];
                    bj = remaining[y];
                }
            }
        if (best == 0) break;
        bool clean = true;
        for (std::size_t t : remaining) {
            if (t == bi || t == bj) continue;
            const long long d = k(bi, bj);
            // <e_i, e_t - q e_j> = K_it - q d
            add(t, bj, -floor_div(k(bi, t), d));
            // <e_j, e_t - q e_i> = K_jt + q d
            add(t, bi, floor_div(k(bj, t), d));
            if (k(bi, t) != 0 || k(bj, t) != 0) {
                clean = false;
                break;
            }
        }
        if (!clean) continue;
        if (std::llabs(k(bi, bj)) != 1) throw inconsistency_error("intersection form is not unimodular on H1");
        if (k(bi, bj) < 0) {
            for (std::size_t t = 0; t < r; ++t) basis(bj, t) = -basis(bj, t);
            for (std::size_t t = 0; t < r; ++t) k(bj, t) = -k(bj, t);
            for (std::size_t t = 0; t < r; ++t) k(t, bj) = -k(t, bj);
        }
        pairs.emplace_back(bi, bj);
        remaining.erase(std::remove_if(remaining.begin(), remaining.end(), [&](std::size_t t) { return t == bi || t == bj; }),
                        remaining.end());
    }
    SymplecticReduction out;
    out.genus = static_cast<int>(pairs.size());
    out.transform = IntMatrix(r, r);
    std::size_t row = 0;
    auto copy_row = [&](std::size_t from) {
        for (std::size_t t = 0; t < r; ++t) out.transform(row, t) = basis(from, t);
        ++row;
    };
    for (const auto& p : pairs) copy_row(p.first);
    for (const auto& p : pairs) copy_row(p.second);
    for (std::size_t t : remaining) copy_row(t);
    return out;
}

/// a- and b-cycles as edge chains with the reduction certificate.
struct HomologyBasis {
    int genus = 0;
    std::vector<EdgeChain> a, b;
    std::vector<EdgeChain> fundamental;
    IntMatrix transform;           // rows: new basis in terms of `fundamental`
    IntMatrix intersection;        // pairing of the fundamental cycles
};

inline HomologyBasis homology_symplectic_basis(const MonodromyData& md) {
    HomologyBasis hb;
    hb.fundamental = fundamental_cycles(md);
    hb.intersection = intersection_matrix(md, hb.fundamental);
    const auto red = symplectic_reduction(hb.intersection);
    const int g = red.genus;
    if (g != md.genus()) throw inconsistency_error("homology rank disagrees with Riemann-Hurwitz");
    hb.genus = g;
    hb.transform = red.transform;
    const std::size_t edges = hb.fundamental.empty() ? 0 : hb.fundamental[0].size();
    auto combine = [&](std::size_t row) {
        EdgeChain c(edges, 0);
        for (std::size_t j = 0; j < hb.fundamental.size(); ++j) {
            const long long coef = red.transform(row, j);
            if (coef == 0) continue;
            for (std::size_t e = 0; e < edges; ++e)
                c[e] = detail::checked_add(c[e], detail::checked_mul(coef, hb.fundamental[j][e]));
        }
        return c;
    };
    for (int i = 0; i < g; ++i) hb.a.push_back(combine(i));
    for (int i = 0; i < g; ++i) hb.b.push_back(combine(g + i));
    return hb;
}

/// Pairing of the reduced cycles; equals the standard J when the reduction
/// succeeded.
inline IntMatrix symplectic_form(const MonodromyData& md, const HomologyBasis& hb) {
    std::vector<EdgeChain> all = hb.a;
    all.insert(all.end(), hb.b.begin(), hb.b.end());
    return intersection_matrix(md, all);
}

}  // namespace jacobi3
