#pragma once

// Gauss-Legendre rules on [-1, 1] at the working precision of R.

#include <cmath>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "jacobi3/errors.hpp"
#include "jacobi3/mp.hpp"

namespace jacobi3 {

template <class R>
struct GaussRule {
    std::vector<R> nodes, weights;
};

namespace detail {

template <class R>
GaussRule<R> compute_gauss_rule(int n) {
    GaussRule<R> rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const R tol = RealTraits<R>::epsilon() * R(4);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        R x = R(std::cos(M_PI * (i + 0.75) / (n + 0.5)));
        R dp(0);
        for (int it = 0; it < 200; ++it) {
            // three-term recurrence for P_n and P_n'
            R p0(1), p1 = x;
            for (int k = 2; k <= n; ++k) {
                R p2 = (R(2 * k - 1) * x * p1 - R(k - 1) * p0) / R(k);
                p0 = std::move(p1);
                p1 = std::move(p2);
            }
            if (n == 1) p0 = R(1);
            dp = R(n) * (x * p1 - p0) / (x * x - R(1));
            const R step = p1 / dp;
            x -= step;
            using std::abs;
            if (abs(step) <= tol) {
                if (it > 0) break;
            }
        }
        // recompute the derivative at the converged node
        R p0(1), p1 = x;
        for (int k = 2; k <= n; ++k) {
            R p2 = (R(2 * k - 1) * x * p1 - R(k - 1) * p0) / R(k);
            p0 = std::move(p1);
            p1 = std::move(p2);
        }
        if (n == 1) p0 = R(1);
        dp = R(n) * (x * p1 - p0) / (x * x - R(1));
        const R w = R(2) / ((R(1) - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace detail

/// n-point rule with nodes ascending; cached per (n, precision).
template <class R>
const GaussRule<R>& gauss_legendre(int n) {
    if (n < 1) throw invalid_input("Gauss rule needs at least one node");
    static std::mutex mutex;
    static std::map<std::pair<int, unsigned>, GaussRule<R>> cache;
    const auto key = std::make_pair(n, RealTraits<R>::bits());
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, detail::compute_gauss_rule<R>(n)).first;
    return it->second;
}

}  // namespace jacobi3
