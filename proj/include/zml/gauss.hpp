#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "zml/util.hpp"

namespace zml {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre nodes/weights by Newton iteration on P_n.
inline GaussRule make_gauss_legendre(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

inline const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
    return it->second;
}

/// Integral of f over [a, b] with an n-point Gauss-Legendre rule.
template <class F>
double gauss_integrate(const F& f, double a, double b, int n) {
    const GaussRule& g = gauss_legendre(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    KahanSum acc;
    for (int i = 0; i < n; ++i) acc.add(g.weights[i] * f(mid + half * g.nodes[i]));
    return half * acc.value();
}

struct AdaptiveResult {
    double value = 0.0;
    double abs_error = 0.0;
    int panels = 0;
    bool converged = true;
};

/// Adaptive bisection with embedded coarse/fine Gauss panels.
template <class F>
void adaptive_gauss_rec(const F& f, double a, double b, double tol, int depth,
                        AdaptiveResult& out) {
    double coarse = gauss_integrate(f, a, b, 12);
    double fine = gauss_integrate(f, a, b, 24);
    double err = std::abs(fine - coarse);
    if (err <= tol || depth >= 28) {
        out.value += fine;
        out.abs_error += err;
        out.panels += 1;
        if (err > tol && depth >= 28) out.converged = false;
        return;
    }
    double m = 0.5 * (a + b);
    adaptive_gauss_rec(f, a, m, 0.5 * tol, depth + 1, out);
    adaptive_gauss_rec(f, m, b, 0.5 * tol, depth + 1, out);
}

template <class F>
AdaptiveResult adaptive_gauss(const F& f, double a, double b, double tol) {
    AdaptiveResult out;
    if (b > a) adaptive_gauss_rec(f, a, b, tol, 0, out);
    return out;
}

}  // namespace zml
