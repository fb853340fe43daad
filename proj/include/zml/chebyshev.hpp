#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "zml/util.hpp"

namespace zml {

/// Complex-valued Chebyshev interpolant on [a, b], built from samples at
/// Chebyshev points of the first kind.
struct ChebFit {
    double a = 0.0, b = 1.0;
    std::vector<cplx> coef;

    template <class F>
    static ChebFit build(const F& f, double a, double b, int n) {
        ChebFit fit;
        fit.a = a;
        fit.b = b;
        std::vector<cplx> vals(n);
        for (int k = 0; k < n; ++k) {
            double x = std::cos(pi * (k + 0.5) / n);
            vals[k] = f(0.5 * (a + b) + 0.5 * (b - a) * x);
        }
        fit.coef.resize(n);
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k)
                s += vals[k] * std::cos(pi * j * (k + 0.5) / n);
            fit.coef[j] = s * (2.0 / n);
        }
        fit.coef[0] *= 0.5;
        return fit;
    }

    cplx eval(double t) const {
        double x = (2.0 * t - a - b) / (b - a);
        // Clenshaw.
        cplx b1 = 0.0, b2 = 0.0;
        for (int j = int(coef.size()) - 1; j >= 1; --j) {
            cplx b0 = coef[j] + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        return coef[0] + x * b1 - b2;
    }
};

}  // namespace zml
