#pragma once

#include <cmath>
#include <stdexcept>

#include "zml/special_functions.hpp"
#include "zml/zero_store.hpp"

namespace zml {

/// Result of summing 1/(s - rho) over the zeros in the window
/// |t - gamma| < b/log T.
struct ZeroSumResult {
    cplx main_term{0.0, 0.0};
    long window_zero_count = 0;
    /// Distance from t to the nearest stored zero, in units of 1/log T.
    double nearest_gap = std::numeric_limits<double>::infinity();
};

/// Sum 1/(s - rho) over exactly the zeros with |t - gamma| < b/log T
/// (strict inequality; the interval form of the window). Requires zero
/// coverage of [t - 1, t + 1].
inline ZeroSumResult zero_sum(const SPoint& sp, const ZeroList& zeros) {
    if (!zeros.covers(sp.t - 1.0, sp.t + 1.0))
        throw std::runtime_error("zero_sum: zeros do not cover [t-1, t+1]");
    double w = sp.window_halfwidth();
    double dsig = sp.sigma() - 0.5;
    ZeroSumResult r;
    std::size_t lo = zeros.lower_index(sp.t - w);
    KahanSumC acc;
    for (std::size_t i = lo; i < zeros.size(); ++i) {
        double g = zeros.ordinates[i];
        if (g - sp.t >= w) break;
        if (std::abs(sp.t - g) < w) {
            acc.add(1.0 / cplx(dsig, sp.t - g));
            ++r.window_zero_count;
        }
    }
    r.main_term = acc.value();
    // Nearest gap scans one zero on each side of the window as well.
    std::size_t i0 = zeros.lower_index(sp.t);
    double logT = sp.log_T();
    if (i0 < zeros.size())
        r.nearest_gap = std::min(r.nearest_gap, std::abs(zeros.ordinates[i0] - sp.t) * logT);
    if (i0 > 0)
        r.nearest_gap = std::min(r.nearest_gap, std::abs(zeros.ordinates[i0 - 1] - sp.t) * logT);
    return r;
}

/// Residual of the zero-sum approximation:
/// zeta'/zeta(s) - sum over window zeros of 1/(s - rho).
inline cplx residual(const SPoint& sp, const ZeroList& zeros, const EvalConfig& cfg,
                     PowTable* tab = nullptr) {
    ZeroSumResult zs = zero_sum(sp, zeros);
    return log_deriv_zeta(sp, cfg, tab) - zs.main_term;
}

/// The error budget (log T/c) * E_{T,N}(s) the residual is compared against.
/// |A| and |B| are supplied by the caller (bulk-evaluated).
inline double residual_budget(const SPoint& sp, std::int64_t N, double abs_a, double abs_b) {
    double lnN = std::log(double(N));
    double e = sp.log_T() / lnN + (abs_a + abs_b) / lnN;
    return sp.log_T() / sp.c() * e;
}

}  // namespace zml
