#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "zml/parallel.hpp"
#include "zml/util.hpp"

namespace zml {

/// von Mangoldt values Lambda(n) for n <= N, stored sparsely at prime powers.
struct LambdaTable {
    std::int64_t N = 0;
    std::vector<std::int64_t> prime_powers;  // sorted
    std::vector<double> values;              // Lambda at prime_powers[i]

    /// Lambda(n); 0 unless n is a prime power.
    double lambda(std::int64_t n) const {
        auto it = std::lower_bound(prime_powers.begin(), prime_powers.end(), n);
        if (it == prime_powers.end() || *it != n) return 0.0;
        return values[it - prime_powers.begin()];
    }

    double sum() const {
        KahanSum s;
        for (double v : values) s.add(v);
        return s.value();
    }
};

/// Exact Lambda values via a prime sieve with prime-power marking.
inline LambdaTable von_mangoldt_sieve(std::int64_t N) {
    if (N < 2) throw std::invalid_argument("von_mangoldt_sieve: N must be >= 2");
    if (N > (std::int64_t(1) << 30))
        throw std::length_error("von_mangoldt_sieve: N above memory guard (2^30)");
    std::vector<bool> composite(std::size_t(N) + 1, false);
    LambdaTable tab;
    tab.N = N;
    for (std::int64_t p = 2; p <= N; ++p) {
        if (composite[std::size_t(p)]) continue;
        double lp = std::log(double(p));
        for (std::int64_t q = p; q <= N; q *= p) {
            tab.prime_powers.push_back(q);
            tab.values.push_back(lp);
            if (q > N / p) break;
        }
        for (std::int64_t m = p * p; m <= N; m += p) composite[std::size_t(m)] = true;
    }
    // Prime powers of different primes interleave; sort into ordinate order.
    std::vector<std::size_t> idx(tab.prime_powers.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return tab.prime_powers[a] < tab.prime_powers[b];
    });
    LambdaTable out;
    out.N = N;
    out.prime_powers.reserve(idx.size());
    out.values.reserve(idx.size());
    for (std::size_t i : idx) {
        out.prime_powers.push_back(tab.prime_powers[i]);
        out.values.push_back(tab.values[i]);
    }
    return out;
}

/// Smoothing weight: 1 for n <= sqrt(N), else 1 - log n / log N.
/// Branch selection is exactly n <= sqrt(N).
inline double weight_w(std::int64_t n, std::int64_t N) {
    if (n < 1 || n > N) throw std::domain_error("weight_w: n outside [1, N]");
    if (double(n) * double(n) <= double(N)) return 1.0;
    return 1.0 - std::log(double(n)) / std::log(double(N));
}

enum class PolyKind { A, B };

/// One bulk evaluation: which polynomial, at its fixed real part
/// (A at 1/2 + 2/log N, B at 1/2), over a t-grid.
struct PolyEvalPlan {
    std::int64_t N;
    std::vector<double> grid;
    PolyKind which = PolyKind::A;

    double real_part() const {
        return which == PolyKind::A ? 0.5 + 2.0 / std::log(double(N)) : 0.5;
    }

    /// Cutoff for a (K, T) moment experiment: floor((T/log T)^{1/K}).
    static std::int64_t cutoff_for(int K, double T) {
        return std::int64_t(std::floor(std::pow(T / std::log(T), 1.0 / K)));
    }
};

namespace detail {

struct PolyTerms {
    std::vector<double> coef;   // Lambda(n) * weight / n^sigma
    std::vector<double> lnn;
};

inline PolyTerms poly_terms(const PolyEvalPlan& plan, const LambdaTable& table) {
    if (plan.N != table.N) throw std::invalid_argument("eval_poly: plan.N != table.N");
    PolyTerms pt;
    double sigma = plan.real_part();
    double lnN = std::log(double(plan.N));
    pt.coef.reserve(table.prime_powers.size());
    pt.lnn.reserve(table.prime_powers.size());
    for (std::size_t i = 0; i < table.prime_powers.size(); ++i) {
        double n = double(table.prime_powers[i]);
        double ln = std::log(n);
        double w = (plan.which == PolyKind::A)
                       ? (n * n <= double(plan.N) ? 1.0 : 1.0 - ln / lnN)
                       : 1.0 - ln / lnN;
        pt.coef.push_back(table.values[i] * w * std::exp(-sigma * ln));
        pt.lnn.push_back(ln);
    }
    return pt;
}

inline cplx poly_eval_point(const PolyTerms& pt, double t) {
    KahanSum re, im;
    const std::size_t n = pt.coef.size();
    for (std::size_t i = 0; i < n; ++i) {
        double ph = -t * pt.lnn[i];
        re.add(pt.coef[i] * std::cos(ph));
        im.add(pt.coef[i] * std::sin(ph));
    }
    return {re.value(), im.value()};
}

}  // namespace detail

/// Evaluate the Dirichlet polynomial over the plan's grid. Iterates prime
/// powers only; compensated accumulation per point.
inline std::vector<cplx> eval_poly(const PolyEvalPlan& plan, const LambdaTable& table) {
    detail::PolyTerms pt = detail::poly_terms(plan, table);
    std::vector<cplx> out(plan.grid.size());
    parallel_for(plan.grid.size(),
                 [&](std::size_t i) { out[i] = detail::poly_eval_point(pt, plan.grid[i]); });
    return out;
}

/// Moment-estimate container shared by the integral experiments.
struct MomentEstimate {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long panels = 0;
    // Contributions from the window classification (zero-free / isolated /
    // clustered); parts sum to value within abs_error_estimate.
    double t0 = 0.0, t1 = 0.0, t2 = 0.0;
};

/// Riemann-sum estimate of the 2K-th moment of the zero-sum error budget
///   E(t) = log T/log N + (|A_N(1/2 + 2/log N + it)| + |B_N(1/2 + it)|)/log N
/// over [T, 2T], with N = floor((T/log T)^{1/K}). Reports the full estimate;
/// the interesting statistic is estimate / T.
struct ErrorMomentResult {
    MomentEstimate estimate;
    std::int64_t N = 0;
    double ratio_to_T = 0.0;
};

inline ErrorMomentResult error_term_moment(int K, double T, double grid_density,
                                           std::int64_t N_override = 0,
                                           bool constant_term_only = false) {
    if (K < 1 || K > 3) throw std::invalid_argument("error_term_moment: K must be in [1,3]");
    if (!(T > 20.0)) throw std::invalid_argument("error_term_moment: T too small");
    std::int64_t N = N_override > 0 ? N_override : PolyEvalPlan::cutoff_for(K, T);
    if (N < 2) throw std::invalid_argument("error_term_moment: cutoff N < 2");
    double lnN = std::log(double(N));
    // The fastest oscillation in the polynomials has angular frequency log N;
    // require a sampling density comfortably above it.
    double min_density = 4.0 * lnN / two_pi;
    if (grid_density < min_density)
        throw std::invalid_argument("error_term_moment: grid density below oscillation scale");

    LambdaTable table = von_mangoldt_sieve(N);
    std::size_t points = std::size_t(std::ceil(T * grid_density));
    double dt = T / double(points);

    PolyEvalPlan plan_a{N, {}, PolyKind::A};
    PolyEvalPlan plan_b{N, {}, PolyKind::B};
    detail::PolyTerms ta = detail::poly_terms(plan_a, table);
    detail::PolyTerms tb = detail::poly_terms(plan_b, table);

    double c0 = std::log(T) / lnN;
    std::vector<double> vals(points);
    parallel_for(points, [&](std::size_t i) {
        double t = T + (double(i) + 0.5) * dt;  // midpoint rule
        double e = c0;
        if (!constant_term_only)
            e += (std::abs(detail::poly_eval_point(ta, t)) +
                  std::abs(detail::poly_eval_point(tb, t))) /
                 lnN;
        vals[i] = std::pow(e, 2.0 * K);
    });
    KahanSum full, half;
    for (std::size_t i = 0; i < points; ++i) {
        full.add(vals[i]);
        if (i % 2 == 0) half.add(vals[i]);
    }
    ErrorMomentResult r;
    r.N = N;
    r.estimate.value = full.value() * dt;
    r.estimate.abs_error_estimate = std::abs(full.value() * dt - half.value() * 2.0 * dt);
    r.estimate.panels = long(points);
    r.estimate.t0 = r.estimate.value;  // whole integrand counts as zero-free
    r.ratio_to_T = r.estimate.value / T;
    return r;
}

}  // namespace zml
