#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "zml/util.hpp"

namespace zml {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

enum class PrecisionMode { fast, oracle };

struct EvalConfig {
    PrecisionMode precision_mode = PrecisionMode::fast;
    int euler_maclaurin_terms = 14;   // Bernoulli correction terms
    int rs_correction_order = 4;      // 0..4

    EvalConfig() = default;
    EvalConfig(PrecisionMode m, int em_terms, int rs_order)
        : precision_mode(m), euler_maclaurin_terms(em_terms), rs_correction_order(rs_order) {
        validate();
    }
    void validate() const {
        if (euler_maclaurin_terms < 1 || euler_maclaurin_terms > max_bernoulli_terms)
            throw std::invalid_argument("euler_maclaurin_terms out of range");
        if (rs_correction_order < 0 || rs_correction_order > 4)
            throw std::invalid_argument("rs_correction_order must be in [0,4]");
    }
    static EvalConfig fast_mode() { return EvalConfig(PrecisionMode::fast, 14, 4); }
    static EvalConfig oracle_mode() { return EvalConfig(PrecisionMode::oracle, 18, 4); }
};

/// Evaluation point s = 1/2 + a/log T + it together with the window
/// parameters derived from it: b = a^delta, and c with
/// (c/log T)^2 = (a/log T)^2 + (b/log T)^2, so that
/// |s - rho| < c/log T  <=>  |t - gamma| < b/log T for rho on the line.
struct SPoint {
    double a;
    double T;
    double t;
    double delta;

    SPoint(double a_, double T_, double t_, double delta_ = 0.25)
        : a(a_), T(T_), t(t_), delta(delta_) {
        if (!(a > 0.0)) throw std::invalid_argument("SPoint: a must be positive");
        if (!(T > two_pi)) throw std::invalid_argument("SPoint: T must exceed 2*pi");
        if (!(delta > 0.0)) throw std::invalid_argument("SPoint: delta must be positive");
        if (!(t >= T - 1.0 && t <= 2.0 * T + 1.0))
            throw std::invalid_argument("SPoint: t must lie in [T, 2T]");
    }

    double log_T() const { return std::log(T); }
    double sigma() const { return 0.5 + a / log_T(); }
    double b() const { return std::pow(a, delta); }
    double c() const { return std::hypot(a, b()); }
    /// Half-width of the zero window in t, b/log T.
    double window_halfwidth() const { return b() / log_T(); }
    cplx s() const { return {sigma(), t}; }
};

// ---------------------------------------------------------------------------
// Complex log-gamma (Lanczos, g = 7). Relative accuracy ~1e-13; this is the
// high-precision reference used by the theta oracle.
// ---------------------------------------------------------------------------

inline cplx lgamma_complex(cplx z) {
    static const double g = 7.0;
    static const double coef[9] = {
        0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // One-step recurrence keeps us out of the reflection zone for the
        // arguments this project uses (Re z = 1/4).
        return lgamma_complex(z + 1.0) - std::log(z);
    }
    z -= 1.0;
    cplx x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + double(i));
    cplx t = z + g + 0.5;
    return 0.5 * std::log(two_pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// ---------------------------------------------------------------------------
// Riemann-Siegel theta
// ---------------------------------------------------------------------------

/// High-precision theta via log-gamma; accepts any real t (odd function).
inline double theta_oracle(double t) {
    cplx lg = lgamma_complex(cplx(0.25, 0.5 * t));
    return lg.imag() - 0.5 * t * std::log(pi);
}

/// theta(t) = arg Gamma(1/4 + it/2) - (t/2) log pi. Asymptotic expansion for
/// t >= 10, log-gamma below. Domain: t >= 0.
inline double theta(double t) {
    if (t < 0.0) throw std::domain_error("theta: t must be nonnegative");
    if (t < 10.0) return theta_oracle(t);
    double lt = std::log(t / two_pi);
    double t2 = t * t;
    return 0.5 * t * lt - 0.5 * t - pi / 8.0 + 1.0 / (48.0 * t) +
           7.0 / (5760.0 * t * t2) + 31.0 / (80640.0 * t * t2 * t2) +
           127.0 / (430080.0 * t * t2 * t2 * t2);
}

/// d theta / dt, needed for window geometry and density estimates.
inline double theta_deriv(double t) {
    double t2 = t * t;
    return 0.5 * std::log(t / two_pi) - 1.0 / (48.0 * t2) -
           21.0 / (5760.0 * t2 * t2) - 155.0 / (80640.0 * t2 * t2 * t2);
}

// ---------------------------------------------------------------------------
// Riemann-Siegel correction terms.
//
// The remainder of the main sum is expanded in powers of (t/2pi)^{-1/2} with
// coefficients C_j(p) built from derivatives of
//   Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p),
// an entire function (numerator and denominator share their zeros). The
// derivatives are obtained by Taylor-series arithmetic; near the removable
// singularities p = 1/4, 3/4 the expansion is taken at the singular point and
// the common simple zero cancelled explicitly.
// ---------------------------------------------------------------------------

namespace detail {

constexpr int psi_series_order = 32;

/// cos/sin series of the phase a0 + a1 x + a2 x^2 up to order M.
inline void cos_sin_series(double a0, double a1, double a2, int M,
                           std::vector<double>& c, std::vector<double>& s) {
    c.assign(M + 1, 0.0);
    s.assign(M + 1, 0.0);
    c[0] = std::cos(a0);
    s[0] = std::sin(a0);
    for (int k = 0; k < M; ++k) {
        double cp = a1 * s[k] + (k >= 1 ? 2.0 * a2 * s[k - 1] : 0.0);
        double sp = a1 * c[k] + (k >= 1 ? 2.0 * a2 * c[k - 1] : 0.0);
        c[k + 1] = -cp / double(k + 1);
        s[k + 1] = sp / double(k + 1);
    }
}

/// Derivatives Psi^(0..k_max)(p), k_max <= 12.
inline void psi_derivs(double p, int k_max, double* out) {
    const int M = psi_series_order;
    // Nearest removable singularity p0 = 1/4 + k/2.
    double p_sing = 0.25 + 0.5 * std::round((p - 0.25) / 0.5);
    bool near_sing = std::abs(p - p_sing) < 0.06;
    double p0 = near_sing ? p_sing : p;

    std::vector<double> nc, ns, dc, ds;
    // Numerator phase 2 pi ((p0+x)^2 - (p0+x) - 1/16).
    cos_sin_series(two_pi * (p0 * p0 - p0 - 0.0625), two_pi * (2.0 * p0 - 1.0),
                   two_pi, M, nc, ns);
    // Denominator phase 2 pi (p0 + x).
    cos_sin_series(two_pi * p0, two_pi, 0.0, M, dc, ds);

    std::vector<double> num(nc), den(dc);
    int ord = M;
    if (near_sing) {
        // Both series vanish at p0; cancel the simple zero.
        for (int k = 0; k < M; ++k) {
            num[k] = nc[k + 1];
            den[k] = dc[k + 1];
        }
        ord = M - 1;
        num[ord] = den[ord] = 0.0;
    }
    std::vector<double> q(ord + 1, 0.0);
    for (int k = 0; k <= ord; ++k) {
        double acc = num[k];
        for (int j = 1; j <= k; ++j) acc -= den[j] * q[k - j];
        q[k] = acc / den[0];
    }
    double x = p - p0;
    for (int m = 0; m <= k_max; ++m) {
        double acc = 0.0, xp = 1.0;
        for (int k = m; k <= ord; ++k) {
            double ff = 1.0;
            for (int j = 0; j < m; ++j) ff *= double(k - j);
            acc += q[k] * ff * xp;
            xp *= x;
        }
        out[m] = acc;
    }
}

inline double rs_correction(double p, double tau_inv_sqrt, int order) {
    // tau_inv_sqrt = (t/2pi)^{-1/2}
    double psi[13];
    psi_derivs(p, order >= 4 ? 12 : (order >= 3 ? 9 : (order >= 2 ? 6 : (order >= 1 ? 3 : 0))), psi);
    const double pi2 = pi * pi;
    const double pi4 = pi2 * pi2;
    const double pi6 = pi4 * pi2;
    const double pi8 = pi4 * pi4;
    double corr = psi[0];
    double u = tau_inv_sqrt;
    if (order >= 1) corr += u * (-psi[3] / (96.0 * pi2));
    if (order >= 2)
        corr += u * u * (psi[2] / (64.0 * pi2) + psi[6] / (18432.0 * pi4));
    if (order >= 3)
        corr += u * u * u *
                (-psi[1] / (64.0 * pi2) - psi[5] / (3840.0 * pi4) -
                 psi[9] / (5308416.0 * pi6));
    if (order >= 4)
        corr += u * u * u * u *
                (psi[0] / (128.0 * pi2) + 19.0 * psi[4] / (24576.0 * pi4) +
                 11.0 * psi[8] / (5898240.0 * pi6) +
                 psi[12] / (2038431744.0 * pi8));
    return corr;
}

/// Shared table of log n and 1/sqrt(n) for the Riemann-Siegel main sum.
struct RsTables {
    std::vector<double> lnn{0.0, 0.0};
    std::vector<double> rsqrt{0.0, 1.0};
    void ensure(std::size_t n) {
        while (lnn.size() <= n) {
            double k = double(lnn.size());
            lnn.push_back(std::log(k));
            rsqrt.push_back(1.0 / std::sqrt(k));
        }
    }
};

inline RsTables& rs_tables() {
    thread_local RsTables t;
    return t;
}

}  // namespace detail

/// Hardy Z via the Riemann-Siegel formula with correction terms.
inline double hardy_z_rs(double t, int order) {
    double tau2 = t / two_pi;
    double tau = std::sqrt(tau2);
    int m = int(tau);
    double p = tau - m;
    double th = theta(t);
    auto& tab = detail::rs_tables();
    tab.ensure(m);
    KahanSum sum;
    for (int n = 1; n <= m; ++n) sum.add(std::cos(th - t * tab.lnn[n]) * tab.rsqrt[n]);
    double corr = detail::rs_correction(p, 1.0 / tau, order);
    double sign = (m % 2 == 0) ? -1.0 : 1.0;
    return 2.0 * sum.value() + sign * corr / std::sqrt(tau);
}

/// Estimated absolute error of hardy_z_rs at height t.
inline double hardy_z_rs_accuracy(double t, int order) {
    return 0.2 * std::pow(t / two_pi, -(2.0 * order + 3.0) / 4.0);
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin zeta and zeta' (term-wise differentiated).
// ---------------------------------------------------------------------------

/// Cached powers n^{-sigma} and log n for a fixed real part sigma.
struct PowTable {
    double sigma = 0.0;
    std::vector<double> lnn{0.0, 0.0};   // lnn[n] = log n
    std::vector<double> nsig{0.0, 1.0};  // nsig[n] = n^{-sigma}

    PowTable() = default;
    explicit PowTable(double s) : sigma(s) {}
    void ensure(std::size_t n) {
        while (lnn.size() <= n) {
            double k = double(lnn.size());
            lnn.push_back(std::log(k));
            nsig.push_back(std::pow(k, -sigma));
        }
    }
};

struct ZetaPair {
    cplx zeta;
    cplx zeta_prime;
};

namespace detail {

/// First-order dual number over complex doubles: value + derivative in s.
struct CDual {
    cplx v, d;
    CDual operator+(const CDual& o) const { return {v + o.v, d + o.d}; }
    CDual operator-(const CDual& o) const { return {v - o.v, d - o.d}; }
    CDual operator*(const CDual& o) const { return {v * o.v, v * o.d + d * o.v}; }
    CDual operator/(const CDual& o) const {
        cplx q = v / o.v;
        return {q, (d - q * o.d) / o.v};
    }
    CDual operator*(double x) const { return {v * x, d * x}; }
};

inline CDual cdual_const(cplx c) { return {c, 0.0}; }
inline CDual cdual_s(cplx s) { return {s, 1.0}; }

/// n^{-s} as a dual in s.
inline CDual npow_dual(double lnn, cplx s) {
    cplx v = std::exp(-s * lnn);
    return {v, -lnn * v};
}

}  // namespace detail

/// zeta(s) and zeta'(s) by Euler-Maclaurin with N main terms and M Bernoulli
/// corrections. If tab is given it must satisfy tab->sigma == Re(s) and is
/// used for the main sum.
inline ZetaPair zeta_em(cplx s, int N, int M, PowTable* tab = nullptr) {
    if (M < 1 || M > max_bernoulli_terms)
        throw std::invalid_argument("zeta_em: bad Bernoulli term count");
    if (N < 2) N = 2;
    using detail::CDual;
    double t = s.imag();
    cplx S0 = 0.0, S1 = 0.0;  // sum n^{-s}, sum log n * n^{-s}
    if (tab != nullptr && tab->sigma == s.real()) {
        tab->ensure(N);
        const double* lnn = tab->lnn.data();
        const double* nsig = tab->nsig.data();
        double sr0 = 0.0, si0 = 0.0, sr1 = 0.0, si1 = 0.0;
        for (int n = 1; n < N; ++n) {
            double ph = -t * lnn[n];
            double c = std::cos(ph), si = std::sin(ph);
            double a = nsig[n];
            sr0 += a * c;
            si0 += a * si;
            sr1 += lnn[n] * a * c;
            si1 += lnn[n] * a * si;
        }
        S0 = {sr0, si0};
        S1 = {sr1, si1};
    } else {
        KahanSumC k0, k1;
        for (int n = 1; n < N; ++n) {
            double lnn = std::log(double(n));
            cplx e = std::exp(-s * lnn);
            k0.add(e);
            k1.add(lnn * e);
        }
        S0 = k0.value();
        S1 = k1.value();
    }
    CDual acc{S0, -S1};

    double lnN = std::log(double(N));
    CDual NmS = detail::npow_dual(lnN, s);          // N^{-s}
    CDual sd = detail::cdual_s(s);
    CDual N1mS = NmS * double(N);                   // N^{1-s}
    acc = acc + N1mS / (sd - detail::cdual_const(1.0));
    acc = acc + NmS * 0.5;

    // Bernoulli tail: B_{2k}/(2k)! * N^{1-s-2k} * prod_{j=0}^{2k-2}(s+j).
    CDual poch = sd;                                 // running product
    double inv_fact = 0.5;                           // 1/(2k)! at k=1
    double Npow = 1.0 / double(N);                   // N^{-(2k-1)} at k=1
    for (int k = 1; k <= M; ++k) {
        CDual term = NmS * (bernoulli_2k[k] * inv_fact * Npow);
        acc = acc + term * poch;
        // advance to k+1
        poch = poch * (sd + detail::cdual_const(double(2 * k - 1)));
        poch = poch * (sd + detail::cdual_const(double(2 * k)));
        inv_fact /= double((2 * k + 1) * (2 * k + 2));
        Npow /= double(N) * double(N);
    }
    return {acc.v, acc.d};
}

/// Euler-Maclaurin parameter choice for a target height.
inline int em_main_terms(double t, PrecisionMode mode) {
    double at = std::max(std::abs(t), 10.0);
    double mult = (mode == PrecisionMode::oracle) ? 1.6 : 1.0;
    return int(std::ceil(mult * at / pi)) + 12;
}

/// Hardy Z via Euler-Maclaurin, Z(t) = Re(e^{i theta} zeta(1/2+it)).
inline double hardy_z_em(double t, const EvalConfig& cfg) {
    int N = em_main_terms(t, cfg.precision_mode);
    ZetaPair zp = zeta_em(cplx(0.5, t), N, cfg.euler_maclaurin_terms);
    double th = (cfg.precision_mode == PrecisionMode::oracle) ? theta_oracle(t) : theta(t);
    cplx z = std::exp(cplx(0.0, th)) * zp.zeta;
    return z.real();
}

/// Same as hardy_z_em but exposing the (tiny) imaginary part, for the
/// realness diagnostics.
inline cplx hardy_z_em_full(double t, const EvalConfig& cfg) {
    int N = em_main_terms(t, cfg.precision_mode);
    ZetaPair zp = zeta_em(cplx(0.5, t), N, cfg.euler_maclaurin_terms);
    return std::exp(cplx(0.0, theta_oracle(t))) * zp.zeta;
}

/// Height below which fast mode uses Euler-Maclaurin instead of
/// Riemann-Siegel (the asymptotic correction terms are not yet at full
/// accuracy there).
inline constexpr double rs_switch_height = 4000.0;

/// Hardy Z. Fast mode: Riemann-Siegel above rs_switch_height, otherwise
/// Euler-Maclaurin. Oracle mode: always Euler-Maclaurin.
inline double hardy_z(double t, const EvalConfig& cfg) {
    if (t < 2.0) throw std::domain_error("hardy_z: t must be >= 2");
    if (cfg.precision_mode == PrecisionMode::fast && t >= rs_switch_height)
        return hardy_z_rs(t, cfg.rs_correction_order);
    return hardy_z_em(t, cfg);
}

/// Estimated absolute error of hardy_z for this configuration.
inline double hardy_z_accuracy(double t, const EvalConfig& cfg) {
    if (cfg.precision_mode == PrecisionMode::fast && t >= rs_switch_height)
        return hardy_z_rs_accuracy(t, cfg.rs_correction_order);
    return 1e-11 * std::max(1.0, std::abs(t) * 1e-4);
}

// ---------------------------------------------------------------------------
// zeta'/zeta
// ---------------------------------------------------------------------------

/// zeta'(s)/zeta(s) for general s with Re(s) > 1/2 (away from s = 1).
/// Throws if the point is numerically indistinguishable from a zero.
inline cplx log_deriv_zeta(cplx s, const EvalConfig& cfg, PowTable* tab = nullptr) {
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-10)
        throw std::domain_error("log_deriv_zeta: pole at s = 1");
    int N = em_main_terms(s.imag(), cfg.precision_mode);
    ZetaPair zp = zeta_em(s, N, cfg.euler_maclaurin_terms, tab);
    // |zeta| ~ |zeta'| * dist near a simple zero, so this rejects points
    // within ~1e-12 of a zero -- below any meaningful evaluation distance.
    double az = std::abs(zp.zeta);
    if (az < 1e-12 * (std::abs(zp.zeta_prime) + 1.0))
        throw std::domain_error("log_deriv_zeta: point too close to a zero");
    return zp.zeta_prime / zp.zeta;
}

inline cplx log_deriv_zeta(const SPoint& sp, const EvalConfig& cfg, PowTable* tab = nullptr) {
    return log_deriv_zeta(sp.s(), cfg, tab);
}

}  // namespace zml
