#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "zml/chebyshev.hpp"
#include "zml/dirichlet_poly.hpp"
#include "zml/gap_stats.hpp"
#include "zml/gauss.hpp"
#include "zml/parallel.hpp"
#include "zml/special_functions.hpp"
#include "zml/zero_store.hpp"

namespace zml {

// ---------------------------------------------------------------------------
// Closed-form kernels for the per-zero window integrals.
// ---------------------------------------------------------------------------

/// I = (sigma - 1/2)^{1-2K} * sqrt(pi) * Gamma(K - 1/2) / Gamma(K),
/// the full-line integral of ((sigma-1/2)^2 + t^2)^{-K}.
inline double closed_form_I(int K, double sigma_minus_half) {
    if (K < 1) throw std::invalid_argument("closed_form_I: K must be >= 1");
    if (!(sigma_minus_half > 0.0))
        throw std::invalid_argument("closed_form_I: sigma_minus_half must be positive");
    return std::pow(sigma_minus_half, 1.0 - 2.0 * K) * std::sqrt(pi) *
           std::tgamma(K - 0.5) / std::tgamma(double(K));
}

/// The same value through the duplication identity:
/// (sigma - 1/2)^{1-2K} * pi * 2^{2-2K} * C(2K-2, K-1).
inline double closed_form_I_binomial(int K, double sigma_minus_half) {
    return std::pow(sigma_minus_half, 1.0 - 2.0 * K) * pi * std::pow(2.0, 2.0 - 2.0 * K) *
           binomial(2 * K - 2, K - 1);
}

namespace detail {
/// tail_K(x) = int_x^inf (1+t^2)^{-K} dt by the standard reduction.
inline double lorentz_tail(int K, double x) {
    double t = pi / 2.0 - std::atan(x);
    double pw = 1.0 + x * x;
    for (int k = 2; k <= K; ++k) {
        t = (2.0 * k - 3.0) / (2.0 * k - 2.0) * t - x / ((2.0 * k - 2.0) * std::pow(pw, k - 1));
    }
    return t;
}
}  // namespace detail

/// J = (sigma - 1/2)^{1-2K} * int_{1/b}^inf (1+t^2)^{-K} dt, the tail of the
/// window integral; o(I) as b -> 0.
inline double closed_form_J(int K, double sigma_minus_half, double b) {
    if (K < 1) throw std::invalid_argument("closed_form_J: K must be >= 1");
    if (!(b > 0.0)) throw std::invalid_argument("closed_form_J: b must be positive");
    return std::pow(sigma_minus_half, 1.0 - 2.0 * K) * detail::lorentz_tail(K, 1.0 / b);
}

// ---------------------------------------------------------------------------
// Fast zeta'/zeta on a fixed horizontal line.
//
// Direct Euler-Maclaurin needs ~t/pi terms per point, far too slow for the
// millions of quadrature nodes a [T, 2T] moment needs. Instead the line is
// cut into blocks; on each block the smooth remainder
//   R(t) = zeta'/zeta(sigma + it) - sum over nearby zeros of 1/(s - rho)
// is analytic in a wide strip (its nearest singularities are the zeros
// beyond the margin), so a low-order Chebyshev interpolant built from a
// handful of Euler-Maclaurin evaluations reproduces it to ~1e-9. Point
// evaluations then cost a short explicit zero sum plus a Clenshaw loop.
// ---------------------------------------------------------------------------

class LogDerivLine {
public:
    LogDerivLine(double sigma, double lo, double hi, const ZeroList& zeros,
                 const EvalConfig& cfg, double margin = 25.0, double block_width = 8.0,
                 int cheb_order = 14)
        : sigma_(sigma), lo_(lo), hi_(hi), zeros_(&zeros), cfg_(cfg), margin_(margin),
          block_w_(block_width) {
        if (!(hi > lo)) throw std::invalid_argument("LogDerivLine: empty range");
        std::size_t nb = std::size_t(std::ceil((hi - lo) / block_w_));
        blocks_.resize(nb);
        parallel_for(nb, [&](std::size_t i) {
            thread_local PowTable tab;
            if (tab.sigma != sigma_) tab = PowTable(sigma_);
            build_block(i, tab, cheb_order);
        });
    }

    cplx eval(double t) const {
        std::size_t i = block_index(t);
        const Block& b = blocks_[i];
        KahanSumC acc;
        const auto& g = zeros_->ordinates;
        for (std::size_t k = b.z_lo; k < b.z_hi; ++k)
            acc.add(1.0 / cplx(sigma_ - 0.5, t - g[k]));
        return acc.value() + b.fit.eval(t);
    }

    double sigma() const { return sigma_; }

private:
    struct Block {
        double x0, x1;
        std::size_t z_lo = 0, z_hi = 0;
        ChebFit fit;
    };

    std::size_t block_index(double t) const {
        double r = (t - lo_) / block_w_;
        long i = long(r);
        if (i < 0) i = 0;
        if (std::size_t(i) >= blocks_.size()) i = long(blocks_.size()) - 1;
        return std::size_t(i);
    }

    void build_block(std::size_t i, PowTable& tab, int cheb_order) {
        Block& b = blocks_[i];
        b.x0 = lo_ + i * block_w_;
        b.x1 = std::min(b.x0 + block_w_, hi_);
        const auto& g = zeros_->ordinates;
        b.z_lo = std::lower_bound(g.begin(), g.end(), b.x0 - margin_) - g.begin();
        b.z_hi = std::upper_bound(g.begin(), g.end(), b.x1 + margin_) - g.begin();
        auto smooth = [&](double t) -> cplx {
            cplx v = log_deriv_zeta(cplx(sigma_, t), cfg_, &tab);
            KahanSumC zs;
            for (std::size_t k = b.z_lo; k < b.z_hi; ++k)
                zs.add(1.0 / cplx(sigma_ - 0.5, t - g[k]));
            return v - zs.value();
        };
        b.fit = ChebFit::build(smooth, b.x0, b.x1, cheb_order);
    }

    double sigma_, lo_, hi_;
    const ZeroList* zeros_;
    EvalConfig cfg_;
    double margin_, block_w_;
    std::vector<Block> blocks_;
};

// ---------------------------------------------------------------------------
// t-classification and the moment integral.
// ---------------------------------------------------------------------------

enum class TClass { T0, T1, T2 };

/// Classify t: zero-free window (T0), window holding an isolated zero (T1),
/// otherwise T2. The census must have been built with the same b.
inline TClass classify_t(double t, const SPoint& sp, const ZeroList& zeros,
                         const GapCensus& census) {
    if (std::abs(census.b - sp.b()) > 1e-12 * (1.0 + sp.b()))
        throw std::invalid_argument("classify_t: census b does not match point parameters");
    double w = sp.window_halfwidth();
    const auto& g = zeros.ordinates;
    std::size_t lo = std::lower_bound(g.begin(), g.end(), t - w) - g.begin();
    std::size_t count = 0;
    bool isolated = false;
    double w2 = 2.0 * w;
    for (std::size_t i = lo; i < g.size() && g[i] - t < w; ++i) {
        if (std::abs(g[i] - t) < w) {
            ++count;
            bool left_ok = (i == 0) || (g[i] - g[i - 1] >= w2);
            bool right_ok = (i + 1 == g.size()) || (g[i + 1] - g[i] >= w2);
            isolated = left_ok && right_ok;
        }
    }
    if (count == 0) return TClass::T0;
    if (count == 1 && isolated) return TClass::T1;
    return TClass::T2;
}

enum class IntegrandKind {
    zeta_log_deriv,   // |zeta'/zeta|^{2K}
    window_zero_sum,  // |sum over window zeros of 1/(s-rho)|^{2K}
};

namespace detail {

struct Piece {
    double t_lo, t_hi;
    double gamma = 0.0;   // defining zero for window pieces
    bool window = false;
    TClass cls = TClass::T0;
};

struct PieceResult {
    double value = 0.0;
    double abs_error = 0.0;
    int panels = 0;
};

/// Integrate F over a window piece with the flattening substitution
/// t = gamma + delta * tan(v), which maps the near-pole profile to a
/// bounded one.
template <class F>
PieceResult integrate_window_piece(const F& f2k, const Piece& pc, double delta, double rel_tol) {
    double v0 = std::atan((pc.t_lo - pc.gamma) / delta);
    double v1 = std::atan((pc.t_hi - pc.gamma) / delta);
    auto g = [&](double v) {
        double c = std::cos(v);
        double t = pc.gamma + delta * std::tan(v);
        return f2k(t) * delta / (c * c);
    };
    double quick = std::abs(gauss_integrate(g, v0, v1, 24));
    AdaptiveResult ar = adaptive_gauss(g, v0, v1, quick * rel_tol + 1e-300);
    return {ar.value, ar.abs_error, ar.panels};
}

template <class F>
PieceResult integrate_plain_piece(const F& f2k, const Piece& pc, double rel_tol) {
    double quick = std::abs(gauss_integrate(f2k, pc.t_lo, pc.t_hi, 24));
    AdaptiveResult ar = adaptive_gauss(f2k, pc.t_lo, pc.t_hi, quick * rel_tol + 1e-300);
    return {ar.value, ar.abs_error, ar.panels};
}

/// Window/gap partition of [T, 2T] at the zero-window boundaries
/// gamma +- b/log T, clipped to [T, 2T]. Windows overlapping each other are
/// merged into blocks split at inter-zero midpoints.
inline std::vector<Piece> partition_pieces(double a, double T, double delta_exp,
                                           const ZeroList& zeros) {
    double logT = std::log(T);
    double w = std::pow(a, delta_exp) / logT;
    double w2 = 2.0 * w;
    const auto& g = zeros.ordinates;

    std::vector<Piece> pieces;
    std::size_t lo = std::lower_bound(g.begin(), g.end(), T - w) - g.begin();
    std::size_t hi = std::upper_bound(g.begin(), g.end(), 2.0 * T + w) - g.begin();

    double cursor = T;
    std::size_t i = lo;
    while (i < hi) {
        // Block of zeros with overlapping windows.
        std::size_t j = i;
        while (j + 1 < hi && g[j + 1] - g[j] < w2) ++j;
        double blk_lo = std::max(g[i] - w, T);
        double blk_hi = std::min(g[j] + w, 2.0 * T);
        if (blk_hi > blk_lo) {
            if (blk_lo > cursor)
                pieces.push_back({cursor, blk_lo, 0.0, false, TClass::T0});
            bool isolated = (j == i) &&
                            (i == 0 || g[i] - g[i - 1] >= w2) &&
                            (i + 1 == g.size() || g[i + 1] - g[i] >= w2);
            TClass cls = isolated ? TClass::T1 : TClass::T2;
            double sub_lo = blk_lo;
            for (std::size_t k = i; k <= j; ++k) {
                double sub_hi = (k == j) ? blk_hi : std::min(0.5 * (g[k] + g[k + 1]), blk_hi);
                if (sub_hi > sub_lo)
                    pieces.push_back({sub_lo, sub_hi, g[k], true, cls});
                sub_lo = sub_hi;
            }
            cursor = blk_hi;
        }
        i = j + 1;
    }
    if (cursor < 2.0 * T) pieces.push_back({cursor, 2.0 * T, 0.0, false, TClass::T0});
    return pieces;
}

}  // namespace detail

struct MomentOptions {
    double rel_tol = 1e-5;
    double delta = 0.25;                 // window exponent, b = a^delta
    IntegrandKind integrand = IntegrandKind::zeta_log_deriv;
    double line_margin = 25.0;           // analyticity margin for the fast line
    double direct_em_below_T = 6000.0;   // below this, skip interpolation
};

/// Moment integrals int_T^{2T} |zeta'/zeta(1/2 + a/log T + it)|^{2K} dt for
/// several K at once (the expensive line evaluation is K-independent), with
/// the T0/T1/T2 breakdown and a deterministic fixed-order reduction.
inline std::vector<MomentEstimate> moment_integral_multi(const std::vector<int>& Ks, double a,
                                                         double T, const ZeroList& zeros,
                                                         const EvalConfig& cfg,
                                                         const MomentOptions& opt = {}) {
    if (!(a > 0.0 && a <= 5.0)) throw std::invalid_argument("moment_integral: a out of range");
    for (int K : Ks)
        if (K < 1 || K > 3) throw std::invalid_argument("moment_integral: K must be in [1,3]");
    if (!zeros.covers(T - 1.0, 2.0 * T + 1.0))
        throw std::runtime_error("moment_integral: zeros must cover [T-1, 2T+1]");

    double logT = std::log(T);
    double dsig = a / logT;
    double sigma = 0.5 + dsig;
    double w = std::pow(a, opt.delta) / logT;

    std::vector<detail::Piece> pieces = detail::partition_pieces(a, T, opt.delta, zeros);

    // Line evaluator (or direct Euler-Maclaurin at small heights).
    std::unique_ptr<LogDerivLine> line;
    double avail_margin =
        std::min(std::max(T - zeros.t_min, 0.0), std::max(zeros.t_max - 2.0 * T, 0.0));
    bool use_line = opt.integrand == IntegrandKind::zeta_log_deriv && T > opt.direct_em_below_T &&
                    avail_margin >= 8.0;
    if (use_line)
        line = std::make_unique<LogDerivLine>(sigma, T, 2.0 * T, zeros, cfg,
                                              std::min(opt.line_margin, avail_margin - 1.0));

    const auto& g = zeros.ordinates;
    auto abs2 = [&](double t) -> double {
        cplx v;
        if (opt.integrand == IntegrandKind::window_zero_sum) {
            KahanSumC acc;
            std::size_t k = std::lower_bound(g.begin(), g.end(), t - w) - g.begin();
            for (; k < g.size() && g[k] - t < w; ++k)
                if (std::abs(g[k] - t) < w) acc.add(1.0 / cplx(dsig, t - g[k]));
            v = acc.value();
        } else if (line) {
            v = line->eval(t);
        } else {
            thread_local PowTable direct_tab;
            if (direct_tab.sigma != sigma) direct_tab = PowTable(sigma);
            v = log_deriv_zeta(cplx(sigma, t), cfg, &direct_tab);
        }
        return std::norm(v);
    };

    std::vector<MomentEstimate> out(Ks.size());
    for (std::size_t ki = 0; ki < Ks.size(); ++ki) {
        int K = Ks[ki];
        auto f2k = [&](double t) { return std::pow(abs2(t), double(K)); };
        std::vector<detail::PieceResult> res(pieces.size());
        parallel_for(pieces.size(), [&](std::size_t i) {
            const detail::Piece& pc = pieces[i];
            res[i] = pc.window ? detail::integrate_window_piece(f2k, pc, dsig, opt.rel_tol)
                               : detail::integrate_plain_piece(f2k, pc, opt.rel_tol);
        });
        MomentEstimate& m = out[ki];
        KahanSum total, err, t0, t1, t2;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            total.add(res[i].value);
            err.add(res[i].abs_error);
            m.panels += res[i].panels;
            switch (pieces[i].cls) {
                case TClass::T0: t0.add(res[i].value); break;
                case TClass::T1: t1.add(res[i].value); break;
                case TClass::T2: t2.add(res[i].value); break;
            }
        }
        m.value = total.value();
        m.abs_error_estimate = err.value();
        m.t0 = t0.value();
        m.t1 = t1.value();
        m.t2 = t2.value();
    }
    return out;
}

inline MomentEstimate moment_integral(int K, double a, double T, const ZeroList& zeros,
                                      const EvalConfig& cfg, const MomentOptions& opt = {}) {
    return moment_integral_multi({K}, a, T, zeros, cfg, opt)[0];
}

/// The scaled statistic (2a)^{2K-1} / (T (log T)^{2K}) * moment, and the
/// central binomial target it converges to.
struct ScaledStatistic {
    double statistic = 0.0;
    double target = 0.0;
};

inline ScaledStatistic scaled_statistic(int K, double a, double T, const MomentEstimate& moment) {
    ScaledStatistic s;
    double logT = std::log(T);
    s.statistic = std::pow(2.0 * a, 2.0 * K - 1.0) / (T * std::pow(logT, 2.0 * K)) * moment.value;
    s.target = binomial(2 * K - 2, K - 1);
    return s;
}

}  // namespace zml
