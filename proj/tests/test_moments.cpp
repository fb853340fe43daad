#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "zml/moments.hpp"
#include "zml/zero_store.hpp"

using namespace zml;

namespace {

ZeroList synthetic(std::vector<double> g, double lo, double hi) {
    ZeroList zl;
    zl.ordinates = std::move(g);
    zl.t_min = lo;
    zl.t_max = hi;
    zl.validate();
    return zl;
}

// Independent antiderivative oracle: G_K(x) = int_0^x (1+u^2)^{-K} du by the
// textbook reduction formula (written out separately from the library path).
double lorentz_partial(int K, double x) {
    if (K == 1) return std::atan(x);
    double lower = lorentz_partial(K - 1, x);
    return (2.0 * K - 3.0) / (2.0 * K - 2.0) * lower +
           x / ((2.0 * K - 2.0) * std::pow(1.0 + x * x, K - 1));
}

}  // namespace

TEST_CASE("closed form I: exact values and duplication identity") {
    CHECK(std::abs(closed_form_I(1, 1.0) - pi) < 1e-14);
    CHECK(std::abs(closed_form_I(2, 1.0) - pi / 2.0) < 1e-14);
    CHECK(std::abs(closed_form_I_binomial(2, 1.0) - pi / 2.0) < 1e-14);
    CHECK(std::abs(closed_form_I(3, 2.0) - 3.0 * pi / 256.0) < 1e-15);
    for (int K = 1; K <= 10; ++K)
        for (double d : {1.0, 0.1, 0.01})
            CHECK(std::abs(closed_form_I(K, d) / closed_form_I_binomial(K, d) - 1.0) <= 1e-12);
    CHECK_THROWS_AS(closed_form_I(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_I(1, 0.0), std::invalid_argument);
}

TEST_CASE("closed form I against a quadrature oracle") {
    // K = 3, d = 2: finite integral plus a negligible analytic tail.
    double d = 2.0;
    auto f = [&](double t) { return std::pow(d * d + t * t, -3.0); };
    AdaptiveResult q = adaptive_gauss(f, -200.0, 200.0, 1e-16);
    CHECK(std::abs(q.value - closed_form_I(3, d)) < 1e-9 * closed_form_I(3, d));
}

TEST_CASE("closed form J: values, tail behavior, limits") {
    CHECK(std::abs(closed_form_J(1, 1.0, 1.0) - pi / 4.0) < 1e-14);
    // Quadrature oracle for K = 2, 3 on the truncated tail.
    for (int K : {2, 3}) {
        double b = 0.7;
        auto f = [&](double t) { return std::pow(1.0 + t * t, -double(K)); };
        double X = 3000.0;
        AdaptiveResult q = adaptive_gauss(f, 1.0 / b, X, 1e-15);
        double tail_beyond = std::pow(X, 1.0 - 2.0 * K) / (2.0 * K - 1.0);
        CHECK(std::abs(q.value + tail_beyond - closed_form_J(K, 1.0, b)) < 1e-8);
    }
    // J/I decreasing as the window shrinks.
    double prev = std::numeric_limits<double>::infinity();
    for (double b : {0.5, 0.2, 0.1, 0.05}) {
        double ratio = closed_form_J(1, 0.3, b) / closed_form_I(1, 0.3);
        CHECK(ratio < prev);
        prev = ratio;
    }
    // Wide-window limit: J -> I/2.
    CHECK(std::abs(closed_form_J(1, 1.0, 1e6) - closed_form_I(1, 1.0) / 2.0) <
          1e-3 * closed_form_I(1, 1.0));
}

TEST_CASE("t-classification") {
    double T = 1000.0;
    double logT = std::log(T);
    SPoint sp(0.1, T, 1500.0);
    double w = sp.window_halfwidth();
    std::vector<double> g = {1400.0, 1500.0, 1600.0, 1700.0, 1700.0 + 0.5 * w};
    ZeroList zl = synthetic(g, T - 2.0, 2.0 * T + 2.0);
    GapCensus census = build_census(sp.b(), zl, T);

    CHECK(classify_t(1450.0, SPoint(0.1, T, 1450.0), zl, census) == TClass::T0);
    CHECK(classify_t(1500.0, SPoint(0.1, T, 1500.0), zl, census) == TClass::T1);
    // Between the close pair: window holds non-isolated zeros.
    double mid = 1700.0 + 0.25 * w;
    CHECK(classify_t(mid, SPoint(0.1, T, mid), zl, census) == TClass::T2);
    // Census built at a different b is rejected.
    GapCensus other = build_census(2.0 * sp.b(), zl, T);
    CHECK_THROWS_AS(classify_t(1500.0, sp, zl, other), std::invalid_argument);
}

TEST_CASE("model-mode moment over a single isolated window equals the antiderivative") {
    double T = 1e4;
    double a = 0.05;
    double logT = std::log(T);
    double gamma = 1.5 * T;
    ZeroList zl = synthetic({gamma}, T - 2.0, 2.0 * T + 2.0);
    MomentOptions opt;
    opt.integrand = IntegrandKind::window_zero_sum;
    opt.rel_tol = 1e-11;
    double d = a / logT;
    double w = std::pow(a, 0.25) / logT;
    for (int K : {1, 2, 3}) {
        MomentEstimate m = moment_integral(K, a, T, zl, EvalConfig::fast_mode(), opt);
        double exact = std::pow(d, 1.0 - 2.0 * K) * 2.0 * lorentz_partial(K, w / d);
        CHECK(std::abs(m.value - exact) < 1e-9 * exact);
        // The lone window is an isolated zero: everything lands in T1.
        CHECK(m.t1 == m.value);
        CHECK(m.t0 == 0.0);
        CHECK(m.t2 == 0.0);
        // And the value sits inside the I +- 2J band.
        double I = closed_form_I(K, d);
        double J = closed_form_J(K, d, std::pow(a, 0.25));
        CHECK(m.value >= I - 2.0 * J);
        CHECK(m.value <= I + 2.0 * J);
    }
}

TEST_CASE("model-mode moment splits a close pair into T2") {
    double T = 1e4;
    double a = 0.05;
    double logT = std::log(T);
    double w = std::pow(a, 0.25) / logT;
    double gamma = 1.5 * T;
    ZeroList zl = synthetic({gamma, gamma + 0.5 * w, 1.8 * T}, T - 2.0, 2.0 * T + 2.0);
    MomentOptions opt;
    opt.integrand = IntegrandKind::window_zero_sum;
    MomentEstimate m = moment_integral(1, a, T, zl, EvalConfig::fast_mode(), opt);
    CHECK(m.t2 > 0.0);
    CHECK(m.t1 > 0.0);  // the far zero at 1.8T is isolated
    CHECK(m.t0 == 0.0);
    CHECK(std::abs(m.t0 + m.t1 + m.t2 - m.value) <= m.abs_error_estimate + 1e-12 * m.value);
}

TEST_CASE("fast line evaluator reproduces direct evaluation") {
    double lo = 8000.0, hi = 8080.0;
    ZeroList zl = find_zeros(lo - 35.0, hi + 35.0);
    EvalConfig cfg = EvalConfig::fast_mode();
    double sigma = 0.5 + 0.1 / std::log(8000.0);
    LogDerivLine line(sigma, lo, hi, zl, cfg);
    PowTable tab(sigma);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ud(lo, hi);
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
        double t = ud(rng);
        // Keep clear of zeros so the direct path is well-conditioned.
        std::size_t j = zl.lower_index(t);
        double gap = std::min(j < zl.size() ? zl.ordinates[j] - t : 1.0,
                              j > 0 ? t - zl.ordinates[j - 1] : 1.0);
        if (gap < 1e-3) continue;
        cplx direct = log_deriv_zeta(cplx(sigma, t), cfg, &tab);
        worst = std::max(worst, std::abs(line.eval(t) - direct));
    }
    INFO("max deviation " << worst);
    // Floor set by the 1e-9 ordinate accuracy through the pole terms
    // (delta_gamma / (sigma - 1/2)^2), not by the interpolation itself.
    CHECK(worst < 5e-6);
}

TEST_CASE("moment on real zeros at small height") {
    double T = 1000.0;
    ZeroList zl = find_zeros(T - 35.0, 2.0 * T + 35.0);
    MomentEstimate m = moment_integral(1, 0.5, T, zl, EvalConfig::fast_mode());
    CHECK(m.value > 0.0);
    CHECK(m.t0 >= 0.0);
    CHECK(m.t1 >= 0.0);
    CHECK(m.t2 >= 0.0);
    CHECK(m.panels > 0);
    CHECK(std::abs(m.t0 + m.t1 + m.t2 - m.value) <= m.abs_error_estimate + 1e-12 * m.value);

    // Large a: the zero-free region dominates; positivity and consistency.
    MomentEstimate big = moment_integral(1, 5.0, T, zl, EvalConfig::fast_mode());
    CHECK(big.value > 0.0);
    CHECK(big.t0 > big.t1 + big.t2);

    CHECK_THROWS_AS(moment_integral(4, 0.5, T, zl, EvalConfig::fast_mode()),
                    std::invalid_argument);
    ZeroList short_list = synthetic({1500.0}, T, 1600.0);
    CHECK_THROWS_AS(moment_integral(1, 0.5, T, short_list, EvalConfig::fast_mode()),
                    std::runtime_error);
}

TEST_CASE("scaled statistic targets and inverse") {
    MomentEstimate m;
    double T = 1e5, a = 0.1;
    for (int K : {1, 2, 3}) {
        m.value = T * std::pow(std::log(T), 2.0 * K) / std::pow(2.0 * a, 2.0 * K - 1.0);
        ScaledStatistic s = scaled_statistic(K, a, T, m);
        CHECK(std::abs(s.statistic - 1.0) < 1e-12);
        CHECK(s.target == binomial(2 * K - 2, K - 1));
    }
    CHECK(scaled_statistic(1, a, T, m).target == 1.0);
    CHECK(scaled_statistic(2, a, T, m).target == 2.0);
    CHECK(scaled_statistic(3, a, T, m).target == 6.0);
}

TEST_CASE("single-zero model moment decreases in a") {
    // On the closed-form model the a-monotonicity is exact.
    double logT = std::log(1e5);
    double prev = std::numeric_limits<double>::infinity();
    for (double a : {0.05, 0.1, 0.2, 0.5}) {
        double cur = closed_form_I(1, a / logT);
        CHECK(cur < prev);
        prev = cur;
    }
}
