#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "zml/dirichlet_poly.hpp"
#include "zml/special_functions.hpp"
#include "zml/zero_store.hpp"

using namespace zml;

TEST_CASE("theta at zero and odd symmetry") {
    CHECK(std::abs(theta_oracle(0.0)) < 1e-14);
    for (double t : {0.5, 3.0, 7.7, 25.0, 100.0})
        CHECK(std::abs(theta_oracle(t) + theta_oracle(-t)) < 1e-12);
}

TEST_CASE("theta asymptotic expansion agrees with log-gamma oracle") {
    for (double t : {10.0, 12.0, 30.0, 100.0, 1000.0, 9999.0}) {
        double rel = std::abs(theta(t) - theta_oracle(t)) / (1.0 + std::abs(theta_oracle(t)));
        CHECK(rel < 5e-13);
    }
    CHECK_THROWS_AS(theta(-1.0), std::domain_error);
}

TEST_CASE("smallest positive root of theta") {
    // Bisection against the independent log-gamma oracle.
    double lo = 10.0, hi = 20.0;
    REQUIRE(theta_oracle(lo) < 0.0);
    REQUIRE(theta_oracle(hi) > 0.0);
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        (theta_oracle(mid) < 0.0 ? lo : hi) = mid;
    }
    double root = 0.5 * (lo + hi);
    CHECK(std::abs(root - 17.8456) < 5e-4);
    // The production path agrees with the oracle root.
    CHECK(std::abs(theta(root)) < 1e-10);
}

TEST_CASE("hardy Z is real") {
    for (double t = 10.0; t <= 1e4; t += 37.7) {
        cplx z = hardy_z_em_full(t, EvalConfig::oracle_mode());
        CHECK(std::abs(z.imag()) <= 5e-10);
    }
}

TEST_CASE("fast and oracle Z agree") {
    EvalConfig fast = EvalConfig::fast_mode();
    EvalConfig oracle = EvalConfig::oracle_mode();
    // Samples straddle the internal switch to the asymptotic formula.
    for (double t = 11.0; t <= 1e4; t += 93.3)
        CHECK(std::abs(hardy_z(t, fast) - hardy_z(t, oracle)) <= 1e-8);
}

TEST_CASE("Z vanishes at imported zero ordinates and alternates between them") {
    ZeroList zl = import_zeros("tests/data/zeros_first100.txt", false);
    REQUIRE(zl.size() == 100);
    EvalConfig oracle = EvalConfig::oracle_mode();
    CHECK(std::abs(hardy_z(zl.ordinates[0], oracle)) < 1e-8);
    for (double g : zl.ordinates) CHECK(std::abs(hardy_z(g, oracle)) < 1e-7);
    // Sign at consecutive midpoints alternates: one simple zero per gap.
    double prev = hardy_z(0.5 * (zl.ordinates[0] + zl.ordinates[1]), oracle);
    for (std::size_t i = 1; i + 1 < zl.size(); ++i) {
        double mid = 0.5 * (zl.ordinates[i] + zl.ordinates[i + 1]);
        double cur = hardy_z(mid, oracle);
        CHECK(prev * cur < 0.0);
        prev = cur;
    }
}

TEST_CASE("log derivative of zeta at s = 2 against the von Mangoldt series") {
    // -sum_{n <= 1e6} Lambda(n)/n^2; the truncated tail is below 2e-6.
    LambdaTable tab = von_mangoldt_sieve(1000000);
    KahanSum s;
    for (std::size_t i = 0; i < tab.prime_powers.size(); ++i) {
        double n = double(tab.prime_powers[i]);
        s.add(tab.values[i] / (n * n));
    }
    cplx v = log_deriv_zeta(cplx(2.0, 0.0), EvalConfig::oracle_mode());
    CHECK(std::abs(v.imag()) < 1e-12);
    CHECK(std::abs(v.real() + s.value()) < 1e-5);
    CHECK(std::abs(v.real() + 0.5699) < 1e-3);
}

TEST_CASE("log derivative conjugation symmetry") {
    EvalConfig cfg = EvalConfig::oracle_mode();
    for (double t : {15.5, 101.3, 1234.5}) {
        cplx s(0.6, t);
        cplx a = log_deriv_zeta(s, cfg);
        cplx b = log_deriv_zeta(std::conj(s), cfg);
        CHECK(std::abs(b - std::conj(a)) <= 1e-12 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("log derivative error paths") {
    EvalConfig cfg = EvalConfig::fast_mode();
    CHECK_THROWS_AS(log_deriv_zeta(cplx(1.0, 0.0), cfg), std::domain_error);
    // Exactly at a high-accuracy zero ordinate the evaluation must refuse.
    ZeroList zl = import_zeros("tests/data/zeros_first100.txt", false);
    CHECK_THROWS_AS(log_deriv_zeta(cplx(0.5, zl.ordinates[0]), EvalConfig::oracle_mode()),
                    std::domain_error);
}

TEST_CASE("pole residue at the first 50 zeros") {
    ZeroList zl = import_zeros("tests/data/zeros_first100.txt", false);
    EvalConfig cfg = EvalConfig::oracle_mode();
    double d = 1e-5 / std::log(1e4);
    for (std::size_t i = 0; i < 50; ++i) {
        cplx s(0.5 + d, zl.ordinates[i]);
        cplx v = log_deriv_zeta(s, cfg);
        CHECK(std::abs(d * v - 1.0) <= 1e-3);
    }
}

TEST_CASE("EvalConfig validation") {
    CHECK_THROWS_AS(EvalConfig(PrecisionMode::fast, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(EvalConfig(PrecisionMode::fast, 14, 5), std::invalid_argument);
    CHECK_NOTHROW(EvalConfig(PrecisionMode::oracle, 18, 4));
}

TEST_CASE("SPoint window geometry") {
    SPoint sp(0.1, 1e4, 1.5e4);
    CHECK(sp.sigma() > 0.5);
    CHECK(std::abs(sp.b() - std::pow(0.1, 0.25)) < 1e-15);
    CHECK(std::abs(sp.c() - std::hypot(0.1, sp.b())) < 1e-15);
    // |s - rho| < c/log T  <=>  |t - gamma| < b/log T for rho on the line.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ud(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        double gamma = sp.t + ud(rng) * sp.window_halfwidth();
        bool disk = std::abs(sp.s() - cplx(0.5, gamma)) < sp.c() / sp.log_T();
        bool strip = std::abs(sp.t - gamma) < sp.window_halfwidth();
        CHECK(disk == strip);
    }
    CHECK_THROWS_AS(SPoint(-1.0, 1e4, 1.5e4), std::invalid_argument);
    CHECK_THROWS_AS(SPoint(0.1, 1e4, 5e4), std::invalid_argument);
}

TEST_CASE("sigma stays within the Dirichlet cutoff bound") {
    // sigma - 1/2 = a/log T <= 1/log N with N = floor((T/log T)^{1/K}).
    for (int K : {1, 2, 3})
        for (double T : {1e3, 1e4, 1e5})
            for (double a : {0.05, 0.1, 0.5}) {
                SPoint sp(a, T, 1.5 * T);
                std::int64_t N = PolyEvalPlan::cutoff_for(K, T);
                CHECK(sp.sigma() - 0.5 <= 1.0 / std::log(double(N)) + 1e-15);
            }
}
