// Sampled residuals of the windowed zero-sum approximation of zeta'/zeta.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <random>

#include "zml/approx.hpp"
#include "zml/dirichlet_poly.hpp"
#include "zml/experiments.hpp"
#include "zml/zero_store.hpp"

int main(int argc, char** argv) {
    CLI::App app{"zero-sum approximation residual check"};
    double a = 0.5, T = 1e3;
    int K = 1, samples = 50;
    double delta = 0.25;
    std::uint64_t seed = 20240901;
    std::string zeros_path, out;
    app.add_option("--a", a, "offset parameter a")->required();
    app.add_option("--t-height", T, "lower endpoint T of [T, 2T]")->required();
    app.add_option("--samples", samples, "number of sampled heights");
    app.add_option("--k", K, "moment order fixing the cutoff N");
    app.add_option("--delta", delta, "window exponent (b = a^delta)");
    app.add_option("--seed", seed, "sampling seed");
    app.add_option("--zeros", zeros_path, "zero table covering [T-1, 2T+1] (computed if omitted)");
    app.add_option("--out", out, "output CSV path (stdout if omitted)");
    CLI11_PARSE(app, argc, argv);

    try {
        zml::ZeroList zl = zeros_path.empty()
                               ? zml::find_zeros(std::max(T - 5.0, 10.0), 2.0 * T + 5.0)
                               : zml::import_zeros(zeros_path, false);
        std::int64_t N = zml::PolyEvalPlan::cutoff_for(K, T);
        zml::LambdaTable table = zml::von_mangoldt_sieve(N);
        double logT = std::log(T);

        // Uniform heights, avoiding the cancellation puncture at each zero.
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> ud(T, 2.0 * T);
        std::vector<double> ts;
        while (ts.size() < std::size_t(samples)) {
            double t = ud(rng);
            std::size_t i = zl.lower_index(t);
            double gap = std::numeric_limits<double>::infinity();
            if (i < zl.size()) gap = std::min(gap, std::abs(zl.ordinates[i] - t));
            if (i > 0) gap = std::min(gap, std::abs(zl.ordinates[i - 1] - t));
            if (gap > 1e-6 / logT) ts.push_back(t);
        }
        zml::PolyEvalPlan plan_a{N, ts, zml::PolyKind::A};
        zml::PolyEvalPlan plan_b{N, ts, zml::PolyKind::B};
        std::vector<zml::cplx> va = zml::eval_poly(plan_a, table);
        std::vector<zml::cplx> vb = zml::eval_poly(plan_b, table);

        zml::EvalConfig cfg = zml::EvalConfig::fast_mode();
        std::string csv = "t,main_term_re,main_term_im,residual_abs,budget\n";
        for (std::size_t i = 0; i < ts.size(); ++i) {
            zml::SPoint sp(a, T, ts[i], delta);
            zml::ZeroSumResult zs = zml::zero_sum(sp, zl);
            zml::cplx res = zml::log_deriv_zeta(sp, cfg) - zs.main_term;
            double budget = zml::residual_budget(sp, N, std::abs(va[i]), std::abs(vb[i]));
            csv += zml::fmt_g(ts[i]) + "," + zml::fmt_g(zs.main_term.real()) + "," +
                   zml::fmt_g(zs.main_term.imag()) + "," + zml::fmt_g(std::abs(res)) + "," +
                   zml::fmt_g(budget) + "\n";
        }
        if (out.empty()) {
            std::fputs(csv.c_str(), stdout);
        } else {
            std::ofstream f(out);
            f << csv;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
