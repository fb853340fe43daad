// Small-gap statistics: tuple counts and the green/red census.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "zml/experiments.hpp"
#include "zml/gap_stats.hpp"
#include "zml/zero_store.hpp"

namespace {
std::vector<double> split_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(std::stod(item));
    return out;
}
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero gap census and tuple counts"};
    int K = 1;
    std::string v_list = "0.05,0.1,0.2,0.5";
    double b = 0.5, T = 1e3;
    std::string zeros_path, out;
    app.add_option("--k", K, "tuple order K (counts 2K-tuples)");
    app.add_option("--v-list", v_list, "comma-separated window parameters v");
    app.add_option("--b", b, "census window parameter b");
    app.add_option("--t-height", T, "lower endpoint T of [T, 2T]")->required();
    app.add_option("--zeros", zeros_path, "zero table covering [T-1, 2T+1] (computed if omitted)");
    app.add_option("--out", out, "output CSV path (stdout if omitted)");
    CLI11_PARSE(app, argc, argv);

    try {
        zml::ZeroList zl = zeros_path.empty()
                               ? zml::find_zeros(std::max(T - 5.0, 10.0), 2.0 * T + 5.0)
                               : zml::import_zeros(zeros_path, false);
        zml::GapCensus census = zml::build_census(b, zl, T);
        std::uint64_t max_c2 = 0;
        for (std::uint64_t c : census.count2) max_c2 = std::max(max_c2, c);
        double nT = zml::count_main_term(T);

        std::string csv = "v_or_beta,raw_count,normalized_by_NT,red_count,cluster_count,max_count2\n";
        for (double v : split_list(v_list)) {
            zml::WideCount raw = zml::tuple_gap_count(K, v, zl, T);
            csv += zml::fmt_g(v) + "," + raw.str() + "," +
                   (raw.saturated ? std::string("saturated")
                                  : zml::fmt_g(raw.as_double() / nT)) +
                   "," + std::to_string(census.red_count()) + "," +
                   std::to_string(census.clusters.size()) + "," + std::to_string(max_c2) + "\n";
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
