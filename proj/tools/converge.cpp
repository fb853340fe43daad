// Convergence sweep over (K, a, T) cells, with resume and validation modes.

#include <CLI11.hpp>

#include <cstdio>
#include <sstream>

#include "zml/experiments.hpp"

namespace {
template <class T>
std::vector<T> split_list(const std::string& s) {
    std::vector<T> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        if constexpr (std::is_same_v<T, int>)
            out.push_back(std::stoi(item));
        else
            out.push_back(std::stod(item));
    }
    return out;
}
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scaled-moment convergence sweep (worker count via ZML_THREADS)"};
    std::string config_path, k_list, a_list, t_list, zeros_path, out_dir;
    bool force = false, validate = false;
    app.add_option("--config", config_path, "JSON config file (overrides the flags)");
    app.add_option("--k", k_list, "comma-separated K values");
    app.add_option("--a", a_list, "comma-separated a values");
    app.add_option("--t", t_list, "comma-separated T values");
    app.add_option("--zeros", zeros_path, "zero table file (computed per T if omitted)");
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--force", force, "recompute cells even when outputs exist");
    app.add_flag("--validate", validate, "run the cross-module validation suites instead");
    CLI11_PARSE(app, argc, argv);

    try {
        zml::RunConfig cfg;
        if (!config_path.empty()) cfg = zml::RunConfig::from_json_file(config_path);
        if (!k_list.empty()) cfg.K_list = split_list<int>(k_list);
        if (!a_list.empty()) cfg.a_list = split_list<double>(a_list);
        if (!t_list.empty()) cfg.T_list = split_list<double>(t_list);
        if (!zeros_path.empty()) {
            cfg.zero_source = "file";
            cfg.zeros_file = zeros_path;
        }
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        cfg.force = force;
        cfg.validate();

        if (validate) {
            zml::ValidationReport rep = zml::run_validation(cfg);
            for (const auto& c : rep.checks)
                std::printf("%s %s (%s)\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                            c.detail.c_str());
            return rep.all_passed() ? 0 : 1;
        }

        std::vector<zml::ConvergenceRow> rows = zml::run_convergence(cfg);
        int failed = 0;
        for (const auto& r : rows) {
            std::printf("K=%d a=%s T=%s stat=%s target=%s gap=%s t1=%s %s\n", r.K,
                        zml::fmt_g(r.a).c_str(), zml::fmt_g(r.T).c_str(),
                        zml::fmt_g(r.scaled_statistic).c_str(), zml::fmt_g(r.target).c_str(),
                        zml::fmt_g(r.relative_gap).c_str(), zml::fmt_g(r.t1_fraction).c_str(),
                        r.status.c_str());
            if (r.status != "ok") ++failed;
        }
        std::printf("%zu cells, %d failed; tables in %s\n", rows.size(), failed,
                    cfg.out_dir.c_str());
        return failed == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
