// Compute or import critical-line zero ordinates.

#include <CLI11.hpp>

#include <cstdio>

#include "zml/zero_store.hpp"

int main(int argc, char** argv) {
    CLI::App app{"zeta zero tables: compute or import"};
    app.require_subcommand(1);

    double t_min = 10.0, t_max = 100.0;
    std::string out;
    bool oracle = false;
    CLI::App* compute = app.add_subcommand("compute", "locate zeros of Z on a height range");
    compute->add_option("--t-min", t_min, "lower height")->required();
    compute->add_option("--t-max", t_max, "upper height")->required();
    compute->add_option("--out", out, "output file (one ordinate per line)")->required();
    compute->add_flag("--oracle", oracle, "use the slow high-precision evaluator");

    std::string in_path;
    bool validate = false;
    std::string import_out;
    CLI::App* import = app.add_subcommand("import", "parse and validate a zero-table file");
    import->add_option("file", in_path, "zero table, one ordinate per line")->required();
    import->add_flag("--validate", validate, "also check the count against the smooth formula");
    import->add_option("--out", import_out, "optional re-serialized copy");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compute) {
            zml::EvalConfig cfg =
                oracle ? zml::EvalConfig::oracle_mode() : zml::EvalConfig::fast_mode();
            zml::ZeroList zl = zml::find_zeros(t_min, t_max, cfg);
            zl.save(out);
            std::printf("computed %zu zeros on [%.6g, %.6g] -> %s\n", zl.size(), t_min, t_max,
                        out.c_str());
        } else {
            zml::ZeroList zl = zml::import_zeros(in_path, validate);
            std::printf("imported %zu zeros from %s (range [%.9g, %.9g])%s\n", zl.size(),
                        in_path.c_str(), zl.t_min, zl.t_max,
                        validate ? ", count check passed" : "");
            if (!import_out.empty()) zl.save(import_out);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
