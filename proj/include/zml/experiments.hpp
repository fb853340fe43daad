#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zml/dirichlet_poly.hpp"
#include "zml/gap_stats.hpp"
#include "zml/moments.hpp"
#include "zml/zero_store.hpp"

#include <json.hpp>

namespace zml {

// ---------------------------------------------------------------------------
// Configuration and result rows
// ---------------------------------------------------------------------------

struct RunConfig {
    std::vector<int> K_list{1};
    std::vector<double> a_list{0.5, 0.2, 0.1};
    std::vector<double> T_list{1e4};
    std::string zero_source = "compute";  // "compute" or "file"
    std::string zeros_file;
    double delta = 0.25;
    std::string out_dir = "out";
    std::uint64_t seed = 20240901;
    bool force = false;
    double rel_tol = 1e-5;

    void validate() const {
        if (K_list.empty() || a_list.empty())
            throw std::invalid_argument("RunConfig: K and a lists must be nonempty");
        for (int K : K_list)
            if (K < 1 || K > 3) throw std::invalid_argument("RunConfig: K outside [1, 3]");
        for (double a : a_list)
            if (!(a > 0.0 && a <= 5.0)) throw std::invalid_argument("RunConfig: a outside (0, 5]");
        for (double T : T_list)
            if (!(T >= 100.0 && T <= 1e7)) throw std::invalid_argument("RunConfig: T outside [1e2, 1e7]");
        if (zero_source != "compute" && zero_source != "file")
            throw std::invalid_argument("RunConfig: zero_source must be 'compute' or 'file'");
        if (zero_source == "file" && zeros_file.empty())
            throw std::invalid_argument("RunConfig: zero_source 'file' needs zeros_file");
        if (!(delta > 0.0 && delta < 1.0))
            throw std::invalid_argument("RunConfig: delta outside (0, 1)");
    }

    static RunConfig from_json(const nlohmann::json& j) {
        RunConfig c;
        if (j.contains("k")) c.K_list = j.at("k").get<std::vector<int>>();
        if (j.contains("a")) c.a_list = j.at("a").get<std::vector<double>>();
        if (j.contains("t")) c.T_list = j.at("t").get<std::vector<double>>();
        if (j.contains("zero_source")) c.zero_source = j.at("zero_source").get<std::string>();
        if (j.contains("zeros_file")) c.zeros_file = j.at("zeros_file").get<std::string>();
        if (j.contains("delta")) c.delta = j.at("delta").get<double>();
        if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("rel_tol")) c.rel_tol = j.at("rel_tol").get<double>();
        c.validate();
        return c;
    }

    static RunConfig from_json_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("RunConfig: cannot open " + path);
        nlohmann::json j;
        in >> j;
        return from_json(j);
    }
};

/// One (K, a, T) cell of a convergence sweep.
struct ConvergenceRow {
    int K = 1;
    double a = 0.0;
    double T = 0.0;
    std::int64_t N_used = 0;
    double scaled_statistic = 0.0;
    double target = 0.0;
    double relative_gap = 0.0;
    double t1_fraction = 0.0;
    double runtime_seconds = 0.0;  // informational; excluded from CSV/JSON
    std::string status = "ok";     // "ok" or an error marker
};

// ---------------------------------------------------------------------------
// Serialization. Fixed "%.12g" formatting everywhere so identical configs
// reproduce identical bytes; wall-clock runtime is deliberately not written.
// ---------------------------------------------------------------------------

inline std::string fmt_g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline constexpr const char* convergence_csv_header =
    "# convergence-table v1 (trend data at finite T; not a limit)\n"
    "K,a,T,N_used,scaled_statistic,target,relative_gap,t1_fraction,status\n";

inline std::string row_to_csv(const ConvergenceRow& r) {
    std::ostringstream os;
    os << r.K << ',' << fmt_g(r.a) << ',' << fmt_g(r.T) << ',' << r.N_used << ','
       << fmt_g(r.scaled_statistic) << ',' << fmt_g(r.target) << ',' << fmt_g(r.relative_gap)
       << ',' << fmt_g(r.t1_fraction) << ',' << r.status << '\n';
    return os.str();
}

inline ConvergenceRow row_from_csv(const std::string& line) {
    ConvergenceRow r;
    std::istringstream is(line);
    std::string f;
    auto next = [&] {
        if (!std::getline(is, f, ',')) throw std::runtime_error("bad row: " + line);
        return f;
    };
    r.K = std::stoi(next());
    r.a = std::stod(next());
    r.T = std::stod(next());
    r.N_used = std::stoll(next());
    r.scaled_statistic = std::stod(next());
    r.target = std::stod(next());
    r.relative_gap = std::stod(next());
    r.t1_fraction = std::stod(next());
    std::getline(is, r.status);
    if (!r.status.empty() && r.status.back() == '\r') r.status.pop_back();
    return r;
}

inline nlohmann::json row_to_json(const ConvergenceRow& r) {
    // Mirror the CSV 1:1, including its string formatting of the doubles.
    return nlohmann::json{{"K", r.K},
                          {"a", fmt_g(r.a)},
                          {"T", fmt_g(r.T)},
                          {"N_used", r.N_used},
                          {"scaled_statistic", fmt_g(r.scaled_statistic)},
                          {"target", fmt_g(r.target)},
                          {"relative_gap", fmt_g(r.relative_gap)},
                          {"t1_fraction", fmt_g(r.t1_fraction)},
                          {"status", r.status}};
}

// ---------------------------------------------------------------------------
// Convergence sweep
// ---------------------------------------------------------------------------

namespace detail {

inline std::string cell_file_name(int K, double a, double T) {
    std::ostringstream os;
    os << "cell_K" << K << "_a" << fmt_g(a) << "_T" << fmt_g(T) << ".csv";
    return os.str();
}

/// Zeros for a [T, 2T] moment cell, with the analyticity margin the fast
/// line evaluator wants on both sides.
inline const ZeroList& cell_zeros(double T, const RunConfig& cfg,
                                  std::map<double, ZeroList>& cache) {
    auto it = cache.find(T);
    if (it != cache.end()) return it->second;
    ZeroList zl;
    if (cfg.zero_source == "file") {
        zl = import_zeros(cfg.zeros_file);
        if (!zl.covers(T - 1.0, 2.0 * T + 1.0))
            throw std::runtime_error("zero file does not cover [T-1, 2T+1] for T=" + fmt_g(T));
    } else {
        zl = find_zeros(std::max(T - 35.0, 10.0), 2.0 * T + 35.0);
    }
    return cache.emplace(T, std::move(zl)).first->second;
}

}  // namespace detail

/// Compute one convergence cell (no I/O).
inline ConvergenceRow compute_cell(int K, double a, double T, const ZeroList& zeros,
                                   double delta, double rel_tol) {
    auto start = std::chrono::steady_clock::now();
    ConvergenceRow row;
    row.K = K;
    row.a = a;
    row.T = T;
    row.target = binomial(2 * K - 2, K - 1);
    try {
        row.N_used = PolyEvalPlan::cutoff_for(K, T);
        MomentOptions opt;
        opt.delta = delta;
        opt.rel_tol = rel_tol;
        MomentEstimate m = moment_integral(K, a, T, zeros, EvalConfig::fast_mode(), opt);
        ScaledStatistic s = scaled_statistic(K, a, T, m);
        row.scaled_statistic = s.statistic;
        row.relative_gap = s.statistic / s.target - 1.0;
        row.t1_fraction = m.value > 0.0 ? m.t1 / m.value : 0.0;
    } catch (const std::exception& e) {
        std::string msg = e.what();
        for (char& c : msg)
            if (c == ',' || c == '\n') c = ';';
        row.status = "error: " + msg;
    }
    row.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

/// Run the full (K, a, T) sweep. Cells are ordered K, then a as listed, then
/// descending T (the finite-data echo of "T to infinity first, then a to 0").
/// Completed cells found in out_dir are reused unless config.force; the
/// merged CSV/JSON tables are rewritten either way.
inline std::vector<ConvergenceRow> run_convergence(const RunConfig& config) {
    config.validate();
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);

    struct Cell {
        int K;
        double a, T;
    };
    std::vector<Cell> cells;
    for (int K : config.K_list)
        for (double a : config.a_list) {
            std::vector<double> Ts = config.T_list;
            std::sort(Ts.begin(), Ts.end(), std::greater<double>());
            for (double T : Ts) cells.push_back({K, a, T});
        }

    std::map<double, ZeroList> zero_cache;
    std::vector<ConvergenceRow> rows;
    rows.reserve(cells.size());
    for (const Cell& c : cells) {
        fs::path cell_path = fs::path(config.out_dir) / detail::cell_file_name(c.K, c.a, c.T);
        ConvergenceRow row;
        bool reused = false;
        if (!config.force && fs::exists(cell_path)) {
            std::ifstream in(cell_path);
            std::string line;
            while (std::getline(in, line) && (line.empty() || line[0] == '#')) {
            }
            if (!line.empty()) {
                row = row_from_csv(line);
                reused = true;
            }
        }
        if (!reused) {
            ConvergenceRow fresh;
            try {
                const ZeroList& zl = detail::cell_zeros(c.T, config, zero_cache);
                fresh = compute_cell(c.K, c.a, c.T, zl, config.delta, config.rel_tol);
            } catch (const std::exception& e) {
                fresh.K = c.K;
                fresh.a = c.a;
                fresh.T = c.T;
                fresh.target = binomial(2 * c.K - 2, c.K - 1);
                std::string msg = e.what();
                for (char& ch : msg)
                    if (ch == ',' || ch == '\n') ch = ';';
                fresh.status = "error: " + msg;
            }
            row = fresh;
            std::ofstream out(cell_path);
            out << "# convergence-cell v1\n" << row_to_csv(row);
        }
        rows.push_back(row);
    }

    // Merged outputs, rewritten from scratch in cell order.
    std::ofstream csv(fs::path(config.out_dir) / "convergence.csv");
    csv << convergence_csv_header;
    nlohmann::json jrows = nlohmann::json::array();
    for (const ConvergenceRow& r : rows) {
        csv << row_to_csv(r);
        jrows.push_back(row_to_json(r));
    }
    std::ofstream js(fs::path(config.out_dir) / "convergence.json");
    js << nlohmann::json{{"schema", "convergence-table v1"}, {"rows", jrows}}.dump(2) << '\n';
    return rows;
}

// ---------------------------------------------------------------------------
// Validation suites
// ---------------------------------------------------------------------------

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return !checks.empty();
    }
};

namespace detail {

/// Brute-force tuple enumeration over all index 2K-tuples (for small lists).
inline std::uint64_t tuple_count_brute(int K, double w, const std::vector<double>& g) {
    std::size_t n = g.size();
    int len = 2 * K;
    std::vector<std::size_t> idx(len, 0);
    std::uint64_t count = 0;
    while (true) {
        bool ok = true, all_same = true;
        for (int i = 0; ok && i < len; ++i)
            for (int j = i + 1; j < len; ++j) {
                if (std::abs(g[idx[i]] - g[idx[j]]) > w) {
                    ok = false;
                    break;
                }
                if (idx[i] != idx[j]) all_same = false;
            }
        if (ok && !all_same) ++count;
        int p = len - 1;
        while (p >= 0 && ++idx[p] == n) idx[p--] = 0;
        if (p < 0) break;
    }
    return count;
}

}  // namespace detail

/// Cross-module consistency suites: exact identities, quadrature vs.
/// antiderivative, counting oracles, and the error-moment boundedness trend.
inline ValidationReport run_validation(const RunConfig& config) {
    config.validate();
    ValidationReport rep;

    {  // Gamma-ratio duplication identity, K = 1..10.
        double worst = 0.0;
        for (int K = 1; K <= 10; ++K) {
            double lhs = std::sqrt(pi) * std::tgamma(K - 0.5) / std::tgamma(double(K));
            double rhs = pi * std::pow(2.0, 2.0 - 2.0 * K) * binomial(2 * K - 2, K - 1);
            worst = std::max(worst, std::abs(lhs / rhs - 1.0));
        }
        rep.checks.push_back(
            {"duplication-identity", worst <= 1e-12, "max relative deviation " + fmt_g(worst)});
    }

    {  // Adaptive quadrature against the closed-form window antiderivative.
        double worst = 0.0;
        for (int K : {1, 2, 3})
            for (double d : {1.0, 0.1, 0.01}) {
                double L = 50.0 * d;
                auto f = [&](double t) { return std::pow(d * d + t * t, -double(K)); };
                AdaptiveResult q = adaptive_gauss(f, -L, L, 1e-13 * closed_form_I(K, d));
                double half_line = 0.5 * std::sqrt(pi) * std::tgamma(K - 0.5) /
                                   std::tgamma(double(K));
                double exact = std::pow(d, 1.0 - 2.0 * K) * 2.0 *
                               (half_line - detail::lorentz_tail(K, 50.0));
                worst = std::max(worst, std::abs(q.value / exact - 1.0));
            }
        rep.checks.push_back(
            {"quadrature-vs-antiderivative", worst <= 1e-9, "max relative deviation " + fmt_g(worst)});
    }

    {  // Sliding-window tuple count vs. brute force on synthetic lists.
        std::mt19937_64 rng(config.seed);
        std::uniform_int_distribution<int> nd(2, 12);
        std::uniform_real_distribution<double> ud(0.0, 1.0);
        bool ok = true;
        std::string det;
        for (int trial = 0; trial < 50 && ok; ++trial) {
            int n = nd(rng);
            double T = 100.0;
            std::vector<double> g(n);
            for (double& x : g) x = T + ud(rng) * T;
            std::sort(g.begin(), g.end());
            ZeroList zl;
            zl.ordinates = g;
            zl.t_min = T;
            zl.t_max = 2.0 * T;
            for (int K : {1, 2}) {
                double v = ud(rng) * 2.0;
                WideCount fast = tuple_gap_count(K, v, zl, T);
                std::uint64_t brute = detail::tuple_count_brute(K, v / std::log(T), g);
                if (fast.saturated || fast.v != brute) {
                    ok = false;
                    det = "mismatch at trial " + std::to_string(trial);
                }
            }
        }
        rep.checks.push_back({"tuple-count-brute-force", ok, ok ? "50 trials" : det});
    }

    {  // Zero count against the smooth counting formula.
        try {
            ZeroList zl = find_zeros(10.0, 500.0);
            double expected = count_main_term(500.0) - count_main_term(10.0);
            double dev = std::abs(double(zl.size()) - expected);
            rep.checks.push_back(
                {"zero-count-formula", dev <= 3.0, "count deviation " + fmt_g(dev)});
        } catch (const std::exception& e) {
            rep.checks.push_back({"zero-count-formula", false, e.what()});
        }
    }

    {  // Error-moment boundedness trend (ratio to T stable across heights).
        try {
            double r1 = error_term_moment(1, 500.0, 8.0).ratio_to_T;
            double r2 = error_term_moment(1, 4000.0, 8.0).ratio_to_T;
            double spread = std::max(r1, r2) / std::min(r1, r2);
            rep.checks.push_back(
                {"error-moment-boundedness", spread < 10.0, "ratio spread " + fmt_g(spread)});
        } catch (const std::exception& e) {
            rep.checks.push_back({"error-moment-boundedness", false, e.what()});
        }
    }

    return rep;
}

}  // namespace zml
