#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "zml/util.hpp"
#include "zml/zero_store.hpp"

namespace zml {

/// Green/red classification of the zeros of [T, 2T] at window parameter b:
/// a zero is green (isolated) when no other zero lies within 2b/log T of it;
/// red zeros form clusters whose consecutive members are closer than
/// 2b/log T, so distinct clusters are at least 2b/log T apart.
struct GapCensus {
    double b = 0.0;
    double T = 0.0;
    std::vector<std::size_t> S1;                    // indices into `zeros`
    std::vector<std::vector<std::size_t>> clusters; // red runs, member indices
    std::vector<std::uint64_t> count2;              // #_2 per red zero, cluster order
    std::size_t total_in_range = 0;

    std::size_t red_count() const {
        std::size_t n = 0;
        for (const auto& c : clusters) n += c.size();
        return n;
    }
};

/// N(beta, T): ordered pairs 0 < gamma, gamma' < T with
/// 0 < gamma - gamma' < 2 pi beta / log T. Two-pointer sweep.
inline std::uint64_t pair_gap_count(double beta, const ZeroList& zeros, double T) {
    if (beta < 0.0) throw std::invalid_argument("pair_gap_count: beta must be >= 0");
    // The first zero sits above 14.1, so any list reaching down that far
    // covers [0, T] in effect.
    if (!(zeros.t_min <= 14.2 && zeros.t_max >= T))
        throw std::runtime_error("pair_gap_count: zeros must cover [0, T]");
    double w = two_pi * beta / std::log(T);
    std::uint64_t count = 0;
    const auto& g = zeros.ordinates;
    std::size_t n = zeros.count_in(0.0, T) + zeros.lower_index(0.0);
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (j < i && g[i] - g[j] >= w) ++j;
        // pairs (i, k) for k in [j, i) have 0 < g[i]-g[k] < w (strict both ends;
        // duplicates cannot occur in a strictly increasing list)
        count += i - j;
    }
    return count;
}

/// N(K, v, T): the number of 2K-tuples of zeros in [T, 2T], pairwise within
/// v/log T (inclusive), not all equal. Sliding-window identity: with c_i the
/// number of zeros in [gamma_i, gamma_i + v/log T], each tuple is counted
/// once by its minimum element, giving
///   sum_i (c_i^{2K} - (c_i - 1)^{2K}) - n.
inline WideCount tuple_gap_count(int K, double v, const ZeroList& zeros, double T) {
    if (K < 1) throw std::invalid_argument("tuple_gap_count: K must be >= 1");
    if (v < 0.0) throw std::invalid_argument("tuple_gap_count: v must be >= 0");
    if (!zeros.covers(T, 2.0 * T))
        throw std::runtime_error("tuple_gap_count: zeros must cover [T, 2T]");
    double w = v / std::log(T);
    const auto& g = zeros.ordinates;
    std::size_t lo = zeros.lower_index(T);
    std::size_t hi = lo + zeros.count_in(T, 2.0 * T);
    WideCount total;
    std::size_t j = lo;
    for (std::size_t i = lo; i < hi; ++i) {
        if (j < i + 1) j = i + 1;
        while (j < hi && g[j] - g[i] <= w) ++j;
        std::uint64_t c = j - i;  // zeros in [g[i], g[i] + w], within [T, 2T]
        WideCount term = wide_pow(c, 2 * K);
        WideCount sub = wide_pow(c - 1, 2 * K);
        term.sub_clamped(sub.v);
        if (sub.saturated) term.saturated = true;
        total.add(term);
    }
    total.sub_clamped(hi - lo);  // all-same-label tuples
    return total;
}

/// Single sweep classifying zeros of [T, 2T] as green/red, forming maximal
/// red clusters, and computing #_2 (zeros within 2b/log T, self included)
/// for every red zero. Zeros outside [T, 2T] participate in distance checks.
inline GapCensus build_census(double b, const ZeroList& zeros, double T) {
    if (!(b > 0.0)) throw std::invalid_argument("build_census: b must be positive");
    if (!zeros.covers(T - 1.0, 2.0 * T + 1.0))
        throw std::runtime_error("build_census: zeros must cover [T-1, 2T+1]");
    double w2 = 2.0 * b / std::log(T);
    const auto& g = zeros.ordinates;
    std::size_t lo = zeros.lower_index(T);
    std::size_t hi = lo + zeros.count_in(T, 2.0 * T);

    GapCensus census;
    census.b = b;
    census.T = T;
    census.total_in_range = hi - lo;

    auto isolated = [&](std::size_t i) {
        if (i > 0 && g[i] - g[i - 1] < w2) return false;
        if (i + 1 < g.size() && g[i + 1] - g[i] < w2) return false;
        return true;
    };

    std::vector<std::size_t> run;
    // A red zero whose only close partner lies outside [T, 2T] forms a
    // degenerate singleton cluster, so runs of any size are kept.
    auto flush_run = [&] {
        if (!run.empty()) {
            for (std::size_t i : run) {
                std::uint64_t c2 = 0;
                std::size_t k = i;
                while (k > 0 && g[i] - g[k - 1] < w2) --k;
                for (; k < g.size() && g[k] - g[i] < w2; ++k) ++c2;
                census.count2.push_back(c2);
            }
            census.clusters.push_back(run);
        }
        run.clear();
    };

    for (std::size_t i = lo; i < hi; ++i) {
        if (isolated(i)) {
            flush_run();
            census.S1.push_back(i);
        } else {
            if (!run.empty() && g[i] - g[run.back()] >= w2) flush_run();
            run.push_back(i);
        }
    }
    flush_run();
    return census;
}

/// Both sides of the cluster tuple bound:
/// sum over red zeros of #_2^{2K-1}  <=  (red count) + N(K, 4b, T).
struct TupleBoundReport {
    WideCount lhs;
    WideCount rhs;
    std::size_t red_count = 0;
    WideCount n_k_4b;
    bool holds = false;
};

inline TupleBoundReport tuple_bound_check(const GapCensus& census, int K, const ZeroList& zeros,
                                          double T) {
    TupleBoundReport rep;
    rep.red_count = census.red_count();
    for (std::uint64_t c2 : census.count2) rep.lhs.add(wide_pow(c2, 2 * K - 1));
    rep.n_k_4b = tuple_gap_count(K, 4.0 * census.b, zeros, T);
    rep.rhs = rep.n_k_4b;
    rep.rhs.add(WideCount{rep.red_count, false});
    rep.holds = rep.lhs <= rep.rhs;
    return rep;
}

}  // namespace zml
