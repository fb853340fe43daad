#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zml {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

// B_{2k} for k = 1..20, as exact-fraction quotients.
inline constexpr double bernoulli_2k[21] = {
    1.0,  // unused slot so that bernoulli_2k[k] == B_{2k}
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
};
inline constexpr int max_bernoulli_terms = 20;

/// Compensated (Kahan) accumulator.
struct KahanSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

struct KahanSumC {
    KahanSum re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

/// Exact binomial coefficient; n small (fits double exactly for n <= 50).
inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return std::round(r);
}

/// Saturating wide counter for tuple counts (c^{2K} can be astronomically
/// large when the window is wide).
struct WideCount {
    unsigned __int128 v = 0;
    bool saturated = false;

    static constexpr unsigned __int128 max_val = ~(unsigned __int128)0;

    void add(WideCount o) {
        if (o.saturated || max_val - v < o.v) {
            v = max_val;
            saturated = true;
        } else {
            v += o.v;
        }
    }
    void sub_clamped(unsigned __int128 x) {
        if (!saturated) v = (v > x) ? v - x : 0;
    }
    bool operator<=(const WideCount& o) const {
        if (saturated) return o.saturated;
        if (o.saturated) return true;
        return v <= o.v;
    }
    double as_double() const { return double(v); }
    std::string str() const {
        if (saturated) return "saturated";
        if (v == 0) return "0";
        std::string s;
        unsigned __int128 x = v;
        while (x > 0) {
            s.insert(s.begin(), char('0' + int(x % 10)));
            x /= 10;
        }
        return s;
    }
};

/// x^e with saturation, x >= 0.
inline WideCount wide_pow(std::uint64_t x, int e) {
    WideCount r;
    r.v = 1;
    for (int i = 0; i < e; ++i) {
        if (x != 0 && r.v > WideCount::max_val / x) {
            r.v = WideCount::max_val;
            r.saturated = true;
            return r;
        }
        r.v *= x;
    }
    return r;
}

}  // namespace zml
