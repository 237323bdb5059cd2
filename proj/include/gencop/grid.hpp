// grid.hpp -- curves on (0,1] grids plus small numeric helpers
#pragma once
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "gencop/errors.hpp"

namespace gencop {

// a function tabulated on an increasing grid; for Kendall curves val = K(nu),
// for generator curves val = log phi(nu) (phi identified up to scale)
struct Curve {
    std::vector<double> nu;
    std::vector<double> val;

    std::size_t size() const { return nu.size(); }
};

// grid points (i+1)/G, i = 0..G-1; right endpoint is exactly 1
inline std::vector<double> uniform_grid(int G) {
    if (G < 2) throw validation_error("grid size must be >= 2");
    std::vector<double> g(G);
    for (int i = 0; i < G; ++i) g[i] = double(i + 1) / double(G);
    return g;
}

inline double trapz(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return s;
}

// linear interpolation with clamped ends (xs strictly increasing)
inline double interp1(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = std::size_t(it - xs.begin());
    double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

// first index with v[i] >= x (v nondecreasing)
inline std::size_t searchsorted_left(const std::vector<double>& v, double x) {
    return std::size_t(std::lower_bound(v.begin(), v.end(), x) - v.begin());
}

// count of entries <= x (v nondecreasing)
inline std::size_t searchsorted_right(const std::vector<double>& v, double x) {
    return std::size_t(std::upper_bound(v.begin(), v.end(), x) - v.begin());
}

// interpolated percentile matching numpy's default (linear) convention
inline double percentile(std::vector<double> v, double q) {
    if (v.empty()) throw validation_error("percentile of empty vector");
    std::sort(v.begin(), v.end());
    double pos = q / 100.0 * double(v.size() - 1);
    std::size_t lo = std::size_t(std::floor(pos));
    if (lo + 1 >= v.size()) return v.back();
    double frac = pos - double(lo);
    return v[lo] + frac * (v[lo + 1] - v[lo]);
}

} // namespace gencop
