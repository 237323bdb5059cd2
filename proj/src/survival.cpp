#include "gencop/survival.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gencop/errors.hpp"
#include "gencop/grid.hpp"

namespace gencop {

double StepMass::total() const {
    double s = 0.0;
    for (double m : mass) s += m;
    return s;
}

namespace {

// indices sorted by time ascending, uncensored first at ties
std::vector<std::size_t> surv_order(const std::vector<double>& y, const std::vector<int>& d) {
    std::vector<std::size_t> idx(y.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (y[a] != y[b]) return y[a] < y[b];
        return d[a] > d[b];
    });
    return idx;
}

void push_mass(StepMass& sm, double v, double f) {
    if (!sm.values.empty() && sm.values.back() == v)
        sm.mass.back() += f;
    else {
        sm.values.push_back(v);
        sm.mass.push_back(f);
    }
}

}  // namespace

StepMass km(const std::vector<double>& y, const std::vector<int>& delta) {
    if (y.size() != delta.size()) throw validation_error("km: length mismatch");
    const std::size_t n = y.size();
    StepMass sm;
    double S = 1.0;
    std::size_t i = 0;
    for (std::size_t k : surv_order(y, delta)) {
        if (delta[k] == 1) {
            double f = S / static_cast<double>(n - i);
            push_mass(sm, y[k], f);
            S -= f;
        }
        ++i;
    }
    return sm;
}

double epanechnikov(double u) { return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0; }
double uniform_kernel(double u) { return std::abs(u) <= 1.0 ? 0.5 : 0.0; }
double triangular_kernel(double u) { return std::abs(u) <= 1.0 ? 1.0 - std::abs(u) : 0.0; }

StepMass beran_masses(const std::vector<double>& y_resp, const std::vector<int>& d_resp,
                      const std::vector<double>& y_cond, const std::vector<int>& d_cond,
                      double x, double h, kernel_fn kernel) {
    const std::size_t n = y_resp.size();
    if (y_cond.size() != n || d_resp.size() != n || d_cond.size() != n)
        throw validation_error("beran_masses: length mismatch");
    std::vector<double> w(n);
    double tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = d_cond[i] == 1 ? kernel((x - y_cond[i]) / h) : 0.0;
        tot += w[i];
    }
    StepMass sm;
    if (tot <= 0.0) return sm;  // no kernel support: zero-mass estimate
    for (double& wi : w) wi /= tot;

    std::vector<std::size_t> idx = surv_order(y_resp, d_resp);
    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + w[idx[i]];
    double S = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t k = idx[i];
        if (d_resp[k] == 1 && w[k] > 0.0 && suffix[i] > 0.0) {
            double f = S * w[k] / suffix[i];
            push_mass(sm, y_resp[k], f);
            S -= f;
        }
    }
    return sm;
}

double bandwidth_default(const std::vector<double>& y) {
    if (y.size() < 2) throw validation_error("bandwidth_default: need at least 2 values");
    double iqr = percentile(y, 75.0) - percentile(y, 25.0);
    double n = static_cast<double>(y.size());
    return 2.75 * (iqr / 1.349) * std::pow(n, -0.2);
}

double bandwidth_cv(const std::vector<double>& y_resp, const std::vector<int>& d_resp,
                    const std::vector<double>& y_cond, const std::vector<int>& d_cond,
                    const std::vector<double>& grid, int folds) {
    const std::size_t n = y_resp.size();
    std::vector<double> uncens;
    for (std::size_t i = 0; i < n; ++i)
        if (d_resp[i] == 1) uncens.push_back(y_resp[i]);
    if (uncens.empty() || grid.empty())
        throw validation_error("bandwidth_cv: no uncensored responses or empty grid");
    std::vector<double> tgrid(9);
    for (int q = 1; q <= 9; ++q) tgrid[q - 1] = percentile(uncens, 10.0 * q);

    double best = std::numeric_limits<double>::infinity(), best_h = grid[0];
    std::vector<double> tr_yr, tr_yc;
    std::vector<int> tr_dr, tr_dc;
    for (double h : grid) {
        double tot = 0.0;
        std::size_t cnt = 0;
        for (int f = 0; f < folds; ++f) {
            tr_yr.clear(); tr_yc.clear(); tr_dr.clear(); tr_dc.clear();
            for (std::size_t i = 0; i < n; ++i)
                if (static_cast<int>(i % folds) != f) {
                    tr_yr.push_back(y_resp[i]); tr_dr.push_back(d_resp[i]);
                    tr_yc.push_back(y_cond[i]); tr_dc.push_back(d_cond[i]);
                }
            for (std::size_t i = 0; i < n; ++i) {
                if (static_cast<int>(i % folds) != f || d_resp[i] != 1 || d_cond[i] != 1) continue;
                StepMass b = beran_masses(tr_yr, tr_dr, tr_yc, tr_dc, y_cond[i], h);
                if (b.empty()) continue;
                for (double t : tgrid) {
                    double Fh = 0.0;
                    for (std::size_t k = 0; k < b.values.size() && b.values[k] <= t; ++k)
                        Fh += b.mass[k];
                    double ind = y_resp[i] <= t ? 1.0 : 0.0;
                    tot += (Fh - ind) * (Fh - ind) / 9.0;
                }
                ++cnt;
            }
        }
        double score = tot / static_cast<double>(std::max<std::size_t>(cnt, 1));
        if (score < best) { best = score; best_h = h; }
    }
    return best_h;
}

}  // namespace gencop
