#include "gencop/kendall.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gencop/errors.hpp"

namespace gencop {

Curve kendall_from_joint(const JointMass& jm, std::size_t grid_size) {
    double tot = jm.total();
    if (!(tot > 0.0)) throw numeric_error("joint estimate carries no mass");
    const std::size_t n1 = jm.g1.size(), n2 = jm.g2.size();

    // normalized bivariate cdf at every cell with positive mass
    Eigen::MatrixXd C = jm.m;
    for (std::size_t i = 1; i < n1; ++i) C.row(i) += C.row(i - 1);
    for (std::size_t j = 1; j < n2; ++j) C.col(j) += C.col(j - 1);
    std::vector<std::pair<double, double>> cells;  // (V, mass)
    cells.reserve(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            if (jm.m(i, j) > 0.0) cells.emplace_back(C(i, j) / tot, jm.m(i, j));
    std::sort(cells.begin(), cells.end());

    std::vector<double> V(cells.size()), cm(cells.size());
    double run = 0.0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        V[k] = cells[k].first;
        run += cells[k].second;
        cm[k] = run;
    }

    Curve K;
    K.nu = uniform_grid(static_cast<int>(grid_size));
    K.val.resize(K.nu.size());
    for (std::size_t g = 0; g < K.nu.size(); ++g) {
        std::size_t idx = searchsorted_right(V, K.nu[g]);
        K.val[g] = idx > 0 ? cm[idx - 1] / tot : 0.0;
    }
    return K;
}

double tau_from_curve(const Curve& K, bool* clipped) {
    // constant continuation of K below the first grid node
    double integral = trapz(K.nu, K.val) + K.nu.front() * K.val.front();
    double tau = 3.0 - 4.0 * integral;
    bool clip = tau < -1.0 || tau > 1.0;
    if (clipped) *clipped = clip;
    return std::clamp(tau, -1.0, 1.0);
}

GeneratorFit fit_generator(const Curve& K, double nu0, double epsilon) {
    if (K.size() < 2) throw validation_error("Kendall curve needs at least 2 nodes");
    if (!(nu0 > K.nu.front() && nu0 < 1.0))
        throw validation_error("anchor nu0 must lie inside (first grid node, 1)");
    GeneratorFit gen;
    gen.K = K;
    gen.nu0 = nu0;

    for (std::size_t i = 1; i < gen.K.size(); ++i)
        if (gen.K.val[i] < gen.K.val[i - 1]) {
            gen.K.val[i] = gen.K.val[i - 1];
            ++gen.monotone_fixed;
        }

    const std::size_t G = gen.K.size();
    std::vector<double> integ(G);
    for (std::size_t i = 0; i < G; ++i) {
        double den = gen.K.nu[i] - gen.K.val[i];
        if (den > -epsilon) {
            den = -epsilon;
            ++gen.denom_clipped;
        }
        integ[i] = 1.0 / den;
    }
    std::vector<double> ct(G, 0.0);
    for (std::size_t i = 1; i < G; ++i)
        ct[i] = ct[i - 1] + 0.5 * (integ[i] + integ[i - 1]) * (gen.K.nu[i] - gen.K.nu[i - 1]);
    std::size_t i0 = searchsorted_left(gen.K.nu, nu0);
    if (i0 >= G) i0 = G - 1;
    gen.log_phi.resize(G);
    for (std::size_t i = 0; i < G; ++i) gen.log_phi[i] = ct[i] - ct[i0];
    return gen;
}

double generator_phi(const GeneratorFit& gen, double nu) {
    return std::exp(interp1(gen.K.nu, gen.log_phi, nu));
}

double generator_psi(const GeneratorFit& gen, double s) {
    std::vector<double> rev_lphi(gen.log_phi.rbegin(), gen.log_phi.rend());
    std::vector<double> rev_nu(gen.K.nu.rbegin(), gen.K.nu.rend());
    double lx = std::log(std::max(s, 1e-300));
    return interp1(rev_lphi, rev_nu, lx);
}

void sample_from_generator(const GeneratorFit& gen, std::size_t n, RngStream& rng,
                           std::vector<double>& x1, std::vector<double>& x2) {
    const std::size_t G = gen.K.size();
    // log phi decreases in nu, so the reversed tables are ascending
    std::vector<double> rev_lphi(gen.log_phi.rbegin(), gen.log_phi.rend());
    std::vector<double> rev_nu(gen.K.nu.rbegin(), gen.K.nu.rend());
    auto psi = [&](double x) {
        double lx = std::log(std::max(x, 1e-300));
        return interp1(rev_lphi, rev_nu, lx);
    };
    x1.resize(n);
    x2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = rng.uniform();
        std::size_t idx = searchsorted_left(gen.K.val, u);
        double t = gen.K.nu[std::min(idx, G - 1)];
        double s = rng.uniform();
        double phit = std::exp(interp1(gen.K.nu, gen.log_phi, t));
        x1[i] = psi(s * phit);
        x2[i] = psi((1.0 - s) * phit);
    }
}

Curve empirical_kendall(const std::vector<double>& x1, const std::vector<double>& x2,
                        std::size_t grid_size) {
    const std::size_t n = x1.size();
    if (n == 0 || x2.size() != n) throw validation_error("empirical_kendall: bad sample");
    std::vector<double> V(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t c = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (x1[j] <= x1[i] && x2[j] <= x2[i]) ++c;
        V[i] = static_cast<double>(c) / static_cast<double>(n);
    }
    std::sort(V.begin(), V.end());
    Curve K;
    K.nu = uniform_grid(static_cast<int>(grid_size));
    K.val.resize(K.nu.size());
    for (std::size_t g = 0; g < K.nu.size(); ++g)
        K.val[g] = static_cast<double>(searchsorted_right(V, K.nu[g])) / static_cast<double>(n);
    return K;
}

double kendall_tau_pairs(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw validation_error("kendall_tau_pairs: bad sample");
    long long s = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double p = (x[i] - x[j]) * (y[i] - y[j]);
            s += p > 0.0 ? 1 : p < 0.0 ? -1 : 0;
        }
    return 2.0 * static_cast<double>(s) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

namespace {

// merge sort counting inversions (pairs out of strictly ascending order)
long long count_inversions(std::vector<double>& a, std::vector<double>& buf, std::size_t lo,
                           std::size_t hi) {
    if (hi - lo < 2) return 0;
    std::size_t mid = lo + (hi - lo) / 2;
    long long inv = count_inversions(a, buf, lo, mid) + count_inversions(a, buf, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (a[j] < a[i]) {
            inv += static_cast<long long>(mid - i);
            buf[k++] = a[j++];
        } else {
            buf[k++] = a[i++];
        }
    }
    while (i < mid) buf[k++] = a[i++];
    while (j < hi) buf[k++] = a[j++];
    std::copy(buf.begin() + lo, buf.begin() + hi, a.begin() + lo);
    return inv;
}

long long tied_pairs(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    long long t = 0, run = 1;
    for (std::size_t i = 1; i <= v.size(); ++i) {
        if (i < v.size() && v[i] == v[i - 1]) {
            ++run;
        } else {
            t += run * (run - 1) / 2;
            run = 1;
        }
    }
    return t;
}

}  // namespace

double kendall_tau_fast(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw validation_error("kendall_tau_fast: bad sample");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
    });
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];

    // within an x-tie block ys is ascending, so inversions only pair strict x
    std::vector<double> buf(n);
    long long discordant = count_inversions(ys, buf, 0, n);

    long long tx = tied_pairs(x), ty = tied_pairs(y);
    long long txy = 0;
    {
        std::vector<std::pair<double, double>> xy(n);
        for (std::size_t i = 0; i < n; ++i) xy[i] = {x[i], y[i]};
        std::sort(xy.begin(), xy.end());
        long long run = 1;
        for (std::size_t i = 1; i <= n; ++i) {
            if (i < n && xy[i] == xy[i - 1]) {
                ++run;
            } else {
                txy += run * (run - 1) / 2;
                run = 1;
            }
        }
    }
    long long n0 = static_cast<long long>(n) * static_cast<long long>(n - 1) / 2;
    long long concordant = n0 - tx - (ty - txy) - discordant;
    return 2.0 * static_cast<double>(concordant - discordant) /
           (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace gencop
