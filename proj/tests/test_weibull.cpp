#include <cmath>
#include <vector>

#include "doctest.h"
#include "gencop/dataset.hpp"
#include "gencop/errors.hpp"
#include "gencop/rng.hpp"
#include "gencop/weibull.hpp"

using namespace gencop;

namespace {

const std::string RDS = std::string(GENCOP_SOURCE_DIR) + "/data/retinopathy.csv";

struct Sim {
    Eigen::VectorXd y, d;
    Eigen::MatrixXd X;
};

// censored Weibull data with a mild covariate effect
Sim simulate(std::uint64_t seed, int n, int p) {
    RngStream rng(seed);
    Sim s;
    s.y.resize(n);
    s.d.resize(n);
    s.X.resize(n, p);
    for (int i = 0; i < n; ++i) {
        s.X(i, 0) = 1.0;
        for (int j = 1; j < p; ++j) s.X(i, j) = rng.uniform(-1.0, 1.0);
        double ls = 1.0 + 0.3 * (p > 1 ? s.X(i, 1) : 0.0);
        double k = 1.4;
        double t = std::exp(ls) * std::pow(rng.expo(), 1.0 / k);
        double c = 3.0 * std::exp(ls) * rng.uniform();
        s.y[i] = std::min(t, c);
        s.d[i] = t <= c ? 1.0 : 0.0;
        if (s.y[i] <= 0.0) s.y[i] = 1e-6;
    }
    return s;
}

double fd_rel_err(const Sim& s, const Eigen::VectorXd& par, bool printed) {
    Eigen::VectorXd g;
    weibull_nll(s.y, s.d, s.X, par, &g, printed);
    double worst = 0.0;
    const double h = 1e-6;
    for (int i = 0; i < par.size(); ++i) {
        Eigen::VectorXd pp = par, pm = par;
        pp[i] += h;
        pm[i] -= h;
        double fd = (weibull_nll(s.y, s.d, s.X, pp, nullptr, printed) -
                     weibull_nll(s.y, s.d, s.X, pm, nullptr, printed)) /
                    (2.0 * h);
        double denom = std::max(1.0, std::abs(fd));
        worst = std::max(worst, std::abs(fd - g[i]) / denom);
    }
    return worst;
}

}  // namespace

TEST_CASE("analytic gradient matches central differences") {
    for (std::uint64_t seed : {11u, 12u, 13u, 14u, 15u}) {
        Sim s = simulate(seed, 120, 2);
        RngStream rng(seed + 100);
        for (int rep = 0; rep < 20; ++rep) {
            Eigen::VectorXd par(4);
            for (int i = 0; i < 4; ++i) par[i] = rng.uniform(-0.5, 0.5);
            par[0] += 1.0;  // keep the scale near the data
            CHECK(fd_rel_err(s, par, false) < 1e-4);
        }
    }
}

TEST_CASE("printed-form censoring variant also has a consistent gradient") {
    Sim s = simulate(21, 150, 2);
    RngStream rng(77);
    for (int rep = 0; rep < 10; ++rep) {
        Eigen::VectorXd par(4);
        for (int i = 0; i < 4; ++i) par[i] = rng.uniform(-0.4, 0.4);
        par[0] += 1.0;
        CHECK(fd_rel_err(s, par, true) < 1e-4);
    }
    // the two censoring conventions genuinely differ on censored data
    Eigen::VectorXd par = Eigen::VectorXd::Zero(4);
    par[0] = 1.0;
    CHECK(weibull_nll(s.y, s.d, s.X, par, nullptr, false) !=
          weibull_nll(s.y, s.d, s.X, par, nullptr, true));
}

TEST_CASE("fit is deterministic") {
    Sim s = simulate(5, 200, 2);
    WeibullFit a = fit_weibull(s.y, s.d, s.X);
    WeibullFit b = fit_weibull(s.y, s.d, s.X);
    CHECK(a.beta == b.beta);
    CHECK(a.gamma == b.gamma);
    CHECK(a.nll == b.nll);
    CHECK(a.converged);
}

TEST_CASE("uncensored intercept-only fit matches a golden-section MLE oracle") {
    RngStream rng(99);
    int n = 400;
    Eigen::VectorXd y(n), d = Eigen::VectorXd::Ones(n);
    Eigen::MatrixXd X = Eigen::MatrixXd::Ones(n, 1);
    double true_scale = 3.0, true_shape = 1.7;
    for (int i = 0; i < n; ++i)
        y[i] = true_scale * std::pow(rng.expo(), 1.0 / true_shape);

    // profile likelihood in the shape: scale_hat(k) = mean(y^k)^(1/k)
    auto nega_profile = [&](double k) {
        double myk = 0.0, sln = 0.0;
        for (int i = 0; i < n; ++i) {
            myk += std::pow(y[i], k);
            sln += std::log(y[i]);
        }
        myk /= n;
        double lam = std::pow(myk, 1.0 / k);
        double ll = n * std::log(k) - n * k * std::log(lam) + (k - 1.0) * sln - n;
        return -ll;
    };
    double lo = 0.05, hi = 20.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    double fa = nega_profile(a), fb = nega_profile(b);
    for (int it = 0; it < 200; ++it) {
        if (fa < fb) {
            hi = b; b = a; fb = fa;
            a = hi - gr * (hi - lo);
            fa = nega_profile(a);
        } else {
            lo = a; a = b; fa = fb;
            b = lo + gr * (hi - lo);
            fb = nega_profile(b);
        }
    }
    double k_hat = 0.5 * (lo + hi);
    double myk = 0.0;
    for (int i = 0; i < n; ++i) myk += std::pow(y[i], k_hat);
    double scale_hat = std::pow(myk / n, 1.0 / k_hat);

    WeibullFit fit = fit_weibull(y, d, X);
    CHECK(fit.converged);
    CHECK(fit.beta[0] == doctest::Approx(std::log(scale_hat)).epsilon(1e-5));
    CHECK(fit.gamma[0] == doctest::Approx(std::log(k_hat)).epsilon(1e-5));
}

TEST_CASE("retinopathy regression coefficients are stable") {
    Dataset ds = load_csv(RDS, Schema{});
    const auto& age = ds.cov[0];
    const std::size_t n = ds.n();

    // y1 given uncensored y2 plus age
    std::vector<double> yr;
    std::vector<int> dr;
    std::vector<double> partner, z;
    for (std::size_t i = 0; i < n; ++i)
        if (ds.d2[i] == 1) {
            yr.push_back(ds.y1[i]);
            dr.push_back(ds.d1[i]);
            partner.push_back(ds.y2[i]);
            z.push_back(age[i]);
        }
    Eigen::VectorXd y(yr.size()), d(yr.size());
    Eigen::MatrixXd X(yr.size(), 3);
    for (std::size_t i = 0; i < yr.size(); ++i) {
        y[i] = yr[i];
        d[i] = dr[i];
        X(i, 0) = 1.0;
        X(i, 1) = partner[i];
        X(i, 2) = z[i];
    }
    WeibullFit m12 = fit_weibull(y, d, X);
    CHECK(m12.converged);
    CHECK(m12.beta[0] == doctest::Approx(4.06502).epsilon(2e-3));
    CHECK(m12.beta[1] == doctest::Approx(0.02498).epsilon(2e-3));
    CHECK(m12.beta[2] == doctest::Approx(0.00584).epsilon(2e-3));
    CHECK(m12.gamma[0] == doctest::Approx(-0.33842).epsilon(2e-3));

    // marginal of y1 with age
    Eigen::VectorXd ym(n), dm(n);
    Eigen::MatrixXd Xm(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        ym[i] = ds.y1[i];
        dm[i] = ds.d1[i];
        Xm(i, 0) = 1.0;
        Xm(i, 1) = age[i];
    }
    WeibullFit f1 = fit_weibull(ym, dm, Xm);
    CHECK(f1.converged);
    CHECK(f1.beta[0] == doctest::Approx(5.00142).epsilon(2e-3));
    CHECK(f1.gamma[0] == doctest::Approx(-0.31301).epsilon(2e-3));
}

TEST_CASE("cdf is a distribution function and quantile inverts it") {
    double ls = 1.2, lsh = 0.4;
    CHECK(weibull_cdf(0.0, ls, lsh) == 0.0);
    CHECK(weibull_cdf(-1.0, ls, lsh) == 0.0);
    double prev = 0.0;
    for (double t = 0.1; t < 50.0; t *= 1.5) {
        double f = weibull_cdf(t, ls, lsh);
        CHECK(f >= prev);
        prev = f;
    }
    CHECK(weibull_cdf(1e9, ls, lsh) == doctest::Approx(1.0));
    for (double p : {0.05, 0.3, 0.7, 0.95}) {
        double q = weibull_quantile(p, ls, lsh);
        CHECK(weibull_cdf(q, ls, lsh) == doctest::Approx(p).epsilon(1e-10));
    }
    CHECK_THROWS_AS(weibull_quantile(1.0, ls, lsh), numeric_error);
}
