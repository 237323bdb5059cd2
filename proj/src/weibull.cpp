#include "gencop/weibull.hpp"

#include <cmath>

#include "gencop/errors.hpp"

namespace gencop {

double weibull_nll(const Eigen::VectorXd& y, const Eigen::VectorXd& delta,
                   const Eigen::MatrixXd& X, const Eigen::VectorXd& par,
                   Eigen::VectorXd* grad, bool printed_censoring) {
    const Eigen::Index p = X.cols();
    Eigen::VectorXd beta = par.head(p), gamma = par.tail(p);
    Eigen::ArrayXd lny = y.array().max(1e-300).log();
    Eigen::ArrayXd eta = (X * beta).array();
    Eigen::ArrayXd zeta = (X * gamma).array();
    Eigen::ArrayXd k = zeta.exp();
    Eigen::ArrayXd lnA = (k * (lny - eta)).min(700.0);
    Eigen::ArrayXd A = lnA.exp();
    Eigen::ArrayXd d = delta.array();
    Eigen::ArrayXd lnf = zeta + (k - 1.0) * lny - k * eta - A;
    // censored records contribute ln S(y) = -A; the printed-formula variant
    // uses ln F instead and exists for comparison only
    Eigen::ArrayXd cens = -A;
    Eigen::ArrayXd r = Eigen::ArrayXd::Zero(A.size());
    if (printed_censoring) {
        for (Eigen::Index i = 0; i < A.size(); ++i) {
            double F = std::max(-std::expm1(-A[i]), 1e-300);
            cens[i] = std::log(F);
            r[i] = std::exp(-A[i]) / F;
        }
    }
    double nll = -(d * lnf + (1.0 - d) * cens).sum();
    if (grad) {
        Eigen::ArrayXd dl_deta, dl_dzeta;
        if (!printed_censoring) {
            dl_deta = d * k * (A - 1.0) + (1.0 - d) * k * A;
            dl_dzeta = d * (1.0 + k * (lny - eta) * (1.0 - A)) - (1.0 - d) * A * k * (lny - eta);
        } else {
            dl_deta = d * k * (A - 1.0) - (1.0 - d) * k * A * r;
            dl_dzeta =
                d * (1.0 + k * (lny - eta) * (1.0 - A)) + (1.0 - d) * r * A * k * (lny - eta);
        }
        grad->resize(2 * p);
        grad->head(p) = -(X.transpose() * dl_deta.matrix());
        grad->tail(p) = -(X.transpose() * dl_dzeta.matrix());
    }
    return nll;
}

namespace {

// strong Wolfe line search (backtrack/expand + bisection zoom)
double wolfe_step(const Eigen::VectorXd& y, const Eigen::VectorXd& delta,
                  const Eigen::MatrixXd& X, const Eigen::VectorXd& x0, double f0,
                  const Eigen::VectorXd& g0, const Eigen::VectorXd& dir, double& f_out,
                  Eigen::VectorXd& g_out) {
    const double c1 = 1e-4, c2 = 0.9;
    double dphi0 = g0.dot(dir);
    if (dphi0 >= 0.0) return 0.0;
    auto eval = [&](double a, double& f, Eigen::VectorXd& g) {
        f = weibull_nll(y, delta, X, x0 + a * dir, &g);
        return g.dot(dir);
    };
    double a_prev = 0.0, f_prev = f0, a = 1.0;
    double lo = 0.0, hi = 0.0, f_lo = f0;
    bool zooming = false;
    Eigen::VectorXd g(g0.size());
    for (int it = 0; it < 60; ++it) {
        if (!zooming) {
            double f, dphi = eval(a, f, g);
            if (!std::isfinite(f) || f > f0 + c1 * a * dphi0 || (it > 0 && f >= f_prev)) {
                lo = a_prev; hi = a; f_lo = f_prev; zooming = true; continue;
            }
            if (std::abs(dphi) <= -c2 * dphi0) { f_out = f; g_out = g; return a; }
            if (dphi >= 0.0) { lo = a; hi = a_prev; f_lo = f; zooming = true; continue; }
            a_prev = a; f_prev = f; a *= 2.0;
            if (a > 1e10) break;
        } else {
            double m = 0.5 * (lo + hi);
            double f, dphi = eval(m, f, g);
            if (!std::isfinite(f) || f > f0 + c1 * m * dphi0 || f >= f_lo) {
                hi = m;
            } else {
                if (std::abs(dphi) <= -c2 * dphi0) { f_out = f; g_out = g; return m; }
                if (dphi * (hi - lo) >= 0.0) hi = lo;
                lo = m; f_lo = f;
            }
            if (std::abs(hi - lo) < 1e-16 * (1.0 + std::abs(lo))) {
                if (f_lo < f0) { f_out = f_lo; eval(lo, f_out, g_out); return lo; }
                break;
            }
        }
    }
    return 0.0;
}

}  // namespace

WeibullFit fit_weibull(const Eigen::VectorXd& y, const Eigen::VectorXd& delta,
                       const Eigen::MatrixXd& X, int max_iter, double gtol) {
    const Eigen::Index p = X.cols(), m = 2 * p;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
    double sum = 0.0;
    int cnt = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i)
        if (delta[i] == 1.0) { sum += y[i]; ++cnt; }
    x[0] = std::log(cnt > 0 ? sum / cnt : y.mean());

    Eigen::VectorXd g(m);
    double f = weibull_nll(y, delta, X, x, &g);
    Eigen::MatrixXd H = Eigen::MatrixXd::Identity(m, m);
    WeibullFit fit;
    bool first = true;
    int it = 0;
    for (; it < max_iter; ++it) {
        if (g.lpNorm<Eigen::Infinity>() <= gtol) { fit.converged = true; break; }
        Eigen::VectorXd dir = -(H * g);
        if (dir.dot(g) >= 0.0) { H.setIdentity(); dir = -g; }
        double f_new;
        Eigen::VectorXd g_new(m);
        double a = wolfe_step(y, delta, X, x, f, g, dir, f_new, g_new);
        if (a == 0.0) {
            if (!first) { H.setIdentity(); dir = -g; a = wolfe_step(y, delta, X, x, f, g, dir, f_new, g_new); }
            if (a == 0.0) break;  // no decrease possible
        }
        Eigen::VectorXd s = a * dir, yv = g_new - g;
        double sy = s.dot(yv);
        if (sy > 1e-12 * s.norm() * yv.norm()) {
            if (first) { H *= sy / yv.squaredNorm(); first = false; }
            Eigen::MatrixXd I = Eigen::MatrixXd::Identity(m, m);
            Eigen::MatrixXd W = I - (s * yv.transpose()) / sy;
            H = W * H * W.transpose() + (s * s.transpose()) / sy;
        }
        x += s;
        f = f_new;
        g = g_new;
    }
    fit.beta = x.head(p);
    fit.gamma = x.tail(p);
    fit.nll = f;
    fit.iterations = it;
    if (!fit.converged && g.lpNorm<Eigen::Infinity>() <= 1e-5)
        fit.converged = true;  // good enough: matches typical quasi-Newton stopping scale
    return fit;
}

double weibull_cdf(double y, double log_scale, double log_shape) {
    if (y <= 0.0) return 0.0;
    double z = std::exp(std::exp(log_shape) * (std::log(y) - log_scale));
    return -std::expm1(-z);
}

double weibull_quantile(double p, double log_scale, double log_shape) {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) throw numeric_error("weibull_quantile: p must be < 1");
    return std::exp(log_scale) * std::pow(-std::log1p(-p), 1.0 / std::exp(log_shape));
}

}  // namespace gencop
