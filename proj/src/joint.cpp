#include "gencop/joint.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gencop/errors.hpp"
#include "gencop/survival.hpp"

namespace gencop {

namespace {

std::vector<double> uncensored_lattice(const std::vector<double>& y, const std::vector<int>& d) {
    std::vector<double> g;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (d[i] == 1) g.push_back(y[i]);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

std::size_t lattice_index(const std::vector<double>& g, double v) {
    auto it = std::lower_bound(g.begin(), g.end(), v);
    if (it == g.end() || *it != v) throw numeric_error("value off the uncensored lattice");
    return static_cast<std::size_t>(it - g.begin());
}

}  // namespace

JointMass joint_nonparam(const Dataset& ds, double h1, double h2, double w) {
    JointMass jm;
    jm.g1 = uncensored_lattice(ds.y1, ds.d1);
    jm.g2 = uncensored_lattice(ds.y2, ds.d2);
    if (jm.g1.empty() || jm.g2.empty())
        throw validation_error("no uncensored events in one margin");
    jm.m = Eigen::MatrixXd::Zero(jm.g1.size(), jm.g2.size());

    StepMass k2 = km(ds.y2, ds.d2);
    for (std::size_t a = 0; a < k2.values.size(); ++a) {
        std::size_t j = lattice_index(jm.g2, k2.values[a]);
        StepMass b = beran_masses(ds.y1, ds.d1, ds.y2, ds.d2, k2.values[a], h2);
        for (std::size_t q = 0; q < b.values.size(); ++q)
            jm.m(lattice_index(jm.g1, b.values[q]), j) += w * k2.mass[a] * b.mass[q];
    }
    StepMass k1 = km(ds.y1, ds.d1);
    for (std::size_t a = 0; a < k1.values.size(); ++a) {
        std::size_t i = lattice_index(jm.g1, k1.values[a]);
        StepMass b = beran_masses(ds.y2, ds.d2, ds.y1, ds.d1, k1.values[a], h1);
        for (std::size_t q = 0; q < b.values.size(); ++q)
            jm.m(i, lattice_index(jm.g2, b.values[q])) += (1.0 - w) * k1.mass[a] * b.mass[q];
    }
    return jm;
}

namespace {

Eigen::MatrixXd design_cond(const std::vector<double>& partner, const std::vector<double>& z,
                            bool use_cov) {
    Eigen::MatrixXd X(partner.size(), use_cov ? 2 + 1 : 2);
    for (std::size_t i = 0; i < partner.size(); ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = partner[i];
        if (use_cov) X(i, 2) = z[i];
    }
    return X;
}

}  // namespace

JointMass joint_param(const Dataset& ds, bool use_covariates, const std::vector<char>* subset,
                      double w, ParamJointModels* models_out) {
    const std::size_t n = ds.n();
    if (use_covariates && ds.n_cov() == 0)
        throw validation_error("covariate mixture requested but the dataset has no covariates");
    if (use_covariates && ds.n_cov() > 1)
        throw validation_error("parametric mixture supports a single covariate column");
    std::vector<double> z(n, 0.0);
    if (use_covariates) z = ds.cov[0];
    if (use_covariates && n > 0 &&
        *std::max_element(z.begin(), z.end()) == *std::min_element(z.begin(), z.end()))
        use_covariates = false;  // constant column would make the design rank-deficient

    auto fit_conditional = [&](const std::vector<double>& y_resp, const std::vector<int>& d_resp,
                               const std::vector<double>& y_cond, const std::vector<int>& d_cond) {
        std::vector<double> yr, pc, zc;
        std::vector<int> dr;
        for (std::size_t i = 0; i < n; ++i)
            if (d_cond[i] == 1) {
                yr.push_back(y_resp[i]);
                dr.push_back(d_resp[i]);
                pc.push_back(y_cond[i]);
                zc.push_back(z[i]);
            }
        if (yr.empty()) throw validation_error("no partner-uncensored records");
        Eigen::VectorXd yv = Eigen::Map<Eigen::VectorXd>(yr.data(), yr.size());
        Eigen::VectorXd dv(dr.size());
        for (std::size_t i = 0; i < dr.size(); ++i) dv[i] = dr[i];
        return fit_weibull(yv, dv, design_cond(pc, zc, use_covariates));
    };
    auto fit_marginal = [&](const std::vector<double>& y_resp, const std::vector<int>& d_resp) {
        Eigen::MatrixXd X(n, use_covariates ? 2 : 1);
        for (std::size_t i = 0; i < n; ++i) {
            X(i, 0) = 1.0;
            if (use_covariates) X(i, 1) = z[i];
        }
        Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y_resp.data(), n);
        Eigen::VectorXd dv(n);
        for (std::size_t i = 0; i < n; ++i) dv[i] = d_resp[i];
        return fit_weibull(yv, dv, X);
    };

    ParamJointModels mdl;
    mdl.m12 = fit_conditional(ds.y1, ds.d1, ds.y2, ds.d2);
    mdl.m21 = fit_conditional(ds.y2, ds.d2, ds.y1, ds.d1);
    mdl.f1 = fit_marginal(ds.y1, ds.d1);
    mdl.f2 = fit_marginal(ds.y2, ds.d2);
    if (models_out) *models_out = mdl;

    JointMass jm;
    jm.g1 = uncensored_lattice(ds.y1, ds.d1);
    jm.g2 = uncensored_lattice(ds.y2, ds.d2);
    if (jm.g1.empty() || jm.g2.empty())
        throw validation_error("no uncensored events in one margin");
    const std::size_t n1 = jm.g1.size(), n2 = jm.g2.size();
    jm.m = Eigen::MatrixXd::Zero(n1, n2);

    // covariate mixture weights from the selected rows; models stay global
    std::map<double, std::size_t> groups;
    if (use_covariates) {
        for (std::size_t i = 0; i < n; ++i)
            if (!subset || (*subset)[i]) ++groups[z[i]];
    } else {
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (!subset || (*subset)[i]) ++cnt;
        groups[0.0] = cnt;
    }
    double wsum = 0.0;
    for (const auto& g : groups) wsum += static_cast<double>(g.second);
    if (wsum == 0.0) throw validation_error("empty stratum");

    auto cond_cdf_col = [&](const WeibullFit& fit, const std::vector<double>& grid_resp,
                            double partner, double zv, std::vector<double>& col) {
        Eigen::VectorXd x(use_covariates ? 3 : 2);
        x[0] = 1.0;
        x[1] = partner;
        if (use_covariates) x[2] = zv;
        double ls = fit.log_scale(x), lsh = fit.log_shape(x);
        col.resize(grid_resp.size());
        for (std::size_t i = 0; i < grid_resp.size(); ++i)
            col[i] = weibull_cdf(grid_resp[i], ls, lsh);
    };
    auto marg_increments = [&](const WeibullFit& fit, const std::vector<double>& grid_resp,
                               double zv, std::vector<double>& inc) {
        Eigen::VectorXd x(use_covariates ? 2 : 1);
        x[0] = 1.0;
        if (use_covariates) x[1] = zv;
        double ls = fit.log_scale(x), lsh = fit.log_shape(x);
        inc.resize(grid_resp.size());
        double prev = 0.0;
        for (std::size_t i = 0; i < grid_resp.size(); ++i) {
            double F = weibull_cdf(grid_resp[i], ls, lsh);
            inc[i] = F - prev;
            prev = F;
        }
    };

    std::vector<double> dF1, dF2, col;
    for (const auto& [zv, cnt] : groups) {
        double gw = static_cast<double>(cnt) / wsum;
        // term 1: dF2(.|z) on g2 times column increments of F1|2(.|xi2, z)
        marg_increments(mdl.f2, jm.g2, zv, dF2);
        for (std::size_t j = 0; j < n2; ++j) {
            cond_cdf_col(mdl.m12, jm.g1, jm.g2[j], zv, col);
            double prev = 0.0;
            for (std::size_t i = 0; i < n1; ++i) {
                jm.m(i, j) += w * gw * (col[i] - prev) * dF2[j];
                prev = col[i];
            }
        }
        // term 2: symmetric
        marg_increments(mdl.f1, jm.g1, zv, dF1);
        for (std::size_t i = 0; i < n1; ++i) {
            cond_cdf_col(mdl.m21, jm.g2, jm.g1[i], zv, col);
            double prev = 0.0;
            for (std::size_t j = 0; j < n2; ++j) {
                jm.m(i, j) += (1.0 - w) * gw * (col[j] - prev) * dF1[i];
                prev = col[j];
            }
        }
    }
    return jm;
}

}  // namespace gencop
