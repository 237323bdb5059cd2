#include "gencop/pipeline.hpp"

#include <cmath>

#include "gencop/errors.hpp"
#include "gencop/survival.hpp"

namespace gencop {

FitMode fit_mode_from_name(const std::string& name) {
    if (name == "nonparam" || name == "nonparametric") return FitMode::nonparam;
    if (name == "param" || name == "parametric") return FitMode::param;
    throw validation_error("unknown mode '" + name + "' (expected nonparam or param)");
}

const char* fit_mode_name(FitMode m) { return m == FitMode::nonparam ? "nonparam" : "param"; }

Curve PipelineResult::lambda() const {
    Curve l;
    l.nu = K.nu;
    l.val.resize(K.size());
    for (std::size_t i = 0; i < K.size(); ++i) l.val[i] = K.nu[i] - K.val[i];
    return l;
}

namespace {

double sd_uncensored(const std::vector<double>& y, const std::vector<int>& d) {
    double s = 0.0, s2 = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (d[i] == 1) { s += y[i]; s2 += y[i] * y[i]; ++n; }
    if (n < 2) throw validation_error("not enough uncensored records for a bandwidth grid");
    double m = s / n;
    return std::sqrt((s2 - n * m * m) / (n - 1));
}

std::vector<double> cv_grid(double scale) {
    std::vector<double> g(20);
    double l0 = std::log(0.05), l1 = std::log(2.0);
    for (int i = 0; i < 20; ++i) g[i] = std::exp(l0 + (l1 - l0) * i / 19.0) * scale;
    return g;
}

}  // namespace

PipelineResult run_pipeline(const Dataset& ds, const PipelineOptions& opt) {
    PipelineResult res;
    res.mode = opt.mode;
    res.condition = opt.condition;
    res.diag.n_rows = ds.n();
    if (ds.n() == 0) throw validation_error("empty dataset");

    std::vector<char> mask;
    if (!opt.condition.empty()) {
        mask = condition_mask(ds, parse_condition(opt.condition));
        std::size_t kept = 0;
        for (char c : mask) kept += c != 0;
        if (kept == 0)
            throw validation_error("empty stratum: no rows satisfy '" + opt.condition + "'");
        res.diag.stratum_rows = kept;
    } else {
        res.diag.stratum_rows = ds.n();
    }

    JointMass jm;
    if (opt.mode == FitMode::nonparam) {
        // conditioning subsets the rows; the estimator then runs on the stratum
        const Dataset data = mask.empty() ? ds : subset_rows(ds, mask);
        double h1 = opt.h1, h2 = opt.h2;
        if (opt.cv_bandwidth) {
            if (h1 <= 0.0)
                h1 = bandwidth_cv(data.y2, data.d2, data.y1, data.d1,
                                  cv_grid(sd_uncensored(data.y1, data.d1)));
            if (h2 <= 0.0)
                h2 = bandwidth_cv(data.y1, data.d1, data.y2, data.d2,
                                  cv_grid(sd_uncensored(data.y2, data.d2)));
        } else {
            if (h1 <= 0.0) h1 = bandwidth_default(data.y1);
            if (h2 <= 0.0) h2 = bandwidth_default(data.y2);
        }
        res.diag.h1 = h1;
        res.diag.h2 = h2;
        jm = joint_nonparam(data, h1, h2, opt.w);
    } else {
        // models are fit on the full sample; the condition only reweights the
        // covariate mixture
        ParamJointModels models;
        jm = joint_param(ds, opt.use_covariates, mask.empty() ? nullptr : &mask, opt.w, &models);
        res.models = std::move(models);
    }
    res.diag.joint_total = jm.total();

    res.K = kendall_from_joint(jm, opt.grid);
    res.tau = tau_from_curve(res.K, &res.diag.tau_clipped);
    GeneratorFit gen = fit_generator(res.K, opt.nu0, opt.epsilon);
    res.log_phi = gen.log_phi;
    res.K = gen.K;  // after the monotone repair (a no-op for this construction)
    res.diag.denom_clipped = gen.denom_clipped;
    res.diag.monotone_fixed = gen.monotone_fixed;
    for (std::size_t i = 0; i < res.K.size(); ++i)
        res.diag.lambda_max = std::max(res.diag.lambda_max, res.K.nu[i] - res.K.val[i]);
    return res;
}

}  // namespace gencop
