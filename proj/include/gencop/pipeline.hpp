#pragma once
#include <optional>
#include <string>

#include "gencop/dataset.hpp"
#include "gencop/joint.hpp"
#include "gencop/kendall.hpp"

namespace gencop {

enum class FitMode { nonparam, param };

FitMode fit_mode_from_name(const std::string& name);
const char* fit_mode_name(FitMode m);

struct PipelineOptions {
    FitMode mode = FitMode::nonparam;
    bool use_covariates = false;  // parametric covariate mixture
    std::string condition;        // e.g. "age<=20"; empty = whole sample
    double nu0 = 0.5;
    double epsilon = 1e-10;
    std::size_t grid = 1001;
    double w = 0.5;            // direction weight of the joint estimate
    double h1 = 0.0, h2 = 0.0; // explicit bandwidths; 0 = default rule
    bool cv_bandwidth = false; // pick bandwidths by cross-validation instead
};

struct PipelineDiagnostics {
    std::size_t n_rows = 0;       // rows in the input
    std::size_t stratum_rows = 0; // rows surviving the condition
    double h1 = 0.0, h2 = 0.0;    // bandwidths actually used (nonparametric mode)
    std::size_t denom_clipped = 0;
    std::size_t monotone_fixed = 0;
    bool tau_clipped = false;
    double joint_total = 0.0;
    double lambda_max = 0.0;  // max of nu - K(nu); > 0.02 hints at model mismatch
};

struct PipelineResult {
    Curve K;
    std::vector<double> log_phi;
    double tau = 0.0;
    FitMode mode = FitMode::nonparam;
    std::string condition;
    PipelineDiagnostics diag;
    std::optional<ParamJointModels> models;  // parametric mode only

    Curve lambda() const;  // nu - K(nu)
};

PipelineResult run_pipeline(const Dataset& ds, const PipelineOptions& opt);

}  // namespace gencop
