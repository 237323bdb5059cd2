#pragma once
#include <Eigen/Dense>
#include <vector>

#include "gencop/dataset.hpp"
#include "gencop/weibull.hpp"

namespace gencop {

// discrete joint mass on the lattice of uncensored values
struct JointMass {
    std::vector<double> g1, g2;  // ascending distinct uncensored times per margin
    Eigen::MatrixXd m;           // mass at (g1[i], g2[j])
    double total() const { return m.sum(); }
};

// averaged one-directional estimates: KM jumps of one margin times Beran
// conditional masses of the other, mixed with weight w
JointMass joint_nonparam(const Dataset& ds, double h1, double h2, double w = 0.5);

struct ParamJointModels {
    WeibullFit m12, m21;  // response given uncensored partner time (+ covariates)
    WeibullFit f1, f2;    // covariate-only marginals
};

// parametric analogue: Weibull regression conditionals and marginals, mixed
// over the empirical covariate law of the selected rows (models stay global)
JointMass joint_param(const Dataset& ds, bool use_covariates,
                      const std::vector<char>* subset = nullptr, double w = 0.5,
                      ParamJointModels* models_out = nullptr);

}  // namespace gencop
