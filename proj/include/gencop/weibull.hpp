#pragma once
#include <Eigen/Dense>

namespace gencop {

// censored Weibull regression with log links on scale (beta) and shape (gamma)
struct WeibullFit {
    Eigen::VectorXd beta, gamma;
    double nll = 0.0;
    int iterations = 0;
    bool converged = false;

    double log_scale(const Eigen::VectorXd& x) const { return beta.dot(x); }
    double log_shape(const Eigen::VectorXd& x) const { return gamma.dot(x); }
};

// negative log-likelihood at par = [beta; gamma]; fills grad when non-null.
// printed_censoring swaps the censored term ln S for ln F (comparison only)
double weibull_nll(const Eigen::VectorXd& y, const Eigen::VectorXd& delta,
                   const Eigen::MatrixXd& X, const Eigen::VectorXd& par,
                   Eigen::VectorXd* grad, bool printed_censoring = false);

WeibullFit fit_weibull(const Eigen::VectorXd& y, const Eigen::VectorXd& delta,
                       const Eigen::MatrixXd& X, int max_iter = 500, double gtol = 1e-8);

double weibull_cdf(double y, double log_scale, double log_shape);
double weibull_quantile(double p, double log_scale, double log_shape);

}  // namespace gencop
