#pragma once
#include <cstddef>
#include <vector>

namespace gencop {

// jump representation of a survival-based distribution estimate
struct StepMass {
    std::vector<double> values;  // distinct uncensored times, ascending
    std::vector<double> mass;    // jump sizes (may sum to < 1 when the largest time is censored)
    bool empty() const { return values.empty(); }
    double total() const;
};

// Kaplan-Meier jumps; ties ordered uncensored first
StepMass km(const std::vector<double>& y, const std::vector<int>& delta);

using kernel_fn = double (*)(double);
double epanechnikov(double u);
double uniform_kernel(double u);
double triangular_kernel(double u);

// Beran conditional distribution F_resp|cond(.|x) with kernel weights,
// kernel support restricted to uncensored conditioning records
StepMass beran_masses(const std::vector<double>& y_resp, const std::vector<int>& d_resp,
                      const std::vector<double>& y_cond, const std::vector<int>& d_cond,
                      double x, double h, kernel_fn kernel = epanechnikov);

// default rule: 2.75 * (IQR / 1.349) * n^(-1/5)
double bandwidth_default(const std::vector<double>& y);

// k-fold cross-validated bandwidth: Brier score of the Beran estimate against
// event indicators on a deciles grid, smallest score wins
double bandwidth_cv(const std::vector<double>& y_resp, const std::vector<int>& d_resp,
                    const std::vector<double>& y_cond, const std::vector<int>& d_cond,
                    const std::vector<double>& grid, int folds = 5);

}  // namespace gencop
