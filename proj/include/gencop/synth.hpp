#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "gencop/dataset.hpp"
#include "gencop/families.hpp"

namespace gencop {

// one dependence regime; datasets with several levels carry a covariate column
struct SynthLevel {
    std::string label;
    double alpha = 1.0;
    std::size_t n = 0;
};

struct SynthConfig {
    Family family = Family::clayton;
    std::vector<SynthLevel> levels;
    // Weibull margins with optional per-unit covariate shift on the log scale
    double scale1 = 10.0, shape1 = 1.5;
    double scale2 = 10.0, shape2 = 1.5;
    double beta1 = 0.0, beta2 = 0.0;
    double censor_scale = 0.0;  // exponential scale of the shared censoring time; 0 = none
    std::string cov_name = "z";
    std::uint64_t seed = 1;
};

// Marshall-Olkin pairs pushed through conditional Weibull quantiles, censored
// by one common exponential follow-up time per record
Dataset synth_generate(const SynthConfig& cfg);

}  // namespace gencop
