#pragma once
#include <cstddef>
#include <vector>

#include "gencop/grid.hpp"
#include "gencop/joint.hpp"
#include "gencop/rng.hpp"

namespace gencop {

// Kendall distribution K(nu) = P(F(Y1,Y2) <= nu) on a uniform grid, from the
// normalized bivariate cdf evaluated at the cells carrying mass
Curve kendall_from_joint(const JointMass& jm, std::size_t grid_size = 1001);

// tau = 3 - 4 * int_0^1 K, with constant continuation below the first node
double tau_from_curve(const Curve& K, bool* clipped = nullptr);

// log inverse generator integrated from K, anchored at nu0
struct GeneratorFit {
    Curve K;
    std::vector<double> log_phi;   // on K.nu, decreasing
    double nu0 = 0.5;
    std::size_t denom_clipped = 0;  // nodes where nu - K(nu) had to be capped
    std::size_t monotone_fixed = 0; // nodes raised to keep K nondecreasing
};

GeneratorFit fit_generator(const Curve& K, double nu0 = 0.5, double epsilon = 1e-10);

// phi(nu) = exp(log_phi) interpolated on the grid; psi is its inverse with
// psi(s) clamped to the grid ends (phi -> 0 as nu -> 1)
double generator_phi(const GeneratorFit& gen, double nu);
double generator_psi(const GeneratorFit& gen, double s);

// one pair from the (t, s) construction: t ~ K^{-1}(U), s uniform,
// x1 = psi(s*phi(t)), x2 = psi((1-s)*phi(t))
void sample_from_generator(const GeneratorFit& gen, std::size_t n, RngStream& rng,
                           std::vector<double>& x1, std::vector<double>& x2);

// empirical Kendall curve of a complete sample; V_i counts both coordinates <=
Curve empirical_kendall(const std::vector<double>& x1, const std::vector<double>& x2,
                        std::size_t grid_size = 1001);

// sample version of tau from concordant/discordant pairs
double kendall_tau_pairs(const std::vector<double>& x, const std::vector<double>& y);

// O(n log n) version counting inversions after sorting by x; assumes
// continuous data (ties get sign 0 only through the x-sort ordering)
double kendall_tau_fast(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gencop
