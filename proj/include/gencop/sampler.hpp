#pragma once
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "gencop/families.hpp"
#include "gencop/rng.hpp"

namespace gencop {

// frailty variates whose Laplace transforms are the family generators
double rstable_pos(double beta, RngStream& rng);  // Chambers-Mallows-Stuck, LT e^{-s^beta}
double rlogseries(double p, RngStream& rng);      // Kemp; P(X=k) = -p^k/(k ln(1-p))
double rsibuya(double beta, RngStream& rng);      // Hofert; P(N=k) = (-1)^{k-1} C(beta,k)

// generator psi(t) = E[e^{-t theta}] evaluated directly
double psi_family(Family f, double t, double alpha);

// Marshall-Olkin: U_i = psi(E_i / theta) with one shared frailty per pair
void mo_sample(Family f, double alpha, std::size_t n, RngStream& rng, std::vector<double>& u1,
               std::vector<double>& u2);

using laplace_fn = std::function<std::complex<double>(std::complex<double>)>;

// numeric Laplace inversion: fixed-Talbot primary, Abate-Whitt Euler fallback
// wherever the deformed contour misbehaves
double lt_invert_cdf(const laplace_fn& L, double t);      // inverts L(s)/s
double lt_invert_density(const laplace_fn& L, double t);  // inverts L(s); nan-prone, callers guard

// samples a nonnegative variate with Laplace transform L by inverting its cdf
// at uniforms (sorted internally, returned in draw order)
std::vector<double> rlaptrans(const laplace_fn& L, std::size_t n, RngStream& rng,
                              double tol = 1e-8);

}  // namespace gencop
