// families.hpp -- the four candidate Archimedean families: inverse generators,
// closed-form Kendall distributions, and the tau <-> alpha maps
#pragma once
#include <string>
#include <vector>

#include "gencop/errors.hpp"

namespace gencop {

enum class Family { clayton, frank, gumbel, joe };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// inverse generator phi(t) = psi^{-1}(t), t in (0,1]; normalized so that phi
// is the exact inverse of the frailty Laplace transform psi_family
//   clayton: t^{-a}-1                a > 0
//   frank:   -ln[(e^{-at}-1)/(e^{-a}-1)]   a != 0
//   gumbel:  (-ln t)^a               a >= 1
//   joe:     -ln[1-(1-t)^a]          a >= 1
double inv_generator(Family f, double t, double alpha);

// Kendall distribution K(nu) = nu - phi(nu)/phi'(nu), closed form per family
double kendall_K(Family f, double nu, double alpha);

// lambda(nu) = nu - K(nu)
double lambda_fn(Family f, double nu, double alpha);

// first Debye function D1(x) = (1/x) int_0^x t/(e^t-1) dt, adaptive to 1e-12
double debye1(double x);

// Kendall's tau as a function of alpha
//   clayton: a/(a+2); gumbel: 1-1/a; frank: 1-(4/a)(1-D1(a)); joe: numeric
double alpha_to_tau(Family f, double alpha);

// inverse map; throws tau_out_of_range when tau is not reachable
double tau_to_alpha(Family f, double tau);

// closed-form Kendall curve sampled on a grid
std::vector<double> kendall_K_grid(Family f, const std::vector<double>& nu, double alpha);

} // namespace gencop
