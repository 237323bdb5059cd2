#pragma once
#include <array>
#include <cstddef>
#include <cstdint>

#include "gencop/families.hpp"
#include "gencop/kendall.hpp"

namespace gencop {

// L2 distance between curves on the common grid restricted to nu >= xi
double l2_distance(const Curve& a, const Curve& b, double xi);

struct FamilyScore {
    Family family;
    std::size_t wins = 0;      // replicates where this family is the unique minimizer
    std::size_t eligible = 0;  // replicates where tau_hat was reachable
    double p = 0.0;            // wins / J, a pseudo p-value
    double one_minus_p = 0.0;
    double mean_d = 0.0;       // average L2 distance over eligible replicates
};

struct SelectionReport {
    std::array<FamilyScore, 4> families{};  // clayton, frank, gumbel, joe
    double mean_tau = 0.0;
    std::size_t ties = 0;  // replicates without a unique minimizer
    std::size_t J = 0, n = 0;
    double xi = 0.02;
    std::uint64_t seed = 0;

    Family winner() const;
    const FamilyScore& score(Family f) const;
};

// pseudo p-values by resampling the fitted generator: per replicate draw n
// pairs, rebuild the empirical Kendall curve, match each family at the
// replicate tau, and count unique L2 winners; replicate j uses seed
// derive_seed(seed, j) so results do not depend on evaluation order
SelectionReport select_family(const Curve& K_hat, std::size_t J, std::size_t n, double xi,
                              std::uint64_t seed);

}  // namespace gencop
