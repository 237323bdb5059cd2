#include "gencop/selector.hpp"

#include <cmath>
#include <limits>

#include "gencop/errors.hpp"

namespace gencop {

double l2_distance(const Curve& a, const Curve& b, double xi) {
    if (a.size() != b.size()) throw validation_error("l2_distance: grid mismatch");
    std::size_t start = searchsorted_left(a.nu, xi);
    double s = 0.0;
    for (std::size_t i = start + 1; i < a.size(); ++i) {
        double d0 = a.val[i - 1] - b.val[i - 1];
        double d1 = a.val[i] - b.val[i];
        s += 0.5 * (d0 * d0 + d1 * d1) * (a.nu[i] - a.nu[i - 1]);
    }
    return s;
}

Family SelectionReport::winner() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < families.size(); ++k)
        if (families[k].p > families[best].p) best = k;
    return families[best].family;
}

const FamilyScore& SelectionReport::score(Family f) const {
    for (const auto& fs : families)
        if (fs.family == f) return fs;
    throw validation_error("unknown family");
}

SelectionReport select_family(const Curve& K_hat, std::size_t J, std::size_t n, double xi,
                              std::uint64_t seed) {
    if (J == 0 || n == 0) throw validation_error("select_family: J and n must be positive");
    constexpr std::array<Family, 4> FAMS = {Family::clayton, Family::frank, Family::gumbel,
                                            Family::joe};
    SelectionReport rep;
    for (std::size_t k = 0; k < 4; ++k) rep.families[k].family = FAMS[k];
    rep.J = J;
    rep.n = n;
    rep.xi = xi;
    rep.seed = seed;

    GeneratorFit gen = fit_generator(K_hat);
    const std::size_t G = K_hat.size();
    std::size_t start = searchsorted_left(K_hat.nu, xi);
    std::vector<double> nu_tail(K_hat.nu.begin() + start, K_hat.nu.end());

    std::vector<double> x1, x2;
    std::array<double, 4> d_sum{};
    double tau_sum = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
        RngStream rng(derive_seed(seed, j));
        sample_from_generator(gen, n, rng, x1, x2);
        Curve Kj = empirical_kendall(x1, x2, G);
        double tau_j = tau_from_curve(Kj);
        tau_sum += tau_j;

        std::array<double, 4> D;
        D.fill(std::numeric_limits<double>::infinity());
        for (std::size_t k = 0; k < 4; ++k) {
            double alpha;
            try {
                alpha = tau_to_alpha(FAMS[k], tau_j);
            } catch (const tau_out_of_range&) {
                continue;
            }
            ++rep.families[k].eligible;
            std::vector<double> Kf = kendall_K_grid(FAMS[k], nu_tail, alpha);
            double s = 0.0;
            for (std::size_t i = 1; i < nu_tail.size(); ++i) {
                double d0 = Kf[i - 1] - Kj.val[start + i - 1];
                double d1 = Kf[i] - Kj.val[start + i];
                s += 0.5 * (d0 * d0 + d1 * d1) * (nu_tail[i] - nu_tail[i - 1]);
            }
            D[k] = s;
            d_sum[k] += s;
        }
        double mn = std::numeric_limits<double>::infinity();
        for (double d : D) mn = std::min(mn, d);
        if (!std::isfinite(mn)) {
            ++rep.ties;  // every family ineligible: nobody wins
            continue;
        }
        int best = -1, count = 0;
        for (std::size_t k = 0; k < 4; ++k)
            if (D[k] == mn) {
                best = static_cast<int>(k);
                ++count;
            }
        if (count == 1)
            ++rep.families[best].wins;
        else
            ++rep.ties;
    }
    for (std::size_t k = 0; k < 4; ++k) {
        auto& fs = rep.families[k];
        fs.p = static_cast<double>(fs.wins) / static_cast<double>(J);
        fs.one_minus_p = 1.0 - fs.p;
        fs.mean_d = fs.eligible ? d_sum[k] / static_cast<double>(fs.eligible)
                                : std::numeric_limits<double>::infinity();
    }
    rep.mean_tau = tau_sum / static_cast<double>(J);
    return rep;
}

}  // namespace gencop
