#include "gencop/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "gencop/errors.hpp"
#include "gencop/rng.hpp"
#include "gencop/sampler.hpp"
#include "gencop/weibull.hpp"

namespace gencop {

Dataset synth_generate(const SynthConfig& cfg) {
    if (cfg.levels.empty()) throw validation_error("synth_generate: no levels configured");
    Dataset ds;
    bool with_cov = cfg.levels.size() > 1;
    std::vector<double> zvals(cfg.levels.size(), 0.0);
    bool numeric = true;
    for (std::size_t k = 0; k < cfg.levels.size(); ++k) {
        const std::string& s = cfg.levels[k].label;
        auto r = std::from_chars(s.data(), s.data() + s.size(), zvals[k]);
        if (r.ec != std::errc() || r.ptr != s.data() + s.size()) { numeric = false; break; }
    }
    if (with_cov) {
        ds.cov_names.push_back(cfg.cov_name);
        ds.cov.emplace_back();
        ds.cov_categorical.push_back(!numeric);
        ds.cov_levels.emplace_back();
        if (!numeric) {
            std::vector<std::string> lv;
            for (const auto& l : cfg.levels) lv.push_back(l.label);
            std::sort(lv.begin(), lv.end());
            lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
            ds.cov_levels[0] = lv;
            for (std::size_t k = 0; k < cfg.levels.size(); ++k)
                zvals[k] = static_cast<double>(
                    std::lower_bound(lv.begin(), lv.end(), cfg.levels[k].label) - lv.begin());
        }
    }

    RngStream rng(cfg.seed);
    double ls1 = std::log(cfg.scale1), lsh1 = std::log(cfg.shape1);
    double ls2 = std::log(cfg.scale2), lsh2 = std::log(cfg.shape2);
    std::vector<double> u1, u2;
    for (std::size_t k = 0; k < cfg.levels.size(); ++k) {
        const SynthLevel& lev = cfg.levels[k];
        mo_sample(cfg.family, lev.alpha, lev.n, rng, u1, u2);
        double shift = zvals[k];  // level code when the labels are not numeric
        for (std::size_t i = 0; i < lev.n; ++i) {
            double p1 = std::min(u1[i], 1.0 - 1e-16), p2 = std::min(u2[i], 1.0 - 1e-16);
            double t1 = weibull_quantile(p1, ls1 + cfg.beta1 * shift, lsh1);
            double t2 = weibull_quantile(p2, ls2 + cfg.beta2 * shift, lsh2);
            double c = cfg.censor_scale > 0.0 ? cfg.censor_scale * rng.expo()
                                              : std::numeric_limits<double>::infinity();
            ds.y1.push_back(std::min(t1, c));
            ds.y2.push_back(std::min(t2, c));
            ds.d1.push_back(t1 <= c ? 1 : 0);
            ds.d2.push_back(t2 <= c ? 1 : 0);
            if (with_cov) ds.cov[0].push_back(zvals[k]);
        }
    }
    return ds;
}

}  // namespace gencop
