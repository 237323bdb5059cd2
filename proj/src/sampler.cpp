#include "gencop/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gencop/errors.hpp"

namespace gencop {

double rstable_pos(double beta, RngStream& rng) {
    // positive stable, LT e^{-s^beta}, beta in (0,1)
    double V = rng.uniform(0.0, std::numbers::pi);
    double W = rng.expo();
    double a = std::sin(beta * V) / std::pow(std::sin(V), 1.0 / beta);
    double b = std::pow(std::sin((1.0 - beta) * V) / W, (1.0 - beta) / beta);
    return a * b;
}

double rlogseries(double p, RngStream& rng) {
    double h = std::log1p(-p);
    double u2 = rng.uniform();
    if (u2 > p) return 1.0;
    double u1 = rng.uniform();
    double q = -std::expm1(u1 * h);  // 1-(1-p)^{u1}
    if (u2 < q * q) return std::floor(1.0 + std::log(u2) / std::log(q));
    if (u2 > q) return 1.0;
    return 2.0;
}

double rsibuya(double beta, RngStream& rng) {
    double u = rng.uniform();
    if (u <= beta) return 1.0;
    double xmax = 1.0 / 2.220446049250313e-16;
    double Ginv = std::pow((1.0 - u) * std::exp(std::lgamma(1.0 - beta)), -1.0 / beta);
    double fG = std::floor(Ginv);
    if (Ginv > xmax) return fG;
    double lB = std::lgamma(fG) + std::lgamma(1.0 - beta) - std::lgamma(fG + 1.0 - beta);
    return (1.0 - u) < 1.0 / (fG * std::exp(lB)) ? std::ceil(Ginv) : fG;
}

double psi_family(Family f, double t, double alpha) {
    switch (f) {
        case Family::clayton: return std::pow(1.0 + t, -1.0 / alpha);
        case Family::gumbel: return std::exp(-std::pow(t, 1.0 / alpha));
        case Family::frank: return -std::log1p(std::expm1(-alpha) * std::exp(-t)) / alpha;
        case Family::joe: return 1.0 - std::pow(-std::expm1(-t), 1.0 / alpha);
    }
    throw validation_error("unknown family");
}

void mo_sample(Family f, double alpha, std::size_t n, RngStream& rng, std::vector<double>& u1,
               std::vector<double>& u2) {
    if (alpha <= 0.0 || ((f == Family::gumbel || f == Family::joe) && alpha < 1.0))
        throw validation_error("mo_sample: alpha outside the frailty range");
    u1.resize(n);
    u2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double th;
        switch (f) {
            case Family::clayton: th = rng.gamma(1.0 / alpha); break;
            case Family::gumbel: th = rstable_pos(1.0 / alpha, rng); break;
            case Family::frank: th = rlogseries(-std::expm1(-alpha), rng); break;
            default: th = rsibuya(1.0 / alpha, rng); break;
        }
        u1[i] = psi_family(f, rng.expo() / th, alpha);
        u2[i] = psi_family(f, rng.expo() / th, alpha);
    }
}

namespace {

constexpr int TALBOT_M = 64;

// fixed-Talbot contour; accurate for smooth transforms, useless where the
// deformed contour hits exponential growth
double talbot(const laplace_fn& L, double t) {
    double r = 2.0 * TALBOT_M / (5.0 * t);
    std::complex<double> s = 0.5 * L(std::complex<double>(r, 0.0)) * std::exp(r * t);
    double acc = s.real();
    for (int k = 1; k < TALBOT_M; ++k) {
        double th = k * std::numbers::pi / TALBOT_M;
        double cot = 1.0 / std::tan(th);
        std::complex<double> sk(r * th * cot, r * th);
        double sig = th + (th * cot - 1.0) * cot;
        std::complex<double> term =
            std::exp(t * sk) * L(sk) * std::complex<double>(1.0, sig);
        acc += term.real();
    }
    return r / TALBOT_M * acc;
}

// Abate-Whitt EULER on a vertical contour: bounded for probability
// transforms; slow transitions (~1% of t) around atoms instead of blowups
constexpr double EULER_A = 25.0;
constexpr int EULER_NE = 400, EULER_ME = 21;

double euler(const laplace_fn& L, double t) {
    static const std::vector<double> wbin = [] {
        std::vector<double> w(EULER_ME + 1);
        double scale = std::pow(2.0, -EULER_ME);
        double c = 1.0;
        for (int j = 0; j <= EULER_ME; ++j) {
            w[j] = c * scale;
            c = c * (EULER_ME - j) / (j + 1.0);
        }
        return w;
    }();
    double a = EULER_A / (2.0 * t);
    double s = 0.5 * L(std::complex<double>(a, 0.0)).real();
    double acc = 0.0;
    double sign = -1.0;
    for (int k = 1; k <= EULER_NE + EULER_ME; ++k) {
        s += sign * L(std::complex<double>(a, k * std::numbers::pi / t)).real();
        sign = -sign;
        if (k >= EULER_NE) acc += wbin[k - EULER_NE] * s;
    }
    return std::exp(EULER_A / 2.0) / t * acc;
}

}  // namespace

double lt_invert_cdf(const laplace_fn& L, double t) {
    if (t <= 0.0) return 0.0;
    auto Ls = [&](std::complex<double> s) { return L(s) / s; };
    double v = talbot(Ls, t);
    double w = euler(Ls, t);
    // talbot-64 carries a ~1e-5 round-off floor in doubles (e^{rt} ~ 1e11)
    // and rings over an O(1)-wide zone around atoms; the euler sum referees
    if (!std::isfinite(v) || std::abs(v - w) > 1e-4) v = w;
    return v;
}

double lt_invert_density(const laplace_fn& L, double t) {
    if (t <= 0.0) return 0.0;
    double v = talbot(L, t);
    return std::isfinite(v) ? v : euler(L, t);
}

std::vector<double> rlaptrans(const laplace_fn& L, std::size_t n, RngStream& rng, double tol) {
    std::vector<double> u(n);
    for (auto& ui : u) ui = rng.uniform();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return u[a] < u[b]; });

    auto F = [&](double t) { return lt_invert_cdf(L, t); };

    double tmax = 1.0;
    double umax = u[order.back()];
    // stop once F saturates at the inversion accuracy: beyond that point the
    // numeric cdf carries no information and doubling could run away
    for (double Ft = F(tmax); Ft < umax && Ft < 1.0 - 1e-9; Ft = F(tmax)) {
        tmax *= 2.0;
        if (tmax > std::ldexp(1.0, 60))
            throw numeric_error("rlaptrans: no upper bound for the cdf bracket");
    }

    std::vector<double> out(n);
    double lo = 0.0, t = tmax / 2.0;
    for (std::size_t k = 0; k < n; ++k) {
        double ui = u[order[k]];
        double a = lo, b = tmax;
        t = std::min(std::max(t, a), b);
        if (!(a < t && t < b)) t = 0.5 * (a + b);
        for (int it = 0; it < 200; ++it) {
            double Ft = F(t);
            if (Ft < ui)
                a = t;
            else
                b = t;
            double f = lt_invert_density(L, t);
            double tn = (std::isfinite(f) && f > 1e-300 && Ft >= 0.0) ? t - (Ft - ui) / f
                                                                      : 0.5 * (a + b);
            if (!(a < tn && tn < b)) tn = 0.5 * (a + b);
            if (std::abs(tn - t) < tol * (1.0 + std::abs(t))) {
                t = tn;
                break;
            }
            t = tn;
        }
        // the quantile is the leftmost crossing inf{t: F(t) >= u}; around an
        // atom the cdf ripples about its plateau and plain bisection can land
        // on a ripple crossing far right of the jump, so walk back while the
        // cdf still clears u (smooth cdfs fail the first step immediately)
        for (;;) {
            double step = 0.01 * (1.0 + std::abs(t));
            if (t - step <= a || F(t - step) < ui) break;
            t -= step;
        }
        out[order[k]] = t;
        lo = t;
    }
    return out;
}

}  // namespace gencop
