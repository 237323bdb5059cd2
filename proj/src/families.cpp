#include "gencop/families.hpp"

#include <cmath>
#include <limits>

namespace gencop {

const char* family_name(Family f) {
    switch (f) {
        case Family::clayton: return "clayton";
        case Family::frank: return "frank";
        case Family::gumbel: return "gumbel";
        case Family::joe: return "joe";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "clayton") return Family::clayton;
    if (name == "frank") return Family::frank;
    if (name == "gumbel") return Family::gumbel;
    if (name == "joe") return Family::joe;
    throw validation_error("unknown copula family: " + name);
}

double inv_generator(Family f, double t, double alpha) {
    switch (f) {
        case Family::clayton:
            return std::pow(t, -alpha) - 1.0;
        case Family::frank:
            return -std::log(std::expm1(-alpha * t) / std::expm1(-alpha));
        case Family::gumbel:
            return std::pow(-std::log(t), alpha);
        case Family::joe:
            return -std::log(-std::expm1(alpha * std::log1p(-t)));
    }
    return 0.0;
}

double kendall_K(Family f, double nu, double alpha) {
    if (nu >= 1.0) return 1.0;
    if (nu <= 0.0) return 0.0;
    switch (f) {
        case Family::clayton:
            return nu + nu * (1.0 - std::pow(nu, alpha)) / alpha;
        case Family::gumbel:
            return nu - nu * std::log(nu) / alpha;
        case Family::frank: {
            double e = std::expm1(-alpha * nu);  // e^{-a nu} - 1
            return nu + std::log(e / std::expm1(-alpha)) * e / (alpha * (e + 1.0));
        }
        case Family::joe: {
            // lambda = w ln(1-A)(1-A)/(aA) <= 0, A = w^a, w = 1-nu; stable for large a
            double w = 1.0 - nu;
            double A = std::exp(alpha * std::log(w));
            if (A < 1e-300) return nu + w / alpha;  // ln(1-A)(1-A)/A -> -1
            return nu - w * std::log1p(-A) * (1.0 - A) / (alpha * A);
        }
    }
    return nu;
}

double lambda_fn(Family f, double nu, double alpha) { return nu - kendall_K(f, nu, alpha); }

namespace {

// adaptive Simpson on [a,b]
double simpson(double (*g)(double), double a, double b, double fa, double fm, double fb,
               double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = g(lm), frm = g(rm);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(g, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
           simpson(g, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

double debye_integrand(double t) {
    if (std::fabs(t) < 1e-12) return 1.0;  // t/(e^t-1) -> 1
    return t / std::expm1(t);
}

// tau for Joe: 1 + 4 int_0^1 lambda(nu) d nu, Simpson on 4001-point grid;
// lambda vanishes at both endpoints
double tau_joe_numeric(double alpha) {
    const int m = 4000;  // even
    double h = 1.0 / m;
    double s = 0.0;
    for (int i = 1; i < m; ++i) {
        double w = (i % 2 == 1) ? 4.0 : 2.0;
        s += w * lambda_fn(Family::joe, i * h, alpha);
    }
    return 1.0 + 4.0 * (h / 3.0) * s;
}

// monotone-increasing scalar root find by bisection
template <class F>
double bisect(F f, double lo, double hi, double target, double xtol) {
    double flo = f(lo) - target, fhi = f(hi) - target;
    if (flo > 0.0 || fhi < 0.0) throw tau_out_of_range("tau not bracketed by alpha range");
    for (int it = 0; it < 200 && hi - lo > xtol * (1.0 + std::fabs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) - target <= 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double debye1(double x) {
    if (x == 0.0) return 1.0;
    double ax = std::fabs(x);
    double fa = debye_integrand(0.0), fb = debye_integrand(ax);
    double fm = debye_integrand(0.5 * ax);
    double I = simpson(debye_integrand, 0.0, ax, fa, fm, fb, 1e-12, 48);
    double d = I / ax;
    // D1(-x) = D1(x) + x/2
    return x > 0.0 ? d : d - x / 2.0;
}

double alpha_to_tau(Family f, double alpha) {
    switch (f) {
        case Family::clayton:
            if (alpha <= 0.0) throw tau_out_of_range("clayton needs alpha > 0");
            return alpha / (alpha + 2.0);
        case Family::gumbel:
            if (alpha < 1.0) throw tau_out_of_range("gumbel needs alpha >= 1");
            return 1.0 - 1.0 / alpha;
        case Family::frank: {
            if (alpha == 0.0) return 0.0;
            return 1.0 - 4.0 / alpha * (1.0 - debye1(alpha));
        }
        case Family::joe:
            if (alpha < 1.0) throw tau_out_of_range("joe needs alpha >= 1");
            return tau_joe_numeric(alpha);
    }
    return 0.0;
}

double tau_to_alpha(Family f, double tau) {
    switch (f) {
        case Family::clayton:
            if (tau <= 0.0 || tau >= 1.0)
                throw tau_out_of_range("clayton reaches tau in (0,1)");
            return 2.0 * tau / (1.0 - tau);
        case Family::gumbel:
            if (tau < 0.0 || tau >= 1.0)
                throw tau_out_of_range("gumbel reaches tau in [0,1)");
            return 1.0 / (1.0 - tau);
        case Family::frank: {
            if (std::fabs(tau) < 1e-12) throw tau_out_of_range("frank tau ~ 0");
            if (std::fabs(tau) >= 1.0) throw tau_out_of_range("frank reaches |tau| < 1");
            double a = bisect([](double v) { return alpha_to_tau(Family::frank, v); },
                              1e-10, 500.0, std::fabs(tau), 1e-10);
            return tau > 0.0 ? a : -a;
        }
        case Family::joe:
            if (tau <= 0.0 || tau >= alpha_to_tau(Family::joe, 1000.0))
                throw tau_out_of_range("joe tau outside reachable range");
            return bisect([](double v) { return alpha_to_tau(Family::joe, v); },
                          1.0, 1000.0, tau, 1e-10);
    }
    return 0.0;
}

std::vector<double> kendall_K_grid(Family f, const std::vector<double>& nu, double alpha) {
    std::vector<double> out(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i) out[i] = kendall_K(f, nu[i], alpha);
    return out;
}

} // namespace gencop
