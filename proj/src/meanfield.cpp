#include "elm/meanfield.hpp"

#include <algorithm>
#include <cmath>

namespace elm {

double energy_surface(double lambda, double alpha, double beta) {
    const double b2 = beta * beta;
    const double pre = b2 / ((1.0 + b2) * (1.0 + b2));
    return pre * (b2 * (1.0 - (1.0 + alpha * alpha) * lambda) - 4.0 * alpha * lambda * beta +
                  (1.0 - 5.0 * lambda));
}

double critical_lambda(double alpha) { return 1.0 / (5.0 + alpha * alpha); }

double spinodal_lambda(double alpha) {
    const double a2 = alpha * alpha;
    return (a2 - std::sqrt(a2 * a2 + 10.0 * a2 + 16.0) + 6.0) / (a2 + 10.0);
}

double antispinodal_lambda(double /*alpha*/) { return 0.2; }

PhaseLabel classify_point(double lambda, double alpha) {
    const bool symmetric = lambda < critical_lambda(alpha);
    const bool coex =
        alpha > 0.0 && lambda > spinodal_lambda(alpha) && lambda < antispinodal_lambda(alpha);
    return {symmetric ? Phase::Symmetric : Phase::Broken, coex};
}

namespace {

// Golden-section refinement of a bracketed minimum.
double golden_section(double a, double b, double lambda, double alpha, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = energy_surface(lambda, alpha, c);
    double fd = energy_surface(lambda, alpha, d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = energy_surface(lambda, alpha, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = energy_surface(lambda, alpha, d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<SurfacePoint> minimize_surface(double lambda, double alpha, double beta_max) {
    // Dense scan followed by golden-section refinement; the surface is 1-D
    // and cheap, so robustness wins over sophistication.
    constexpr double kStep = 1e-3;
    constexpr double kTol = 1e-9;  // bracket width; well below the 1e-8 contract
    const int m = static_cast<int>(std::round(beta_max / kStep));
    std::vector<SurfacePoint> minima;

    auto f = [&](double b) { return energy_surface(lambda, alpha, b); };

    // interior scan minima
    double fm1 = f(0.0), f0 = f(kStep);
    for (int k = 1; k < m; ++k) {
        const double fp1 = f((k + 1) * kStep);
        if (f0 < fm1 && f0 <= fp1) {
            const double b = golden_section((k - 1) * kStep, (k + 1) * kStep, lambda, alpha, kTol);
            minima.push_back({b, f(b)});
        }
        fm1 = f0;
        f0 = fp1;
    }
    // endpoint beta = 0 counts as a minimum when the surface rises away from it
    if (f(kStep) > f(0.0) || (f(kStep) == f(0.0) && f(2 * kStep) > f(0.0)))
        minima.push_back({0.0, f(0.0)});
    // right endpoint, analogous
    if (f(beta_max - kStep) > f(beta_max)) minima.push_back({beta_max, f(beta_max)});

    std::sort(minima.begin(), minima.end(),
              [](const SurfacePoint& a, const SurfacePoint& b) {
                  return a.energy_per_particle < b.energy_per_particle;
              });
    return minima;
}

}  // namespace elm
