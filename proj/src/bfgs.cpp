#include "elm/bfgs.hpp"

#include <cmath>
#include <limits>

namespace elm {

namespace {

struct LinePoint {
    double a, f, g;  // step, value, directional derivative
};

// Cubic interpolation minimizer for the zoom stage; falls back to bisection.
double interp_step(const LinePoint& lo, const LinePoint& hi) {
    const double d1 = lo.g + hi.g - 3.0 * (lo.f - hi.f) / (lo.a - hi.a);
    const double disc = d1 * d1 - lo.g * hi.g;
    if (disc >= 0.0) {
        const double d2 = std::copysign(std::sqrt(disc), hi.a - lo.a);
        double a = hi.a - (hi.a - lo.a) * (hi.g + d2 - d1) / (hi.g - lo.g + 2.0 * d2);
        const double lo_a = std::min(lo.a, hi.a), hi_a = std::max(lo.a, hi.a);
        const double margin = 0.1 * (hi_a - lo_a);
        if (std::isfinite(a) && a > lo_a + margin && a < hi_a - margin) return a;
    }
    return 0.5 * (lo.a + hi.a);
}

}  // namespace

BfgsResult bfgs_minimize(const std::function<double(const Vec&, Vec&)>& fg, Vec x0,
                         const BfgsOptions& opt) {
    const Eigen::Index n = x0.size();
    BfgsResult res;
    res.x = std::move(x0);
    if (n == 0) {
        Vec g0(0);
        res.f = fg(res.x, g0);
        res.evaluations = 1;
        res.converged = true;
        return res;
    }

    Vec g(n);
    double f = fg(res.x, g);
    int evals = 1;
    Mat hinv = Mat::Identity(n, n);
    bool first_update = true;

    auto phi = [&](const Vec& x, const Vec& dir, double a, Vec& gout, double& deriv) {
        const Vec xt = x + a * dir;
        const double v = fg(xt, gout);
        ++evals;
        deriv = gout.dot(dir);
        return v;
    };

    while (evals < opt.max_evaluations) {
        if (g.cwiseAbs().maxCoeff() <= opt.grad_tol) {
            res.converged = true;
            break;
        }
        Vec dir = -(hinv * g);
        double d0 = dir.dot(g);
        if (!(d0 < 0.0)) {  // not a descent direction: reset
            hinv.setIdentity();
            dir = -g;
            d0 = dir.dot(g);
            if (!(d0 < 0.0)) {
                res.note = "gradient produced no descent direction";
                break;
            }
        }

        // strong Wolfe line search (bracket + zoom)
        const double f0 = f;
        LinePoint prev{0.0, f0, d0};
        double a = 1.0;
        const double amax = 1e4;
        Vec gtrial(n);
        bool accepted = false;
        double fa = f0, da = d0;
        LinePoint blo{}, bhi{};
        bool bracketed = false;

        for (int it = 0; it < 30 && !accepted && !bracketed; ++it) {
            double deriv;
            fa = phi(res.x, dir, a, gtrial, deriv);
            da = deriv;
            if (fa > f0 + opt.c1 * a * d0 || (it > 0 && fa >= prev.f)) {
                blo = prev;
                bhi = {a, fa, da};
                bracketed = true;
                break;
            }
            if (std::abs(da) <= -opt.c2 * d0) {
                accepted = true;
                break;
            }
            if (da >= 0.0) {
                blo = {a, fa, da};
                bhi = prev;
                bracketed = true;
                break;
            }
            prev = {a, fa, da};
            a = std::min(2.0 * a, amax);
            if (a >= amax) break;
        }

        if (bracketed) {
            for (int it = 0; it < 40 && !accepted; ++it) {
                const double aj = interp_step(blo, bhi);
                double deriv;
                const double fj = phi(res.x, dir, aj, gtrial, deriv);
                if (fj > f0 + opt.c1 * aj * d0 || fj >= blo.f) {
                    bhi = {aj, fj, deriv};
                } else {
                    if (std::abs(deriv) <= -opt.c2 * d0) {
                        a = aj;
                        fa = fj;
                        da = deriv;
                        accepted = true;
                        break;
                    }
                    if (deriv * (bhi.a - blo.a) >= 0.0) bhi = blo;
                    blo = {aj, fj, deriv};
                }
                if (std::abs(bhi.a - blo.a) < 1e-16 * std::max(1.0, std::abs(blo.a))) {
                    // interval collapsed; take the sufficient-decrease point
                    a = blo.a;
                    fa = blo.f;
                    da = blo.g;
                    accepted = blo.a > 0.0 && blo.f <= f0 + opt.c1 * blo.a * d0;
                    break;
                }
            }
        }

        if (!accepted || !(fa < f0) || !std::isfinite(fa)) {
            if (accepted && std::isfinite(fa) && fa < f0) {
                // Armijo-only fallback keeps the sufficient-decrease guarantee
                res.note = "line search fell back to sufficient decrease";
            } else if (g.cwiseAbs().maxCoeff() <= opt.stall_grad_tol) {
                // no representable decrease left; the iterate is at the floor
                res.converged = true;
                res.note = "converged at the line-search floor";
                break;
            } else {
                res.note = "line search failed";
                break;
            }
        }

        const Vec s = a * dir;
        Vec gnew(n);
        // gtrial already holds the gradient at the accepted point
        gnew = gtrial;
        const Vec y = gnew - g;
        const double sy = s.dot(y);
        res.x += s;
        f = fa;
        g = gnew;
        if (sy > 1e-14 * s.norm() * y.norm()) {
            if (first_update) {
                hinv *= sy / y.squaredNorm();
                first_update = false;
            }
            const double rho = 1.0 / sy;
            const Mat i = Mat::Identity(n, n);
            const Mat a1 = i - rho * s * y.transpose();
            hinv = a1 * hinv * a1.transpose() + rho * s * s.transpose();
        }
    }

    res.f = f;
    res.evaluations = evals;
    if (!res.converged && g.cwiseAbs().maxCoeff() <= opt.grad_tol) res.converged = true;
    return res;
}

}  // namespace elm
