#pragma once

#include <functional>
#include <string>

#include "elm/types.hpp"

namespace elm {

struct BfgsOptions {
    double grad_tol = 1e-10;  // stop when ||g||_inf <= grad_tol
    // a line search that cannot decrease f below rounding still counts as
    // converged when the gradient is at most this large
    double stall_grad_tol = 1e-6;
    int max_evaluations = 4000;
    double c1 = 1e-4;  // sufficient-decrease constant
    double c2 = 0.9;   // curvature constant
};

struct BfgsResult {
    Vec x;
    double f = 0.0;
    int evaluations = 0;
    bool converged = false;
    std::string note;  // line-search failures and similar events
};

/// Minimizes f with analytic gradient. `fg` returns the value and writes the
/// gradient. Inverse-Hessian BFGS with a strong-Wolfe line search; the first
/// accepted step always satisfies sufficient decrease.
BfgsResult bfgs_minimize(const std::function<double(const Vec&, Vec&)>& fg, Vec x0,
                         const BfgsOptions& opt = {});

}  // namespace elm
