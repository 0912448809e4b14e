#pragma once

#include <vector>

#include "elm/types.hpp"

namespace elm {

struct SurfacePoint {
    double beta;
    double energy_per_particle;
};

enum class Phase { Symmetric, Broken };

struct PhaseLabel {
    Phase phase;
    bool coexistence;  // lambda_s < lambda < lambda_as and alpha > 0

    int as_int() const { return phase == Phase::Broken ? 1 : 0; }
};

/// Large-N energy per particle,
///   E/N = beta^2/(1+beta^2)^2 [beta^2 (1-(1+a^2) l) - 4 a l beta + (1 - 5 l)].
double energy_surface(double lambda, double alpha, double beta);

/// lambda_c = 1 / (5 + alpha^2)
double critical_lambda(double alpha);
/// lambda_s = (alpha^2 - sqrt(alpha^4 + 10 alpha^2 + 16) + 6) / (alpha^2 + 10)
double spinodal_lambda(double alpha);
/// lambda_as = 1/5
double antispinodal_lambda(double alpha);

/// Symmetric iff lambda < lambda_c(alpha); the boundary is labelled Broken.
PhaseLabel classify_point(double lambda, double alpha);

/// All local minima of the surface over beta in [0, beta_max], refined to
/// |beta| tolerance 1e-8 and sorted by energy.
std::vector<SurfacePoint> minimize_surface(double lambda, double alpha, double beta_max = 5.0);

}  // namespace elm
