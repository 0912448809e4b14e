#pragma once

#include <optional>
#include <vector>

#include "elm/hamiltonians.hpp"
#include "elm/kernels.hpp"
#include "elm/types.hpp"

namespace elm {

struct SpectrumResult {
    ModelParams params;
    Representation representation;
    std::vector<double> energies_per_particle;  // ascending, full spectrum
    Vec ground_vector;                          // real in both representations
    double degeneracy_tolerance;

    double ground_energy_per_particle() const { return energies_per_particle.front(); }
};

/// Full diagonalization of the model in the requested representation.
SpectrumResult solve(const ModelParams& p, Representation rep, int qubit_cap = kDefaultQubitCap);

/// Ground-state order parameter (<Sz> + N/2) / N, computed in the collective
/// basis. Degenerate ground spaces (gap < 1e-10) contribute the average of
/// <Sz> over an orthonormal basis of the degenerate space, which makes the
/// value basis-independent.
double order_parameter(const ModelParams& p);

struct PathSpec {
    enum class Kind { Path1, Path2, Path3, Custom };
    Kind kind = Kind::Path1;
    int samples = 101;  // >= 2, endpoints included
    // Custom paths fix one parameter and sweep the other over [lo, hi].
    bool sweep_lambda = true;
    double fixed_value = 0.0;
    double lo = 0.0, hi = 1.0;

    static PathSpec path1(int samples = 101);  // alpha = 0, lambda in [0, 1]
    static PathSpec path2(int samples = 101);  // alpha = 1/sqrt(2), lambda in [0, 1]
    static PathSpec path3(int samples = 101);  // lambda = 1, alpha in [0, 1/sqrt(2)]

    /// (lambda, alpha, control value) for sample k.
    std::array<double, 3> point(int n_unused, int k) const;
};

struct PathRow {
    double control;
    std::vector<double> energies_per_particle;  // lowest level_count levels
    double order_parameter;
};

/// Per-sample diagonalization along a path; rows are emitted in control-
/// parameter order regardless of execution order.
std::vector<PathRow> spectrum_along_path(int n, const PathSpec& path, int level_count,
                                         Execution exec = Execution::Parallel);

}  // namespace elm
