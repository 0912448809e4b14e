#pragma once

#include <optional>
#include <string>
#include <vector>

#include "elm/bfgs.hpp"
#include "elm/hamiltonians.hpp"
#include "elm/kernels.hpp"
#include "elm/spin_algebra.hpp"
#include "elm/types.hpp"

namespace elm {

enum class PoolKind { Gplus, Gminus, G0, Tplus, Tminus, Uplus, Uminus, Vplus, Vminus, V0 };

// One Pauli-string summand of a pool operator: coeff * sigma_axes(sites).
struct PauliTerm {
    double coeff;
    std::vector<int> sites;
    std::vector<Axis> axes;
};

// Hermitian generator from the one-/two-body pool. Every operator here
// satisfies A^3 = A, so exp(i theta A) = I + (cos theta - 1) A^2 + i sin theta A
// is exact; no eigendecomposition is needed.
struct PoolOperator {
    PoolKind kind;
    std::vector<int> sites;  // 1 or 2 sites, two-body sites ordered j < k
    std::string label;
    std::vector<PauliTerm> terms;

    CVec apply(const CVec& v, const QubitSpace& space) const;
    CVec exp_apply(double theta, const CVec& v, const QubitSpace& space) const;
    /// Dense matrix, for tests and small diagnostics.
    CMat matrix(const QubitSpace& space) const;
};

/// 3N one-body plus 7 C(N,2) two-body operators, in a fixed deterministic order.
std::vector<PoolOperator> build_pool(int n);

/// Computational-basis state minimizing <b|H|b>; ties resolved to the lowest
/// binary index.
CVec reference_state(const ModelParams& p, const Mat& h_qubit);
long reference_index(const Mat& h_qubit);

/// i <v|[H, A]|v>, real by construction for Hermitian H and A.
double gradient(const CVec& state, const Mat& h, const PoolOperator& a, const QubitSpace& space);

struct AnsatzStep {
    int op_index;
    double theta;
};

/// prod_k exp(i theta_k A_k) |ref>, applied left-to-right with k increasing.
CVec apply_ansatz(const CVec& reference, const std::vector<AnsatzStep>& steps,
                  const std::vector<PoolOperator>& pool, const QubitSpace& space);

struct AdaptConfig {
    int max_iterations = 400;
    double gradient_stop = 1e-8;
    double relative_energy_stop = 1e-5;  // used when the exact energy is supplied
    BfgsOptions optimizer{};
    Execution exec = Execution::Parallel;  // pool gradient scan
};

struct AdaptIterationRecord {
    int iteration;
    std::string op_label;
    double max_abs_gradient;
    double energy;
    std::optional<double> relative_error;
    std::string note;  // optimizer annotations, usually empty
};

enum class AdaptStop { GradientConverged, EnergyConverged, MaxIterations };

struct AdaptTrace {
    std::vector<AdaptIterationRecord> records;
    std::vector<AnsatzStep> final_steps;
    CVec reference;
    double final_energy = 0.0;
    AdaptStop stop = AdaptStop::MaxIterations;
};

/// Full ADAPT-VQE driver: grows the ansatz by the largest-|gradient| pool
/// operator (lowest index on ties), re-optimizes all angles each iteration.
AdaptTrace run_adapt(const ModelParams& p, const AdaptConfig& config,
                     std::optional<double> exact_energy = std::nullopt,
                     int qubit_cap = kDefaultQubitCap);

/// Energy and analytic gradient of <ref| ansatz^dag H ansatz |ref> with
/// respect to all angles (reverse-mode through the operator exponentials).
double ansatz_energy_gradient(const CVec& reference, const std::vector<AnsatzStep>& steps,
                              const Vec& thetas, const Mat& h,
                              const std::vector<PoolOperator>& pool, const QubitSpace& space,
                              Vec& grad_out);

}  // namespace elm
