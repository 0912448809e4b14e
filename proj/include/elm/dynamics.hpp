#pragma once

#include <vector>

#include "elm/hamiltonians.hpp"
#include "elm/spin_algebra.hpp"
#include "elm/types.hpp"

namespace elm {

// The three non-commuting groups of the compact form. g0 is tracked apart and
// only contributes the global phase exp(-i g0 t).
struct TrotterSplit {
    Mat h1;  // gz Sz + gzz Sz^2
    Mat h2;  // gx Sx + gxx Sx^2
    Mat h3;  // gxz (Sx + Sz)^2
    double g0;

    static TrotterSplit build(const ModelParams& p, Representation rep,
                              int qubit_cap = kDefaultQubitCap);
};

/// First-order product formula, per step U = e^{-iH1 dt} e^{-iH2 dt} e^{-iH3 dt}
/// (matrix product; the H3 factor acts first on states), raised to n_T steps.
/// Includes the global phase from g0 so that it converges to the exact U.
UnitaryMatrix trotter_propagator(const ModelParams& p, double t, int n_trotter,
                                 Representation rep, int qubit_cap = kDefaultQubitCap);

UnitaryMatrix exact_propagator(const ModelParams& p, double t, Representation rep,
                               int qubit_cap = kDefaultQubitCap);

enum class FidelityMode {
    Overlap,   // |<phi0| U_T^dag U |phi0>|^2 : fidelity of the evolved states
    Verbatim,  // |<phi0| U_T U |phi0>|^2 : the printed formula, no dagger
};

double trotter_fidelity(const ModelParams& p, double t, int n_trotter, const CVec& phi0,
                        Representation rep, FidelityMode mode = FidelityMode::Overlap,
                        int qubit_cap = kDefaultQubitCap);

/// Hardware budget f = (f_s)^(6 N n_T) (f_MS)^(3 n_T).
double gate_budget(int n, int n_trotter, double f_single = 0.999999, double f_ms = 0.999);

struct FidelityReport {
    std::vector<double> times;
    std::vector<int> trotter_steps;
    // fidelity[i][j] = F(times[i], trotter_steps[j])
    std::vector<std::vector<double>> fidelity;
    std::vector<double> budgets;  // gate_budget per trotter_steps entry
};

FidelityReport fidelity_report(const ModelParams& p, const std::vector<double>& times,
                               const std::vector<int>& steps, const CVec& phi0,
                               Representation rep, FidelityMode mode = FidelityMode::Overlap);

enum class PropagatorKind { Exact, Trotter };

struct DynamicsTrace {
    std::string observable;
    std::vector<double> times;
    std::vector<double> values;
};

/// Default initial state of the Sz trace: (|m=-S> + |m=0> + |m=+S>)/sqrt(3)
/// (collective basis; N must be even for the m=0 component).
CVec sz_trace_default_state(int n);

/// <phi(t)| Sz |phi(t)> on the time grid, collective representation.
DynamicsTrace observable_sz_trace(const ModelParams& p, const CVec& phi0,
                                  const std::vector<double>& times, PropagatorKind kind,
                                  int n_trotter = 1);

/// |up down up down ...> product state in the qubit register.
CVec neel_state(int n);

/// C_nu(i,j,t) = <s_nu^i s_nu^j>_t - <s_nu^i>_t <s_nu^j>_t, qubit representation.
DynamicsTrace correlation_trace(const ModelParams& p, Axis nu, int i, int j, const CVec& phi0,
                                const std::vector<double>& times, PropagatorKind kind,
                                int n_trotter = 1, int qubit_cap = kDefaultQubitCap);

}  // namespace elm
