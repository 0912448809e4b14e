#pragma once

#include <string>
#include <variant>
#include <vector>

#include "elm/dynamics.hpp"
#include "elm/types.hpp"

namespace elm {

// Single-qubit rotation R_nu(theta) = exp(i (theta/2) sigma_nu).
struct SqrGate {
    Axis axis;
    int qubit;  // 1-based
    double theta;
};

// Global Molmer-Sorensen block, exp(-i theta Sx^2) on all qubits.
struct MsGate {
    double theta;
};

using GateOp = std::variant<SqrGate, MsGate>;

struct CircuitMeta {
    ModelParams params;
    double t = 0.0;
    int n_trotter = 1;
    std::string generator = "elmlab-1";
};

struct CircuitProgram {
    int n = 0;
    std::vector<GateOp> gates;
    CircuitMeta meta;

    int sqr_count() const;
    int ms_count() const;
};

/// Digital-analog program implementing the first-order product formula for the
/// compact Hamiltonian: per step 6N SQR gates and 3 MS blocks. The simulated
/// program unitary equals trotter_propagator up to a global phase.
CircuitProgram emit_trotter_circuit(const ModelParams& p, double t, int n_trotter,
                                    int qubit_cap = kDefaultQubitCap);

/// Product of the gate unitaries in program order (first gate acts first).
UnitaryMatrix simulate_circuit(const CircuitProgram& program);

struct ResourceEstimate {
    int sqr_count = 0;
    int ms_count = 0;
    double fidelity_budget = 1.0;  // f_s^sqr * f_ms^ms
};

ResourceEstimate resource_estimate(const CircuitProgram& program, double f_single = 0.999999,
                                   double f_ms = 0.999);

/// JSON round-trip; angles survive bit-exactly. Parse failures throw
/// std::runtime_error naming the offending gate index or field.
std::string serialize(const CircuitProgram& program);
CircuitProgram deserialize(const std::string& text);

/// Max deviation between the simulated program and the Trotter propagator
/// after aligning the global phase.
double circuit_trotter_deviation(const CircuitProgram& program,
                                 int qubit_cap = kDefaultQubitCap);

}  // namespace elm
