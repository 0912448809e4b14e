#pragma once

#include "elm/spin_algebra.hpp"
#include "elm/types.hpp"

namespace elm {

// Coefficients of the compact form
//   H = g0 + gz Sz + gx Sx + gzz Sz^2 + gxx Sx^2 + gxz (Sx + Sz)^2.
struct CompactCoefficients {
    double g0, gz, gx, gzz, gxx, gxz;
};

struct IbaParams {
    double rho;
    double chi;
};

inline constexpr int kDefaultQubitCap = 12;

/// H_L = (1 - lambda)(S + Sz) - (4 lambda / N) Sx^2, collective basis.
RealSymmetricMatrix lipkin_collective(const ModelParams& p);

/// Extended model in the collective basis; equals lipkin_collective at alpha = 0.
RealSymmetricMatrix elm_collective(const ModelParams& p);

CompactCoefficients compact_coefficients(const ModelParams& p);

/// Assembles the compact form as a collective-basis matrix (used to validate
/// the coefficients against elm_collective).
RealSymmetricMatrix assemble_compact(const CompactCoefficients& c, const CollectiveBasis& basis);

/// Qubit-register Hamiltonians, built by summing one- and two-site Pauli
/// terms (dimension 2^N). Throws when N exceeds `cap`.
RealSymmetricMatrix lipkin_qubit(const ModelParams& p, int cap = kDefaultQubitCap);
RealSymmetricMatrix elm_qubit(const ModelParams& p, int cap = kDefaultQubitCap);

/// Collective spin operators in the qubit register: S_nu = (1/2) sum sigma_nu.
Mat qubit_collective_sz(const QubitSpace& space);
Mat qubit_collective_sx(const QubitSpace& space);

/// rho -> lambda, chi -> -sqrt(7/2) alpha.
std::pair<double, double> iba_to_elm(const IbaParams& p);  // returns (lambda, alpha)
IbaParams elm_to_iba(double lambda, double alpha);

}  // namespace elm
