#pragma once

#include <string>
#include <vector>

#include "elm/types.hpp"

namespace elm {

// Collective basis |S M> with S = N/2 fixed, ordered by increasing M.
struct CollectiveBasis {
    int n;  // particle count

    explicit CollectiveBasis(int n_particles) : n(n_particles) {
        if (n < 1) throw std::invalid_argument("CollectiveBasis: N must be >= 1");
    }
    double total_spin() const { return 0.5 * n; }
    int dim() const { return n + 1; }
    /// M value of basis index k (k = 0 is M = -S).
    double m_value(int k) const { return -total_spin() + k; }
};

// Computational qubit basis. Index = binary value, qubit 1 is the most
// significant bit, bit value 1 = |up>. Index 0 is |down...down>.
struct QubitSpace {
    int n;  // qubit count

    explicit QubitSpace(int n_qubits) : n(n_qubits) {
        if (n < 1 || n > 30) throw std::invalid_argument("QubitSpace: bad qubit count");
    }
    long dim() const { return 1L << n; }
    /// Bit of `index` belonging to site (1-based): 1 = |up>.
    static int site_bit(long index, int site, int n_qubits) {
        return static_cast<int>((index >> (n_qubits - site)) & 1L);
    }
    long flip_mask(int site) const { return 1L << (n - site); }
};

enum class CollectiveOp { Sz, Splus, Sminus, Sx };

/// Collective spin operator as a real (N+1)x(N+1) matrix in the M-ordered
/// basis. Sy is intrinsically imaginary and provided separately.
Mat collective_operator(CollectiveOp kind, const CollectiveBasis& basis);

/// S_y = (S_+ - S_-) / 2i, returned complex.
CMat collective_sy(const CollectiveBasis& basis);

enum class Axis { X, Y, Z };

/// Tensor-product Pauli operator acting on the given distinct sites (1-based),
/// identity elsewhere. One or two sites.
CMat pauli_string(const std::vector<int>& sites, const std::vector<Axis>& axes,
                  const QubitSpace& space);

/// Adds coeff * (pauli string) to a dense real accumulator without forming the
/// full string matrix. Only strings with a real matrix are accepted here
/// (no single sigma_y factors; sigma_y pairs are fine).
void add_pauli_term(Mat& h, double coeff, const std::vector<int>& sites,
                    const std::vector<Axis>& axes, const QubitSpace& space);

/// out += coeff * string |v>, sparse application (one target per basis state).
void accumulate_pauli_apply(CVec& out, double coeff, const CVec& v, const std::vector<int>& sites,
                            const std::vector<Axis>& axes, const QubitSpace& space);

/// string |v>.
CVec apply_pauli_string(const CVec& v, const std::vector<int>& sites,
                        const std::vector<Axis>& axes, const QubitSpace& space);

/// <v| string |v>, real part (strings here are Hermitian).
double pauli_expectation(const CVec& v, const std::vector<int>& sites,
                         const std::vector<Axis>& axes, const QubitSpace& space);

// Real symmetric matrix with a checked symmetry invariant.
class RealSymmetricMatrix {
  public:
    static constexpr double kSymmetryTol = 1e-14;

    explicit RealSymmetricMatrix(Mat m);
    const Mat& mat() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

  private:
    Mat m_;
};

struct EighResult {
    Vec eigenvalues;   // ascending
    Mat eigenvectors;  // columns, orthonormal
};

/// Dense symmetric eigendecomposition, H = V diag(w) V^T.
EighResult eigh(const RealSymmetricMatrix& h);

enum class Provenance { Exact, Trotter, Circuit };

struct UnitaryMatrix {
    CMat u;
    Provenance provenance = Provenance::Exact;
    int trotter_steps = 0;  // meaningful for Provenance::Trotter

    /// max |U^dag U - I|
    double unitarity_defect() const;
};

/// U(t) = exp(-i H t) through the eigendecomposition of H.
UnitaryMatrix propagator(const RealSymmetricMatrix& h, double t);

/// exp(-i H t) |v> without forming the unitary.
CVec evolve(const EighResult& eig, const CVec& v, double t);

}  // namespace elm
