#include "elm/spin_algebra.hpp"

#include <cmath>

namespace elm {

namespace {

Mat ladder_up(const CollectiveBasis& b) {
    const int d = b.dim();
    const double s = b.total_spin();
    Mat sp = Mat::Zero(d, d);
    for (int k = 0; k + 1 < d; ++k) {
        const double m = b.m_value(k);
        sp(k + 1, k) = std::sqrt(s * (s + 1) - m * (m + 1));
    }
    return sp;
}

}  // namespace

Mat collective_operator(CollectiveOp kind, const CollectiveBasis& basis) {
    const int d = basis.dim();
    switch (kind) {
        case CollectiveOp::Sz: {
            Mat sz = Mat::Zero(d, d);
            for (int k = 0; k < d; ++k) sz(k, k) = basis.m_value(k);
            return sz;
        }
        case CollectiveOp::Splus:
            return ladder_up(basis);
        case CollectiveOp::Sminus:
            return ladder_up(basis).transpose();
        case CollectiveOp::Sx: {
            Mat sp = ladder_up(basis);
            return 0.5 * (sp + sp.transpose());
        }
    }
    throw std::logic_error("collective_operator: unknown kind");
}

CMat collective_sy(const CollectiveBasis& basis) {
    Mat sp = ladder_up(basis);
    return (sp - sp.transpose()).cast<Complex>() / Complex(0.0, 2.0);
}

namespace {

void check_sites(const std::vector<int>& sites, const std::vector<Axis>& axes, int n) {
    if (sites.size() != axes.size() || sites.empty() || sites.size() > 2)
        throw std::invalid_argument("pauli_string: need 1 or 2 (site, axis) pairs");
    for (int s : sites)
        if (s < 1 || s > n) throw std::invalid_argument("pauli_string: site index out of range");
    if (sites.size() == 2 && sites[0] == sites[1])
        throw std::invalid_argument("pauli_string: duplicate sites");
}

// Action of one Pauli factor on a bit: returns (new bit, amplitude).
// Basis convention: bit 1 = |up>, sigma_z |up> = +|up>.
inline Complex pauli_amp(Axis a, int bit, int& out_bit) {
    switch (a) {
        case Axis::X:
            out_bit = 1 - bit;
            return {1.0, 0.0};
        case Axis::Y:
            out_bit = 1 - bit;
            // sigma_y |down> = -i |up>, sigma_y |up> = +i |down>
            return bit ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
        case Axis::Z:
            out_bit = bit;
            return bit ? Complex(1.0, 0.0) : Complex(-1.0, 0.0);
    }
    out_bit = bit;
    return {0.0, 0.0};
}

}  // namespace

CMat pauli_string(const std::vector<int>& sites, const std::vector<Axis>& axes,
                  const QubitSpace& space) {
    check_sites(sites, axes, space.n);
    const long d = space.dim();
    CMat m = CMat::Zero(d, d);
    for (long col = 0; col < d; ++col) {
        long row = col;
        Complex amp(1.0, 0.0);
        for (std::size_t f = 0; f < sites.size(); ++f) {
            const int bit = QubitSpace::site_bit(row, sites[f], space.n);
            int nb = bit;
            amp *= pauli_amp(axes[f], bit, nb);
            if (nb != bit) row ^= space.flip_mask(sites[f]);
        }
        m(row, col) = amp;
    }
    return m;
}

void add_pauli_term(Mat& h, double coeff, const std::vector<int>& sites,
                    const std::vector<Axis>& axes, const QubitSpace& space) {
    check_sites(sites, axes, space.n);
    int n_y = 0;
    for (Axis a : axes)
        if (a == Axis::Y) ++n_y;
    if (n_y % 2 != 0)
        throw std::invalid_argument("add_pauli_term: odd sigma_y count is not real");
    const long d = space.dim();
    for (long col = 0; col < d; ++col) {
        long row = col;
        Complex amp(coeff, 0.0);
        for (std::size_t f = 0; f < sites.size(); ++f) {
            const int bit = QubitSpace::site_bit(row, sites[f], space.n);
            int nb = bit;
            amp *= pauli_amp(axes[f], bit, nb);
            if (nb != bit) row ^= space.flip_mask(sites[f]);
        }
        h(row, col) += amp.real();
    }
}

void accumulate_pauli_apply(CVec& out, double coeff, const CVec& v, const std::vector<int>& sites,
                            const std::vector<Axis>& axes, const QubitSpace& space) {
    check_sites(sites, axes, space.n);
    const long d = space.dim();
    for (long col = 0; col < d; ++col) {
        const Complex amp_in = v(col);
        if (amp_in == Complex(0.0, 0.0)) continue;
        long row = col;
        Complex amp(coeff, 0.0);
        for (std::size_t f = 0; f < sites.size(); ++f) {
            const int bit = QubitSpace::site_bit(row, sites[f], space.n);
            int nb = bit;
            amp *= pauli_amp(axes[f], bit, nb);
            if (nb != bit) row ^= space.flip_mask(sites[f]);
        }
        out(row) += amp * amp_in;
    }
}

CVec apply_pauli_string(const CVec& v, const std::vector<int>& sites,
                        const std::vector<Axis>& axes, const QubitSpace& space) {
    CVec out = CVec::Zero(v.size());
    accumulate_pauli_apply(out, 1.0, v, sites, axes, space);
    return out;
}

double pauli_expectation(const CVec& v, const std::vector<int>& sites,
                         const std::vector<Axis>& axes, const QubitSpace& space) {
    return v.dot(apply_pauli_string(v, sites, axes, space)).real();
}

RealSymmetricMatrix::RealSymmetricMatrix(Mat m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
        throw std::invalid_argument("RealSymmetricMatrix: matrix must be square");
    const double defect = max_abs(Mat(m_ - m_.transpose()));
    if (defect > kSymmetryTol)
        throw std::invalid_argument("RealSymmetricMatrix: asymmetry " + std::to_string(defect) +
                                    " exceeds tolerance");
    // remove the representational asymmetry entirely
    m_ = 0.5 * (m_ + m_.transpose().eval());
}

EighResult eigh(const RealSymmetricMatrix& h) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(h.mat());
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: solver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double UnitaryMatrix::unitarity_defect() const {
    CMat g = u.adjoint() * u;
    g.diagonal().array() -= Complex(1.0, 0.0);
    return max_abs(g);
}

UnitaryMatrix propagator(const RealSymmetricMatrix& h, double t) {
    const EighResult e = eigh(h);
    const Eigen::Index d = h.dim();
    CVec phases(d);
    for (Eigen::Index k = 0; k < d; ++k)
        phases(k) = std::exp(Complex(0.0, -e.eigenvalues(k) * t));
    CMat u = e.eigenvectors.cast<Complex>() * phases.asDiagonal() *
             e.eigenvectors.transpose().cast<Complex>();
    return {std::move(u), Provenance::Exact, 0};
}

CVec evolve(const EighResult& eig, const CVec& v, double t) {
    CVec coeff = eig.eigenvectors.transpose().cast<Complex>() * v;
    for (Eigen::Index k = 0; k < coeff.size(); ++k)
        coeff(k) *= std::exp(Complex(0.0, -eig.eigenvalues(k) * t));
    return eig.eigenvectors.cast<Complex>() * coeff;
}

}  // namespace elm
