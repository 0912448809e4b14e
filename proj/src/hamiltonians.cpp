#include "elm/hamiltonians.hpp"

#include <cmath>

namespace elm {

RealSymmetricMatrix lipkin_collective(const ModelParams& p) {
    p.validate();
    const CollectiveBasis basis(p.n);
    const double s = basis.total_spin();
    const Mat sz = collective_operator(CollectiveOp::Sz, basis);
    const Mat sx = collective_operator(CollectiveOp::Sx, basis);
    const Mat id = Mat::Identity(basis.dim(), basis.dim());
    Mat h = (1.0 - p.lambda) * (s * id + sz) - (4.0 * p.lambda / p.n) * (sx * sx);
    return RealSymmetricMatrix(std::move(h));
}

RealSymmetricMatrix elm_collective(const ModelParams& p) {
    p.validate();
    const CollectiveBasis basis(p.n);
    const double s = basis.total_spin();
    const Mat sz = collective_operator(CollectiveOp::Sz, basis);
    const Mat sx = collective_operator(CollectiveOp::Sx, basis);
    const Mat id = Mat::Identity(basis.dim(), basis.dim());
    const Mat a = s * id + sz;  // S + Sz
    Mat h = lipkin_collective(p).mat() -
            (p.lambda / p.n) *
                (p.alpha * p.alpha * (a * a) - 2.0 * p.alpha * (sx * a + a * sx));
    return RealSymmetricMatrix(std::move(h));
}

CompactCoefficients compact_coefficients(const ModelParams& p) {
    p.validate();
    const double n = p.n, lam = p.lambda, al = p.alpha;
    CompactCoefficients c{};
    c.g0 = (1.0 - lam) * n / 2.0 - lam * al * al * n / 4.0;
    c.gz = 1.0 - (1.0 + al * al) * lam;
    c.gx = 2.0 * al * lam;
    c.gzz = -(al * al + 2.0 * al) * lam / n;
    c.gxx = -(4.0 + 2.0 * al) * lam / n;
    c.gxz = 2.0 * al * lam / n;
    return c;
}

RealSymmetricMatrix assemble_compact(const CompactCoefficients& c, const CollectiveBasis& basis) {
    const Mat sz = collective_operator(CollectiveOp::Sz, basis);
    const Mat sx = collective_operator(CollectiveOp::Sx, basis);
    const Mat id = Mat::Identity(basis.dim(), basis.dim());
    const Mat b = sx + sz;
    Mat h = c.g0 * id + c.gz * sz + c.gx * sx + c.gzz * (sz * sz) + c.gxx * (sx * sx) +
            c.gxz * (b * b);
    return RealSymmetricMatrix(std::move(h));
}

namespace {

void check_cap(int n, int cap) {
    if (n > cap)
        throw std::invalid_argument("qubit Hamiltonian: N exceeds the configured cap");
}

// One- and two-site Pauli sums entering both qubit Hamiltonians.
void add_one_body(Mat& h, double coeff, Axis a, const QubitSpace& q) {
    for (int i = 1; i <= q.n; ++i) add_pauli_term(h, coeff, {i}, {a}, q);
}

void add_pair_terms(Mat& h, double coeff, Axis a, Axis b, const QubitSpace& q) {
    for (int i = 1; i <= q.n; ++i)
        for (int j = i + 1; j <= q.n; ++j) add_pauli_term(h, coeff, {i, j}, {a, b}, q);
}

}  // namespace

RealSymmetricMatrix lipkin_qubit(const ModelParams& p, int cap) {
    p.validate();
    check_cap(p.n, cap);
    const QubitSpace q(p.n);
    const long d = q.dim();
    const double n = p.n, lam = p.lambda, s = 0.5 * n;

    Mat h = Mat::Zero(d, d);
    // (1 - lambda) (S + 1/2 sum sigma_z) with the -lambda constant from
    // (S_+ + S_-)^2 = N + sum_{i<j} [(xx - yy) + (xx + yy)]
    h.diagonal().array() += (1.0 - lam) * s - lam;
    add_one_body(h, (1.0 - lam) * 0.5, Axis::Z, q);
    // -(lambda/N) [ sum (xx - yy) + sum (xx + yy) ]: the sigma_y pairs cancel
    // between the pair-creation and exchange parts but are kept explicit.
    add_pair_terms(h, -lam / n, Axis::X, Axis::X, q);
    add_pair_terms(h, +lam / n, Axis::Y, Axis::Y, q);
    add_pair_terms(h, -lam / n, Axis::X, Axis::X, q);
    add_pair_terms(h, -lam / n, Axis::Y, Axis::Y, q);
    return RealSymmetricMatrix(std::move(h));
}

RealSymmetricMatrix elm_qubit(const ModelParams& p, int cap) {
    p.validate();
    check_cap(p.n, cap);
    const QubitSpace q(p.n);
    const double n = p.n, lam = p.lambda, al = p.alpha, s = 0.5 * n;

    Mat h = lipkin_qubit(p, cap).mat();
    // -(lambda/N) alpha^2 (S + Sz)^2 with Sz = 1/2 sum sigma_z:
    //   (S + Sz)^2 = S^2 + N/4 + S sum sigma_z + 1/2 sum_{i<j} zz
    const double a2 = -lam / n * al * al;
    h.diagonal().array() += a2 * (s * s + n / 4.0);
    add_one_body(h, a2 * s, Axis::Z, q);
    add_pair_terms(h, a2 * 0.5, Axis::Z, Axis::Z, q);
    // +(2 lambda alpha / N) (Sx (S + Sz) + (S + Sz) Sx)
    //   = alpha lambda sum sigma_x + (alpha lambda / N) sum_{i<j} (xz + zx)
    add_one_body(h, al * lam, Axis::X, q);
    const double cxz = al * lam / n;
    add_pair_terms(h, cxz, Axis::X, Axis::Z, q);
    add_pair_terms(h, cxz, Axis::Z, Axis::X, q);
    return RealSymmetricMatrix(std::move(h));
}

Mat qubit_collective_sz(const QubitSpace& space) {
    Mat m = Mat::Zero(space.dim(), space.dim());
    add_one_body(m, 0.5, Axis::Z, space);
    return m;
}

Mat qubit_collective_sx(const QubitSpace& space) {
    Mat m = Mat::Zero(space.dim(), space.dim());
    add_one_body(m, 0.5, Axis::X, space);
    return m;
}

std::pair<double, double> iba_to_elm(const IbaParams& p) {
    return {p.rho, -p.chi * std::sqrt(2.0 / 7.0)};
}

IbaParams elm_to_iba(double lambda, double alpha) {
    return {lambda, -std::sqrt(7.0 / 2.0) * alpha};
}

}  // namespace elm
