#include "elm/dynamics.hpp"

#include <cmath>

namespace elm {

TrotterSplit TrotterSplit::build(const ModelParams& p, Representation rep, int qubit_cap) {
    p.validate();
    const CompactCoefficients c = compact_coefficients(p);
    Mat sz, sx;
    if (rep == Representation::Collective) {
        const CollectiveBasis basis(p.n);
        sz = collective_operator(CollectiveOp::Sz, basis);
        sx = collective_operator(CollectiveOp::Sx, basis);
    } else {
        if (p.n > qubit_cap)
            throw std::invalid_argument("TrotterSplit: N exceeds the qubit cap");
        const QubitSpace space(p.n);
        sz = qubit_collective_sz(space);
        sx = qubit_collective_sx(space);
    }
    const Mat b = sx + sz;
    return {c.gz * sz + c.gzz * (sz * sz), c.gx * sx + c.gxx * (sx * sx), c.gxz * (b * b), c.g0};
}

namespace {

CMat herm_exp(const Mat& h, double t) {
    const EighResult e = eigh(RealSymmetricMatrix(h));
    CVec phases(e.eigenvalues.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k)
        phases(k) = std::exp(Complex(0.0, -e.eigenvalues(k) * t));
    return e.eigenvectors.cast<Complex>() * phases.asDiagonal() *
           e.eigenvectors.transpose().cast<Complex>();
}

}  // namespace

UnitaryMatrix trotter_propagator(const ModelParams& p, double t, int n_trotter,
                                 Representation rep, int qubit_cap) {
    if (n_trotter < 1) throw std::invalid_argument("trotter_propagator: n_T must be >= 1");
    const TrotterSplit split = TrotterSplit::build(p, rep, qubit_cap);
    const double dt = t / n_trotter;
    const CMat step = herm_exp(split.h1, dt) * herm_exp(split.h2, dt) * herm_exp(split.h3, dt);
    CMat u = CMat::Identity(step.rows(), step.cols());
    for (int k = 0; k < n_trotter; ++k) u = step * u;
    u *= std::exp(Complex(0.0, -split.g0 * t));
    return {std::move(u), Provenance::Trotter, n_trotter};
}

UnitaryMatrix exact_propagator(const ModelParams& p, double t, Representation rep,
                               int qubit_cap) {
    const RealSymmetricMatrix h =
        rep == Representation::Collective ? elm_collective(p) : elm_qubit(p, qubit_cap);
    return propagator(h, t);
}

double trotter_fidelity(const ModelParams& p, double t, int n_trotter, const CVec& phi0,
                        Representation rep, FidelityMode mode, int qubit_cap) {
    if (std::abs(phi0.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("trotter_fidelity: phi0 is not normalized");
    const CMat u = exact_propagator(p, t, rep, qubit_cap).u;
    const CMat ut = trotter_propagator(p, t, n_trotter, rep, qubit_cap).u;
    Complex amp;
    if (mode == FidelityMode::Overlap)
        amp = (ut * phi0).dot(u * phi0);  // <U_T phi0 | U phi0>
    else
        amp = phi0.dot(ut * (u * phi0));  // <phi0 | U_T U phi0>
    return std::norm(amp);
}

double gate_budget(int n, int n_trotter, double f_single, double f_ms) {
    if (n_trotter < 0) throw std::invalid_argument("gate_budget: n_T must be >= 0");
    if (f_single <= 0.0 || f_single > 1.0 || f_ms <= 0.0 || f_ms > 1.0)
        throw std::invalid_argument("gate_budget: fidelities must lie in (0, 1]");
    return std::pow(std::pow(f_single, 6.0 * n) * std::pow(f_ms, 3.0), n_trotter);
}

FidelityReport fidelity_report(const ModelParams& p, const std::vector<double>& times,
                               const std::vector<int>& steps, const CVec& phi0,
                               Representation rep, FidelityMode mode) {
    FidelityReport rep_out;
    rep_out.times = times;
    rep_out.trotter_steps = steps;
    rep_out.fidelity.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        rep_out.fidelity[i].resize(steps.size());
        for (std::size_t j = 0; j < steps.size(); ++j)
            rep_out.fidelity[i][j] = trotter_fidelity(p, times[i], steps[j], phi0, rep, mode);
    }
    for (int s : steps) rep_out.budgets.push_back(gate_budget(p.n, s));
    return rep_out;
}

CVec sz_trace_default_state(int n) {
    if (n % 2 != 0)
        throw std::invalid_argument("sz_trace_default_state: needs even N for the m=0 component");
    CVec v = CVec::Zero(n + 1);
    const double a = 1.0 / std::sqrt(3.0);
    v(0) = a;       // m = -S
    v(n / 2) = a;   // m = 0
    v(n) = a;       // m = +S
    return v;
}

namespace {

// Applies the requested propagator family over the time grid, calling
// visit(t_index, evolved state).
template <typename F>
void sweep_states(const Mat& h_full, const TrotterSplit* split, const CVec& phi0,
                  const std::vector<double>& times, PropagatorKind kind, int n_trotter,
                  F&& visit) {
    if (kind == PropagatorKind::Exact) {
        const EighResult e = eigh(RealSymmetricMatrix(h_full));
        for (std::size_t i = 0; i < times.size(); ++i) visit(i, evolve(e, phi0, times[i]));
        return;
    }
    const EighResult e1 = eigh(RealSymmetricMatrix(split->h1));
    const EighResult e2 = eigh(RealSymmetricMatrix(split->h2));
    const EighResult e3 = eigh(RealSymmetricMatrix(split->h3));
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double dt = times[i] / n_trotter;
        CVec v = phi0;
        for (int s = 0; s < n_trotter; ++s)
            v = evolve(e1, evolve(e2, evolve(e3, v, dt), dt), dt);
        // global phase from g0 cancels in every expectation value; applied for
        // consistency with trotter_propagator
        v *= std::exp(Complex(0.0, -split->g0 * times[i]));
        visit(i, std::move(v));
    }
}

}  // namespace

DynamicsTrace observable_sz_trace(const ModelParams& p, const CVec& phi0,
                                  const std::vector<double>& times, PropagatorKind kind,
                                  int n_trotter) {
    p.validate();
    if (std::abs(phi0.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("observable_sz_trace: phi0 is not normalized");
    const CollectiveBasis basis(p.n);
    const Mat sz = collective_operator(CollectiveOp::Sz, basis);
    const Mat h = elm_collective(p).mat();
    TrotterSplit split;
    if (kind == PropagatorKind::Trotter)
        split = TrotterSplit::build(p, Representation::Collective);

    DynamicsTrace tr;
    tr.observable = "sz";
    tr.times = times;
    tr.values.resize(times.size());
    sweep_states(h, &split, phi0, times, kind, n_trotter, [&](std::size_t i, const CVec& v) {
        // <v|Sz|v> with real Sz: split into real and imaginary parts
        tr.values[i] = v.real().dot(sz * v.real()) + v.imag().dot(sz * v.imag());
    });
    return tr;
}

CVec neel_state(int n) {
    const QubitSpace space(n);
    long idx = 0;
    for (int site = 1; site <= n; ++site)
        if (site % 2 == 1) idx |= space.flip_mask(site);  // odd sites up
    CVec v = CVec::Zero(space.dim());
    v(idx) = Complex(1.0, 0.0);
    return v;
}

DynamicsTrace correlation_trace(const ModelParams& p, Axis nu, int i, int j, const CVec& phi0,
                                const std::vector<double>& times, PropagatorKind kind,
                                int n_trotter, int qubit_cap) {
    p.validate();
    if (i == j) throw std::invalid_argument("correlation_trace: i and j must differ");
    const QubitSpace space(p.n);
    if (i < 1 || i > p.n || j < 1 || j > p.n)
        throw std::invalid_argument("correlation_trace: site out of range");
    if (std::abs(phi0.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("correlation_trace: phi0 is not normalized");

    const Mat h = elm_qubit(p, qubit_cap).mat();
    TrotterSplit split;
    if (kind == PropagatorKind::Trotter)
        split = TrotterSplit::build(p, Representation::Qubit, qubit_cap);

    const char axis_name = nu == Axis::X ? 'x' : (nu == Axis::Y ? 'y' : 'z');
    DynamicsTrace tr;
    tr.observable = std::string("c") + axis_name + "(" + std::to_string(i) + "," +
                    std::to_string(j) + ")";
    tr.times = times;
    tr.values.resize(times.size());

    sweep_states(h, &split, phi0, times, kind, n_trotter, [&](std::size_t k, const CVec& v) {
        const double pair = pauli_expectation(v, {i, j}, {nu, nu}, space);
        const double si = pauli_expectation(v, {i}, {nu}, space);
        const double sj = pauli_expectation(v, {j}, {nu}, space);
        tr.values[k] = pair - si * sj;
    });
    return tr;
}

}  // namespace elm
