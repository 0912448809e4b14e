#include "elm/adapt_vqe.hpp"

#include <cmath>

namespace elm {

namespace {

CVec apply_real_matrix(const Mat& h, const CVec& v) {
    CVec out(v.size());
    out.real() = h * v.real();
    out.imag() = h * v.imag();
    return out;
}

}  // namespace

CVec PoolOperator::apply(const CVec& v, const QubitSpace& space) const {
    CVec out = CVec::Zero(v.size());
    for (const PauliTerm& t : terms) accumulate_pauli_apply(out, t.coeff, v, t.sites, t.axes, space);
    return out;
}

CVec PoolOperator::exp_apply(double theta, const CVec& v, const QubitSpace& space) const {
    // A^3 = A for every pool operator, hence
    // exp(i theta A) = I + (cos theta - 1) A^2 + i sin theta A.
    const CVec av = apply(v, space);
    const CVec aav = apply(av, space);
    return v + (std::cos(theta) - 1.0) * aav + Complex(0.0, std::sin(theta)) * av;
}

CMat PoolOperator::matrix(const QubitSpace& space) const {
    CMat m = CMat::Zero(space.dim(), space.dim());
    for (const PauliTerm& t : terms) {
        CMat s = pauli_string(t.sites, t.axes, space);
        m += t.coeff * s;
    }
    return m;
}

std::vector<PoolOperator> build_pool(int n) {
    if (n < 1) throw std::invalid_argument("build_pool: N must be >= 1");
    std::vector<PoolOperator> pool;
    pool.reserve(3 * n + 7 * n * (n - 1) / 2);
    for (int k = 1; k <= n; ++k) {
        pool.push_back({PoolKind::Gplus, {k}, "G+(" + std::to_string(k) + ")",
                        {{1.0, {k}, {Axis::X}}}});
        pool.push_back({PoolKind::Gminus, {k}, "G-(" + std::to_string(k) + ")",
                        {{1.0, {k}, {Axis::Y}}}});
        pool.push_back({PoolKind::G0, {k}, "G0(" + std::to_string(k) + ")",
                        {{1.0, {k}, {Axis::Z}}}});
    }
    for (int j = 1; j <= n; ++j) {
        for (int k = j + 1; k <= n; ++k) {
            const std::string jk = "(" + std::to_string(j) + "," + std::to_string(k) + ")";
            pool.push_back({PoolKind::Tplus, {j, k}, "T+" + jk,
                            {{0.5, {j, k}, {Axis::X, Axis::X}},
                             {-0.5, {j, k}, {Axis::Y, Axis::Y}}}});
            pool.push_back({PoolKind::Tminus, {j, k}, "T-" + jk,
                            {{0.5, {j, k}, {Axis::X, Axis::Y}},
                             {0.5, {j, k}, {Axis::Y, Axis::X}}}});
            pool.push_back({PoolKind::Uplus, {j, k}, "U+" + jk,
                            {{0.5, {j, k}, {Axis::X, Axis::X}},
                             {0.5, {j, k}, {Axis::Y, Axis::Y}}}});
            pool.push_back({PoolKind::Uminus, {j, k}, "U-" + jk,
                            {{0.5, {j, k}, {Axis::Y, Axis::X}},
                             {-0.5, {j, k}, {Axis::X, Axis::Y}}}});
            pool.push_back({PoolKind::Vplus, {j, k}, "V+" + jk,
                            {{1.0, {j, k}, {Axis::X, Axis::Z}}}});
            pool.push_back({PoolKind::Vminus, {j, k}, "V-" + jk,
                            {{1.0, {j, k}, {Axis::Y, Axis::Z}}}});
            pool.push_back({PoolKind::V0, {j, k}, "V0" + jk,
                            {{1.0, {j, k}, {Axis::Z, Axis::Z}}}});
        }
    }
    return pool;
}

long reference_index(const Mat& h_qubit) {
    long best = 0;
    double ebest = h_qubit(0, 0);
    for (long b = 1; b < h_qubit.rows(); ++b) {
        if (h_qubit(b, b) < ebest) {
            ebest = h_qubit(b, b);
            best = b;
        }
    }
    return best;
}

CVec reference_state(const ModelParams& p, const Mat& h_qubit) {
    p.validate();
    CVec v = CVec::Zero(h_qubit.rows());
    v(reference_index(h_qubit)) = Complex(1.0, 0.0);
    return v;
}

double gradient(const CVec& state, const Mat& h, const PoolOperator& a, const QubitSpace& space) {
    const double norm = state.norm();
    if (std::abs(norm - 1.0) > 1e-10)
        throw std::invalid_argument("gradient: state is not normalized");
    // i <v|[H,A]|v> = -2 Im <Hv, Av>; the imaginary residue vanishes
    // identically because <v|AH|v> is the conjugate of <v|HA|v>.
    const CVec hv = apply_real_matrix(h, state);
    const CVec av = a.apply(state, space);
    const Complex c = hv.dot(av);  // conjugates the left factor
    return -2.0 * c.imag();
}

CVec apply_ansatz(const CVec& reference, const std::vector<AnsatzStep>& steps,
                  const std::vector<PoolOperator>& pool, const QubitSpace& space) {
    CVec v = reference;
    for (const AnsatzStep& s : steps) {
        if (!std::isfinite(s.theta)) throw std::invalid_argument("apply_ansatz: non-finite angle");
        v = pool.at(s.op_index).exp_apply(s.theta, v, space);
    }
    return v;
}

double ansatz_energy_gradient(const CVec& reference, const std::vector<AnsatzStep>& steps,
                              const Vec& thetas, const Mat& h,
                              const std::vector<PoolOperator>& pool, const QubitSpace& space,
                              Vec& grad_out) {
    const std::size_t m = steps.size();
    std::vector<CVec> phis(m + 1);
    phis[0] = reference;
    for (std::size_t k = 0; k < m; ++k)
        phis[k + 1] = pool[steps[k].op_index].exp_apply(thetas(k), phis[k], space);

    const CVec& v = phis[m];
    CVec mu = apply_real_matrix(h, v);
    const double energy = v.dot(mu).real();

    grad_out.resize(m);
    for (std::size_t k = m; k-- > 0;) {
        const PoolOperator& op = pool[steps[k].op_index];
        // dE/dtheta_k = 2 Re <mu_k | i A_k | phi_{k+1}> = -2 Im <mu_k, A_k phi_{k+1}>
        grad_out(k) = -2.0 * mu.dot(op.apply(phis[k + 1], space)).imag();
        mu = op.exp_apply(-thetas(k), mu, space);
    }
    return energy;
}

AdaptTrace run_adapt(const ModelParams& p, const AdaptConfig& config,
                     std::optional<double> exact_energy, int qubit_cap) {
    p.validate();
    const QubitSpace space(p.n);
    const Mat h = elm_qubit(p, qubit_cap).mat();
    const std::vector<PoolOperator> pool = build_pool(p.n);

    AdaptTrace trace;
    trace.reference = reference_state(p, h);

    auto rel_error = [&](double e) -> std::optional<double> {
        if (!exact_energy) return std::nullopt;
        const double ex = *exact_energy;
        if (std::abs(ex) < 1e-12) return std::abs(e - ex);
        return std::abs(e - ex) / std::abs(ex);
    };

    CVec state = trace.reference;
    double energy = state.dot(apply_real_matrix(h, state)).real();
    trace.final_energy = energy;
    trace.stop = AdaptStop::MaxIterations;

    std::vector<double> grads(pool.size());
    for (int iter = 1; iter <= config.max_iterations; ++iter) {
        for_each_index(pool.size(), config.exec, [&](std::size_t k) {
            grads[k] = gradient(state, h, pool[k], space);
        });
        std::size_t best = 0;
        double gmax = 0.0;
        for (std::size_t k = 0; k < grads.size(); ++k) {
            if (std::abs(grads[k]) > gmax) {  // strict: ties keep the lowest index
                gmax = std::abs(grads[k]);
                best = k;
            }
        }
        if (gmax < config.gradient_stop) {
            trace.stop = AdaptStop::GradientConverged;
            break;
        }

        trace.final_steps.push_back({static_cast<int>(best), 0.0});
        Vec th0(trace.final_steps.size());
        for (std::size_t k = 0; k < trace.final_steps.size(); ++k)
            th0(k) = trace.final_steps[k].theta;

        auto fg = [&](const Vec& th, Vec& g) {
            return ansatz_energy_gradient(trace.reference, trace.final_steps, th, h, pool, space,
                                          g);
        };
        const BfgsResult opt = bfgs_minimize(fg, th0, config.optimizer);
        for (std::size_t k = 0; k < trace.final_steps.size(); ++k)
            trace.final_steps[k].theta = opt.x(k);
        state = apply_ansatz(trace.reference, trace.final_steps, pool, space);
        energy = opt.f;
        trace.final_energy = energy;

        const std::optional<double> rel = rel_error(energy);
        trace.records.push_back(
            {iter, pool[best].label, gmax, energy, rel, opt.note});

        if (rel && *rel < config.relative_energy_stop) {
            trace.stop = AdaptStop::EnergyConverged;
            break;
        }
    }
    return trace;
}

}  // namespace elm
