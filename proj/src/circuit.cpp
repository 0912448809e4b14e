#include "elm/circuit.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"

namespace elm {

namespace {
constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kHalfPi = std::numbers::pi / 2.0;
}  // namespace

int CircuitProgram::sqr_count() const {
    int c = 0;
    for (const GateOp& g : gates)
        if (std::holds_alternative<SqrGate>(g)) ++c;
    return c;
}

int CircuitProgram::ms_count() const {
    int c = 0;
    for (const GateOp& g : gates)
        if (std::holds_alternative<MsGate>(g)) ++c;
    return c;
}

CircuitProgram emit_trotter_circuit(const ModelParams& p, double t, int n_trotter,
                                    int qubit_cap) {
    p.validate();
    if (n_trotter < 1) throw std::invalid_argument("emit_trotter_circuit: n_T must be >= 1");
    if (p.n > qubit_cap)
        throw std::invalid_argument("emit_trotter_circuit: N exceeds the qubit cap");
    const CompactCoefficients c = compact_coefficients(p);
    const double dt = t / n_trotter;

    CircuitProgram prog;
    prog.n = p.n;
    prog.meta = {p, t, n_trotter, "elmlab-1"};
    prog.gates.reserve(static_cast<std::size_t>(n_trotter) * (6 * p.n + 3));

    auto ry_layer = [&](double theta) {
        for (int q = 1; q <= p.n; ++q) prog.gates.push_back(SqrGate{Axis::Y, q, theta});
    };
    // Program order is temporal; the step unitary composes to
    // exp(-i H1 dt) exp(-i H2 dt) exp(-i H3 dt), so the H3 block is emitted first.
    for (int s = 0; s < n_trotter; ++s) {
        // (Sx+Sz)^2 block: Ry(-pi/4)^N . MS(2 gxz dt) . Ry(pi/4)^N
        ry_layer(-kQuarterPi);
        prog.gates.push_back(MsGate{2.0 * c.gxz * dt});
        ry_layer(kQuarterPi);
        // Sx layer and the native Sx^2 analog block (they commute)
        for (int q = 1; q <= p.n; ++q) prog.gates.push_back(SqrGate{Axis::X, q, -c.gx * dt});
        prog.gates.push_back(MsGate{c.gxx * dt});
        // Sz layer and the rotated Sz^2 block
        for (int q = 1; q <= p.n; ++q) prog.gates.push_back(SqrGate{Axis::Z, q, -c.gz * dt});
        ry_layer(-kHalfPi);
        prog.gates.push_back(MsGate{c.gzz * dt});
        ry_layer(kHalfPi);
    }
    return prog;
}

namespace {

// In-place U <- R_nu^q(theta) U for R = exp(i theta/2 sigma).
// Index convention: bit 1 = |up>; within a (down, up) pair the 2x2 blocks are
//   X: [[cos, i sin], [i sin, cos]]
//   Y: [[cos, -sin], [sin, cos]]
//   Z: diag(exp(-i theta/2), exp(+i theta/2))
void apply_sqr(CMat& u, const SqrGate& g, const QubitSpace& space) {
    const long d = space.dim();
    const long mask = space.flip_mask(g.qubit);
    const double ch = std::cos(0.5 * g.theta), sh = std::sin(0.5 * g.theta);
    for (long r0 = 0; r0 < d; ++r0) {
        if (r0 & mask) continue;  // r0 has bit 0 (down), partner r1 has bit 1
        const long r1 = r0 | mask;
        for (long col = 0; col < d; ++col) {
            const Complex a = u(r0, col), b = u(r1, col);
            switch (g.axis) {
                case Axis::X:
                    u(r0, col) = ch * a + Complex(0, sh) * b;
                    u(r1, col) = Complex(0, sh) * a + ch * b;
                    break;
                case Axis::Y:
                    u(r0, col) = ch * a - sh * b;
                    u(r1, col) = sh * a + ch * b;
                    break;
                case Axis::Z:
                    u(r0, col) = std::exp(Complex(0, -0.5 * g.theta)) * a;
                    u(r1, col) = std::exp(Complex(0, +0.5 * g.theta)) * b;
                    break;
            }
        }
    }
}

}  // namespace

UnitaryMatrix simulate_circuit(const CircuitProgram& program) {
    if (program.n < 1) throw std::invalid_argument("simulate_circuit: malformed program (n)");
    const QubitSpace space(program.n);
    const long d = space.dim();
    CMat u = CMat::Identity(d, d);

    // Sx^2 eigensystem once; every MS block reuses it.
    const Mat sx = qubit_collective_sx(space);
    const EighResult ex = eigh(RealSymmetricMatrix(Mat(sx * sx)));

    for (std::size_t gi = 0; gi < program.gates.size(); ++gi) {
        const GateOp& g = program.gates[gi];
        if (const SqrGate* sq = std::get_if<SqrGate>(&g)) {
            if (sq->qubit < 1 || sq->qubit > program.n || !std::isfinite(sq->theta))
                throw std::invalid_argument("simulate_circuit: malformed gate " +
                                            std::to_string(gi));
            apply_sqr(u, *sq, space);
        } else {
            const MsGate& ms = std::get<MsGate>(g);
            if (!std::isfinite(ms.theta))
                throw std::invalid_argument("simulate_circuit: malformed gate " +
                                            std::to_string(gi));
            CVec phases(d);
            for (long k = 0; k < d; ++k)
                phases(k) = std::exp(Complex(0, -ms.theta * ex.eigenvalues(k)));
            u = ex.eigenvectors.cast<Complex>() *
                (phases.asDiagonal() * (ex.eigenvectors.transpose().cast<Complex>() * u));
        }
    }
    return {std::move(u), Provenance::Circuit, program.meta.n_trotter};
}

ResourceEstimate resource_estimate(const CircuitProgram& program, double f_single, double f_ms) {
    ResourceEstimate est;
    est.sqr_count = program.sqr_count();
    est.ms_count = program.ms_count();
    est.fidelity_budget = std::pow(f_single, est.sqr_count) * std::pow(f_ms, est.ms_count);
    return est;
}

namespace {

char axis_char(Axis a) { return a == Axis::X ? 'x' : (a == Axis::Y ? 'y' : 'z'); }

Axis parse_axis(const std::string& s, std::size_t gate_index) {
    if (s == "x") return Axis::X;
    if (s == "y") return Axis::Y;
    if (s == "z") return Axis::Z;
    throw std::runtime_error("circuit parse error: gate " + std::to_string(gate_index) +
                             ": bad axis '" + s + "'");
}

}  // namespace

std::string serialize(const CircuitProgram& program) {
    nlohmann::json j;
    j["n"] = program.n;
    nlohmann::json gates = nlohmann::json::array();
    for (const GateOp& g : program.gates) {
        nlohmann::json jg;
        if (const SqrGate* sq = std::get_if<SqrGate>(&g)) {
            jg["g"] = "sqr";
            jg["axis"] = std::string(1, axis_char(sq->axis));
            jg["q"] = sq->qubit;
            jg["theta"] = sq->theta;
        } else {
            const MsGate& ms = std::get<MsGate>(g);
            jg["g"] = "ms";
            jg["theta"] = ms.theta;
        }
        gates.push_back(std::move(jg));
    }
    j["gates"] = std::move(gates);
    j["meta"] = {{"n", program.meta.params.n},
                 {"lambda", program.meta.params.lambda},
                 {"alpha", program.meta.params.alpha},
                 {"t", program.meta.t},
                 {"n_trotter", program.meta.n_trotter},
                 {"generator", program.meta.generator}};
    return j.dump(2);
}

CircuitProgram deserialize(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("circuit parse error: ") + e.what());
    }
    CircuitProgram prog;
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw std::runtime_error("circuit parse error: missing integer field 'n'");
    prog.n = j["n"].get<int>();
    if (!j.contains("gates") || !j["gates"].is_array())
        throw std::runtime_error("circuit parse error: missing array field 'gates'");
    const auto& gates = j["gates"];
    for (std::size_t gi = 0; gi < gates.size(); ++gi) {
        const auto& jg = gates[gi];
        const std::string idx = std::to_string(gi);
        if (!jg.contains("g"))
            throw std::runtime_error("circuit parse error: gate " + idx + ": missing 'g'");
        const std::string kind = jg["g"].get<std::string>();
        if (!jg.contains("theta") || !jg["theta"].is_number())
            throw std::runtime_error("circuit parse error: gate " + idx + ": missing angle field");
        const double theta = jg["theta"].get<double>();
        if (kind == "sqr") {
            if (!jg.contains("axis"))
                throw std::runtime_error("circuit parse error: gate " + idx + ": missing 'axis'");
            if (!jg.contains("q") || !jg["q"].is_number_integer())
                throw std::runtime_error("circuit parse error: gate " + idx + ": missing 'q'");
            const int q = jg["q"].get<int>();
            if (q < 1 || q > prog.n)
                throw std::runtime_error("circuit parse error: gate " + idx +
                                         ": qubit index out of range");
            prog.gates.push_back(SqrGate{parse_axis(jg["axis"].get<std::string>(), gi), q, theta});
        } else if (kind == "ms") {
            prog.gates.push_back(MsGate{theta});
        } else {
            throw std::runtime_error("circuit parse error: gate " + idx + ": unknown kind '" +
                                     kind + "'");
        }
    }
    if (j.contains("meta")) {
        const auto& m = j["meta"];
        prog.meta.params.n = m.value("n", prog.n);
        prog.meta.params.lambda = m.value("lambda", 0.0);
        prog.meta.params.alpha = m.value("alpha", 0.0);
        prog.meta.t = m.value("t", 0.0);
        prog.meta.n_trotter = m.value("n_trotter", 1);
        prog.meta.generator = m.value("generator", std::string());
    }
    return prog;
}

double circuit_trotter_deviation(const CircuitProgram& program, int qubit_cap) {
    const CMat uc = simulate_circuit(program).u;
    const CMat ut = trotter_propagator(program.meta.params, program.meta.t,
                                       program.meta.n_trotter, Representation::Qubit, qubit_cap)
                        .u;
    // global-phase alignment via the trace of Uc^dag Ut
    const Complex z = (uc.adjoint() * ut).trace();
    const Complex phase = z / std::abs(z);
    return max_abs(CMat(phase * uc - ut));
}

}  // namespace elm
