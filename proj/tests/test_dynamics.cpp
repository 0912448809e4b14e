#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "elm/dynamics.hpp"
#include "elm/rng.hpp"

using namespace elm;
using Catch::Approx;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("trotter split completeness", "[dynamics]") {
    RngStream rng(31, 4);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(5));
        const ModelParams p{n, rng.uniform(), rng.uniform(0.0, 1.2)};
        for (Representation rep : {Representation::Collective, Representation::Qubit}) {
            const TrotterSplit s = TrotterSplit::build(p, rep);
            const Mat full = rep == Representation::Collective ? elm_collective(p).mat()
                                                               : elm_qubit(p).mat();
            const Mat sum = s.h1 + s.h2 + s.h3 +
                            s.g0 * Mat::Identity(full.rows(), full.cols());
            REQUIRE(max_abs(Mat(sum - full)) <= 1e-12);
        }
    }
}

TEST_CASE("trotter propagator", "[dynamics]") {
    SECTION("t = 0 is the identity") {
        const UnitaryMatrix u = trotter_propagator({6, 0.3, 0.4}, 0.0, 3,
                                                   Representation::Collective);
        REQUIRE(max_abs(CMat(u.u - CMat::Identity(7, 7))) < 1e-13);
        REQUIRE(u.provenance == Provenance::Trotter);
        REQUIRE(u.trotter_steps == 3);
    }
    SECTION("n_T = 0 rejected") {
        REQUIRE_THROWS_AS(trotter_propagator({6, 0.3, 0.4}, 1.0, 0, Representation::Collective),
                          std::invalid_argument);
    }
    SECTION("lambda = 0: split is exact for any n_T") {
        const ModelParams p{6, 0.0, 0.7};
        const CMat u = exact_propagator(p, 2.0, Representation::Collective).u;
        const CMat ut = trotter_propagator(p, 2.0, 1, Representation::Collective).u;
        REQUIRE(max_abs(CMat(u - ut)) < 1e-12);
    }
    SECTION("unitary and converging with n_T") {
        const ModelParams p{6, 0.2, kInvSqrt2};
        const CMat u = exact_propagator(p, 1.0, Representation::Qubit).u;
        double prev = 1e300;
        for (int nt : {1, 2, 4, 8, 16}) {
            const UnitaryMatrix ut = trotter_propagator(p, 1.0, nt, Representation::Qubit);
            REQUIRE(ut.unitarity_defect() <= 1e-10);
            const double err = max_abs(CMat(ut.u - u));
            REQUIRE(err < prev);
            prev = err;
        }
    }
    SECTION("first-order error scaling: log-log slope near -1") {
        const ModelParams p{6, 0.2, kInvSqrt2};
        const CMat u = exact_propagator(p, 1.0, Representation::Qubit).u;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (int nt : {1, 2, 4, 8, 16, 32}) {
            const double err = max_abs(CMat(trotter_propagator(p, 1.0, nt,
                                                               Representation::Qubit)
                                                .u -
                                            u));
            const double lx = std::log(static_cast<double>(nt)), ly = std::log(err);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++m;
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        REQUIRE(slope >= -1.3);
        REQUIRE(slope <= -0.7);
    }
}

TEST_CASE("trotter fidelity", "[dynamics]") {
    const ModelParams p{6, 0.2, kInvSqrt2};
    const CVec phi0 = neel_state(6);

    SECTION("F(0) = 1 in both modes") {
        for (int nt : {1, 4, 16}) {
            REQUIRE(trotter_fidelity(p, 0.0, nt, phi0, Representation::Qubit) ==
                    Approx(1.0).margin(1e-12));
            REQUIRE(trotter_fidelity(p, 0.0, nt, phi0, Representation::Qubit,
                                     FidelityMode::Verbatim) == Approx(1.0).margin(1e-12));
        }
    }
    SECTION("lambda = 0: overlap fidelity is 1 for all t") {
        const ModelParams p0{6, 0.0, 0.4};
        CVec v = sz_trace_default_state(6);
        for (double t : {0.5, 1.0, 3.0})
            REQUIRE(trotter_fidelity(p0, t, 1, v, Representation::Collective) ==
                    Approx(1.0).margin(1e-12));
    }
    SECTION("nondecreasing in n_T at fixed t") {
        for (double t : {1.0, 2.0}) {
            double prev = 0.0;
            for (int nt : {1, 2, 4, 8, 16}) {
                const double f = trotter_fidelity(p, t, nt, phi0, Representation::Qubit);
                REQUIRE(f >= prev - 1e-12);
                REQUIRE(f <= 1.0 + 1e-12);
                prev = f;
            }
        }
    }
    SECTION("the two modes differ away from t = 0") {
        const double fo = trotter_fidelity(p, 1.0, 2, phi0, Representation::Qubit);
        const double fv = trotter_fidelity(p, 1.0, 2, phi0, Representation::Qubit,
                                           FidelityMode::Verbatim);
        REQUIRE(std::abs(fo - fv) > 1e-3);
    }
}

TEST_CASE("gate budget", "[dynamics]") {
    REQUIRE(gate_budget(6, 0) == Approx(1.0));
    REQUIRE(gate_budget(6, 1) == Approx(0.996967).margin(1e-6));
    // doubling the steps squares the budget
    REQUIRE(gate_budget(6, 8) == Approx(gate_budget(6, 4) * gate_budget(6, 4)).margin(1e-15));
    REQUIRE(gate_budget(6, 4) > gate_budget(6, 5));
    REQUIRE_THROWS_AS(gate_budget(6, -1), std::invalid_argument);
    REQUIRE_THROWS_AS(gate_budget(6, 1, 1.2, 0.999), std::invalid_argument);
}

TEST_CASE("sz trace", "[dynamics]") {
    std::vector<double> times;
    for (int k = 0; k <= 100; ++k) times.push_back(0.04 * k);

    SECTION("t = 0 expectation vanishes for the default state") {
        const DynamicsTrace tr = observable_sz_trace({6, 0.5, 0.3}, sz_trace_default_state(6),
                                                     {0.0}, PropagatorKind::Exact);
        REQUIRE(tr.values[0] == Approx(0.0).margin(1e-13));
    }
    SECTION("lambda = 0 conserves Sz") {
        const DynamicsTrace tr = observable_sz_trace({6, 0.0, 0.0}, sz_trace_default_state(6),
                                                     times, PropagatorKind::Exact);
        for (double v : tr.values) REQUIRE(v == Approx(tr.values[0]).margin(1e-12));
    }
    SECTION("bounded by N/2 and matching the spectral-expansion oracle") {
        const ModelParams p{6, 0.5, 0.3};
        const CVec phi0 = sz_trace_default_state(6);
        const DynamicsTrace tr = observable_sz_trace(p, phi0, times, PropagatorKind::Exact);
        // independent oracle: <Sz>(t) = sum_nm conj(c_n) c_m e^{i(En-Em)t} <n|Sz|m>
        const EighResult e = eigh(elm_collective(p));
        const Mat sz = collective_operator(CollectiveOp::Sz, CollectiveBasis(6));
        const Vec c = e.eigenvectors.transpose() * phi0.real();
        const Mat szeig = e.eigenvectors.transpose() * sz * e.eigenvectors;
        for (std::size_t ti = 0; ti < times.size(); ++ti) {
            Complex acc(0, 0);
            for (int nn = 0; nn < 7; ++nn)
                for (int mm = 0; mm < 7; ++mm)
                    acc += c(nn) * c(mm) * szeig(nn, mm) *
                           std::exp(Complex(0, (e.eigenvalues(nn) - e.eigenvalues(mm)) *
                                                   times[ti]));
            REQUIRE(tr.values[ti] == Approx(acc.real()).margin(1e-10));
            REQUIRE(std::abs(tr.values[ti]) <= 3.0 + 1e-12);
        }
    }
    SECTION("trotter trace converges pointwise to the exact one") {
        const ModelParams p{6, 0.5, 0.3};
        const CVec phi0 = sz_trace_default_state(6);
        const DynamicsTrace ex = observable_sz_trace(p, phi0, times, PropagatorKind::Exact);
        const DynamicsTrace tr =
            observable_sz_trace(p, phi0, times, PropagatorKind::Trotter, 64);
        double dev = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k)
            dev = std::max(dev, std::abs(ex.values[k] - tr.values[k]));
        REQUIRE(dev < 1e-3);
    }
}

TEST_CASE("correlation trace", "[dynamics]") {
    const ModelParams p{6, 0.2, kInvSqrt2};
    const CVec phi0 = neel_state(6);
    std::vector<double> times = {0.0, 0.5, 1.0, 2.0};

    SECTION("product state is uncorrelated at t = 0") {
        const DynamicsTrace tr =
            correlation_trace(p, Axis::Z, 1, 2, phi0, {0.0}, PropagatorKind::Exact);
        REQUIRE(tr.values[0] == Approx(0.0).margin(1e-13));
    }
    SECTION("symmetric in (i, j) and bounded by 2") {
        const DynamicsTrace a =
            correlation_trace(p, Axis::Z, 1, 2, phi0, times, PropagatorKind::Exact);
        const DynamicsTrace b =
            correlation_trace(p, Axis::Z, 2, 1, phi0, times, PropagatorKind::Exact);
        for (std::size_t k = 0; k < times.size(); ++k) {
            REQUIRE(a.values[k] == Approx(b.values[k]).margin(1e-13));
            REQUIRE(std::abs(a.values[k]) <= 2.0 + 1e-12);
        }
    }
    SECTION("permutation-symmetric initial state gives identical pairs") {
        CVec down = CVec::Zero(64);
        down(0) = 1.0;
        std::vector<double> base;
        for (int i = 1; i <= 6; ++i)
            for (int j = i + 1; j <= 6; ++j) {
                const DynamicsTrace tr =
                    correlation_trace(p, Axis::Z, i, j, down, {0.7}, PropagatorKind::Exact);
                base.push_back(tr.values[0]);
            }
        for (double v : base) REQUIRE(v == Approx(base[0]).margin(1e-11));
    }
    SECTION("i = j rejected") {
        REQUIRE_THROWS_AS(correlation_trace(p, Axis::Z, 2, 2, phi0, times, PropagatorKind::Exact),
                          std::invalid_argument);
    }
}

TEST_CASE("fidelity report shape", "[dynamics]") {
    const ModelParams p{4, 0.3, 0.2};
    CVec phi0 = neel_state(4);
    const FidelityReport rep = fidelity_report(p, {0.0, 1.0}, {1, 2}, phi0,
                                               Representation::Qubit);
    REQUIRE(rep.fidelity.size() == 2);
    REQUIRE(rep.fidelity[0].size() == 2);
    REQUIRE(rep.budgets.size() == 2);
    REQUIRE(rep.fidelity[0][0] == Approx(1.0).margin(1e-12));
    REQUIRE(rep.budgets[0] == Approx(gate_budget(4, 1)));
}
