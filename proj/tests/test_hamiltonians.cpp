#include <catch2/catch_amalgamated.hpp>

#include "elm/hamiltonians.hpp"
#include "elm/rng.hpp"

using namespace elm;
using Catch::Approx;

namespace {
double ground_per_particle(const RealSymmetricMatrix& h, int n) {
    return eigh(h).eigenvalues(0) / n;
}
}  // namespace

TEST_CASE("lipkin collective limits", "[hamiltonians]") {
    SECTION("lambda = 0 is the counting operator") {
        ModelParams p{5, 0.0, 0.0};
        Mat h = lipkin_collective(p).mat();
        for (int k = 0; k <= 5; ++k) REQUIRE(h(k, k) == Approx(k).margin(1e-14));
        REQUIRE(ground_per_particle(lipkin_collective(p), 5) == Approx(0.0).margin(1e-15));
    }
    SECTION("N=2, lambda=1: eigenvalues {-2, -2, 0}") {
        ModelParams p{2, 1.0, 0.0};
        EighResult e = eigh(lipkin_collective(p));
        REQUIRE(e.eigenvalues(0) == Approx(-2.0).margin(1e-13));
        REQUIRE(e.eigenvalues(1) == Approx(-2.0).margin(1e-13));
        REQUIRE(e.eigenvalues(2) == Approx(0.0).margin(1e-13));
    }
    SECTION("N=6, lambda=0.5 ground energy from the reference table") {
        ModelParams p{6, 0.5, 0.0};
        REQUIRE(ground_per_particle(lipkin_collective(p), 6) == Approx(-0.2881459).margin(1e-7));
    }
    SECTION("pentadiagonal at most") {
        Mat h = lipkin_collective({8, 0.7, 0.0}).mat();
        for (int i = 0; i < 9; ++i)
            for (int j = 0; j < 9; ++j)
                if (std::abs(i - j) > 2) REQUIRE(h(i, j) == 0.0);
    }
}

TEST_CASE("elm collective reference energies", "[hamiltonians]") {
    REQUIRE(ground_per_particle(elm_collective({6, 0.2, 1.0 / std::sqrt(2.0)}), 6) ==
            Approx(-0.0565697).margin(1e-7));
    REQUIRE(ground_per_particle(elm_collective({6, 1.0, 1.0}), 6) ==
            Approx(-2.6180339).margin(1e-7));
    REQUIRE(ground_per_particle(elm_collective({6, 0.7, 0.0}), 6) ==
            Approx(-0.5596571).margin(1e-7));
}

TEST_CASE("elm reduces to lipkin at alpha = 0 entrywise", "[hamiltonians]") {
    for (int n : {2, 5, 8}) {
        for (double lam : {0.0, 0.3, 1.0}) {
            ModelParams p{n, lam, 0.0};
            REQUIRE(max_abs(Mat(elm_collective(p).mat() - lipkin_collective(p).mat())) < 1e-14);
        }
    }
}

TEST_CASE("ground energy per particle at lambda=1, alpha=0 is -1 for every N", "[hamiltonians]") {
    for (int n = 1; n <= 10; ++n)
        REQUIRE(ground_per_particle(lipkin_collective({n, 1.0, 0.0}), n) ==
                Approx(-1.0).margin(1e-12));
}

TEST_CASE("compact coefficients", "[hamiltonians]") {
    SECTION("alpha = 0 reduction") {
        CompactCoefficients c = compact_coefficients({6, 0.4, 0.0});
        REQUIRE(c.gx == 0.0);
        REQUIRE(c.gzz == 0.0);
        REQUIRE(c.gxz == 0.0);
        REQUIRE(c.gz == Approx(0.6));
        REQUIRE(c.gxx == Approx(-4.0 * 0.4 / 6.0));
    }
    SECTION("lambda = 0 leaves only gz and g0") {
        CompactCoefficients c = compact_coefficients({6, 0.0, 0.9});
        REQUIRE(c.gz == Approx(1.0));
        REQUIRE(c.g0 == Approx(3.0));
        REQUIRE(c.gx == 0.0);
        REQUIRE(c.gzz == 0.0);
        REQUIRE(c.gxx == 0.0);
        REQUIRE(c.gxz == 0.0);
    }
    SECTION("reference values at (6, 0.2, 1/sqrt(2))") {
        CompactCoefficients c = compact_coefficients({6, 0.2, 1.0 / std::sqrt(2.0)});
        REQUIRE(c.gz == Approx(0.7).margin(1e-12));
        REQUIRE(c.gx == Approx(0.282843).margin(1e-6));
        REQUIRE(c.gxz == Approx(0.047140).margin(1e-6));
        REQUIRE(c.gzz == Approx(-0.063807).margin(1e-6));
        REQUIRE(c.gxx == Approx(-0.180474).margin(1e-6));
    }
    SECTION("assembly identity over random draws") {
        RngStream rng(3, 11);
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 1 + static_cast<int>(rng.below(8));
            ModelParams p{n, rng.uniform(), rng.uniform(0.0, 1.5)};
            Mat assembled = assemble_compact(compact_coefficients(p), CollectiveBasis(n)).mat();
            REQUIRE(max_abs(Mat(assembled - elm_collective(p).mat())) <= 1e-12);
        }
    }
}

TEST_CASE("qubit Hamiltonians", "[hamiltonians]") {
    SECTION("N=1, lambda=0: S + Sz at qubit level") {
        Mat h = lipkin_qubit({1, 0.0, 0.0}).mat();
        // index 0 = |down> (energy 0), index 1 = |up> (energy 1)
        REQUIRE(h(0, 0) == Approx(0.0).margin(1e-14));
        REQUIRE(h(1, 1) == Approx(1.0).margin(1e-14));
        REQUIRE(std::abs(h(0, 1)) < 1e-14);
    }
    SECTION("N=6 cross-representation ground energy") {
        REQUIRE(ground_per_particle(lipkin_qubit({6, 0.5, 0.0}), 6) ==
                Approx(-0.2881459).margin(1e-7));
    }
    SECTION("N=2, lambda=1: min eigenvalue -2") {
        REQUIRE(eigh(lipkin_qubit({2, 1.0, 0.0})).eigenvalues(0) == Approx(-2.0).margin(1e-12));
    }
    SECTION("cap is enforced") {
        REQUIRE_THROWS_AS(lipkin_qubit({13, 0.5, 0.0}), std::invalid_argument);
        REQUIRE_THROWS_AS(elm_qubit({8, 0.5, 0.5}, 6), std::invalid_argument);
    }
    SECTION("collective spectrum is a subset of the qubit spectrum") {
        RngStream rng(17, 23);
        for (int n : {2, 3, 4, 5, 6, 7, 8}) {
            const ModelParams p{n, rng.uniform(), rng.uniform()};
            const Vec wc = eigh(elm_collective(p)).eigenvalues;
            const Vec wq = eigh(elm_qubit(p)).eigenvalues;
            for (Eigen::Index k = 0; k < wc.size(); ++k) {
                double best = 1e300;
                for (Eigen::Index q = 0; q < wq.size(); ++q)
                    best = std::min(best, std::abs(wq(q) - wc(k)));
                REQUIRE(best <= 1e-9);
            }
        }
    }
    SECTION("ground energies agree across representations on a grid") {
        for (int n : {2, 4, 6}) {
            for (double lam : {0.1, 0.5, 0.9}) {
                for (double al : {0.0, 0.5, 1.0}) {
                    const ModelParams p{n, lam, al};
                    const double ec = eigh(elm_collective(p)).eigenvalues(0);
                    const double eq = eigh(elm_qubit(p)).eigenvalues(0);
                    REQUIRE(std::abs(ec - eq) <= 1e-10);
                }
            }
        }
    }
}

TEST_CASE("parameter validation", "[hamiltonians]") {
    REQUIRE_THROWS_AS(lipkin_collective({6, -0.1, 0.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(lipkin_collective({6, 1.2, 0.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(elm_collective({6, 0.5, -0.2}), std::invalid_argument);
    REQUIRE_NOTHROW(elm_collective({6, 0.5, 1.4}));  // alpha above 1 is permitted
}

TEST_CASE("iba parameter map", "[hamiltonians]") {
    SECTION("chi = 0 maps to alpha = 0") {
        auto [lam, al] = iba_to_elm({0.3, 0.0});
        REQUIRE(lam == Approx(0.3));
        REQUIRE(al == Approx(0.0));
    }
    SECTION("alpha = 1/sqrt(2) corresponds to chi = -sqrt(7)/2") {
        IbaParams iba = elm_to_iba(0.5, 1.0 / std::sqrt(2.0));
        REQUIRE(iba.chi == Approx(-1.3228757).margin(1e-7));
    }
    SECTION("round trip is the identity") {
        IbaParams iba{0.42, -0.9};
        auto [lam, al] = iba_to_elm(iba);
        IbaParams back = elm_to_iba(lam, al);
        REQUIRE(back.rho == Approx(iba.rho).margin(1e-15));
        REQUIRE(back.chi == Approx(iba.chi).margin(1e-15));
    }
}
