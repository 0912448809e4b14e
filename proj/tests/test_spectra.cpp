#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "elm/spectra.hpp"

using namespace elm;
using Catch::Approx;

TEST_CASE("solve reproduces reference ground energies", "[spectra]") {
    REQUIRE(solve({6, 0.0, 0.4}, Representation::Collective).ground_energy_per_particle() ==
            Approx(0.0).margin(1e-12));
    REQUIRE(solve({6, 0.9, 1.0 / std::sqrt(2.0)}, Representation::Collective)
                .ground_energy_per_particle() == Approx(-1.7338069).margin(1e-7));
    REQUIRE(solve({6, 1.0, 0.5}, Representation::Collective).ground_energy_per_particle() ==
            Approx(-1.6403882).margin(1e-7));
    SECTION("qubit representation agrees") {
        REQUIRE(solve({6, 0.9, 1.0 / std::sqrt(2.0)}, Representation::Qubit)
                    .ground_energy_per_particle() == Approx(-1.7338069).margin(1e-7));
    }
    SECTION("energies ascend and the ground vector is normalized") {
        SpectrumResult r = solve({6, 0.6, 0.3}, Representation::Collective);
        for (std::size_t k = 1; k < r.energies_per_particle.size(); ++k)
            REQUIRE(r.energies_per_particle[k] >= r.energies_per_particle[k - 1]);
        REQUIRE(r.ground_vector.norm() == Approx(1.0).margin(1e-12));
    }
    SECTION("qubit cap error") {
        REQUIRE_THROWS_AS(solve({13, 0.5, 0.0}, Representation::Qubit), std::invalid_argument);
    }
}

TEST_CASE("order parameter", "[spectra]") {
    SECTION("lambda = 0 ground state is |M = -S>") {
        REQUIRE(order_parameter({6, 0.0, 0.0}) == Approx(0.0).margin(1e-12));
    }
    SECTION("lambda = 1, alpha = 0: 0.5 through the degenerate doublet") {
        REQUIRE(order_parameter({6, 1.0, 0.0}) == Approx(0.5).margin(1e-10));
    }
    SECTION("small positive below the critical point") {
        const double v = order_parameter({6, 0.1, 0.0});
        REQUIRE(v > 0.0);
        REQUIRE(v < 0.05);
    }
    SECTION("value in [0, 1] across the diagram") {
        for (double lam : {0.0, 0.2, 0.6, 1.0})
            for (double al : {0.0, 0.5, 1.0}) {
                const double v = order_parameter({6, lam, al});
                REQUIRE(v >= -1e-12);
                REQUIRE(v <= 1.0 + 1e-12);
            }
    }
}

TEST_CASE("order parameter is nondecreasing along paths 1 and 2", "[spectra]") {
    for (double alpha : {0.0, 1.0 / std::sqrt(2.0)}) {
        double prev = -1.0;
        for (int k = 0; k <= 50; ++k) {
            const double lam = k / 50.0;
            const double v = order_parameter({6, lam, alpha});
            REQUIRE(v >= prev - 1e-9);
            prev = v;
        }
    }
}

TEST_CASE("path sampling", "[spectra]") {
    SECTION("path 1 endpoints") {
        auto rows = spectrum_along_path(6, PathSpec::path1(11), 3);
        REQUIRE(rows.size() == 11);
        REQUIRE(rows.front().control == Approx(0.0));
        REQUIRE(rows.back().control == Approx(1.0));
        REQUIRE(rows.front().energies_per_particle[0] == Approx(0.0).margin(1e-12));
        REQUIRE(rows.back().energies_per_particle[0] == Approx(-1.0).margin(1e-7));
    }
    SECTION("path 2 endpoint reaches -2") {
        auto rows = spectrum_along_path(6, PathSpec::path2(11), 1);
        REQUIRE(rows.back().energies_per_particle[0] == Approx(-2.0).margin(1e-7));
    }
    SECTION("path 3: ground level decreases monotonically in alpha") {
        auto rows = spectrum_along_path(6, PathSpec::path3(29), 1);
        for (std::size_t k = 1; k < rows.size(); ++k)
            REQUIRE(rows[k].energies_per_particle[0] <= rows[k - 1].energies_per_particle[0] + 1e-12);
    }
    SECTION("path 3 interior: no true crossings among the lowest 4 levels") {
        // both endpoints carry exact degeneracies (parity doublet at alpha=0,
        // E2=E3 at alpha=1/sqrt(2)); the open interior is gapped
        auto rows = spectrum_along_path(6, PathSpec::path3(51), 4);
        for (std::size_t k = 1; k + 1 < rows.size(); ++k) {
            const auto& e = rows[k].energies_per_particle;
            for (int l = 1; l < 4; ++l) REQUIRE(e[l] - e[l - 1] > 1e-6);
        }
    }
    SECTION("serial and parallel path sampling agree bitwise") {
        auto a = spectrum_along_path(6, PathSpec::path2(21), 3, Execution::Serial);
        auto b = spectrum_along_path(6, PathSpec::path2(21), 3, Execution::Parallel);
        for (std::size_t k = 0; k < a.size(); ++k) {
            REQUIRE(a[k].control == b[k].control);
            REQUIRE(a[k].order_parameter == b[k].order_parameter);
            for (int l = 0; l < 3; ++l)
                REQUIRE(a[k].energies_per_particle[l] == b[k].energies_per_particle[l]);
        }
    }
}
