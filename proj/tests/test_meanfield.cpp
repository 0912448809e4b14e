#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "elm/meanfield.hpp"

using namespace elm;
using Catch::Approx;

TEST_CASE("energy surface closed form", "[meanfield]") {
    REQUIRE(energy_surface(0.37, 0.8, 0.0) == 0.0);
    REQUIRE(energy_surface(0.2, 0.0, 1.0) == Approx(0.2).margin(1e-15));
    REQUIRE(energy_surface(1.0, 0.0, 1.0) == Approx(-1.0).margin(1e-15));
    // finite on the search interval
    for (double b = 0.0; b <= 5.0; b += 0.25)
        REQUIRE(std::isfinite(energy_surface(0.9, 1.3, b)));
}

TEST_CASE("phase lines", "[meanfield]") {
    SECTION("critical line") {
        REQUIRE(critical_lambda(0.0) == Approx(0.2));
        REQUIRE(critical_lambda(1.0 / std::sqrt(2.0)) == Approx(2.0 / 11.0).margin(1e-15));
        REQUIRE(critical_lambda(1.0) == Approx(1.0 / 6.0).margin(1e-15));
    }
    SECTION("spinodal and antispinodal") {
        REQUIRE(spinodal_lambda(0.0) == Approx(0.2).margin(1e-15));
        REQUIRE(antispinodal_lambda(0.0) == Approx(0.2));
        REQUIRE(antispinodal_lambda(2.7) == Approx(0.2));
        REQUIRE(spinodal_lambda(1.0 / std::sqrt(2.0)) == Approx(0.18002).margin(1e-5));
    }
    SECTION("ordering lambda_s <= lambda_c <= lambda_as for alpha > 0") {
        for (double a = 0.05; a <= 1.0; a += 0.05) {
            REQUIRE(spinodal_lambda(a) <= critical_lambda(a));
            REQUIRE(critical_lambda(a) <= antispinodal_lambda(a));
        }
    }
}

TEST_CASE("phase classification", "[meanfield]") {
    REQUIRE(classify_point(0.1, 0.0).phase == Phase::Symmetric);
    REQUIRE(classify_point(0.9, 0.0).phase == Phase::Broken);
    // boundary convention: lambda = lambda_c is Broken
    REQUIRE(classify_point(0.2, 0.0).phase == Phase::Broken);
    REQUIRE(classify_point(0.2, 0.0).as_int() == 1);
    // coexistence flag only between the spinodal lines at alpha > 0
    REQUIRE(classify_point(0.19, 0.5).coexistence);
    REQUIRE_FALSE(classify_point(0.19, 0.0).coexistence);
    REQUIRE_FALSE(classify_point(0.5, 0.5).coexistence);
}

TEST_CASE("surface minimization", "[meanfield]") {
    SECTION("symmetric phase: single minimum at the origin") {
        auto mins = minimize_surface(0.1, 0.0);
        REQUIRE(mins.size() == 1);
        REQUIRE(mins[0].beta == Approx(0.0).margin(1e-8));
        REQUIRE(mins[0].energy_per_particle == Approx(0.0).margin(1e-12));
    }
    SECTION("(1, 0): minimum at beta = 1 with E/N = -1") {
        auto mins = minimize_surface(1.0, 0.0);
        REQUIRE_FALSE(mins.empty());
        REQUIRE(mins[0].beta == Approx(1.0).margin(1e-8));
        REQUIRE(mins[0].energy_per_particle == Approx(-1.0).margin(1e-12));
    }
    SECTION("degenerate minima on the critical line") {
        for (double a : {0.2, 0.5, 1.0 / std::sqrt(2.0), 1.0}) {
            auto mins = minimize_surface(critical_lambda(a), a);
            REQUIRE(mins.size() >= 2);
            REQUIRE(std::abs(mins[0].energy_per_particle - mins[1].energy_per_particle) <= 1e-8);
            // the deformed minimum sits at beta = alpha / 2 on the critical line
            const double beta_def = std::max(mins[0].beta, mins[1].beta);
            REQUIRE(beta_def == Approx(a / 2.0).margin(1e-6));
        }
    }
    SECTION("below the spinodal: only the spherical minimum") {
        const double a = 0.5;
        const double lam = spinodal_lambda(a) - 0.02;
        auto mins = minimize_surface(lam, a);
        REQUIRE(mins.size() == 1);
        REQUIRE(mins[0].beta == Approx(0.0).margin(1e-8));
    }
    SECTION("above the antispinodal: beta = 0 is not a minimum") {
        auto mins = minimize_surface(0.3, 0.5);
        for (const auto& m : mins) REQUIRE(m.beta > 1e-6);
    }
}
