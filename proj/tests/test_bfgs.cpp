#include <catch2/catch_amalgamated.hpp>

#include "elm/bfgs.hpp"

using namespace elm;
using Catch::Approx;

TEST_CASE("bfgs on a quadratic", "[bfgs]") {
    // f = 1/2 x^T A x - b^T x with SPD A
    Mat a(3, 3);
    a << 4, 1, 0, 1, 3, 1, 0, 1, 2;
    Vec b(3);
    b << 1, -2, 0.5;
    auto fg = [&](const Vec& x, Vec& g) {
        g = a * x - b;
        return 0.5 * x.dot(a * x) - b.dot(x);
    };
    BfgsResult r = bfgs_minimize(fg, Vec::Zero(3));
    REQUIRE(r.converged);
    const Vec xstar = a.ldlt().solve(b);
    REQUIRE((r.x - xstar).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("bfgs on rosenbrock", "[bfgs]") {
    auto fg = [](const Vec& x, Vec& g) {
        const double a = 1.0 - x(0);
        const double b = x(1) - x(0) * x(0);
        g.resize(2);
        g(0) = -2.0 * a - 400.0 * x(0) * b;
        g(1) = 200.0 * b;
        return a * a + 100.0 * b * b;
    };
    Vec x0(2);
    x0 << -1.2, 1.0;
    BfgsResult r = bfgs_minimize(fg, x0);
    REQUIRE(r.f < 1e-15);
    REQUIRE(r.x(0) == Approx(1.0).margin(1e-6));
    REQUIRE(r.x(1) == Approx(1.0).margin(1e-6));
}

TEST_CASE("bfgs monotone decrease from the start point", "[bfgs]") {
    auto fg = [](const Vec& x, Vec& g) {
        g = 2.0 * x;
        return x.squaredNorm();
    };
    Vec x0(4);
    x0 << 3, -2, 1, 0.5;
    Vec g0(4);
    const double f0 = fg(x0, g0);
    BfgsResult r = bfgs_minimize(fg, x0);
    REQUIRE(r.f <= f0);
    REQUIRE(r.converged);
}

TEST_CASE("bfgs with zero parameters", "[bfgs]") {
    auto fg = [](const Vec&, Vec&) { return 7.0; };
    BfgsResult r = bfgs_minimize(fg, Vec(0));
    REQUIRE(r.f == 7.0);
    REQUIRE(r.converged);
}
