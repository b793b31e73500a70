#include <doctest.h>

#include <random>

#include "itolab/lattice.hpp"

using namespace itolab;

namespace {

GridPtr interval_grid(double h) {
    GridSpec spec;
    spec.dim = 1;
    spec.lo = {0.0, 0.0};
    spec.hi = {1.0, 1.0};
    spec.h = h;
    return build_grid(spec);
}

GridPtr square_grid(double h) {
    GridSpec spec;
    spec.dim = 2;
    spec.lo = {0.0, 0.0};
    spec.hi = {1.0, 1.0};
    spec.h = h;
    return build_grid(spec);
}

GridFunction random_function(const GridPtr& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    GridFunction u(g);
    for (int i = 0; i < u.size(); ++i) u[i] = dist(rng);
    return u;
}

} // namespace

TEST_CASE("forward difference of the single-node spike") {
    // h = 1/2, u(0.5) = 1: quotient 2 at x = 0 and -2 at x = 0.5
    const GridPtr g = interval_grid(0.5);
    GridFunction u(g);
    u[0] = 1.0;
    const LatticeField d = forward_diff(u, 0);
    CHECK(d.at({0, 0}) == doctest::Approx(2.0));
    CHECK(d.at({1, 0}) == doctest::Approx(-2.0));
    CHECK(d.at({2, 0}) == doctest::Approx(0.0));
    CHECK(d.at({-1, 0}) == doctest::Approx(0.0));
}

TEST_CASE("forward difference of zero is zero") {
    const GridPtr g = interval_grid(0.25);
    const LatticeField d = forward_diff(GridFunction::zeros(g), 0);
    for (double v : d.data()) CHECK(v == 0.0);
}

TEST_CASE("second difference of the spike by composing forward quotients") {
    const GridPtr g = interval_grid(0.5);
    GridFunction u(g);
    u[0] = 1.0;
    const LatticeField d2 = diff_alpha(u, MultiIndex(2, 1), SobolevOrder(2));
    CHECK(d2.at({-1, 0}) == doctest::Approx(4.0));
    CHECK(d2.at({0, 0}) == doctest::Approx(-8.0));
    CHECK(d2.at({1, 0}) == doctest::Approx(4.0));
}

TEST_CASE("diff_alpha refuses orders beyond the active space") {
    const GridPtr g = interval_grid(0.25);
    GridFunction u(g);
    CHECK_THROWS_AS(diff_alpha(u, MultiIndex(2, 1), SobolevOrder(1)), OrderTooHigh);
}

TEST_CASE("zero-order multi-index is the identity") {
    std::mt19937_64 rng(11);
    const GridPtr g = interval_grid(0.125);
    const GridFunction u = random_function(g, rng);
    const LatticeField d = diff_alpha(u, MultiIndex(0, 1), SobolevOrder(1));
    const GridFunction back = gather(d, g);
    for (int i = 0; i < u.size(); ++i) CHECK(back[i] == u[i]);
}

TEST_CASE("difference operators are linear") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 20; ++rep) {
        const GridPtr g = rep % 2 == 0 ? interval_grid(1.0 / 16) : square_grid(0.125);
        const GridFunction u = random_function(g, rng);
        const GridFunction v = random_function(g, rng);
        GridFunction w = u;
        w.axpy(2.5, v);
        for (int ax = 0; ax < g->dim(); ++ax) {
            const LatticeField dw = forward_diff(w, ax);
            const LatticeField du = forward_diff(u, ax);
            const LatticeField dv = forward_diff(v, ax);
            double worst = 0.0, scale = 0.0;
            LatticeCoord k{0, 0};
            for (k[1] = dw.lo()[1]; k[1] <= dw.hi()[1]; ++k[1])
                for (k[0] = dw.lo()[0]; k[0] <= dw.hi()[0]; ++k[0]) {
                    worst = std::max(worst, std::abs(dw.at(k) - du.at(k) - 2.5 * dv.at(k)));
                    scale = std::max(scale, std::abs(dw.at(k)));
                }
            CHECK(worst <= 1e-12 * std::max(scale, 1.0));
        }
    }
}

TEST_CASE("inner_H of a one-node indicator") {
    const GridPtr g = interval_grid(0.5);
    GridFunction u(g);
    u[0] = 1.0;
    CHECK(inner_H(u, u) == doctest::Approx(0.5));
    CHECK(inner_H(u, GridFunction::zeros(g)) == 0.0);
}

TEST_CASE("Cauchy-Schwarz for the H pairing on random pairs") {
    std::mt19937_64 rng(23);
    const GridPtr g = square_grid(0.125);
    for (int rep = 0; rep < 100; ++rep) {
        const GridFunction u = random_function(g, rng);
        const GridFunction v = random_function(g, rng);
        CHECK(std::abs(inner_H(u, v)) <= norm_H(u) * norm_H(v) * (1.0 + 1e-13));
    }
}

TEST_CASE("V inner product of the single-node spike at m = 1") {
    const GridPtr g = interval_grid(0.5);
    GridFunction u(g);
    u[0] = 1.0;
    // H term 0.5 plus gradient term 0.5 * (2^2 + (-2)^2) = 4
    CHECK(inner_V(u, u, SobolevOrder(1)) == doctest::Approx(4.5));
    CHECK(inner_V(GridFunction::zeros(g), GridFunction::zeros(g), SobolevOrder(1)) == 0.0);
}

TEST_CASE("H norm never exceeds V norm") {
    std::mt19937_64 rng(29);
    for (int rep = 0; rep < 100; ++rep) {
        const GridPtr g = rep % 2 == 0 ? interval_grid(1.0 / 32) : square_grid(1.0 / 8);
        const GridFunction u = random_function(g, rng);
        const double nh = norm_H(u);
        CHECK(nh <= norm_V(u, SobolevOrder(1)) * (1.0 + 1e-13));
        CHECK(nh <= norm_V(u, SobolevOrder(2)) * (1.0 + 1e-13));
    }
}

TEST_CASE("V inner product is monotone in the order m") {
    std::mt19937_64 rng(31);
    const GridPtr g = interval_grid(1.0 / 16);
    for (int rep = 0; rep < 20; ++rep) {
        const GridFunction u = random_function(g, rng);
        const double v1 = inner_V(u, u, SobolevOrder(1));
        const double v2 = inner_V(u, u, SobolevOrder(2));
        const double v3 = inner_V(u, u, SobolevOrder(3));
        CHECK(v1 <= v2 * (1.0 + 1e-13));
        CHECK(v2 <= v3 * (1.0 + 1e-13));
    }
}

TEST_CASE("summation by parts is exact for the staggered pairing") {
    // <D+ u, v> = -<u, D- v> on the lattice with zero extension
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 50; ++rep) {
        const GridPtr g = rep % 2 == 0 ? interval_grid(1.0 / 16) : square_grid(1.0 / 8);
        const GridFunction u = random_function(g, rng);
        const GridFunction v = random_function(g, rng);
        for (int ax = 0; ax < g->dim(); ++ax) {
            const double lhs = lattice_inner(forward_diff(u, ax), scatter(v));
            const double rhs = -lattice_inner(scatter(u), backward_diff(v, ax));
            CHECK(std::abs(lhs - rhs) <=
                  1e-12 * std::max({std::abs(lhs), std::abs(rhs), 1.0}));
        }
    }
}

TEST_CASE("central difference equals the average of adjacent forward quotients") {
    std::mt19937_64 rng(41);
    const GridPtr g = interval_grid(1.0 / 16);
    const GridFunction u = random_function(g, rng);
    const GridFunction c = central_diff_nodal(u, 0);
    const LatticeField d = forward_diff(u, 0);
    for (int i = 0; i < u.size(); ++i) {
        LatticeCoord k = g->lattice_of(i);
        LatticeCoord km = k;
        km[0] -= 1;
        CHECK(c[i] == doctest::Approx(0.5 * (d.at(k) + d.at(km))));
    }
}

TEST_CASE("inner products reject mismatched grids") {
    const GridPtr g1 = interval_grid(0.25);
    const GridPtr g2 = interval_grid(0.25);
    CHECK_THROWS_AS(inner_H(GridFunction(g1), GridFunction(g2)), GridMismatch);
    CHECK_THROWS_AS(inner_V(GridFunction(g1), GridFunction(g2), SobolevOrder(1)), GridMismatch);
}
