#include <doctest.h>

#include <set>

#include "itolab/grid.hpp"

using namespace itolab;

namespace {

GridSpec unit_interval(double h) {
    GridSpec spec;
    spec.dim = 1;
    spec.lo = {0.0, 0.0};
    spec.hi = {1.0, 1.0};
    spec.h = h;
    return spec;
}

} // namespace

TEST_CASE("1-D unit interval with h = 1/4 has three interior nodes") {
    const GridPtr g = build_grid(unit_interval(0.25));
    REQUIRE(g->num_nodes() == 3);
    CHECK(g->position_of(0)[0] == doctest::Approx(0.25));
    CHECK(g->position_of(1)[0] == doctest::Approx(0.5));
    CHECK(g->position_of(2)[0] == doctest::Approx(0.75));
}

TEST_CASE("1-D unit interval with h = 1/2 has the single midpoint node") {
    const GridPtr g = build_grid(unit_interval(0.5));
    REQUIRE(g->num_nodes() == 1);
    CHECK(g->position_of(0)[0] == doctest::Approx(0.5));
}

TEST_CASE("2-D unit square with h = 1/3 has four interior nodes") {
    GridSpec spec;
    spec.dim = 2;
    spec.lo = {0.0, 0.0};
    spec.hi = {1.0, 1.0};
    spec.h = 1.0 / 3.0;
    const GridPtr g = build_grid(spec);
    CHECK(g->num_nodes() == 4);
}

TEST_CASE("node indexing is a bijection onto 0..N-1") {
    GridSpec spec;
    spec.dim = 2;
    spec.lo = {0.0, 0.0};
    spec.hi = {1.0, 1.0};
    spec.h = 0.125;
    spec.indicator = [](const Coord& x) {
        const double dx = x[0] - 0.5, dy = x[1] - 0.5;
        return dx * dx + dy * dy < 0.16;
    };
    const GridPtr g = build_grid(spec);
    REQUIRE(g->num_nodes() > 0);
    std::set<int> seen;
    for (int i = 0; i < g->num_nodes(); ++i) {
        const LatticeCoord k = g->lattice_of(i);
        CHECK(g->node_at(k) == i);
        // strictly inside the box
        CHECK(k[0] > 0);
        CHECK(k[0] < g->extent(0));
        CHECK(k[1] > 0);
        CHECK(k[1] < g->extent(1));
        seen.insert(i);
    }
    CHECK(static_cast<int>(seen.size()) == g->num_nodes());
}

TEST_CASE("empty interior is rejected") {
    GridSpec spec = unit_interval(0.25);
    spec.indicator = [](const Coord&) { return false; };
    CHECK_THROWS_AS(build_grid(spec), EmptyInterior);
}

TEST_CASE("grid function evaluates to zero off the interior") {
    const GridPtr g = build_grid(unit_interval(0.5));
    GridFunction u(g);
    u[0] = 7.0;
    CHECK(u.at_lattice({1, 0}) == 7.0);
    CHECK(u.at_lattice({0, 0}) == 0.0); // boundary lattice node
    CHECK(u.at_lattice({2, 0}) == 0.0);
    CHECK(u.at_lattice({5, 0}) == 0.0); // outside the box entirely
}

TEST_CASE("grid functions on different grids refuse to combine") {
    const GridPtr g1 = build_grid(unit_interval(0.25));
    const GridPtr g2 = build_grid(unit_interval(0.25));
    GridFunction u(g1), v(g2);
    CHECK_THROWS_AS(u += v, GridMismatch);
}

TEST_CASE("multi-index enumeration covers |alpha| <= m with zero first") {
    const auto idx1 = multi_indices_up_to(1, 2);
    REQUIRE(idx1.size() == 3);
    CHECK(idx1[0].order() == 0);
    const auto idx2 = multi_indices_up_to(2, 2);
    REQUIRE(idx2.size() == 6); // (0,0),(1,0),(0,1),(2,0),(1,1),(0,2)
    CHECK(idx2[0].order() == 0);
    for (const MultiIndex& a : idx2) CHECK(a.order() == a.a[0] + a.a[1]);
}

TEST_CASE("sobolev order must be at least one") {
    CHECK_THROWS(SobolevOrder(0));
    CHECK(SobolevOrder(2).m == 2);
}
