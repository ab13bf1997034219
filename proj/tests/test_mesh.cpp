#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wfem/errors.hpp"
#include "wfem/mesh.hpp"

#include <cmath>

using namespace wfem;

TEST_CASE("uniform mesh on (-1, 1) with four elements")
{
    const Mesh1D m = build_uniform_mesh(-1.0, 1.0, 4);
    REQUIRE(m.n_nodes() == 5);
    const double want[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    for (int k = 0; k < 5; ++k)
        CHECK(m.nodes[static_cast<std::size_t>(k)] == want[k]);
    CHECK(m.h == 0.5);
    CHECK(m.length() == 2.0);
}

TEST_CASE("unit interval with two elements")
{
    const Mesh1D m = build_uniform_mesh(0.0, 1.0, 2);
    CHECK(m.nodes == std::vector<double>{0.0, 0.5, 1.0});
}

TEST_CASE("dyadic meshes: spacing and total length")
{
    for (int k = 1; k <= 12; ++k) {
        const Mesh1D m = build_uniform_mesh(-1.0, 1.0, 1 << k);
        CHECK(m.h == std::ldexp(1.0, 1 - k));
        CHECK(m.nodes.front() == -1.0);
        CHECK(m.nodes.back() == 1.0);
        double total = 0.0;
        for (int e = 0; e < m.n_elems; ++e) {
            const double len = m.right(e) - m.left(e);
            CHECK(len > 0.0);
            CHECK(std::abs(len - m.h) <= 1e-15);
            total += len;
        }
        CHECK(std::abs(total - 2.0) <= 2e-14);
    }
}

TEST_CASE("shrunk domain keeps the endpoints exactly")
{
    const double eps = 1e-10;
    const Mesh1D m = build_uniform_mesh(-1.0 + eps, 1.0 - eps, 64);
    CHECK(m.nodes.front() == -1.0 + eps);
    CHECK(m.nodes.back() == 1.0 - eps);
    CHECK(std::abs(m.h - (1.0 - eps) / 32.0) <= 1e-16);
}

TEST_CASE("invalid meshes are rejected")
{
    CHECK_THROWS_AS(build_uniform_mesh(1.0, 1.0, 4), ArgumentError);
    CHECK_THROWS_AS(build_uniform_mesh(2.0, 1.0, 4), ArgumentError);
    CHECK_THROWS_AS(build_uniform_mesh(-1.0, 1.0, 1), ArgumentError);
    CHECK_THROWS_AS(build_uniform_mesh(-1.0, 1.0, 0), ArgumentError);
}

TEST_CASE("locate")
{
    const Mesh1D m = build_uniform_mesh(-1.0, 1.0, 4);
    CHECK(m.locate(-1.0) == 0);
    CHECK(m.locate(-0.75) == 0);
    CHECK(m.locate(-0.5) == 0);
    CHECK(m.locate(-0.49) == 1);
    CHECK(m.locate(0.99) == 3);
    CHECK(m.locate(1.0) == 3);
    CHECK(m.locate(1.01) == -1);
    CHECK(m.locate(-1.01) == -1);
}

TEST_CASE("element pair classes")
{
    CHECK(element_pair_class(3, 3) == PairClass::identical);
    CHECK(element_pair_class(3, 4) == PairClass::adjacent);
    CHECK(element_pair_class(4, 3) == PairClass::adjacent);
    CHECK(element_pair_class(0, 5) == PairClass::disjoint);
    CHECK(element_pair_class(0, 2) == PairClass::disjoint);
}
