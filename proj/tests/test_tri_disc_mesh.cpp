#include "discgeom/tri_disc_mesh.hpp"

#include <cmath>
#include <numbers>

#include "discgeom/errors.hpp"
#include "discgeom/meshgen.hpp"
#include "doctest.h"

using namespace discgeom;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

TriDiscMesh triangle_345() {
    return make_tri_disc_mesh({"a", "b", "c"}, {{0, 1, 2}},
                              {{0, 1, 3.0}, {1, 2, 4.0}, {0, 2, 5.0}});
}

std::vector<WeightedGraph::Edge> unit_edges(const std::vector<std::pair<int, int>>& pairs) {
    std::vector<WeightedGraph::Edge> out;
    for (auto [u, v] : pairs) out.push_back({u, v, 1.0});
    return out;
}

}  // namespace

TEST_CASE("heron area from edge lengths") {
    CHECK(triangle_area(3, 4, 5) == 6.0);
    CHECK(triangle_area(5, 3, 4) == 6.0);
    CHECK(triangle_area(4, 5, 3) == 6.0);
    CHECK(triangle_area(2, 2, 2) == Approx(std::sqrt(3.0)));
    CHECK_THROWS_AS(triangle_area(1, 2, 3), GeometryError);    // flat
    CHECK_THROWS_AS(triangle_area(1, 2, 3.5), GeometryError);  // too long
    CHECK_THROWS_AS(triangle_area(1, 1, 2.0000001), GeometryError);
    CHECK_THROWS_AS(triangle_area(0, 1, 1), GeometryError);
    CHECK_THROWS_AS(triangle_area(-3, 4, 5), GeometryError);
}

TEST_CASE("3-4-5 triangle mesh") {
    auto m = triangle_345();
    CHECK(m.num_vertices() == 3);
    CHECK(m.num_edges() == 3);
    CHECK(mesh_area(m) == 6.0);
    CHECK(m.edge_length(1, 0) == 3.0);
    CHECK(m.is_boundary_edge(m.edge_index(0, 1)));

    auto d = vertex_metric(m);
    CHECK(d(0, 1) == 3.0);
    CHECK(d(1, 2) == 4.0);
    CHECK(d(0, 2) == 5.0);

    // single triangle: midpoint routes are strictly longer, metric unchanged
    auto ds = vertex_metric(m, true);
    CHECK((ds.dist - d.dist).cwiseAbs().maxCoeff() == 0.0);

    auto loop = boundary_loop(m);
    CHECK(loop.size() == 3);
    CHECK(loop.total_length == 12.0);
    CHECK(loop.samples[0].point == 0);
    CHECK(loop.samples[1].point == 1);
    CHECK(loop.samples[2].point == 2);
    CHECK(loop.samples[0].angle == 0.0);
    CHECK(loop.samples[1].angle == 2.0 * kPi * 0.25);        // after the length-3 edge
    CHECK(loop.samples[2].angle == Approx(2.0 * kPi * 7 / 12));  // after 3+4 of 12
}

TEST_CASE("sphere-like gluing has empty boundary") {
    CHECK_THROWS_WITH_AS(
        make_tri_disc_mesh({"a", "b", "c"}, {{0, 1, 2}, {0, 2, 1}},
                           unit_edges({{0, 1}, {1, 2}, {0, 2}})),
        doctest::Contains("empty boundary"), TopologyError);
}

TEST_CASE("topology failures are named") {
    // three triangles on one edge
    CHECK_THROWS_WITH_AS(
        make_tri_disc_mesh(index_labels(5), {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}},
                           unit_edges({{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {0, 4}, {1, 4}})),
        doctest::Contains("non-manifold edge"), TopologyError);

    // two fans pinched at vertex 0
    CHECK_THROWS_WITH_AS(
        make_tri_disc_mesh(index_labels(5), {{0, 1, 2}, {0, 3, 4}},
                           unit_edges({{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}})),
        doctest::Contains("vertex 0"), TopologyError);

    // two islands
    CHECK_THROWS_WITH_AS(
        make_tri_disc_mesh(index_labels(6), {{0, 1, 2}, {3, 4, 5}},
                           unit_edges({{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}})),
        doctest::Contains("not connected"), TopologyError);

    // Moebius strip: manifold, connected, one boundary cycle, yet no disc
    CHECK_THROWS_WITH_AS(
        make_tri_disc_mesh(index_labels(5),
                           {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 0}, {4, 0, 1}},
                           unit_edges({{0, 1}, {1, 2}, {0, 2}, {2, 3}, {1, 3}, {3, 4},
                                       {2, 4}, {0, 4}, {0, 3}, {1, 4}})),
        doctest::Contains("Euler"), TopologyError);

    // annulus: inner square ring removed from a fan
    Eigen::MatrixXd ring(8, 2);
    for (int k = 0; k < 4; ++k) {
        const double a = kPi * k / 2;
        ring.row(k) << std::cos(a), std::sin(a);
        ring.row(4 + k) << 2 * std::cos(a), 2 * std::sin(a);
    }
    std::vector<std::array<int, 3>> tris;
    for (int k = 0; k < 4; ++k) {
        const int i0 = k, i1 = (k + 1) % 4, o0 = 4 + k, o1 = 4 + (k + 1) % 4;
        tris.push_back({i0, o0, o1});
        tris.push_back({i0, o1, i1});
    }
    CHECK_THROWS_WITH_AS(make_tri_disc_mesh_from_coords(ring, tris),
                         doctest::Contains("multiple boundary cycles"), TopologyError);
}

TEST_CASE("mesh input validation") {
    CHECK_THROWS_AS(make_tri_disc_mesh({"a", "b", "c"}, {}, {}), InputError);
    // vertex out of range
    CHECK_THROWS_AS(make_tri_disc_mesh({"a", "b"}, {{0, 1, 2}}, unit_edges({{0, 1}})), InputError);
    // repeated vertex in a triangle
    CHECK_THROWS_AS(make_tri_disc_mesh({"a", "b", "c"}, {{0, 1, 1}}, unit_edges({{0, 1}, {1, 1}})),
                    InputError);
    // missing edge length
    CHECK_THROWS_WITH_AS(
        make_tri_disc_mesh({"a", "b", "c"}, {{0, 1, 2}}, unit_edges({{0, 1}, {1, 2}})),
        doctest::Contains("no length"), InputError);
    // stray edge
    CHECK_THROWS_WITH_AS(
        make_tri_disc_mesh({"a", "b", "c", "d"}, {{0, 1, 2}},
                           unit_edges({{0, 1}, {1, 2}, {0, 2}, {0, 3}})),
        doctest::Contains("belongs to no triangle"), InputError);
    // duplicate edge entry
    CHECK_THROWS_AS(make_tri_disc_mesh({"a", "b", "c"}, {{0, 1, 2}},
                                       unit_edges({{0, 1}, {1, 2}, {0, 2}, {1, 0}})),
                    InputError);
    // nonpositive length
    CHECK_THROWS_AS(
        make_tri_disc_mesh({"a", "b", "c"}, {{0, 1, 2}},
                           {{0, 1, 1.0}, {1, 2, 0.0}, {0, 2, 1.0}}),
        InputError);
    // degenerate triangle names its id
    CHECK_THROWS_WITH_AS(
        make_tri_disc_mesh({"a", "b", "c"}, {{0, 1, 2}},
                           {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}}),
        doctest::Contains("triangle 0"), GeometryError);
}

TEST_CASE("fan disc closed forms") {
    for (int n : {8, 16}) {
        auto fan = fan_disc(n);
        CHECK(fan.mesh.num_triangles() == n);
        CHECK(mesh_area(fan.mesh) == Approx(n * std::sin(kPi / n) * std::cos(kPi / n)));

        auto loop = boundary_loop(fan.mesh);
        CHECK(loop.size() == n);
        CHECK(loop.total_length == Approx(2 * n * std::sin(kPi / n)));
        for (int i = 0; i < n; ++i) {
            CHECK(loop.samples[i].point == i);
            CHECK(loop.samples[i].angle == Approx(2 * kPi * i / n).epsilon(1e-12));
        }

        auto d = vertex_metric(fan.mesh);
        CHECK(d(n, 0) == 1.0);  // radial edge, exact coordinates at angle 0
        for (int i = 0; i < n; ++i) CHECK(d(n, i) == Approx(1.0));
    }
}

TEST_CASE("unit square from two triangles") {
    auto sq = grid_rect(1, 1, 1.0, 1.0);
    CHECK(sq.mesh.num_triangles() == 2);
    CHECK(mesh_area(sq.mesh) == Approx(1.0));

    auto d = vertex_metric(sq.mesh);
    CHECK(d(1, 2) == 2.0);  // opposite corners off the diagonal route via a shared corner
    CHECK(d(0, 3) == Approx(std::numbers::sqrt2));

    auto loop = boundary_loop(sq.mesh);
    CHECK(loop.size() == 4);
    CHECK(loop.total_length == 4.0);
    CHECK(loop.samples[1].angle == 2.0 * kPi * 0.25);
    CHECK(loop.samples[2].angle == 2.0 * kPi * 0.5);
    CHECK(loop.samples[3].angle == 2.0 * kPi * 0.75);
    CHECK(loop.samples[0].point == 0);
    CHECK(loop.samples[1].point == 1);
    CHECK(loop.samples[2].point == 3);
    CHECK(loop.samples[3].point == 2);
}

TEST_CASE("grid mesh shape") {
    auto g = grid_rect(4, 4, 1.0, 1.0);
    CHECK(g.mesh.num_vertices() == 25);
    CHECK(g.mesh.num_triangles() == 32);
    CHECK(mesh_area(g.mesh) == Approx(1.0));
    CHECK(validate_metric(vertex_metric(g.mesh).dist, 1e-12).ok());
}

TEST_CASE("ring disc shape") {
    auto r = ring_disc(8, 0.5, 2.0);
    CHECK(r.mesh.num_vertices() == 17);
    CHECK(r.mesh.num_triangles() == 24);
    CHECK(mesh_area(r.mesh) == Approx(4 * std::sin(kPi / 4) * 4.0));  // outer octagon area

    auto loop = boundary_loop(r.mesh);
    CHECK(loop.size() == 8);
    for (int i = 0; i < 8; ++i) CHECK(loop.samples[i].point == 9 + i);
    CHECK(loop.total_length == Approx(2 * 8 * std::sin(kPi / 8) * 2.0));
}

TEST_CASE("midpoint subdivision never lengthens") {
    for (auto& em : {fan_disc(8), grid_rect(2, 2, 1.0, 1.0), ring_disc(6, 0.5, 1.0)}) {
        auto d0 = vertex_metric(em.mesh);
        auto d1 = vertex_metric(em.mesh, true);
        CHECK((d1.dist - d0.dist).maxCoeff() <= 0.0);
        CHECK(validate_metric(d1.dist, d1.tolerance).ok());
    }
    auto fan = fan_disc(8);
    auto d1 = vertex_metric(fan.mesh, true);
    CHECK(d1(8, 0) == 1.0);  // radial edge halves re-add exactly
    for (int i = 0; i < 8; ++i) CHECK(d1(8, i) == Approx(1.0));
}

TEST_CASE("sampled loop validation") {
    auto m = triangle_345();
    auto ambient = vertex_metric(m);

    CHECK_THROWS_AS(make_sampled_loop({}, 1.0, ambient), InputError);
    CHECK_THROWS_AS(make_sampled_loop({{0.0, 0}, {0.0, 1}}, 12.0, ambient), InputError);
    CHECK_THROWS_AS(make_sampled_loop({{0.0, 0}, {7.0, 1}}, 12.0, ambient), InputError);
    CHECK_THROWS_AS(make_sampled_loop({{-0.1, 0}, {1.0, 1}}, 12.0, ambient), InputError);
    CHECK_THROWS_AS(make_sampled_loop({{0.0, 0}, {1.0, 5}}, 12.0, ambient), InputError);
    CHECK_THROWS_AS(make_sampled_loop({{0.0, 0}, {1.0, 1}}, -2.0, ambient), InputError);

    // arc budget pi/2pi * 1.0 cannot cover a chord of 3
    CHECK_THROWS_WITH_AS(make_sampled_loop({{0.0, 0}, {kPi, 1}}, 1.0, ambient),
                         doctest::Contains("constant speed"), InputError);
    CHECK_NOTHROW(make_sampled_loop({{0.0, 0}, {kPi, 1}}, 12.0, ambient));

    // a loop may sit at one point; it is just not simple
    auto still = make_sampled_loop({{0.0, 0}, {kPi, 0}}, 0.0, ambient);
    CHECK(chord_arc_constant(still, ambient).lambda ==
          std::numeric_limits<double>::infinity());
}

TEST_CASE("chord-arc of an arc-length metric is 1") {
    const int n = 12;
    Eigen::MatrixXd dist(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int hop = std::abs(i - j);
            dist(i, j) = std::min(hop, n - hop);
        }
    auto circle = make_metric_space(index_labels(n), dist);
    std::vector<SampledLoop::Sample> samples;
    for (int i = 0; i < n; ++i) samples.push_back({2 * kPi * i / n, i});
    auto loop = make_sampled_loop(samples, static_cast<double>(n), circle);

    auto ca = chord_arc_constant(loop, circle);
    CHECK(ca.lambda == Approx(1.0));
    CHECK(ca.lambda >= 1.0);
    CHECK(ca.max_angle_gap == Approx(2 * kPi / n));
}

TEST_CASE("chord-arc of the fan boundary approaches pi/2") {
    double prev = 1.0;
    for (int n : {16, 32, 64}) {
        auto fan = fan_disc(n);
        auto d = vertex_metric(fan.mesh);
        auto ca = chord_arc_constant(boundary_loop(fan.mesh), d);
        CHECK(ca.lambda == Approx(n / 2.0 * std::sin(kPi / n)).epsilon(1e-9));
        CHECK(ca.lambda > prev);
        CHECK(ca.lambda < kPi / 2);
        prev = ca.lambda;
    }
}

TEST_CASE("mesh generator validation") {
    CHECK_THROWS_AS(fan_disc(2), InputError);
    CHECK_THROWS_AS(fan_disc(8, 0.0), InputError);
    CHECK_THROWS_AS(grid_rect(0, 1, 1.0, 1.0), InputError);
    CHECK_THROWS_AS(grid_rect(1, 1, 1.0, -1.0), InputError);
    CHECK_THROWS_AS(ring_disc(3, 1.0, 0.5), InputError);
}
