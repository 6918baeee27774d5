#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "discgeom/cylinder.hpp"
#include "discgeom/errors.hpp"
#include "discgeom/meshgen.hpp"
#include "discgeom/tri_disc_mesh.hpp"
#include "doctest.h"

using namespace discgeom;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * std::numbers::pi;

double ang_dist(double x, double y) {
    const double d = std::abs(x - y);
    return std::min(d, kTau - d);
}

// Cyclic graph metric on n points with unit steps.
FiniteMetricSpace circle_space(int n) {
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int k = std::abs(i - j);
            d(i, j) = std::min(k, n - k);
        }
    return make_metric_space(index_labels(n), d);
}

SampledLoop uniform_loop(const FiniteMetricSpace& ambient, const std::vector<int>& points,
                         double total) {
    std::vector<SampledLoop::Sample> s(points.size());
    for (size_t i = 0; i < points.size(); ++i)
        s[i] = {kTau * static_cast<double>(i) / points.size(), points[i]};
    return make_sampled_loop(std::move(s), total, ambient);
}

// Independent evaluation of the three-case gluing formula, straight loops.
Eigen::MatrixXd glue_oracle(const FiniteMetricSpace& base, const SampledLoop& loop, double L,
                            double R, int a, int h) {
    const int n = base.size();
    const int m = loop.size();
    const int nc = a * h;
    const double scale = L / kTau;
    auto collar_to_loop = [&](int t, int y) {
        const int i = y % a;
        const int j = y / a + 1;
        return std::hypot(scale * ang_dist(loop.samples[t].angle, kTau * i / a),
                          R * (static_cast<double>(j) / h));
    };
    Eigen::MatrixXd d(n + nc, n + nc);
    d.topLeftCorner(n, n) = base.dist;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < nc; ++y) {
            double best = std::numeric_limits<double>::infinity();
            for (int t = 0; t < m; ++t)
                best = std::min(best, base(x, loop.samples[t].point) + collar_to_loop(t, y));
            d(x, n + y) = d(n + y, x) = best;
        }
    for (int y1 = 0; y1 < nc; ++y1) {
        d(n + y1, n + y1) = 0.0;
        for (int y2 = y1 + 1; y2 < nc; ++y2) {
            const int i1 = y1 % a, i2 = y2 % a;
            const int j1 = y1 / a + 1, j2 = y2 / a + 1;
            double best = std::hypot(
                scale * ang_dist(kTau * i1 / a, kTau * i2 / a),
                R * std::abs(static_cast<double>(j2) / h - static_cast<double>(j1) / h));
            for (int t = 0; t < m; ++t)
                for (int s = 0; s < m; ++s)
                    best = std::min(best,
                                    collar_to_loop(t, y1) +
                                        (base(loop.samples[t].point, loop.samples[s].point) +
                                         collar_to_loop(s, y2)));
            d(n + y1, n + y2) = d(n + y2, n + y1) = best;
        }
    }
    return d;
}

}  // namespace

TEST_CASE("single-point base grows a capped cone") {
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(1, 1);
    const FiniteMetricSpace pt = make_metric_space({"pt"}, z);
    const SampledLoop loop = uniform_loop(pt, std::vector<int>(8, 0), 0.0);
    const CylinderSpace c = build_cylinder(pt, loop, kTau, 1.0, 8, 4);

    CHECK(c.space.size() == 33);
    CHECK(c.lip == 0.0);

    // antipodal top points: over the cylinder pi, through the tip 2
    CHECK(c.space(c.collar_index(0, 4), c.collar_index(4, 4)) == 2.0);
    // radial distances from the tip are exact at every grid point
    for (int j = 1; j <= 4; ++j)
        for (int i = 0; i < 8; i += 3)
            CHECK(c.space(0, c.collar_index(i, j)) == 1.0 * (static_cast<double>(j) / 4));

    const CylinderReport rep = verify_cylinder(c, 200, 1);
    CHECK(rep.embedding_error == 0.0);
    CHECK(rep.net_radius == 1.0);
    CHECK(rep.collar_area == kTau);
    CHECK(!rep.base_area.has_value());
    CHECK(!rep.total_area.has_value());
    CHECK(!rep.c_base.has_value());
    CHECK(!rep.c_cyl.has_value());
    CHECK(!rep.c_transfer_bound.has_value());
    CHECK(rep.gammaR_length == kTau);
    // R < L here, so the tip shortcuts the top circle: arc pi vs chord 2
    CHECK(rep.gammaR_chord_arc == kPi / 2);
}

TEST_CASE("glued metric matches the direct three-case evaluation") {
    const FiniteMetricSpace base = circle_space(8);
    const SampledLoop loop = uniform_loop(base, {0, 1, 2, 3, 4, 5, 6, 7}, 8.0);
    const CylinderSpace c = build_cylinder(base, loop, 8.0, 2.0, 8, 2);

    const Eigen::MatrixXd want = glue_oracle(base, loop, 8.0, 2.0, 8, 2);
    REQUIRE(c.space.dist.rows() == want.rows());
    CHECK((c.space.dist - want).cwiseAbs().maxCoeff() == 0.0);

    // the glued metric stays below both one-sided caps
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) CHECK(c.space(i, j) == base(i, j));
    for (int y1 = 0; y1 < 16; ++y1)
        for (int y2 = 0; y2 < 16; ++y2) {
            const int i1 = y1 % 8, i2 = y2 % 8;
            const double flat =
                std::hypot((8.0 / kTau) * ang_dist(kTau * i1 / 8, kTau * i2 / 8),
                           2.0 * std::abs((y2 / 8 + 1) / 2.0 - (y1 / 8 + 1) / 2.0));
            CHECK(c.space(8 + y1, 8 + y2) <= flat + 1e-15);
        }
}

TEST_CASE("collar height scales distances monotonically") {
    const FiniteMetricSpace base = circle_space(8);
    const SampledLoop loop = uniform_loop(base, {0, 1, 2, 3, 4, 5, 6, 7}, 8.0);
    const CylinderSpace small = build_cylinder(base, loop, 8.0, 0.5, 8, 2);
    const CylinderSpace tall = build_cylinder(base, loop, 8.0, 2.0, 8, 2);
    for (int x = 0; x < 8; ++x)
        for (int i = 0; i < 8; ++i) {
            const int top = small.collar_index(i, 2);
            CHECK(tall.space(x, top) >= small.space(x, top));
        }
}

TEST_CASE("denser loop sampling only shortens glued distances") {
    const FiniteMetricSpace base = circle_space(8);
    const SampledLoop dense = uniform_loop(base, {0, 1, 2, 3, 4, 5, 6, 7}, 8.0);
    std::vector<SampledLoop::Sample> half;
    for (int i = 0; i < 8; i += 2) half.push_back({kTau * i / 8, i});
    const SampledLoop sparse = make_sampled_loop(std::move(half), 8.0, base);

    const CylinderSpace cd = build_cylinder(base, dense, 8.0, 2.0, 8, 2);
    const CylinderSpace cs = build_cylinder(base, sparse, 8.0, 2.0, 8, 2);
    REQUIRE(cd.space.size() == cs.space.size());
    for (int p = 0; p < cd.space.size(); ++p)
        for (int q = 0; q < cd.space.size(); ++q) CHECK(cd.space(p, q) <= cs.space(p, q));
}

TEST_CASE("grid refinement preserves distances at shared points") {
    const FiniteMetricSpace base = circle_space(8);
    const SampledLoop loop = uniform_loop(base, {0, 1, 2, 3, 4, 5, 6, 7}, 8.0);
    const CylinderSpace coarse = build_cylinder(base, loop, 8.0, 2.0, 8, 2);
    const CylinderSpace fine = build_cylinder(base, loop, 8.0, 2.0, 16, 4);
    for (int i1 = 0; i1 < 8; ++i1)
        for (int j1 = 1; j1 <= 2; ++j1)
            for (int i2 = 0; i2 < 8; ++i2)
                for (int j2 = 1; j2 <= 2; ++j2) {
                    const double dc = coarse.space(coarse.collar_index(i1, j1),
                                                   coarse.collar_index(i2, j2));
                    const double df =
                        fine.space(fine.collar_index(2 * i1, 2 * j1), fine.collar_index(2 * i2, 2 * j2));
                    CHECK(df <= dc);
                    CHECK(df == dc);
                }
}

TEST_CASE("gluing rejects bad hypotheses and resolutions") {
    const FiniteMetricSpace base = circle_space(8);
    const SampledLoop loop = uniform_loop(base, {0, 1, 2, 3, 4, 5, 6, 7}, 8.0);

    CHECK_THROWS_WITH_AS(build_cylinder(base, loop, 7.0, 1.0, 8, 2),
                         doctest::Contains("below 2*pi*Lip"), HypothesisError);
    CHECK_THROWS_WITH_AS(build_cylinder(base, loop, 8.0, 1.0, 7, 2),
                         doctest::Contains("coarser than the loop"), ResolutionError);
    CHECK_THROWS_AS(build_cylinder(base, loop, 8.0, 1.0, 8, 0), ResolutionError);
    CHECK_THROWS_AS(build_cylinder(base, loop, 0.0, 1.0, 8, 2), DomainError);
    CHECK_THROWS_AS(build_cylinder(base, loop, 8.0, -1.0, 8, 2), DomainError);

    std::vector<SampledLoop::Sample> bad = {{0.0, 0}, {kPi, 9}};
    SampledLoop stray;
    stray.samples = bad;
    stray.total_length = 0.0;
    CHECK_THROWS_WITH_AS(build_cylinder(base, stray, 8.0, 1.0, 8, 2),
                         doctest::Contains("outside the base"), InputError);
}

TEST_CASE("transfer constant picks the larger collar correction") {
    CHECK(transfer_constants(1.0 / (4.0 * kPi), 1.0, 1.0) == 1.0 / (4.0 * kPi) + 1.0);
    CHECK(transfer_constants(0.1, 10.0, 0.1) == 0.1 + 1.0 / kTau);
    CHECK(transfer_constants(0.1, 10.0, 0.1) == doctest::Approx(0.2592).epsilon(1e-4));
    CHECK(transfer_constants(0.0, 2.5, 2.5) == 1.0);

    CHECK_THROWS_AS(transfer_constants(-0.01, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(transfer_constants(0.1, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(transfer_constants(0.1, 1.0, -1.0), DomainError);
}

TEST_CASE("contractibility slope is affine in the isoperimetric constant") {
    CHECK(lgc_bound(0.0) == std::pair{1.0, 0.0});
    CHECK(lgc_bound(1.0) == std::pair{9.0, 0.0});
    CHECK(lgc_bound(1.0 / (4.0 * kPi)).first == doctest::Approx(1.0 + 2.0 / kPi).epsilon(1e-15));
    CHECK(lgc_bound(1.0 / (4.0 * kPi)).second == 0.0);
    CHECK_THROWS_AS(lgc_bound(-0.1), DomainError);
}

TEST_CASE("meshed fan cylinder verifies its construction promises") {
    const EmbeddedMesh fan = fan_disc(8);
    const FiniteMetricSpace vm = vertex_metric(fan.mesh);
    const SampledLoop loop = boundary_loop(fan.mesh);
    const double L = loop.total_length;
    const double R = L;

    CylinderSpace c = build_cylinder(vm, loop, L, R, 16, 4);
    c.base_mesh = fan.mesh;
    const CylinderReport rep = verify_cylinder(c, 500, 7);

    CHECK(rep.embedding_error == 0.0);
    CHECK(rep.net_radius >= R);
    CHECK(rep.net_radius <= R + R / 16);
    CHECK(rep.glue_slack == doctest::Approx(L / 4).epsilon(1e-9));
    CHECK(rep.midpoint_defect >= 0.0);
    CHECK(rep.midpoint_defect < R / 4);

    CHECK(rep.collar_area == L * R);
    REQUIRE(rep.base_area.has_value());
    REQUIRE(rep.total_area.has_value());
    CHECK(*rep.base_area == doctest::Approx(4.0 * std::sin(kPi / 4)).epsilon(1e-12));
    CHECK(*rep.total_area == *rep.base_area + rep.collar_area);
    CHECK(*rep.total_area - *rep.base_area == rep.collar_area);

    CHECK(rep.gammaR_length == L);
    CHECK(rep.gammaR_chord_arc >= 1.0);
    CHECK(rep.gammaR_chord_arc <= 1.0 + 1e-12);

    REQUIRE(rep.c_base.has_value());
    REQUIRE(rep.c_cyl.has_value());
    REQUIRE(rep.c_transfer_bound.has_value());
    CHECK(*rep.c_base ==
          doctest::Approx(std::cos(kPi / 8) / (32.0 * std::sin(kPi / 8))).epsilon(1e-12));
    CHECK(*rep.c_transfer_bound == transfer_constants(*rep.c_base, L, R));
    CHECK(*rep.c_cyl <= *rep.c_transfer_bound + 0.05);
    CHECK(*rep.c_cyl > 0.0);
}

TEST_CASE("triangulated collar extends the mesh by L times R") {
    const EmbeddedMesh fan = fan_disc(8);
    const SampledLoop loop = boundary_loop(fan.mesh);
    const double L = loop.total_length;
    const TriDiscMesh cyl = triangulated_cylinder(fan.mesh, loop, L, 1.5, 4);

    CHECK(cyl.num_vertices() == 9 + 8 * 4);
    CHECK(cyl.num_triangles() == 8 + 2 * 8 * 4);
    CHECK(mesh_area(cyl) == doctest::Approx(mesh_area(fan.mesh) + L * 1.5).epsilon(1e-12));

    // the glued mesh is a disc whose boundary is the collar top circle
    const SampledLoop top = boundary_loop(cyl);
    REQUIRE(top.size() == 8);
    for (int i = 0; i < 8; ++i) CHECK(top.samples[i].point == 9 + 8 * 3 + i);
    CHECK(top.total_length == doctest::Approx(L).epsilon(1e-12));
}

TEST_CASE("triangulated collar rejects loops that leave the boundary") {
    const EmbeddedMesh fan = fan_disc(8);
    const FiniteMetricSpace vm = vertex_metric(fan.mesh);
    const SampledLoop loop = boundary_loop(fan.mesh);

    std::vector<SampledLoop::Sample> hop;
    const double side = 2.0 * std::sin(kPi / 8);
    for (int i = 0; i < 4; ++i) hop.push_back({kTau * i / 4, 2 * i});
    const SampledLoop skipping = make_sampled_loop(std::move(hop), 8.0 * side, vm);
    CHECK_THROWS_WITH_AS(triangulated_cylinder(fan.mesh, skipping, 8.0 * side, 1.0, 2),
                         doctest::Contains("mesh edge"), InputError);

    CHECK_THROWS_AS(triangulated_cylinder(fan.mesh, loop, loop.total_length, 1.0, 0),
                    ResolutionError);
    CHECK_THROWS_AS(triangulated_cylinder(fan.mesh, loop, 0.0, 1.0, 2), DomainError);

    SampledLoop tiny;
    tiny.samples = {{0.0, 0}};
    tiny.total_length = 0.0;
    CHECK_THROWS_WITH_AS(triangulated_cylinder(fan.mesh, tiny, 1.0, 1.0, 2),
                         doctest::Contains("at least 3"), InputError);
}
