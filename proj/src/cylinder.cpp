#include "discgeom/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "discgeom/errors.hpp"
#include "discgeom/jordan.hpp"
#include "discgeom/rng.hpp"

namespace discgeom {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double angular_distance(double x, double y) {
    const double d = std::abs(x - y);
    return std::min(d, kTwoPi - d);
}

// Sample-scale Lipschitz constant of the loop with the attaining pair.
struct LipEstimate {
    double value = 0.0;
    int p = -1;
    int q = -1;
};

LipEstimate loop_lipschitz(const FiniteMetricSpace& base, const SampledLoop& loop) {
    LipEstimate lip;
    const int m = loop.size();
    for (int p = 0; p < m; ++p) {
        for (int q = p + 1; q < m; ++q) {
            const double ang = angular_distance(loop.samples[p].angle, loop.samples[q].angle);
            if (!(ang > 0.0)) continue;
            const double ratio = base(loop.samples[p].point, loop.samples[q].point) / ang;
            if (ratio > lip.value) lip = {ratio, p, q};
        }
    }
    return lip;
}

double max_angle_gap(const SampledLoop& loop) {
    const int m = loop.size();
    if (m <= 1) return kTwoPi;
    double g = kTwoPi - loop.samples[m - 1].angle + loop.samples[0].angle;
    for (int i = 0; i + 1 < m; ++i)
        g = std::max(g, loop.samples[i + 1].angle - loop.samples[i].angle);
    return g;
}

}  // namespace

double CylinderSpace::grid_angle(int i) const { return kTwoPi * i / grid_a; }

CylinderSpace build_cylinder(const FiniteMetricSpace& base, const SampledLoop& loop,
                             double L, double R, int a, int h) {
    if (!(L > 0.0) || !std::isfinite(L) || !(R > 0.0) || !std::isfinite(R)) {
        std::ostringstream os;
        os << "cylinder needs positive finite L and R, got L=" << L << " R=" << R;
        throw DomainError(os.str());
    }
    const int n = base.size();
    const int m = loop.size();
    if (n < 1) throw InputError("base space is empty");
    if (m < 1) throw InputError("loop has no samples");
    for (int t = 0; t < m; ++t) {
        const int p = loop.samples[t].point;
        if (p < 0 || p >= n) {
            std::ostringstream os;
            os << "loop sample " << t << " names point " << p << " outside the base space of size "
               << n;
            throw InputError(os.str());
        }
    }
    if (a < m) {
        std::ostringstream os;
        os << "angular resolution a=" << a << " is coarser than the loop sampling (" << m
           << " samples)";
        throw ResolutionError(os.str());
    }
    if (h < 1) {
        std::ostringstream os;
        os << "height resolution h=" << h << " leaves no collar rows";
        throw ResolutionError(os.str());
    }

    const LipEstimate lip = loop_lipschitz(base, loop);
    if (L + 1e-9 * std::max(1.0, L) < kTwoPi * lip.value) {
        std::ostringstream os;
        os << "collar circumference L=" << L << " is below 2*pi*Lip(gamma)=" << kTwoPi * lip.value
           << " measured at sample scale; worst pair: samples " << lip.p << " and " << lip.q;
        throw HypothesisError(os.str());
    }

    const double ang_scale = L / kTwoPi;
    const int nc = a * h;
    const int total = n + nc;

    std::vector<double> phi(a);
    for (int i = 0; i < a; ++i) phi[i] = kTwoPi * i / a;
    std::vector<double> height(h);
    for (int j = 1; j <= h; ++j) height[j - 1] = static_cast<double>(j) / h;

    // A(t, y): flat-cylinder distance from loop angle t at height 0 to grid point y.
    Eigen::MatrixXd A(m, nc);
    for (int t = 0; t < m; ++t) {
        const double th = loop.samples[t].angle;
        for (int j = 0; j < h; ++j) {
            const double vert = R * height[j];
            for (int i = 0; i < a; ++i)
                A(t, j * a + i) = std::hypot(ang_scale * angular_distance(th, phi[i]), vert);
        }
    }

    // B(t, y): best detour through the base, min over s of d_X(gamma_t, gamma_s) + A(s, y).
    Eigen::MatrixXd B = Eigen::MatrixXd::Constant(m, nc, kInf);
    for (int t = 0; t < m; ++t)
        for (int s = 0; s < m; ++s) {
            const double g = base(loop.samples[t].point, loop.samples[s].point);
            B.row(t).array() = B.row(t).array().min(A.row(s).array() + g);
        }

    Eigen::MatrixXd dist(total, total);
    dist.topLeftCorner(n, n) = base.dist;

    Eigen::RowVectorXd row(nc);
    for (int x = 0; x < n; ++x) {
        row.setConstant(kInf);
        for (int t = 0; t < m; ++t)
            row.array() = row.array().min(A.row(t).array() + base(x, loop.samples[t].point));
        dist.block(x, n, 1, nc) = row;
        dist.block(n, x, nc, 1) = row.transpose();
    }

    for (int y1 = 0; y1 < nc; ++y1) {
        dist(n + y1, n + y1) = 0.0;
        const int i1 = y1 % a;
        const double s1 = height[y1 / a];
        for (int y2 = y1 + 1; y2 < nc; ++y2) {
            const int i2 = y2 % a;
            const double flat = std::hypot(ang_scale * angular_distance(phi[i1], phi[i2]),
                                           R * std::abs(height[y2 / a] - s1));
            const double through = (A.col(y1) + B.col(y2)).minCoeff();
            const double d = std::min(flat, through);
            dist(n + y1, n + y2) = d;
            dist(n + y2, n + y1) = d;
        }
    }

    const double tol = default_metric_tolerance(dist);
    const MetricValidation val = validate_metric(dist, tol, false);
    if (!val.ok())
        throw GeometryError("glued cylinder metric failed validation: " + val.summary());

    std::vector<std::string> labels = base.labels;
    labels.reserve(total);
    for (int j = 1; j <= h; ++j)
        for (int i = 0; i < a; ++i)
            labels.push_back("c" + std::to_string(i) + "_" + std::to_string(j));

    CylinderSpace cs;
    cs.base = base;
    cs.loop = loop;
    cs.L = L;
    cs.R = R;
    cs.grid_a = a;
    cs.grid_h = h;
    cs.lip = lip.value;
    cs.space = FiniteMetricSpace{std::move(labels), std::move(dist), tol};
    return cs;
}

TriDiscMesh triangulated_cylinder(const TriDiscMesh& base, const SampledLoop& loop, double L,
                                  double R, int h) {
    if (!(L > 0.0) || !std::isfinite(L) || !(R > 0.0) || !std::isfinite(R)) {
        std::ostringstream os;
        os << "cylinder needs positive finite L and R, got L=" << L << " R=" << R;
        throw DomainError(os.str());
    }
    if (h < 1) {
        std::ostringstream os;
        os << "height resolution h=" << h << " leaves no collar rows";
        throw ResolutionError(os.str());
    }
    const int m = loop.size();
    if (m < 3) throw InputError("collar needs a loop of at least 3 samples");

    const int nb = base.num_vertices();
    for (int t = 0; t < m; ++t) {
        const int u = loop.samples[t].point;
        const int v = loop.samples[(t + 1) % m].point;
        if (u < 0 || u >= nb || v < 0 || v >= nb || base.edge_index(u, v) < 0) {
            std::ostringstream os;
            os << "loop samples " << t << " and " << (t + 1) % m
               << " do not span a mesh edge; the loop must walk the boundary cycle";
            throw InputError(os.str());
        }
    }

    const double ang_scale = L / kTwoPi;
    const double rise = R / h;
    std::vector<double> width(m);
    for (int i = 0; i < m; ++i) {
        const double gap = (i + 1 < m) ? loop.samples[i + 1].angle - loop.samples[i].angle
                                       : kTwoPi - loop.samples[i].angle + loop.samples[0].angle;
        width[i] = ang_scale * gap;
        if (!(width[i] > 0.0)) {
            std::ostringstream os;
            os << "loop samples " << i << " and " << (i + 1) % m << " leave no angular gap";
            throw InputError(os.str());
        }
    }

    std::vector<std::string> labels = base.vertices;
    labels.reserve(nb + m * h);
    for (int j = 1; j <= h; ++j)
        for (int i = 0; i < m; ++i)
            labels.push_back("c" + std::to_string(i) + "_" + std::to_string(j));

    auto vid = [&](int i, int j) {
        return j == 0 ? loop.samples[i].point : nb + (j - 1) * m + i;
    };

    std::vector<std::array<int, 3>> triangles = base.triangles;
    std::vector<WeightedGraph::Edge> lengths = base.edges;
    triangles.reserve(triangles.size() + 2 * m * h);
    lengths.reserve(lengths.size() + 3 * m * h);
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < m; ++i) {
            const int i2 = (i + 1) % m;
            const int bl = vid(i, j);
            const int br = vid(i2, j);
            const int tl = vid(i, j + 1);
            const int tr = vid(i2, j + 1);
            triangles.push_back({bl, br, tr});
            triangles.push_back({bl, tr, tl});
            lengths.push_back({std::min(bl, tl), std::max(bl, tl), rise});
            lengths.push_back({std::min(tl, tr), std::max(tl, tr), width[i]});
            lengths.push_back({std::min(bl, tr), std::max(bl, tr), std::hypot(width[i], rise)});
        }
    }
    return make_tri_disc_mesh(std::move(labels), std::move(triangles), lengths);
}

CylinderReport verify_cylinder(const CylinderSpace& c, int budget, std::uint64_t seed) {
    const int n = c.base_size();
    const int nc = c.grid_a * c.grid_h;
    const int total = n + nc;
    const Eigen::MatrixXd& d = c.space.dist;

    CylinderReport rep;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            rep.embedding_error = std::max(rep.embedding_error, std::abs(d(i, j) - c.base(i, j)));

    for (int y = n; y < total; ++y)
        rep.net_radius = std::max(rep.net_radius, d.col(y).head(n).minCoeff());

    rep.glue_slack = (c.L / kTwoPi + c.lip) * max_angle_gap(c.loop);
    rep.collar_area = c.L * c.R;

    Rng rng(seed);
    const std::uint64_t seed_base = rng.next_u64();
    const std::uint64_t seed_cyl = rng.next_u64();
    if (total >= 2) {
        for (int k = 0; k < budget; ++k) {
            const int p = static_cast<int>(rng.next_below(total));
            const int q = static_cast<int>(rng.next_below(total));
            if (p == q) continue;
            const double half = d(p, q) / 2.0;
            double best = kInf;
            for (int z = 0; z < total; ++z)
                best = std::min(best, std::max(std::abs(d(p, z) - half), std::abs(d(z, q) - half)));
            rep.midpoint_defect = std::max(rep.midpoint_defect, best);
        }
    }

    std::vector<SampledLoop::Sample> top(c.grid_a);
    for (int i = 0; i < c.grid_a; ++i) top[i] = {c.grid_angle(i), c.collar_index(i, c.grid_h)};
    const SampledLoop gammaR = make_sampled_loop(std::move(top), c.L, c.space);
    rep.gammaR_length = c.L;
    rep.gammaR_chord_arc = chord_arc_constant(gammaR, c.space).lambda;

    if (c.base_mesh) {
        const TriDiscMesh& bm = *c.base_mesh;
        rep.base_area = mesh_area(bm);
        rep.total_area = *rep.base_area + rep.collar_area;
        const IsoperimetricBound cb = isoperimetric_lower_bound(bm, budget, seed_base);
        rep.c_base = cb.c_hat;
        const TriDiscMesh glued = triangulated_cylinder(bm, c.loop, c.L, c.R, c.grid_h);
        rep.c_cyl = isoperimetric_lower_bound(glued, budget, seed_cyl).c_hat;
        rep.c_transfer_bound = transfer_constants(cb.c_hat, c.L, c.R);
    }
    return rep;
}

double transfer_constants(double C, double L, double R) {
    if (!(C >= 0.0) || !std::isfinite(C) || !(L > 0.0) || !std::isfinite(L) || !(R > 0.0) ||
        !std::isfinite(R)) {
        std::ostringstream os;
        os << "transfer bound needs C >= 0 and positive L, R; got C=" << C << " L=" << L
           << " R=" << R;
        throw DomainError(os.str());
    }
    return C + std::max(1.0 / kTwoPi, R / L);
}

std::pair<double, double> lgc_bound(double C) {
    if (!(C >= 0.0) || !std::isfinite(C)) {
        std::ostringstream os;
        os << "contractibility bound needs C >= 0, got C=" << C;
        throw DomainError(os.str());
    }
    return {8.0 * C + 1.0, 0.0};
}

}  // namespace discgeom
