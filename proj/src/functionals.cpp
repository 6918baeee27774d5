#include "discgeom/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "discgeom/errors.hpp"
#include "discgeom/rng.hpp"

namespace discgeom {

namespace {

constexpr long kSampleBlock = 4096;

void require_euclidean(const PLMap& u, const char* what) {
    if (!u.euclidean()) {
        std::ostringstream msg;
        msg << what << " needs a map with a Euclidean target";
        throw PreconditionError(msg.str());
    }
}

void require_triangle_index(const TriDiscMesh& m, int t) {
    if (t < 0 || t >= m.num_triangles()) {
        std::ostringstream msg;
        msg << "triangle index " << t << " is out of range (mesh has " << m.num_triangles()
            << " triangles)";
        throw InputError(msg.str());
    }
}

// Plane coordinates of a triangle flattened by its edge lengths: v0 at the
// origin, v1 on the positive x axis, v2 in the upper half plane.
struct FlatTriangle {
    double x1 = 0.0;
    double x2 = 0.0;
    double y2 = 0.0;

    double area() const { return x1 * y2 / 2.0; }
};

FlatTriangle flatten_triangle(const TriDiscMesh& m, int t) {
    auto len = m.triangle_lengths(t);
    double l01 = len[0], l12 = len[1], l02 = len[2];
    double x2 = (l01 * l01 + l02 * l02 - l12 * l12) / (2.0 * l01);
    double ysq = l02 * l02 - x2 * x2;
    if (!(l01 > 0.0) || !(ysq > 0.0)) {
        std::ostringstream msg;
        msg << "triangle " << t << " degenerates when flattened by its edge lengths";
        throw GeometryError(msg.str());
    }
    return {l01, x2, std::sqrt(ysq)};
}

// Image edge vectors of triangle t, one column per edge from its first vertex.
Eigen::MatrixXd image_edges(const PLMap& u, int t) {
    const auto& tri = u.source.triangles[t];
    Eigen::MatrixXd q(u.images.cols(), 2);
    q.col(0) = (u.images.row(tri[1]) - u.images.row(tri[0])).transpose();
    q.col(1) = (u.images.row(tri[2]) - u.images.row(tri[0])).transpose();
    return q;
}

Eigen::Vector2d singular_values_of(const Eigen::MatrixXd& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    Eigen::Vector2d out = Eigen::Vector2d::Zero();
    for (int i = 0; i < svd.singularValues().size() && i < 2; ++i) {
        out[i] = svd.singularValues()[i];
    }
    return out;
}

// Unsigned area of the triangle spanned by the columns of q (Gram form, any
// target dimension).
double gram_area(const Eigen::MatrixXd& q) {
    double g = q.col(0).squaredNorm() * q.col(1).squaredNorm();
    double d = q.col(0).dot(q.col(1));
    return std::sqrt(std::max(g - d * d, 0.0)) / 2.0;
}

struct ImageTriangle {
    double ax, ay, bx, by, cx, cy;
    bool skip;  // collapsed image, measure zero
};

// Point-in-triangle with half-open edge ownership: a point exactly on an edge
// belongs to the triangle iff the edge points up, or left when horizontal, so
// triangles tiling a region count every point exactly once.
bool owns_point(const ImageTriangle& tri, double px, double py) {
    const double x[3] = {tri.ax, tri.bx, tri.cx};
    const double y[3] = {tri.ay, tri.by, tri.cy};
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3;
        double ex = x[j] - x[i];
        double ey = y[j] - y[i];
        double cr = ex * (py - y[i]) - ey * (px - x[i]);
        if (cr < 0.0) return false;
        if (cr == 0.0 && !(ey > 0.0 || (ey == 0.0 && ex < 0.0))) return false;
    }
    return true;
}

}  // namespace

SeminormRep make_linear_seminorm(Eigen::MatrixXd map) {
    if (map.cols() != 2) {
        std::ostringstream msg;
        msg << "a linear seminorm on the plane needs a two-column matrix, got " << map.cols()
            << " columns";
        throw InputError(msg.str());
    }
    if (map.rows() < 1 || !map.allFinite()) {
        throw InputError("a linear seminorm needs a nonempty finite matrix");
    }
    SeminormRep s;
    s.kind = SeminormRep::Kind::LinearMap;
    s.map = std::move(map);
    return s;
}

SeminormRep make_polygon_seminorm(Eigen::MatrixXd ball) {
    if (ball.cols() != 2) {
        throw InputError("polygon ball vertices need exactly two coordinates");
    }
    Eigen::Index n = ball.rows();
    if (n < 4 || n % 2 != 0) {
        std::ostringstream msg;
        msg << "polygon ball needs an even number of at least 4 vertices, got " << n;
        throw InputError(msg.str());
    }
    if (!ball.allFinite()) {
        throw InputError("polygon ball vertices must be finite");
    }
    double scale = ball.cwiseAbs().maxCoeff();
    Eigen::Index half = n / 2;
    for (Eigen::Index i = 0; i < half; ++i) {
        if ((ball.row(i) + ball.row(i + half)).norm() > 1e-9 * scale) {
            std::ostringstream msg;
            msg << "polygon ball is not centrally symmetric: vertex " << i
                << " is not opposite vertex " << (i + half);
            throw InputError(msg.str());
        }
    }
    int sign = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::RowVector2d e0 = ball.row((i + 1) % n) - ball.row(i);
        Eigen::RowVector2d e1 = ball.row((i + 2) % n) - ball.row((i + 1) % n);
        double cr = e0.x() * e1.y() - e0.y() * e1.x();
        int s = cr > 0.0 ? 1 : (cr < 0.0 ? -1 : 0);
        if (s == 0 || (sign != 0 && s != sign)) {
            std::ostringstream msg;
            msg << "polygon ball is not strictly convex at vertex " << (i + 1) % n;
            throw InputError(msg.str());
        }
        sign = s;
    }
    SeminormRep s;
    s.kind = SeminormRep::Kind::Polygon;
    s.ball = std::move(ball);
    return s;
}

SeminormRep make_degenerate_seminorm() {
    SeminormRep s;
    s.kind = SeminormRep::Kind::Polygon;
    s.degenerate = true;
    return s;
}

double busemann_jacobian(const SeminormRep& s) {
    if (s.degenerate) return 0.0;
    if (s.kind == SeminormRep::Kind::LinearMap) {
        Eigen::Vector2d sv = singular_values_of(s.map);
        return sv[0] * sv[1];
    }
    Eigen::Index n = s.ball.rows();
    double twice_area = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index j = (i + 1) % n;
        twice_area += s.ball(i, 0) * s.ball(j, 1) - s.ball(j, 0) * s.ball(i, 1);
    }
    return std::numbers::pi / std::abs(twice_area / 2.0);
}

SeminormRep triangle_differential(const PLMap& u, int t) {
    require_euclidean(u, "the per-triangle differential");
    require_triangle_index(u.source, t);
    FlatTriangle f = flatten_triangle(u.source, t);
    Eigen::Matrix2d pinv;
    pinv << 1.0 / f.x1, -f.x2 / (f.x1 * f.y2), 0.0, 1.0 / f.y2;
    return make_linear_seminorm(image_edges(u, t) * pinv);
}

Eigen::Vector2d differential_singular_values(const PLMap& u, int t) {
    return singular_values_of(triangle_differential(u, t).map);
}

double pl_area(const PLMap& u) {
    require_euclidean(u, "the area functional");
    double total = 0.0;
    for (int t = 0; t < u.source.num_triangles(); ++t) {
        total += gram_area(image_edges(u, t));
    }
    return total;
}

double pl_energy(const PLMap& u) {
    require_euclidean(u, "the energy functional");
    double total = 0.0;
    for (int t = 0; t < u.source.num_triangles(); ++t) {
        Eigen::Vector2d sv = differential_singular_values(u, t);
        total += sv[0] * sv[0] * flatten_triangle(u.source, t).area();
    }
    return total;
}

MultiplicityEstimate multiplicity_area(const PLMap& u, long samples, std::uint64_t seed) {
    require_euclidean(u, "the multiplicity integral");
    if (u.images.cols() != 2) {
        throw PreconditionError("the multiplicity integral needs a planar target");
    }
    if (samples <= 0) {
        throw DomainError("the multiplicity integral needs a positive sample count");
    }
    double x_min = u.images.col(0).minCoeff();
    double x_max = u.images.col(0).maxCoeff();
    double y_min = u.images.col(1).minCoeff();
    double y_max = u.images.col(1).maxCoeff();
    double width = x_max - x_min;
    double height = y_max - y_min;
    if (!(width > 0.0) || !(height > 0.0)) {
        return {};
    }
    double box_area = width * height;

    std::vector<ImageTriangle> tris;
    tris.reserve(static_cast<std::size_t>(u.source.num_triangles()));
    for (const auto& tri : u.source.triangles) {
        ImageTriangle it{u.images(tri[0], 0), u.images(tri[0], 1),
                         u.images(tri[1], 0), u.images(tri[1], 1),
                         u.images(tri[2], 0), u.images(tri[2], 1), false};
        double orient = (it.bx - it.ax) * (it.cy - it.ay) - (it.by - it.ay) * (it.cx - it.ax);
        if (orient == 0.0) {
            it.skip = true;
        } else if (orient < 0.0) {
            std::swap(it.bx, it.cx);
            std::swap(it.by, it.cy);
        }
        tris.push_back(it);
    }

    Rng master(seed);
    long long count_sum = 0;
    long long count_sq_sum = 0;
    long done = 0;
    for (std::uint64_t block = 0; done < samples; ++block) {
        Rng rng = master.split(block);
        long block_size = std::min<long>(kSampleBlock, samples - done);
        for (long i = 0; i < block_size; ++i) {
            double px = x_min + width * rng.next_double();
            double py = y_min + height * rng.next_double();
            long long c = 0;
            for (const auto& it : tris) {
                if (!it.skip && owns_point(it, px, py)) ++c;
            }
            count_sum += c;
            count_sq_sum += c * c;
        }
        done += block_size;
    }

    double n = static_cast<double>(samples);
    double mean = static_cast<double>(count_sum) / n;
    MultiplicityEstimate est;
    est.value = box_area * mean;
    if (samples > 1) {
        double var_num = static_cast<double>(count_sq_sum) - static_cast<double>(count_sum) * mean;
        double variance = std::max(var_num, 0.0) / (n - 1.0);
        est.standard_error = box_area * std::sqrt(variance / n);
    }
    return est;
}

FunctionalReport functional_report(const PLMap& u, long samples, std::uint64_t seed) {
    FunctionalReport report;
    report.area = pl_area(u);
    report.energy = pl_energy(u);
    report.multiplicity = multiplicity_area(u, samples, seed);
    return report;
}

}  // namespace discgeom
