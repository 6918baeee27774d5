#pragma once

#include <cstdint>

#include "discgeom/intrinsic.hpp"

namespace discgeom {

// A seminorm on the plane, as either the linear map inducing it (one column
// per plane axis, any number of target rows) or its unit ball given as a
// convex centrally symmetric polygon. A declared-degenerate seminorm has an
// unbounded unit ball (some direction of vanishing length).
struct SeminormRep {
    enum class Kind { LinearMap, Polygon };
    Kind kind = Kind::LinearMap;
    Eigen::MatrixXd map;      // LinearMap: N x 2
    Eigen::MatrixXd ball;     // Polygon: one vertex per row, rotational order
    bool degenerate = false;
};

SeminormRep make_linear_seminorm(Eigen::MatrixXd map);
SeminormRep make_polygon_seminorm(Eigen::MatrixXd ball);
SeminormRep make_degenerate_seminorm();

// pi over the area of the seminorm's unit ball: singular value product for a
// linear map (the ball is an ellipse), exact shoelace for a polygon ball,
// 0 for a degenerate seminorm.
double busemann_jacobian(const SeminormRep& s);

// Constant differential of the map on one triangle: the linear map taking
// the triangle, flattened to the plane by its edge lengths, onto its image
// edge vectors. Defined up to an isometry of the flattening.
SeminormRep triangle_differential(const PLMap& u, int t);

// Singular values of triangle_differential(u, t), largest first.
Eigen::Vector2d differential_singular_values(const PLMap& u, int t);

// Integral of the differential's Jacobian over the source: evaluates to the
// sum of unsigned image triangle areas (Gram form), which the per-triangle
// Jacobian times flattened area equals exactly.
double pl_area(const PLMap& u);

// Integral of the squared largest singular value of the differential.
// pl_area <= pl_energy, per triangle and in total.
double pl_energy(const PLMap& u);

struct MultiplicityEstimate {
    double value = 0.0;
    double standard_error = 0.0;
};

// Monte-Carlo integral of the fiber cardinality over the image bounding box:
// counts source triangles whose image contains the sample, with half-open
// edge ownership so overlay counts are deterministic. Zero-area image -> 0.
// Sampling is blocked with per-block seeds split off the master seed.
MultiplicityEstimate multiplicity_area(const PLMap& u, long samples, std::uint64_t seed);

struct FunctionalReport {
    double area = 0.0;
    double energy = 0.0;
    MultiplicityEstimate multiplicity;
};

FunctionalReport functional_report(const PLMap& u, long samples, std::uint64_t seed);

}  // namespace discgeom
