#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "discgeom/metric_space.hpp"
#include "discgeom/tri_disc_mesh.hpp"

namespace discgeom {

// Piecewise linear map from a triangulated disc. Each source vertex carries
// either a target point index (metric target) or a coordinate row (Euclidean
// target); edges and triangles map affinely.
struct PLMap {
    TriDiscMesh source;
    std::optional<FiniteMetricSpace> target;  // metric target
    std::vector<int> assignment;              // with a metric target
    Eigen::MatrixXd images;                   // with a Euclidean target, row per vertex

    bool euclidean() const { return !target.has_value(); }
    int source_size() const { return source.num_vertices(); }
    double image_distance(int v, int w) const;
};

PLMap make_pl_map(TriDiscMesh source, FiniteMetricSpace target, std::vector<int> assignment);
PLMap make_pl_map(TriDiscMesh source, Eigen::MatrixXd images);

// Pairwise target distances between the vertex images.
Eigen::MatrixXd image_distance_matrix(const PLMap& u);

// Length semimetric pulled back through the map: shortest source edge path,
// each edge weighted by the target distance of its endpoint images.
// Zero-weight edges are allowed.
SemimetricSample pullback_length_metric(const PLMap& u);

// Connected-set diameter semimetric: minimum over connected vertex sets
// containing both endpoints of the image diameter of the set. Exponential
// search; throws SizeError above size_cap, pointing at the bounds mode.
SemimetricSample diameter_semimetric_exact(const PLMap& u, int size_cap = 20);

// Certified envelopes of the diameter semimetric for large instances.
// lower: bottleneck separation threshold (no connected set can do better);
// upper: best image diameter over sampled connecting paths.
struct DiameterBounds {
    SemimetricSample lower;
    SemimetricSample upper;
};
DiameterBounds diameter_semimetric_bounds(const PLMap& u);

enum class DiameterMode { Exact, Bounds };

// The factorization chain d_u >= path_abs >= |d_u| >= pullback distance,
// with the quotient of d_u and per-link maximum violations. The abs fields
// are filled according to the mode. Violations are one-sided: in bounds mode
// the middle links are checked against the certified envelopes.
struct IntrinsicDiscResult {
    SemimetricSample d_u;
    SemimetricSample path_abs;
    std::optional<SemimetricSample> abs_exact;
    std::optional<SemimetricSample> abs_lower;
    std::optional<SemimetricSample> abs_upper;
    FiniteMetricSpace quotient;
    std::vector<int> projection;
    double chain_violation = 0.0;
    std::array<double, 3> link_violation{};  // d_u>=path_abs, path_abs>=|d_u|, |d_u|>=pullback
    double tolerance = 0.0;
    bool chain_ok = true;
};

IntrinsicDiscResult factorization_check(const PLMap& u, DiameterMode mode = DiameterMode::Exact,
                                        int size_cap = 20);

// Result of a fiber connectivity check. On failure the witness names the
// source vertex whose image is the offending target point z, plus the vertex
// components that exhibit the defect (two fiber pieces for monotonicity, the
// trapped complement component for bubbles).
struct FiberReport {
    bool pass = true;
    double fiber_tolerance = 0.0;
    int witness_vertex = -1;
    std::vector<std::vector<int>> witness_components;
};

// Checks that every vertex fiber {v : d(u(v), z) <= fiber_tolerance} induces
// a connected subgraph, for every image point z of a vertex. The tolerance
// defaults to 1e-9 times the target diameter.
FiberReport is_monotone(const PLMap& u, std::optional<double> fiber_tolerance = std::nullopt);

// Checks that every component of the complement of each vertex fiber touches
// the mesh boundary; a component that does not is a bubble.
FiberReport has_no_bubbles(const PLMap& u, std::optional<double> fiber_tolerance = std::nullopt);

// Defect of the induced quotient map from the intrinsic disc to the target:
// max over vertex pairs of d_u(x,y) - d(u(x),u(y)), nonnegative by the chain.
struct IsometryReport {
    double defect = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    int witness_x = -1;
    int witness_y = -1;
};

// Requires a metric target (a mesh vertex metric), a monotone bubble-free map,
// and surjectivity onto the target vertices; throws PreconditionError naming
// the first failed requirement.
IsometryReport verify_intrinsic_isometry(const PLMap& u, double tolerance);

}  // namespace discgeom
