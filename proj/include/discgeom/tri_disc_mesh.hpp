#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "discgeom/metric_space.hpp"

namespace discgeom {

// Area of a triangle from its edge lengths, in the numerically stable sorted
// form of Heron's formula. Throws GeometryError if the lengths cannot form a
// triangle (any Heron factor nonpositive).
double triangle_area(double a, double b, double c);

// Triangulated combinatorial disc with per-edge lengths. Valid instances come
// from make_tri_disc_mesh, which checks that every triangle satisfies the
// strict triangle inequality and that the complex really is a disc: connected
// edge-manifold, all vertex links are fans, Euler characteristic 1, and one
// boundary cycle.
struct TriDiscMesh {
    std::vector<std::string> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<WeightedGraph::Edge> edges;  // u < v, sorted; derived from triangles

    // derived connectivity, filled by make_tri_disc_mesh
    std::vector<std::vector<std::pair<int, int>>> vertex_edges;  // per vertex: (neighbor, edge id)
    std::vector<std::array<int, 2>> edge_triangles;  // per edge: adjacent triangle ids, -1 = none

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int num_triangles() const { return static_cast<int>(triangles.size()); }

    // Edge id for the pair {u, v}, or -1 if absent.
    int edge_index(int u, int v) const;
    double edge_length(int u, int v) const;
    bool is_boundary_edge(int e) const { return edge_triangles[e][1] < 0; }

    // Lengths of the three edges of triangle t, opposite convention not used:
    // returns lengths of (v0,v1), (v1,v2), (v2,v0).
    std::array<double, 3> triangle_lengths(int t) const;
    double triangle_area_of(int t) const;
};

// Validating constructor from labeled triangles and explicit edge lengths.
// `edge_lengths` must list exactly the edges that occur in some triangle.
TriDiscMesh make_tri_disc_mesh(std::vector<std::string> vertex_labels,
                               std::vector<std::array<int, 3>> triangles,
                               const std::vector<WeightedGraph::Edge>& edge_lengths);

// Same, with edge lengths computed from vertex coordinates (rows of `coords`,
// 2 or 3 columns).
TriDiscMesh make_tri_disc_mesh_from_coords(const Eigen::MatrixXd& coords,
                                           std::vector<std::array<int, 3>> triangles,
                                           std::vector<std::string> vertex_labels = {});

// Shortest-path metric between mesh vertices over the edge graph. With
// `subdivide` each edge gets a midpoint vertex first (triangle midsegments
// carry half the opposite edge length), which can only shorten paths; the
// returned space is still over the original vertices.
FiniteMetricSpace vertex_metric(const TriDiscMesh& m, bool subdivide = false);

// Sum of per-triangle Heron areas.
double mesh_area(const TriDiscMesh& m);

// Closed curve through points of an ambient space, sampled at strictly
// increasing angles in [0, 2pi). The convention is constant speed: arc length
// between samples is total_length * (angle gap) / 2pi.
struct SampledLoop {
    struct Sample {
        double angle;
        int point;
    };
    std::vector<Sample> samples;
    double total_length = 0.0;

    int size() const { return static_cast<int>(samples.size()); }
};

// Validating constructor. Checks angle ordering and the constant-speed
// necessary condition: the ambient distance between consecutive samples never
// exceeds the arc length implied by their angle gap (within tolerance).
SampledLoop make_sampled_loop(std::vector<SampledLoop::Sample> samples, double total_length,
                              const FiniteMetricSpace& ambient);

// The mesh boundary cycle as a constant-speed loop: starts at the smallest
// boundary vertex, walks toward its smaller-indexed boundary neighbor, and
// assigns angles proportional to cumulative arc length.
SampledLoop boundary_loop(const TriDiscMesh& m);

struct ChordArc {
    double lambda = 1.0;        // sup over sample pairs of shorter-arc / ambient distance
    double max_angle_gap = 0.0; // sampling resolution; the value is exact only up to this scale
};

// Chord-arc constant of a loop measured against an ambient metric. Returns
// lambda = +infinity if two samples sit at ambient distance 0 (the curve is
// not simple at sample scale).
ChordArc chord_arc_constant(const SampledLoop& loop, const FiniteMetricSpace& ambient);

}  // namespace discgeom
