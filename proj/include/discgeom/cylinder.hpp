#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "discgeom/metric_space.hpp"
#include "discgeom/tri_disc_mesh.hpp"

namespace discgeom {

// A finite metric space X with a cylindrical collar S^1 x [0,1] glued along a
// sampled boundary loop gamma. Points are ordered base first, then collar grid
// points (angle index i in [0,a), height row j in [1,h]) in row-major order
// by height. The collar carries the flat product metric with circumference L
// and height R; glued distances minimize over loop sample angles.
struct CylinderSpace {
    FiniteMetricSpace base;
    SampledLoop loop;
    double L = 0.0;
    double R = 0.0;
    int grid_a = 0;
    int grid_h = 0;
    double lip = 0.0;  // sample-scale Lipschitz constant of the loop
    FiniteMetricSpace space;
    // Set by callers whose base metric came from a mesh; enables the
    // isoperimetric fields of verify_cylinder.
    std::optional<TriDiscMesh> base_mesh;

    int base_size() const { return static_cast<int>(base.size()); }
    int collar_index(int i, int j) const {
        return base_size() + (j - 1) * grid_a + i;
    }
    double grid_angle(int i) const;
    double grid_height(int j) const { return static_cast<double>(j) / grid_h; }
};

// Quantitative summary of a glued cylinder. The isoperimetric fields are
// absent when the base carries no mesh, leaving a partial report.
struct CylinderReport {
    double embedding_error = 0.0;  // max |d restricted to base - base.dist|
    double net_radius = 0.0;       // max over all points of distance to base
    double glue_slack = 0.0;       // (L/2pi + Lip) * max angular gap
    double midpoint_defect = 0.0;  // sampled approximate-midpoint slack
    double collar_area = 0.0;      // L*R, analytic
    double gammaR_length = 0.0;    // length of the s=1 circle
    double gammaR_chord_arc = 0.0;
    std::optional<double> base_area;
    std::optional<double> total_area;  // base_area + collar_area
    std::optional<double> c_base;
    std::optional<double> c_cyl;
    std::optional<double> c_transfer_bound;
};

// Glues the flat cylinder S^1 x [0,1] (circumference L, height R) to base
// along the sampled loop and returns the finite glued metric space over the
// base points plus an a-by-h collar grid. Requires L to cover 2*pi times the
// sample-scale Lipschitz constant of the loop and the grid to be at least as
// fine as the loop sampling.
CylinderSpace build_cylinder(const FiniteMetricSpace& base,
                             const SampledLoop& loop, double L, double R,
                             int a, int h);

// Triangulates the glued cylinder over a meshed base: one column of quads per
// loop sample, h rows, each quad split by a diagonal, collar edge lengths
// taken from the flat product metric. Loop samples must walk the mesh
// boundary cycle.
TriDiscMesh triangulated_cylinder(const TriDiscMesh& base,
                                  const SampledLoop& loop, double L, double R,
                                  int h);

// Measures the glued space against its construction promises: embedding
// error, net radius, discretization slack, sampled midpoint defect, the s=1
// circle figures, and, when the base carries a mesh, areas plus isoperimetric
// constants of base and cylinder against the transfer bound.
CylinderReport verify_cylinder(const CylinderSpace& c, int budget,
                               std::uint64_t seed);

// Isoperimetric constant transferred to the glued cylinder: C + max{1/(2*pi),
// R/L}.
double transfer_constants(double C, double L, double R);

// Slope and intercept of the linear contractibility function (8C+1)*r
// enjoyed by intrinsic minimal discs over a C-isoperimetric space.
std::pair<double, double> lgc_bound(double C);

}  // namespace discgeom
