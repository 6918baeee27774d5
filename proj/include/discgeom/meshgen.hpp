#pragma once

#include "discgeom/tri_disc_mesh.hpp"

namespace discgeom {

// Mesh together with planar vertex coordinates (one row per vertex).
struct EmbeddedMesh {
    TriDiscMesh mesh;
    Eigen::MatrixXd coords;
};

// Regular n-gon fan of the disc of given radius: ring vertices 0..n-1 on the
// circle, center vertex n, one triangle per sector.
EmbeddedMesh fan_disc(int n, double radius = 1.0);

// nx-by-ny cell grid over [0,width] x [0,height]; each cell split along the
// (i,j)->(i+1,j+1) diagonal. Vertex (i,j) has index j*(nx+1)+i.
EmbeddedMesh grid_rect(int nx, int ny, double width, double height);

// Disc built from a center (index 0), an inner ring 1..n at r_inner, and an
// outer ring n+1..2n at r_outer: n fan triangles inside, 2n in the annulus.
EmbeddedMesh ring_disc(int n, double r_inner, double r_outer);

}  // namespace discgeom
