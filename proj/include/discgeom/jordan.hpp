#pragma once

#include <cstdint>
#include <vector>

#include "discgeom/tri_disc_mesh.hpp"

namespace discgeom {

// Connected set of triangles whose boundary is one simple cycle; in a disc
// mesh such a set is itself a disc, so the cycle is a Jordan curve and the
// set is the region it encloses.
struct JordanDomainSample {
    std::vector<int> boundary_cycle;      // vertices in traversal order
    std::vector<int> enclosed_triangles;  // sorted triangle ids
    double area = 0.0;
    double boundary_length = 0.0;
};

// All single-triangle domains (ascending id) followed by up to `budget`
// domains discovered by random region growing. Deterministic for a fixed
// seed, and the output for a smaller budget is a prefix of the output for a
// larger one. Growth stops early once 50 consecutive chains add nothing new.
std::vector<JordanDomainSample> enumerate_jordan_domains(const TriDiscMesh& m, int budget,
                                                         std::uint64_t seed);

struct IsoperimetricBound {
    double c_hat = 0.0;  // max over sampled domains of area / boundary_length^2
    JordanDomainSample witness;
};

// Certified lower bound for the smallest constant C with
// area(U) <= C * boundary_length(U)^2 over Jordan domains U of the mesh.
IsoperimetricBound isoperimetric_lower_bound(const TriDiscMesh& m, int budget,
                                             std::uint64_t seed);

// Isoperimetric constant valid for all Jordan domains given one valid for
// domains of boundary length below l0: max{c, total_area / l0^2}. l0 may be
// +infinity, in which case c is returned unchanged.
double global_isoperimetric_constant(double c, double l0, double total_area);

}  // namespace discgeom
