#pragma once

#include <utility>
#include <vector>

#include "discgeom/metric_space.hpp"

namespace discgeom {

// Full relation between the points of two finite metric spaces together with
// its distortion: the largest |d_X(x,x') - d_Y(y,y')| over pairs of matched
// pairs. The Gromov-Hausdorff distance is half the least distortion over full
// relations.
struct Correspondence {
    std::vector<std::pair<int, int>> pairs;
    double distortion = 0.0;
};

// Recomputes the distortion of a relation, after checking that it covers
// every point of both spaces.
double distortion(const Correspondence& c, const FiniteMetricSpace& x,
                  const FiniteMetricSpace& y);

struct GHResult {
    double value = 0.0;      // the Gromov-Hausdorff distance
    Correspondence witness;  // attains distortion = 2 * value
};

// Exact Gromov-Hausdorff distance for small spaces. Every full relation
// contains the union of a map X -> Y and a map Y -> X with no larger
// distortion, so branch-and-bound over those unions is exhaustive.
GHResult gh_exact_small(const FiniteMetricSpace& x, const FiniteMetricSpace& y, int cap = 7);

// Certified lower bound: half the larger of the diameter gap and the
// two-sided nearest-value deviation between the pairwise distance multisets,
// with 0 adjoined to the far side since a relation may match a pair onto a
// single point.
double gh_lower_bounds(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

// Restriction of a space to the listed points (labels carried over).
FiniteMetricSpace induced_subspace(const FiniteMetricSpace& x, const std::vector<int>& points);

struct NetBound {
    double bound = 0.0;      // covering radius of the subset
    Correspondence witness;  // nearest-subset-point relation, distortion <= 2 * bound
};

// Upper bound d_GH(Z, Z restricted to subset) <= covering radius, witnessed
// by the nearest-subset-point correspondence (ties to the lowest point).
// Witness pairs are (point of z, position in subset).
NetBound gh_upper_from_net(const FiniteMetricSpace& z, const std::vector<int>& subset);

enum class NetMode { Greedy, Exact };

struct NetCertificate {
    double epsilon = 0.0;
    std::vector<int> net;         // chosen points, ascending
    std::vector<int> assignment;  // per point: a net point within epsilon
};

// Greedy mode: farthest-point insertion starting from point 0 until every
// point is within epsilon of the net. Exact mode: minimum-cardinality cover
// by epsilon-balls via branch-and-bound, seeded with the greedy solution
// (needs size <= cap).
NetCertificate min_epsilon_net(const FiniteMetricSpace& x, double epsilon,
                               NetMode mode = NetMode::Greedy, int cap = 25);

}  // namespace discgeom
