#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "discgeom/errors.hpp"

namespace discgeom {

inline double default_metric_tolerance(const Eigen::MatrixXd& dist) {
    double m = dist.size() ? dist.maxCoeff() : 0.0;
    return 1e-9 * (m > 0 ? m : 1.0);
}

// Finite metric space as a labeled symmetric distance matrix.
// Invariants: zero diagonal, symmetry, triangle inequality within `tolerance`,
// strictly positive off-diagonal entries.
struct FiniteMetricSpace {
    std::vector<std::string> labels;
    Eigen::MatrixXd dist;
    double tolerance = 0.0;

    int size() const { return static_cast<int>(dist.rows()); }
    double operator()(int i, int j) const { return dist(i, j); }
    double diameter() const { return dist.size() ? dist.maxCoeff() : 0.0; }
};

// Like FiniteMetricSpace but zero off-diagonal distances are permitted.
struct SemimetricSample {
    std::vector<std::string> labels;
    Eigen::MatrixXd dist;
    double tolerance = 0.0;

    int size() const { return static_cast<int>(dist.rows()); }
    double operator()(int i, int j) const { return dist(i, j); }
};

// Undirected graph with positive edge lengths; carrier for path metrics.
struct WeightedGraph {
    struct Edge {
        int u;
        int v;
        double length;
    };

    std::vector<std::string> labels;
    std::vector<Edge> edges;

    int size() const { return static_cast<int>(labels.size()); }
};

enum class MetricAxiom {
    NonSquare,
    NegativeEntry,
    NonzeroDiagonal,
    Asymmetry,
    TriangleViolation,
    ZeroOffDiagonal,
};

struct MetricViolation {
    MetricAxiom axiom;
    int i = -1;
    int j = -1;
    int k = -1;       // intermediate point for triangle violations, else -1
    double amount = 0.0;  // size of the violation

    std::string describe() const;
};

// Result of validate_metric: ok() iff no axiom is violated.
struct MetricValidation {
    std::vector<MetricViolation> violations;
    bool allow_zero_off_diagonal = false;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

// Checks all metric axioms and reports every violation with a witness.
// With allow_zero_off_diagonal the semimetric axioms are checked instead.
// Throws InputError if the matrix is not square.
MetricValidation validate_metric(const Eigen::Ref<const Eigen::MatrixXd>& dist, double tolerance,
                                 bool allow_zero_off_diagonal = false);

// Validating constructor for untrusted data. Outputs that are metric by
// construction (shortest paths, quotients) skip this.
FiniteMetricSpace make_metric_space(std::vector<std::string> labels, Eigen::MatrixXd dist,
                                    std::optional<double> tolerance = std::nullopt);

SemimetricSample make_semimetric_sample(std::vector<std::string> labels, Eigen::MatrixXd dist,
                                        std::optional<double> tolerance = std::nullopt);

struct QuotientResult {
    FiniteMetricSpace space;
    std::vector<int> projection;  // point index -> class index
};

// Collapses the zero-distance equivalence classes of a semimetric (entries
// <= tolerance count as zero; classes are the transitive closure of that
// relation). Class distance is the distance between class representatives.
// Classes are indexed by their smallest member, in increasing order.
QuotientResult quotient_semimetric(const SemimetricSample& s);

// All-pairs shortest-path metric of a connected positive-weight graph.
// Heap Dijkstra per source with an array-scan fallback on dense graphs.
// Throws ConnectivityError naming the components if g is disconnected.
FiniteMetricSpace path_metric(const WeightedGraph& g);

// Shortest-path distances from each source (rows follow `sources` order) to
// every vertex. Unreachable vertices get +infinity; no connectivity check.
// Zero-length edges are allowed (semimetric carriers), negative ones are not.
Eigen::MatrixXd graph_distances(const WeightedGraph& g, const std::vector<int>& sources);

// Connected components as sorted vertex lists, sorted by smallest member.
std::vector<std::vector<int>> graph_components(int n, const std::vector<WeightedGraph::Edge>& edges);

// Convenience: labels "0".."n-1".
std::vector<std::string> index_labels(int n, const std::string& prefix = "");

}  // namespace discgeom
