#include "discgeom/metric_space.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

namespace discgeom {

std::string MetricViolation::describe() const {
    std::ostringstream os;
    switch (axiom) {
        case MetricAxiom::NonSquare:
            os << "matrix is not square";
            break;
        case MetricAxiom::NegativeEntry:
            os << "negative entry " << -amount << " at (" << i << "," << j << ")";
            break;
        case MetricAxiom::NonzeroDiagonal:
            os << "nonzero diagonal " << amount << " at (" << i << "," << i << ")";
            break;
        case MetricAxiom::Asymmetry:
            os << "symmetry gap " << amount << " at (" << i << "," << j << ")";
            break;
        case MetricAxiom::TriangleViolation:
            os << "triangle excess " << amount << " at (" << i << "," << j << ") via " << k;
            break;
        case MetricAxiom::ZeroOffDiagonal:
            os << "zero distance " << amount << " between distinct points (" << i << "," << j
               << ")";
            break;
    }
    return os.str();
}

std::string MetricValidation::summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    os << violations.size() << " violation(s): ";
    for (std::size_t v = 0; v < violations.size(); ++v) {
        if (v) os << "; ";
        if (v == 8) {
            os << "...";
            break;
        }
        os << violations[v].describe();
    }
    return os.str();
}

MetricValidation validate_metric(const Eigen::Ref<const Eigen::MatrixXd>& dist, double tolerance,
                                 bool allow_zero_off_diagonal) {
    if (dist.rows() != dist.cols())
        throw InputError("validate_metric: matrix is not square (" + std::to_string(dist.rows()) +
                         "x" + std::to_string(dist.cols()) + ")");
    const int n = static_cast<int>(dist.rows());
    MetricValidation report;
    report.allow_zero_off_diagonal = allow_zero_off_diagonal;

    for (int i = 0; i < n; ++i) {
        if (std::abs(dist(i, i)) > tolerance)
            report.violations.push_back(
                {MetricAxiom::NonzeroDiagonal, i, i, -1, std::abs(dist(i, i))});
        for (int j = i + 1; j < n; ++j) {
            double lo = std::min(dist(i, j), dist(j, i));
            double hi = std::max(dist(i, j), dist(j, i));
            if (lo < -tolerance)
                report.violations.push_back({MetricAxiom::NegativeEntry, i, j, -1, -lo});
            double gap = hi - lo;
            if (gap > tolerance)
                report.violations.push_back({MetricAxiom::Asymmetry, i, j, -1, gap});
            if (!allow_zero_off_diagonal && lo >= -tolerance && hi <= tolerance)
                report.violations.push_back({MetricAxiom::ZeroOffDiagonal, i, j, -1, hi});
        }
    }

    // Triangle inequality. Column-only accesses keep the O(n^3) scan
    // streaming; witnesses are recovered only for offending (i,k) pairs.
    // Reads the matrix as symmetric, which is safe: asymmetry beyond the
    // tolerance is already reported above.
    for (int k = 0; k < n; ++k) {
        const auto ck = dist.col(k).array();
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            double worst = (dist.col(i).array() - ck).maxCoeff() - dist(k, i);
            if (worst > tolerance) {
                for (int j = 0; j < n; ++j) {
                    double excess = dist(j, i) - dist(j, k) - dist(k, i);
                    if (excess > tolerance && i < j && j != k)
                        report.violations.push_back(
                            {MetricAxiom::TriangleViolation, i, j, k, excess});
                }
            }
        }
    }
    return report;
}

FiniteMetricSpace make_metric_space(std::vector<std::string> labels, Eigen::MatrixXd dist,
                                    std::optional<double> tolerance) {
    double tol = tolerance.value_or(default_metric_tolerance(dist));
    MetricValidation v = validate_metric(dist, tol, false);
    if (!v.ok()) throw DomainError("not a metric: " + v.summary());
    if (static_cast<int>(labels.size()) != dist.rows())
        throw InputError("label count " + std::to_string(labels.size()) +
                         " does not match matrix size " + std::to_string(dist.rows()));
    return FiniteMetricSpace{std::move(labels), std::move(dist), tol};
}

SemimetricSample make_semimetric_sample(std::vector<std::string> labels, Eigen::MatrixXd dist,
                                        std::optional<double> tolerance) {
    double tol = tolerance.value_or(default_metric_tolerance(dist));
    MetricValidation v = validate_metric(dist, tol, true);
    if (!v.ok()) throw DomainError("not a semimetric: " + v.summary());
    if (static_cast<int>(labels.size()) != dist.rows())
        throw InputError("label count " + std::to_string(labels.size()) +
                         " does not match matrix size " + std::to_string(dist.rows()));
    return SemimetricSample{std::move(labels), std::move(dist), tol};
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

QuotientResult quotient_semimetric(const SemimetricSample& s) {
    MetricValidation v = validate_metric(s.dist, s.tolerance, true);
    if (!v.ok()) throw DomainError("quotient_semimetric: invalid semimetric: " + v.summary());

    const int n = s.size();
    UnionFind uf(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (s.dist(i, j) <= s.tolerance) uf.unite(i, j);

    // Root of a class is its smallest member (UnionFind keeps the min);
    // classes are numbered by root in increasing order.
    std::vector<int> rep_of_class;
    std::vector<int> class_of_root(n, -1);
    std::vector<int> projection(n);
    for (int i = 0; i < n; ++i) {
        int r = uf.find(i);
        if (class_of_root[r] < 0) {
            class_of_root[r] = static_cast<int>(rep_of_class.size());
            rep_of_class.push_back(r);
        }
        projection[i] = class_of_root[r];
    }

    const int m = static_cast<int>(rep_of_class.size());
    Eigen::MatrixXd qd(m, m);
    std::vector<std::string> qlabels(m);
    for (int a = 0; a < m; ++a) {
        qlabels[a] = rep_of_class[a] < static_cast<int>(s.labels.size())
                         ? s.labels[rep_of_class[a]]
                         : std::to_string(rep_of_class[a]);
        for (int b = 0; b < m; ++b) qd(a, b) = s.dist(rep_of_class[a], rep_of_class[b]);
        qd(a, a) = 0.0;
    }
    return QuotientResult{FiniteMetricSpace{std::move(qlabels), std::move(qd), s.tolerance},
                          std::move(projection)};
}

std::vector<std::vector<int>> graph_components(int n,
                                               const std::vector<WeightedGraph::Edge>& edges) {
    UnionFind uf(n);
    for (const auto& e : edges) uf.unite(e.u, e.v);
    std::vector<std::vector<int>> by_root(n);
    for (int i = 0; i < n; ++i) by_root[uf.find(i)].push_back(i);
    std::vector<std::vector<int>> comps;
    for (auto& c : by_root)
        if (!c.empty()) comps.push_back(std::move(c));
    return comps;
}

namespace {

void check_graph(const WeightedGraph& g, bool require_positive) {
    const int n = g.size();
    for (const auto& e : g.edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             ") out of range for " + std::to_string(n) + " vertices");
        if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
        if (require_positive ? !(e.length > 0) : !(e.length >= 0))
            throw InputError((require_positive ? "nonpositive length on edge ("
                                               : "negative length on edge (") +
                             std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
}

}  // namespace

Eigen::MatrixXd graph_distances(const WeightedGraph& g, const std::vector<int>& sources) {
    check_graph(g, false);
    const int n = g.size();
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const auto& e : g.edges) {
        adj[e.u].push_back({e.v, e.length});
        adj[e.v].push_back({e.u, e.length});
    }

    const double inf = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd d(static_cast<int>(sources.size()), n);
    const bool dense = 4 * g.edges.size() > static_cast<std::size_t>(n) * n;

    std::vector<double> dist(n);
    std::vector<char> done(n);
    for (std::size_t row = 0; row < sources.size(); ++row) {
        int src = sources[row];
        if (src < 0 || src >= n) throw InputError("source vertex " + std::to_string(src) + " out of range");
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(done.begin(), done.end(), 0);
        dist[src] = 0.0;
        if (dense) {
            // Array-scan Dijkstra: O(n^2), beats a heap on near-complete graphs.
            for (int round = 0; round < n; ++round) {
                int u = -1;
                double best = inf;
                for (int i = 0; i < n; ++i)
                    if (!done[i] && dist[i] < best) {
                        best = dist[i];
                        u = i;
                    }
                if (u < 0) break;
                done[u] = 1;
                for (auto [v, w] : adj[u])
                    if (dist[u] + w < dist[v]) dist[v] = dist[u] + w;
            }
        } else {
            using Item = std::pair<double, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
            pq.push({0.0, src});
            while (!pq.empty()) {
                auto [du, u] = pq.top();
                pq.pop();
                if (done[u]) continue;
                done[u] = 1;
                for (auto [v, w] : adj[u])
                    if (du + w < dist[v]) {
                        dist[v] = du + w;
                        pq.push({dist[v], v});
                    }
            }
        }
        for (int i = 0; i < n; ++i) d(static_cast<int>(row), i) = dist[i];
    }
    return d;
}

FiniteMetricSpace path_metric(const WeightedGraph& g) {
    const int n = g.size();
    if (n == 0) return FiniteMetricSpace{{}, Eigen::MatrixXd(0, 0), 0.0};

    check_graph(g, true);
    auto comps = graph_components(n, g.edges);
    if (comps.size() > 1) {
        std::ostringstream os;
        os << "graph is disconnected into " << comps.size() << " components:";
        for (std::size_t c = 0; c < comps.size() && c < 6; ++c) {
            os << " {";
            for (std::size_t i = 0; i < comps[c].size() && i < 8; ++i)
                os << (i ? "," : "") << comps[c][i];
            if (comps[c].size() > 8) os << ",...";
            os << "}";
        }
        if (comps.size() > 6) os << " ...";
        throw ConnectivityError(os.str());
    }

    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    Eigen::MatrixXd d = graph_distances(g, all);

    // Runs from the two endpoints can round differently; downstream code
    // expects bitwise symmetry, so keep the smaller sum.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = std::min(d(i, j), d(j, i));

    const double tol = default_metric_tolerance(d);
    return FiniteMetricSpace{g.labels, std::move(d), tol};
}

std::vector<std::string> index_labels(int n, const std::string& prefix) {
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = prefix + std::to_string(i);
    return labels;
}

}  // namespace discgeom
