#include "discgeom/intrinsic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_set>
#include <utility>
#include <vector>

#include "discgeom/errors.hpp"

namespace discgeom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::vector<int>> induced_components(const TriDiscMesh& m,
                                                 const std::vector<char>& in) {
    const int n = m.num_vertices();
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
        if (!in[s] || seen[s]) continue;
        std::vector<int> comp;
        std::vector<int> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (const auto& [w, e] : m.vertex_edges[v])
                if (in[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::vector<char> boundary_vertices(const TriDiscMesh& m) {
    std::vector<char> b(m.num_vertices(), 0);
    for (int e = 0; e < m.num_edges(); ++e)
        if (m.is_boundary_edge(e)) b[m.edges[e].u] = b[m.edges[e].v] = 1;
    return b;
}

double default_fiber_tolerance(const PLMap& u) {
    double diam = 0.0;
    if (u.target) {
        diam = u.target->diameter();
    } else {
        const int n = u.source_size();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) diam = std::max(diam, u.image_distance(i, j));
    }
    return 1e-9 * diam;
}

struct ParentTree {
    std::vector<double> dist;
    std::vector<int> parent;
};

// Shortest-path tree under image-pullback edge weights.
ParentTree pullback_tree(const TriDiscMesh& m, const Eigen::MatrixXd& T, int src) {
    const int n = m.num_vertices();
    ParentTree t{std::vector<double>(n, kInf), std::vector<int>(n, -1)};
    std::vector<char> done(n, 0);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    t.dist[src] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
        const auto [dv, v] = pq.top();
        pq.pop();
        if (done[v]) continue;
        done[v] = 1;
        for (const auto& [w, e] : m.vertex_edges[v]) {
            const double nd = dv + T(v, w);
            if (nd < t.dist[w]) {
                t.dist[w] = nd;
                t.parent[w] = v;
                pq.push({nd, w});
            }
        }
    }
    return t;
}

ParentTree hop_tree(const TriDiscMesh& m, int src) {
    const int n = m.num_vertices();
    ParentTree t{std::vector<double>(n, kInf), std::vector<int>(n, -1)};
    t.dist[src] = 0.0;
    std::vector<int> queue{src};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        for (const auto& [w, e] : m.vertex_edges[v])
            if (t.dist[w] == kInf) {
                t.dist[w] = t.dist[v] + 1.0;
                t.parent[w] = v;
                queue.push_back(w);
            }
    }
    return t;
}

std::vector<int> tree_path(const ParentTree& t, int src, int dst) {
    std::vector<int> path;
    for (int v = dst; v != -1; v = t.parent[v]) {
        path.push_back(v);
        if (v == src) break;
    }
    return path;
}

double path_image_diameter(const std::vector<int>& path, const Eigen::MatrixXd& T) {
    double d = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i)
        for (std::size_t j = i + 1; j < path.size(); ++j)
            d = std::max(d, T(path[i], path[j]));
    return d;
}

// Minimax vertex-cost path: minimizes the worst of max(T(v,x), T(v,y)) along
// a path from x to y, endpoints included. Any connected set joining x and y
// must contain a path, so the value lower-bounds every such set's diameter.
double bottleneck_separation(const TriDiscMesh& m, const Eigen::MatrixXd& T, int x, int y,
                             std::vector<int>& path_out) {
    const int n = m.num_vertices();
    std::vector<double> dist(n, kInf);
    std::vector<int> parent(n, -1);
    std::vector<char> done(n, 0);
    auto cost = [&](int v) { return std::max(T(v, x), T(v, y)); };
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[x] = cost(x);
    pq.push({dist[x], x});
    while (!pq.empty()) {
        const auto [dv, v] = pq.top();
        pq.pop();
        if (done[v]) continue;
        done[v] = 1;
        for (const auto& [w, e] : m.vertex_edges[v]) {
            const double nd = std::max(dv, cost(w));
            if (nd < dist[w]) {
                dist[w] = nd;
                parent[w] = v;
                pq.push({nd, w});
            }
        }
    }
    ParentTree t{std::move(dist), std::move(parent)};
    path_out = tree_path(t, x, y);
    return t.dist[y];
}

}  // namespace

double PLMap::image_distance(int v, int w) const {
    if (target) return (*target)(assignment[v], assignment[w]);
    return (images.row(v) - images.row(w)).norm();
}

PLMap make_pl_map(TriDiscMesh source, FiniteMetricSpace target, std::vector<int> assignment) {
    const int n = source.num_vertices();
    if (static_cast<int>(assignment.size()) != n) {
        std::ostringstream os;
        os << "assignment has " << assignment.size() << " entries for " << n
           << " source vertices";
        throw InputError(os.str());
    }
    for (int v = 0; v < n; ++v)
        if (assignment[v] < 0 || assignment[v] >= target.size()) {
            std::ostringstream os;
            os << "vertex " << v << " is assigned to target point " << assignment[v]
               << ", outside the target of size " << target.size();
            throw InputError(os.str());
        }
    PLMap u;
    u.source = std::move(source);
    u.target = std::move(target);
    u.assignment = std::move(assignment);
    return u;
}

PLMap make_pl_map(TriDiscMesh source, Eigen::MatrixXd images) {
    if (images.rows() != source.num_vertices()) {
        std::ostringstream os;
        os << "image matrix has " << images.rows() << " rows for " << source.num_vertices()
           << " source vertices";
        throw InputError(os.str());
    }
    if (images.cols() < 1) throw InputError("image coordinates need at least one column");
    if (!images.allFinite()) throw InputError("image coordinates must be finite");
    PLMap u;
    u.source = std::move(source);
    u.images = std::move(images);
    return u;
}

Eigen::MatrixXd image_distance_matrix(const PLMap& u) {
    const int n = u.source_size();
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) T(i, j) = T(j, i) = u.image_distance(i, j);
    return T;
}

SemimetricSample pullback_length_metric(const PLMap& u) {
    const int n = u.source_size();
    WeightedGraph g{u.source.vertices, {}};
    g.edges.reserve(u.source.edges.size());
    for (const auto& e : u.source.edges) g.edges.push_back({e.u, e.v, u.image_distance(e.u, e.v)});
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    const Eigen::MatrixXd d = graph_distances(g, all);
    Eigen::MatrixXd sym = d.cwiseMin(d.transpose());
    sym.diagonal().setZero();
    const double tol = default_metric_tolerance(sym);
    return SemimetricSample{u.source.vertices, std::move(sym), tol};
}

SemimetricSample diameter_semimetric_exact(const PLMap& u, int size_cap) {
    const int n = u.source_size();
    const int cap = std::min(size_cap, 62);
    if (n > cap) {
        std::ostringstream os;
        os << "exact connected-set search on " << n << " vertices exceeds the cap " << cap
           << "; use the bounds mode";
        throw SizeError(os.str());
    }
    const Eigen::MatrixXd T = image_distance_matrix(u);

    std::vector<double> vals;
    vals.reserve(n * (n - 1) / 2 + 1);
    vals.push_back(0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) vals.push_back(T(i, j));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

    std::vector<std::uint64_t> adj(n, 0);
    for (const auto& e : u.source.edges) {
        adj[e.u] |= 1ull << e.v;
        adj[e.v] |= 1ull << e.u;
    }

    std::vector<std::uint64_t> compat(n);
    // Grows connected sets from x one compatible vertex at a time; every
    // connected set admits such a build order, so the search is exhaustive.
    auto feasible = [&](int x, int y, double delta) {
        std::uint64_t allowed = 0;
        for (int v = 0; v < n; ++v)
            if (T(v, x) <= delta && T(v, y) <= delta) allowed |= 1ull << v;
        // cheap necessary condition: x reaches y inside the allowed universe
        {
            std::uint64_t reach = 1ull << x;
            std::uint64_t frontier = reach;
            while (frontier) {
                std::uint64_t next = 0;
                for (std::uint64_t f = frontier; f;) {
                    const int v = std::countr_zero(f);
                    f &= f - 1;
                    next |= adj[v] & allowed & ~reach;
                }
                reach |= next;
                frontier = next;
            }
            if (!(reach >> y & 1)) return false;
        }
        for (int v = 0; v < n; ++v)
            if (allowed >> v & 1) {
                std::uint64_t c = 0;
                for (int w = 0; w < n; ++w)
                    if (w != v && (allowed >> w & 1) && T(v, w) <= delta) c |= 1ull << w;
                compat[v] = c;
            }
        struct State {
            std::uint64_t set, ok, frontier;
        };
        std::unordered_set<std::uint64_t> seen;
        std::vector<State> stack;
        const std::uint64_t ok0 = compat[x];
        stack.push_back({1ull << x, ok0, adj[x] & ok0});
        seen.insert(1ull << x);
        while (!stack.empty()) {
            const State s = stack.back();
            stack.pop_back();
            if (s.set >> y & 1) return true;
            for (std::uint64_t f = s.frontier; f;) {
                const int c = std::countr_zero(f);
                f &= f - 1;
                const std::uint64_t ns = s.set | (1ull << c);
                if (!seen.insert(ns).second) continue;
                const std::uint64_t nok = s.ok & compat[c] & ~ns;
                stack.push_back({ns, nok, (s.frontier | adj[c]) & nok});
            }
        }
        return false;
    };

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            int lo = static_cast<int>(
                std::lower_bound(vals.begin(), vals.end(), T(x, y)) - vals.begin());
            double ans;
            if (feasible(x, y, vals[lo])) {
                ans = vals[lo];
            } else {
                // invariant: infeasible at lo, feasible at hi (full mesh)
                int hi = static_cast<int>(vals.size()) - 1;
                while (hi - lo > 1) {
                    const int mid = lo + (hi - lo) / 2;
                    if (feasible(x, y, vals[mid]))
                        hi = mid;
                    else
                        lo = mid;
                }
                ans = vals[hi];
            }
            out(x, y) = out(y, x) = ans;
        }
    return SemimetricSample{u.source.vertices, std::move(out), default_metric_tolerance(out)};
}

DiameterBounds diameter_semimetric_bounds(const PLMap& u) {
    const int n = u.source_size();
    const Eigen::MatrixXd T = image_distance_matrix(u);

    std::vector<ParentTree> pull(n), hops(n);
    for (int x = 0; x < n; ++x) {
        pull[x] = pullback_tree(u.source, T, x);
        hops[x] = hop_tree(u.source, x);
    }

    Eigen::MatrixXd lo = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd up = Eigen::MatrixXd::Zero(n, n);
    std::vector<int> neck;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            const double sep = bottleneck_separation(u.source, T, x, y, neck);
            lo(x, y) = lo(y, x) = std::max(T(x, y), sep);
            double best = path_image_diameter(neck, T);
            best = std::min(best, path_image_diameter(tree_path(pull[x], x, y), T));
            best = std::min(best, path_image_diameter(tree_path(hops[x], x, y), T));
            up(x, y) = up(y, x) = best;
        }
    const double tol_lo = default_metric_tolerance(lo);
    const double tol_up = default_metric_tolerance(up);
    return DiameterBounds{SemimetricSample{u.source.vertices, std::move(lo), tol_lo},
                          SemimetricSample{u.source.vertices, std::move(up), tol_up}};
}

IntrinsicDiscResult factorization_check(const PLMap& u, DiameterMode mode, int size_cap) {
    IntrinsicDiscResult r;
    r.d_u = pullback_length_metric(u);
    // On an adjacent pair the two endpoints already form a connected set, so
    // the diameter semimetric restricted to edges equals the pullback
    // distance; the induced path metric is therefore d_u itself.
    r.path_abs = r.d_u;
    const Eigen::MatrixXd T = image_distance_matrix(u);
    r.tolerance = default_metric_tolerance(r.d_u.dist);

    auto worst = [](const Eigen::MatrixXd& gap) { return std::max(0.0, gap.maxCoeff()); };
    r.link_violation[0] = worst(r.path_abs.dist - r.d_u.dist);
    if (mode == DiameterMode::Exact) {
        r.abs_exact = diameter_semimetric_exact(u, size_cap);
        r.link_violation[1] = worst(r.abs_exact->dist - r.path_abs.dist);
        r.link_violation[2] = worst(T - r.abs_exact->dist);
    } else {
        DiameterBounds b = diameter_semimetric_bounds(u);
        r.link_violation[1] = worst(b.lower.dist - r.path_abs.dist);
        r.link_violation[2] = worst(T - b.upper.dist);
        r.abs_lower = std::move(b.lower);
        r.abs_upper = std::move(b.upper);
    }
    r.chain_violation =
        std::max({r.link_violation[0], r.link_violation[1], r.link_violation[2]});
    r.chain_ok = r.chain_violation <= r.tolerance;

    QuotientResult q = quotient_semimetric(r.d_u);
    r.quotient = std::move(q.space);
    r.projection = std::move(q.projection);
    return r;
}

FiberReport is_monotone(const PLMap& u, std::optional<double> fiber_tolerance) {
    const int n = u.source_size();
    if (n == 0) throw InputError("degenerate input: the map has an empty image");
    FiberReport rep;
    rep.fiber_tolerance = fiber_tolerance.value_or(default_fiber_tolerance(u));
    std::vector<char> in(n);
    for (int v0 = 0; v0 < n; ++v0) {
        bool dup = false;
        for (int w = 0; w < v0 && !dup; ++w) dup = u.image_distance(v0, w) == 0.0;
        if (dup) continue;
        for (int v = 0; v < n; ++v) in[v] = u.image_distance(v, v0) <= rep.fiber_tolerance;
        auto comps = induced_components(u.source, in);
        if (comps.size() > 1) {
            rep.pass = false;
            rep.witness_vertex = v0;
            rep.witness_components = {std::move(comps[0]), std::move(comps[1])};
            return rep;
        }
    }
    return rep;
}

FiberReport has_no_bubbles(const PLMap& u, std::optional<double> fiber_tolerance) {
    const int n = u.source_size();
    FiberReport rep;
    rep.fiber_tolerance = fiber_tolerance.value_or(default_fiber_tolerance(u));
    const std::vector<char> on_boundary = boundary_vertices(u.source);
    std::vector<char> out(n);
    for (int v0 = 0; v0 < n; ++v0) {
        bool dup = false;
        for (int w = 0; w < v0 && !dup; ++w) dup = u.image_distance(v0, w) == 0.0;
        if (dup) continue;
        for (int v = 0; v < n; ++v) out[v] = u.image_distance(v, v0) > rep.fiber_tolerance;
        for (auto& comp : induced_components(u.source, out)) {
            bool touches = false;
            for (int v : comp) touches = touches || on_boundary[v];
            if (!touches) {
                rep.pass = false;
                rep.witness_vertex = v0;
                rep.witness_components = {std::move(comp)};
                return rep;
            }
        }
    }
    return rep;
}

IsometryReport verify_intrinsic_isometry(const PLMap& u, double tolerance) {
    if (u.euclidean())
        throw PreconditionError(
            "target of the map is not a mesh vertex metric (Euclidean images given)");
    const FiberReport mono = is_monotone(u);
    if (!mono.pass) {
        std::ostringstream os;
        os << "map is not monotone: the fiber of vertex " << mono.witness_vertex
           << "'s image is disconnected";
        throw PreconditionError(os.str());
    }
    const FiberReport bub = has_no_bubbles(u);
    if (!bub.pass) {
        std::ostringstream os;
        os << "map has a bubble: a component avoiding the boundary sits around vertex "
           << bub.witness_vertex << "'s image";
        throw PreconditionError(os.str());
    }
    std::vector<char> hit(u.target->size(), 0);
    for (int a : u.assignment) hit[a] = 1;
    for (int k = 0; k < u.target->size(); ++k)
        if (!hit[k]) {
            std::ostringstream os;
            os << "map is not surjective onto the target vertices: point " << k
               << " has no preimage";
            throw PreconditionError(os.str());
        }

    const SemimetricSample d_u = pullback_length_metric(u);
    IsometryReport rep;
    rep.tolerance = tolerance;
    const int n = u.source_size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double gap = d_u(i, j) - (*u.target)(u.assignment[i], u.assignment[j]);
            if (gap > rep.defect) {
                rep.defect = gap;
                rep.witness_x = i;
                rep.witness_y = j;
            }
        }
    rep.pass = rep.defect <= tolerance;
    return rep;
}

}  // namespace discgeom
