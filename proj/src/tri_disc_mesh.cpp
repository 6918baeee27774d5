#include "discgeom/tri_disc_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "discgeom/errors.hpp"

namespace discgeom {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

std::pair<int, int> ordered(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

}  // namespace

double triangle_area(double a, double b, double c) {
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    if (!(c > 0.0) || !std::isfinite(a))
        throw GeometryError("edge lengths " + fmt(a) + ", " + fmt(b) + ", " + fmt(c) +
                            " are not positive finite");
    // Kahan's sorted Heron factors; with a >= b >= c only c-(a-b) can go
    // nonpositive, exactly when the strict triangle inequality fails.
    const double f = c - (a - b);
    if (!(f > 0.0))
        throw GeometryError("edge lengths " + fmt(a) + ", " + fmt(b) + ", " + fmt(c) +
                            " violate the strict triangle inequality");
    return 0.25 * std::sqrt((a + (b + c)) * f * (c + (a - b)) * (a + (b - c)));
}

int TriDiscMesh::edge_index(int u, int v) const {
    const auto key = ordered(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), key,
                               [](const WeightedGraph::Edge& e, const std::pair<int, int>& k) {
                                   return std::pair{e.u, e.v} < k;
                               });
    if (it == edges.end() || it->u != key.first || it->v != key.second) return -1;
    return static_cast<int>(it - edges.begin());
}

double TriDiscMesh::edge_length(int u, int v) const {
    const int e = edge_index(u, v);
    if (e < 0)
        throw InputError("no edge between vertices " + std::to_string(u) + " and " +
                         std::to_string(v));
    return edges[e].length;
}

std::array<double, 3> TriDiscMesh::triangle_lengths(int t) const {
    const auto& tr = triangles[t];
    return {edge_length(tr[0], tr[1]), edge_length(tr[1], tr[2]), edge_length(tr[2], tr[0])};
}

double TriDiscMesh::triangle_area_of(int t) const {
    const auto l = triangle_lengths(t);
    return triangle_area(l[0], l[1], l[2]);
}

namespace {

// Boundary cycle in traversal order: starts at the smallest boundary vertex
// and moves toward its smaller-indexed boundary neighbor. Assumes every
// boundary vertex has exactly two boundary edges. Returns vertex order;
// throws if the walk closes before covering every boundary edge.
std::vector<int> trace_boundary(const TriDiscMesh& m) {
    const int n = m.num_vertices();
    std::vector<std::vector<int>> bnd(n);
    int boundary_edges = 0;
    for (int e = 0; e < m.num_edges(); ++e) {
        if (!m.is_boundary_edge(e)) continue;
        ++boundary_edges;
        bnd[m.edges[e].u].push_back(m.edges[e].v);
        bnd[m.edges[e].v].push_back(m.edges[e].u);
    }
    int start = -1;
    for (int v = 0; v < n && start < 0; ++v)
        if (!bnd[v].empty()) start = v;
    if (start < 0) throw TopologyError("empty boundary: every edge is interior");

    std::vector<int> cycle{start};
    int prev = start;
    int cur = std::min(bnd[start][0], bnd[start][1]);
    while (cur != start) {
        cycle.push_back(cur);
        const int next = bnd[cur][0] == prev ? bnd[cur][1] : bnd[cur][0];
        prev = cur;
        cur = next;
    }
    if (static_cast<int>(cycle.size()) != boundary_edges)
        throw TopologyError("multiple boundary cycles: " + std::to_string(cycle.size()) +
                            " of " + std::to_string(boundary_edges) +
                            " boundary edges lie on the cycle through vertex " +
                            std::to_string(start));
    return cycle;
}

}  // namespace

TriDiscMesh make_tri_disc_mesh(std::vector<std::string> vertex_labels,
                               std::vector<std::array<int, 3>> triangles,
                               const std::vector<WeightedGraph::Edge>& edge_lengths) {
    const int n = static_cast<int>(vertex_labels.size());
    if (triangles.empty()) throw InputError("mesh has no triangles");

    // Duplicate triangles are deliberately not an input error: they make some
    // edge border two (or three) triangles and fall to the topology checks.
    std::set<std::pair<int, int>> tri_edges;
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        auto [a, b, c] = triangles[t];
        for (int v : {a, b, c})
            if (v < 0 || v >= n)
                throw InputError("triangle " + std::to_string(t) + " references vertex " +
                                 std::to_string(v) + " outside 0.." + std::to_string(n - 1));
        if (a == b || b == c || a == c)
            throw InputError("triangle " + std::to_string(t) + " repeats a vertex");
        tri_edges.insert(ordered(a, b));
        tri_edges.insert(ordered(b, c));
        tri_edges.insert(ordered(a, c));
    }

    std::map<std::pair<int, int>, double> length_of;
    for (const auto& e : edge_lengths) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v)
            throw InputError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             "} is not a pair of distinct vertices in 0.." + std::to_string(n - 1));
        if (!(e.length > 0.0) || !std::isfinite(e.length))
            throw InputError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             "} has nonpositive length " + fmt(e.length));
        if (!length_of.emplace(ordered(e.u, e.v), e.length).second)
            throw InputError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             "} listed twice");
    }
    for (const auto& [key, len] : length_of)
        if (!tri_edges.count(key))
            throw InputError("edge {" + std::to_string(key.first) + "," +
                             std::to_string(key.second) + "} belongs to no triangle");
    for (const auto& key : tri_edges)
        if (!length_of.count(key))
            throw InputError("no length given for triangle edge {" + std::to_string(key.first) +
                             "," + std::to_string(key.second) + "}");

    TriDiscMesh m;
    m.vertices = std::move(vertex_labels);
    m.triangles = std::move(triangles);
    m.edges.reserve(length_of.size());
    for (const auto& [key, len] : length_of) m.edges.push_back({key.first, key.second, len});

    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const auto l = m.triangle_lengths(static_cast<int>(t));
        try {
            triangle_area(l[0], l[1], l[2]);
        } catch (const GeometryError& e) {
            throw GeometryError("triangle " + std::to_string(t) + ": " + e.what());
        }
    }

    m.edge_triangles.assign(m.edges.size(), {-1, -1});
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const auto& tr = m.triangles[t];
        for (int s = 0; s < 3; ++s) {
            const int e = m.edge_index(tr[s], tr[(s + 1) % 3]);
            auto& adj = m.edge_triangles[e];
            if (adj[0] < 0)
                adj[0] = static_cast<int>(t);
            else if (adj[1] < 0)
                adj[1] = static_cast<int>(t);
            else
                throw TopologyError("non-manifold edge {" + std::to_string(m.edges[e].u) + "," +
                                    std::to_string(m.edges[e].v) + "} borders 3 or more triangles");
        }
    }

    m.vertex_edges.assign(n, {});
    for (int e = 0; e < m.num_edges(); ++e) {
        m.vertex_edges[m.edges[e].u].push_back({m.edges[e].v, e});
        m.vertex_edges[m.edges[e].v].push_back({m.edges[e].u, e});
    }
    for (auto& adj : m.vertex_edges) std::sort(adj.begin(), adj.end());

    auto comps = graph_components(n, m.edges);
    if (comps.size() > 1)
        throw TopologyError("mesh is not connected: " + std::to_string(comps.size()) +
                            " components");

    // Link of each vertex: neighbors as nodes, one link edge per incident
    // triangle. A fan (single path or single cycle) is exactly a connected
    // link, since manifold edges cap link degrees at 2.
    std::vector<int> tri_count(n, 0);
    for (const auto& tr : m.triangles)
        for (int v : tr) ++tri_count[v];
    for (int v = 0; v < n; ++v) {
        const auto& adj = m.vertex_edges[v];
        const int deg = static_cast<int>(adj.size());
        int boundary_deg = 0;
        for (const auto& [w, e] : adj)
            if (m.is_boundary_edge(e)) ++boundary_deg;
        const int expected = boundary_deg == 0 ? deg : deg - 1;
        bool fan = (boundary_deg == 0 || boundary_deg == 2) && tri_count[v] == expected;
        if (fan) {
            // connectivity of the link via union-find over neighbor slots
            std::vector<int> parent(deg);
            std::iota(parent.begin(), parent.end(), 0);
            auto find = [&](int x) {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
            auto slot = [&](int w) {
                return static_cast<int>(std::lower_bound(adj.begin(), adj.end(),
                                                         std::pair{w, -1}) -
                                        adj.begin());
            };
            for (const auto& tr : m.triangles) {
                int others[2], k = 0;
                bool has = false;
                for (int x : tr)
                    if (x == v)
                        has = true;
                    else if (k < 2)
                        others[k++] = x;
                if (!has) continue;
                parent[find(slot(others[0]))] = find(slot(others[1]));
            }
            for (int s = 1; s < deg && fan; ++s)
                if (find(s) != find(0)) fan = false;
        }
        if (!fan)
            throw TopologyError("vertex " + std::to_string(v) +
                                " link is not a single fan (pinched or stacked triangles)");
    }

    trace_boundary(m);  // throws on empty boundary or extra cycles

    const long long euler = static_cast<long long>(n) - m.num_edges() + m.num_triangles();
    if (euler != 1)
        throw TopologyError("wrong Euler characteristic " + std::to_string(euler) +
                            " (a disc has 1)");
    return m;
}

TriDiscMesh make_tri_disc_mesh_from_coords(const Eigen::MatrixXd& coords,
                                           std::vector<std::array<int, 3>> triangles,
                                           std::vector<std::string> vertex_labels) {
    const int n = static_cast<int>(coords.rows());
    if (coords.cols() != 2 && coords.cols() != 3)
        throw InputError("vertex coordinates must have 2 or 3 columns, got " +
                         std::to_string(coords.cols()));
    if (vertex_labels.empty()) vertex_labels = index_labels(n);
    if (static_cast<int>(vertex_labels.size()) != n)
        throw InputError("expected " + std::to_string(n) + " vertex labels, got " +
                         std::to_string(vertex_labels.size()));

    std::set<std::pair<int, int>> keys;
    for (const auto& tr : triangles)
        for (int s = 0; s < 3; ++s) {
            const int u = tr[s], v = tr[(s + 1) % 3];
            if (u >= 0 && u < n && v >= 0 && v < n && u != v) keys.insert(ordered(u, v));
        }
    std::vector<WeightedGraph::Edge> edges;
    edges.reserve(keys.size());
    for (const auto& [u, v] : keys)
        edges.push_back({u, v, (coords.row(u) - coords.row(v)).norm()});
    return make_tri_disc_mesh(std::move(vertex_labels), std::move(triangles), edges);
}

FiniteMetricSpace vertex_metric(const TriDiscMesh& m, bool subdivide) {
    const int n = m.num_vertices();
    if (!subdivide) return path_metric(WeightedGraph{m.vertices, m.edges});

    // Midpoint refinement: vertex n+e splits edge e; triangle midsegments get
    // half the opposite side. Original edges stay in the graph, so refined
    // distances never exceed the unrefined ones.
    WeightedGraph g{m.vertices, m.edges};
    auto mid_labels = index_labels(m.num_edges(), "m");
    g.labels.insert(g.labels.end(), mid_labels.begin(), mid_labels.end());
    for (int e = 0; e < m.num_edges(); ++e) {
        const auto& ed = m.edges[e];
        g.edges.push_back({ed.u, n + e, ed.length / 2});
        g.edges.push_back({n + e, ed.v, ed.length / 2});
    }
    for (int t = 0; t < m.num_triangles(); ++t) {
        const auto& tr = m.triangles[t];
        const int e01 = m.edge_index(tr[0], tr[1]);
        const int e12 = m.edge_index(tr[1], tr[2]);
        const int e20 = m.edge_index(tr[2], tr[0]);
        g.edges.push_back({n + e01, n + e12, m.edges[e20].length / 2});
        g.edges.push_back({n + e12, n + e20, m.edges[e01].length / 2});
        g.edges.push_back({n + e20, n + e01, m.edges[e12].length / 2});
    }

    std::vector<int> sources(n);
    std::iota(sources.begin(), sources.end(), 0);
    Eigen::MatrixXd full = graph_distances(g, sources);
    Eigen::MatrixXd d = full.leftCols(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = std::min(d(i, j), d(j, i));
    d.diagonal().setZero();
    return FiniteMetricSpace{m.vertices, d, default_metric_tolerance(d)};
}

double mesh_area(const TriDiscMesh& m) {
    double total = 0.0;
    for (int t = 0; t < m.num_triangles(); ++t) total += m.triangle_area_of(t);
    return total;
}

SampledLoop make_sampled_loop(std::vector<SampledLoop::Sample> samples, double total_length,
                              const FiniteMetricSpace& ambient) {
    if (samples.empty()) throw InputError("loop has no samples");
    if (!(total_length >= 0.0) || !std::isfinite(total_length))
        throw InputError("loop total_length " + fmt(total_length) + " is not a nonnegative number");
    const int msz = static_cast<int>(samples.size());
    for (int i = 0; i < msz; ++i) {
        const auto& s = samples[i];
        if (s.point < 0 || s.point >= ambient.size())
            throw InputError("loop sample " + std::to_string(i) + " references point " +
                             std::to_string(s.point) + " outside the ambient space");
        if (!(s.angle >= 0.0) || !(s.angle < kTwoPi))
            throw InputError("loop sample " + std::to_string(i) + " angle " + fmt(s.angle) +
                             " outside [0, 2pi)");
        if (i > 0 && !(s.angle > samples[i - 1].angle))
            throw InputError("loop angles not strictly increasing at sample " + std::to_string(i));
    }
    const double tol = 1e-9 * std::max(1.0, total_length) + ambient.tolerance;
    for (int i = 0; i < msz; ++i) {
        const int j = (i + 1) % msz;
        const double gap = samples[j].angle - samples[i].angle + (j == 0 ? kTwoPi : 0.0);
        const double chord = ambient(samples[i].point, samples[j].point);
        const double arc = total_length * (gap / kTwoPi);
        if (chord > arc + tol)
            throw InputError("not constant speed: samples " + std::to_string(i) + " and " +
                             std::to_string(j) + " sit at distance " + fmt(chord) +
                             " but only " + fmt(arc) + " apart in arc length");
    }
    return SampledLoop{std::move(samples), total_length};
}

SampledLoop boundary_loop(const TriDiscMesh& m) {
    const auto cycle = trace_boundary(m);
    const int k = static_cast<int>(cycle.size());
    std::vector<double> cum(k, 0.0);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        cum[i] = total;
        total += m.edge_length(cycle[i], cycle[(i + 1) % k]);
    }
    std::vector<SampledLoop::Sample> samples(k);
    for (int i = 0; i < k; ++i) samples[i] = {kTwoPi * (cum[i] / total), cycle[i]};
    return make_sampled_loop(std::move(samples), total, vertex_metric(m));
}

ChordArc chord_arc_constant(const SampledLoop& loop, const FiniteMetricSpace& ambient) {
    const int msz = loop.size();
    ChordArc out;
    for (int i = 0; i < msz; ++i) {
        const int j = (i + 1) % msz;
        const double gap =
            msz == 1 ? kTwoPi
                     : loop.samples[j].angle - loop.samples[i].angle + (j == 0 ? kTwoPi : 0.0);
        out.max_angle_gap = std::max(out.max_angle_gap, gap);
    }
    for (int i = 0; i < msz; ++i)
        for (int j = i + 1; j < msz; ++j) {
            const int p = loop.samples[i].point, q = loop.samples[j].point;
            if (p < 0 || p >= ambient.size() || q < 0 || q >= ambient.size())
                throw InputError("loop sample points fall outside the ambient space");
            const double gap = loop.samples[j].angle - loop.samples[i].angle;
            const double arc = loop.total_length * (std::min(gap, kTwoPi - gap) / kTwoPi);
            const double chord = ambient(p, q);
            if (chord <= 0.0) {
                out.lambda = std::numeric_limits<double>::infinity();
                return out;
            }
            out.lambda = std::max(out.lambda, arc / chord);
        }
    return out;
}

}  // namespace discgeom
