#include "discgeom/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "discgeom/errors.hpp"
#include "discgeom/rng.hpp"

namespace discgeom {

namespace {

// Incremental state of one region-growing chain over a fixed mesh.
struct Grower {
    const TriDiscMesh& m;
    std::vector<double> tri_area;

    std::vector<char> in_cur, in_frontier;
    std::vector<int> cur, frontier;
    std::vector<int> edge_count;             // triangles of cur on each edge
    std::set<int> bset;                      // edges with exactly one side in cur
    std::vector<std::vector<int>> bedges;    // per vertex: incident bset edges
    std::vector<int> deg;
    int bad = 0;  // vertices whose bset degree is neither 0 nor 2

    explicit Grower(const TriDiscMesh& mesh)
        : m(mesh),
          in_cur(mesh.num_triangles(), 0),
          in_frontier(mesh.num_triangles(), 0),
          edge_count(mesh.num_edges(), 0),
          bedges(mesh.num_vertices()),
          deg(mesh.num_vertices(), 0) {
        tri_area.reserve(mesh.num_triangles());
        for (int t = 0; t < mesh.num_triangles(); ++t)
            tri_area.push_back(mesh.triangle_area_of(t));
    }

    void bump(int v, int dv) {
        const bool was = deg[v] != 0 && deg[v] != 2;
        deg[v] += dv;
        const bool now = deg[v] != 0 && deg[v] != 2;
        bad += now - was;
    }

    void toggle_edge(int e, bool on) {
        const int u = m.edges[e].u, v = m.edges[e].v;
        if (on) {
            bset.insert(e);
            for (int x : {u, v}) bedges[x].push_back(e);
            bump(u, 1);
            bump(v, 1);
        } else {
            bset.erase(e);
            for (int x : {u, v}) {
                auto& bx = bedges[x];
                *std::find(bx.begin(), bx.end(), e) = bx.back();
                bx.pop_back();
            }
            bump(u, -1);
            bump(v, -1);
        }
    }

    void add(int t) {
        in_cur[t] = 1;
        cur.push_back(t);
        const auto& tr = m.triangles[t];
        for (int s = 0; s < 3; ++s) {
            const int e = m.edge_index(tr[s], tr[(s + 1) % 3]);
            if (++edge_count[e] == 1)
                toggle_edge(e, true);
            else
                toggle_edge(e, false);
            for (int t2 : m.edge_triangles[e]) {
                if (t2 < 0 || in_cur[t2] || in_frontier[t2]) continue;
                in_frontier[t2] = 1;
                frontier.push_back(t2);
            }
        }
    }

    // With every bset degree equal to 2, the boundary is a disjoint union of
    // simple cycles; the domain qualifies when there is exactly one.
    bool qualifies() const {
        if (bad != 0 || bset.empty()) return false;
        const int e0 = *bset.begin();
        const int start = m.edges[e0].u;
        int prev_edge = e0, at = m.edges[e0].v;
        std::size_t steps = 1;
        while (at != start) {
            const auto& be = bedges[at];
            const int next = be[0] == prev_edge ? be[1] : be[0];
            at = m.edges[next].u == at ? m.edges[next].v : m.edges[next].u;
            prev_edge = next;
            ++steps;
        }
        return steps == bset.size();
    }

    JordanDomainSample record() const {
        JordanDomainSample d;
        d.enclosed_triangles = cur;
        std::sort(d.enclosed_triangles.begin(), d.enclosed_triangles.end());
        for (int t : d.enclosed_triangles) d.area += tri_area[t];

        int v0 = std::numeric_limits<int>::max();
        for (int e : bset) {
            d.boundary_length += m.edges[e].length;
            v0 = std::min({v0, m.edges[e].u, m.edges[e].v});
        }
        // canonical traversal: from the smallest vertex toward its smaller neighbor
        auto other = [&](int e, int v) { return m.edges[e].u == v ? m.edges[e].v : m.edges[e].u; };
        const auto& b0 = bedges[v0];
        int prev_edge = other(b0[0], v0) < other(b0[1], v0) ? b0[0] : b0[1];
        int at = other(prev_edge, v0);
        d.boundary_cycle.push_back(v0);
        while (at != v0) {
            d.boundary_cycle.push_back(at);
            const auto& be = bedges[at];
            prev_edge = be[0] == prev_edge ? be[1] : be[0];
            at = other(prev_edge, at);
        }
        return d;
    }

    void reset() {
        for (int t : cur) in_cur[t] = 0;
        for (int t : frontier) in_frontier[t] = 0;
        for (int t : cur) {
            const auto& tr = m.triangles[t];
            for (int s = 0; s < 3; ++s) {
                const int e = m.edge_index(tr[s], tr[(s + 1) % 3]);
                edge_count[e] = 0;
                for (int x : {m.edges[e].u, m.edges[e].v}) {
                    bedges[x].clear();
                    deg[x] = 0;
                }
            }
        }
        cur.clear();
        frontier.clear();
        bset.clear();
        bad = 0;
    }
};

}  // namespace

std::vector<JordanDomainSample> enumerate_jordan_domains(const TriDiscMesh& m, int budget,
                                                         std::uint64_t seed) {
    if (budget < 0) throw InputError("domain budget must be nonnegative");
    const int nt = m.num_triangles();

    Grower g(m);
    std::vector<JordanDomainSample> out;
    std::set<std::vector<int>> seen;
    for (int t = 0; t < nt; ++t) {
        g.add(t);
        out.push_back(g.record());
        seen.insert(out.back().enclosed_triangles);
        g.reset();
    }

    Rng rng(seed);
    int grown = 0, stagnant = 0;
    while (grown < budget && stagnant < 50) {
        bool chain_added = false;
        g.add(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(nt))));
        while (!g.frontier.empty() && grown < budget) {
            const auto pick = rng.next_below(g.frontier.size());
            const int t = g.frontier[pick];
            g.frontier[pick] = g.frontier.back();
            g.frontier.pop_back();
            g.in_frontier[t] = 0;
            g.add(t);
            if (g.qualifies()) {
                auto key = g.cur;
                std::sort(key.begin(), key.end());
                if (seen.insert(key).second) {
                    out.push_back(g.record());
                    ++grown;
                    chain_added = true;
                }
            }
        }
        g.reset();
        stagnant = chain_added ? 0 : stagnant + 1;
    }
    return out;
}

IsoperimetricBound isoperimetric_lower_bound(const TriDiscMesh& m, int budget,
                                             std::uint64_t seed) {
    auto domains = enumerate_jordan_domains(m, budget, seed);
    IsoperimetricBound best;
    best.c_hat = -1.0;
    for (auto& d : domains) {
        const double ratio = d.area / (d.boundary_length * d.boundary_length);
        if (ratio > best.c_hat) {
            best.c_hat = ratio;
            best.witness = d;
        }
    }
    return best;
}

double global_isoperimetric_constant(double c, double l0, double total_area) {
    if (!(c > 0.0) || !(l0 > 0.0) || !(total_area > 0.0))
        throw DomainError("isoperimetric constant, length threshold, and area must be positive");
    if (std::isinf(l0)) return c;
    return std::max(c, total_area / (l0 * l0));
}

}  // namespace discgeom
