#include "discgeom/gh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "discgeom/errors.hpp"

namespace discgeom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_relation(const Correspondence& c, const FiniteMetricSpace& x,
                    const FiniteMetricSpace& y) {
    if (c.pairs.empty()) {
        throw PreconditionError("correspondence is not full: it has no pairs");
    }
    std::vector<char> x_covered(static_cast<std::size_t>(x.size()), 0);
    std::vector<char> y_covered(static_cast<std::size_t>(y.size()), 0);
    for (const auto& [a, b] : c.pairs) {
        if (a < 0 || a >= x.size() || b < 0 || b >= y.size()) {
            std::ostringstream msg;
            msg << "correspondence pair (" << a << ", " << b << ") is out of range for spaces of "
                << x.size() << " and " << y.size() << " points";
            throw InputError(msg.str());
        }
        x_covered[static_cast<std::size_t>(a)] = 1;
        y_covered[static_cast<std::size_t>(b)] = 1;
    }
    for (int v = 0; v < x.size(); ++v) {
        if (!x_covered[static_cast<std::size_t>(v)]) {
            std::ostringstream msg;
            msg << "correspondence is not full: point \"" << x.labels[static_cast<std::size_t>(v)]
                << "\" of the first space is uncovered";
            throw PreconditionError(msg.str());
        }
    }
    for (int v = 0; v < y.size(); ++v) {
        if (!y_covered[static_cast<std::size_t>(v)]) {
            std::ostringstream msg;
            msg << "correspondence is not full: point \"" << y.labels[static_cast<std::size_t>(v)]
                << "\" of the second space is uncovered";
            throw PreconditionError(msg.str());
        }
    }
}

double relation_distortion(const std::vector<std::pair<int, int>>& pairs,
                           const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    double worst = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j)
            worst = std::max(worst, std::abs(x(pairs[i].first, pairs[j].first) -
                                             y(pairs[i].second, pairs[j].second)));
    return worst;
}

// Largest gap from a value of `from` to its nearest value in `to` or 0.
double nearest_value_gap(const std::vector<double>& from, const std::vector<double>& to) {
    double worst = 0.0;
    for (double v : from) {
        double best = v;  // distance to the adjoined 0
        auto it = std::lower_bound(to.begin(), to.end(), v);
        if (it != to.end()) best = std::min(best, *it - v);
        if (it != to.begin()) best = std::min(best, v - *(it - 1));
        worst = std::max(worst, best);
    }
    return worst;
}

std::vector<double> sorted_distances(const FiniteMetricSpace& x) {
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(x.size()) * static_cast<std::size_t>(x.size() - 1) / 2);
    for (int i = 0; i < x.size(); ++i)
        for (int j = i + 1; j < x.size(); ++j) d.push_back(x(i, j));
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<int> greedy_net(const FiniteMetricSpace& x, double epsilon) {
    const int n = x.size();
    std::vector<int> net{0};
    std::vector<double> to_net(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) to_net[static_cast<std::size_t>(p)] = x(p, 0);
    for (;;) {
        int far = 0;
        for (int p = 1; p < n; ++p)
            if (to_net[static_cast<std::size_t>(p)] > to_net[static_cast<std::size_t>(far)])
                far = p;
        if (to_net[static_cast<std::size_t>(far)] <= epsilon) return net;
        net.push_back(far);
        for (int p = 0; p < n; ++p)
            to_net[static_cast<std::size_t>(p)] =
                std::min(to_net[static_cast<std::size_t>(p)], x(p, far));
    }
}

}  // namespace

double distortion(const Correspondence& c, const FiniteMetricSpace& x,
                  const FiniteMetricSpace& y) {
    check_relation(c, x, y);
    return relation_distortion(c.pairs, x, y);
}

GHResult gh_exact_small(const FiniteMetricSpace& x, const FiniteMetricSpace& y, int cap) {
    const int n = x.size();
    const int m = y.size();
    if (n > cap || m > cap) {
        std::ostringstream msg;
        msg << "exact Gromov-Hausdorff search is capped at " << cap << " points per space, got "
            << n << " and " << m << "; use the bound operations instead";
        throw SizeError(msg.str());
    }

    // One decision per point, interleaved so distortion terms appear early:
    // even steps choose the image of the next x point, odd steps the preimage
    // of the next y point.
    struct Step {
        bool x_side;
        int point;
    };
    std::vector<Step> steps;
    for (int k = 0; k < std::max(n, m); ++k) {
        if (k < n) steps.push_back({true, k});
        if (k < m) steps.push_back({false, k});
    }

    std::vector<std::pair<int, int>> current;
    std::vector<std::pair<int, int>> best_pairs;
    current.reserve(steps.size());
    double best = kInf;

    std::function<void(std::size_t, double)> dfs = [&](std::size_t depth, double dis) {
        if (depth == steps.size()) {
            best = dis;
            best_pairs = current;
            return;
        }
        const Step& s = steps[depth];
        const int choices = s.x_side ? m : n;
        std::vector<std::pair<double, int>> ranked;
        ranked.reserve(static_cast<std::size_t>(choices));
        for (int c = 0; c < choices; ++c) {
            const int px = s.x_side ? s.point : c;
            const int py = s.x_side ? c : s.point;
            double add = dis;
            for (const auto& [qx, qy] : current)
                add = std::max(add, std::abs(x(px, qx) - y(py, qy)));
            ranked.emplace_back(add, c);
        }
        std::sort(ranked.begin(), ranked.end());
        for (const auto& [add, c] : ranked) {
            if (add >= best) break;
            current.emplace_back(s.x_side ? s.point : c, s.x_side ? c : s.point);
            dfs(depth + 1, add);
            current.pop_back();
        }
    };
    dfs(0, 0.0);

    std::sort(best_pairs.begin(), best_pairs.end());
    best_pairs.erase(std::unique(best_pairs.begin(), best_pairs.end()), best_pairs.end());
    return {best / 2.0, {std::move(best_pairs), best}};
}

double gh_lower_bounds(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    const double diam_gap = std::abs(x.diameter() - y.diameter()) / 2.0;
    const std::vector<double> dx = sorted_distances(x);
    const std::vector<double> dy = sorted_distances(y);
    const double multiset = std::max(nearest_value_gap(dx, dy), nearest_value_gap(dy, dx)) / 2.0;
    return std::max(diam_gap, multiset);
}

FiniteMetricSpace induced_subspace(const FiniteMetricSpace& x, const std::vector<int>& points) {
    if (points.empty()) {
        throw DomainError("an induced subspace needs at least one point");
    }
    std::vector<char> seen(static_cast<std::size_t>(x.size()), 0);
    for (int p : points) {
        if (p < 0 || p >= x.size()) {
            std::ostringstream msg;
            msg << "subspace point " << p << " is out of range for a space of " << x.size()
                << " points";
            throw InputError(msg.str());
        }
        if (seen[static_cast<std::size_t>(p)]) {
            std::ostringstream msg;
            msg << "subspace lists point " << p << " twice";
            throw InputError(msg.str());
        }
        seen[static_cast<std::size_t>(p)] = 1;
    }
    const int k = static_cast<int>(points.size());
    std::vector<std::string> labels;
    labels.reserve(points.size());
    for (int p : points) labels.push_back(x.labels[static_cast<std::size_t>(p)]);
    Eigen::MatrixXd dist(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) dist(i, j) = x(points[static_cast<std::size_t>(i)],
                                                   points[static_cast<std::size_t>(j)]);
    return make_metric_space(std::move(labels), std::move(dist), x.tolerance);
}

NetBound gh_upper_from_net(const FiniteMetricSpace& z, const std::vector<int>& subset) {
    if (subset.empty()) {
        throw DomainError("the net subset must be nonempty");
    }
    const FiniteMetricSpace net = induced_subspace(z, subset);

    const int k = static_cast<int>(subset.size());
    double radius = 0.0;
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(z.size() + k));
    for (int p = 0; p < z.size(); ++p) {
        int best_pos = 0;
        double best_dist = z(p, subset[0]);
        int best_id = subset[0];
        for (int pos = 1; pos < k; ++pos) {
            const double d = z(p, subset[static_cast<std::size_t>(pos)]);
            const int id = subset[static_cast<std::size_t>(pos)];
            if (d < best_dist || (d == best_dist && id < best_id)) {
                best_pos = pos;
                best_dist = d;
                best_id = id;
            }
        }
        radius = std::max(radius, best_dist);
        pairs.emplace_back(p, best_pos);
    }
    // net points always cover their own position, so the relation is full
    // even when distance ties pull them toward another net point
    for (int pos = 0; pos < k; ++pos) pairs.emplace_back(subset[static_cast<std::size_t>(pos)], pos);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    NetBound out;
    out.bound = radius;
    out.witness.distortion = relation_distortion(pairs, z, net);
    out.witness.pairs = std::move(pairs);
    return out;
}

NetCertificate min_epsilon_net(const FiniteMetricSpace& x, double epsilon, NetMode mode, int cap) {
    if (!(epsilon > 0.0)) {
        throw DomainError("the net radius must be positive");
    }
    const int n = x.size();
    std::vector<int> net = greedy_net(x, epsilon);

    if (mode == NetMode::Exact) {
        const int limit = std::min(cap, 62);
        if (n > limit) {
            std::ostringstream msg;
            msg << "exact net computation is capped at " << limit << " points, got " << n
                << "; use the greedy mode";
            throw SizeError(msg.str());
        }
        std::vector<std::uint64_t> balls(static_cast<std::size_t>(n), 0);
        for (int c = 0; c < n; ++c)
            for (int p = 0; p < n; ++p)
                if (x(p, c) <= epsilon) balls[static_cast<std::size_t>(c)] |= std::uint64_t{1} << p;

        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        std::size_t best_k = net.size();
        std::vector<int> best_net = net;
        std::vector<int> chosen;

        std::function<void(std::uint64_t)> dfs = [&](std::uint64_t uncovered) {
            if (uncovered == 0) {
                if (chosen.size() < best_k) {
                    best_k = chosen.size();
                    best_net = chosen;
                }
                return;
            }
            int max_cover = 0;
            for (int c = 0; c < n; ++c)
                max_cover = std::max(
                    max_cover, std::popcount(balls[static_cast<std::size_t>(c)] & uncovered));
            const int need = (std::popcount(uncovered) + max_cover - 1) / max_cover;
            if (chosen.size() + static_cast<std::size_t>(need) >= best_k) return;

            // branch on the uncovered point with the fewest covering balls
            int pick = -1;
            int fewest = n + 1;
            for (int p = 0; p < n; ++p) {
                if (!(uncovered >> p & 1)) continue;
                int covers = 0;
                for (int c = 0; c < n; ++c)
                    if (balls[static_cast<std::size_t>(c)] >> p & 1) ++covers;
                if (covers < fewest) {
                    fewest = covers;
                    pick = p;
                }
            }
            for (int c = 0; c < n; ++c) {
                if (!(balls[static_cast<std::size_t>(c)] >> pick & 1)) continue;
                chosen.push_back(c);
                dfs(uncovered & ~balls[static_cast<std::size_t>(c)]);
                chosen.pop_back();
            }
        };
        dfs(full);
        net = std::move(best_net);
    }

    std::sort(net.begin(), net.end());
    NetCertificate cert;
    cert.epsilon = epsilon;
    cert.net = std::move(net);
    cert.assignment.resize(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
        int best_id = cert.net[0];
        for (int c : cert.net)
            if (x(p, c) < x(p, best_id)) best_id = c;
        cert.assignment[static_cast<std::size_t>(p)] = best_id;
    }
    return cert;
}

}  // namespace discgeom
