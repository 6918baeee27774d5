#include "discgeom/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "discgeom/cylinder.hpp"
#include "discgeom/errors.hpp"
#include "discgeom/functionals.hpp"
#include "discgeom/gh.hpp"
#include "discgeom/intrinsic.hpp"
#include "discgeom/io.hpp"
#include "discgeom/jordan.hpp"
#include "discgeom/metric_space.hpp"
#include "discgeom/tri_disc_mesh.hpp"

namespace discgeom {
namespace {

using nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct ReportBuilder {
    ordered_json doc;
    ordered_json checks = ordered_json::array();
    bool all_pass = true;
    std::ostringstream text;

    explicit ReportBuilder(const char* subcommand) {
        doc["version"] = kVersion;
        doc["subcommand"] = subcommand;
    }

    void check(const char* name, double value, double bound, bool pass) {
        checks.push_back(
            ordered_json{{"name", name}, {"value", value}, {"bound", bound}, {"pass", pass}});
        all_pass = all_pass && pass;
        text << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << fmt(value) << " vs bound "
             << fmt(bound) << "\n";
    }

    Report finish() {
        doc["checks"] = std::move(checks);
        doc["pass"] = all_pass;
        Report out;
        out.pass = all_pass;
        out.summary = text.str();
        out.json = std::move(doc);
        return out;
    }
};

const std::string& need_path(const std::string& path, const char* flag, const char* sub) {
    if (path.empty())
        throw InputError(std::string("the ") + sub + " subcommand needs " + flag);
    return path;
}

std::string pick_mode(const std::string& mode, const char* fallback, const char* alt) {
    if (mode.empty()) return fallback;
    if (mode != fallback && mode != alt)
        throw InputError(std::string("--mode must be \"") + fallback + "\" or \"" + alt +
                         "\", got \"" + mode + "\"");
    return mode;
}

ordered_json fiber_json(const FiberReport& r) {
    ordered_json f{{"pass", r.pass}};
    if (!r.pass) {
        f["witness_vertex"] = r.witness_vertex;
        f["witness_components"] = r.witness_components;
    }
    return f;
}

Report run_analyze(const RunConfig& c) {
    const TriDiscMesh mesh = load_mesh(need_path(c.mesh_path, "--mesh", "analyze"));
    const double area = mesh_area(mesh);
    const SampledLoop loop = boundary_loop(mesh);
    const FiniteMetricSpace vm = vertex_metric(mesh, c.subdivide);
    const ChordArc arc = chord_arc_constant(loop, vm);
    const IsoperimetricBound iso = isoperimetric_lower_bound(mesh, c.budget, c.seed);

    ReportBuilder rb("analyze");
    rb.doc["config"] = {{"mesh", c.mesh_path},
                        {"budget", c.budget},
                        {"seed", c.seed},
                        {"subdivide", c.subdivide}};
    rb.doc["results"] = {
        {"vertices", mesh.num_vertices()},
        {"edges", mesh.num_edges()},
        {"triangles", mesh.num_triangles()},
        {"area", area},
        {"boundary_length", loop.total_length},
        {"boundary_samples", loop.size()},
        {"chord_arc", arc.lambda},
        {"max_angle_gap", arc.max_angle_gap},
        {"isoperimetric_lower_bound", iso.c_hat},
        {"witness",
         {{"area", iso.witness.area},
          {"boundary_length", iso.witness.boundary_length},
          {"triangles", static_cast<int>(iso.witness.enclosed_triangles.size())},
          {"boundary_cycle", iso.witness.boundary_cycle}}},
    };
    rb.text << "mesh: " << mesh.num_vertices() << " vertices, " << mesh.num_edges() << " edges, "
            << mesh.num_triangles() << " triangles\n"
            << "area " << fmt(area) << ", boundary length " << fmt(loop.total_length) << "\n"
            << "chord-arc constant " << fmt(arc.lambda) << "\n"
            << "isoperimetric lower bound " << fmt(iso.c_hat) << " (witness: area "
            << fmt(iso.witness.area) << ", boundary " << fmt(iso.witness.boundary_length) << ", "
            << iso.witness.enclosed_triangles.size() << " triangles)\n";
    return rb.finish();
}

Report run_cylinder(const RunConfig& c) {
    const TriDiscMesh base = load_mesh(need_path(c.base_path, "--base", "cylinder"));
    const SampledLoop loop = load_loop(need_path(c.loop_path, "--loop", "cylinder"), base);
    const double L = c.cyl_l > 0 ? c.cyl_l : loop.total_length;
    const double R = c.cyl_r > 0 ? c.cyl_r : L;
    CylinderSpace cyl = build_cylinder(vertex_metric(base), loop, L, R, c.grid_a, c.grid_h);
    cyl.base_mesh = base;
    const CylinderReport rep = verify_cylinder(cyl, c.budget, c.seed);

    ReportBuilder rb("cylinder");
    rb.doc["config"] = {{"base", c.base_path}, {"loop", c.loop_path},
                        {"L", L},              {"R", R},
                        {"grid_a", c.grid_a},  {"grid_h", c.grid_h},
                        {"budget", c.budget},  {"seed", c.seed},
                        {"verify", c.verify}};
    ordered_json res{
        {"points", cyl.space.size()},
        {"embedding_error", rep.embedding_error},
        {"net_radius", rep.net_radius},
        {"glue_slack", rep.glue_slack},
        {"midpoint_defect", rep.midpoint_defect},
        {"collar_area", rep.collar_area},
        {"gammaR_length", rep.gammaR_length},
        {"gammaR_chord_arc", rep.gammaR_chord_arc},
    };
    if (rep.base_area) res["base_area"] = *rep.base_area;
    if (rep.total_area) res["total_area"] = *rep.total_area;
    if (rep.c_base) res["c_base"] = *rep.c_base;
    if (rep.c_cyl) res["c_cyl"] = *rep.c_cyl;
    if (rep.c_transfer_bound) res["c_transfer_bound"] = *rep.c_transfer_bound;
    rb.doc["results"] = std::move(res);

    rb.text << "glued space: " << cyl.space.size() << " points (" << cyl.base_size()
            << " base, " << c.grid_a << "x" << c.grid_h << " collar), L " << fmt(L) << ", R "
            << fmt(R) << "\n"
            << "embedding error " << fmt(rep.embedding_error) << ", net radius "
            << fmt(rep.net_radius) << "\n"
            << "outer circle: length " << fmt(rep.gammaR_length) << ", chord-arc "
            << fmt(rep.gammaR_chord_arc) << "\n";
    if (rep.c_cyl)
        rb.text << "isoperimetric: base " << fmt(*rep.c_base) << ", cylinder " << fmt(*rep.c_cyl)
                << ", transfer bound " << fmt(*rep.c_transfer_bound) << "\n";

    if (c.verify) {
        rb.check("embedding_error", rep.embedding_error, c.tolerance.value_or(1e-9),
                 rep.embedding_error <= c.tolerance.value_or(1e-9));
        const double radius_bound = R + R / c.grid_h;
        rb.check("net_radius", rep.net_radius, radius_bound, rep.net_radius <= radius_bound);
        if (rep.base_area && rep.total_area) {
            const double collar = *rep.total_area - *rep.base_area;
            rb.check("collar_area_exact", collar, L * R, collar == L * R);
        }
        const double arc_bound = 1.0 + 2.0 * std::numbers::pi / c.grid_a;
        rb.check("gammaR_chord_arc", rep.gammaR_chord_arc, arc_bound,
                 rep.gammaR_chord_arc <= arc_bound);
        if (rep.c_cyl && rep.c_transfer_bound)
            rb.check("isoperimetric_transfer", *rep.c_cyl, *rep.c_transfer_bound + 0.05,
                     *rep.c_cyl <= *rep.c_transfer_bound + 0.05);
    }
    return rb.finish();
}

Report run_intrinsic(const RunConfig& c) {
    const PLMap u = load_pl_map(need_path(c.map_path, "--map", "intrinsic"));
    const std::string mode = pick_mode(c.mode, "exact", "bounds");
    const int cap = c.cap > 0 ? c.cap : 20;
    const IntrinsicDiscResult res = factorization_check(
        u, mode == "exact" ? DiameterMode::Exact : DiameterMode::Bounds, cap);
    const double tol = c.tolerance.value_or(res.tolerance);
    const FiberReport mono = is_monotone(u);
    const FiberReport bub = has_no_bubbles(u);

    ReportBuilder rb("intrinsic");
    rb.doc["config"] = {{"map", c.map_path}, {"mode", mode}, {"cap", cap}};
    rb.doc["results"] = {
        {"source_vertices", u.source_size()},
        {"quotient_points", res.quotient.size()},
        {"projection", res.projection},
        {"chain_violation", res.chain_violation},
        {"link_violation", res.link_violation},
        {"monotone", fiber_json(mono)},
        {"no_bubbles", fiber_json(bub)},
    };
    rb.text << "intrinsic disc: " << res.quotient.size() << " points from " << u.source_size()
            << " source vertices (" << mode << " mode)\n"
            << "monotone: " << (mono.pass ? "yes" : "no") << ", bubble-free: "
            << (bub.pass ? "yes" : "no") << "\n";
    rb.check("factorization_chain", res.chain_violation, tol, res.chain_violation <= tol);
    return rb.finish();
}

Report run_functionals(const RunConfig& c) {
    const PLMap u = load_pl_map(need_path(c.map_path, "--map", "functionals"));
    const FunctionalReport rep = functional_report(u, c.samples, c.seed);

    ReportBuilder rb("functionals");
    rb.doc["config"] = {{"map", c.map_path}, {"samples", c.samples}, {"seed", c.seed}};
    rb.doc["results"] = {
        {"area", rep.area},
        {"energy", rep.energy},
        {"multiplicity_area", rep.multiplicity.value},
        {"multiplicity_standard_error", rep.multiplicity.standard_error},
    };
    rb.text << "area " << fmt(rep.area) << ", energy " << fmt(rep.energy) << ", multiplicity "
            << fmt(rep.multiplicity.value) << " (se " << fmt(rep.multiplicity.standard_error)
            << ")\n";
    rb.check("area_le_energy", rep.area, rep.energy, rep.area <= rep.energy);
    const double gap = std::abs(rep.multiplicity.value - rep.area);
    const double gap_bound = 3.0 * rep.multiplicity.standard_error;
    rb.check("multiplicity_matches_area", gap, gap_bound, gap <= gap_bound);
    return rb.finish();
}

Report run_gh(const RunConfig& c) {
    const FiniteMetricSpace x = load_space_or_mesh_metric(need_path(c.x_path, "--x", "gh"));
    const FiniteMetricSpace y = load_space_or_mesh_metric(need_path(c.y_path, "--y", "gh"));
    const std::string mode = pick_mode(c.mode, "exact", "bounds");
    const double lower = gh_lower_bounds(x, y);

    ReportBuilder rb("gh");
    rb.doc["config"] = {{"x", c.x_path}, {"y", c.y_path}, {"mode", mode}};
    if (mode == "exact") {
        const int cap = c.cap > 0 ? c.cap : 7;
        rb.doc["config"]["cap"] = cap;
        const GHResult r = gh_exact_small(x, y, cap);
        ordered_json pairs = ordered_json::array();
        for (const auto& [a, b] : r.witness.pairs) pairs.push_back(ordered_json::array({a, b}));
        rb.doc["results"] = {
            {"lower_bound", lower},
            {"distance", r.value},
            {"witness", {{"distortion", r.witness.distortion}, {"pairs", std::move(pairs)}}},
        };
        rb.text << "distance " << fmt(r.value) << " (certified lower bound " << fmt(lower)
                << ")\n";
        rb.check("lower_le_exact", lower, r.value, lower <= r.value);
    } else {
        rb.doc["results"] = {{"lower_bound", lower}};
        rb.text << "certified lower bound " << fmt(lower) << "\n";
    }
    return rb.finish();
}

Report run_net(const RunConfig& c) {
    const FiniteMetricSpace x = load_space_or_mesh_metric(need_path(c.x_path, "--x", "net"));
    const std::string mode = pick_mode(c.mode, "greedy", "exact");
    const int cap = c.cap > 0 ? c.cap : 25;
    const NetCertificate cert =
        min_epsilon_net(x, c.epsilon, mode == "greedy" ? NetMode::Greedy : NetMode::Exact, cap);
    double covering = 0.0;
    for (int p = 0; p < x.size(); ++p)
        covering = std::max(covering, x(p, cert.assignment[static_cast<std::size_t>(p)]));

    ReportBuilder rb("net");
    rb.doc["config"] = {{"x", c.x_path}, {"epsilon", c.epsilon}, {"mode", mode}, {"cap", cap}};
    std::vector<std::string> net_labels;
    net_labels.reserve(cert.net.size());
    for (int p : cert.net) net_labels.push_back(x.labels[static_cast<std::size_t>(p)]);
    rb.doc["results"] = {
        {"epsilon", cert.epsilon},
        {"net_size", static_cast<int>(cert.net.size())},
        {"net", cert.net},
        {"net_labels", net_labels},
        {"assignment", cert.assignment},
        {"covering_radius", covering},
    };
    rb.text << "net of " << cert.net.size() << " points at radius " << fmt(c.epsilon) << " ("
            << mode << " mode)\n";
    rb.check("covering_radius", covering, c.epsilon, covering <= c.epsilon);
    return rb.finish();
}

}  // namespace

Report run(const RunConfig& config) {
    if (config.threads < 1) throw InputError("--threads must be at least 1");
    if (config.subcommand == "analyze") return run_analyze(config);
    if (config.subcommand == "cylinder") return run_cylinder(config);
    if (config.subcommand == "intrinsic") return run_intrinsic(config);
    if (config.subcommand == "functionals") return run_functionals(config);
    if (config.subcommand == "gh") return run_gh(config);
    if (config.subcommand == "net") return run_net(config);
    throw InputError("unknown subcommand \"" + config.subcommand + "\"");
}

}  // namespace discgeom
