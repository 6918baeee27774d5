#include <charconv>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "discgeom/errors.hpp"
#include "discgeom/run.hpp"

namespace {

bool parse_grid(const std::string& text, int& a, int& h) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return false;
    const auto whole = [](const std::string& token, int& out) {
        const char* end = token.data() + token.size();
        const auto [ptr, ec] = std::from_chars(token.data(), end, out);
        return ec == std::errc{} && ptr == end && out > 0;
    };
    return whole(text.substr(0, comma), a) && whole(text.substr(comma + 1), h);
}

}  // namespace

int main(int argc, char** argv) {
    discgeom::RunConfig cfg;
    std::string grid_text;

    CLI::App app{"Metric geometry of triangulated discs: isoperimetric statistics, glued "
                 "cylinders, intrinsic discs, map functionals, and Gromov-Hausdorff bounds"};
    app.require_subcommand(1);
    app.set_version_flag("--version", discgeom::kVersion);

    app.add_option("--seed", cfg.seed, "seed for all randomized sampling");
    app.add_option("--tolerance", cfg.tolerance, "override the default tolerance of the checks");
    app.add_option("--out", cfg.out_path, "write the JSON report to this file");
    app.add_option("--threads", cfg.threads, "worker threads (reports do not depend on this)");

    CLI::App* analyze =
        app.add_subcommand("analyze", "boundary and isoperimetric statistics of a mesh");
    analyze->add_option("--mesh", cfg.mesh_path, "mesh file")->required();
    analyze->add_option("--budget", cfg.budget, "region sampling budget");
    analyze->add_option("--subdivide", cfg.subdivide,
                        "refine the vertex metric through edge midpoints (0|1)");

    CLI::App* cylinder =
        app.add_subcommand("cylinder", "glue a cylindrical collar along a boundary loop");
    cylinder->add_option("--base", cfg.base_path, "base mesh file")->required();
    cylinder->add_option("--loop", cfg.loop_path, "loop file, or a file containing \"boundary\"")
        ->required();
    cylinder->add_option("--L", cfg.cyl_l, "collar circumference (default: the loop length)");
    cylinder->add_option("--R", cfg.cyl_r, "collar height (default: L)");
    cylinder->add_option("--grid", grid_text, "collar grid \"a,h\" (default 64,16)");
    cylinder->add_flag("--verify", cfg.verify, "run the quantitative checks");
    cylinder->add_option("--budget", cfg.budget, "region sampling budget");

    CLI::App* intrinsic =
        app.add_subcommand("intrinsic", "intrinsic disc and factorization chain of a PL map");
    intrinsic->add_option("--map", cfg.map_path, "map file")->required();
    intrinsic->add_option("--mode", cfg.mode, "exact|bounds (default exact)");
    intrinsic->add_option("--cap", cfg.cap, "connected-set size cap in exact mode (default 20)");

    CLI::App* functionals =
        app.add_subcommand("functionals", "area, energy, and multiplicity area of a PL map");
    functionals->add_option("--map", cfg.map_path, "map file")->required();
    functionals->add_option("--samples", cfg.samples, "Monte Carlo sample count");

    CLI::App* gh = app.add_subcommand("gh", "Gromov-Hausdorff distance between two spaces");
    gh->add_option("--x", cfg.x_path, "first space (mesh or metric file)")->required();
    gh->add_option("--y", cfg.y_path, "second space (mesh or metric file)")->required();
    gh->add_option("--mode", cfg.mode, "exact|bounds (default exact)");
    gh->add_option("--cap", cfg.cap, "exact solver size cap (default 7)");

    CLI::App* net = app.add_subcommand("net", "minimum epsilon-net of a space");
    net->add_option("--x", cfg.x_path, "space (mesh or metric file)")->required();
    net->add_option("--epsilon", cfg.epsilon, "net radius")->required();
    net->add_option("--mode", cfg.mode, "greedy|exact (default greedy)");
    net->add_option("--cap", cfg.cap, "exact solver size cap (default 25)");

    for (CLI::App* sub : {analyze, cylinder, intrinsic, functionals, gh, net})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (!grid_text.empty() && !parse_grid(grid_text, cfg.grid_a, cfg.grid_h)) {
        std::cerr << "error: --grid expects \"a,h\" with positive integers, got \"" << grid_text
                  << "\"\n";
        return 2;
    }

    try {
        const discgeom::Report report = discgeom::run(cfg);
        std::cout << report.summary;
        if (!cfg.out_path.empty()) {
            std::ofstream out(cfg.out_path, std::ios::binary);
            out << report.json.dump(2) << "\n";
            if (!out) {
                std::cerr << "error: " << cfg.out_path << ": cannot write the report\n";
                return 2;
            }
        }
        return report.pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
