#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace discgeom {

inline constexpr const char* kVersion = "1.0.0";

// One invocation of the command line tool. Zero values for budget-like
// fields mean "use the subcommand default" where one is documented.
struct RunConfig {
    std::string subcommand;

    std::string mesh_path;
    std::string base_path;
    std::string loop_path;
    std::string map_path;
    std::string x_path;
    std::string y_path;
    std::string out_path;

    int budget = 2000;
    std::uint64_t seed = 0;
    std::optional<double> tolerance;
    int threads = 1;

    bool subdivide = false;  // analyze

    double cyl_l = 0.0;  // cylinder; 0 means the loop length
    double cyl_r = 0.0;  // cylinder; 0 means L
    int grid_a = 64;
    int grid_h = 16;
    bool verify = false;

    std::string mode;  // intrinsic, gh: exact|bounds; net: greedy|exact
    int cap = 0;       // 0 means the subcommand default
    long samples = 100000;  // functionals
    double epsilon = 0.0;   // net
};

// The JSON report plus its human-readable summary. `pass` folds every check
// in the report; a report without checks passes.
struct Report {
    nlohmann::ordered_json json;
    bool pass = true;
    std::string summary;
};

// Runs one subcommand end to end: loads inputs, computes, and assembles the
// report. Identical configs and input files produce byte-identical reports.
// Throws on malformed inputs or configs.
Report run(const RunConfig& config);

}  // namespace discgeom
