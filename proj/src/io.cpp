#include "discgeom/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "discgeom/errors.hpp"

namespace discgeom {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::filesystem::path& file, const std::string& what) {
    throw InputError(file.string() + ": " + what);
}

[[noreturn]] void fail_at(const std::filesystem::path& file, int line, const std::string& what) {
    std::ostringstream msg;
    msg << file.string() << ":" << line << ": " << what;
    throw InputError(msg.str());
}

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) fail(file, "cannot open the file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool looks_like_json(const std::string& content) {
    for (char ch : content) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return ch == '{';
    }
    return false;
}

json parse_json(const std::filesystem::path& file, const std::string& content) {
    try {
        return json::parse(content);
    } catch (const json::parse_error& e) {
        fail(file, e.what());
    }
}

// Reruns a constructor that validates its arguments, prefixing any complaint
// with the file it came from.
template <typename Fn>
auto checked(const std::filesystem::path& file, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        fail(file, e.what());
    }
}

struct Row {
    int line = 0;
    std::vector<std::string> tokens;
};

std::vector<Row> content_rows(const std::string& content) {
    std::vector<Row> rows;
    std::istringstream in(content);
    std::string text;
    int line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
        std::istringstream fields(text);
        Row row{line, {}};
        std::string token;
        while (fields >> token) row.tokens.push_back(std::move(token));
        if (!row.tokens.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

double parse_double(const std::filesystem::path& file, int line, const std::string& token) {
    double value = 0.0;
    const char* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        fail_at(file, line, "expected a number, got \"" + token + "\"");
    return value;
}

int parse_int(const std::filesystem::path& file, int line, const std::string& token) {
    int value = 0;
    const char* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        fail_at(file, line, "expected an integer, got \"" + token + "\"");
    return value;
}

const json& member(const std::filesystem::path& file, const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) fail(file, std::string("missing \"") + key + "\"");
    return *it;
}

std::vector<std::string> label_list(const std::filesystem::path& file, const json& j, int n) {
    if (!j.contains("labels")) return index_labels(n);
    const json& names = j.at("labels");
    if (!names.is_array() || static_cast<int>(names.size()) != n)
        fail(file, "\"labels\" must list one string per point");
    std::vector<std::string> labels;
    labels.reserve(names.size());
    for (const json& name : names) {
        if (!name.is_string()) fail(file, "\"labels\" must list one string per point");
        labels.push_back(name.get<std::string>());
    }
    return labels;
}

FiniteMetricSpace metric_from_json(const std::filesystem::path& file, const json& j) {
    const json& dist = member(file, j, "dist");
    if (!dist.is_array() || dist.empty()) fail(file, "\"dist\" must be a nonempty square matrix");
    const int n = static_cast<int>(dist.size());
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = dist.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            fail(file, "\"dist\" must be a nonempty square matrix");
        for (int k = 0; k < n; ++k) {
            const json& entry = row.at(k);
            if (!entry.is_number()) fail(file, "\"dist\" entries must be numbers");
            d(i, k) = entry.get<double>();
        }
    }
    std::vector<std::string> labels = label_list(file, j, n);
    return checked(file, [&] { return make_metric_space(std::move(labels), d); });
}

FiniteMetricSpace metric_from_rows(const std::filesystem::path& file, const std::vector<Row>& rows) {
    if (rows.empty()) fail(file, "the file is empty");
    if (rows[0].tokens.size() != 1)
        fail_at(file, rows[0].line, "expected the point count alone on the first line");
    const int n = parse_int(file, rows[0].line, rows[0].tokens[0]);
    if (n < 1) fail_at(file, rows[0].line, "the point count must be positive");
    if (static_cast<int>(rows.size()) != 1 + n)
        fail_at(file, rows.back().line,
                "expected " + std::to_string(n) + " matrix rows, got " +
                    std::to_string(rows.size() - 1));
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i) {
        const Row& row = rows[1 + i];
        if (static_cast<int>(row.tokens.size()) != n)
            fail_at(file, row.line,
                    "expected " + std::to_string(n) + " entries on this row, got " +
                        std::to_string(row.tokens.size()));
        for (int k = 0; k < n; ++k) d(i, k) = parse_double(file, row.line, row.tokens[k]);
    }
    return checked(file, [&] { return make_metric_space(index_labels(n), d); });
}

std::vector<std::array<int, 3>> triangle_list(const std::filesystem::path& file, const json& j) {
    const json& tris = member(file, j, "triangles");
    if (!tris.is_array() || tris.empty()) fail(file, "\"triangles\" must be a nonempty array");
    std::vector<std::array<int, 3>> triangles;
    triangles.reserve(tris.size());
    for (const json& tri : tris) {
        if (!tri.is_array() || tri.size() != 3) fail(file, "each triangle lists three vertex indices");
        std::array<int, 3> t{};
        for (int k = 0; k < 3; ++k) {
            const json& v = tri.at(k);
            if (!v.is_number_integer() || v.get<int>() < 0)
                fail(file, "each triangle lists three vertex indices");
            t[k] = v.get<int>();
        }
        triangles.push_back(t);
    }
    return triangles;
}

TriDiscMesh mesh_from_json(const std::filesystem::path& file, const json& j) {
    const std::vector<std::array<int, 3>> triangles = triangle_list(file, j);
    int n = 0;
    for (const auto& t : triangles) n = std::max({n, t[0] + 1, t[1] + 1, t[2] + 1});
    if (j.contains("labels")) n = std::max(n, static_cast<int>(j.at("labels").size()));
    std::vector<std::string> labels = label_list(file, j, n);

    const json& lengths = member(file, j, "edge_lengths");
    if (!lengths.is_object()) fail(file, "\"edge_lengths\" must map \"i,j\" keys to lengths");
    std::vector<WeightedGraph::Edge> edges;
    edges.reserve(lengths.size());
    for (const auto& [key, value] : lengths.items()) {
        const auto endpoint = [&](const std::string& token) {
            int v = 0;
            const char* end = token.data() + token.size();
            const auto [ptr, ec] = std::from_chars(token.data(), end, v);
            if (ec != std::errc{} || ptr != end || v < 0)
                fail(file, "edge key \"" + key + "\" is not of the form \"i,j\"");
            return v;
        };
        const auto comma = key.find(',');
        if (comma == std::string::npos)
            fail(file, "edge key \"" + key + "\" is not of the form \"i,j\"");
        const int u = endpoint(key.substr(0, comma));
        const int v = endpoint(key.substr(comma + 1));
        if (u == v) fail(file, "edge key \"" + key + "\" joins a vertex to itself");
        if (!value.is_number()) fail(file, "edge key \"" + key + "\" needs a numeric length");
        edges.push_back({std::min(u, v), std::max(u, v), value.get<double>()});
    }
    return checked(file, [&] { return make_tri_disc_mesh(std::move(labels), triangles, edges); });
}

TriDiscMesh mesh_from_rows(const std::filesystem::path& file, const std::vector<Row>& rows) {
    if (rows.empty()) fail(file, "the file is empty");
    if (rows[0].tokens.size() != 2)
        fail_at(file, rows[0].line, "expected vertex and triangle counts on the first line");
    const int nv = parse_int(file, rows[0].line, rows[0].tokens[0]);
    const int nt = parse_int(file, rows[0].line, rows[0].tokens[1]);
    if (nv < 3 || nt < 1) fail_at(file, rows[0].line, "a mesh needs at least 3 vertices and 1 triangle");
    if (static_cast<int>(rows.size()) != 1 + nv + nt)
        fail_at(file, rows.back().line,
                "expected " + std::to_string(nv) + " vertex rows and " + std::to_string(nt) +
                    " triangle rows, got " + std::to_string(rows.size() - 1) + " rows in total");

    const int dim = static_cast<int>(rows[1].tokens.size());
    if (dim != 2 && dim != 3)
        fail_at(file, rows[1].line, "vertex rows carry 2 or 3 coordinates");
    Eigen::MatrixXd coords(nv, dim);
    for (int i = 0; i < nv; ++i) {
        const Row& row = rows[1 + i];
        if (static_cast<int>(row.tokens.size()) != dim)
            fail_at(file, row.line,
                    "expected " + std::to_string(dim) + " coordinates on this row, got " +
                        std::to_string(row.tokens.size()));
        for (int k = 0; k < dim; ++k) coords(i, k) = parse_double(file, row.line, row.tokens[k]);
    }
    std::vector<std::array<int, 3>> triangles(nt);
    for (int t = 0; t < nt; ++t) {
        const Row& row = rows[1 + nv + t];
        if (row.tokens.size() != 3)
            fail_at(file, row.line, "expected 3 vertex indices on this row, got " +
                                        std::to_string(row.tokens.size()));
        for (int k = 0; k < 3; ++k) {
            const int v = parse_int(file, row.line, row.tokens[k]);
            if (v < 0 || v >= nv)
                fail_at(file, row.line, "vertex index " + std::to_string(v) + " is out of range");
            triangles[t][k] = v;
        }
    }
    return checked(file,
                   [&] { return make_tri_disc_mesh_from_coords(coords, triangles, index_labels(nv)); });
}

std::string trimmed(const std::string& content) {
    const auto space = [](char ch) { return std::isspace(static_cast<unsigned char>(ch)) != 0; };
    auto begin = content.begin();
    auto end = content.end();
    while (begin != end && space(*begin)) ++begin;
    while (end != begin && space(*(end - 1))) --end;
    return std::string(begin, end);
}

}  // namespace

FiniteMetricSpace load_metric_space(const std::filesystem::path& file) {
    const std::string content = read_file(file);
    if (looks_like_json(content)) return metric_from_json(file, parse_json(file, content));
    return metric_from_rows(file, content_rows(content));
}

void save_metric_space(const FiniteMetricSpace& x, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) fail(file, "cannot open the file for writing");
    out << x.size() << "\n";
    char buf[48];
    for (int i = 0; i < x.size(); ++i) {
        for (int j = 0; j < x.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", x(i, j));
            out << (j > 0 ? " " : "") << buf;
        }
        out << "\n";
    }
    if (!out) fail(file, "writing the file failed");
}

TriDiscMesh load_mesh(const std::filesystem::path& file) {
    const std::string content = read_file(file);
    if (looks_like_json(content)) return mesh_from_json(file, parse_json(file, content));
    return mesh_from_rows(file, content_rows(content));
}

FiniteMetricSpace load_space_or_mesh_metric(const std::filesystem::path& file) {
    const std::string content = read_file(file);
    if (looks_like_json(content)) {
        const json j = parse_json(file, content);
        if (j.contains("triangles")) return vertex_metric(mesh_from_json(file, j));
        if (j.contains("dist")) return metric_from_json(file, j);
        fail(file, "expected a mesh (\"triangles\") or a metric space (\"dist\")");
    }
    const std::vector<Row> rows = content_rows(content);
    if (rows.empty()) fail(file, "the file is empty");
    if (rows[0].tokens.size() == 2) return vertex_metric(mesh_from_rows(file, rows));
    if (rows[0].tokens.size() == 1) return metric_from_rows(file, rows);
    fail_at(file, rows[0].line,
            "expected a point count (metric space) or vertex and triangle counts (mesh)");
}

SampledLoop load_loop(const std::filesystem::path& file, const TriDiscMesh& mesh) {
    const std::string content = read_file(file);
    if (trimmed(content) == "boundary") return boundary_loop(mesh);
    if (!looks_like_json(content))
        fail(file, "expected the word \"boundary\" or a JSON loop object");
    const json j = parse_json(file, content);

    const json& total = member(file, j, "total_length");
    if (!total.is_number()) fail(file, "\"total_length\" must be a number");
    const json& entries = member(file, j, "samples");
    if (!entries.is_array() || entries.empty()) fail(file, "\"samples\" must be a nonempty array");

    std::vector<SampledLoop::Sample> samples;
    samples.reserve(entries.size());
    for (const json& entry : entries) {
        if (!entry.is_array() || entry.size() != 2 || !entry.at(0).is_number() ||
            !entry.at(1).is_string())
            fail(file, "each sample is an [angle, vertex label] pair");
        const std::string label = entry.at(1).get<std::string>();
        int point = -1;
        for (int v = 0; v < mesh.num_vertices(); ++v) {
            if (mesh.vertices[v] != label) continue;
            if (point >= 0) fail(file, "vertex label \"" + label + "\" is ambiguous in the mesh");
            point = v;
        }
        if (point < 0) fail(file, "no mesh vertex is labeled \"" + label + "\"");
        samples.push_back({entry.at(0).get<double>(), point});
    }
    return checked(file, [&] {
        return make_sampled_loop(samples, total.get<double>(), vertex_metric(mesh));
    });
}

PLMap load_pl_map(const std::filesystem::path& file) {
    const std::string content = read_file(file);
    if (!looks_like_json(content)) fail(file, "map files are JSON objects");
    const json j = parse_json(file, content);

    const json& source = member(file, j, "source_mesh");
    if (!source.is_string()) fail(file, "\"source_mesh\" must be a file path");
    const json& target = member(file, j, "target");
    if (!target.is_string()) fail(file, "\"target\" must be \"euclidean\" or a file path");
    const json& assignment = member(file, j, "assignment");
    if (!assignment.is_array() || assignment.empty())
        fail(file, "\"assignment\" must list one entry per source vertex");

    const std::filesystem::path dir = file.parent_path();
    const auto resolve = [&dir](const std::string& p) {
        const std::filesystem::path q(p);
        return q.is_absolute() ? q : dir / q;
    };
    const TriDiscMesh mesh = load_mesh(resolve(source.get<std::string>()));

    if (target.get<std::string>() == "euclidean") {
        const json& first = assignment.at(0);
        if (!first.is_array() || first.empty())
            fail(file, "Euclidean assignments list one coordinate row per source vertex");
        const int dim = static_cast<int>(first.size());
        Eigen::MatrixXd images(static_cast<int>(assignment.size()), dim);
        for (int i = 0; i < images.rows(); ++i) {
            const json& row = assignment.at(i);
            if (!row.is_array() || static_cast<int>(row.size()) != dim)
                fail(file, "coordinate rows in \"assignment\" must all have the same length");
            for (int k = 0; k < dim; ++k) {
                if (!row.at(k).is_number())
                    fail(file, "coordinate rows in \"assignment\" must hold numbers");
                images(i, k) = row.at(k).get<double>();
            }
        }
        return checked(file, [&] { return make_pl_map(mesh, images); });
    }

    const FiniteMetricSpace space = load_space_or_mesh_metric(resolve(target.get<std::string>()));
    std::vector<int> points;
    points.reserve(assignment.size());
    for (const json& entry : assignment) {
        if (!entry.is_number_integer())
            fail(file, "metric-target assignments list one target point index per source vertex");
        points.push_back(entry.get<int>());
    }
    return checked(file, [&] { return make_pl_map(mesh, space, points); });
}

}  // namespace discgeom
