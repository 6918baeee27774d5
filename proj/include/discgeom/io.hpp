#pragma once

#include <filesystem>

#include "discgeom/intrinsic.hpp"
#include "discgeom/metric_space.hpp"
#include "discgeom/tri_disc_mesh.hpp"

namespace discgeom {

// Metric space file: JSON {"labels"?, "dist"} when the first character is
// '{', otherwise whitespace text: the point count, then the distance matrix
// row by row ('#' starts a comment). Text labels are the point indices.
FiniteMetricSpace load_metric_space(const std::filesystem::path& file);

// Writes the text form with round-trip-exact numbers (labels are dropped;
// the text form always labels points by index).
void save_metric_space(const FiniteMetricSpace& x, const std::filesystem::path& file);

// Mesh file: JSON {"labels"?, "triangles", "edge_lengths": {"i,j": length}}
// when the first character is '{', otherwise coordinate text: a counts line
// "V T", V vertex rows of 2 or 3 coordinates, then T triangle index rows.
TriDiscMesh load_mesh(const std::filesystem::path& file);

// A metric space from either kind of file: mesh files contribute their
// vertex metric, metric space files load directly.
FiniteMetricSpace load_space_or_mesh_metric(const std::filesystem::path& file);

// Loop file: the word "boundary" (the mesh boundary loop), or JSON
// {"samples": [[angle, vertex label], ...], "total_length": L}, validated
// against the mesh vertex metric.
SampledLoop load_loop(const std::filesystem::path& file, const TriDiscMesh& mesh);

// Map file: JSON {"source_mesh": path, "target": path or "euclidean",
// "assignment": [...]}. Euclidean maps list one coordinate row per source
// vertex; metric targets list one target point index per source vertex, and
// the target may be a mesh file (its vertex metric is used) or a metric
// space file. Relative paths resolve against the map file's folder.
PLMap load_pl_map(const std::filesystem::path& file);

}  // namespace discgeom
