#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "rulingsim/graph.hpp"

namespace rulingsim {

// Text format: a header line "# <n> <m>" followed by m lines "<u> <v>".
// Writing emits u < v in lexicographic order. Reading accepts either
// orientation and reports the offending line number on any error.
Graph read_edge_list(std::istream& in);
Graph read_edge_list(const std::filesystem::path& path);
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

// Vertex-set files: one ASCII id per line.
std::vector<VertexId> read_vertex_ids(std::istream& in);
std::vector<VertexId> read_vertex_ids(const std::filesystem::path& path);
void write_vertex_ids(const VertexSet& s, std::ostream& out);

}  // namespace rulingsim
