#include "rulingsim/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <string_view>

#include "rulingsim/errors.hpp"

namespace rulingsim {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

// Parses whitespace-separated unsigned integers; false on any other token.
bool parse_uints(std::string_view text, std::vector<std::uint64_t>& out) {
  out.clear();
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
    if (pos == text.size()) return true;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data() + pos) return false;
    pos = static_cast<std::size_t>(ptr - text.data());
    if (pos < text.size() && text[pos] != ' ' && text[pos] != '\t' && text[pos] != '\r') return false;
    out.push_back(value);
  }
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "' for reading");
  return in;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::vector<std::uint64_t> fields;
  if (!std::getline(in, line)) fail(1, "missing header '# <n> <m>'");
  if (line.rfind('#', 0) != 0 || !parse_uints(std::string_view(line).substr(1), fields) ||
      fields.size() != 2) {
    fail(1, "malformed header, expected '# <n> <m>'");
  }
  const std::uint64_t n = fields[0];
  const std::uint64_t m = fields[1];
  if (n > std::numeric_limits<VertexId>::max()) fail(1, "vertex count too large");

  std::vector<Edge> edges;
  std::set<Edge> seen;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!parse_uints(line, fields) || fields.size() != 2) {
      fail(line_no, "malformed edge line '" + line + "'");
    }
    if (fields[0] >= n || fields[1] >= n) fail(line_no, "vertex id out of range [0, " + std::to_string(n) + ")");
    auto u = static_cast<VertexId>(fields[0]);
    auto v = static_cast<VertexId>(fields[1]);
    if (u == v) fail(line_no, "self-loop at vertex " + std::to_string(u));
    Edge e{std::min(u, v), std::max(u, v)};
    if (!seen.insert(e).second) {
      fail(line_no, "duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
    edges.push_back(e);
  }
  if (edges.size() != m) {
    fail(line_no, "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph read_edge_list(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  write_edge_list(g, out);
}

std::vector<VertexId> read_vertex_ids(std::istream& in) {
  std::vector<VertexId> ids;
  std::vector<std::uint64_t> fields;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!parse_uints(line, fields) || fields.size() > 1) fail(line_no, "expected one vertex id");
    if (fields.empty()) continue;
    if (fields[0] > std::numeric_limits<VertexId>::max()) fail(line_no, "vertex id too large");
    ids.push_back(static_cast<VertexId>(fields[0]));
  }
  return ids;
}

std::vector<VertexId> read_vertex_ids(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_vertex_ids(in);
}

void write_vertex_ids(const VertexSet& s, std::ostream& out) {
  for (VertexId v : s.members()) out << v << '\n';
}

}  // namespace rulingsim
