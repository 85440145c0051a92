#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace rulingsim {

using VertexId = std::uint32_t;

// Sentinel for unbounded lengths: the girth of a forest, the ruling distance
// of a set that misses a component.
inline constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

struct Edge {
  VertexId u;
  VertexId v;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Membership bitmap over the ids 0..universe-1.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : bits_(universe, 0) {}

  static VertexSet all(std::size_t universe);
  static VertexSet of(std::size_t universe, std::span<const VertexId> members);
  static VertexSet of(std::size_t universe, std::initializer_list<VertexId> members) {
    return of(universe, std::span<const VertexId>(members.begin(), members.size()));
  }

  std::size_t universe() const { return bits_.size(); }
  bool contains(VertexId v) const { return v < bits_.size() && bits_[v] != 0; }
  void insert(VertexId v);
  void erase(VertexId v);
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<VertexId> members() const;

  VertexSet& operator|=(const VertexSet& other);
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Immutable simple undirected graph on vertices 0..n-1, stored as sorted
/// adjacency lists over a single neighbor array.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from unordered pairs. Throws InputError on a self-loop,
  /// a repeated pair or an endpoint >= n.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;
  bool has_edge(VertexId u, VertexId v) const;

  /// Edges with u < v in lexicographic order.
  const std::vector<Edge>& edges() const { return edges_; }

  /// Re-checks the structural invariants; true when they all hold.
  bool validate() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.num_vertices() == b.num_vertices() && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> targets_;
  std::vector<Edge> edges_;
};

struct InducedSubgraph {
  Graph graph;
  // original[local id] = id in the parent graph; ascending.
  std::vector<VertexId> original;
};

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);

/// Maximum degree of g[s] without materializing the subgraph.
std::size_t induced_max_degree(const Graph& g, const VertexSet& s);

/// Shortest cycle length, or kInfinite for a forest. BFS from every vertex.
std::size_t girth(const Graph& g);

/// ceil(|E| / (|V| - 1)) for |V| >= 2 and 1 for a single vertex.
std::size_t density(const Graph& g);

}  // namespace rulingsim
