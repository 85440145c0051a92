#include "rulingsim/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "rulingsim/errors.hpp"

namespace rulingsim {

VertexSet VertexSet::all(std::size_t universe) {
  VertexSet s(universe);
  std::fill(s.bits_.begin(), s.bits_.end(), 1);
  return s;
}

VertexSet VertexSet::of(std::size_t universe, std::span<const VertexId> members) {
  VertexSet s(universe);
  for (VertexId v : members) s.insert(v);
  return s;
}

void VertexSet::insert(VertexId v) {
  if (v >= bits_.size()) {
    throw InputError("vertex " + std::to_string(v) + " outside universe of size " +
                     std::to_string(bits_.size()));
  }
  bits_[v] = 1;
}

void VertexSet::erase(VertexId v) {
  if (v < bits_.size()) bits_[v] = 0;
}

std::size_t VertexSet::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<VertexId> VertexSet::members() const {
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < bits_.size(); ++v) {
    if (bits_[v]) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  if (other.universe() > universe()) bits_.resize(other.universe(), 0);
  for (std::size_t v = 0; v < other.bits_.size(); ++v) bits_[v] |= other.bits_[v];
  return *this;
}

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges) {
  if (n > std::numeric_limits<VertexId>::max()) throw InputError("too many vertices");
  for (Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw InputError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                       ") has an endpoint >= n = " + std::to_string(n));
    }
    if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw InputError("duplicate edge (" + std::to_string(dup->u) + ", " +
                     std::to_string(dup->v) + ")");
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (const Edge& e : edges) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.targets_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // With edges in (u, v) order, x first receives its smaller neighbors from
  // edges (a, x) and then its larger ones from (x, b): every list is sorted.
  for (const Edge& e : edges) {
    g.targets_[cursor[e.u]++] = e.v;
    g.targets_[cursor[e.v]++] = e.u;
  }
  g.edges_ = std::move(edges);
  return g;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < num_vertices(); ++v) {
    best = std::max(best, degree(static_cast<VertexId>(v)));
  }
  return best;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  if (u >= num_vertices() || v >= num_vertices()) return false;
  auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

bool Graph::validate() const {
  const std::size_t n = num_vertices();
  std::size_t degree_sum = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto adj = neighbors(static_cast<VertexId>(v));
    degree_sum += adj.size();
    for (std::size_t k = 0; k < adj.size(); ++k) {
      if (adj[k] >= n || adj[k] == v) return false;
      if (k > 0 && adj[k - 1] >= adj[k]) return false;
      if (!has_edge(adj[k], static_cast<VertexId>(v))) return false;
    }
  }
  return degree_sum == 2 * edges_.size();
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
  const std::size_t n = g.num_vertices();
  InducedSubgraph out;
  std::vector<VertexId> local(n, std::numeric_limits<VertexId>::max());
  for (VertexId v : s.members()) {
    if (v >= n) {
      throw InputError("vertex " + std::to_string(v) + " not in graph with n = " +
                       std::to_string(n));
    }
    local[v] = static_cast<VertexId>(out.original.size());
    out.original.push_back(v);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (s.contains(e.u) && s.contains(e.v)) edges.push_back({local[e.u], local[e.v]});
  }
  out.graph = Graph::from_edges(out.original.size(), std::move(edges));
  return out;
}

std::size_t induced_max_degree(const Graph& g, const VertexSet& s) {
  std::size_t best = 0;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (!s.contains(static_cast<VertexId>(v))) continue;
    std::size_t d = 0;
    for (VertexId w : g.neighbors(static_cast<VertexId>(v))) d += s.contains(w) ? 1 : 0;
    best = std::max(best, d);
  }
  return best;
}

std::size_t girth(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::size_t best = kInfinite;
  std::vector<std::size_t> dist(n, kInfinite);
  std::vector<VertexId> parent(n);
  std::vector<VertexId> touched;
  std::queue<VertexId> frontier;
  for (std::size_t root = 0; root < n; ++root) {
    for (VertexId t : touched) dist[t] = kInfinite;
    touched.clear();
    dist[root] = 0;
    parent[root] = static_cast<VertexId>(root);
    touched.push_back(static_cast<VertexId>(root));
    frontier.push(static_cast<VertexId>(root));
    while (!frontier.empty()) {
      VertexId x = frontier.front();
      frontier.pop();
      // No cycle through root found from here on can beat the current best.
      if (best != kInfinite && 2 * dist[x] + 1 >= best) continue;
      for (VertexId y : g.neighbors(x)) {
        if (dist[y] == kInfinite) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          touched.push_back(y);
          frontier.push(y);
        } else if (parent[x] != y) {
          best = std::min(best, dist[x] + dist[y] + 1);
        }
      }
    }
  }
  return best;
}

std::size_t density(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) throw InputError("density of an empty graph is undefined");
  if (n == 1) return 1;
  const std::size_t m = g.num_edges();
  return (m + (n - 2)) / (n - 1);
}

}  // namespace rulingsim
