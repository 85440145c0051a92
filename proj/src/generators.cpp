#include "rulingsim/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rulingsim/errors.hpp"
#include "rulingsim/random.hpp"

namespace rulingsim {
namespace {

constexpr std::uint32_t kGeneratorTag = 0x47454e; // "GEN"

RandomStream stream_for(const GenSpec& spec) {
  return RandomStream(spec.seed, 0, make_tag(kGeneratorTag, static_cast<std::uint32_t>(spec.family)));
}

void require_family(const GenSpec& spec, Family family) {
  if (spec.family != family) {
    throw InputError("generator for '" + std::string(family_name(family)) +
                     "' called with family '" + std::string(family_name(spec.family)) + "'");
  }
  validate(spec);
}

// Visits every vertex within distance 2 of root, possibly more than once.
template <typename Visit>
void for_ball2(const std::vector<std::vector<VertexId>>& adj, VertexId root, Visit&& visit) {
  visit(root);
  for (VertexId x : adj[root]) {
    visit(x);
    for (VertexId y : adj[x]) visit(y);
  }
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "gnp") return Family::kGnp;
  if (name == "tree") return Family::kTree;
  if (name == "girth6") return Family::kGirth6;
  if (name == "arboricity") return Family::kArboricity;
  throw InputError("unknown graph family '" + std::string(name) + "'");
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kGnp: return "gnp";
    case Family::kTree: return "tree";
    case Family::kGirth6: return "girth6";
    case Family::kArboricity: return "arboricity";
  }
  return "?";
}

void validate(const GenSpec& spec) {
  if (spec.n < 1) throw InputError("generator needs n >= 1");
  if (!std::isfinite(spec.param)) throw InputError("generator parameter must be finite");
  switch (spec.family) {
    case Family::kGnp:
      if (spec.param < 0.0 || spec.param > 1.0) {
        throw InputError("gnp probability must lie in [0, 1], got " + std::to_string(spec.param));
      }
      break;
    case Family::kTree:
      break;
    case Family::kGirth6:
      if (spec.param < 0.0) throw InputError("girth6 target degree must be >= 0");
      break;
    case Family::kArboricity:
      if (spec.param < 1.0 || spec.param != std::floor(spec.param)) {
        throw InputError("arboricity must be an integer >= 1");
      }
      break;
  }
}

Graph generate_gnp(const GenSpec& spec) {
  require_family(spec, Family::kGnp);
  const std::size_t n = spec.n;
  const double p = spec.param;
  std::vector<Edge> edges;
  if (p >= 1.0) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) edges.push_back({VertexId(u), VertexId(v)});
    }
  } else if (p > 0.0) {
    // Geometric skipping over the pairs (w, v), w < v, in row-major order.
    RandomStream rng = stream_for(spec);
    const double log_q = std::log1p(-p);
    std::int64_t v = 1;
    std::int64_t w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
      const double r = 1.0 - rng.uniform01();  // (0, 1]
      const double skip = std::floor(std::log(r) / log_q);
      if (skip > static_cast<double>(nn) * static_cast<double>(nn)) break;
      w += 1 + static_cast<std::int64_t>(skip);
      while (w >= v && v < nn) {
        w -= v;
        ++v;
      }
      if (v < nn) edges.push_back({VertexId(w), VertexId(v)});
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph generate_random_tree(const GenSpec& spec) {
  require_family(spec, Family::kTree);
  RandomStream rng = stream_for(spec);
  std::vector<Edge> edges;
  edges.reserve(spec.n - 1);
  for (std::size_t i = 1; i < spec.n; ++i) {
    edges.push_back({static_cast<VertexId>(rng.below(i)), static_cast<VertexId>(i)});
  }
  return Graph::from_edges(spec.n, std::move(edges));
}

Graph generate_high_girth(const GenSpec& spec) {
  require_family(spec, Family::kGirth6);
  const std::size_t n = spec.n;
  const double d = spec.param;
  const auto target = static_cast<std::size_t>(std::floor(d * static_cast<double>(n) / 2.0));
  const auto budget = static_cast<std::size_t>(std::ceil(50.0 * d * static_cast<double>(n)));

  RandomStream rng = stream_for(spec);
  std::vector<std::vector<VertexId>> adj(n);
  std::vector<std::uint64_t> mark(n, 0);
  std::uint64_t stamp = 0;
  std::vector<Edge> edges;

  for (std::size_t proposal = 0; n >= 2 && proposal < budget && edges.size() < target; ++proposal) {
    const auto u = static_cast<VertexId>(rng.below(n));
    const auto v = static_cast<VertexId>(rng.below(n));
    if (u == v) continue;
    // dist(u, v) <= 4 exactly when the radius-2 balls around u and v meet.
    ++stamp;
    for_ball2(adj, u, [&](VertexId x) { mark[x] = stamp; });
    bool close = false;
    for_ball2(adj, v, [&](VertexId x) { close = close || mark[x] == stamp; });
    if (close) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
    edges.push_back({u, v});
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph generate_bounded_arboricity(const GenSpec& spec) {
  require_family(spec, Family::kArboricity);
  const std::size_t n = spec.n;
  const auto forests = static_cast<std::size_t>(spec.param);
  RandomStream rng = stream_for(spec);
  std::vector<Edge> edges;
  std::vector<VertexId> label(n);
  for (std::size_t f = 0; f < forests; ++f) {
    std::iota(label.begin(), label.end(), VertexId{0});
    for (std::size_t i = n; i > 1; --i) std::swap(label[i - 1], label[rng.below(i)]);
    for (std::size_t i = 1; i < n; ++i) {
      VertexId a = label[i];
      VertexId b = label[rng.below(i)];
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph::from_edges(n, std::move(edges));
}

Graph generate(const GenSpec& spec) {
  switch (spec.family) {
    case Family::kGnp: return generate_gnp(spec);
    case Family::kTree: return generate_random_tree(spec);
    case Family::kGirth6: return generate_high_girth(spec);
    case Family::kArboricity: return generate_bounded_arboricity(spec);
  }
  throw InputError("unknown graph family");
}

}  // namespace rulingsim
