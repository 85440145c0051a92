#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rulingsim/graph.hpp"

namespace rulingsim {

enum class Family { kGnp, kTree, kGirth6, kArboricity };

Family parse_family(std::string_view name);
std::string_view family_name(Family family);

struct GenSpec {
  Family family = Family::kGnp;
  std::size_t n = 1;
  // p for gnp, target average degree d for girth6, forest count a for
  // arboricity; ignored for trees.
  double param = 0.0;
  std::uint64_t seed = 0;
};

/// Throws InputError unless n >= 1 and param is in the family's domain.
void validate(const GenSpec& spec);

/// Each unordered pair is an edge independently with probability param.
Graph generate_gnp(const GenSpec& spec);

/// Random recursive tree: vertex i >= 1 attaches to a uniform vertex < i.
Graph generate_random_tree(const GenSpec& spec);

/// Random edges (u, v) are accepted only while dist(u, v) >= 5 in the graph
/// built so far, so the result has girth at least 6. Stops after
/// floor(d * n / 2) acceptances or 50 * d * n proposals, whichever is first.
Graph generate_high_girth(const GenSpec& spec);

/// Union of `a` random spanning trees over independent random labelings;
/// arboricity is at most a.
Graph generate_bounded_arboricity(const GenSpec& spec);

/// Dispatches on spec.family.
Graph generate(const GenSpec& spec);

}  // namespace rulingsim
