#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "floorcount/floor_diagram.hpp"

namespace floorcount {

struct CanonicalLabeling {
  std::string key;
  // order[k] is the floor placed at canonical position k.
  std::vector<int> order;
};

/*
 Canonical labeling of the floors by color refinement (seeded with divergence,
 sink count and the in/out weight multisets) followed by branching over the
 first smallest non-singleton cell. The key is the lexicographically least
 encoding over all branches, so two diagrams share a key iff they are
 isomorphic as weighted oriented multigraphs.
*/
CanonicalLabeling canonical_labeling(const FloorDiagram& d);

std::string canonical_form(const FloorDiagram& d);

// The isomorphic copy of `d` whose floors follow the canonical order. Internal
// edges come first, sorted by (tail, head, weight); sink edges follow sorted by
// tail, with sinks numbered in that order.
FloorDiagram canonicalize(const FloorDiagram& d);

// A weight- and orientation-preserving self-map. floor_map[v] is the image of
// floor v and edge_map[e] the image of edge e.
struct Automorphism {
  std::vector<int> floor_map;
  std::vector<int> edge_map;

  friend bool operator==(const Automorphism&, const Automorphism&) = default;
};

// Every automorphism, including all permutations of the sinks hanging off a
// common floor. The group can be large (k! for a floor with k sinks).
std::vector<Automorphism> automorphisms(const FloorDiagram& d);

// One automorphism per coset of the subgroup that only permutes sinks of a
// common floor: sink edges of v are sent, in ascending id order, to the sink
// edges of the image of v.
std::vector<Automorphism> floor_automorphisms(const FloorDiagram& d);

std::uint64_t automorphism_count(const FloorDiagram& d);

}  // namespace floorcount
