#pragma once

// Slow reference implementations used only by the tests. They share no code
// with the library's search or canonical labeling.

#include <set>
#include <string>
#include <vector>

#include "floorcount/floor_diagram.hpp"
#include "floorcount/marking.hpp"

namespace brute {

// Isomorphism-invariant key: least encoding over all floor permutations.
std::string diagram_key(const floorcount::FloorDiagram& d);

// Keys of all floor diagrams of degree d and genus g, generated from every
// multiset of weighted edges between ordered pairs of distinct floors.
std::set<std::string> diagram_keys(int degree, int genus);

// Automorphisms as (floor map, edge map), found by trying every edge
// permutation.
struct Symmetry {
  std::vector<int> floor_map;
  std::vector<int> edge_map;
};
std::vector<Symmetry> symmetries(const floorcount::FloorDiagram& d);

// Every assignment and slot order accepted by check_marking(), reduced to one
// representative key per orbit of symmetries().
std::set<std::vector<floorcount::DiagramPoint>> marking_classes(const floorcount::FloorDiagram& d,
                                                                const floorcount::ConstraintSpec& spec);

// Least image of an assignment under symmetries().
std::vector<floorcount::DiagramPoint> orbit_key(const std::vector<floorcount::DiagramPoint>& a,
                                                const std::vector<Symmetry>& syms);

}  // namespace brute
