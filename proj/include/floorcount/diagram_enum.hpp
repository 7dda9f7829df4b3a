#pragma once

#include <vector>

#include "floorcount/floor_diagram.hpp"

namespace floorcount {

struct EnumerationOptions {
  unsigned jobs = 1;
  // Soft cap on the degree; larger requests throw std::invalid_argument.
  int max_degree = 10;
};

/*
 All floor diagrams of the given degree and genus, one per isomorphism class,
 each in canonical form (see canonicalize()) and sorted by canonical key.

 Every edge weight is at most d: in a topological order the weight leaving a
 floor is bounded by the divergence accumulated so far, which never exceeds
 the total divergence d. The search uses that bound directly by requiring a
 nonnegative sink count at every floor.
*/
std::vector<FloorDiagram> enumerate_floor_diagrams(int degree, int genus, const EnumerationOptions& options = {});

}  // namespace floorcount
