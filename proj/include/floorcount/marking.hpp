#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "floorcount/canonical.hpp"
#include "floorcount/floor_diagram.hpp"

namespace floorcount {

struct Constraint {
  int dim = 0;
  int index = 1;  // 1-based position among constraints of the same dimension

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/*
 The ordered constraint list: l_0 points, then l_1 lines, ..., then l_{n-2}
 subspaces of dimension n-2. Rank r in `constraints` is the position in that
 order; dimensions are therefore non-decreasing along the list.
*/
struct ConstraintSpec {
  int n = 2;
  int degree = 1;
  int genus = 0;
  std::vector<int> l;
  std::vector<Constraint> constraints;

  int size() const { return static_cast<int>(constraints.size()); }
  int dim(int rank) const { return constraints[static_cast<std::size_t>(rank)].dim; }
  // Codimension of a constraint inside a curve's deformation space.
  int cost(int rank) const { return n - 1 - dim(rank); }
  bool points_only() const;

  friend bool operator==(const ConstraintSpec&, const ConstraintSpec&) = default;
};

// sum_j l_j (n-1-j) == (n+1)d + (n-3)(1-g)
bool dimension_condition_holds(int n, int degree, int genus, std::span<const int> l);

// Throws DimensionMismatch, UnsupportedGenus, or std::invalid_argument for
// n < 2, d < 1, g < 0, negative counts or a vector of length other than n-1.
ConstraintSpec build_constraints(int n, int degree, int genus, std::vector<int> l);

struct MarkedDiagram {
  FloorDiagram diagram;
  ConstraintSpec spec;
  std::vector<DiagramPoint> assignment;  // indexed by rank in the constraint list

  friend bool operator==(const MarkedDiagram&, const MarkedDiagram&) = default;
};

struct MarkingReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the marking conditions literally, pair by pair, against precedes().
// Independent from the enumerator.
MarkingReport check_marking(const MarkedDiagram& m);

/*
 How many constraints of each dimension sit on each floor and each edge,
 forgetting which constraints they are. Lists are ascending; along an edge
 that is also the slot order, because constraint dimensions never decrease
 along the constraint list and slot labels increase along the edge.
*/
struct MarkingShape {
  std::vector<std::vector<int>> floor_dims;
  std::vector<std::vector<int>> edge_dims;

  friend auto operator<=>(const MarkingShape&, const MarkingShape&) = default;
};

MarkingShape shape_of(const MarkedDiagram& m);

using ShapePredicate = std::function<bool(const MarkingShape&)>;

struct MarkingOptions {
  // Restrict to shapes where every edge carries total cost at most n-1 and
  // every sink edge carries at least one constraint. Every marking with a
  // non-degenerate multiplicity satisfies both, so this only prunes markings
  // whose multiplicity vanishes.
  bool nondegenerate_bounds = false;
  // Extra filter applied to complete shapes; empty accepts everything.
  ShapePredicate accept;
};

/*
 Enumerates markings of one diagram, one per equivalence class (two markings
 are equivalent when an automorphism of the diagram carries one to the other,
 keeping slot order along every edge).

 Shapes are produced with sink edges of a common floor in ascending order of
 their dimension lists; within a shape, constraints are placed from the last
 to the first, which turns the ordering condition into local checks. Each
 complete marking is kept only if it is the least element of its orbit.
*/
class MarkingEnumerator {
 public:
  MarkingEnumerator(const FloorDiagram& d, const ConstraintSpec& spec);

  const FloorDiagram& diagram() const { return diagram_; }
  const ConstraintSpec& spec() const { return spec_; }

  std::vector<MarkingShape> shapes(const MarkingOptions& options = {}) const;

  // Calls `visit` once per equivalence class of markings with this shape.
  // Returns the number of classes.
  std::size_t for_each(const MarkingShape& shape,
                       const std::function<void(const std::vector<DiagramPoint>&)>& visit) const;
  std::size_t count(const MarkingShape& shape) const;

  // Least image of the shape under the automorphism group; equal for two
  // shapes iff they describe the same combinatorial type.
  MarkingShape canonical_shape(const MarkingShape& shape) const;

 private:
  class Search;

  FloorDiagram diagram_;
  ConstraintSpec spec_;
  std::vector<Automorphism> cosets_;
  std::vector<std::vector<int>> sink_groups_;  // sink edge ids per floor
};

std::vector<MarkedDiagram> enumerate_markings(const FloorDiagram& d, const ConstraintSpec& spec,
                                              const MarkingOptions& options = {});

struct TypeCount {
  MarkedDiagram representative;
  MarkingShape shape;  // canonical
  std::size_t count = 0;
};

// Groups the classes produced by enumerate_markings() by combinatorial type,
// ordered by canonical shape.
std::vector<TypeCount> count_marked_by_type(const FloorDiagram& d, const ConstraintSpec& spec,
                                            const MarkingOptions& options = {});

// Diagram text followed by one line per constraint, in list order:
//   mark dim=<j> idx=<k> at=floor:<id>
//   mark dim=<j> idx=<k> at=edge:<edge-id>:slot:<s>
void write_text(std::ostream& os, const MarkedDiagram& m);
std::string to_text(const MarkedDiagram& m);
// The ambient dimension is not part of the format and must be supplied.
std::vector<MarkedDiagram> read_marked_diagrams(std::istream& is, int n);

}  // namespace floorcount
