#pragma once

#include <optional>
#include <span>
#include <vector>

#include "floorcount/bigint.hpp"
#include "floorcount/floor_diagram.hpp"
#include "floorcount/marking.hpp"

namespace floorcount {

// Source of invariants one dimension down. Implementations must tolerate
// concurrent calls.
class InvariantOracle {
 public:
  virtual ~InvariantOracle() = default;
  virtual BigInt gromov_witten(int n, int degree, int genus, std::span<const int> l) = 0;
  virtual BigInt welschinger(int n, int degree) = 0;
};

struct MultiplicityResult {
  BigInt mu_complex;
  std::optional<BigInt> mu_real;  // only for genus 0 with point constraints
};

/*
 Evaluates heights, per-floor constraint dimensions and multiplicities for
 markings of one diagram in ambient dimension n. Everything here depends on a
 marking only through its shape.

 For genus 0 the height of e is
   h(e) = sum over constraints q placed in D_{>e} of (n-1-dim q)
          + 1 - w(e) - (n+1) * sum over floors v in D_{>e} of div(v),
 where D_{>e} is the component of D minus e containing the head of e.
 Constraints placed on e itself are not counted. For positive genus h = 0.
*/
class MultiplicityEvaluator {
 public:
  MultiplicityEvaluator(const FloorDiagram& d, int n);

  int n() const { return n_; }
  std::vector<int> heights(const MarkingShape& shape) const;

  // Dimensions of the linear spaces assigned to floor v, or nullopt when one
  // of them falls outside [0, n-2]. Throws ContractViolation for an unmarked
  // floor.
  std::optional<std::vector<int>> floor_dims(const MarkingShape& shape, int floor) const;
  bool degenerate(const MarkingShape& shape) const;

  BigInt complex_multiplicity(const MarkingShape& shape, InvariantOracle& oracle) const;
  // Requires genus 0 and a shape using only points; ContractViolation otherwise.
  BigInt real_multiplicity(const MarkingShape& shape, InvariantOracle& oracle) const;

 private:
  std::optional<std::vector<int>> floor_dims(const MarkingShape& shape, int floor, const std::vector<int>& h) const;

  FloorDiagram d_;
  int n_;
  int genus_;
  // Per edge: floors and edges inside D_{>e}.
  std::vector<std::vector<int>> above_floors_;
  std::vector<std::vector<int>> above_edges_;
  std::vector<int> above_div_;
};

// Zero unless degree is 1 and there are no constraints: N^(1)_{1,0} = 1.
BigInt line_invariant(int degree);

int height(const MarkedDiagram& m, int edge);
std::optional<std::vector<int>> floor_constraint_dims(const MarkedDiagram& m, int floor);
BigInt complex_multiplicity(const MarkedDiagram& m, InvariantOracle& oracle);
BigInt real_multiplicity(const MarkedDiagram& m, InvariantOracle& oracle);
MultiplicityResult multiplicities(const MarkedDiagram& m, InvariantOracle& oracle);

// n = 2 shortcut: the square of the product of all edge weights.
BigInt plane_multiplicity(const FloorDiagram& d);

// Shape filters for MarkingOptions::accept.
ShapePredicate nondegenerate_filter(const FloorDiagram& d, int n);

}  // namespace floorcount
