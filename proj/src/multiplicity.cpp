#include "floorcount/multiplicity.hpp"

#include <memory>

#include "floorcount/errors.hpp"

namespace floorcount {

MultiplicityEvaluator::MultiplicityEvaluator(const FloorDiagram& d, int n)
    : d_(d), n_(n), genus_(first_betti(d)) {
  const auto edges = static_cast<std::size_t>(d.edge_count());
  above_floors_.resize(edges);
  above_edges_.resize(edges);
  above_div_.assign(edges, 0);
  if (genus_ > 0) return;
  // Floors adjacent to each floor, through which edge.
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(d.floor_count()));
  for (int id = 0; id < d.edge_count(); ++id) {
    const Edge& e = d.edge(id);
    adj[static_cast<std::size_t>(e.tail)].emplace_back(id, e.to_sink ? -1 : e.head);
    if (!e.to_sink) adj[static_cast<std::size_t>(e.head)].emplace_back(id, e.tail);
  }
  for (int id = 0; id < d.edge_count(); ++id) {
    const Edge& cut = d.edge(id);
    if (cut.to_sink) continue;  // D_{>e} is a bare sink
    const auto i = static_cast<std::size_t>(id);
    std::vector<char> inside(static_cast<std::size_t>(d.floor_count()), 0);
    std::vector<int> stack{cut.head};
    inside[static_cast<std::size_t>(cut.head)] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      above_floors_[i].push_back(v);
      above_div_[i] += d.divergence(v);
      for (auto [eid, other] : adj[static_cast<std::size_t>(v)])
        if (eid != id && other >= 0 && !inside[static_cast<std::size_t>(other)]) {
          inside[static_cast<std::size_t>(other)] = 1;
          stack.push_back(other);
        }
    }
    // In a tree every other edge with its tail inside lies inside.
    for (int eid = 0; eid < d.edge_count(); ++eid)
      if (eid != id && inside[static_cast<std::size_t>(d.edge(eid).tail)]) above_edges_[i].push_back(eid);
  }
}

namespace {

int cost_of(const std::vector<int>& dims, int n) {
  int c = 0;
  for (int x : dims) c += n - 1 - x;
  return c;
}

}  // namespace

std::vector<int> MultiplicityEvaluator::heights(const MarkingShape& shape) const {
  std::vector<int> h(static_cast<std::size_t>(d_.edge_count()), 0);
  if (genus_ > 0) return h;
  for (int id = 0; id < d_.edge_count(); ++id) {
    const auto i = static_cast<std::size_t>(id);
    int c = 0;
    for (int v : above_floors_[i]) c += cost_of(shape.floor_dims[static_cast<std::size_t>(v)], n_);
    for (int e : above_edges_[i]) c += cost_of(shape.edge_dims[static_cast<std::size_t>(e)], n_);
    h[i] = c + 1 - d_.edge(id).weight - (n_ + 1) * above_div_[i];
  }
  return h;
}

std::optional<std::vector<int>> MultiplicityEvaluator::floor_dims(const MarkingShape& shape, int floor) const {
  return floor_dims(shape, floor, heights(shape));
}

std::optional<std::vector<int>> MultiplicityEvaluator::floor_dims(const MarkingShape& shape, int floor,
                                                                  const std::vector<int>& h) const {
  const auto& marks = shape.floor_dims.at(static_cast<std::size_t>(floor));
  if (marks.empty()) throw ContractViolation("floor " + std::to_string(floor) + " carries no constraint");
  std::vector<int> dims;
  dims.push_back(marks.back());
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) dims.push_back(marks[i] - 1);
  for (int e : d_.in_edges(floor)) dims.push_back(h[static_cast<std::size_t>(e)]);
  for (int e : d_.out_edges(floor))
    dims.push_back(n_ - 1 - h[static_cast<std::size_t>(e)] - cost_of(shape.edge_dims[static_cast<std::size_t>(e)], n_));
  for (int x : dims)
    if (x < 0 || x > n_ - 2) return std::nullopt;
  return dims;
}

bool MultiplicityEvaluator::degenerate(const MarkingShape& shape) const {
  const std::vector<int> h = heights(shape);
  for (int v = 0; v < d_.floor_count(); ++v)
    if (!floor_dims(shape, v, h)) return true;
  return false;
}

BigInt line_invariant(int degree) { return degree == 1 ? 1 : 0; }

BigInt MultiplicityEvaluator::complex_multiplicity(const MarkingShape& shape, InvariantOracle& oracle) const {
  const std::vector<int> h = heights(shape);
  BigInt mu = 1;
  for (int v = 0; v < d_.floor_count(); ++v) {
    auto dims = floor_dims(shape, v, h);
    if (!dims) return 0;
    // Counts of spaces of dimension 0..n-2; the last are hyperplanes of the
    // floor's (n-1)-space and contribute div(v) each.
    std::vector<int> l(static_cast<std::size_t>(n_ - 1), 0);
    for (int x : *dims) ++l[static_cast<std::size_t>(x)];
    const int div = d_.divergence(v);
    const int hyperplanes = l.back();
    l.pop_back();
    BigInt floor_count;
    if (n_ == 2)
      floor_count = line_invariant(div);
    else if (dimension_condition_holds(n_ - 1, div, 0, l))
      floor_count = oracle.gromov_witten(n_ - 1, div, 0, l);
    else
      floor_count = 0;
    if (floor_count == 0) return 0;
    mu *= pow(BigInt(div), static_cast<unsigned long>(hyperplanes)) * floor_count;
  }
  for (int id = 0; id < d_.edge_count(); ++id)
    mu *= pow(BigInt(d_.edge(id).weight), 1 + shape.edge_dims[static_cast<std::size_t>(id)].size());
  return mu;
}

BigInt MultiplicityEvaluator::real_multiplicity(const MarkingShape& shape, InvariantOracle& oracle) const {
  if (genus_ != 0) throw ContractViolation("real multiplicity requires genus 0");
  auto only_points = [](const std::vector<std::vector<int>>& lists) {
    for (const auto& v : lists)
      for (int x : v)
        if (x != 0) return false;
    return true;
  };
  if (!only_points(shape.floor_dims) || !only_points(shape.edge_dims))
    throw ContractViolation("real multiplicity requires point constraints only");
  if (degenerate(shape)) return 0;
  for (const Edge& e : d_.edges())
    if (e.weight % 2 == 0) return 0;
  BigInt mu = 1;
  for (int v = 0; v < d_.floor_count(); ++v) {
    const int div = d_.divergence(v);
    mu *= n_ == 2 ? line_invariant(div) : oracle.welschinger(n_ - 1, div);
    if (mu == 0) return 0;
  }
  return mu;
}

int height(const MarkedDiagram& m, int edge) {
  const MultiplicityEvaluator ev(m.diagram, m.spec.n);
  return ev.heights(shape_of(m)).at(static_cast<std::size_t>(edge));
}

std::optional<std::vector<int>> floor_constraint_dims(const MarkedDiagram& m, int floor) {
  return MultiplicityEvaluator(m.diagram, m.spec.n).floor_dims(shape_of(m), floor);
}

BigInt complex_multiplicity(const MarkedDiagram& m, InvariantOracle& oracle) {
  return MultiplicityEvaluator(m.diagram, m.spec.n).complex_multiplicity(shape_of(m), oracle);
}

BigInt real_multiplicity(const MarkedDiagram& m, InvariantOracle& oracle) {
  if (m.spec.genus != 0 || !m.spec.points_only())
    throw ContractViolation("real multiplicity requires genus 0 and point constraints only");
  return MultiplicityEvaluator(m.diagram, m.spec.n).real_multiplicity(shape_of(m), oracle);
}

MultiplicityResult multiplicities(const MarkedDiagram& m, InvariantOracle& oracle) {
  MultiplicityResult r;
  r.mu_complex = complex_multiplicity(m, oracle);
  if (m.spec.genus == 0 && m.spec.points_only()) r.mu_real = real_multiplicity(m, oracle);
  return r;
}

BigInt plane_multiplicity(const FloorDiagram& d) {
  BigInt p = 1;
  for (const Edge& e : d.edges()) p *= e.weight;
  return p * p;
}

ShapePredicate nondegenerate_filter(const FloorDiagram& d, int n) {
  auto ev = std::make_shared<MultiplicityEvaluator>(d, n);
  return [ev](const MarkingShape& s) { return !ev->degenerate(s); };
}

}  // namespace floorcount
