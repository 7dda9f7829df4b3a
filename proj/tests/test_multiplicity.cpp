#include <map>

#include "doctest.h"
#include "floorcount/diagram_enum.hpp"
#include "floorcount/errors.hpp"
#include "floorcount/multiplicity.hpp"
#include "floorcount/oracles.hpp"

using namespace floorcount;

namespace {

// Plane invariants from the associativity recursion and a short table of
// real ones; anything else is a test bug.
class TableOracle : public InvariantOracle {
 public:
  int calls = 0;

  BigInt gromov_witten(int n, int degree, int genus, std::span<const int> l) override {
    ++calls;
    REQUIRE(n == 2);
    REQUIRE(genus == 0);
    REQUIRE(l.size() == 1);
    REQUIRE(l[0] == 3 * degree - 1);
    return kontsevich_rational(degree);
  }
  BigInt welschinger(int n, int degree) override {
    REQUIRE(n == 2);
    static const std::map<int, int> w{{1, 1}, {2, 1}, {3, 8}};
    REQUIRE(w.count(degree) == 1);
    return w.at(degree);
  }
};

FloorDiagram chain3(int w1, int w2) {
  std::vector<Edge> e{{0, 1, false, w1}, {1, 2, false, w2}};
  int sinks = 0;
  const int s[3] = {1 - w1, 1 + w1 - w2, 1 + w2};
  for (int v = 0; v < 3; ++v)
    for (int k = 0; k < s[v]; ++k) e.push_back({v, sinks++, true, 1});
  return FloorDiagram(3, sinks, e);
}

MarkingOptions nondegenerate(const FloorDiagram& d, int n) {
  MarkingOptions o;
  o.nondegenerate_bounds = true;
  o.accept = nondegenerate_filter(d, n);
  return o;
}

// Cost of the marks and total divergence of the tail side of internal edge e.
std::pair<int, int> tail_side(const FloorDiagram& d, const MarkingShape& s, int e, int n) {
  std::vector<char> in(static_cast<std::size_t>(d.floor_count()), 0);
  std::vector<int> stack{d.edge(e).tail};
  in[static_cast<std::size_t>(d.edge(e).tail)] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int id = 0; id < d.edge_count(); ++id) {
      const Edge& x = d.edge(id);
      if (id == e || x.to_sink) continue;
      int other = -1;
      if (x.tail == v) other = x.head;
      if (x.head == v) other = x.tail;
      if (other >= 0 && !in[static_cast<std::size_t>(other)]) {
        in[static_cast<std::size_t>(other)] = 1;
        stack.push_back(other);
      }
    }
  }
  int cost = 0, div = 0;
  for (int v = 0; v < d.floor_count(); ++v)
    if (in[static_cast<std::size_t>(v)]) {
      div += d.divergence(v);
      for (int x : s.floor_dims[static_cast<std::size_t>(v)]) cost += n - 1 - x;
    }
  for (int id = 0; id < d.edge_count(); ++id)
    if (id != e && in[static_cast<std::size_t>(d.edge(id).tail)])
      for (int x : s.edge_dims[static_cast<std::size_t>(id)]) cost += n - 1 - x;
  return {cost, div};
}

}  // namespace

TEST_CASE("heights") {
  const auto spec = build_constraints(3, 5, 0, {10, 0});
  for (const auto& d : enumerate_floor_diagrams(5, 0)) {
    const MultiplicityEvaluator ev(d, 3);
    for (const auto& m : enumerate_markings(d, spec, nondegenerate(d, 3)))
      for (int e = 0; e < d.edge_count(); ++e)
        if (d.edge(e).to_sink) CHECK(height(m, e) == 0);
  }

  const auto spec1 = build_constraints(2, 3, 1, {9});
  for (const auto& d : enumerate_floor_diagrams(3, 1))
    for (const auto& m : enumerate_markings(d, spec1))
      for (int e = 0; e < d.edge_count(); ++e) CHECK(height(m, e) == 0);
}

TEST_CASE("heights agree with the tail side") {
  // n-1-h(e)-c(e) = C_< + 1 + w(e) - (n+1) div_<, both sides using the
  // whole dimension budget.
  const std::tuple<int, int, std::vector<int>> cases[] = {{3, 4, {8, 0}}, {3, 3, {3, 6}}, {4, 2, {3, 0, 2}}};
  for (const auto& [n, deg, l] : cases) {
    const auto spec = build_constraints(n, deg, 0, l);
    for (const auto& d : enumerate_floor_diagrams(deg, 0)) {
      const MultiplicityEvaluator ev(d, n);
      for (const auto& s : MarkingEnumerator(d, spec).shapes()) {
        const auto h = ev.heights(s);
        for (int e = 0; e < d.edge_count(); ++e) {
          if (d.edge(e).to_sink) continue;
          int c = 0;
          for (int x : s.edge_dims[static_cast<std::size_t>(e)]) c += n - 1 - x;
          const auto [cost, div] = tail_side(d, s, e, n);
          CHECK(n - 1 - h[static_cast<std::size_t>(e)] - c == cost + 1 + d.edge(e).weight - (n + 1) * div);
        }
      }
    }
  }
}

TEST_CASE("floor dimensions") {
  const auto spec = build_constraints(2, 3, 0, {8});
  const auto a = chain3(1, 1);
  for (const auto& m : enumerate_markings(a, spec, nondegenerate(a, 2)))
    for (int v = 0; v < 3; ++v) {
      const auto dims = floor_constraint_dims(m, v);
      REQUIRE(dims);
      for (int x : *dims) CHECK(x == 0);
    }

  // n = 3, single floor of degree 2 with both sinks unmarked: the outgoing
  // spaces have dimension 2 > n-2.
  const FloorDiagram conic(1, 2, {{0, 0, true, 1}, {0, 1, true, 1}});
  const auto lines = build_constraints(3, 2, 0, {0, 8});
  MarkingShape bare{{{1, 1, 1, 1, 1, 1, 1, 1}}, {{}, {}}};
  const MultiplicityEvaluator ev(conic, 3);
  CHECK_FALSE(ev.floor_dims(bare, 0));
  CHECK(ev.degenerate(bare));

  MarkingShape unmarked{{{}}, {{1, 1, 1, 1}, {1, 1, 1, 1}}};
  CHECK_THROWS_AS(ev.floor_dims(unmarked, 0), ContractViolation);
}

TEST_CASE("conic through eight lines on a single floor") {
  // Six lines on the floor, one on each sink edge: on the floor's plane the
  // top line stays a line, the other five become points, and each sink edge
  // contributes a line. N^(2)_2 = 1 times 2 per line.
  const FloorDiagram conic(1, 2, {{0, 0, true, 1}, {0, 1, true, 1}});
  TableOracle oracle;
  const MultiplicityEvaluator ev(conic, 3);
  MarkingShape six{{{1, 1, 1, 1, 1, 1}}, {{1}, {1}}};
  const auto dims = ev.floor_dims(six, 0);
  REQUIRE(dims);
  CHECK(std::count(dims->begin(), dims->end(), 0) == 5);
  CHECK(std::count(dims->begin(), dims->end(), 1) == 3);
  CHECK(ev.complex_multiplicity(six, oracle) == 8);
  MarkingShape five{{{1, 1, 1, 1, 1}}, {{1}, {1, 1}}};
  CHECK(ev.complex_multiplicity(five, oracle) == 4);
  MarkingShape four{{{1, 1, 1, 1}}, {{1, 1}, {1, 1}}};
  CHECK(ev.complex_multiplicity(four, oracle) == 2);
}

TEST_CASE("plane multiplicities of the cubic chains") {
  TableOracle oracle;
  const auto spec = build_constraints(2, 3, 0, {8});
  const auto b = chain3(1, 2);
  const auto ms = enumerate_markings(b, spec, nondegenerate(b, 2));
  REQUIRE(ms.size() == 1);
  CHECK(complex_multiplicity(ms[0], oracle) == 4);
  CHECK(real_multiplicity(ms[0], oracle) == 0);
  CHECK(oracle.calls == 0);

  const auto a = chain3(1, 1);
  for (const auto& m : enumerate_markings(a, spec, nondegenerate(a, 2))) {
    const auto r = multiplicities(m, oracle);
    CHECK(r.mu_complex == 1);
    REQUIRE(r.mu_real);
    CHECK(*r.mu_real == 1);
  }
}

TEST_CASE("plane floors of higher degree contribute nothing") {
  TableOracle oracle;
  const auto spec = build_constraints(2, 3, 0, {8});
  for (const auto& d : enumerate_floor_diagrams(3, 0)) {
    bool big = false;
    for (int v = 0; v < d.floor_count(); ++v) big = big || d.divergence(v) >= 2;
    if (!big) continue;
    for (const auto& m : enumerate_markings(d, spec)) CHECK(complex_multiplicity(m, oracle) == 0);
  }
}

TEST_CASE("plane closed form") {
  // For n = 2 the recursive formula must reduce to the squared weight product
  // wherever it is nonzero, with all floors of divergence 1 and all heights 0.
  // From degree 4 on only shapes within the nondegenerate bounds are listed;
  // the others have multiplicity 0 anyway.
  TableOracle oracle;
  for (int deg = 1; deg <= 5; ++deg)
    for (int g = 0; g <= (deg - 1) * (deg - 2) / 2; ++g) {
      const auto spec = build_constraints(2, deg, g, {3 * deg - 1 + g});
      for (const auto& d : enumerate_floor_diagrams(deg, g)) {
        const MarkingEnumerator en(d, spec);
        const MultiplicityEvaluator ev(d, 2);
        MarkingOptions opts;
        opts.nondegenerate_bounds = deg >= 4;
        for (const auto& s : en.shapes(opts)) {
          const BigInt mu = ev.complex_multiplicity(s, oracle);
          if (g == 0) {
            const BigInt mr = ev.real_multiplicity(s, oracle);
            CHECK((mr - mu) % 2 == 0);
            if (mu == 0) CHECK(mr == 0);
          }
          if (mu == 0) continue;
          CHECK(mu == plane_multiplicity(d));
          for (int v = 0; v < d.floor_count(); ++v) CHECK(d.divergence(v) == 1);
          for (int h : ev.heights(s)) CHECK(h == 0);
        }
      }
    }
}

TEST_CASE("first type of the space quintic") {
  TableOracle oracle;
  const auto spec = build_constraints(3, 5, 0, {10, 0});
  int found = 0;
  for (const auto& d : enumerate_floor_diagrams(5, 0)) {
    const MultiplicityEvaluator ev(d, 3);
    for (const auto& t : count_marked_by_type(d, spec, nondegenerate(d, 3))) {
      const BigInt mu = ev.complex_multiplicity(t.shape, oracle);
      if (t.count == 3 && mu != 0) {
        ++found;
        CHECK(mu == 12);
        CHECK(ev.real_multiplicity(t.shape, oracle) == 8);
      }
    }
  }
  CHECK(found == 1);
}

TEST_CASE("real multiplicity preconditions") {
  TableOracle oracle;
  const auto lines = build_constraints(3, 2, 0, {0, 8});
  const FloorDiagram conic(1, 2, {{0, 0, true, 1}, {0, 1, true, 1}});
  const auto ms = enumerate_markings(conic, lines);
  REQUIRE_FALSE(ms.empty());
  CHECK_THROWS_AS(real_multiplicity(ms[0], oracle), ContractViolation);
  CHECK_FALSE(multiplicities(ms[0], oracle).mu_real);

  const auto spec1 = build_constraints(2, 3, 1, {9});
  for (const auto& d : enumerate_floor_diagrams(3, 1))
    for (const auto& m : enumerate_markings(d, spec1)) CHECK_THROWS_AS(real_multiplicity(m, oracle), ContractViolation);
}

TEST_CASE("evaluation is repeatable") {
  TableOracle oracle;
  const auto spec = build_constraints(3, 4, 0, {8, 0});
  for (const auto& d : enumerate_floor_diagrams(4, 0))
    for (const auto& m : enumerate_markings(d, spec, nondegenerate(d, 3))) {
      const auto a = multiplicities(m, oracle);
      const auto b = multiplicities(m, oracle);
      CHECK(a.mu_complex == b.mu_complex);
      CHECK(a.mu_real == b.mu_real);
    }
}
