#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "floorcount/canonical.hpp"
#include "floorcount/diagram_enum.hpp"
#include "floorcount/diagram_io.hpp"
#include "floorcount/errors.hpp"
#include "floorcount/floor_diagram.hpp"

using namespace floorcount;

namespace {

FloorDiagram chain3(int w1, int w2) {
  // floors 0 -> 1 -> 2, each of divergence 1
  std::vector<Edge> e{{0, 1, false, w1}, {1, 2, false, w2}};
  int sinks = 0;
  const int s[3] = {1 - w1, 1 + w1 - w2, 1 + w2};
  for (int v = 0; v < 3; ++v)
    for (int k = 0; k < s[v]; ++k) e.push_back({v, sinks++, true, 1});
  return FloorDiagram(3, sinks, e);
}

// Random relabeling of floors, sinks and edge order.
FloorDiagram shuffle(const FloorDiagram& d, std::mt19937& rng) {
  std::vector<int> fp(static_cast<std::size_t>(d.floor_count())), sp(static_cast<std::size_t>(d.sink_count()));
  std::iota(fp.begin(), fp.end(), 0);
  std::iota(sp.begin(), sp.end(), 0);
  std::shuffle(fp.begin(), fp.end(), rng);
  std::shuffle(sp.begin(), sp.end(), rng);
  std::vector<Edge> e;
  for (const Edge& x : d.edges())
    e.push_back({fp[static_cast<std::size_t>(x.tail)],
                 x.to_sink ? sp[static_cast<std::size_t>(x.head)] : fp[static_cast<std::size_t>(x.head)], x.to_sink,
                 x.weight});
  std::shuffle(e.begin(), e.end(), rng);
  return FloorDiagram(d.floor_count(), d.sink_count(), e);
}

}  // namespace

TEST_CASE("divergence") {
  FloorDiagram one(1, 1, {{0, 0, true, 1}});
  CHECK(one.divergence(0) == 1);

  // out {1,1}, in {1}
  FloorDiagram d(2, 2, {{0, 1, false, 1}, {1, 0, true, 1}, {1, 1, true, 1}});
  CHECK(divergence(d, 1) == 1);
  CHECK_THROWS_AS(d.divergence(2), std::out_of_range);
}

TEST_CASE("construction rejects self-loops and dangling ids") {
  CHECK_THROWS_AS(FloorDiagram(1, 0, {{0, 0, false, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(FloorDiagram(1, 1, {{0, 1, true, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(FloorDiagram(1, 1, {{1, 0, true, 1}}), std::invalid_argument);
}

TEST_CASE("first Betti number") {
  CHECK(first_betti(chain3(1, 1)) == 0);
  FloorDiagram triple(2, 2, {{0, 1, false, 1}, {0, 1, false, 1}, {0, 1, false, 1}, {1, 0, true, 1}, {1, 1, true, 1}});
  CHECK(first_betti(triple) == 2);
  FloorDiagram split(2, 2, {{0, 0, true, 1}, {1, 1, true, 1}});
  CHECK_THROWS_AS(first_betti(split), std::invalid_argument);
}

TEST_CASE("the genus-one cubic diagram has Betti number one") {
  // a div-2 floor joined to a div-1 floor by two weight-1 edges
  FloorDiagram d(2, 3, {{0, 1, false, 1}, {0, 1, false, 1}, {1, 0, true, 1}, {1, 1, true, 1}, {1, 2, true, 1}});
  CHECK(first_betti(d) == 1);
  CHECK(validate(d, 3, 1).ok());
}

TEST_CASE("validate") {
  CHECK(validate(FloorDiagram(1, 1, {{0, 0, true, 1}}), 1, 0).ok());
  CHECK(validate(chain3(1, 1), 3, 0).ok());

  FloorDiagram flat(2, 1, {{0, 1, false, 1}, {1, 0, true, 1}});
  auto r = validate(flat, 1, 0);
  REQUIRE_FALSE(r.ok());
  CHECK(std::any_of(r.violations.begin(), r.violations.end(),
                    [](const std::string& s) { return s.find("div(v)>0") != std::string::npos; }));

  auto wrong = validate(chain3(1, 1), 4, 1);
  CHECK(std::any_of(wrong.violations.begin(), wrong.violations.end(),
                    [](const std::string& s) { return s.find("#sinks=d") != std::string::npos; }));
  CHECK(std::any_of(wrong.violations.begin(), wrong.violations.end(),
                    [](const std::string& s) { return s.find("b1=g") != std::string::npos; }));

  FloorDiagram cyc(2, 2, {{0, 1, false, 1}, {1, 0, false, 1}, {0, 0, true, 1}, {1, 1, true, 1}});
  CHECK_FALSE(is_acyclic(cyc));
}

TEST_CASE("precedes") {
  const FloorDiagram d = chain3(1, 1);
  const auto tail = DiagramPoint::on_floor(0);
  const auto s0 = DiagramPoint::on_edge(0, 0);
  const auto s1 = DiagramPoint::on_edge(0, 1);
  CHECK(precedes(d, tail, s0));
  CHECK(precedes(d, s0, s1));
  CHECK(precedes(d, s1, DiagramPoint::on_floor(2)));
  CHECK_FALSE(precedes(d, s0, s0));

  // V shape: floors 0 and 1 both feed floor 2
  FloorDiagram v(3, 3, {{0, 2, false, 1}, {1, 2, false, 1}, {2, 0, true, 1}, {2, 1, true, 1}, {2, 2, true, 1}});
  CHECK_FALSE(precedes(v, DiagramPoint::on_floor(0), DiagramPoint::on_floor(1)));
  CHECK_FALSE(precedes(v, DiagramPoint::on_floor(1), DiagramPoint::on_floor(0)));
  CHECK_THROWS_AS(precedes(v, DiagramPoint::on_floor(3), DiagramPoint::on_floor(0)), std::out_of_range);
}

TEST_CASE("precedes is a strict partial order") {
  for (const auto& d : enumerate_floor_diagrams(4, 1)) {
    std::vector<DiagramPoint> pts;
    for (int v = 0; v < d.floor_count(); ++v) pts.push_back(DiagramPoint::on_floor(v));
    for (int e = 0; e < d.edge_count(); ++e)
      for (int s = 0; s < 2; ++s) pts.push_back(DiagramPoint::on_edge(e, s));
    const PointOrder order(d);
    for (const auto& a : pts) {
      CHECK_FALSE(order.precedes(a, a));
      for (const auto& b : pts) {
        if (order.precedes(a, b)) CHECK_FALSE(order.precedes(b, a));
        for (const auto& c : pts)
          if (order.precedes(a, b) && order.precedes(b, c)) CHECK(order.precedes(a, c));
      }
    }
  }
}

TEST_CASE("canonical form") {
  CHECK(canonical_form(chain3(1, 1)) != canonical_form(chain3(1, 2)));

  FloorDiagram a(2, 3, {{0, 1, false, 1}, {0, 1, false, 2}, {0, 0, true, 1}, {1, 1, true, 1}, {1, 2, true, 1}});
  FloorDiagram b(2, 3, {{0, 1, false, 2}, {0, 1, false, 1}, {0, 0, true, 1}, {1, 1, true, 1}, {1, 2, true, 1}});
  CHECK(canonical_form(a) == canonical_form(b));
}

TEST_CASE("canonical form is invariant under random relabeling") {
  std::mt19937 rng(20240611);
  for (int deg = 1; deg <= 5; ++deg)
    for (int g = 0; g <= 2; ++g)
      for (const auto& d : enumerate_floor_diagrams(deg, g)) {
        const std::string key = canonical_form(d);
        for (int i = 0; i < 100; ++i) {
          const FloorDiagram r = shuffle(d, rng);
          REQUIRE(canonical_form(r) == key);
          REQUIRE(canonicalize(r) == d);
        }
      }
}

TEST_CASE("automorphisms") {
  // only the three sinks of the bottom floor move
  CHECK(floor_automorphisms(chain3(1, 2)).size() == 1);
  CHECK(automorphism_count(chain3(1, 2)) == 6);
  FloorDiagram two_sinks(1, 2, {{0, 0, true, 1}, {0, 1, true, 1}});
  CHECK(automorphism_count(two_sinks) == 2);
  FloorDiagram parallel(2, 2, {{0, 1, false, 1}, {0, 1, false, 1}, {1, 0, true, 1}, {1, 1, true, 1}});
  CHECK(automorphism_count(parallel) >= 2);
  CHECK(automorphisms(parallel).size() == automorphism_count(parallel));
}

TEST_CASE("text round trip") {
  for (const auto& d : enumerate_floor_diagrams(4, 1)) {
    const std::string text = to_text(d);
    CHECK(parse_diagram(text) == d);
    CHECK(to_text(parse_diagram(text)) == text);
  }
  std::istringstream many("# comment\n\n" + to_text(chain3(1, 1)) + to_text(chain3(1, 2)));
  CHECK(read_diagrams(many).size() == 2);
}

TEST_CASE("text format") {
  CHECK(to_text(FloorDiagram(1, 1, {{0, 0, true, 1}})) == "floordiagram d=1 g=0\nfloor 0 div=1\nedge 0 -> s0 w=1\n");
  CHECK_THROWS_AS(parse_diagram("floordiagram d=1 g=0\nfloor 0 div=2\nedge 0 -> s0 w=1\n"), ParseError);
  CHECK_THROWS_AS(parse_diagram("floordiagram d=1\n"), ParseError);
  CHECK_THROWS_AS(parse_diagram("edge 0 -> s0 w=1\n"), ParseError);
}

TEST_CASE("dot export") {
  const std::string dot = to_dot(chain3(1, 2));
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("label=\"2\"") != std::string::npos);
}
