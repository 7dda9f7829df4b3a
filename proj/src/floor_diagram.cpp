#include "floorcount/floor_diagram.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace floorcount {

FloorDiagram::FloorDiagram(int floor_count, int sink_count, std::vector<Edge> edges)
    : sink_count_(sink_count), edges_(std::move(edges)) {
  if (floor_count < 0 || sink_count < 0) throw std::invalid_argument("negative vertex count");
  const auto floors = static_cast<std::size_t>(floor_count);
  divergence_.assign(floors, 0);
  out_.assign(floors, {});
  in_.assign(floors, {});
  for (int id = 0; id < edge_count(); ++id) {
    const Edge& e = edges_[static_cast<std::size_t>(id)];
    if (e.tail < 0 || e.tail >= floor_count)
      throw std::invalid_argument("edge " + std::to_string(id) + ": tail is not a floor");
    if (e.to_sink ? (e.head < 0 || e.head >= sink_count) : (e.head < 0 || e.head >= floor_count))
      throw std::invalid_argument("edge " + std::to_string(id) + ": unknown head");
    if (!e.to_sink && e.head == e.tail)
      throw std::invalid_argument("edge " + std::to_string(id) + ": self-loop");
    out_[static_cast<std::size_t>(e.tail)].push_back(id);
    divergence_[static_cast<std::size_t>(e.tail)] += e.weight;
    if (!e.to_sink) {
      in_[static_cast<std::size_t>(e.head)].push_back(id);
      divergence_[static_cast<std::size_t>(e.head)] -= e.weight;
    }
  }
}

int FloorDiagram::divergence(int floor) const {
  if (floor < 0 || floor >= floor_count())
    throw std::out_of_range("unknown floor " + std::to_string(floor));
  return divergence_[static_cast<std::size_t>(floor)];
}

const std::vector<int>& FloorDiagram::out_edges(int floor) const {
  return out_.at(static_cast<std::size_t>(floor));
}

const std::vector<int>& FloorDiagram::in_edges(int floor) const {
  return in_.at(static_cast<std::size_t>(floor));
}

std::vector<int> FloorDiagram::sink_edges(int floor) const {
  std::vector<int> r;
  for (int id : out_edges(floor))
    if (edges_[static_cast<std::size_t>(id)].to_sink) r.push_back(id);
  return r;
}

int FloorDiagram::sink_edge(int sink) const {
  for (int id = 0; id < edge_count(); ++id) {
    const Edge& e = edges_[static_cast<std::size_t>(id)];
    if (e.to_sink && e.head == sink) return id;
  }
  return -1;
}

int divergence(const FloorDiagram& d, int floor) { return d.divergence(floor); }

bool is_connected(const FloorDiagram& d) {
  const int floors = d.floor_count();
  const int vertices = floors + d.sink_count();
  if (vertices == 0) return true;
  // Sinks are numbered after floors.
  std::vector<int> parent(static_cast<std::size_t>(vertices));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  int components = vertices;
  for (const Edge& e : d.edges()) {
    int a = find(e.tail);
    int b = find(e.to_sink ? floors + e.head : e.head);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --components;
    }
  }
  return components == 1;
}

bool is_acyclic(const FloorDiagram& d) {
  // Kahn's algorithm on floors; sink edges cannot close a cycle.
  std::vector<int> indegree(static_cast<std::size_t>(d.floor_count()), 0);
  for (const Edge& e : d.edges())
    if (!e.to_sink) ++indegree[static_cast<std::size_t>(e.head)];
  std::vector<int> ready;
  for (int v = 0; v < d.floor_count(); ++v)
    if (indegree[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  int seen = 0;
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    ++seen;
    for (int id : d.out_edges(v)) {
      const Edge& e = d.edge(id);
      if (!e.to_sink && --indegree[static_cast<std::size_t>(e.head)] == 0) ready.push_back(e.head);
    }
  }
  return seen == d.floor_count();
}

int first_betti(const FloorDiagram& d) {
  if (!is_connected(d)) throw std::invalid_argument("first_betti: diagram is disconnected");
  return d.edge_count() - (d.floor_count() + d.sink_count()) + 1;
}

ValidationReport validate(const FloorDiagram& d, int degree, int genus) {
  ValidationReport report;
  auto fail = [&](std::string s) { report.violations.push_back(std::move(s)); };

  if (d.floor_count() == 0) fail("no floors");
  const bool connected = is_connected(d);
  if (!connected) fail("connected");
  if (!is_acyclic(d)) fail("acyclic");

  for (int v = 0; v < d.floor_count(); ++v)
    if (d.divergence(v) <= 0) fail("div(v)>0 at floor " + std::to_string(v));

  std::vector<int> incoming(static_cast<std::size_t>(d.sink_count()), 0);
  for (int id = 0; id < d.edge_count(); ++id) {
    const Edge& e = d.edge(id);
    if (e.weight < 1 || e.weight > std::max(degree, 1))
      fail("1<=w(e)<=d at edge " + std::to_string(id));
    if (e.to_sink) {
      ++incoming[static_cast<std::size_t>(e.head)];
      if (e.weight != 1) fail("div(sink)=-1 at sink " + std::to_string(e.head));
    }
  }
  for (int s = 0; s < d.sink_count(); ++s)
    if (incoming[static_cast<std::size_t>(s)] != 1) fail("div(sink)=-1 at sink " + std::to_string(s));

  if (d.sink_count() != degree)
    fail("#sinks=d (" + std::to_string(d.sink_count()) + " != " + std::to_string(degree) + ")");

  int flow = 0;
  for (int v = 0; v < d.floor_count(); ++v) flow += d.divergence(v);
  if (flow != d.sink_count()) fail("sum div(v) = #sinks");

  if (connected) {
    const int b1 = first_betti(d);
    if (b1 != genus) fail("b1=g (" + std::to_string(b1) + " != " + std::to_string(genus) + ")");
  }
  return report;
}

std::string to_string(const DiagramPoint& p) {
  std::ostringstream os;
  if (p.is_floor())
    os << "floor:" << p.id;
  else
    os << "edge:" << p.id << ":slot:" << p.slot;
  return os.str();
}

PointOrder::PointOrder(const FloorDiagram& d)
    : edges_(d.edges()),
      floors_(d.floor_count()),
      reach_(static_cast<std::size_t>(floors_ * floors_), 0) {
  auto at = [this](int a, int b) -> char& {
    return reach_[static_cast<std::size_t>(a * floors_ + b)];
  };
  for (const Edge& e : edges_)
    if (!e.to_sink) at(e.tail, e.head) = 1;
  // Floyd-Warshall closure; floor counts are tiny.
  for (int k = 0; k < floors_; ++k)
    for (int i = 0; i < floors_; ++i)
      if (at(i, k))
        for (int j = 0; j < floors_; ++j)
          if (at(k, j)) at(i, j) = 1;
}

bool PointOrder::reaches(int from, int to) const {
  return reach_[static_cast<std::size_t>(from * floors_ + to)] != 0;
}

void PointOrder::check(const DiagramPoint& p) const {
  if (p.is_floor()) {
    if (p.id < 0 || p.id >= floors_) throw std::out_of_range("invalid point " + to_string(p));
  } else if (p.id < 0 || p.id >= static_cast<int>(edges_.size()) || p.slot < 0) {
    throw std::out_of_range("invalid point " + to_string(p));
  }
}

bool PointOrder::precedes(const DiagramPoint& p, const DiagramPoint& q) const {
  check(p);
  check(q);
  // A floor is at or below another floor.
  auto upto = [this](int a, int b) { return a == b || reaches(a, b); };
  if (p.is_floor() && q.is_floor()) return reaches(p.id, q.id);
  if (p.is_floor()) return upto(p.id, edges_[static_cast<std::size_t>(q.id)].tail);
  const Edge& ep = edges_[static_cast<std::size_t>(p.id)];
  if (!q.is_floor() && q.id == p.id) return p.slot < q.slot;
  if (ep.to_sink) return false;
  if (q.is_floor()) return upto(ep.head, q.id);
  return upto(ep.head, edges_[static_cast<std::size_t>(q.id)].tail);
}

bool precedes(const FloorDiagram& d, const DiagramPoint& p, const DiagramPoint& q) {
  return PointOrder(d).precedes(p, q);
}

}  // namespace floorcount
