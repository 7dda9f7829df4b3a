#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace floorcount {

// Directed edge of a floor diagram. The tail is always a floor; the head is
// either a floor or a sink, depending on `to_sink`.
struct Edge {
  int tail = 0;
  int head = 0;
  bool to_sink = false;
  int weight = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/*
 A floor diagram: a connected, acyclic, weighted oriented multigraph whose
 non-sink vertices ("floors") all have positive divergence and whose sinks
 each absorb a single weight-1 edge.

 Floors are numbered 0..floor_count()-1 and sinks 0..sink_count()-1. Sinks
 carry no data of their own; they are identified by their unique incoming
 edge. Construction only rejects malformed references and self-loops; every
 other defining property is checked by validate().
*/
class FloorDiagram {
 public:
  FloorDiagram() = default;
  FloorDiagram(int floor_count, int sink_count, std::vector<Edge> edges);

  int floor_count() const { return static_cast<int>(divergence_.size()); }
  int sink_count() const { return sink_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }

  // Cached sum of outgoing minus incoming weights.
  int divergence(int floor) const;

  // Edge ids leaving / entering a floor, ascending.
  const std::vector<int>& out_edges(int floor) const;
  const std::vector<int>& in_edges(int floor) const;
  // Outgoing edges of `floor` that end in a sink, ascending.
  std::vector<int> sink_edges(int floor) const;
  // The edge entering sink `sink`, or -1 if none.
  int sink_edge(int sink) const;

  friend bool operator==(const FloorDiagram& a, const FloorDiagram& b) {
    return a.sink_count_ == b.sink_count_ && a.divergence_.size() == b.divergence_.size() &&
           a.edges_ == b.edges_;
  }

 private:
  int sink_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> divergence_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

int divergence(const FloorDiagram& d, int floor);

// #edges - #vertices + 1; throws std::invalid_argument on a disconnected diagram.
int first_betti(const FloorDiagram& d);

bool is_connected(const FloorDiagram& d);
bool is_acyclic(const FloorDiagram& d);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const FloorDiagram& d, int degree, int genus);

// A place where a constraint can be put: a floor, or a slot on an open edge.
// Slots on an edge are numbered from 0 following the edge orientation.
struct DiagramPoint {
  enum class Kind { floor, edge_slot };

  Kind kind = Kind::floor;
  int id = 0;
  int slot = 0;

  static DiagramPoint on_floor(int floor) { return {Kind::floor, floor, 0}; }
  static DiagramPoint on_edge(int edge, int slot) { return {Kind::edge_slot, edge, slot}; }

  bool is_floor() const { return kind == Kind::floor; }

  friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

std::string to_string(const DiagramPoint& p);

/*
 Strict partial order on the points of a diagram induced by its orientation:
 tail(e) < every slot of e < head(e), slots of one edge ordered by index, and
 the transitive closure of these relations. Sinks are not points.
*/
class PointOrder {
 public:
  explicit PointOrder(const FloorDiagram& d);

  // True iff there is a nonempty oriented path from floor `from` to floor `to`.
  bool reaches(int from, int to) const;
  bool precedes(const DiagramPoint& p, const DiagramPoint& q) const;

 private:
  void check(const DiagramPoint& p) const;

  std::vector<Edge> edges_;
  int floors_;
  std::vector<char> reach_;
};

bool precedes(const FloorDiagram& d, const DiagramPoint& p, const DiagramPoint& q);

}  // namespace floorcount
