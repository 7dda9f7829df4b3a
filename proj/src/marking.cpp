#include "floorcount/marking.hpp"

#include <algorithm>
#include <map>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "floorcount/diagram_io.hpp"
#include "floorcount/errors.hpp"

namespace floorcount {

bool ConstraintSpec::points_only() const {
  return std::all_of(l.begin() + (l.empty() ? 0 : 1), l.end(), [](int x) { return x == 0; });
}

bool dimension_condition_holds(int n, int degree, int genus, std::span<const int> l) {
  long lhs = 0;
  for (std::size_t j = 0; j < l.size(); ++j) lhs += static_cast<long>(l[j]) * (n - 1 - static_cast<long>(j));
  return lhs == static_cast<long>(n + 1) * degree + static_cast<long>(n - 3) * (1 - genus);
}

ConstraintSpec build_constraints(int n, int degree, int genus, std::vector<int> l) {
  if (n < 2) throw UnsupportedDimension("ambient dimension must be >= 2");
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  if (genus < 0) throw std::invalid_argument("genus must be >= 0");
  if (static_cast<int>(l.size()) != n - 1)
    throw std::invalid_argument("expected " + std::to_string(n - 1) + " constraint counts l_0..l_{n-2}");
  if (std::any_of(l.begin(), l.end(), [](int x) { return x < 0; }))
    throw std::invalid_argument("constraint counts must be nonnegative");
  if (genus > 0 && n > 2) throw UnsupportedGenus("positive genus is only supported for n = 2");
  if (!dimension_condition_holds(n, degree, genus, l)) {
    long lhs = 0;
    for (std::size_t j = 0; j < l.size(); ++j) lhs += static_cast<long>(l[j]) * (n - 1 - static_cast<long>(j));
    throw DimensionMismatch("dimension condition sum_j l_j(n-1-j) = (n+1)d + (n-3)(1-g) fails: " +
                            std::to_string(lhs) + " != " +
                            std::to_string((n + 1) * degree + (n - 3) * (1 - genus)));
  }
  ConstraintSpec s;
  s.n = n;
  s.degree = degree;
  s.genus = genus;
  s.l = std::move(l);
  for (std::size_t j = 0; j < s.l.size(); ++j)
    for (int k = 1; k <= s.l[j]; ++k) s.constraints.push_back({static_cast<int>(j), k});
  return s;
}

MarkingReport check_marking(const MarkedDiagram& m) {
  MarkingReport report;
  auto fail = [&](std::string s) { report.violations.push_back(std::move(s)); };
  const FloorDiagram& d = m.diagram;
  const int size = m.spec.size();
  if (static_cast<int>(m.assignment.size()) != size) {
    fail("assignment size does not match the constraint list");
    return report;
  }
  for (const DiagramPoint& p : m.assignment) {
    const bool valid = p.is_floor() ? (p.id >= 0 && p.id < d.floor_count())
                                    : (p.id >= 0 && p.id < d.edge_count() && p.slot >= 0);
    if (!valid) {
      fail("invalid point " + to_string(p));
      return report;
    }
  }

  std::vector<std::vector<int>> slots(static_cast<std::size_t>(d.edge_count()));
  for (const DiagramPoint& p : m.assignment)
    if (!p.is_floor()) slots[static_cast<std::size_t>(p.id)].push_back(p.slot);
  for (int e = 0; e < d.edge_count(); ++e) {
    auto s = slots[static_cast<std::size_t>(e)];
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] != static_cast<int>(i)) {
        fail("slots on edge " + std::to_string(e) + " are not 0..k-1");
        break;
      }
  }

  for (int q = 0; q < size; ++q)
    for (int q2 = q + 1; q2 < size; ++q2)
      if (m.assignment[static_cast<std::size_t>(q)] == m.assignment[static_cast<std::size_t>(q2)] &&
          !(m.assignment[static_cast<std::size_t>(q)].is_floor() && m.spec.dim(q) > 0))
        fail("C1: constraints " + std::to_string(q) + " and " + std::to_string(q2) + " share a point");

  std::vector<char> hit(static_cast<std::size_t>(d.floor_count()), 0);
  for (const DiagramPoint& p : m.assignment)
    if (p.is_floor()) hit[static_cast<std::size_t>(p.id)] = 1;
  for (int v = 0; v < d.floor_count(); ++v)
    if (!hit[static_cast<std::size_t>(v)]) fail("C2: floor " + std::to_string(v) + " is unmarked");

  const PointOrder order(d);
  for (int q = 0; q < size; ++q)
    for (int q2 = q + 1; q2 < size; ++q2) {
      const DiagramPoint& a = m.assignment[static_cast<std::size_t>(q)];
      const DiagramPoint& b = m.assignment[static_cast<std::size_t>(q2)];
      if (!order.precedes(b, a)) continue;
      bool rescued = false;
      for (int q3 = q2 + 1; q3 < size && !rescued; ++q3) rescued = m.assignment[static_cast<std::size_t>(q3)] == a;
      if (!rescued)
        fail("C3: constraint " + std::to_string(q2) + " precedes constraint " + std::to_string(q) +
             " with no later constraint at " + to_string(a));
    }
  return report;
}

MarkingShape shape_of(const MarkedDiagram& m) {
  MarkingShape s;
  s.floor_dims.resize(static_cast<std::size_t>(m.diagram.floor_count()));
  s.edge_dims.resize(static_cast<std::size_t>(m.diagram.edge_count()));
  for (int r = 0; r < m.spec.size(); ++r) {
    const DiagramPoint& p = m.assignment[static_cast<std::size_t>(r)];
    auto& bucket = p.is_floor() ? s.floor_dims : s.edge_dims;
    bucket.at(static_cast<std::size_t>(p.id)).push_back(m.spec.dim(r));
  }
  for (auto& v : s.floor_dims) std::sort(v.begin(), v.end());
  for (auto& v : s.edge_dims) std::sort(v.begin(), v.end());
  return s;
}

MarkingEnumerator::MarkingEnumerator(const FloorDiagram& d, const ConstraintSpec& spec)
    : diagram_(d), spec_(spec), cosets_(floor_automorphisms(d)) {
  for (int v = 0; v < d.floor_count(); ++v) sink_groups_.push_back(d.sink_edges(v));
}

namespace {

// Sorts the entries of each sink group (ids ascending) in place.
template <typename T, typename Less>
void sort_sink_groups(std::vector<T>& edge_entries, const std::vector<std::vector<int>>& groups, Less less) {
  std::vector<T> tmp;
  for (const auto& g : groups) {
    if (g.size() < 2) continue;
    tmp.clear();
    for (int e : g) tmp.push_back(edge_entries[static_cast<std::size_t>(e)]);
    std::sort(tmp.begin(), tmp.end(), less);
    for (std::size_t i = 0; i < g.size(); ++i) edge_entries[static_cast<std::size_t>(g[i])] = tmp[i];
  }
}

bool is_identity(const Automorphism& a) {
  for (std::size_t i = 0; i < a.floor_map.size(); ++i)
    if (a.floor_map[i] != static_cast<int>(i)) return false;
  for (std::size_t i = 0; i < a.edge_map.size(); ++i)
    if (a.edge_map[i] != static_cast<int>(i)) return false;
  return true;
}

}  // namespace

std::vector<MarkingShape> MarkingEnumerator::shapes(const MarkingOptions& options) const {
  const int floors = diagram_.floor_count();
  const int edges = diagram_.edge_count();
  const int n = spec_.n;
  const int dims = n - 1;

  std::vector<int> prev_sink(static_cast<std::size_t>(edges), -1);
  std::vector<int> sinks_after(static_cast<std::size_t>(edges + 1), 0);
  for (const auto& g : sink_groups_)
    for (std::size_t i = 1; i < g.size(); ++i) prev_sink[static_cast<std::size_t>(g[i])] = g[i - 1];
  for (int e = edges - 1; e >= 0; --e)
    sinks_after[static_cast<std::size_t>(e)] = sinks_after[static_cast<std::size_t>(e + 1)] + (diagram_.edge(e).to_sink ? 1 : 0);

  std::vector<MarkingShape> out;
  MarkingShape cur;
  cur.floor_dims.resize(static_cast<std::size_t>(floors));
  cur.edge_dims.resize(static_cast<std::size_t>(edges));
  std::vector<int> rem = spec_.l;

  auto remaining_total = [&] { return std::accumulate(rem.begin(), rem.end(), 0); };
  auto remaining_cost = [&] {
    int c = 0;
    for (int j = 0; j < dims; ++j) c += rem[static_cast<std::size_t>(j)] * (n - 1 - j);
    return c;
  };

  std::function<void(int)> point;
  std::function<void(int, int, std::vector<int>&)> fill;

  // Chooses how many constraints of dimension >= j go to point p.
  fill = [&](int p, int j, std::vector<int>& here) {
    if (j == dims) {
      const int total = static_cast<int>(here.size());
      if (p < floors) {
        if (total == 0) return;
        if (total >= 2 && here.front() == 0) return;
        cur.floor_dims[static_cast<std::size_t>(p)] = here;
      } else {
        const int e = p - floors;
        if (options.nondegenerate_bounds) {
          int cost = 0;
          for (int x : here) cost += n - 1 - x;
          if (cost > n - 1) return;
          if (diagram_.edge(e).to_sink && total == 0) return;
        }
        const int prev = prev_sink[static_cast<std::size_t>(e)];
        if (prev >= 0 && here < cur.edge_dims[static_cast<std::size_t>(prev)]) return;
        cur.edge_dims[static_cast<std::size_t>(e)] = here;
      }
      point(p + 1);
      return;
    }
    const int avail = rem[static_cast<std::size_t>(j)];
    for (int c = 0; c <= avail; ++c) {
      rem[static_cast<std::size_t>(j)] -= c;
      here.insert(here.end(), static_cast<std::size_t>(c), j);
      fill(p, j + 1, here);
      here.resize(here.size() - static_cast<std::size_t>(c));
      rem[static_cast<std::size_t>(j)] += c;
    }
  };

  point = [&](int p) {
    if (p == floors + edges) {
      if (remaining_total() == 0 && (!options.accept || options.accept(cur))) out.push_back(cur);
      return;
    }
    if (p < floors) {
      if (remaining_total() < floors - p) return;
    } else {
      const int e = p - floors;
      if (options.nondegenerate_bounds) {
        if (remaining_total() < sinks_after[static_cast<std::size_t>(e)]) return;
        if (remaining_cost() > (n - 1) * (edges - e)) return;
      }
    }
    std::vector<int> here;
    fill(p, 0, here);
  };

  point(0);
  return out;
}

class MarkingEnumerator::Search {
 public:
  using Visitor = std::function<void(const std::vector<DiagramPoint>&)>;

  Search(const MarkingEnumerator& owner, const MarkingShape& shape, const Visitor& visit)
      : owner_(owner), d_(owner.diagram_), shape_(shape), visit_(visit) {
    const int dims = owner.spec_.n - 1;
    const auto floors = static_cast<std::size_t>(d_.floor_count());
    const auto edges = static_cast<std::size_t>(d_.edge_count());
    marked_.assign(floors, 0);
    max_dim_.assign(floors, -1);
    floor_rem_.assign(floors, std::vector<int>(static_cast<std::size_t>(dims), 0));
    edge_rem_.assign(edges, std::vector<int>(static_cast<std::size_t>(dims), 0));
    floor_labels_.resize(floors);
    edge_labels_.resize(edges);
    for (std::size_t v = 0; v < floors; ++v) {
      const auto& fd = shape.floor_dims[v];
      if (fd.empty()) throw ContractViolation("shape leaves a floor unmarked");
      max_dim_[v] = fd.back();
      for (std::size_t i = 0; i + 1 < fd.size(); ++i) ++floor_rem_[v][static_cast<std::size_t>(fd[i])];
    }
    for (std::size_t e = 0; e < edges; ++e)
      for (int x : shape.edge_dims[e]) ++edge_rem_[e][static_cast<std::size_t>(x)];
    // Sink edges of a common floor with equal dimension lists must carry
    // ascending maxima; record the later twins of each.
    twins_after_.resize(edges);
    for (const auto& g : owner.sink_groups_)
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t k = i + 1; k < g.size(); ++k)
          if (shape.edge_dims[static_cast<std::size_t>(g[i])] == shape.edge_dims[static_cast<std::size_t>(g[k])])
            twins_after_[static_cast<std::size_t>(g[i])].push_back(g[k]);
    for (const auto& a : owner.cosets_)
      if (!is_identity(a)) cosets_.push_back(&a);
  }

  std::size_t run() {
    place(owner_.spec_.size() - 1);
    return found_;
  }

 private:
  bool complete(int e) const {
    const auto& r = edge_rem_[static_cast<std::size_t>(e)];
    return std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
  }

  bool can_top(int v) const {
    for (int e : d_.out_edges(v)) {
      if (!complete(e)) return false;
      const Edge& ed = d_.edge(e);
      if (edge_labels_[static_cast<std::size_t>(e)].empty() && !ed.to_sink && !marked_[static_cast<std::size_t>(ed.head)])
        return false;
    }
    return true;
  }

  bool can_slot(int e, int dim) const {
    const auto i = static_cast<std::size_t>(e);
    if (edge_rem_[i][static_cast<std::size_t>(dim)] == 0) return false;
    const Edge& ed = d_.edge(e);
    if (marked_[static_cast<std::size_t>(ed.tail)]) return false;
    if (edge_labels_[i].empty()) {
      if (!ed.to_sink && !marked_[static_cast<std::size_t>(ed.head)]) return false;
      for (int t : twins_after_[i])
        if (edge_labels_[static_cast<std::size_t>(t)].empty()) return false;
    }
    return true;
  }

  void place(int r) {
    if (r < 0) {
      leaf();
      return;
    }
    const int dim = owner_.spec_.dim(r);
    const auto j = static_cast<std::size_t>(dim);
    for (int v = 0; v < d_.floor_count(); ++v) {
      const auto i = static_cast<std::size_t>(v);
      if (!marked_[i]) {
        if (max_dim_[i] != dim || !can_top(v)) continue;
        marked_[i] = 1;
        floor_labels_[i].push_back(r);
        place(r - 1);
        floor_labels_[i].pop_back();
        marked_[i] = 0;
      } else if (floor_rem_[i][j] > 0) {
        --floor_rem_[i][j];
        floor_labels_[i].push_back(r);
        place(r - 1);
        floor_labels_[i].pop_back();
        ++floor_rem_[i][j];
      }
    }
    for (int e = 0; e < d_.edge_count(); ++e) {
      if (!can_slot(e, dim)) continue;
      const auto i = static_cast<std::size_t>(e);
      --edge_rem_[i][j];
      edge_labels_[i].push_back(r);
      place(r - 1);
      edge_labels_[i].pop_back();
      ++edge_rem_[i][j];
    }
  }

  // (dimension list, labels in descending order) of one point.
  struct Entry {
    const std::vector<int>* dims;
    const std::vector<int>* labels;
  };
  static bool less(const Entry& a, const Entry& b) {
    if (*a.dims != *b.dims) return *a.dims < *b.dims;
    return *a.labels < *b.labels;
  }

  bool orbit_minimal() const {
    const auto floors = static_cast<std::size_t>(d_.floor_count());
    const auto edges = static_cast<std::size_t>(d_.edge_count());
    std::vector<Entry> mine;
    for (std::size_t v = 0; v < floors; ++v) mine.push_back({&shape_.floor_dims[v], &floor_labels_[v]});
    for (std::size_t e = 0; e < edges; ++e) mine.push_back({&shape_.edge_dims[e], &edge_labels_[e]});
    std::vector<Entry> img(mine.size());
    std::vector<Entry> img_edges(edges);
    for (const Automorphism* a : cosets_) {
      for (std::size_t v = 0; v < floors; ++v) img[static_cast<std::size_t>(a->floor_map[v])] = mine[v];
      for (std::size_t e = 0; e < edges; ++e) img_edges[static_cast<std::size_t>(a->edge_map[e])] = mine[floors + e];
      sort_sink_groups(img_edges, owner_.sink_groups_, less);
      std::copy(img_edges.begin(), img_edges.end(), img.begin() + static_cast<std::ptrdiff_t>(floors));
      for (std::size_t k = 0; k < img.size(); ++k) {
        if (less(img[k], mine[k])) return false;
        if (less(mine[k], img[k])) break;
      }
    }
    return true;
  }

  void leaf() {
    if (!orbit_minimal()) return;
    ++found_;
    if (!visit_) return;
    std::vector<DiagramPoint> assignment(static_cast<std::size_t>(owner_.spec_.size()));
    for (int v = 0; v < d_.floor_count(); ++v)
      for (int r : floor_labels_[static_cast<std::size_t>(v)])
        assignment[static_cast<std::size_t>(r)] = DiagramPoint::on_floor(v);
    for (int e = 0; e < d_.edge_count(); ++e) {
      const auto& labels = edge_labels_[static_cast<std::size_t>(e)];
      const int k = static_cast<int>(labels.size());
      for (int i = 0; i < k; ++i)
        assignment[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] = DiagramPoint::on_edge(e, k - 1 - i);
    }
    visit_(assignment);
  }

  const MarkingEnumerator& owner_;
  const FloorDiagram& d_;
  const MarkingShape& shape_;
  const Visitor& visit_;
  std::vector<char> marked_;
  std::vector<int> max_dim_;
  std::vector<std::vector<int>> floor_rem_;
  std::vector<std::vector<int>> edge_rem_;
  std::vector<std::vector<int>> floor_labels_;  // descending
  std::vector<std::vector<int>> edge_labels_;   // descending
  std::vector<std::vector<int>> twins_after_;
  std::vector<const Automorphism*> cosets_;
  std::size_t found_ = 0;
};

std::size_t MarkingEnumerator::for_each(const MarkingShape& shape,
                                        const std::function<void(const std::vector<DiagramPoint>&)>& visit) const {
  return Search(*this, shape, visit).run();
}

std::size_t MarkingEnumerator::count(const MarkingShape& shape) const {
  const std::function<void(const std::vector<DiagramPoint>&)> none;
  return Search(*this, shape, none).run();
}

MarkingShape MarkingEnumerator::canonical_shape(const MarkingShape& shape) const {
  MarkingShape best;
  bool first = true;
  for (const Automorphism& a : cosets_) {
    MarkingShape img;
    img.floor_dims.resize(shape.floor_dims.size());
    img.edge_dims.resize(shape.edge_dims.size());
    for (std::size_t v = 0; v < shape.floor_dims.size(); ++v)
      img.floor_dims[static_cast<std::size_t>(a.floor_map[v])] = shape.floor_dims[v];
    for (std::size_t e = 0; e < shape.edge_dims.size(); ++e)
      img.edge_dims[static_cast<std::size_t>(a.edge_map[e])] = shape.edge_dims[e];
    sort_sink_groups(img.edge_dims, sink_groups_, std::less<>());
    if (first || img < best) best = std::move(img);
    first = false;
  }
  return best;
}

std::vector<MarkedDiagram> enumerate_markings(const FloorDiagram& d, const ConstraintSpec& spec,
                                              const MarkingOptions& options) {
  const MarkingEnumerator en(d, spec);
  std::vector<MarkedDiagram> out;
  for (const MarkingShape& s : en.shapes(options))
    en.for_each(s, [&](const std::vector<DiagramPoint>& a) { out.push_back({d, spec, a}); });
  return out;
}

std::vector<TypeCount> count_marked_by_type(const FloorDiagram& d, const ConstraintSpec& spec,
                                            const MarkingOptions& options) {
  const MarkingEnumerator en(d, spec);
  std::map<MarkingShape, TypeCount> types;
  for (const MarkingShape& s : en.shapes(options)) {
    MarkingShape key = en.canonical_shape(s);
    en.for_each(s, [&](const std::vector<DiagramPoint>& a) {
      auto [it, fresh] = types.try_emplace(key);
      if (fresh) {
        it->second.representative = {d, spec, a};
        it->second.shape = key;
      }
      ++it->second.count;
    });
  }
  std::vector<TypeCount> out;
  for (auto& [k, t] : types) out.push_back(std::move(t));
  return out;
}

void write_text(std::ostream& os, const MarkedDiagram& m) {
  write_text(os, m.diagram);
  for (int r = 0; r < m.spec.size(); ++r) {
    const Constraint& c = m.spec.constraints[static_cast<std::size_t>(r)];
    os << "mark dim=" << c.dim << " idx=" << c.index << " at=" << to_string(m.assignment[static_cast<std::size_t>(r)])
       << '\n';
  }
}

std::string to_text(const MarkedDiagram& m) {
  std::ostringstream os;
  write_text(os, m);
  return os.str();
}

namespace {

DiagramPoint parse_point(const std::string& s) {
  int a = 0, b = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "floor:%d%c", &a, &tail) == 1) return DiagramPoint::on_floor(a);
  if (std::sscanf(s.c_str(), "edge:%d:slot:%d%c", &a, &b, &tail) == 2) return DiagramPoint::on_edge(a, b);
  throw ParseError("malformed point '" + s + "'");
}

}  // namespace

std::vector<MarkedDiagram> read_marked_diagrams(std::istream& is, int n) {
  std::vector<MarkedDiagram> out;
  DiagramReader reader(is);
  while (auto rec = reader.next()) {
    std::vector<int> l(static_cast<std::size_t>(std::max(n - 1, 0)), 0);
    std::vector<DiagramPoint> assignment;
    int last_dim = 0;
    for (const std::string& line : rec->mark_lines) {
      int dim = 0, idx = 0;
      char at[64] = {0};
      if (std::sscanf(line.c_str(), "mark dim=%d idx=%d at=%63s", &dim, &idx, at) != 3)
        throw ParseError("malformed mark line '" + line + "'");
      if (dim < 0 || dim > n - 2) throw ParseError("mark dimension out of range: '" + line + "'");
      if (dim < last_dim || idx != l[static_cast<std::size_t>(dim)] + 1)
        throw ParseError("mark lines are not in constraint order: '" + line + "'");
      last_dim = dim;
      ++l[static_cast<std::size_t>(dim)];
      assignment.push_back(parse_point(at));
    }
    ConstraintSpec spec = build_constraints(n, rec->degree, rec->genus, std::move(l));
    out.push_back({std::move(rec->diagram), std::move(spec), std::move(assignment)});
  }
  return out;
}

}  // namespace floorcount
