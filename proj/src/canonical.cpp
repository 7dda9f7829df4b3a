#include "floorcount/canonical.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace floorcount {

namespace {

struct WeightedLink {
  int other;
  int weight;
};

// Internal adjacency of a diagram, sinks folded into a per-floor count.
struct Skeleton {
  int floors = 0;
  std::vector<int> div;
  std::vector<int> sinks;
  std::vector<std::vector<WeightedLink>> out;
  std::vector<std::vector<WeightedLink>> in;
  // Sorted weight multiset of internal edges a -> b, indexed a * floors + b.
  std::vector<std::vector<int>> between;

  explicit Skeleton(const FloorDiagram& d) : floors(d.floor_count()) {
    const auto f = static_cast<std::size_t>(floors);
    div.resize(f);
    sinks.assign(f, 0);
    out.resize(f);
    in.resize(f);
    between.resize(f * f);
    for (int v = 0; v < floors; ++v) div[static_cast<std::size_t>(v)] = d.divergence(v);
    for (const Edge& e : d.edges()) {
      if (e.to_sink) {
        ++sinks[static_cast<std::size_t>(e.tail)];
        continue;
      }
      out[static_cast<std::size_t>(e.tail)].push_back({e.head, e.weight});
      in[static_cast<std::size_t>(e.head)].push_back({e.tail, e.weight});
      between[static_cast<std::size_t>(e.tail * floors + e.head)].push_back(e.weight);
    }
    for (auto& w : between) std::sort(w.begin(), w.end());
  }

  const std::vector<int>& weights(int a, int b) const {
    return between[static_cast<std::size_t>(a * floors + b)];
  }
};

using Coloring = std::vector<int>;

template <typename Sig>
Coloring rank(const std::vector<Sig>& sig) {
  std::vector<Sig> sorted = sig;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Coloring c(sig.size());
  for (std::size_t i = 0; i < sig.size(); ++i)
    c[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
  return c;
}

int class_count(const Coloring& c) {
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

Coloring initial_coloring(const Skeleton& s) {
  using Sig = std::tuple<int, int, std::vector<int>, std::vector<int>>;
  std::vector<Sig> sig;
  for (int v = 0; v < s.floors; ++v) {
    const auto i = static_cast<std::size_t>(v);
    std::vector<int> ow, iw;
    for (auto l : s.out[i]) ow.push_back(l.weight);
    for (auto l : s.in[i]) iw.push_back(l.weight);
    std::sort(ow.begin(), ow.end());
    std::sort(iw.begin(), iw.end());
    sig.emplace_back(s.div[i], s.sinks[i], std::move(ow), std::move(iw));
  }
  return rank(sig);
}

Coloring refine(const Skeleton& s, Coloring c) {
  using Pairs = std::vector<std::pair<int, int>>;
  using Sig = std::tuple<int, Pairs, Pairs>;
  for (;;) {
    std::vector<Sig> sig;
    for (int v = 0; v < s.floors; ++v) {
      const auto i = static_cast<std::size_t>(v);
      Pairs o, n;
      for (auto l : s.out[i]) o.emplace_back(c[static_cast<std::size_t>(l.other)], l.weight);
      for (auto l : s.in[i]) n.emplace_back(c[static_cast<std::size_t>(l.other)], l.weight);
      std::sort(o.begin(), o.end());
      std::sort(n.begin(), n.end());
      sig.emplace_back(c[i], std::move(o), std::move(n));
    }
    Coloring next = rank(sig);
    if (class_count(next) == class_count(c)) return next;
    c = std::move(next);
  }
}

std::vector<int> encode(const Skeleton& s, const Coloring& pos) {
  std::vector<int> order(static_cast<std::size_t>(s.floors));
  for (int v = 0; v < s.floors; ++v) order[static_cast<std::size_t>(pos[static_cast<std::size_t>(v)])] = v;
  std::vector<int> code;
  code.push_back(s.floors);
  for (int v : order) {
    code.push_back(s.div[static_cast<std::size_t>(v)]);
    code.push_back(s.sinks[static_cast<std::size_t>(v)]);
  }
  std::vector<std::tuple<int, int, int>> edges;
  for (int v = 0; v < s.floors; ++v)
    for (auto l : s.out[static_cast<std::size_t>(v)])
      edges.emplace_back(pos[static_cast<std::size_t>(v)], pos[static_cast<std::size_t>(l.other)], l.weight);
  std::sort(edges.begin(), edges.end());
  for (auto [a, b, w] : edges) {
    code.push_back(a);
    code.push_back(b);
    code.push_back(w);
  }
  return code;
}

void search(const Skeleton& s, const Coloring& c, std::vector<int>& best, Coloring& best_pos) {
  const int classes = class_count(c);
  if (classes == s.floors) {
    std::vector<int> code = encode(s, c);
    if (best.empty() || code < best) {
      best = std::move(code);
      best_pos = c;
    }
    return;
  }
  // First smallest non-singleton cell.
  std::vector<int> size(static_cast<std::size_t>(classes), 0);
  for (int x : c) ++size[static_cast<std::size_t>(x)];
  int cell = -1;
  for (int k = 0; k < classes; ++k)
    if (size[static_cast<std::size_t>(k)] > 1 &&
        (cell < 0 || size[static_cast<std::size_t>(k)] < size[static_cast<std::size_t>(cell)]))
      cell = k;
  for (int v = 0; v < s.floors; ++v) {
    if (c[static_cast<std::size_t>(v)] != cell) continue;
    std::vector<std::pair<int, int>> sig;
    for (int u = 0; u < s.floors; ++u) sig.emplace_back(c[static_cast<std::size_t>(u)], u == v ? 0 : 1);
    search(s, refine(s, rank(sig)), best, best_pos);
  }
}

std::string key_string(const std::vector<int>& code) {
  std::ostringstream os;
  const int floors = code[0];
  os << "F" << floors << "|";
  std::size_t i = 1;
  for (int v = 0; v < floors; ++v, i += 2) os << (v ? ";" : "") << code[i] << "," << code[i + 1];
  os << "|";
  for (bool first = true; i < code.size(); i += 3, first = false)
    os << (first ? "" : ",") << code[i] << ">" << code[i + 1] << ":" << code[i + 2];
  return os.str();
}

// Floor permutations preserving divergence, sink counts and all weight multisets.
void floor_maps(const Skeleton& s, const Coloring& c, std::vector<int>& image, std::vector<char>& used,
                int v, std::vector<std::vector<int>>& out) {
  if (v == s.floors) {
    out.push_back(image);
    return;
  }
  for (int u = 0; u < s.floors; ++u) {
    if (used[static_cast<std::size_t>(u)] || c[static_cast<std::size_t>(u)] != c[static_cast<std::size_t>(v)])
      continue;
    image[static_cast<std::size_t>(v)] = u;
    bool ok = s.weights(v, v) == s.weights(u, u);
    for (int x = 0; ok && x < v; ++x) {
      const int y = image[static_cast<std::size_t>(x)];
      ok = s.weights(x, v) == s.weights(y, u) && s.weights(v, x) == s.weights(u, y);
    }
    if (!ok) continue;
    used[static_cast<std::size_t>(u)] = 1;
    floor_maps(s, c, image, used, v + 1, out);
    used[static_cast<std::size_t>(u)] = 0;
  }
}

// All bijections between two equally sized groups of edge ids, combined over
// every group, appended to `maps`.
void expand_groups(const std::vector<std::pair<std::vector<int>, std::vector<int>>>& groups,
                   std::size_t k, std::vector<int>& edge_map, std::vector<std::vector<int>>& maps) {
  if (k == groups.size()) {
    maps.push_back(edge_map);
    return;
  }
  const auto& [from, to] = groups[k];
  std::vector<int> perm = to;
  std::sort(perm.begin(), perm.end());
  do {
    for (std::size_t i = 0; i < from.size(); ++i) edge_map[static_cast<std::size_t>(from[i])] = perm[i];
    expand_groups(groups, k + 1, edge_map, maps);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

std::vector<Automorphism> collect(const FloorDiagram& d, bool permute_sinks) {
  const Skeleton s(d);
  const Coloring c = refine(s, initial_coloring(s));
  std::vector<std::vector<int>> fmaps;
  std::vector<int> image(static_cast<std::size_t>(s.floors), -1);
  std::vector<char> used(static_cast<std::size_t>(s.floors), 0);
  floor_maps(s, c, image, used, 0, fmaps);

  // Parallel-edge classes: (tail, head, weight) for internal edges.
  std::map<std::tuple<int, int, int>, std::vector<int>> parallel;
  for (int id = 0; id < d.edge_count(); ++id) {
    const Edge& e = d.edge(id);
    if (!e.to_sink) parallel[{e.tail, e.head, e.weight}].push_back(id);
  }

  std::vector<Automorphism> result;
  for (const auto& fm : fmaps) {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;
    std::vector<int> edge_map(static_cast<std::size_t>(d.edge_count()), -1);
    for (const auto& [k, ids] : parallel) {
      auto [t, h, w] = k;
      groups.emplace_back(ids, parallel.at({fm[static_cast<std::size_t>(t)], fm[static_cast<std::size_t>(h)], w}));
    }
    for (int v = 0; v < d.floor_count(); ++v) {
      std::vector<int> from = d.sink_edges(v);
      std::vector<int> to = d.sink_edges(fm[static_cast<std::size_t>(v)]);
      if (permute_sinks) {
        groups.emplace_back(std::move(from), std::move(to));
      } else {
        for (std::size_t i = 0; i < from.size(); ++i) edge_map[static_cast<std::size_t>(from[i])] = to[i];
      }
    }
    std::vector<std::vector<int>> maps;
    expand_groups(groups, 0, edge_map, maps);
    for (auto& em : maps) result.push_back({fm, std::move(em)});
  }
  return result;
}

}  // namespace

CanonicalLabeling canonical_labeling(const FloorDiagram& d) {
  const Skeleton s(d);
  std::vector<int> best;
  Coloring pos;
  if (s.floors == 0) return {"F0||", {}};
  search(s, refine(s, initial_coloring(s)), best, pos);
  CanonicalLabeling r;
  r.key = key_string(best);
  r.order.resize(static_cast<std::size_t>(s.floors));
  for (int v = 0; v < s.floors; ++v) r.order[static_cast<std::size_t>(pos[static_cast<std::size_t>(v)])] = v;
  return r;
}

std::string canonical_form(const FloorDiagram& d) { return canonical_labeling(d).key; }

FloorDiagram canonicalize(const FloorDiagram& d) {
  const CanonicalLabeling lab = canonical_labeling(d);
  std::vector<int> pos(lab.order.size());
  for (std::size_t k = 0; k < lab.order.size(); ++k) pos[static_cast<std::size_t>(lab.order[k])] = static_cast<int>(k);
  std::vector<Edge> internal, sinks;
  for (const Edge& e : d.edges()) {
    if (e.to_sink)
      sinks.push_back({pos[static_cast<std::size_t>(e.tail)], 0, true, e.weight});
    else
      internal.push_back({pos[static_cast<std::size_t>(e.tail)], pos[static_cast<std::size_t>(e.head)], false, e.weight});
  }
  std::sort(internal.begin(), internal.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.tail, a.head, a.weight) < std::tie(b.tail, b.head, b.weight); });
  std::stable_sort(sinks.begin(), sinks.end(), [](const Edge& a, const Edge& b) { return a.tail < b.tail; });
  for (std::size_t k = 0; k < sinks.size(); ++k) sinks[k].head = static_cast<int>(k);
  internal.insert(internal.end(), sinks.begin(), sinks.end());
  return FloorDiagram(d.floor_count(), d.sink_count(), std::move(internal));
}

std::vector<Automorphism> automorphisms(const FloorDiagram& d) { return collect(d, true); }

std::vector<Automorphism> floor_automorphisms(const FloorDiagram& d) { return collect(d, false); }

std::uint64_t automorphism_count(const FloorDiagram& d) {
  std::uint64_t n = floor_automorphisms(d).size();
  for (int v = 0; v < d.floor_count(); ++v)
    for (std::uint64_t k = 2; k <= d.sink_edges(v).size(); ++k) n *= k;
  return n;
}

}  // namespace floorcount
