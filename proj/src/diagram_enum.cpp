#include "floorcount/diagram_enum.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>

#include "floorcount/canonical.hpp"

namespace floorcount {

namespace {

using DiagramMap = std::map<std::string, FloorDiagram>;

// Non-increasing partitions of `total` into exactly `parts` positive parts.
void partitions(int total, int parts, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (int p = std::min(total - parts + 1, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(total - p, parts - 1, p, cur, out);
    cur.pop_back();
  }
}

struct Candidate {
  int head;
  int weight;
};

// Builds every labeled diagram whose floors 0..F-1 are in topological order
// and carry the given divergences.
class LabeledSearch {
 public:
  LabeledSearch(std::vector<int> div, int internal_edges, DiagramMap& out)
      : div_(std::move(div)), floors_(static_cast<int>(div_.size())), target_edges_(internal_edges), out_(out) {
    in_weight_.assign(div_.size(), 0);
    out_weight_.assign(div_.size(), 0);
  }

  void run() { vertex(0); }

 private:
  void vertex(int v) {
    const int left = target_edges_ - static_cast<int>(edges_.size());
    if (v == floors_ - 1) {
      if (left == 0) emit();
      return;
    }
    const int cap = div_[static_cast<std::size_t>(v)] + in_weight_[static_cast<std::size_t>(v)];
    std::vector<Candidate> cand;
    for (int t = v + 1; t < floors_; ++t)
      for (int w = 1; w <= cap; ++w) cand.push_back({t, w});
    choose(v, cand, 0, cap, left);
  }

  void choose(int v, const std::vector<Candidate>& cand, std::size_t start, int cap, int left) {
    vertex(v + 1);
    if (left == 0) return;
    for (std::size_t i = start; i < cand.size(); ++i) {
      const Candidate c = cand[i];
      if (c.weight > cap) continue;
      edges_.push_back({v, c.head, false, c.weight});
      in_weight_[static_cast<std::size_t>(c.head)] += c.weight;
      out_weight_[static_cast<std::size_t>(v)] += c.weight;
      choose(v, cand, i, cap - c.weight, left - 1);
      out_weight_[static_cast<std::size_t>(v)] -= c.weight;
      in_weight_[static_cast<std::size_t>(c.head)] -= c.weight;
      edges_.pop_back();
    }
  }

  void emit() {
    std::vector<Edge> edges = edges_;
    int sinks = 0;
    for (int v = 0; v < floors_; ++v) {
      const auto i = static_cast<std::size_t>(v);
      const int s = div_[i] + in_weight_[i] - out_weight_[i];
      if (s < 0) return;
      for (int k = 0; k < s; ++k) edges.push_back({v, sinks++, true, 1});
    }
    FloorDiagram d(floors_, sinks, std::move(edges));
    if (!is_connected(d)) return;
    FloorDiagram c = canonicalize(d);
    std::string key = canonical_form(c);
    out_.try_emplace(std::move(key), std::move(c));
  }

  std::vector<int> div_;
  int floors_;
  int target_edges_;
  DiagramMap& out_;
  std::vector<Edge> edges_;
  std::vector<int> in_weight_;
  std::vector<int> out_weight_;
};

}  // namespace

std::vector<FloorDiagram> enumerate_floor_diagrams(int degree, int genus, const EnumerationOptions& options) {
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  if (genus < 0) throw std::invalid_argument("genus must be >= 0");
  if (degree > options.max_degree)
    throw std::invalid_argument("degree " + std::to_string(degree) + " exceeds the configured cap " +
                                std::to_string(options.max_degree));

  // Work items: one divergence sequence in topological position order.
  std::vector<std::vector<int>> items;
  for (int floors = 1; floors <= degree; ++floors) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(degree, floors, degree, cur, parts);
    for (auto& p : parts) {
      std::sort(p.begin(), p.end());
      do items.push_back(p);
      while (std::next_permutation(p.begin(), p.end()));
    }
  }

  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(items.size())));
  std::vector<DiagramMap> found(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&](unsigned slot) {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      const int internal = static_cast<int>(items[i].size()) - 1 + genus;
      LabeledSearch(items[i], internal, found[slot]).run();
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }

  DiagramMap all;
  for (auto& m : found) all.merge(m);
  std::vector<FloorDiagram> result;
  result.reserve(all.size());
  for (auto& [key, d] : all) result.push_back(std::move(d));
  return result;
}

}  // namespace floorcount
