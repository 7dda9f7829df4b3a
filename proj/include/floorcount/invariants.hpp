#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "floorcount/bigint.hpp"
#include "floorcount/floor_diagram.hpp"
#include "floorcount/multiplicity.hpp"

namespace floorcount {

struct InvariantKey {
  enum class Kind { gromov_witten, welschinger };

  Kind kind = Kind::gromov_witten;
  int n = 2;
  int degree = 1;
  int genus = 0;
  std::vector<int> l;  // empty for Welschinger keys

  static InvariantKey gw(int n, int degree, int genus, std::span<const int> l);
  static InvariantKey w(int n, int degree);

  // "GW:n=3:d=5:g=0:l=10,0" or "W:n=3:d=5".
  std::string serialize() const;
  static InvariantKey parse(const std::string& text);

  friend auto operator<=>(const InvariantKey&, const InvariantKey&) = default;
};

// Thread-safe map from serialized keys to values. Inserting a key twice with
// the same value is a no-op; with a different value it is a ContractViolation.
class InvariantCache {
 public:
  InvariantCache() = default;
  InvariantCache(const InvariantCache& other);
  InvariantCache& operator=(const InvariantCache& other);

  std::optional<BigInt> find(const InvariantKey& key) const;
  void insert(const InvariantKey& key, const BigInt& value);
  std::size_t size() const;
  std::map<std::string, BigInt> entries() const;

  friend bool operator==(const InvariantCache& a, const InvariantCache& b) { return a.entries() == b.entries(); }

 private:
  mutable std::mutex mutex_;
  std::map<std::string, BigInt> entries_;
};

/*
 File format:
   floorcount-cache v1
   <key> <decimal>        (one per entry, sorted by key)
   crc32 <8 hex digits>   (CRC-32 of every preceding byte)
 Loading throws ChecksumError when the trailer is missing or does not match,
 std::runtime_error on I/O failure and ParseError on malformed lines.
*/
InvariantCache cache_load(const std::string& path);
void cache_store(const InvariantCache& cache, const std::string& path);

struct EngineOptions {
  unsigned jobs = 1;
  int max_degree = 10;
};

// Called for every query with the nesting depth (0 for a top-level call).
using QueryObserver = std::function<void(const InvariantKey& key, int depth)>;

/*
 Computes N^(n)_{d,g}(l) as the sum of complex multiplicities over classes
 of marked floor diagrams, and W^(n)_d for n in {2, 3} as the signed sum of
 real multiplicities. Multiplicities need invariants one dimension down; the
 engine answers those queries itself, so a call at dimension n recurses down
 to dimension 2. Results are memoized in the cache.

 A top-level query spreads its diagrams over `jobs` threads; nested queries
 run on the calling thread.
*/
class InvariantEngine : public InvariantOracle {
 public:
  explicit InvariantEngine(EngineOptions options = {},
                           std::shared_ptr<InvariantCache> cache = std::make_shared<InvariantCache>());

  BigInt gromov_witten(int n, int degree, int genus, std::span<const int> l) override;
  BigInt welschinger(int n, int degree) override;

  const std::shared_ptr<InvariantCache>& cache() const { return cache_; }
  const EngineOptions& options() const { return options_; }
  void set_observer(QueryObserver observer) { observer_ = std::move(observer); }

  // All diagrams of a degree and genus, computed once per engine.
  const std::vector<FloorDiagram>& diagrams(int degree, int genus);

 private:
  template <typename PerDiagram>
  BigInt sum_over_diagrams(int degree, int genus, PerDiagram&& term);

  EngineOptions options_;
  std::shared_ptr<InvariantCache> cache_;
  QueryObserver observer_;
  std::mutex diagrams_mutex_;
  std::map<std::pair<int, int>, std::unique_ptr<std::vector<FloorDiagram>>> diagrams_;
};

// (-1)^{n(d-1)(d-2)/2}
int welschinger_sign(int n, int degree);
// The number of points for W^(n)_d: ((n+1)d + n-3) / (n-1). ContractViolation
// when this is not an integer.
int welschinger_point_count(int n, int degree);

// Sum of complex multiplicities over the marked classes of one diagram.
BigInt diagram_gromov_witten(const FloorDiagram& d, const ConstraintSpec& spec, InvariantOracle& oracle);
// Sum of real multiplicities over the marked classes of one genus-0 diagram
// with point constraints (unsigned).
BigInt diagram_welschinger(const FloorDiagram& d, const ConstraintSpec& spec, InvariantOracle& oracle);

}  // namespace floorcount
