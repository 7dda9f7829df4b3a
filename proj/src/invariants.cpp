#include "floorcount/invariants.hpp"

#include <atomic>
#include <boost/crc.hpp>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "floorcount/diagram_enum.hpp"
#include "floorcount/errors.hpp"
#include "floorcount/marking.hpp"

namespace floorcount {

InvariantKey InvariantKey::gw(int n, int degree, int genus, std::span<const int> l) {
  return {Kind::gromov_witten, n, degree, genus, std::vector<int>(l.begin(), l.end())};
}

InvariantKey InvariantKey::w(int n, int degree) { return {Kind::welschinger, n, degree, 0, {}}; }

std::string InvariantKey::serialize() const {
  std::string s = kind == Kind::gromov_witten ? "GW" : "W";
  s += ":n=" + std::to_string(n) + ":d=" + std::to_string(degree);
  if (kind == Kind::welschinger) return s;
  s += ":g=" + std::to_string(genus) + ":l=";
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
  return s;
}

InvariantKey InvariantKey::parse(const std::string& text) {
  InvariantKey k;
  int used = 0;
  if (std::sscanf(text.c_str(), "W:n=%d:d=%d%n", &k.n, &k.degree, &used) == 2 &&
      used == static_cast<int>(text.size())) {
    k.kind = Kind::welschinger;
    return k;
  }
  if (std::sscanf(text.c_str(), "GW:n=%d:d=%d:g=%d:l=%n", &k.n, &k.degree, &k.genus, &used) != 3 || used == 0)
    throw ParseError("bad invariant key: " + text);
  std::istringstream rest(text.substr(static_cast<std::size_t>(used)));
  std::string item;
  while (std::getline(rest, item, ',')) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size()) throw ParseError("bad invariant key: " + text);
    k.l.push_back(v);
  }
  if (k.serialize() != text) throw ParseError("non-canonical invariant key: " + text);
  return k;
}

InvariantCache::InvariantCache(const InvariantCache& other) : entries_(other.entries()) {}

InvariantCache& InvariantCache::operator=(const InvariantCache& other) {
  if (this != &other) {
    auto copy = other.entries();
    std::lock_guard lock(mutex_);
    entries_ = std::move(copy);
  }
  return *this;
}

std::optional<BigInt> InvariantCache::find(const InvariantKey& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key.serialize());
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void InvariantCache::insert(const InvariantKey& key, const BigInt& value) {
  std::lock_guard lock(mutex_);
  auto [it, added] = entries_.try_emplace(key.serialize(), value);
  if (!added && it->second != value)
    throw ContractViolation("conflicting values for " + it->first + ": " + to_string(it->second) + " and " +
                            to_string(value));
}

std::size_t InvariantCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::map<std::string, BigInt> InvariantCache::entries() const {
  std::lock_guard lock(mutex_);
  return entries_;
}

namespace {

constexpr const char* cache_header = "floorcount-cache v1";

std::string crc_line(const std::string& body) {
  boost::crc_32_type crc;
  crc.process_bytes(body.data(), body.size());
  char buf[32];
  std::snprintf(buf, sizeof buf, "crc32 %08x", static_cast<unsigned>(crc.checksum()));
  return buf;
}

}  // namespace

void cache_store(const InvariantCache& cache, const std::string& path) {
  std::string body = std::string(cache_header) + "\n";
  for (const auto& [key, value] : cache.entries()) body += key + " " + to_string(value) + "\n";
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write cache file " + path);
  os << body << crc_line(body) << "\n";
  if (!os.flush()) throw std::runtime_error("cannot write cache file " + path);
}

InvariantCache cache_load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read cache file " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  const std::string text = ss.str();

  // The trailer is the last complete line.
  if (text.empty() || text.back() != '\n') throw ChecksumError("cache file " + path + " is truncated");
  const std::size_t start = text.rfind('\n', text.size() - 2);
  const std::size_t body_end = start == std::string::npos ? 0 : start + 1;
  const std::string body = text.substr(0, body_end);
  const std::string trailer = text.substr(body_end, text.size() - body_end - 1);
  if (trailer.rfind("crc32 ", 0) != 0) throw ChecksumError("cache file " + path + " has no checksum line");
  if (trailer != crc_line(body)) throw ChecksumError("checksum mismatch in cache file " + path);

  std::istringstream lines(body);
  std::string line;
  if (!std::getline(lines, line) || line != cache_header) throw ParseError("not a floorcount cache: " + path);
  InvariantCache cache;
  while (std::getline(lines, line)) {
    const auto space = line.find(' ');
    if (space == std::string::npos) throw ParseError("bad cache line: " + line);
    BigInt value;
    if (value.set_str(line.substr(space + 1), 10) != 0) throw ParseError("bad cache value: " + line);
    cache.insert(InvariantKey::parse(line.substr(0, space)), value);
  }
  return cache;
}

int welschinger_sign(int n, int degree) {
  const long e = static_cast<long>(n) * (degree - 1) * (degree - 2) / 2;
  return e % 2 == 0 ? 1 : -1;
}

int welschinger_point_count(int n, int degree) {
  const int num = (n + 1) * degree + n - 3;
  if (n < 2 || num % (n - 1) != 0)
    throw ContractViolation("no integral point count for n=" + std::to_string(n) + ", d=" + std::to_string(degree));
  return num / (n - 1);
}

namespace {

// Shapes whose complex multiplicity can be nonzero.
std::vector<MarkingShape> candidate_shapes(const MarkingEnumerator& en, const MultiplicityEvaluator& ev) {
  MarkingOptions opts;
  opts.nondegenerate_bounds = true;
  opts.accept = [&ev](const MarkingShape& s) { return !ev.degenerate(s); };
  return en.shapes(opts);
}

}  // namespace

BigInt diagram_gromov_witten(const FloorDiagram& d, const ConstraintSpec& spec, InvariantOracle& oracle) {
  const MarkingEnumerator en(d, spec);
  const MultiplicityEvaluator ev(d, spec.n);
  BigInt sum = 0;
  for (const MarkingShape& s : candidate_shapes(en, ev)) {
    const BigInt mu = ev.complex_multiplicity(s, oracle);
    if (mu != 0) sum += mu * static_cast<unsigned long>(en.count(s));
  }
  return sum;
}

BigInt diagram_welschinger(const FloorDiagram& d, const ConstraintSpec& spec, InvariantOracle& oracle) {
  for (const Edge& e : d.edges())
    if (e.weight % 2 == 0) return 0;
  const MarkingEnumerator en(d, spec);
  const MultiplicityEvaluator ev(d, spec.n);
  BigInt sum = 0;
  for (const MarkingShape& s : candidate_shapes(en, ev)) {
    const BigInt mu = ev.real_multiplicity(s, oracle);
    if (mu != 0) sum += mu * static_cast<unsigned long>(en.count(s));
  }
  return sum;
}

namespace {

thread_local int query_depth = 0;

struct DepthGuard {
  DepthGuard() { ++query_depth; }
  ~DepthGuard() { --query_depth; }
};

}  // namespace

InvariantEngine::InvariantEngine(EngineOptions options, std::shared_ptr<InvariantCache> cache)
    : options_(options), cache_(std::move(cache)) {
  if (!cache_) cache_ = std::make_shared<InvariantCache>();
}

const std::vector<FloorDiagram>& InvariantEngine::diagrams(int degree, int genus) {
  std::lock_guard lock(diagrams_mutex_);
  auto& slot = diagrams_[{degree, genus}];
  if (!slot) {
    EnumerationOptions eo;
    eo.jobs = query_depth == 0 ? options_.jobs : 1;
    eo.max_degree = options_.max_degree;
    slot = std::make_unique<std::vector<FloorDiagram>>(enumerate_floor_diagrams(degree, genus, eo));
  }
  return *slot;
}

template <typename PerDiagram>
BigInt InvariantEngine::sum_over_diagrams(int degree, int genus, PerDiagram&& term) {
  const auto& all = diagrams(degree, genus);
  std::vector<BigInt> parts(all.size());
  const unsigned jobs = query_depth == 0 ? std::max(1u, options_.jobs) : 1u;
  if (jobs == 1) {
    DepthGuard guard;
    for (std::size_t i = 0; i < all.size(); ++i) parts[i] = term(all[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      DepthGuard guard;
      try {
        for (std::size_t i = next++; i < all.size(); i = next++) parts[i] = term(all[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, all.size()); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  BigInt sum = 0;
  for (const BigInt& p : parts) sum += p;
  return sum;
}

BigInt InvariantEngine::gromov_witten(int n, int degree, int genus, std::span<const int> l) {
  const ConstraintSpec spec = build_constraints(n, degree, genus, std::vector<int>(l.begin(), l.end()));
  const InvariantKey key = InvariantKey::gw(n, degree, genus, l);
  if (observer_) observer_(key, query_depth);
  if (auto hit = cache_->find(key)) return *hit;
  const BigInt value = sum_over_diagrams(degree, genus, [&](const FloorDiagram& d) {
    return diagram_gromov_witten(d, spec, *this);
  });
  cache_->insert(key, value);
  return value;
}

BigInt InvariantEngine::welschinger(int n, int degree) {
  if (n != 2 && n != 3) throw UnsupportedDimension("Welschinger invariants are only available for n = 2 and n = 3");
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  const InvariantKey key = InvariantKey::w(n, degree);
  if (observer_) observer_(key, query_depth);
  if (auto hit = cache_->find(key)) return *hit;
  std::vector<int> l(static_cast<std::size_t>(n - 1), 0);
  l[0] = welschinger_point_count(n, degree);
  const ConstraintSpec spec = build_constraints(n, degree, 0, l);
  BigInt value = sum_over_diagrams(degree, 0, [&](const FloorDiagram& d) {
    return diagram_welschinger(d, spec, *this);
  });
  value *= welschinger_sign(n, degree);
  cache_->insert(key, value);
  return value;
}

}  // namespace floorcount
