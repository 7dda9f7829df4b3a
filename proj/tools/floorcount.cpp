// floorcount: command-line front end.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 mathematical precondition
// (dimension condition, unsupported genus or dimension).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "floorcount/diagram_enum.hpp"
#include "floorcount/diagram_io.hpp"
#include "floorcount/errors.hpp"
#include "floorcount/invariants.hpp"
#include "floorcount/marking.hpp"
#include "floorcount/multiplicity.hpp"
#include "floorcount/oracles.hpp"

namespace fc = floorcount;

namespace {

struct Common {
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string cache_path;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--cache", c.cache_path, "cache file (default: $FLOORCOUNT_CACHE)");
}

std::string resolve_cache(const Common& c) {
  if (!c.cache_path.empty()) return c.cache_path;
  const char* env = std::getenv("FLOORCOUNT_CACHE");
  return env ? env : "";
}

// Engine backed by the cache file, if any; store() writes it back.
struct Session {
  std::string path;
  fc::InvariantEngine engine;

  explicit Session(const Common& c) : path(resolve_cache(c)), engine(options(c), load(path)) {}

  static fc::EngineOptions options(const Common& c) {
    fc::EngineOptions o;
    o.jobs = c.jobs;
    return o;
  }
  static std::shared_ptr<fc::InvariantCache> load(const std::string& path) {
    if (path.empty() || !std::filesystem::exists(path)) return std::make_shared<fc::InvariantCache>();
    return std::make_shared<fc::InvariantCache>(fc::cache_load(path));
  }
  void store() const {
    if (!path.empty()) fc::cache_store(*engine.cache(), path);
  }
};

struct DiagramsArgs {
  int d = 1, g = 0, n = 0;
  std::vector<int> l;
  bool marked = false, group = false, all_types = false;
  std::string format = "text";
};

void print_diagram(const fc::FloorDiagram& d, const std::string& format, int index) {
  if (format == "dot")
    std::cout << fc::to_dot(d, "D" + std::to_string(index));
  else
    fc::write_text(std::cout, d);
}

void print_marked(const fc::MarkedDiagram& m, const std::string& format, int index) {
  if (format == "dot") {
    for (int r = 0; r < m.spec.size(); ++r)
      std::cout << "// mark dim=" << m.spec.dim(r) << " idx=" << m.spec.constraints[static_cast<std::size_t>(r)].index
                << " at=" << fc::to_string(m.assignment[static_cast<std::size_t>(r)]) << "\n";
    std::cout << fc::to_dot(m.diagram, "D" + std::to_string(index));
  } else {
    fc::write_text(std::cout, m);
  }
}

int run_diagrams(const DiagramsArgs& a, const Common& c) {
  fc::EnumerationOptions eo;
  eo.jobs = c.jobs;
  const auto diagrams = fc::enumerate_floor_diagrams(a.d, a.g, eo);
  int index = 0;
  if (!a.marked) {
    for (const auto& d : diagrams) print_diagram(d, a.format, index++);
    return 0;
  }
  const fc::ConstraintSpec spec = fc::build_constraints(a.n, a.d, a.g, a.l);
  Session session(c);
  const bool real = a.g == 0 && spec.points_only();
  for (const auto& d : diagrams) {
    if (!a.group) {
      for (const auto& m : fc::enumerate_markings(d, spec)) print_marked(m, a.format, index++);
      continue;
    }
    const fc::MultiplicityEvaluator ev(d, a.n);
    fc::MarkingOptions opts;
    if (!a.all_types) {
      opts.nondegenerate_bounds = true;
      opts.accept = [&ev](const fc::MarkingShape& s) { return !ev.degenerate(s); };
    }
    for (const auto& t : fc::count_marked_by_type(d, spec, opts)) {
      const fc::BigInt mu = ev.complex_multiplicity(t.shape, session.engine);
      if (mu == 0 && !a.all_types) continue;
      std::cout << "# type count=" << t.count << " mu_c=" << mu;
      if (real) std::cout << " mu_r=" << ev.real_multiplicity(t.shape, session.engine);
      std::cout << "\n";
      print_marked(t.representative, a.format, index++);
    }
  }
  session.store();
  return 0;
}

void print_report(const fc::OracleReport& r) {
  for (const auto& c : r.checks) std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  for (const auto& n : r.notes) std::cout << "note " << n << "\n";
}

int run_cache(const std::string& action, const Common& c) {
  const std::string path = resolve_cache(c);
  if (path.empty()) {
    std::cerr << "error: no cache file given (--cache or FLOORCOUNT_CACHE)\n";
    return 1;
  }
  if (action == "clear") {
    fc::cache_store(fc::InvariantCache{}, path);
    return 0;
  }
  const fc::InvariantCache cache = fc::cache_load(path);
  if (action == "verify") {
    std::cout << "ok " << cache.size() << " entries\n";
    return 0;
  }
  for (const auto& [key, value] : cache.entries()) std::cout << key << " " << value << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gromov-Witten and Welschinger invariants from floor diagrams"};
  app.require_subcommand(1);

  Common common;
  int n = 2, d = 1, g = 0, max_d = 5;
  std::vector<int> l;

  auto* gw = app.add_subcommand("gw", "Gromov-Witten number N^(n)_{d,g}(l)");
  gw->add_option("--n", n, "ambient dimension")->required();
  gw->add_option("--d", d, "degree")->required();
  gw->add_option("--g", g, "genus");
  gw->add_option("--l", l, "constraint counts l_0,...,l_{n-2}")->required()->delimiter(',');
  add_common(gw, common);

  auto* w = app.add_subcommand("w", "Welschinger invariant W^(n)_d for n in {2,3}");
  w->add_option("--n", n, "ambient dimension")->required();
  w->add_option("--d", d, "degree")->required();
  add_common(w, common);

  DiagramsArgs da;
  auto* diagrams = app.add_subcommand("diagrams", "list floor diagrams or marked floor diagrams");
  diagrams->add_option("--d", da.d, "degree")->required();
  diagrams->add_option("--g", da.g, "genus");
  auto* dn = diagrams->add_option("--n", da.n, "ambient dimension");
  auto* dl = diagrams->add_option("--l", da.l, "constraint counts")->delimiter(',');
  auto* marked = diagrams->add_flag("--marked", da.marked, "list marked diagrams");
  dn->needs(marked);
  dl->needs(marked);
  marked->needs(dn)->needs(dl);
  diagrams->add_flag("--group-types", da.group, "one representative per combinatorial type")->needs(marked);
  diagrams->add_flag("--all-types", da.all_types, "with --group-types, include types of multiplicity 0");
  diagrams->add_option("--format", da.format, "output format")->check(CLI::IsMember({"text", "dot"}));
  add_common(diagrams, common);

  std::string suite;
  auto* oracle = app.add_subcommand("oracle", "run an oracle suite");
  oracle->add_option("--suite", suite, "suite")->required()->check(
      CLI::IsMember({"kontsevich", "formulas", "proposition"}));
  oracle->add_option("--max-d", max_d, "largest degree")->check(CLI::PositiveNumber);
  add_common(oracle, common);

  std::string action = "list";
  auto* cache = app.add_subcommand("cache", "inspect or reset the cache file");
  cache->add_option("action", action, "list, verify or clear")->check(CLI::IsMember({"list", "verify", "clear"}));
  cache->add_option("--cache", common.cache_path, "cache file (default: $FLOORCOUNT_CACHE)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*gw) {
      Session s(common);
      std::cout << s.engine.gromov_witten(n, d, g, l) << "\n";
      s.store();
    } else if (*w) {
      Session s(common);
      std::cout << s.engine.welschinger(n, d) << "\n";
      s.store();
    } else if (*diagrams) {
      return run_diagrams(da, common);
    } else if (*oracle) {
      Session s(common);
      fc::OracleReport r;
      if (suite == "kontsevich")
        r = fc::kontsevich_checks(max_d, s.engine);
      else if (suite == "formulas")
        r = fc::formula_checks(max_d, s.engine);
      else
        r = fc::proposition_checks(max_d, s.engine);
      print_report(r);
      s.store();
      std::cout << (r.passed() ? "pass" : "fail") << "\n";
      return r.passed() ? 0 : 1;
    } else if (*cache) {
      return run_cache(action, common);
    }
  } catch (const fc::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fc::UnsupportedGenus& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fc::UnsupportedDimension& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fc::ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
