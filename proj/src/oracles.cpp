#include "floorcount/oracles.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "floorcount/errors.hpp"

namespace floorcount {

BigInt kontsevich_rational(int degree) {
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  std::vector<BigInt> N(static_cast<std::size_t>(degree + 1), 0);
  N[1] = 1;
  for (int d = 2; d <= degree; ++d) {
    BigInt sum = 0;
    for (int d1 = 1; d1 < d; ++d1) {
      const int d2 = d - d1;
      const BigInt a = BigInt(d2) * binomial(3 * d - 4, 3 * d1 - 2) - BigInt(d1) * binomial(3 * d - 4, 3 * d1 - 1);
      sum += N[static_cast<std::size_t>(d1)] * N[static_cast<std::size_t>(d2)] * d1 * d1 * d2 * a;
    }
    N[static_cast<std::size_t>(d)] = sum;
  }
  return N[static_cast<std::size_t>(degree)];
}

BigInt discriminant_degree(int degree) {
  if (degree < 2) throw ContractViolation("discriminant degree needs d >= 2");
  return BigInt(3) * (degree - 1) * (degree - 1);
}

BigInt codim_two_formula(int degree) {
  if (degree < 4) throw ContractViolation("codimension-two formula needs d >= 4");
  const BigInt d = degree;
  const BigInt twice = 3 * (d - 1) * (d - 2) * (3 * d * d - 3 * d - 11);
  if (twice % 2 != 0) throw ContractViolation("codimension-two formula is not integral");
  return twice / 2;
}

int plane_max_genus(int degree) { return (degree - 1) * (degree - 2) / 2; }

bool OracleReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

namespace {

CheckResult compare(std::string name, const BigInt& expected, const BigInt& got) {
  return {std::move(name), expected == got, "expected " + to_string(expected) + ", got " + to_string(got)};
}

BigInt plane_gw(InvariantEngine& engine, int d, int g) {
  const int l0 = 3 * d - 1 + g;
  return engine.gromov_witten(2, d, g, std::vector<int>{l0});
}

}  // namespace

OracleReport kontsevich_checks(int max_d, InvariantEngine& engine) {
  OracleReport r;
  for (int d = 1; d <= max_d; ++d)
    r.checks.push_back(compare("N(2," + std::to_string(d) + ",0)", kontsevich_rational(d), plane_gw(engine, d, 0)));
  return r;
}

OracleReport formula_checks(int max_d, InvariantEngine& engine) {
  OracleReport r;
  for (int d = 3; d <= max_d; ++d) {
    const int g = plane_max_genus(d) - 1;
    r.checks.push_back(compare("N(2," + std::to_string(d) + "," + std::to_string(g) + ") = 3(d-1)^2",
                               discriminant_degree(d), plane_gw(engine, d, g)));
  }
  for (int d = 4; d <= max_d; ++d) {
    const int g = plane_max_genus(d) - 2;
    r.checks.push_back(compare("N(2," + std::to_string(d) + "," + std::to_string(g) + ") codim two",
                               codim_two_formula(d), plane_gw(engine, d, g)));
  }
  return r;
}

OracleReport proposition_checks(int max_d, InvariantEngine& engine) {
  if (max_d > engine.options().max_degree)
    throw std::invalid_argument("max_d " + std::to_string(max_d) + " exceeds the degree cap " +
                                std::to_string(engine.options().max_degree));
  OracleReport r;
  std::vector<BigInt> W(static_cast<std::size_t>(max_d + 1)), N(static_cast<std::size_t>(max_d + 1));
  for (int d = 1; d <= max_d; ++d) {
    const auto i = static_cast<std::size_t>(d);
    W[i] = engine.welschinger(3, d);
    N[i] = engine.gromov_witten(3, d, 0, std::vector<int>{2 * d, 0});
    const std::string tag = "d=" + std::to_string(d);
    const BigInt absw = abs(W[i]);
    const BigInt wm = absw % 4, nm = N[i] % 4;
    r.checks.push_back({"|W| = N mod 4, " + tag, wm == nm,
                        "|W|=" + to_string(absw) + " N=" + to_string(N[i]) + " residues " + to_string(wm) + ", " +
                            to_string(nm)});
    if (d % 2 == 0) r.checks.push_back({"W = 0 for even d, " + tag, W[i] == 0, "W=" + to_string(W[i])});
    if (d % 2 == 1 && d >= 5) {
      const BigInt prev = abs(W[i - 2]);
      r.checks.push_back({"|W(" + std::to_string(d) + ")| > |W(" + std::to_string(d - 2) + ")|", absw > prev,
                          to_string(absw) + " vs " + to_string(prev)});
    }
    if (absw > 1 && N[i] > 1) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "d=%d log|W|/log N = %.4f", d,
                    std::log(absw.get_d()) / std::log(N[i].get_d()));
      r.notes.emplace_back(buf);
    }
  }
  return r;
}

}  // namespace floorcount
