#include "doctest.h"
#include "floorcount/errors.hpp"
#include "floorcount/oracles.hpp"

using namespace floorcount;

TEST_CASE("associativity recursion") {
  CHECK(kontsevich_rational(1) == 1);
  CHECK(kontsevich_rational(2) == 1);
  CHECK(kontsevich_rational(3) == 12);
  CHECK(kontsevich_rational(4) == 620);
  CHECK(kontsevich_rational(5) == 87304);
  CHECK_THROWS_AS(kontsevich_rational(0), std::invalid_argument);
}

TEST_CASE("engine matches the recursion") {
  InvariantEngine e;
  for (int d = 1; d <= 5; ++d) CHECK(e.gromov_witten(2, d, 0, std::vector<int>{3 * d - 1}) == kontsevich_rational(d));
}

TEST_CASE("closed forms") {
  CHECK(discriminant_degree(2) == 3);
  CHECK(discriminant_degree(3) == 12);
  CHECK(discriminant_degree(5) == 48);
  CHECK_THROWS_AS(discriminant_degree(1), ContractViolation);
  CHECK(codim_two_formula(4) == 225);
  CHECK(codim_two_formula(5) == 882);
  CHECK_THROWS_AS(codim_two_formula(3), ContractViolation);
  CHECK(plane_max_genus(5) == 6);
}

TEST_CASE("engine matches the closed forms") {
  InvariantEngine e;
  for (int d = 3; d <= 5; ++d) {
    const int g = plane_max_genus(d) - 1;
    CHECK(e.gromov_witten(2, d, g, std::vector<int>{d * (d + 3) / 2 - 1}) == discriminant_degree(d));
  }
  for (int d = 4; d <= 5; ++d) {
    const int g = plane_max_genus(d) - 2;
    CHECK(e.gromov_witten(2, d, g, std::vector<int>{d * (d + 3) / 2 - 2}) == codim_two_formula(d));
  }
}

TEST_CASE("oracle suites") {
  InvariantEngine e;
  CHECK(kontsevich_checks(5, e).passed());
  CHECK(kontsevich_checks(5, e).checks.size() == 5);
  CHECK(formula_checks(5, e).passed());
  CHECK(formula_checks(5, e).checks.size() == 5);

  const auto p = proposition_checks(5, e);
  CHECK(p.passed());
  // five congruences, two vanishings, one monotonicity
  CHECK(p.checks.size() == 8);
  CHECK_FALSE(p.notes.empty());

  const auto trivial = proposition_checks(1, e);
  CHECK(trivial.passed());
  CHECK(trivial.checks.size() == 1);

  InvariantEngine small({1, 4});
  CHECK_THROWS_AS(proposition_checks(5, small), std::invalid_argument);
}

TEST_CASE("a failing check fails the report") {
  OracleReport r;
  r.checks.push_back({"a", true, ""});
  CHECK(r.passed());
  r.checks.push_back({"b", false, ""});
  CHECK_FALSE(r.passed());
}
