#pragma once

#include <string>
#include <vector>

#include "floorcount/bigint.hpp"
#include "floorcount/invariants.hpp"

namespace floorcount {

// Rational plane curves of degree d through 3d-1 points, by the classical
// associativity recursion seeded with N_1 = 1.
BigInt kontsevich_rational(int degree);

// 3(d-1)^2, the degree of the discriminant; requires d >= 2.
BigInt discriminant_degree(int degree);

// (3/2)(d-1)(d-2)(3d^2-3d-11), the number of plane curves of degree d with
// two nodes more than a general nodal curve of maximal genus minus two;
// requires d >= 4 (ContractViolation otherwise).
BigInt codim_two_formula(int degree);

// Maximal genus of a plane curve of degree d.
int plane_max_genus(int degree);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct OracleReport {
  std::vector<CheckResult> checks;
  // Lines that are printed but never judged.
  std::vector<std::string> notes;

  bool passed() const;
};

// GW(2, d, 0, 3d-1) against kontsevich_rational for d <= max_d.
OracleReport kontsevich_checks(int max_d, InvariantEngine& engine);
// Closed forms for plane curves of genus g_max-1 (3 <= d <= max_d) and
// g_max-2 (4 <= d <= max_d).
OracleReport formula_checks(int max_d, InvariantEngine& engine);
/*
 For d <= max_d: |W^(3)_d| == N^(3)_{d,0}(2d,0) mod 4, W^(3)_d == 0 for even
 d, and |W^(3)_{2k+1}| > |W^(3)_{2k-1}| for 2 <= k with 2k+1 <= max_d. The
 ratios log|W| / log N are added as notes only. Throws
 std::invalid_argument when max_d exceeds the engine's degree cap.
*/
OracleReport proposition_checks(int max_d, InvariantEngine& engine);

}  // namespace floorcount
