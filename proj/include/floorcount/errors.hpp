#pragma once

#include <stdexcept>
#include <string>

namespace floorcount {

// Raised when sum_j l_j (n-1-j) != (n+1)d + (n-3)(1-g).
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Positive genus is only meaningful in the plane.
class UnsupportedGenus : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A function was called outside its documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChecksumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace floorcount
