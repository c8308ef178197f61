#pragma once

#include <stdexcept>
#include <string>

namespace kolchin {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A polyalg resource limit (basis size, degree, pair count) was hit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A reduction produced a nonzero element of K: the generated ideal is the
// whole ring.
class InconsistentSystem : public Error {
 public:
  using Error::Error;
};

}  // namespace kolchin
