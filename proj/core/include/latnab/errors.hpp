#pragma once

#include <stdexcept>
#include <string>

namespace latnab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed lattice, vector outside the ambient space, violated precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A configured size limit (vector budget, quotient order, search bound) was hit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace latnab
