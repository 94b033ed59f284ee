#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmono {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or vector shapes do not fit the operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Linear system without a unique solution.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Wrong number of points or indices for the requested order.
class ArityError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// Input violates a general-position requirement. `tuple` holds the offending
/// indices when they are known.
class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& what,
                                std::vector<std::size_t> tuple = {})
      : Error(what), tuple_(std::move(tuple)) {}

  const std::vector<std::size_t>& tuple() const noexcept { return tuple_; }

 private:
  std::vector<std::size_t> tuple_;
};

/// A configured size or bit budget would be exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input.
class FormatError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace kmono
