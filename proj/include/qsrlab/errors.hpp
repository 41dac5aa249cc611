#pragma once

#include <stdexcept>
#include <string>

namespace qsrlab {

/// Operands of incompatible degree were combined.
class DegreeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A desk-scale budget (degree, order, index) would be exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OrderExceedsLimit : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

/// Malformed or inconsistent generator dataset.
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact identity failed (e.g. a division that must be exact was not).
/// Always a bug, never a property of the input.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qsrlab
