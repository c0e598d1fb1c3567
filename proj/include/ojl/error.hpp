#pragma once

#include <stdexcept>
#include <string>

namespace ojl {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A density was evaluated at an endpoint where it is unbounded
/// (z = 0 with a < 1, or z = 1 with b < 1).
class pole_error : public std::domain_error {
 public:
  pole_error(const std::string& what, double at) : std::domain_error(what), at_(at) {}
  double at() const noexcept { return at_; }

 private:
  double at_;
};

/// n >= m: the identity embedding has zero distortion, nothing to optimize.
class no_reduction : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// No embedding dimension below the data dimension meets the requested target.
class infeasible_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ojl
