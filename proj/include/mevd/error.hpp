#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mevd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ball radius outside (0, 1/2).
class DegenerateBall : public Error {
 public:
  using Error::Error;
};

// Component-count budget for preimage construction exhausted. `achieved` is the
// last iterate depth that fit.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, unsigned achieved)
      : Error(what), achieved_(achieved) {}
  unsigned achieved() const noexcept { return achieved_; }

 private:
  unsigned achieved_;
};

// Requested exceedance mass cannot be realised by the observable.
class Infeasible : public Error {
 public:
  using Error::Error;
};

// Operation applied to the wrong kind of map, point or observable.
class TypeMismatch : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mevd
