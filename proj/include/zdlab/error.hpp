#pragma once

#include <stdexcept>
#include <string>

namespace zdlab {

enum class ErrorKind {
  kInvalidInput,         // malformed or inconsistent inputs
  kInfeasibleParameters, // constructor parameters outside their admissible box
  kResourceLimit,        // configured size or search bound exceeded
  kNonConvergence,       // iterative solver hit its step cap
  kPrecondition,         // operation called outside its stated domain
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double last_residual)
      : Error(ErrorKind::kNonConvergence, what), last_residual_(last_residual) {}

  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace zdlab
