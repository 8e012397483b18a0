#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gabriel {

enum class ErrorKind {
  HandleMismatch,
  EmptyGenerators,
  CompositionMismatch,
  NotAMorphism,
  UnsupportedPresentation,
  BudgetExceeded,
  MalformedTower,
  InfiniteDual,
  MalformedChain,
  NotDirected,
  ChainRequired,
  BadCertificate,
  DepthMismatch,
  NotInIdeal,
  NotZeroConvergent,
  FiniteOnly,
  TorsionObstruction,
  FaithfulOnly,
  NotFlat,
  TwoSidedRequired,
  VarianceMismatch,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Typed failure raised by every library operation.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

}  // namespace gabriel
