#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dgm {

enum class ErrorKind {
  InvalidParameter,
  NumericalFault,
  UnsupportedIntegral,
  DegenerateGradient,
  StepRejected,
  NonConvergence,
  SingularStep,
  ReferenceUnresolved,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library. `value()` carries the quantity
/// that triggered the failure where one exists (the rejected denominator,
/// the last iteration residual, the offending pivot); `step()` is set by
/// `integrate` to the index of the step that failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double value = 0.0)
      : std::runtime_error(what), kind_(kind), value_(value) {}

  ErrorKind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }
  std::optional<long> step() const noexcept { return step_; }

  Error at_step(long index) const {
    Error e(kind_, std::string(what()) + " (step " + std::to_string(index) + ")", value_);
    e.step_ = index;
    return e;
  }

 private:
  ErrorKind kind_;
  double value_;
  std::optional<long> step_;
};

}  // namespace dgm
