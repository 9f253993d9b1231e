#pragma once

#include <stdexcept>
#include <string>

namespace sema::kernel {

enum class TypeErrorKind {
  UnboundVariable,
  UnknownConstant,
  ConstantMismatch,
  EnvMismatch,
  ApplicationMismatch,
  SpecialisationOfNonPi,
  GeneralisationViolation,
  UnknownSort,
  TypeMismatch,
  IllFormed,
};

const char* to_string(TypeErrorKind k);

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  TypeErrorKind kind() const { return kind_; }

 private:
  TypeErrorKind kind_;
};

class FuelExhaustedError : public std::runtime_error {
 public:
  explicit FuelExhaustedError(long steps)
      : std::runtime_error("normalization fuel exhausted after " +
                           std::to_string(steps) + " steps"),
        steps_(steps) {}

  long steps() const { return steps_; }

 private:
  long steps_;
};

}  // namespace sema::kernel
