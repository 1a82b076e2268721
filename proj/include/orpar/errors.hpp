#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orpar {

enum class ErrorCode {
  DegenerateRestriction,
  DegenerateFrame,
  DependentVectors,
  NotNull,
  WrongSignature,
  DegenerateMeet,
  DegenerateDerivative,
  CenterOnLine,
  EmptySet,
  FixedPointDetected,
  InteriorPoint,
  NotCharMapForm,
  InvalidParameter,
  NotOrthonormal,
  StarRejected,
  AmbiguousMatch,
  NoMatch,
};

std::string_view to_string(ErrorCode code);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orpar
