#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ropelab {

enum class ErrorCode {
  InvalidRope,
  Embedding,
  NonGenericFiber,
  NonGenericContact,
  GridMismatch,
  SingularExtension,
  ProjectionFailed,
  DisconnectedDiagram,
  NonTransversal,
  MissingLabel,
  InvalidLabel,
  OdeSingular,
  CoordinateSingularity,
  NotInE,
  NotInWL,
  NotInSpace,
  TemplateTooLong,
  NoTemplate,
  NonGeneric,
  NonGenericX0,
  NotALoop,
  Parse,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure surfaced by the library carries one of the codes above.
class RopeError : public std::runtime_error {
 public:
  RopeError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ropelab
