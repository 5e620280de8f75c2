#include "ropelab/error.hpp"

namespace ropelab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidRope: return "INVALID_ROPE";
    case ErrorCode::Embedding: return "EMBEDDING";
    case ErrorCode::NonGenericFiber: return "NON_GENERIC_FIBER";
    case ErrorCode::NonGenericContact: return "NON_GENERIC_CONTACT";
    case ErrorCode::GridMismatch: return "GRID_MISMATCH";
    case ErrorCode::SingularExtension: return "SINGULAR_EXTENSION";
    case ErrorCode::ProjectionFailed: return "PROJECTION_FAILED";
    case ErrorCode::DisconnectedDiagram: return "DISCONNECTED_DIAGRAM";
    case ErrorCode::NonTransversal: return "NON_TRANSVERSAL";
    case ErrorCode::MissingLabel: return "MISSING_LABEL";
    case ErrorCode::InvalidLabel: return "INVALID_LABEL";
    case ErrorCode::OdeSingular: return "ODE_SINGULAR";
    case ErrorCode::CoordinateSingularity: return "COORDINATE_SINGULARITY";
    case ErrorCode::NotInE: return "NOT_IN_E";
    case ErrorCode::NotInWL: return "NOT_IN_WL";
    case ErrorCode::NotInSpace: return "NOT_IN_SPACE";
    case ErrorCode::TemplateTooLong: return "TEMPLATE_TOO_LONG";
    case ErrorCode::NoTemplate: return "NO_TEMPLATE";
    case ErrorCode::NonGeneric: return "NON_GENERIC";
    case ErrorCode::NonGenericX0: return "NON_GENERIC_X0";
    case ErrorCode::NotALoop: return "NOT_A_LOOP";
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::Io: return "IO";
  }
  return "UNKNOWN";
}

}  // namespace ropelab
