#include "phwell/error.hpp"

namespace phwell {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::structure: return "StructureError";
    case ErrorKind::singular_pn: return "SingularP_N";
    case ErrorKind::h_not_coercive: return "HNotCoercive";
    case ErrorKind::shape: return "ShapeError";
    case ErrorKind::singular_q: return "SingularQ";
    case ErrorKind::order: return "OrderError";
    case ErrorKind::not_hermitian: return "NotHermitian";
    case ErrorKind::wrong_row_count: return "WrongRowCount";
    case ErrorKind::singular_u2: return "SingularU2";
    case ErrorKind::rank_deficient: return "RankDeficient";
    case ErrorKind::singular_p1: return "SingularP1";
    case ErrorKind::grid_too_coarse: return "GridTooCoarse";
    case ErrorKind::boundary_closure_singular: return "BoundaryClosureSingular";
    case ErrorKind::cfl_violation: return "CFLViolation";
    case ErrorKind::parse: return "ParseError";
    case ErrorKind::validation: return "ValidationError";
  }
  return "Error";
}

bool is_validation_kind(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::structure:
    case ErrorKind::singular_pn:
    case ErrorKind::h_not_coercive:
    case ErrorKind::shape:
    case ErrorKind::singular_p1:
    case ErrorKind::validation:
      return true;
    default:
      return false;
  }
}

namespace {
std::string compose(ErrorKind kind, const std::string& message, const std::string& path) {
  std::string out(to_string(kind));
  if (!path.empty()) out += " at " + path;
  out += ": " + message;
  return out;
}
}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::string field_path)
    : std::runtime_error(compose(kind, message, field_path)),
      kind_(kind),
      field_path_(std::move(field_path)) {}

}  // namespace phwell
