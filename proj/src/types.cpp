#include "phwell/types.hpp"

#include <cstdlib>
#include <string>

#include "phwell/error.hpp"

namespace phwell {

std::string_view to_string(Field field) {
  return field == Field::real ? "real" : "complex";
}

std::string_view to_string(IntervalKind kind) {
  return kind == IntervalKind::unit_interval ? "unit_interval" : "half_line";
}

Field parse_field(std::string_view text) {
  if (text == "real") return Field::real;
  if (text == "complex") return Field::complex;
  throw Error(ErrorKind::parse, "unknown field '" + std::string(text) + "'", "field");
}

IntervalKind parse_interval(std::string_view text) {
  if (text == "unit_interval") return IntervalKind::unit_interval;
  if (text == "half_line") return IntervalKind::half_line;
  throw Error(ErrorKind::parse, "unknown interval '" + std::string(text) + "'", "interval");
}

Tolerances Tolerances::from_environment() {
  Tolerances tol;
  if (const char* env = std::getenv("PHWELL_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(value > 0.0) || value >= 1.0) {
      throw Error(ErrorKind::parse, std::string("PHWELL_TOL must be a decimal in (0,1), got '") + env + "'");
    }
    tol.structure = tol.rank = tol.psd = tol.pd = value;
  }
  return tol;
}

}  // namespace phwell
