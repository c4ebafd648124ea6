#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phwell {

enum class ErrorKind {
  structure,          // P_k symmetry, Hermitian H, half-line order
  singular_pn,        // P_N not invertible
  h_not_coercive,     // some H sample below the coercivity threshold
  shape,              // matrix dimensions disagree with N, d
  singular_q,
  order,              // smooth function lacks the requested derivatives
  not_hermitian,
  wrong_row_count,
  singular_u2,
  rank_deficient,
  singular_p1,
  grid_too_coarse,
  boundary_closure_singular,
  cfl_violation,
  parse,
  validation,
};

std::string_view to_string(ErrorKind kind);

/// True for the kinds raised while validating a system description.
bool is_validation_kind(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string field_path = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field_path() const noexcept { return field_path_; }

 private:
  ErrorKind kind_;
  std::string field_path_;
};

}  // namespace phwell
