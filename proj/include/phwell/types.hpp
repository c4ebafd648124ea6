#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace phwell {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

enum class Field { real, complex };
enum class IntervalKind { unit_interval, half_line };

std::string_view to_string(Field field);
std::string_view to_string(IntervalKind kind);
Field parse_field(std::string_view text);
IntervalKind parse_interval(std::string_view text);

/// Numerical thresholds. All except `v_slack` are relative to the largest
/// singular value of the matrix under test.
struct Tolerances {
  double structure = 1e-10;  ///< symmetry of P_k, Hermitian checks
  double rank = 1e-10;       ///< rank / kernel / injectivity decisions
  double psd = 1e-10;        ///< semidefiniteness and zero tests
  double pd = 1e-10;         ///< coercivity of H
  double v_slack = 1e-8;     ///< absolute slack on ||V|| <= 1 and V*V = I

  /// Defaults, with PHWELL_TOL (decimal string) overriding the four
  /// relative thresholds when set.
  static Tolerances from_environment();
};

}  // namespace phwell
