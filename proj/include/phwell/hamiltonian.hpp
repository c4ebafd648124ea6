#pragma once

#include <vector>

#include "phwell/types.hpp"

namespace phwell {

/// Hamiltonian density H(zeta): constant, piecewise constant on cells
/// separated by breakpoints, or samples on a uniform grid over [0, extent]
/// (linear interpolation between samples, constant beyond extent).
class HamiltonianDensity {
 public:
  enum class Kind { constant, piecewise, grid };

  HamiltonianDensity() = default;

  static HamiltonianDensity constant(CMatrix h);
  static HamiltonianDensity piecewise(std::vector<double> breakpoints, std::vector<CMatrix> cells);
  static HamiltonianDensity grid(double extent, std::vector<CMatrix> samples);

  Kind kind() const { return kind_; }
  const std::vector<CMatrix>& samples() const { return samples_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  double extent() const { return extent_; }

  CMatrix at(double zeta) const;

 private:
  Kind kind_ = Kind::constant;
  std::vector<CMatrix> samples_;
  std::vector<double> breakpoints_;
  double extent_ = 1.0;
};

std::string_view to_string(HamiltonianDensity::Kind kind);

}  // namespace phwell
