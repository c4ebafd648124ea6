#include "phwell/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

namespace phwell {

HamiltonianDensity HamiltonianDensity::constant(CMatrix h) {
  HamiltonianDensity out;
  out.kind_ = Kind::constant;
  out.samples_.push_back(std::move(h));
  return out;
}

HamiltonianDensity HamiltonianDensity::piecewise(std::vector<double> breakpoints,
                                                 std::vector<CMatrix> cells) {
  HamiltonianDensity out;
  out.kind_ = Kind::piecewise;
  out.breakpoints_ = std::move(breakpoints);
  out.samples_ = std::move(cells);
  return out;
}

HamiltonianDensity HamiltonianDensity::grid(double extent, std::vector<CMatrix> samples) {
  HamiltonianDensity out;
  out.kind_ = Kind::grid;
  out.extent_ = extent;
  out.samples_ = std::move(samples);
  return out;
}

CMatrix HamiltonianDensity::at(double zeta) const {
  switch (kind_) {
    case Kind::constant:
      return samples_.front();
    case Kind::piecewise: {
      const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), zeta);
      return samples_[static_cast<std::size_t>(it - breakpoints_.begin())];
    }
    case Kind::grid: {
      const std::size_t n = samples_.size();
      if (n == 1 || zeta <= 0.0) return samples_.front();
      if (zeta >= extent_) return samples_.back();
      const double pos = zeta / extent_ * static_cast<double>(n - 1);
      const auto i = std::min(static_cast<std::size_t>(pos), n - 2);
      const double t = pos - static_cast<double>(i);
      return (1.0 - t) * samples_[i] + t * samples_[i + 1];
    }
  }
  return samples_.front();
}

std::string_view to_string(HamiltonianDensity::Kind kind) {
  switch (kind) {
    case HamiltonianDensity::Kind::constant: return "constant";
    case HamiltonianDensity::Kind::piecewise: return "piecewise";
    case HamiltonianDensity::Kind::grid: return "grid";
  }
  return "constant";
}

}  // namespace phwell
