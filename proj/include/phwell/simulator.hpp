#pragma once

// Method-of-lines simulation of x_t = P1 (Hx)_zeta + P0 Hx for N = 1.
// Finite volumes on w = Hx with H frozen per cell; interface states are
// blended between the central average and full upwinding in the
// characteristic variables v = S w of P1 = S* diag(lambda) S; classical RK4
// in time. Boundary states come from W_B_hat together with extrapolation of
// the outgoing characteristics.

#include <functional>
#include <string>
#include <vector>

#include "phwell/model.hpp"
#include "phwell/simd/kernels.hpp"

namespace phwell {

/// Upwind weight theta: 0 is the central flux, 1 is first-order upwind. Any
/// theta >= 0 keeps the semi-discrete energy balance dissipative.
inline constexpr double kDefaultUpwindWeight = 0.1;

struct SimulationOptions {
  double t_final = 1.0;
  int nx = 400;
  double cfl = 0.5;
  double theta = kDefaultUpwindWeight;
  double half_line_length = 10.0;  ///< truncation point for half-line systems
  std::vector<double> snapshot_times;
  const simd::KernelTable* kernels = nullptr;  ///< defaults to simd::active_kernels()
};

struct Snapshot {
  double t = 0.0;
  std::vector<CVector> x;
};

struct EnergyTrace {
  std::vector<double> times;
  std::vector<double> energy;          ///< h sum x_i* H_i x_i
  std::vector<double> boundary_power;  ///< w(1)* P1 w(1) - w(0)* P1 w(0) at the boundary states
  std::vector<double> interior_power;  ///< 2h Re sum w_i* P0 w_i
  double max_violation = 0.0;          ///< largest single-step energy increase above roundoff, else 0
  double h = 0.0;
  double dt = 0.0;
  std::vector<std::string> warnings;
  std::vector<Snapshot> snapshots;
  std::vector<CVector> final_state;

  /// Header "t,energy,boundary_power,interior_power".
  std::string to_csv() const;
};

/// Cell-center samples of f on [0, length].
std::vector<CVector> sample_cells(const std::function<CVector(double)>& f, int nx, double length);

/// sqrt(h sum |a_i - b_i|^2)
double grid_l2_distance(const std::vector<CVector>& a, const std::vector<CVector>& b, double h);
double grid_l2_norm(const std::vector<CVector>& a, double h);

/// Smooth bump exp(1 - 1/(1 - r^2)), r = (zeta - center)/radius, zero for |r| >= 1.
double smooth_bump(double zeta, double center, double radius);

/// Throws BoundaryClosureSingular, CFLViolation, or a validation error when N != 1.
EnergyTrace simulate(const PortHamiltonianSystem& sys, const std::vector<CVector>& x0,
                     const SimulationOptions& options);

/// CSV matrix of a snapshot: one row per cell, columns zeta then re/im per component.
std::string snapshot_csv(const Snapshot& s, double h);

}  // namespace phwell
