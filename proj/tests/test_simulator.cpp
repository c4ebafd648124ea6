#include "phwell/simulator.hpp"

#include <algorithm>

#include "phwell/config.hpp"
#include "phwell/corpus.hpp"
#include "test_support.hpp"

using namespace phwell;
using namespace phwell::test;

namespace {

std::vector<CVector> bump(int nx, int d, double length = 1.0, int component = 0) {
  return sample_cells(
      [&](double z) {
        CVector v = CVector::Zero(d);
        v(component) = smooth_bump(z, 0.3, 0.1);
        return v;
      },
      nx, length);
}

EnergyTrace run(const PortHamiltonianSystem& sys, double t_final, int nx, double theta = kDefaultUpwindWeight) {
  SimulationOptions o;
  o.t_final = t_final;
  o.nx = nx;
  o.theta = theta;
  return simulate(sys, bump(nx, sys.d()), o);
}

double energy_at(const EnergyTrace& tr, double t) {
  const auto it = std::lower_bound(tr.times.begin(), tr.times.end(), t - 1e-12);
  return tr.energy[static_cast<std::size_t>(it - tr.times.begin())];
}

}  // namespace

TEST_CASE("smooth_bump and grid norms") {
  CHECK(smooth_bump(0.3, 0.3, 0.1) == doctest::Approx(1.0));
  CHECK(smooth_bump(0.4, 0.3, 0.1) == 0.0);
  CHECK(smooth_bump(0.15, 0.3, 0.1) == 0.0);
  CHECK(smooth_bump(0.35, 0.3, 0.1) == doctest::Approx(std::exp(1.0 - 1.0 / 0.75)));

  const auto a = sample_cells([](double z) { return vec({z}); }, 4, 1.0);
  CHECK(a[0](0).real() == doctest::Approx(0.125));
  CHECK(a[3](0).real() == doctest::Approx(0.875));
  CHECK(grid_l2_norm(a, 0.25) == doctest::Approx(std::sqrt(0.25 * (0.015625 + 0.140625 + 0.390625 + 0.765625))));
  CHECK(grid_l2_distance(a, a, 0.25) == 0.0);
}

TEST_CASE("transport with zero inflow carries the bump out") {
  const auto tr = run(build_transport(-1.0, 0.0, 1.0), 1.5, 400);
  const double e0 = tr.energy.front();
  CHECK(tr.max_violation == 0.0);
  CHECK(energy_at(tr, 0.5) >= 0.95 * e0);
  CHECK(tr.energy.back() < 1e-3 * e0);
  CHECK(tr.warnings.empty());
}

TEST_CASE("energy rate matches boundary plus interior power, improving with refinement") {
  std::vector<double> errors;
  for (int nx : {200, 400, 800}) {
    const auto tr = run(build_transport(-1.0, 0.0, 1.0).with_P0(mat({{-0.2}})), 1.0, nx);
    double peak = 0.0;
    for (double p : tr.boundary_power) peak = std::max(peak, std::abs(p));
    CHECK(peak > 0.1);
    double worst = 0.0;
    for (std::size_t j = 1; j + 1 < tr.times.size(); ++j) {
      const double rate = (tr.energy[j + 1] - tr.energy[j - 1]) / (tr.times[j + 1] - tr.times[j - 1]);
      worst = std::max(worst, std::abs(rate - tr.boundary_power[j] - tr.interior_power[j]));
    }
    errors.push_back(worst / peak);
  }
  MESSAGE("relative rate defect " << errors[0] << ", " << errors[1] << ", " << errors[2]);
  CHECK(errors[0] <= 0.05);
  CHECK(errors[1] < errors[0]);
  CHECK(errors[2] < errors[1]);
}

TEST_CASE("damper dissipates and periodic transport nearly conserves") {
  const auto damper = run(build_wave(IntervalKind::unit_interval, 0.7), 2.0, 200);
  CHECK(damper.max_violation == 0.0);
  CHECK(damper.energy.back() < 0.5 * damper.energy.front());

  const auto periodic = build_transport(1.0, 1.0, -1.0);
  const auto coarse = run(periodic, 1.0, 200);
  const auto fine = run(periodic, 1.0, 400);
  const double drift_coarse = 1.0 - coarse.energy.back() / coarse.energy.front();
  const double drift_fine = 1.0 - fine.energy.back() / fine.energy.front();
  CHECK(drift_coarse > 0.0);
  CHECK(drift_coarse / drift_fine > 1.7);
  CHECK(drift_coarse / drift_fine < 2.3);

  const auto central = run(periodic, 1.0, 200, 0.0);
  const double drift_central = 1.0 - central.energy.back() / central.energy.front();
  CHECK(drift_central >= 0.0);
  CHECK(drift_central < drift_coarse);
}

TEST_CASE("dissipative P0 lowers the energy at the expected rate") {
  // P0 = -1/2 commutes with the scheme, so the damped run is e^{-t/2} times the undamped one.
  const auto plain = build_transport(1.0, 1.0, -1.0);
  const auto a = run(plain, 1.0, 200);
  const auto b = run(plain.with_P0(mat({{-0.5}})), 1.0, 200);
  CHECK(b.energy.back() / a.energy.back() == doctest::Approx(std::exp(-1.0)).epsilon(1e-5));
  CHECK(b.interior_power.front() == doctest::Approx(-b.energy.front()));
}

TEST_CASE("simulate rejects bad options") {
  const auto sys = build_transport(-1.0, 0.0, 1.0);
  SimulationOptions o;
  o.nx = 32;
  const auto x0 = bump(32, 1);
  o.cfl = 0.95;
  CHECK(error_kind([&] { simulate(sys, x0, o); }) == ErrorKind::cfl_violation);
  o.cfl = 0.0;
  CHECK(error_kind([&] { simulate(sys, x0, o); }) == ErrorKind::cfl_violation);
  o.cfl = 0.5;
  o.nx = 8;
  CHECK(error_kind([&] { simulate(sys, bump(8, 1), o); }) == ErrorKind::validation);
  o.nx = 32;
  CHECK(error_kind([&] { simulate(sys, bump(31, 1), o); }) == ErrorKind::shape);

  SystemDescription raw;
  raw.order_N = 2;
  raw.dim_d = 1;
  raw.P = {mat({{0}}), mat({{0}}), mat({{Complex(0, 1)}})};
  raw.H = HamiltonianDensity::constant(CMatrix::Identity(1, 1));
  raw.WB_hat = CMatrix::Identity(2, 4);
  std::string path;
  CHECK(error_kind([&] { simulate(validate_system(raw), x0, o); }, &path) == ErrorKind::validation);
  CHECK(path == "N");
}

TEST_CASE("half line runs are truncated with a warning") {
  SimulationOptions o;
  o.t_final = 1.0;
  o.nx = 200;
  o.half_line_length = 10.0;
  const auto tr = simulate(build_wave(IntervalKind::half_line, 0.5), bump(200, 2, 10.0), o);
  REQUIRE(tr.warnings.size() == 1);
  CHECK(tr.warnings[0].find("truncated") != std::string::npos);
  CHECK(tr.h == doctest::Approx(0.05));
  CHECK(tr.max_violation == 0.0);
}

TEST_CASE("snapshots and CSV output") {
  SimulationOptions o;
  o.t_final = 0.5;
  o.nx = 64;
  o.snapshot_times = {0.25, 0.0};
  const auto tr = simulate(build_transport(-1.0, 0.0, 1.0), bump(64, 1), o);
  REQUIRE(tr.snapshots.size() == 2);
  CHECK(tr.snapshots[0].t == 0.0);
  CHECK(std::abs(tr.snapshots[1].t - 0.25) <= 0.5 * tr.dt);
  CHECK(tr.snapshots[0].x.size() == 64);
  CHECK(tr.final_state.size() == 64);

  const std::string csv = tr.to_csv();
  CHECK(csv.rfind("t,energy,boundary_power,interior_power\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(tr.times.size()) + 1);
  const std::string snap = snapshot_csv(tr.snapshots[0], tr.h);
  CHECK(std::count(snap.begin(), snap.end(), '\n') >= 64);
}

TEST_CASE("piecewise H is handled through frozen cells") {
  const auto sys = parse_config(std::string(PHWELL_TEST_DIR) + "/data/damper_complex.json");
  const auto tr = run(sys, 1.0, 128);
  CHECK(tr.max_violation == 0.0);
  CHECK(tr.energy.back() <= tr.energy.front());
}
