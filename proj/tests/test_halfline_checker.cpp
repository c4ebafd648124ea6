#include "phwell/halfline_checker.hpp"

#include "phwell/corpus.hpp"
#include "phwell/random_system.hpp"
#include "phwell/resolvent.hpp"
#include "phwell/sweep.hpp"
#include "test_support.hpp"

using namespace phwell;
using namespace phwell::test;

namespace {

PortHamiltonianSystem halfline(const CMatrix& P1, const CMatrix& wb, Field field = Field::complex) {
  const Eigen::Index d = P1.rows();
  SystemDescription raw;
  raw.field = field;
  raw.interval = IntervalKind::half_line;
  raw.order_N = 1;
  raw.dim_d = static_cast<int>(d);
  raw.P = {CMatrix::Zero(d, d), P1};
  raw.H = HamiltonianDensity::constant(CMatrix::Identity(d, d));
  raw.WB_hat = wb;
  return validate_system(raw);
}

CMatrix diag(std::initializer_list<double> v) {
  RVector r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) r(i++) = x;
  return r.cast<Complex>().asDiagonal();
}

}  // namespace

TEST_CASE("decompose_P1 examples") {
  const auto wave = decompose_P1(mat({{0, 1}, {1, 0}}));
  CHECK(wave.n1 == 1);
  CHECK(wave.n2 == 1);
  CHECK(wave.Lambda(0) == doctest::Approx(1.0));
  CHECK(wave.Theta(0) == doctest::Approx(-1.0));
  CHECK(dist(wave.S, mat({{1, 1}, {-1, 1}}) / std::sqrt(2.0)) < 1e-14);

  const auto neg = decompose_P1(-CMatrix::Identity(3, 3));
  CHECK(neg.n1 == 0);
  CHECK(neg.n2 == 3);
  CHECK(dist(neg.S, CMatrix::Identity(3, 3)) < 1e-15);

  const auto mixed = decompose_P1(diag({2, -3, -5}));
  CHECK(mixed.Lambda(0) == doctest::Approx(2.0));
  CHECK(mixed.Theta(0) == doctest::Approx(-3.0));
  CHECK(mixed.Theta(1) == doctest::Approx(-5.0));
  CHECK(dist(mixed.S.cwiseAbs().cast<Complex>(), CMatrix::Identity(3, 3)) < 1e-15);

  CHECK(error_kind([] { decompose_P1(diag({1, 0})); }) == ErrorKind::singular_p1);
}

TEST_CASE("property: decomposition reconstructs P1") {
  Rng rng(14);
  for (int t = 0; t < 100; ++t) {
    const int d = rng.integer(1, 7);
    RVector eig(d);
    for (int j = 0; j < d; ++j) eig(j) = (rng.uniform() < 0.5 ? 1.0 : -1.0) * rng.uniform(0.2, 3.0);
    const CMatrix W = rng.unitary(d, t % 2 == 0);
    const CMatrix P1 = W * eig.cast<Complex>().asDiagonal() * W.adjoint();
    const auto dec = decompose_P1(P1);
    CHECK(dist(dec.S.adjoint() * dec.Delta() * dec.S, P1) <= 1e-12 * numlin::operator_norm(P1));
    CHECK(dist(dec.S * dec.S.adjoint(), CMatrix::Identity(d, d)) <= 1e-12);
    CHECK(dec.n1 + dec.n2 == d);
    for (Eigen::Index j = 0; j < dec.n1; ++j) CHECK(dec.Lambda(j) > 0.0);
    for (Eigen::Index j = 0; j < dec.n2; ++j) CHECK(dec.Theta(j) < 0.0);
  }
}

TEST_CASE("factorize_boundary examples") {
  const auto dec = decompose_P1(mat({{0, 1}, {1, 0}}));
  for (const Complex u : {Complex(0.5), Complex(2.0), Complex(0, 0.9)}) {
    const auto f = factorize_boundary(0.5 * mat({{u - 1.0, u + 1.0}}), dec);
    REQUIRE(f.ok());
    CHECK(std::abs(f.factorization->B(0, 0) - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(f.factorization->U(0, 0) - u) < 1e-14);
    CHECK(f.factorization->residual < 1e-14);
  }

  const auto neg = decompose_P1(-CMatrix::Identity(2, 2));
  const auto g = factorize_boundary(CMatrix::Identity(2, 2), neg);
  REQUIRE(g.ok());
  CHECK(g.factorization->U.rows() == 2);
  CHECK(g.factorization->U.cols() == 0);
  CHECK(dist(g.factorization->B, neg.S.adjoint()) < 1e-15);

  const auto pos = decompose_P1(CMatrix::Identity(2, 2));
  const auto h = factorize_boundary(CMatrix(0, 2), pos);
  REQUIRE(h.ok());
  CHECK(h.factorization->B.size() == 0);
  CHECK(h.factorization->U.rows() == 0);
}

TEST_CASE("factorize_boundary failures") {
  const auto dec = decompose_P1(diag({1, -2, -3}));
  CHECK(factorize_boundary(mat({{0, 1, 0}}), dec).failure == ErrorKind::wrong_row_count);
  CHECK(factorize_boundary(mat({{0, 1, 0}, {0, 2, 0}}), dec).failure == ErrorKind::rank_deficient);
  CHECK(factorize_boundary(mat({{1, 1, 0}, {1, 0, 0}}), dec).failure == ErrorKind::singular_u2);
}

TEST_CASE("contraction on the half line: wave examples") {
  const Verdict a = analyze(build_wave(IntervalKind::half_line, 0.5));
  CHECK(a.is_contraction());
  CHECK(a.at("TA.4").diagnostics.at("min_eig_Lambda_plus_UThetaU") == doctest::Approx(0.75));

  const Verdict b = analyze(build_wave(IntervalKind::half_line, 2.0));
  CHECK(b.consensus == Consensus::not_contraction);
  CHECK_FALSE(b.at("TA.3").holds);
  // kernel vector (3,-1)/sqrt(10): y*P1y = -6/10
  CHECK(b.at("TA.3").diagnostics.at("min_eig_kernel_form") == doctest::Approx(-0.6));

  const Verdict c = check_contraction_halfline(halfline(-CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)));
  CHECK(c.is_contraction());
  CHECK(c.at("TA.3").diagnostics.at("kernel_dim") == 0.0);
}

TEST_CASE("unitary on the half line") {
  const Verdict one = analyze(build_wave(IntervalKind::half_line, 1.0));
  CHECK(one.is_unitary());
  CHECK(one.is_contraction());
  CHECK(analyze(build_wave(IntervalKind::half_line, 0.5)).unitary == UnitaryConsensus::not_unitary);

  const Verdict balanced = check_unitary_halfline(halfline(diag({1, -1}), mat({{1, 1}})));
  CHECK(balanced.is_unitary());

  const Verdict dir = analyze(halfline(-CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)));
  CHECK(dir.unitary == UnitaryConsensus::conservative_only);
  CHECK_FALSE(dir.at("TA2.4").applicable);
}

TEST_CASE("property: wave decisive eigenvalue is 1 - |u|^2") {
  Rng rng(6);
  for (int t = 0; t < 200; ++t) {
    const Complex u = t % 2 == 0 ? Complex(rng.uniform(-3, 3), 0.0) : Complex(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const double expected = 1.0 - std::norm(u);
    const Verdict v = analyze(build_wave(IntervalKind::half_line, u));
    CHECK(std::abs(v.at("TA.4").diagnostics.at("min_eig_Lambda_plus_UThetaU") - expected) <= 1e-12 * (1 + std::norm(u)));
    if (std::abs(expected) > 1e-9) CHECK(v.is_contraction() == (expected > 0));
    CHECK_FALSE(v.discrepancy);
  }
}

TEST_CASE("fewer and more rows than incoming characteristics") {
  // n2 = 2, k = 1: a kernel vector with y*P1y < 0 exists.
  const Verdict few = analyze(halfline(diag({1, -1, -1}), mat({{0, 1, 0}})));
  CHECK(few.consensus == Consensus::not_contraction);
  CHECK(few.at("TA.4").reason.find("WrongRowCount") != std::string::npos);
  CHECK_FALSE(few.discrepancy);

  // n2 = 1, k = 2: only the kernel condition applies.
  const Verdict many = analyze(halfline(diag({1, -1}), CMatrix::Identity(2, 2)));
  CHECK(many.consensus == Consensus::dissipative_only);
  CHECK_FALSE(many.at("TA.4").applicable);
  CHECK_FALSE(many.warnings.empty());
}

TEST_CASE("redundant rows are compressed with a warning") {
  const Verdict v = analyze(build_wave(IntervalKind::half_line, 0.5).with_boundary(mat({{-0.25, 0.75}, {-0.5, 1.5}})));
  CHECK(v.is_contraction());
  CHECK_FALSE(v.warnings.empty());
}

TEST_CASE("property: TA.3 and TA.4 agree on random systems") {
  const SweepResult r = run_sweep(200, 21, SystemClass::halfline);
  CHECK(r.discrepancies == 0);
  CHECK(r.contractions > 20);
  CHECK(r.contractions < 180);
}

TEST_CASE("property: unitary systems stay contractive with P1 negated") {
  int found = 0;
  for (int i = 0; i < 400 && found < 30; ++i) {
    const std::uint64_t s = instance_seed(17, i);
    Rng dims(s);
    const PortHamiltonianSystem sys = random_system(s, 1, dims.integer(1, 6), SystemClass::halfline);
    if (!analyze(sys).is_unitary()) continue;
    ++found;
    SystemDescription raw = sys.description();
    raw.P[1] = -raw.P[1];
    const Verdict flipped = analyze(validate_system(raw));
    CHECK(flipped.is_contraction());
    CHECK(flipped.is_unitary());
  }
  CHECK(found > 0);
}

TEST_CASE("resolvent: closed form with Lambda = 1") {
  HalfLineDecomposition dec;
  dec.S = CMatrix::Identity(1, 1);
  dec.Lambda = RVector::Ones(1);
  dec.Theta = RVector(0);
  dec.n1 = 1;
  const UniformGrid grid = default_resolvent_grid(dec);
  CHECK(grid.L == doctest::Approx(30.0));
  std::vector<CVector> y(grid.n + 1, CVector(1));
  for (int i = 0; i <= grid.n; ++i) y[i](0) = std::exp(-grid.node(i));
  const auto sol = solve_resolvent_halfline(dec, CMatrix(0, 1), y, grid);
  CHECK(sol.residual <= 1e-6);
  for (int i = 0; i <= grid.n; i += 97) CHECK(std::abs(sol.x[i](0) - 0.5 * std::exp(-grid.node(i))) <= 1e-5);
}

TEST_CASE("resolvent: zero data and the negative block") {
  const auto dec = decompose_P1(mat({{0, 1}, {1, 0}}));
  const UniformGrid grid{20.0, 4000};
  std::vector<CVector> zero(grid.n + 1, CVector::Zero(2));
  const auto z = solve_resolvent_halfline(dec, mat({{0.5}}), zero, grid);
  for (const auto& x : z.x) CHECK(x.norm() == 0.0);

  HalfLineDecomposition neg;
  neg.S = CMatrix::Identity(1, 1);
  neg.Lambda = RVector(0);
  neg.Theta = -RVector::Ones(1);
  neg.n2 = 1;
  const UniformGrid g{30.0, 10000};
  std::vector<CVector> y(g.n + 1, CVector(1));
  for (int i = 0; i <= g.n; ++i) y[i](0) = std::exp(-g.node(i));
  const auto sol = solve_resolvent_halfline(neg, CMatrix(1, 0), y, g);
  // the central-difference residual of the exact solution is itself about 3e-6 here
  CHECK(sol.residual <= 1e-5);
  CHECK(std::abs(sol.x[0](0)) == 0.0);
  // x - Theta x' = y with Theta = -1, x(0) = 0 solves to x = t e^{-t}.
  for (int i = 0; i <= g.n; i += 101) CHECK(std::abs(sol.x[i](0) - g.node(i) * std::exp(-g.node(i))) <= 1e-8);
}

TEST_CASE("resolvent: boundary coupling and refinement") {
  const auto dec = decompose_P1(mat({{0, 1}, {1, 0}}));
  const CMatrix U = mat({{Complex(0.3, -0.4)}});
  std::vector<double> residuals;
  for (int n : {500, 1000, 2000}) {
    const UniformGrid grid{30.0, n};
    std::vector<CVector> y(n + 1, CVector(2));
    for (int i = 0; i <= n; ++i) {
      const double t = grid.node(i);
      y[i] << std::exp(-(t - 3) * (t - 3)), Complex(0, 1) * std::exp(-0.5 * (t - 2) * (t - 2));
    }
    const auto sol = solve_resolvent_halfline(dec, U, y, grid, 1.0);  // keep coarse grids
    CHECK(std::abs(sol.x[0](1) + U(0, 0) * sol.x[0](0)) < 1e-14);
    residuals.push_back(sol.residual);
  }
  CHECK(std::log2(residuals[0] / residuals[1]) >= 1.0);
  CHECK(std::log2(residuals[1] / residuals[2]) >= 1.0);
}

TEST_CASE("resolvent: coarse grids and bad input are reported") {
  const auto dec = decompose_P1(mat({{0, 1}, {1, 0}}));
  const UniformGrid grid{30.0, 20};
  std::vector<CVector> y(grid.n + 1, CVector(2));
  for (int i = 0; i <= grid.n; ++i) y[i] << std::exp(-4 * (grid.node(i) - 1) * (grid.node(i) - 1)), 0;
  CHECK(error_kind([&] { solve_resolvent_halfline(dec, mat({{0}}), y, grid); }) == ErrorKind::grid_too_coarse);
  y.pop_back();
  CHECK(error_kind([&] { solve_resolvent_halfline(dec, mat({{0}}), y, grid); }) == ErrorKind::shape);
}
