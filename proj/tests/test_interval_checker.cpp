#include "phwell/interval_checker.hpp"

#include "json.hpp"
#include "phwell/corpus.hpp"
#include "phwell/halfline_checker.hpp"
#include "phwell/model.hpp"
#include "phwell/random_system.hpp"
#include "phwell/sweep.hpp"
#include "test_support.hpp"

using namespace phwell;
using namespace phwell::test;

namespace {

const Tolerances kTol{};

PortHamiltonianSystem scalar_transport(double p1, const CMatrix& wb) {
  SystemDescription raw;
  raw.field = Field::real;
  raw.order_N = 1;
  raw.dim_d = 1;
  raw.P = {mat({{0}}), mat({{p1}})};
  raw.H = HamiltonianDensity::constant(mat({{1}}));
  raw.WB_hat = wb;
  return validate_system(raw);
}

PortHamiltonianSystem identity_system(int d, const CMatrix& wb) {
  SystemDescription raw;
  raw.order_N = 1;
  raw.dim_d = d;
  raw.P = {CMatrix::Zero(d, d), CMatrix::Identity(d, d)};
  raw.H = HamiltonianDensity::constant(CMatrix::Identity(d, d));
  raw.WB_hat = wb;
  return validate_system(raw);
}

bool all_applicable_fail(const Verdict& v, const std::vector<std::string>& ids) {
  for (const auto& id : ids) {
    const auto& c = v.at(id);
    if (c.applicable && c.holds) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("kernel dissipativity: clamped wave with damper") {
  const CMatrix Q = mat({{0, 1}, {1, 0}});
  for (double k : {0.7, 2.5}) {
    const CMatrix wb = mat({{k, 1, 0, 0}, {0, 0, 1, 0}});
    // Kernel spanned by (1,-k,0,0)/sqrt(1+k^2) and (0,0,0,1): form diag(-2k/(1+k^2), 0).
    const CMatrix G = kernel_form(wb, Q, 1e-10);
    REQUIRE(G.rows() == 2);
    const auto eig = numlin::definiteness(G, 1e-10);
    CHECK(eig.min_eig == doctest::Approx(-2 * k / (1 + k * k)));
    CHECK(eig.max_eig == doctest::Approx(0.0));
    const auto r = check_kernel_dissipativity(wb, Q, CMatrix::Zero(2, 2), kTol);
    CHECK(r.applicable);
    CHECK(r.holds);
  }
  const auto neg = check_kernel_dissipativity(mat({{-0.7, 1, 0, 0}, {0, 0, 1, 0}}), Q, CMatrix::Zero(2, 2), kTol);
  CHECK_FALSE(neg.holds);
  CHECK(neg.diagnostics.at("max_eig_kernel_form") == doctest::Approx(1.4 / 1.49));
}

TEST_CASE("kernel dissipativity: trivial kernel and wrong-end transport") {
  const auto vac = check_kernel_dissipativity(CMatrix::Identity(4, 4), mat({{0, 1}, {1, 0}}), CMatrix::Zero(2, 2), kTol);
  CHECK(vac.holds);
  CHECK(vac.diagnostics.at("kernel_dim") == 0.0);

  const auto wrong = check_kernel_dissipativity(mat({{0, 1}}), mat({{1}}), mat({{0}}), kTol);
  CHECK_FALSE(wrong.holds);
  CHECK(wrong.diagnostics.at("max_eig_kernel_form") == doctest::Approx(1.0));
}

TEST_CASE("injective PSD condition") {
  for (int d : {3, 8}) {
    const CMatrix I = CMatrix::Identity(d, d);
    const CMatrix L = shift(d);
    const CMatrix Z = CMatrix::Zero(d, d);
    const auto path = check_injective_psd(0.5 * (I + L), 0.5 * (I - L), Z, kTol);
    CHECK(path.holds);
    CHECK(path.diagnostics.at("min_eig_sigma_form") == doctest::Approx(0.0));
    CHECK(check_injective_psd(I, Z, Z, kTol).holds);
    const auto counter = check_injective_psd(0.5 * (I - L), -0.5 * (I + L), Z, kTol);
    CHECK_FALSE(counter.holds);
    CHECK(counter.reason.find("W1+W2 not injective") != std::string::npos);
  }
  CHECK_FALSE(check_injective_psd(CMatrix::Identity(1, 2), CMatrix::Zero(1, 2), CMatrix::Zero(2, 2), kTol).applicable);
}

TEST_CASE("extract_V examples") {
  const int d = 8;
  const CMatrix I = CMatrix::Identity(d, d);
  const CMatrix L = shift(d);
  CHECK(dist(*extract_V(0.5 * (I + L), 0.5 * (I - L), 1e-10), L) < 1e-15);
  CHECK(dist(*extract_V(I, CMatrix::Zero(d, d), 1e-10), I) < 1e-15);
  CHECK(dist(*extract_V(0.5 * I, 0.5 * I, 1e-10), CMatrix::Zero(d, d)) < 1e-15);
  CHECK_FALSE(extract_V(0.5 * (I - L), -0.5 * (I + L), 1e-10).has_value());
}

TEST_CASE("V contraction condition") {
  const CMatrix Z = CMatrix::Zero(4, 4);
  CHECK(check_V_contraction(shift(4), Z, kTol).holds);
  CHECK_FALSE(check_V_contraction(CMatrix(2.0 * CMatrix::Identity(4, 4)), Z, kTol).holds);
  CHECK(check_V_contraction(Z, Z, kTol).holds);
  CHECK_FALSE(check_V_contraction(std::nullopt, Z, kTol).applicable);
  CHECK_FALSE(check_V_contraction(Z, CMatrix(CMatrix::Identity(4, 4)), kTol).holds);
}

TEST_CASE("surjective PSD condition and the truncated counterexample") {
  const int d = 8;
  const CMatrix I = CMatrix::Identity(d, d);
  const CMatrix L = shift(d);
  const CMatrix Z = CMatrix::Zero(d, d);
  CMatrix wb(d, 2 * d);
  wb << I, -L;
  CHECK(check_surjective_psd(wb, 0.5 * (I + L), 0.5 * (I - L), Z, kTol).holds);
  CMatrix id(d, 2 * d);
  id << I, Z;
  CHECK(check_surjective_psd(id, I, Z, Z, kTol).holds);

  // W_B_hat = [I-L, -I-L] truncated: both conditions must agree.
  CMatrix counter(d, 2 * d);
  counter << I - L, -I - L;
  const Verdict v = analyze_interval(identity_system(d, counter));
  CHECK_FALSE(v.discrepancy);
  CHECK(v.consensus == Consensus::not_contraction);
  CHECK(v.at("T1.3").holds == v.at("C2.6").holds);
}

TEST_CASE("unitary conditions") {
  const Verdict path = analyze(build_path_graph(8));
  CHECK(path.unitary == UnitaryConsensus::not_unitary);
  CHECK(path.at("T3.3").reason.find("-W1+W2 not injective") != std::string::npos);

  const Verdict periodic = analyze_interval(scalar_transport(1.0, mat({{1, -1}})));
  CHECK(periodic.is_unitary());
  CHECK(periodic.is_contraction());
  for (const auto& id : kUnitaryIds) CHECK(periodic.at(id).holds);

  // W_B_hat = I: kernel {0}, T3.5 holds vacuously; the family must still agree.
  const Verdict all = analyze_interval(scalar_transport(1.0, CMatrix::Identity(2, 2)));
  CHECK(all.at("T3.5").holds);
  CHECK_FALSE(all.discrepancy);
  bool value = false;
  CHECK(agree(all, kUnitaryIds, &value));
  CHECK(value);
}

TEST_CASE("analyze_interval examples") {
  const Verdict p8 = analyze(build_path_graph(8));
  CHECK(p8.is_contraction());
  CHECK_FALSE(p8.is_unitary());
  CHECK_FALSE(p8.discrepancy);
  CHECK(analyze(build_wave(IntervalKind::unit_interval, 0.7)).is_contraction());
  const Verdict km = analyze(build_wave(IntervalKind::unit_interval, -0.7));
  CHECK(km.consensus == Consensus::not_contraction);
  CHECK(all_applicable_fail(km, kContractionIds));
}

TEST_CASE("T1.4 is applicable and fails when V does not exist") {
  const Verdict v = analyze_interval(scalar_transport(1.0, mat({{0, 1}})));
  CHECK(v.at("T1.4").applicable);
  CHECK_FALSE(v.at("T1.4").holds);
  CHECK_FALSE(v.discrepancy);
}

TEST_CASE("Re P0 enters every condition") {
  const PortHamiltonianSystem base = scalar_transport(1.0, mat({{1, -1}}));
  const Verdict pos = analyze_interval(base.with_P0(mat({{0.5}})));
  CHECK(pos.consensus == Consensus::not_contraction);
  CHECK(all_applicable_fail(pos, kContractionIds));
  CHECK(pos.at("T1.5").reason.find("Re P0") != std::string::npos);

  const Verdict neg = analyze_interval(base.with_P0(mat({{-0.5}})));
  CHECK(neg.is_contraction());
  CHECK(neg.unitary == UnitaryConsensus::not_unitary);

  SystemDescription raw = base.description();
  raw.field = Field::complex;
  raw.P[0] = mat({{Complex(0, 3)}});
  const Verdict skew = analyze_interval(validate_system(raw));
  CHECK(skew.is_unitary());
}

TEST_CASE("non-square boundary operators") {
  // Only x(1) = x(0) would be square; one row too many or too few.
  const Verdict tall = analyze_interval(scalar_transport(-1.0, CMatrix::Identity(2, 2)).with_boundary(
      mat({{1, 0}, {0, 1}, {1, 1}})));
  CHECK(tall.consensus == Consensus::dissipative_only);
  CHECK_FALSE(tall.at("T1.3").applicable);
  CHECK_FALSE(tall.at("C2.7").applicable);
  CHECK(tall.at("T1.5").applicable);
  CHECK_FALSE(tall.warnings.empty());

  const Verdict none = analyze_interval(scalar_transport(1.0, CMatrix(0, 2)));
  CHECK(none.consensus == Consensus::not_contraction);
  CHECK(none.unitary == UnitaryConsensus::not_unitary);
}

TEST_CASE("rank-deficient boundary rows produce a warning") {
  const Verdict v = analyze_interval(identity_system(1, mat({{0, 1}, {0, 2}})));
  bool warned = false;
  for (const auto& w : v.warnings) warned = warned || w.find("rank") != std::string::npos;
  CHECK(warned);
}

TEST_CASE("range condition") {
  const int d = 4;
  const CMatrix I = CMatrix::Identity(d, d);
  const CMatrix L = shift(d);
  CHECK(check_range_condition(0.5 * (I + L), 0.5 * (I - L), kTol).holds);
  CHECK_FALSE(check_range_condition(0.5 * (I - L), -0.5 * (I + L), kTol).holds);
  // W1 - W2 inside a rank-deficient range of W1 + W2
  CHECK(check_range_condition(L, L, kTol).holds);
}

TEST_CASE("JSON report layout") {
  const Verdict v = analyze(build_path_graph(2));
  const auto j = nlohmann::json::parse(to_json(v));
  CHECK(j.at("consensus") == "contraction");
  CHECK(j.at("unitary") == "not_unitary");
  CHECK(j.at("discrepancy") == false);
  for (const char* id : {"RANBED", "T1.3", "T1.4", "T1.5", "C2.6", "C2.7", "T3.3", "T3.4", "T3.5", "C3.6", "C3.7"}) {
    REQUIRE(j.at("conditions").contains(id));
    CHECK(j.at("conditions").at(id).contains("diagnostics"));
  }
  const Verdict tall = analyze_interval(identity_system(1, CMatrix::Identity(2, 2)).with_boundary(mat({{1, 0}, {0, 1}, {1, 1}})));
  const auto k = nlohmann::json::parse(to_json(tall));
  CHECK(k.at("conditions").at("T1.3").at("applicable") == false);
  CHECK(k.at("conditions").at("T1.3").at("holds").is_null());
}

TEST_CASE("property: equivalence of the contraction and unitary families") {
  for (const SystemClass cls : {SystemClass::interval_square, SystemClass::interval_rect}) {
    const SweepResult r = run_sweep(150, 99, cls);
    CHECK(r.discrepancies == 0);
    if (cls == SystemClass::interval_square) {
      CHECK(r.contractions > 15);
      CHECK(r.contractions < 135);
      CHECK(r.unitary > 0);
    }
  }
}

TEST_CASE("property: rectangular draws cover both dissipative outcomes") {
  int dissipative = 0;
  int not_dissipative = 0;
  for (int i = 0; i < 120; ++i) {
    Rng dims(instance_seed(8, i));
    const PortHamiltonianSystem sys =
        random_system(instance_seed(8, i), dims.integer(1, 3), dims.integer(1, 4), SystemClass::interval_rect);
    const Verdict v = analyze_interval(sys);
    CHECK(v.consensus != Consensus::contraction);
    (v.at("T1.5").holds ? dissipative : not_dissipative)++;
  }
  CHECK(dissipative > 0);
  CHECK(not_dissipative > 0);
}

TEST_CASE("property: Re P0 splits off the kernel test") {
  Rng rng(41);
  for (int t = 0; t < 80; ++t) {
    const int N = rng.integer(1, 3);
    const int d = rng.integer(1, 3);
    const PortHamiltonianSystem sys = random_system(3000 + t, N, d, SystemClass::interval_square);
    CMatrix P0 = rng.gaussian(d, d, sys.field() == Field::real);
    if (t % 3 == 0) P0 = P0 - P0.adjoint().eval();
    const bool with = check_kernel_dissipativity(sys.WB_hat(), build_Q(sys.P()), P0, sys.tol()).holds;
    const bool without =
        check_kernel_dissipativity(sys.WB_hat(), build_Q(sys.P()), CMatrix::Zero(d, d), sys.tol()).holds;
    CHECK(with == (without && re_P0_status(P0, sys.tol()).nsd));
  }
}

TEST_CASE("property: contractive V has both defect forms nonpositive") {
  Rng rng(43);
  for (int t = 0; t < 100; ++t) {
    const int n = rng.integer(1, 10);
    CMatrix V = rng.gaussian(n, n, t % 2 == 1);
    V *= rng.uniform(0.05, 1.0) / numlin::operator_norm(V);
    const CMatrix I = CMatrix::Identity(n, n);
    CHECK(numlin::definiteness(-I + V.adjoint() * V, 1e-10).nsd());
    CHECK(numlin::definiteness(-I + V * V.adjoint(), 1e-10).nsd());
  }
}

TEST_CASE("property: unitary consensus implies contraction") {
  int unitary = 0;
  for (int i = 0; i < 200; ++i) {
    Rng dims(instance_seed(4, i));
    const int N = dims.integer(1, 3);
    const int d = dims.integer(1, 4);
    const Verdict v = analyze_interval(random_system(instance_seed(4, i), N, d, SystemClass::interval_square));
    if (v.is_unitary()) {
      ++unitary;
      CHECK(v.is_contraction());
    }
  }
  CHECK(unitary > 0);
}
