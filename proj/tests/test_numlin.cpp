#include "test_support.hpp"

using namespace phwell;
using namespace phwell::test;
using numlin::Definiteness;

TEST_CASE("kernel_basis on small examples") {
  const CMatrix k1 = numlin::kernel_basis(mat({{1, 0}}), 1e-10);
  REQUIRE(k1.cols() == 1);
  CHECK(std::abs(k1(0, 0)) < 1e-15);
  CHECK(std::abs(k1(1, 0)) == doctest::Approx(1.0));

  CHECK(numlin::kernel_basis(CMatrix::Zero(2, 2), 1e-10).cols() == 2);

  const Complex u = 2.0;
  const CMatrix k3 = numlin::kernel_basis(mat({{u - 1.0, u + 1.0}}), 1e-10);
  REQUIRE(k3.cols() == 1);
  const CVector expected = vec({3, -1}) / std::sqrt(10.0);
  CHECK(std::abs(expected.dot(k3.col(0))) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("kernel_basis without rows or columns") {
  CHECK(numlin::kernel_basis(CMatrix(0, 3), 1e-10).cols() == 3);
  CHECK(numlin::kernel_basis(CMatrix(2, 0), 1e-10).cols() == 0);
  CHECK(numlin::kernel_basis(CMatrix::Identity(3, 3), 1e-10).cols() == 0);
}

TEST_CASE("definiteness verdicts") {
  CHECK(numlin::definiteness(CMatrix::Zero(3, 3), 1e-10).verdict == Definiteness::zero);

  RVector diag(6);
  diag << 1, 1, 2, 2, 2, 2;
  const CMatrix tree = 0.25 * diag.cast<Complex>().asDiagonal().toDenseMatrix();
  const auto r = numlin::definiteness(tree, 1e-10);
  CHECK(r.verdict == Definiteness::positive_semidefinite);
  CHECK(r.min_eig == doctest::Approx(0.25));
  CHECK(r.max_eig == doctest::Approx(0.5));

  CHECK(numlin::definiteness(mat({{1, 0}, {0, -1}}), 1e-10).verdict == Definiteness::indefinite);
  CHECK(numlin::definiteness(mat({{-1, 0}, {0, 0}}), 1e-10).verdict == Definiteness::negative_semidefinite);
  CHECK(numlin::definiteness(CMatrix(0, 0), 1e-10).verdict == Definiteness::zero);
}

TEST_CASE("definiteness tolerates roundoff and rejects non-Hermitian input") {
  const CMatrix almost = mat({{1e-14, 0}, {0, 1}});
  CHECK(numlin::definiteness(-almost + mat({{0, 0}, {0, 2}}), 1e-10).psd());
  CHECK(error_kind([] { numlin::definiteness(mat({{0, 1}, {0, 0}}), 1e-10); }) == ErrorKind::not_hermitian);
  CHECK(error_kind([] { numlin::definiteness(CMatrix::Zero(2, 3), 1e-10); }) == ErrorKind::not_hermitian);
}

TEST_CASE("operator_norm examples") {
  CHECK(numlin::operator_norm(CMatrix::Identity(4, 4)) == doctest::Approx(1.0));
  for (int d : {2, 5, 16}) CHECK(numlin::operator_norm(shift(d)) == doctest::Approx(1.0));
  CHECK(numlin::operator_norm(mat({{0, 2}, {0, 0}})) == doctest::Approx(2.0));
  CHECK(numlin::operator_norm(CMatrix(0, 0)) == 0.0);
}

TEST_CASE("injectivity and rank") {
  CHECK(numlin::is_injective(CMatrix::Identity(3, 3), 1e-10));
  CHECK_FALSE(numlin::is_injective(shift(3), 1e-10));
  CHECK_FALSE(numlin::is_injective(CMatrix::Ones(2, 3), 1e-10));
  CHECK(numlin::is_injective(CMatrix::Identity(3, 2), 1e-10));
  CHECK(numlin::numerical_rank(shift(4), 1e-10) == 3);
  CHECK(numlin::smallest_singular_value(CMatrix::Ones(2, 3)) == 0.0);
}

TEST_CASE("hermitian_eigendecomposition examples") {
  const auto e = numlin::hermitian_eigendecomposition(mat({{0, 1}, {1, 0}}));
  CHECK(e.values(0) == doctest::Approx(1.0));
  CHECK(e.values(1) == doctest::Approx(-1.0));
  const CMatrix S = mat({{1, 1}, {-1, 1}}) / std::sqrt(2.0);
  CHECK(dist(e.S, S) < 1e-14);

  const auto f = numlin::hermitian_eigendecomposition(mat({{2, 0}, {0, -3}}));
  CHECK(f.values(0) == doctest::Approx(2.0));
  CHECK(f.values(1) == doctest::Approx(-3.0));
  CHECK(dist(f.S, CMatrix::Identity(2, 2)) < 1e-15);

  const auto g = numlin::hermitian_eigendecomposition(CMatrix::Identity(3, 3));
  CHECK(dist(g.values.cast<Complex>(), CVector::Ones(3)) < 1e-15);
  CHECK(dist(g.S, CMatrix::Identity(3, 3)) < 1e-15);
}

TEST_CASE("inertia examples") {
  const auto a = numlin::inertia(mat({{0, 1}, {1, 0}}), 1e-10);
  CHECK(a.positive == 1);
  CHECK(a.zero == 0);
  CHECK(a.negative == 1);
  const auto b = numlin::inertia(-CMatrix::Identity(3, 3), 1e-10);
  CHECK(b.negative == 3);
  CHECK(b.positive + b.zero == 0);
  const auto c = numlin::inertia(mat({{1, 0}, {0, 0}}), 1e-10);
  CHECK(c.positive == 1);
  CHECK(c.zero == 1);
  CHECK(c.negative == 0);
}

TEST_CASE("principal angles") {
  const CMatrix e1 = CMatrix::Identity(3, 1);
  CMatrix e2 = CMatrix::Zero(3, 1);
  e2(1, 0) = 1.0;
  CHECK(numlin::max_principal_angle(e1, e1) == doctest::Approx(0.0));
  CHECK(numlin::max_principal_angle(e1, e2) == doctest::Approx(M_PI / 2));
  CHECK(numlin::max_principal_angle(e1, CMatrix::Identity(3, 2)) == doctest::Approx(M_PI / 2));
}

TEST_CASE("property: kernel bases are orthonormal and annihilated") {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    const int p = rng.integer(1, 8);
    const int q = rng.integer(1, 8);
    const int r = rng.integer(0, std::min(p, q));
    // rank-r matrix as a product of thin factors
    const CMatrix M = rng.gaussian(p, r, t % 2 == 0) * rng.gaussian(r, q, t % 2 == 0);
    const CMatrix K = numlin::kernel_basis(M, 1e-10);
    const double smax = numlin::operator_norm(M);
    CHECK(K.cols() == q - r);
    if (K.cols() == 0) continue;
    CHECK(numlin::operator_norm(M * K) <= 1e-10 * smax * std::sqrt(q) + 1e-300);
    CHECK(dist(K.adjoint() * K, CMatrix::Identity(K.cols(), K.cols())) <= 1e-12);
  }
}

TEST_CASE("property: eigendecomposition reconstructs and inertia sums to d") {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const int d = rng.integer(1, 9);
    const CMatrix P = random_hermitian(rng, d, t % 3 == 0);
    const auto e = numlin::hermitian_eigendecomposition(P);
    const CMatrix rec = e.S.adjoint() * e.values.cast<Complex>().asDiagonal() * e.S;
    CHECK(dist(rec, P) <= 1e-12 * numlin::operator_norm(P));
    CHECK(dist(e.S.adjoint() * e.S, CMatrix::Identity(d, d)) <= 1e-12);
    for (int i = 0; i + 1 < d; ++i) CHECK(e.values(i) >= e.values(i + 1));
    const auto in = numlin::inertia(P, 1e-10);
    CHECK(in.positive + in.zero + in.negative == d);
  }
}

TEST_CASE("property: eigenvector phase normalization") {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const int d = rng.integer(2, 6);
    const auto e = numlin::hermitian_eigendecomposition(random_hermitian(rng, d));
    for (int i = 0; i < d; ++i) {
      const auto row = e.S.row(i);
      const double peak = row.cwiseAbs().maxCoeff();
      Eigen::Index pick = 0;
      for (Eigen::Index j = 0; j < d; ++j) {
        if (std::abs(row(j)) >= peak * (1.0 - 1e-12)) pick = j;
      }
      CHECK(std::abs(row(pick).imag()) < 1e-12);
      CHECK(row(pick).real() > 0.0);
    }
  }
}
