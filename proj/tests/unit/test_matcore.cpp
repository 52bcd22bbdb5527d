#include <gtest/gtest.h>

#include <numbers>

#include "dkit/errors.hpp"
#include "dkit/matcore.hpp"
#include "test_util.hpp"

using namespace dkit;
using dkit::testing::diag;
using dkit::testing::from_rows;

TEST(Svd, DiagonalAndDegenerateExamples) {
  EXPECT_EQ(singular_values(diag({3, 1})), SpectrumVector({3, 1}));
  EXPECT_EQ(singular_values(ComplexMatrix::Zero(2, 2)), SpectrumVector({0, 0}));
  const SpectrumVector s = singular_values(from_rows({{0, 1}, {0, 0}}));
  EXPECT_NEAR(s[0], 1.0, 1e-15);
  EXPECT_NEAR(s[1], 0.0, 1e-15);
}

TEST(Svd, ReconstructionAndOrthonormality) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.uniform_index(0, 4), m = 2 + rng.uniform_index(0, 4);
    const ComplexMatrix a = random_ginibre(n, m, rng);
    const SVDResult r = svd(a);
    const auto k = static_cast<Eigen::Index>(std::min(n, m));
    ASSERT_EQ(r.singulars.size(), static_cast<std::size_t>(k));
    Eigen::VectorXd s(k);
    for (Eigen::Index i = 0; i < k; ++i) s(i) = r.singulars[static_cast<std::size_t>(i)];
    const double tol = 1e-12 * static_cast<double>(std::max(n, m));
    EXPECT_LE((r.left.adjoint() * r.left - ComplexMatrix::Identity(k, k)).norm(), tol);
    EXPECT_LE((r.right.adjoint() * r.right - ComplexMatrix::Identity(k, k)).norm(), tol);
    EXPECT_LE((a - r.left * s.cast<Complex>().asDiagonal() * r.right.adjoint()).norm(), 1e-12 * (1 + a.norm()));
    for (Eigen::Index i = 1; i < k; ++i) EXPECT_GE(s(i - 1), s(i));
  }
}

TEST(HermEig, Examples) {
  EXPECT_EQ(herm_eig(diag({3, 1, -1})).values, (RealVector{3, 1, -1}));
  const HermEigResult j = herm_eig(special_matrix(SpecialKind::exchange, 2));
  EXPECT_NEAR(j.values[0], 1.0, 1e-15);
  EXPECT_NEAR(j.values[1], -1.0, 1e-15);
  EXPECT_EQ(herm_eig(ComplexMatrix::Identity(3, 3)).values, (RealVector{1, 1, 1}));
}

TEST(HermEig, RejectsNonHermitian) {
  EXPECT_THROW(herm_eig(from_rows({{0, 1}, {0, 0}})), DomainError);
}

TEST(HermEig, Reconstruction) {
  Rng rng(5);
  for (std::size_t n = 1; n <= 7; ++n) {
    const ComplexMatrix a = random_hermitian(n, rng);
    const HermEigResult e = herm_eig(a);
    Eigen::VectorXd l(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) l(static_cast<Eigen::Index>(i)) = e.values[i];
    const auto N = static_cast<Eigen::Index>(n);
    EXPECT_LE((e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(N, N)).norm(), 1e-12 * double(n));
    EXPECT_LE((a - e.vectors * l.cast<Complex>().asDiagonal() * e.vectors.adjoint()).norm(), 1e-12 * (1 + a.norm()));
  }
}

TEST(KyFan, Examples) {
  EXPECT_DOUBLE_EQ(ky_fan_norm(diag({3, 2, 1}), 2), 5.0);
  EXPECT_NEAR(ky_fan_norm(special_matrix(SpecialKind::exchange, 3), 3), 3.0, 1e-14);
  Rng rng(4);
  const ComplexMatrix a = random_ginibre(4, 4, rng);
  const SpectrumVector s = dkit::testing::sigma(a);
  EXPECT_NEAR(ky_fan_norm(a, 2), s[0] + s[1], 1e-12);
}

TEST(KyFan, RangeChecked) {
  EXPECT_THROW(ky_fan_norm(diag({1, 2}), 0), DomainError);
  EXPECT_THROW(ky_fan_norm(diag({1, 2}), 3), DomainError);
}

TEST(Rotation, Examples) {
  EXPECT_LE((rotation_matrix(2, 0.0) - ComplexMatrix::Identity(2, 2)).norm(), 1e-15);
  const double h = std::sqrt(2.0) / 2.0;
  EXPECT_LE((rotation_matrix(2, std::numbers::pi / 4) - from_rows({{h, -h}, {h, h}})).norm(), 1e-15);
  EXPECT_LE((rotation_matrix(3, std::numbers::pi / 2) - from_rows({{0, 0, -1}, {0, 1, 0}, {1, 0, 0}})).norm(), 1e-15);
  EXPECT_THROW(rotation_matrix(1, 0.3), DomainError);
}

TEST(Rotation, OrthogonalCentrosymmetricAndInverse) {
  for (std::size_t n = 2; n <= 7; ++n) {
    const ComplexMatrix r = rotation_matrix(n, 0.7);
    const ComplexMatrix j = special_matrix(SpecialKind::exchange, n);
    const auto N = static_cast<Eigen::Index>(n);
    EXPECT_LE((r.transpose() * r - ComplexMatrix::Identity(N, N)).norm(), 1e-12 * double(n));
    EXPECT_LE((j * r * j - r.transpose()).norm(), 1e-14);
    EXPECT_LE((r * rotation_matrix(n, -0.7) - ComplexMatrix::Identity(N, N)).norm(), 1e-12 * double(n));
  }
}

TEST(SpecialMatrix, Examples) {
  EXPECT_EQ(special_matrix(SpecialKind::exchange, 2), from_rows({{0, 1}, {1, 0}}));
  const ComplexMatrix c = special_matrix(SpecialKind::cyclic_shift, 3);
  EXPECT_EQ(c.trace(), Complex(0));
  EXPECT_LE((c.adjoint() * c - ComplexMatrix::Identity(3, 3)).norm(), 1e-15);
  EXPECT_EQ(special_matrix(SpecialKind::identity, 1), from_rows({{1}}));
  EXPECT_FALSE(parse_special_kind("banana").has_value());
  EXPECT_EQ(parse_special_kind("exchange"), SpecialKind::exchange);
  EXPECT_THROW(special_matrix(SpecialKind::cyclic_shift, 1), DomainError);
}

TEST(RandomUnitary, ContractAndDeterminism) {
  const ComplexMatrix u1 = random_unitary(1, 99);
  EXPECT_NEAR(std::abs(u1(0, 0)), 1.0, 1e-14);
  const ComplexMatrix q = random_unitary(4, 7);
  EXPECT_LE((q.adjoint() * q - ComplexMatrix::Identity(4, 4)).norm(), 1e-12 * 4);
  EXPECT_EQ(random_unitary(3, 5), random_unitary(3, 5));
  EXPECT_NE(random_unitary(3, 5), random_unitary(3, 6));
}

TEST(RandomUnitary, SingularValuesInvariant) {
  Rng rng(8);
  const ComplexMatrix a = random_ginibre(5, 5, rng);
  const ComplexMatrix q = random_unitary(5, rng), r = random_unitary(5, rng);
  const SpectrumVector s = singular_values(a);
  EXPECT_LE(dkit::testing::max_abs_diff(singular_values(q * a * r), s), 1e-10 * s[0]);
}

TEST(Hamiltonian, Identity) {
  EXPECT_EQ(symplectic_j(1), from_rows({{0, 1}, {-1, 0}}));
  for (std::size_t n = 1; n <= 4; ++n) {
    const ComplexMatrix h = random_hamiltonian(n, 100 + n);
    ASSERT_EQ(h.rows(), static_cast<Eigen::Index>(2 * n));
    const ComplexMatrix js = symplectic_j(n) * h;
    EXPECT_LE((js - js.transpose()).norm(), 1e-12 * (1 + h.norm()));
    EXPECT_TRUE(h.imag().isZero(0.0));
  }
}

TEST(Dilation, Examples) {
  EXPECT_EQ(hermitian_dilation(from_rows({{1}})), from_rows({{0, 1}, {1, 0}}));
  const HermEigResult e = herm_eig(hermitian_dilation(diag({2, 3})));
  EXPECT_NEAR(e.values[0], 3, 1e-14);
  EXPECT_NEAR(e.values[1], 2, 1e-14);
  EXPECT_NEAR(e.values[2], -2, 1e-14);
  EXPECT_NEAR(e.values[3], -3, 1e-14);
  EXPECT_TRUE(hermitian_dilation(ComplexMatrix::Zero(2, 2)).isZero(0.0));
  EXPECT_THROW(hermitian_dilation(ComplexMatrix::Zero(2, 3)), DomainError);
}

TEST(Dilation, EigenvaluesArePlusMinusSigma) {
  Rng rng(3);
  const ComplexMatrix a = random_ginibre(4, 4, rng);
  const HermEigResult e = herm_eig(hermitian_dilation(a));
  const SpectrumVector s = singular_values(a);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(e.values[i], s[i], 1e-10 * s[0]);
    EXPECT_NEAR(e.values[7 - i], -s[i], 1e-10 * s[0]);
  }
}

TEST(DirectSum, Examples) {
  EXPECT_EQ(direct_sum(diag({1}), diag({2})), diag({1, 2}));
  const ComplexMatrix a = from_rows({{1, 2}, {3, 4}});
  EXPECT_EQ(direct_sum(a, ComplexMatrix(0, 0)), a);
  Rng rng(2);
  const ComplexMatrix b = random_ginibre(3, 3, rng);
  std::vector<double> merged = singular_values(a).vec();
  for (double s : singular_values(b)) merged.push_back(s);
  EXPECT_LE(dkit::testing::max_abs_diff(singular_values(direct_sum(a, b)), SpectrumVector(merged)), 1e-12);
  EXPECT_THROW(direct_sum(ComplexMatrix::Zero(2, 3), a), DomainError);
}

TEST(PrincipalAngles, Examples) {
  ComplexMatrix e1 = ComplexMatrix::Zero(2, 1), e2 = ComplexMatrix::Zero(2, 1), d(2, 1);
  e1(0, 0) = 1;
  e2(1, 0) = 1;
  d << std::sqrt(0.5), std::sqrt(0.5);
  EXPECT_NEAR(principal_angles(e1, e1)[0], 0.0, 1e-7);
  EXPECT_NEAR(principal_angles(e1, e2)[0], std::numbers::pi / 2, 1e-12);
  EXPECT_NEAR(principal_angles(e1, d)[0], std::numbers::pi / 4, 1e-12);
  EXPECT_THROW(principal_angles(e1 * 2.0, d), DomainError);
}

TEST(PrincipalAngles, Symmetric) {
  Rng rng(21);
  const ComplexMatrix s = random_unitary(5, rng).leftCols(2);
  const ComplexMatrix t = random_unitary(5, rng).leftCols(2);
  const RealVector a = principal_angles(s, t), b = principal_angles(t, s);
  ASSERT_EQ(a.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(a[i], b[i], 1e-10);
    EXPECT_GE(a[i], 0.0);
    EXPECT_LE(a[i], std::numbers::pi / 2);
  }
  EXPECT_GE(a[0], a[1]);
}

TEST(TracelessPartialIsometry, Contract) {
  for (std::size_t n = 2; n <= 6; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const ComplexMatrix m = traceless_partial_isometry(n, k, 1000 * n + k);
      EXPECT_LE(std::abs(m.trace()), 1e-12 * double(n));
      const SpectrumVector s = singular_values(m);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(s[i], i < k ? 1.0 : 0.0, 1e-12);
    }
  }
  EXPECT_THROW(traceless_partial_isometry(1, 1, 0), DomainError);
  EXPECT_THROW(traceless_partial_isometry(3, 4, 0), DomainError);
}

TEST(Digest, StableAndSensitive) {
  const ComplexMatrix a = from_rows({{1, 2}, {3, 4}});
  EXPECT_EQ(matrix_digest(a), matrix_digest(ComplexMatrix(a)));
  ComplexMatrix b = a;
  b(1, 1) += 1e-15;
  EXPECT_NE(matrix_digest(a), matrix_digest(b));
  EXPECT_NE(matrix_digest(a), matrix_digest(a.transpose()));
}

TEST(Rng, Determinism) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.normal(), b.normal());
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}
