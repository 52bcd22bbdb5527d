#include <gtest/gtest.h>

#include "dkit/errors.hpp"
#include "dkit/matcore.hpp"
#include "dkit/xdecomp.hpp"
#include "test_util.hpp"

using namespace dkit;
using dkit::testing::diag;
using dkit::testing::from_rows;

TEST(CXMatrix, Examples) {
  EXPECT_EQ(cx_matrix({2, {1.0}, {0.0}, std::nullopt}), ComplexMatrix::Identity(2, 2));
  EXPECT_EQ(cx_matrix({3, {1.0}, {2.0}, Complex(5)}), from_rows({{1, 0, 2}, {0, 5, 0}, {2, 0, 1}}));
  EXPECT_EQ(cx_matrix({2, {0.0}, {1.0}, std::nullopt}), special_matrix(SpecialKind::exchange, 2));
}

TEST(CXMatrix, ConjugatePatternAndRoundTrip) {
  const CXParams p{4, {Complex(1, 2), Complex(0, -1)}, {Complex(3, 1), Complex(-2, 0.5)}, std::nullopt};
  const ComplexMatrix x = cx_matrix(p);
  EXPECT_EQ(x(3, 3), std::conj(p.a[0]));
  EXPECT_EQ(x(0, 3), std::conj(p.b[0]));
  EXPECT_EQ(x(3, 0), p.b[0]);
  EXPECT_EQ(x_pattern_defect(x), 0.0);
  const ComplexMatrix j = special_matrix(SpecialKind::exchange, 4);
  EXPECT_EQ(j * x.conjugate() * j, x);
  const CXParams q = cx_params(x);
  EXPECT_EQ(q.a, p.a);
  EXPECT_EQ(q.b, p.b);
}

TEST(CXMatrix, ArityErrors) {
  EXPECT_THROW(cx_matrix({3, {1.0}, {2.0}, std::nullopt}), DomainError);
  EXPECT_THROW(cx_matrix({2, {1.0}, {2.0}, Complex(1)}), DomainError);
  EXPECT_THROW(cx_matrix({4, {1.0}, {2.0}, std::nullopt}), DomainError);
  EXPECT_THROW(cx_matrix({0, {}, {}, std::nullopt}), DomainError);
}

TEST(XDecomposition, DiagOneMinusOne) {
  const XDecomposition d = x_decomposition(diag({1, -1}));
  EXPECT_LE((d.x + ComplexMatrix::Identity(2, 2)).norm(), 1e-15);
  const XDecompositionCheck c = check_x_decomposition(diag({1, -1}), d);
  EXPECT_TRUE(c.ok);
  EXPECT_LE(c.reconstruction, 1e-15);
}

TEST(XDecomposition, ScalarMatrix) {
  const ComplexMatrix a = ComplexMatrix::Identity(4, 4) * -3.0;
  const XDecomposition d = x_decomposition(a);
  for (Eigen::Index i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::abs(d.x(i, i)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(d.x(i, 3 - i)), 3.0, 1e-14);
  }
  EXPECT_TRUE(check_x_decomposition(a, d).ok);
}

TEST(XDecomposition, RandomHermitian) {
  Rng rng(12);
  for (std::size_t n = 1; n <= 8; ++n) {
    const ComplexMatrix a = random_hermitian(n, rng) * 3.0;
    const XDecomposition d = x_decomposition(a);
    const XDecompositionCheck c = check_x_decomposition(a, d);
    EXPECT_TRUE(c.ok) << "n=" << n << " recon=" << c.reconstruction << " frame=" << c.frame_objective;
    EXPECT_TRUE(c.frames_feasible);
    EXPECT_EQ(d.frame_order.size(), n);
  }
  EXPECT_THROW(x_decomposition(from_rows({{0, 1}, {0, 0}})), DomainError);
}
