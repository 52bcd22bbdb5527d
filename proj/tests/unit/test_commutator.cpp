#include <gtest/gtest.h>

#include "dkit/commutator.hpp"
#include "dkit/discrepancy.hpp"
#include "dkit/errors.hpp"
#include "dkit/majorize.hpp"
#include "dkit/matcore.hpp"
#include "test_util.hpp"

using namespace dkit;
using dkit::testing::diag;
using dkit::testing::from_rows;
using dkit::testing::max_abs_diff;

TEST(Commutator, Examples) {
  const ComplexMatrix j2 = special_matrix(SpecialKind::exchange, 2);
  EXPECT_EQ(commutator(diag({1, -1}), j2), from_rows({{0, 2}, {-2, 0}}));
  EXPECT_EQ(generalized_commutator(diag({1, -1}), j2, diag({1, -1})), from_rows({{0, 2}, {-2, 0}}));
  Rng rng(1);
  const ComplexMatrix a = random_ginibre(3, 3, rng);
  EXPECT_TRUE(commutator(a, ComplexMatrix::Identity(3, 3)).isZero(0.0));
  EXPECT_LE(commutator(a, a).norm(), 1e-14);
  EXPECT_THROW(commutator(a, j2), DomainError);
  EXPECT_THROW(generalized_commutator(a, ComplexMatrix::Zero(2, 3), a), DomainError);
}

TEST(Commutator, ShiftInvariance) {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = random_ginibre(4, 4, rng), b = random_ginibre(4, 4, rng), x = random_ginibre(4, 4, rng);
    const Complex alpha = rng.complex_normal() * 3.0;
    const ComplexMatrix id = ComplexMatrix::Identity(4, 4);
    const ComplexMatrix lhs = generalized_commutator(a - alpha * id, x, b - alpha * id);
    const double scale = 1 + a.norm() * x.norm() + b.norm() * x.norm();
    EXPECT_LE((lhs - generalized_commutator(a, x, b)).norm(), 1e-12 * scale);
  }
}

TEST(Commutator, RealSymmetricPairHasDeltaEqualSigma) {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + rng.uniform_index(0, 3);
    Eigen::MatrixXd g = random_ginibre(n, n, rng).real(), h = random_ginibre(n, n, rng).real();
    const ComplexMatrix c = commutator((g + g.transpose()).cast<Complex>(), (h + h.transpose()).cast<Complex>());
    EXPECT_LE(max_abs_diff(discrepancy_values(c).values, singular_values(c)), 1e-7 * (1 + c.norm()));
  }
}

TEST(NoncommutingWitness, Examples) {
  const NoncommutingWitness w = maximal_noncommuting_unitary(diag({1, -1}), diag({1, -1}));
  EXPECT_LE(max_abs_diff(w.achieved, SpectrumVector{2, 2}), 1e-12);
  EXPECT_LE(max_abs_diff(w.bound, SpectrumVector{2, 2}), 1e-12);

  Rng rng(4);
  const ComplexMatrix b = random_hermitian(3, rng);
  const NoncommutingWitness z = maximal_noncommuting_unitary(ComplexMatrix::Identity(3, 3), b);
  EXPECT_LE(z.achieved[0], 1e-12);
  EXPECT_THROW(maximal_noncommuting_unitary(from_rows({{0, 1}, {0, 0}}), diag({1, 2})), DomainError);
}

TEST(NoncommutingWitness, SharpAndDominant) {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + rng.uniform_index(0, 4);
    const ComplexMatrix a = random_hermitian(n, rng), b = random_hermitian(n, rng);
    const NoncommutingWitness w = maximal_noncommuting_unitary(a, b);
    const double scale = std::max(1.0, w.bound[0]);
    EXPECT_LE(max_abs_diff(w.achieved, w.bound), 1e-8 * scale);

    // [Lambda, R D R^*] is anti-diagonal and skew-Hermitian
    const HermEigResult ea = herm_eig(a), eb = herm_eig(b);
    const ComplexMatrix u = ea.vectors.adjoint() * w.u * eb.vectors;
    Eigen::VectorXd la(static_cast<Eigen::Index>(n)), lb(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      la(static_cast<Eigen::Index>(i)) = ea.values[i];
      lb(static_cast<Eigen::Index>(i)) = eb.values[i];
    }
    const ComplexMatrix c = commutator(la.cast<Complex>().asDiagonal(),
                                       u * lb.cast<Complex>().asDiagonal() * u.adjoint());
    EXPECT_LE((c + c.adjoint()).norm(), 1e-10 * scale);
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
      for (Eigen::Index j = 0; j < c.cols(); ++j) {
        if (i + j != c.rows() - 1) EXPECT_LE(std::abs(c(i, j)), 1e-10 * scale);
      }
    }

    for (int s = 0; s < 20; ++s) {
      const ComplexMatrix v = random_unitary(n, rng);
      EXPECT_TRUE(weak_majorizes(w.achieved, singular_values(commutator(a, v * b * v.adjoint()))).holds);
    }
  }
}

TEST(SummationByParts, Examples) {
  std::vector<PartialIsometryTerm> t = summation_by_parts(diag({3, 1}));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_NEAR(t[0].weight, 2.0, 1e-14);
  EXPECT_NEAR(t[1].weight, 1.0, 1e-14);
  EXPECT_LE((t[0].x - diag({1, 0})).norm(), 1e-14);
  EXPECT_LE((t[1].x - diag({1, 1})).norm(), 1e-14);

  Rng rng(6);
  const ComplexMatrix u = random_unitary(3, rng);
  t = summation_by_parts(u);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].rank, 3u);
  EXPECT_NEAR(t[0].weight, 1.0, 1e-12);
  EXPECT_LE((t[0].x - u).norm(), 1e-12);
}

TEST(SummationByParts, ReconstructionAndTails) {
  Rng rng(7);
  for (int r = 0; r < 10; ++r) {
    const ComplexMatrix x = random_ginibre(3, 3, rng);
    const std::vector<PartialIsometryTerm> t = summation_by_parts(x);
    const SpectrumVector s = singular_values(x);
    ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
    for (const PartialIsometryTerm& term : t) {
      sum += term.weight * term.x;
      const SpectrumVector st = singular_values(term.x);
      for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(st[i], i < term.rank ? 1.0 : 0.0, 1e-12);
    }
    EXPECT_LE((sum - x).norm(), 1e-10 * s[0]);
    for (std::size_t k = 1; k <= 3; ++k) {
      double tail = 0.0;
      for (const PartialIsometryTerm& term : t) {
        if (term.rank >= k) tail += term.weight;
      }
      EXPECT_NEAR(tail, s[k - 1], 1e-12 * s[0]);
    }
  }
}

namespace {

void check_xi(const ComplexMatrix& a) {
  const XiDecomposition xi = hermitian_xi_decomposition(a);
  const auto n = static_cast<std::size_t>(a.rows());
  const double scale = std::max(1.0, a.norm());
  ComplexMatrix sum = xi.omega * xi.y;
  SpectrumVector acc(std::vector<double>(n, 0.0));
  for (const PartialIsometryTerm& t : xi.terms) {
    sum += t.weight * t.x;
    const SpectrumVector d = discrepancy_values_hermitian(t.x).values;
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(d[i], i < t.rank ? 1.0 : 0.0, 1e-12);
    acc = acc + d.scaled(t.weight);
  }
  EXPECT_LE((sum - a).norm(), 1e-9 * scale);
  EXPECT_LE(max_abs_diff(discrepancy_values_hermitian(xi.y).values, SpectrumVector(std::vector<double>(n, 0.0))),
            1e-12);
  EXPECT_LE(max_abs_diff(acc, discrepancy_values_hermitian(a).values), 1e-9 * scale);
}

}  // namespace

TEST(XiDecomposition, Examples) {
  XiDecomposition xi = hermitian_xi_decomposition(diag({3, 1, -1}));
  EXPECT_NEAR(std::abs(xi.omega - 1.0), 0.0, 1e-14);
  EXPECT_LE((xi.y - ComplexMatrix::Identity(3, 3)).norm(), 0.0);
  ASSERT_EQ(xi.terms.size(), 1u);
  EXPECT_NEAR(xi.terms[0].weight, 2.0, 1e-14);
  EXPECT_LE((xi.terms[0].x - diag({1, 0, -1})).norm(), 1e-14);

  xi = hermitian_xi_decomposition(diag({4, 2, -2, -4}));
  EXPECT_NEAR(std::abs(xi.omega), 0.0, 1e-14);
  ASSERT_EQ(xi.terms.size(), 2u);
  EXPECT_NEAR(xi.terms[0].weight, 2.0, 1e-14);
  EXPECT_LE((xi.terms[0].x - diag({1, 0, 0, -1})).norm(), 1e-14);
  EXPECT_NEAR(xi.terms[1].weight, 2.0, 1e-14);
  EXPECT_LE((xi.terms[1].x - diag({1, 1, -1, -1})).norm(), 1e-14);

  xi = hermitian_xi_decomposition(ComplexMatrix::Identity(4, 4) * 2.5);
  EXPECT_NEAR(std::abs(xi.omega - 2.5), 0.0, 1e-14);
  EXPECT_TRUE(xi.terms.empty());
  EXPECT_THROW(hermitian_xi_decomposition(from_rows({{0, 1}, {0, 0}})), DomainError);
}

TEST(XiDecomposition, RandomHermitian) {
  Rng rng(8);
  for (std::size_t n = 1; n <= 8; ++n) check_xi(random_hermitian(n, rng));
  check_xi(diag({5, 5, 1, 0, 0}));
}

TEST(OrbitDiameter, Examples) {
  const OrbitDiameter d = unitary_orbit_diameter_hermitian(diag({1, -1}), 1);
  EXPECT_NEAR(d.value, 2.0, 1e-14);
  EXPECT_LE((d.witness - special_matrix(SpecialKind::exchange, 2)).norm(), 1e-14);
  EXPECT_NEAR(unitary_orbit_diameter_hermitian(ComplexMatrix::Identity(3, 3) * 4.0, 2).value, 0.0, 1e-13);
  EXPECT_THROW(unitary_orbit_diameter_hermitian(from_rows({{0, 1}, {0, 0}}), 1), DomainError);
}

TEST(OrbitDiameter, RandomHermitianAttainsAndDominates) {
  Rng rng(9);
  const ComplexMatrix a = random_hermitian(5, rng);
  const DiscrepancyResult r = discrepancy_values_hermitian(a);
  for (std::size_t k = 1; k <= 5; ++k) {
    const OrbitDiameter d = unitary_orbit_diameter_hermitian(a, k);
    EXPECT_NEAR(d.value, 2.0 * r.partial_norms[k - 1], 1e-8);
  }
  const double d3 = unitary_orbit_diameter_hermitian(a, 3).value;
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix u = random_unitary(5, rng), v = random_unitary(5, rng);
    EXPECT_LE(ky_fan_norm(u * a * u.adjoint() - v * a * v.adjoint(), 3), d3 + 1e-8);
  }
}

// The rotated-frame pair (V R Q^*, V R P^*) respects the bound
// sigma(A U1 B U2^* A^-1) <_w sigma(B) lambda↓(A)/lambda↑(A) but does not
// maximize the left side: random unitary pairs already do better.
TEST(SimilarityWitness, BoundedButNotMaximal) {
  Rng rng(10);
  const ComplexMatrix g = random_ginibre(4, 4, rng);
  const ComplexMatrix a = g * g.adjoint() + 0.1 * ComplexMatrix::Identity(4, 4);
  const ComplexMatrix b = random_ginibre(4, 4, rng);
  const SimilarityWitness w = similarity_witness(a, b);
  EXPECT_TRUE(weak_majorizes(w.bound, w.achieved).holds);

  const ComplexMatrix ainv = a.inverse();
  double best = 0.0;
  for (int t = 0; t < 200; ++t) {
    const ComplexMatrix u1 = random_unitary(4, rng), u2 = random_unitary(4, rng);
    best = std::max(best, singular_values(a * u1 * b * u2.adjoint() * ainv)[0]);
  }
  EXPECT_GT(best, w.achieved[0]);
  EXPECT_THROW(similarity_witness(diag({1, -1}), b.topLeftCorner(2, 2)), DomainError);
}
