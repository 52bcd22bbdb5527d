#include "dkit/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <numeric>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "dkit/errors.hpp"

namespace dkit {

namespace {

void require_finite(const ComplexMatrix& a, const char* who) {
  if (!is_finite(a)) throw DomainError(std::string(who) + ": matrix has non-finite entries");
}

void require_square(const ComplexMatrix& a, const char* who) {
  if (!is_square(a)) {
    throw DomainError(std::string(who) + ": matrix must be square, got " +
                      std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

}  // namespace

bool is_finite(const ComplexMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    }
  }
  return true;
}

bool is_square(const ComplexMatrix& a) { return a.rows() == a.cols(); }

bool is_hermitian(const ComplexMatrix& a, double rel) {
  if (!is_square(a)) return false;
  const double scale = std::max(a.norm(), 1e-14);
  return (a - a.adjoint()).norm() <= rel * scale;
}

bool is_normal(const ComplexMatrix& a, double rel) {
  if (!is_square(a)) return false;
  const double scale = std::max(a.squaredNorm(), 1e-14);
  return (a * a.adjoint() - a.adjoint() * a).norm() <= rel * scale;
}

bool is_isometry(const ComplexMatrix& s, double tol) {
  if (s.rows() < s.cols()) return false;
  const ComplexMatrix gram = s.adjoint() * s;
  return (gram - ComplexMatrix::Identity(s.cols(), s.cols())).norm() <= tol;
}

SVDResult svd(const ComplexMatrix& a) {
  require_finite(a, "svd");
  Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) throw NumericalFailure("svd: Jacobi sweep did not converge");
  // Eigen already returns singular values in decreasing order.
  std::vector<double> s(solver.singularValues().data(),
                        solver.singularValues().data() + solver.singularValues().size());
  return {solver.matrixU(), SpectrumVector(std::move(s)), solver.matrixV()};
}

SpectrumVector singular_values(const ComplexMatrix& a) {
  require_finite(a, "singular_values");
  if (a.size() == 0) return {};
  Eigen::JacobiSVD<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("singular_values: Jacobi sweep did not converge");
  }
  const auto& sv = solver.singularValues();
  return SpectrumVector(std::vector<double>(sv.data(), sv.data() + sv.size()));
}

HermEigResult herm_eig(const ComplexMatrix& a) {
  require_square(a, "herm_eig");
  require_finite(a, "herm_eig");
  if (!is_hermitian(a)) throw DomainError("herm_eig: matrix is not Hermitian");
  const ComplexMatrix sym = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericalFailure("herm_eig: QL iteration failed");
  const Eigen::Index n = a.rows();
  HermEigResult out{ComplexMatrix(n, n), RealVector(static_cast<std::size_t>(n))};
  // Eigen sorts ascending; flip.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[static_cast<std::size_t>(i)] = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

double ky_fan_norm(const ComplexMatrix& a, std::size_t k) {
  const auto r = static_cast<std::size_t>(std::min(a.rows(), a.cols()));
  if (k < 1 || k > r) {
    throw DomainError("ky_fan_norm: k=" + std::to_string(k) + " outside [1, " + std::to_string(r) + "]");
  }
  return singular_values(a).partial_sum(k);
}

ComplexMatrix rotation_matrix(std::size_t n, double theta) {
  if (n < 2) throw DomainError("rotation_matrix: n must be >= 2");
  const auto N = static_cast<Eigen::Index>(n);
  ComplexMatrix r = ComplexMatrix::Zero(N, N);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  for (Eigen::Index i = 0; i < N / 2; ++i) {
    const Eigen::Index j = N - 1 - i;
    r(i, i) = c;
    r(j, j) = c;
    r(i, j) = -s;
    r(j, i) = s;
  }
  if (N % 2 == 1) r(N / 2, N / 2) = 1.0;
  return r;
}

std::optional<SpecialKind> parse_special_kind(std::string_view name) {
  if (name == "exchange") return SpecialKind::exchange;
  if (name == "cyclic_shift") return SpecialKind::cyclic_shift;
  if (name == "identity") return SpecialKind::identity;
  return std::nullopt;
}

ComplexMatrix special_matrix(SpecialKind kind, std::size_t n) {
  if (n < 1) throw DomainError("special_matrix: n must be >= 1");
  const auto N = static_cast<Eigen::Index>(n);
  ComplexMatrix m = ComplexMatrix::Zero(N, N);
  switch (kind) {
    case SpecialKind::exchange:
      for (Eigen::Index i = 0; i < N; ++i) m(i, N - 1 - i) = 1.0;
      return m;
    case SpecialKind::cyclic_shift:
      if (n < 2) throw DomainError("special_matrix: cyclic_shift needs n >= 2");
      for (Eigen::Index i = 0; i < N; ++i) m(i, (i + 1) % N) = 1.0;
      return m;
    case SpecialKind::identity:
      return ComplexMatrix::Identity(N, N);
  }
  throw DomainError("special_matrix: unknown kind");
}

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  // Row-major fill so the stream order does not depend on storage order.
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.complex_normal();
  }
  return g;
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  if (n < 1) throw DomainError("random_unitary: n must be >= 1");
  const ComplexMatrix g = random_ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(i) *= d / mag;
  }
  return q;
}

ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(n, rng);
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  const ComplexMatrix g = random_ginibre(n, n, rng);
  return (g + g.adjoint()) / 2.0;
}

ComplexMatrix symplectic_j(std::size_t n) {
  const auto N = static_cast<Eigen::Index>(n);
  ComplexMatrix j = ComplexMatrix::Zero(2 * N, 2 * N);
  j.topRightCorner(N, N).setIdentity();
  j.bottomLeftCorner(N, N) = -ComplexMatrix::Identity(N, N);
  return j;
}

ComplexMatrix random_hamiltonian(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw DomainError("random_hamiltonian: n must be >= 1");
  Rng rng(seed);
  const auto m = static_cast<Eigen::Index>(2 * n);
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) g(i, j) = rng.normal();
  }
  const Eigen::MatrixXd sym = (g + g.transpose()) / 2.0;
  return symplectic_j(n) * sym.cast<Complex>();
}

ComplexMatrix hermitian_dilation(const ComplexMatrix& a) {
  require_square(a, "hermitian_dilation");
  const Eigen::Index n = a.rows();
  ComplexMatrix x = ComplexMatrix::Zero(2 * n, 2 * n);
  x.topRightCorner(n, n) = a;
  x.bottomLeftCorner(n, n) = a.adjoint();
  return x;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "direct_sum");
  require_square(b, "direct_sum");
  const Eigen::Index na = a.rows();
  const Eigen::Index nb = b.rows();
  ComplexMatrix out = ComplexMatrix::Zero(na + nb, na + nb);
  out.topLeftCorner(na, na) = a;
  out.bottomRightCorner(nb, nb) = b;
  return out;
}

ComplexMatrix orthogonal_complement(const ComplexMatrix& s) {
  const Eigen::Index n = s.rows();
  const Eigen::Index k = s.cols();
  if (k == n) return ComplexMatrix(n, 0);
  // Full QR of S: trailing n-k columns of Q span range(S)^perp.
  Eigen::HouseholderQR<ComplexMatrix> qr(s);
  const ComplexMatrix q = qr.householderQ();
  return q.rightCols(n - k);
}

RealVector principal_angles(const ComplexMatrix& s, const ComplexMatrix& t) {
  if (s.rows() != t.rows() || s.cols() != t.cols()) {
    throw DomainError("principal_angles: S and T must have the same shape");
  }
  if (!is_isometry(s) || !is_isometry(t)) {
    throw DomainError("principal_angles: inputs must have orthonormal columns");
  }
  const auto k = static_cast<std::size_t>(s.cols());
  // Cosines resolve large angles well, sines resolve small ones; take each
  // angle from whichever is better conditioned.
  const SpectrumVector cosines = singular_values(s.adjoint() * t);
  const ComplexMatrix residual = t - s * (s.adjoint() * t);
  const SpectrumVector sines = singular_values(residual);
  RealVector angles(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double sn = std::clamp(i < sines.size() ? sines[i] : 0.0, 0.0, 1.0);
    const double cs = std::clamp(cosines[k - 1 - i], 0.0, 1.0);
    angles[i] = (sn * sn < 0.5) ? std::asin(sn) : std::acos(cs);
  }
  std::stable_sort(angles.begin(), angles.end(), std::greater<>());
  return angles;
}

ComplexMatrix traceless_partial_isometry(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n < 2) throw DomainError("traceless_partial_isometry: n must be >= 2");
  if (k < 1 || k > n) throw DomainError("traceless_partial_isometry: k must be in [1, n]");
  const auto N = static_cast<Eigen::Index>(n);
  ComplexMatrix m0 = ComplexMatrix::Zero(N, N);
  // pi(i) = i + 1 (mod n when k = n): injective with no fixed points.
  for (std::size_t i = 0; i < k; ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    const auto row = static_cast<Eigen::Index>((i + 1) % n);
    m0(row, col) = 1.0;
  }
  const ComplexMatrix q = random_unitary(n, seed);
  return q * m0 * q.adjoint();
}

ComplexMatrix exp_i_hermitian(const ComplexMatrix& x) {
  const HermEigResult eig = herm_eig(x);
  const Eigen::Index n = x.rows();
  ComplexVector phases(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    phases(i) = std::polar(1.0, eig.values[static_cast<std::size_t>(i)]);
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix expm(const ComplexMatrix& a) {
  require_square(a, "expm");
  require_finite(a, "expm");
  return a.exp();
}

ComplexMatrix abs_matrix(const ComplexMatrix& a) {
  require_square(a, "abs_matrix");
  const SVDResult d = svd(a);
  Eigen::VectorXd s(static_cast<Eigen::Index>(d.singulars.size()));
  for (std::size_t i = 0; i < d.singulars.size(); ++i) s(static_cast<Eigen::Index>(i)) = d.singulars[i];
  return d.right * s.cast<Complex>().asDiagonal() * d.right.adjoint();
}

ComplexVector eigenvalues(const ComplexMatrix& a) {
  require_square(a, "eigenvalues");
  require_finite(a, "eigenvalues");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, false);
  if (solver.info() != Eigen::Success) throw NumericalFailure("eigenvalues: Schur iteration failed");
  return solver.eigenvalues();
}

std::uint64_t matrix_digest(const ComplexMatrix& a, std::uint64_t seed) {
  std::uint64_t h = seed;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t dims[2] = {a.rows(), a.cols()};
  mix(dims, sizeof(dims));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double parts[2] = {a(i, j).real() + 0.0, a(i, j).imag() + 0.0};  // +0.0 folds -0
      mix(parts, sizeof(parts));
    }
  }
  return h;
}

}  // namespace dkit
