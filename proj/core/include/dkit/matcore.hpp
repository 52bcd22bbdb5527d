#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "dkit/rng.hpp"
#include "dkit/spectrum.hpp"
#include "dkit/types.hpp"

namespace dkit {

struct SVDResult {
  ComplexMatrix left;       // n x r, orthonormal columns
  SpectrumVector singulars; // length r = min(n, m)
  ComplexMatrix right;      // m x r, orthonormal columns
};

struct HermEigResult {
  ComplexMatrix vectors;    // unitary, columns match `values`
  RealVector values;        // nonincreasing
};

/// Thin SVD A = left * diag(singulars) * right^*.
SVDResult svd(const ComplexMatrix& a);

/// Singular values only, nonincreasing.
SpectrumVector singular_values(const ComplexMatrix& a);

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted
/// nonincreasing. Throws DomainError if `a` is not Hermitian to within
/// 1e-10 * ||a||_F.
HermEigResult herm_eig(const ComplexMatrix& a);

/// Sum of the k largest singular values, 1 <= k <= min(rows, cols).
double ky_fan_norm(const ComplexMatrix& a, std::size_t k);

/// Centrosymmetric real rotation R_n(theta): the pair (i, n-1-i) rotates by
/// theta, the central entry of odd n stays 1.
ComplexMatrix rotation_matrix(std::size_t n, double theta);

enum class SpecialKind { exchange, cyclic_shift, identity };

std::optional<SpecialKind> parse_special_kind(std::string_view name);

/// exchange: J_n (anti-identity). cyclic_shift: C[i, (i+1) mod n] = 1.
ComplexMatrix special_matrix(SpecialKind kind, std::size_t n);

/// Complex Ginibre matrix: iid circular Gaussian entries with E|z|^2 = 1.
ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// diag(R) moved into Q.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);
ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed);

/// (G + G^*) / 2 for a Ginibre G.
ComplexMatrix random_hermitian(std::size_t n, Rng& rng);

/// Real 2n x 2n Hamiltonian matrix H = J S with S real symmetric and
/// J = [[0, I], [-I, 0]].
ComplexMatrix random_hamiltonian(std::size_t n, std::uint64_t seed);

/// The block matrix J = [[0, I_n], [-I_n, 0]] used by random_hamiltonian.
ComplexMatrix symplectic_j(std::size_t n);

/// [[0, A], [A^*, 0]].
ComplexMatrix hermitian_dilation(const ComplexMatrix& a);

/// Block-diagonal A ⊕ B. Either operand may be 0 x 0.
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

/// Principal angles between the column spaces of two n x k isometries,
/// sorted nonincreasing, in [0, pi/2].
RealVector principal_angles(const ComplexMatrix& s, const ComplexMatrix& t);

/// Random element of the traceless rank-k partial isometries P^0_k(n):
/// Q (sum_i e_{pi(i)} e_i^*) Q^* with pi(i) != i and Q Haar.
ComplexMatrix traceless_partial_isometry(std::size_t n, std::size_t k, std::uint64_t seed);

// ---- small helpers shared across modules ---------------------------------

bool is_finite(const ComplexMatrix& a);
bool is_square(const ComplexMatrix& a);
/// ||A - A^*||_F <= rel * max(||A||_F, 1e-14).
bool is_hermitian(const ComplexMatrix& a, double rel = 1e-10);
/// ||A A^* - A^* A||_F <= rel * max(||A||_F^2, 1e-14).
bool is_normal(const ComplexMatrix& a, double rel = 1e-10);
bool is_isometry(const ComplexMatrix& s, double tol = 1e-8);

/// Orthonormal basis of the orthogonal complement of range(S), S isometry.
ComplexMatrix orthogonal_complement(const ComplexMatrix& s);

/// e^{iX} for Hermitian X through its eigendecomposition.
ComplexMatrix exp_i_hermitian(const ComplexMatrix& x);

/// General matrix exponential (Pade with scaling and squaring).
ComplexMatrix expm(const ComplexMatrix& a);

/// |A| = (A^* A)^{1/2}.
ComplexMatrix abs_matrix(const ComplexMatrix& a);

/// Eigenvalues of a general square matrix (unordered).
ComplexVector eigenvalues(const ComplexMatrix& a);

/// 64-bit FNV-1a digest of shape and entry bytes.
std::uint64_t matrix_digest(const ComplexMatrix& a, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace dkit
