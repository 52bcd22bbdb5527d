#include "dkit/registry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <thread>

#include "dkit/commutator.hpp"
#include "dkit/errors.hpp"
#include "dkit/matcore.hpp"

namespace dkit {

namespace {

constexpr std::array<const char*, 26> kNames = {"R1",  "R2",  "R3",  "R4",  "R5",  "R6",  "R7",
                                                "R8",  "R9",  "R10", "R11", "R12", "R13", "R14",
                                                "R15", "R16", "R17", "R18", "R19", "R20", "R21",
                                                "R22", "R23", "R24", "R25", "R26"};

constexpr std::array<const char*, 26> kClaims = {
    "|delta(A)-delta(B)| <_w delta(A+-B) <_w delta(A)+delta(B)",
    "delta(A) <_w sigma(A)",
    "delta(C(A)) <_w delta(A) for a block pinching C",
    "delta(L(A)) <_w delta(A) for the two-block anti-pinching L",
    "sigma([[0,A2],[A1,0]]) = delta([[0,A2],[A1,0]]) <_w delta([[A3,A2],[A1,A4]])",
    "sigma(S^* X S_perp) <_w delta(X) restricted to min(k, n-k)",
    "delta(exp(iX)) <_w sigma(X) for Hermitian X",
    "delta(exp(i|A|)) <_w sigma(A)",
    "delta(|A|) = |sigma_desc - sigma_asc|/2 <_w delta(A)",
    "delta(P) <_w delta(QP) for PSD P and unitary Q",
    "Theta(S, exp(iX) S) <_w delta(X) restricted to min(k, n-k)",
    "(delta(A,B), delta(A,B)) <_w delta(A + B direct sum)",
    "mu_2(delta(A)) <_w mu_2(sigma(A)) for PSD A",
    "mu_k(delta(A + ... + A)) = delta(A)",
    "sigma(AX - XB) <_w 2 delta(A,B) sigma(X)",
    "sigma([B,A]) <_w 2 delta(B) sigma(A)",
    "sigma([A,B]) <_w 2 delta(A) delta(B) for A Hermitian or normal with collinear spectrum",
    "sigma(P X (I-P)) <_w delta(X) and ||[X,P]||_(k) <= sum_{i<=min(q,k)} delta_i(X)",
    "sigma(A-B) <_w 2 delta(A,B) <_w 2 mu_2(delta(A + B direct sum))",
    "sigma(A) = 2 delta(A, 0)",
    "delta(X,X^*) and delta(-X,X^*) as real-shift minima; sigma(X - X^*) <_w 2 delta(X,X^*)",
    "sigma([A1,[A2,...,[A_{m-1},A_m]]]) <_w 2^{m-1} sigma(A1) delta(A2)...delta(Am)",
    "sigma(e^A B e^-A) <_w sigma(B) exp(2 delta(A)); sigma(P B P^-1) <_w sigma(B) lambda_desc(P)/lambda_asc(P)",
    "sigma(A^2 B^2 - (AB)^2) <_w 2 delta(A) delta(B) sigma(A) sigma(B) for Hermitian A",
    "delta_i(A) >= delta_i(B) >= delta_{i+2(n-m)}(A) for a principal submatrix B of Hermitian A",
    "sigma([A,B]) <_w 2 delta(A) delta(B) (conjecture)"};

std::size_t index_of(InequalityId id) { return static_cast<std::size_t>(id); }

std::vector<double> prefix(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  std::partial_sum(v.begin(), v.end(), out.begin());
  return out;
}

std::vector<double> pad(std::vector<double> v, std::size_t n) {
  if (v.size() < n) v.resize(n, 0.0);
  return v;
}

InequalityPart weak_part(std::string label, const SpectrumVector& lhs, const SpectrumVector& rhs,
                         const Tolerance& tol) {
  const InequalityVerdict v = weak_majorizes(rhs, lhs, tol);
  const std::size_t n = v.margins.size();
  InequalityPart p;
  p.label = std::move(label);
  p.kind = PartKind::weak;
  p.lhs = lhs.padded(n).vec();
  p.rhs = rhs.padded(n).vec();
  p.lhs_partial = v.lower_partial;
  p.rhs_partial = v.upper_partial;
  p.margins = v.margins;
  p.min_margin = v.min_margin;
  p.threshold = v.threshold;
  p.holds = v.holds;
  return p;
}

/// Compares prefix sums of the vectors as given (no re-sorting).
InequalityPart equality_part(std::string label, std::vector<double> lhs, std::vector<double> rhs,
                             const Tolerance& tol) {
  const std::size_t n = std::max(lhs.size(), rhs.size());
  InequalityPart p;
  p.label = std::move(label);
  p.kind = PartKind::equality;
  p.lhs = pad(std::move(lhs), n);
  p.rhs = pad(std::move(rhs), n);
  p.lhs_partial = prefix(p.lhs);
  p.rhs_partial = prefix(p.rhs);
  p.margins.resize(n);
  p.min_margin = n == 0 ? 0.0 : INFINITY;
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    p.margins[k] = -std::abs(p.rhs_partial[k] - p.lhs_partial[k]);
    p.min_margin = std::min(p.min_margin, p.margins[k]);
    scale = std::max({scale, std::abs(p.rhs_partial[k]), std::abs(p.lhs_partial[k])});
  }
  p.threshold = tol.threshold(scale);
  p.holds = p.min_margin >= -p.threshold;
  return p;
}

InequalityPart elementwise_part(std::string label, std::vector<double> lhs, std::vector<double> rhs,
                                const Tolerance& tol) {
  const std::size_t n = std::max(lhs.size(), rhs.size());
  InequalityPart p;
  p.label = std::move(label);
  p.kind = PartKind::elementwise;
  p.lhs = pad(std::move(lhs), n);
  p.rhs = pad(std::move(rhs), n);
  p.lhs_partial = prefix(p.lhs);
  p.rhs_partial = prefix(p.rhs);
  p.margins.resize(n);
  p.min_margin = n == 0 ? 0.0 : INFINITY;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p.margins[i] = p.rhs[i] - p.lhs[i];
    p.min_margin = std::min(p.min_margin, p.margins[i]);
    scale = std::max(scale, std::abs(p.rhs[i]));
  }
  p.threshold = tol.threshold(scale);
  p.holds = p.min_margin >= -p.threshold;
  return p;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

std::size_t square_size(const ComplexMatrix& a, const std::string& name) {
  require(is_square(a) && a.rows() > 0, "operand " + name + " must be square and nonempty");
  return static_cast<std::size_t>(a.rows());
}

void same_size(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "operands must have equal size");
}

SpectrumVector sigma(const ComplexMatrix& a) { return singular_values(a); }

/// Entries of v beyond the first m replaced by zero.
SpectrumVector restrict_to(const SpectrumVector& v, std::size_t m) {
  return v.head(std::min(m, v.size())).padded(v.size());
}

ComplexMatrix pinch(const ComplexMatrix& a, const std::vector<std::vector<std::size_t>>& blocks) {
  const auto n = static_cast<std::size_t>(a.rows());
  std::vector<int> label(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    require(!blocks[b].empty(), "pinching blocks must be nonempty");
    for (std::size_t i : blocks[b]) {
      require(i < n && label[i] < 0, "pinching blocks must partition the indices");
      label[i] = static_cast<int>(b);
    }
  }
  require(std::none_of(label.begin(), label.end(), [](int l) { return l < 0; }),
          "pinching blocks must cover every index");
  ComplexMatrix c = a;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (label[i] != label[j]) c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0.0;
    }
  }
  return c;
}

bool collinear_normal(const ComplexMatrix& a) {
  if (!is_normal(a)) return false;
  const ComplexVector ev = eigenvalues(a);
  const Complex mean = ev.mean();
  Complex dir{};
  double far = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i) - mean) > far) {
      far = std::abs(ev(i) - mean);
      dir = (ev(i) - mean) / far;
    }
  }
  if (far == 0.0) return true;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(((ev(i) - mean) * std::conj(dir)).imag()) > 1e-8 * std::max(1.0, far)) return false;
  }
  return true;
}

SpectrumVector dup(const SpectrumVector& v) {
  std::vector<double> out;
  for (double x : v) {
    out.push_back(x);
    out.push_back(x);
  }
  return SpectrumVector(std::move(out));
}

/// |lambda_desc - lambda_asc| re-sorted.
SpectrumVector spread_vector(const RealVector& lam) {
  const std::size_t n = lam.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::abs(lam[i] - lam[n - 1 - i]);
  return SpectrumVector(std::move(out));
}

ComplexMatrix nested(const std::vector<ComplexMatrix>& chain) {
  ComplexMatrix inner = chain.back();
  for (std::size_t j = chain.size() - 1; j-- > 0;) inner = commutator(chain[j], inner);
  return inner;
}

}  // namespace

std::string to_string(InequalityId id) { return kNames[index_of(id)]; }

std::optional<InequalityId> parse_inequality_id(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (name == kNames[i]) return static_cast<InequalityId>(i);
  }
  return std::nullopt;
}

std::vector<InequalityId> proven_inequalities() {
  std::vector<InequalityId> out;
  for (std::size_t i = 0; i < 25; ++i) out.push_back(static_cast<InequalityId>(i));
  return out;
}

std::vector<InequalityId> all_inequalities() {
  std::vector<InequalityId> out = proven_inequalities();
  out.push_back(InequalityId::R26);
  return out;
}

std::string describe(InequalityId id) { return kClaims[index_of(id)]; }

std::string to_string(PartKind kind) {
  switch (kind) {
    case PartKind::weak: return "weak";
    case PartKind::equality: return "equality";
    case PartKind::elementwise: return "elementwise";
  }
  return "unknown";
}

const ComplexMatrix& InequalityInputs::get(const std::string& name) const {
  const auto it = matrices.find(name);
  if (it == matrices.end()) throw DomainError("missing input matrix '" + name + "'");
  return it->second;
}

double min_real_shift_kyfan(const ComplexMatrix& x, std::size_t k, bool imaginary) {
  const auto n = square_size(x, "X");
  require(k >= 1 && k <= n, "min_real_shift_kyfan: k out of range");
  const Complex unit = imaginary ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
  const Complex mu = x.trace() / static_cast<double>(n);
  ComplexMatrix centered = x;
  centered.diagonal().array() -= mu;
  const double reach = 2.0 * sigma(centered)[0];
  // The minimizer t satisfies |t + <mu, unit>| <= reach.
  const double c = -(mu * std::conj(unit)).real();
  auto f = [&](double t) {
    ComplexMatrix m = x;
    m.diagonal().array() += t * unit;
    return sigma(m).partial_sum(k);
  };
  if (reach == 0.0) return f(c);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = c - reach, hi = c + reach;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-13 * std::max(1.0, reach)) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min({f1, f2, f((lo + hi) / 2.0)});
}

InequalityReport evaluate_inequality(InequalityId id, const InequalityInputs& in, const Tolerance& tol,
                                     const AlphaSolverConfig& cfg) {
  auto delta = [&cfg](const ComplexMatrix& m) { return discrepancy_values(m, cfg).values; };
  auto joint = [&cfg](const ComplexMatrix& a, const ComplexMatrix& b) {
    return joint_discrepancy_values(a, b, cfg).values;
  };

  InequalityReport r;
  r.id = id;
  r.tol = tol;
  std::vector<InequalityPart>& parts = r.parts;

  switch (id) {
    case InequalityId::R1: {
      const ComplexMatrix& a = in.get("A");
      const ComplexMatrix& b = in.get("B");
      square_size(a, "A");
      same_size(a, b);
      const SpectrumVector da = delta(a), db = delta(b);
      const SpectrumVector dsum = delta(a + b), ddiff = delta(a - b);
      const SpectrumVector gap = abs_difference(da, db);
      parts.push_back(weak_part("|delta(A)-delta(B)| <_w delta(A+B)", gap, dsum, tol));
      parts.push_back(weak_part("|delta(A)-delta(B)| <_w delta(A-B)", gap, ddiff, tol));
      parts.push_back(weak_part("delta(A+B) <_w delta(A)+delta(B)", dsum, da + db, tol));
      parts.push_back(weak_part("delta(A-B) <_w delta(A)+delta(B)", ddiff, da + db, tol));
      break;
    }
    case InequalityId::R2: {
      const ComplexMatrix& a = in.get("A");
      square_size(a, "A");
      parts.push_back(weak_part("delta(A) <_w sigma(A)", delta(a), sigma(a), tol));
      break;
    }
    case InequalityId::R3: {
      const ComplexMatrix& a = in.get("A");
      square_size(a, "A");
      parts.push_back(weak_part("delta(C(A)) <_w delta(A)", delta(pinch(a, in.blocks)), delta(a), tol));
      break;
    }
    case InequalityId::R4: {
      const ComplexMatrix& a = in.get("A");
      square_size(a, "A");
      require(in.blocks.size() == 2, "R4: anti-pinching needs a two-block partition");
      const ComplexMatrix l = a - pinch(a, in.blocks);
      parts.push_back(weak_part("delta(L(A)) <_w delta(A)", delta(l), delta(a), tol));
      break;
    }
    case InequalityId::R5: {
      const ComplexMatrix& a1 = in.get("A1");
      const ComplexMatrix& a2 = in.get("A2");
      const ComplexMatrix& a3 = in.get("A3");
      const ComplexMatrix& a4 = in.get("A4");
      const auto m = static_cast<Eigen::Index>(square_size(a1, "A1"));
      same_size(a1, a2);
      same_size(a1, a3);
      same_size(a1, a4);
      ComplexMatrix off = ComplexMatrix::Zero(2 * m, 2 * m);
      off.topRightCorner(m, m) = a2;
      off.bottomLeftCorner(m, m) = a1;
      ComplexMatrix full = off;
      full.topLeftCorner(m, m) = a3;
      full.bottomRightCorner(m, m) = a4;
      std::vector<double> merged = sigma(a1).vec();
      for (double s : sigma(a2)) merged.push_back(s);
      const SpectrumVector s_off = sigma(off);
      const SpectrumVector d_off = delta(off);
      parts.push_back(equality_part("sigma(off) = sigma(A1) merged with sigma(A2)", s_off.vec(),
                                    SpectrumVector(merged).vec(), tol));
      parts.push_back(equality_part("sigma(off) = delta(off)", s_off.vec(), d_off.vec(), tol));
      parts.push_back(weak_part("delta(off) <_w delta(full)", d_off, delta(full), tol));
      break;
    }
    case InequalityId::R6: {
      const ComplexMatrix& x = in.get("X");
      const ComplexMatrix& s = in.get("S");
      const std::size_t n = square_size(x, "X");
      require(static_cast<std::size_t>(s.rows()) == n && s.cols() >= 1 && s.cols() < s.rows(),
              "R6: S must be n x k with 1 <= k < n");
      require(is_isometry(s), "R6: S must have orthonormal columns");
      const auto k = static_cast<std::size_t>(s.cols());
      const ComplexMatrix sp = orthogonal_complement(s);
      parts.push_back(weak_part("sigma(S^* X S_perp) <_w delta(X)|min(k,n-k)", sigma(s.adjoint() * x * sp),
                                restrict_to(delta(x), std::min(k, n - k)), tol));
      break;
    }
    case InequalityId::R7: {
      const ComplexMatrix& x = in.get("X");
      square_size(x, "X");
      require(is_hermitian(x), "R7: X must be Hermitian");
      parts.push_back(weak_part("delta(exp(iX)) <_w sigma(X)", delta(exp_i_hermitian(x)), sigma(x), tol));
      break;
    }
    case InequalityId::R8: {
      const ComplexMatrix& a = in.get("A");
      square_size(a, "A");
      const ComplexMatrix absa = abs_matrix(a);
      parts.push_back(weak_part("delta(exp(i|A|)) <_w sigma(A)",
                                delta(exp_i_hermitian((absa + absa.adjoint()) / 2.0)), sigma(a), tol));
      break;
    }
    case InequalityId::R9: {
      const ComplexMatrix& a = in.get("A");
      square_size(a, "A");
      const ComplexMatrix absa = abs_matrix(a);
      const SpectrumVector d_abs = delta((absa + absa.adjoint()) / 2.0);
      const SpectrumVector s = sigma(a);
      const SpectrumVector spread = spread_vector(s.vec()).scaled(0.5);
      parts.push_back(equality_part("delta(|A|) = |sigma_desc - sigma_asc|/2", d_abs.vec(), spread.vec(), tol));
      parts.push_back(weak_part("delta(|A|) <_w delta(A)", d_abs, delta(a), tol));
      break;
    }
    case InequalityId::R10: {
      const ComplexMatrix& p = in.get("P");
      const ComplexMatrix& q = in.get("Q");
      square_size(p, "P");
      same_size(p, q);
      require(is_hermitian(p), "R10: P must be Hermitian positive semidefinite");
      const HermEigResult ep = herm_eig(p);
      require(ep.values.back() >= -1e-10 * std::max(1.0, std::abs(ep.values.front())),
              "R10: P must be positive semidefinite");
      require(is_isometry(q), "R10: Q must be unitary");
      parts.push_back(weak_part("delta(P) <_w delta(QP)", delta(p), delta(q * p), tol));
      break;
    }
    case InequalityId::R11: {
      const ComplexMatrix& x = in.get("X");
      const ComplexMatrix& s = in.get("S");
      const std::size_t n = square_size(x, "X");
      require(is_hermitian(x), "R11: X must be Hermitian");
      require(static_cast<std::size_t>(s.rows()) == n && s.cols() >= 1 && s.cols() <= s.rows(),
              "R11: S must be n x k with 1 <= k <= n");
      require(is_isometry(s), "R11: S must have orthonormal columns");
      const auto k = static_cast<std::size_t>(s.cols());
      const ComplexMatrix t = exp_i_hermitian(x) * s;
      parts.push_back(weak_part("Theta(S, exp(iX)S) <_w delta(X)|min(k,n-k)",
                                SpectrumVector(principal_angles(s, t)),
                                restrict_to(delta(x), std::min(k, n - k)), tol));
      break;
    }
    case InequalityId::R12: {
      const ComplexMatrix& a = in.get("A");
      const ComplexMatrix& b = in.get("B");
      square_size(a, "A");
      same_size(a, b);
      parts.push_back(weak_part("(delta(A,B), delta(A,B)) <_w delta(A+B)", dup(joint(a, b)),
                                delta(direct_sum(a, b)), tol));
      break;
    }
    case InequalityId::R13: {
      const ComplexMatrix& a = in.get("A");
      const std::size_t n = square_size(a, "A");
      require(n % 2 == 0, "R13: mu_2 needs even n");
      require(is_hermitian(a), "R13: A must be positive semidefinite");
      const HermEigResult ea = herm_eig(a);
      require(ea.values.back() >= -1e-10 * std::max(1.0, std::abs(ea.values.front())),
              "R13: A must be positive semidefinite");
      const SpectrumVector d = delta(a);
      const SpectrumVector s = sigma(a);
      parts.push_back(weak_part("mu_2(delta(A)) <_w mu_2(sigma(A))", SpectrumVector(mu_k(d.values(), 2)),
                                SpectrumVector(mu_k(s.values(), 2)), tol));
      break;
    }
    case InequalityId::R14: {
      const ComplexMatrix& a = in.get("A");
      square_size(a, "A");
      require(in.copies >= 1, "R14: copies must be positive");
      ComplexMatrix sum = a;
      for (std::size_t c = 1; c < in.copies; ++c) sum = direct_sum(sum, a);
      const SpectrumVector d_sum = delta(sum);
      parts.push_back(equality_part("mu_c(delta(A + ... + A)) = delta(A)", mu_k(d_sum.values(), in.copies),
                                    delta(a).vec(), tol));
      break;
    }
    case InequalityId::R15: {
      const ComplexMatrix& a = in.get("A");
      const ComplexMatrix& b = in.get("B");
      const ComplexMatrix& x = in.get("X");
      square_size(a, "A");
      same_size(a, b);
      same_size(a, x);
      parts.push_back(weak_part("sigma(AX - XB) <_w 2 delta(A,B) sigma(X)", sigma(generalized_commutator(a, x, b)),
                                (joint(a, b) * sigma(x)).scaled(2.0), tol));
      break;
    }
    case InequalityId::R16: {
      const ComplexMatrix& a = in.get("A");
      const ComplexMatrix& b = in.get("B");
      square_size(a, "A");
      same_size(a, b);
      parts.push_back(weak_part("sigma([B,A]) <_w 2 delta(B) sigma(A)", sigma(commutator(b, a)),
                                (delta(b) * sigma(a)).scaled(2.0), tol));
      break;
    }
    case InequalityId::R17: {
      const ComplexMatrix& a = in.get("A");
      const ComplexMatrix& b = in.get("B");
      square_size(a, "A");
      same_size(a, b);
      require(is_hermitian(a) || collinear_normal(a),
              "R17: A must be Hermitian or normal with collinear eigenvalues");
      parts.push_back(weak_part("sigma([A,B]) <_w 2 delta(A) delta(B)", sigma(commutator(a, b)),
                                (delta(a) * delta(b)).scaled(2.0), tol));
      break;
    }
    case InequalityId::R18: {
      const ComplexMatrix& x = in.get("X");
      const ComplexMatrix& p = in.get("P");
      const std::size_t n = square_size(x, "X");
      same_size(x, p);
      require(is_hermitian(p) && (p * p - p).norm() <= 1e-8 * std::max(1.0, p.norm()),
              "R18: P must be an orthogonal projection");
      const auto rank = static_cast<std::size_t>(std::llround(p.trace().real()));
      const std::size_t q = std::min(2 * rank, 2 * n - 2 * rank);
      const ComplexMatrix id = ComplexMatrix::Identity(x.rows(), x.cols());
      const SpectrumVector dx = delta(x);
      parts.push_back(weak_part("sigma(P X (I-P)) <_w delta(X)", sigma(p * x * (id - p)), dx, tol));
      parts.push_back(weak_part("||[X,P]||_(k) <= sum_{i<=min(q,k)} delta_i(X)", sigma(commutator(x, p)),
                                restrict_to(dx, q), tol));
      break;
    }
    case InequalityId::R19: {
      const ComplexMatrix& a = in.get("A");
      const ComplexMatrix& b = in.get("B");
      square_size(a, "A");
      same_size(a, b);
      const SpectrumVector two_joint = joint(a, b).scaled(2.0);
      parts.push_back(weak_part("sigma(A-B) <_w 2 delta(A,B)", sigma(a - b), two_joint, tol));
      parts.push_back(weak_part("2 delta(A,B) <_w 2 mu_2(delta(A+B))", two_joint,
                                SpectrumVector(mu_k(delta(direct_sum(a, b)).values(), 2)).scaled(2.0), tol));
      break;
    }
    case InequalityId::R20: {
      const ComplexMatrix& a = in.get("A");
      square_size(a, "A");
      const ComplexMatrix zero = ComplexMatrix::Zero(a.rows(), a.cols());
      parts.push_back(equality_part("sigma(A) = 2 delta(A,0)", sigma(a).vec(), joint(a, zero).scaled(2.0).vec(), tol));
      break;
    }
    case InequalityId::R21: {
      const ComplexMatrix& x = in.get("X");
      const std::size_t n = square_size(x, "X");
      const ComplexMatrix xs = x.adjoint();
      const DiscrepancyResult j1 = joint_discrepancy_values(x, xs, cfg);
      const DiscrepancyResult j2 = joint_discrepancy_values(-x, xs, cfg);
      std::vector<double> real_min(n), imag_min(n);
      double prev_r = 0.0, prev_i = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        const double r_k = min_real_shift_kyfan(x, k, false);
        const double i_k = min_real_shift_kyfan(x, k, true);
        real_min[k - 1] = r_k - prev_r;
        imag_min[k - 1] = i_k - prev_i;
        prev_r = r_k;
        prev_i = i_k;
      }
      parts.push_back(equality_part("delta(X,X^*) = min_t ||X + tI||", j1.values.vec(), real_min, tol));
      parts.push_back(equality_part("delta(-X,X^*) = min_t ||X + itI||", j2.values.vec(), imag_min, tol));
      parts.push_back(weak_part("sigma(X - X^*) <_w 2 delta(X,X^*)", sigma(x - xs), j1.values.scaled(2.0), tol));
      break;
    }
    case InequalityId::R22: {
      const std::vector<ComplexMatrix>& chain = in.chain;
      require(chain.size() >= 2 && chain.size() <= 4, "R22: chain length must be between 2 and 4");
      square_size(chain[0], "A1");
      for (const ComplexMatrix& m : chain) same_size(chain[0], m);
      const SpectrumVector lhs = sigma(nested(chain));
      const double factor = std::pow(2.0, static_cast<double>(chain.size() - 1));
      std::vector<SpectrumVector> ds;
      for (const ComplexMatrix& m : chain) ds.push_back(delta(m));
      SpectrumVector spec_bound = sigma(chain[0]);
      for (std::size_t j = 1; j < chain.size(); ++j) spec_bound = spec_bound * ds[j];
      parts.push_back(weak_part("sigma(nested) <_w 2^{m-1} sigma(A1) delta(A2)...delta(Am)", lhs,
                                spec_bound.scaled(factor), tol));
      SpectrumVector chained = sigma(chain.back());
      for (std::size_t j = 0; j + 1 < chain.size(); ++j) chained = chained * ds[j];
      parts.push_back(weak_part("sigma(nested) <_w 2^{m-1} delta(A1)...delta(A_{m-1}) sigma(Am)", lhs,
                                chained.scaled(factor), tol));
      if (std::all_of(chain.begin(), chain.end(), [](const ComplexMatrix& m) { return is_hermitian(m); })) {
        SpectrumVector prod = spread_vector(herm_eig(chain[0]).values);
        for (std::size_t j = 1; j < chain.size(); ++j) prod = prod * spread_vector(herm_eig(chain[j]).values);
        parts.push_back(weak_part("sigma(nested) <_w prod |lambda_desc - lambda_asc| / 2", lhs, prod.scaled(0.5), tol));
      }
      break;
    }
    case InequalityId::R23: {
      const ComplexMatrix& a = in.get("A");
      const ComplexMatrix& b = in.get("B");
      square_size(a, "A");
      same_size(a, b);
      const ComplexMatrix conj = expm(a) * b * expm(-a);
      parts.push_back(weak_part("sigma(e^A B e^-A) <_w sigma(B) exp(2 delta(A))", sigma(conj),
                                sigma(b) * exp(delta(a).scaled(2.0)), tol));
      if (in.matrices.count("P")) {
        const ComplexMatrix& p = in.get("P");
        same_size(a, p);
        const HermEigResult ep = herm_eig(p);
        require(ep.values.back() > 0.0, "R23: P must be positive definite");
        const std::size_t n = ep.values.size();
        std::vector<double> ratio(n);
        for (std::size_t i = 0; i < n; ++i) ratio[i] = ep.values[i] / ep.values[n - 1 - i];
        Eigen::VectorXd inv(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) inv(static_cast<Eigen::Index>(i)) = 1.0 / ep.values[i];
        const ComplexMatrix pinv = ep.vectors * inv.cast<Complex>().asDiagonal() * ep.vectors.adjoint();
        parts.push_back(weak_part("sigma(P B P^-1) <_w sigma(B) lambda_desc(P)/lambda_asc(P)", sigma(p * b * pinv),
                                  sigma(b) * SpectrumVector(ratio), tol));
      }
      break;
    }
    case InequalityId::R24: {
      const ComplexMatrix& a = in.get("A");
      const ComplexMatrix& b = in.get("B");
      square_size(a, "A");
      same_size(a, b);
      require(is_hermitian(a), "R24: A must be Hermitian");
      const ComplexMatrix lhs = a * a * b * b - (a * b) * (a * b);
      parts.push_back(weak_part("sigma(A^2B^2 - (AB)^2) <_w 2 delta(A) delta(B) sigma(A) sigma(B)", sigma(lhs),
                                (delta(a) * delta(b) * sigma(a) * sigma(b)).scaled(2.0), tol));
      break;
    }
    case InequalityId::R25: {
      const ComplexMatrix& a = in.get("A");
      const std::size_t n = square_size(a, "A");
      require(is_hermitian(a), "R25: A must be Hermitian");
      const std::vector<std::size_t>& idx = in.indices;
      require(!idx.empty() && idx.size() <= n, "R25: submatrix index set must be nonempty");
      std::vector<bool> seen(n, false);
      for (std::size_t i : idx) {
        require(i < n && !seen[i], "R25: submatrix indices must be distinct and in range");
        seen[i] = true;
      }
      const auto m = static_cast<Eigen::Index>(idx.size());
      ComplexMatrix sub(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
          sub(i, j) = a(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)]),
                        static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)]));
        }
      }
      const std::vector<double> da = discrepancy_values_hermitian(a).values.vec();
      const std::vector<double> db = pad(discrepancy_values_hermitian(sub).values.vec(), n);
      const std::size_t shift = 2 * (n - idx.size());
      std::vector<double> da_shift(n, 0.0);
      for (std::size_t i = 0; i + shift < n; ++i) da_shift[i] = da[i + shift];
      parts.push_back(elementwise_part("delta_i(B) <= delta_i(A)", db, da, tol));
      parts.push_back(elementwise_part("delta_{i+2(n-m)}(A) <= delta_i(B)", da_shift, db, tol));
      break;
    }
    case InequalityId::R26: {
      const ComplexMatrix& a = in.get("A");
      const ComplexMatrix& b = in.get("B");
      square_size(a, "A");
      same_size(a, b);
      parts.push_back(weak_part("sigma([A,B]) <_w 2 delta(A) delta(B)", sigma(commutator(a, b)),
                                (delta(a) * delta(b)).scaled(2.0), tol));
      break;
    }
  }

  r.holds = std::all_of(parts.begin(), parts.end(), [](const InequalityPart& p) { return p.holds; });
  r.min_margin = INFINITY;
  for (const InequalityPart& p : parts) r.min_margin = std::min(r.min_margin, p.min_margin);
  if (parts.empty()) r.min_margin = 0.0;

  std::uint64_t digest = 0xcbf29ce484222325ULL;
  for (const auto& [name, m] : in.matrices) digest = matrix_digest(m, digest);
  for (const ComplexMatrix& m : in.chain) digest = matrix_digest(m, digest);
  r.witness = digest;

  if (id == InequalityId::R26) {
    r.status = r.holds ? "no counterexample found" : "counterexample found";
  } else {
    r.status = r.holds ? "holds" : "violated";
  }
  return r;
}

bool is_applicable(InequalityId id, std::size_t n) {
  if (n < 1) return false;
  switch (id) {
    case InequalityId::R5:
    case InequalityId::R13: return n % 2 == 0;
    case InequalityId::R3:
    case InequalityId::R4:
    case InequalityId::R6:
    case InequalityId::R11:
    case InequalityId::R18: return n >= 2;
    default: return true;
  }
}

namespace {

ComplexMatrix psd(std::size_t n, Rng& rng) {
  const ComplexMatrix g = random_ginibre(n, n, rng);
  return g * g.adjoint();
}

ComplexMatrix collinear_normal_sample(std::size_t n, Rng& rng) {
  const ComplexMatrix q = random_unitary(n, rng);
  const Complex offset = rng.complex_normal();
  const Complex dir = std::polar(1.0, 2.0 * 3.141592653589793 * rng.uniform());
  ComplexVector d(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = offset + dir * rng.normal();
  return q * d.asDiagonal() * q.adjoint();
}

ComplexMatrix isometry(std::size_t n, std::size_t k, Rng& rng) {
  return random_unitary(n, rng).leftCols(static_cast<Eigen::Index>(k));
}

}  // namespace

InequalityInputs sample_inputs(InequalityId id, std::size_t n, Rng& rng) {
  if (!is_applicable(id, n)) {
    throw DomainError(to_string(id) + " has no instances of size " + std::to_string(n));
  }
  InequalityInputs in;
  auto& m = in.matrices;
  auto gin = [&] { return random_ginibre(n, n, rng); };
  switch (id) {
    case InequalityId::R1:
    case InequalityId::R12:
    case InequalityId::R16:
    case InequalityId::R19:
    case InequalityId::R26:
      m["A"] = gin();
      m["B"] = gin();
      break;
    case InequalityId::R2:
    case InequalityId::R8:
    case InequalityId::R9:
    case InequalityId::R20:
      m["A"] = gin();
      break;
    case InequalityId::R3: {
      m["A"] = gin();
      const std::size_t nb = rng.uniform_index(2, n);
      // Each block gets one index up front so none is empty.
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.uniform_index(0, i - 1)]);
      in.blocks.assign(nb, {});
      for (std::size_t i = 0; i < n; ++i) in.blocks[i < nb ? i : rng.uniform_index(0, nb - 1)].push_back(perm[i]);
      for (auto& b : in.blocks) std::sort(b.begin(), b.end());
      break;
    }
    case InequalityId::R4: {
      m["A"] = gin();
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.uniform_index(0, i - 1)]);
      const std::size_t cut = rng.uniform_index(1, n - 1);
      in.blocks = {std::vector<std::size_t>(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(cut)),
                   std::vector<std::size_t>(perm.begin() + static_cast<std::ptrdiff_t>(cut), perm.end())};
      for (auto& b : in.blocks) std::sort(b.begin(), b.end());
      break;
    }
    case InequalityId::R5:
      for (const char* name : {"A1", "A2", "A3", "A4"}) m[name] = random_ginibre(n / 2, n / 2, rng);
      break;
    case InequalityId::R6:
      m["X"] = gin();
      m["S"] = isometry(n, rng.uniform_index(1, n - 1), rng);
      break;
    case InequalityId::R7:
      m["X"] = random_hermitian(n, rng);
      break;
    case InequalityId::R10:
      m["P"] = psd(n, rng);
      m["Q"] = random_unitary(n, rng);
      break;
    case InequalityId::R11:
      m["X"] = random_hermitian(n, rng) * 0.3;
      m["S"] = isometry(n, rng.uniform_index(1, n - 1), rng);
      break;
    case InequalityId::R13:
      m["A"] = psd(n, rng);
      break;
    case InequalityId::R14:
      m["A"] = gin();
      in.copies = n <= 3 ? rng.uniform_index(2, 3) : 2;
      break;
    case InequalityId::R15:
      m["A"] = gin();
      m["B"] = gin();
      m["X"] = gin();
      break;
    case InequalityId::R17:
      m["A"] = rng.uniform() < 0.5 ? random_hermitian(n, rng) : collinear_normal_sample(n, rng);
      m["B"] = gin();
      break;
    case InequalityId::R18: {
      m["X"] = gin();
      const ComplexMatrix s = isometry(n, rng.uniform_index(1, n - 1), rng);
      m["P"] = s * s.adjoint();
      break;
    }
    case InequalityId::R21:
      m["X"] = gin();
      break;
    case InequalityId::R22: {
      const std::size_t depth = rng.uniform_index(2, 4);
      const bool hermitian = rng.uniform() < 0.5;
      for (std::size_t j = 0; j < depth; ++j) in.chain.push_back(hermitian ? random_hermitian(n, rng) : gin());
      break;
    }
    case InequalityId::R23: {
      m["A"] = gin() * 0.5;
      m["B"] = gin();
      m["P"] = psd(n, rng) + ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) * 0.1;
      break;
    }
    case InequalityId::R24:
      m["A"] = random_hermitian(n, rng);
      m["B"] = gin();
      break;
    case InequalityId::R25: {
      m["A"] = random_hermitian(n, rng);
      const std::size_t drop = rng.uniform_index(0, n - 1);
      for (std::size_t i = 0; i < n; ++i) {
        if (i != drop) in.indices.push_back(i);
      }
      if (in.indices.empty()) in.indices.push_back(0);
      break;
    }
  }
  return in;
}

std::uint64_t sweep_trial_seed(InequalityId id, std::uint64_t master, std::size_t trial) noexcept {
  return derive_seed(derive_seed(master, static_cast<std::uint64_t>(id)), trial);
}

RegistrySweep sweep_inequality(InequalityId id, std::size_t n, std::size_t trials, std::uint64_t master_seed,
                               const Tolerance& tol, const AlphaSolverConfig& cfg, unsigned jobs) {
  if (!is_applicable(id, n)) throw DomainError("sweep_inequality: " + to_string(id) + " has no instances of size " + std::to_string(n));
  if (trials == 0) throw DomainError("sweep_inequality: trials must be positive");
  if (jobs == 0) throw DomainError("sweep_inequality: jobs must be positive");
  cfg.validate();

  struct Outcome {
    bool failed = false;
    bool holds = false;
    double margin = 0.0;
    double threshold = 0.0;
    std::string part;
  };
  std::vector<Outcome> outcomes(trials);
  auto run = [&](std::size_t t) {
    Outcome& o = outcomes[t];
    try {
      Rng rng(sweep_trial_seed(id, master_seed, t));
      const InequalityReport r = evaluate_inequality(id, sample_inputs(id, n, rng), tol, cfg);
      o.holds = r.holds;
      double slack = INFINITY;
      for (const InequalityPart& p : r.parts) {
        if (p.min_margin + p.threshold < slack) {
          slack = p.min_margin + p.threshold;
          o.margin = p.min_margin;
          o.threshold = p.threshold;
          o.part = p.label;
        }
      }
    } catch (const NumericalFailure&) {
      o.failed = true;
    }
  };
  const unsigned workers_n = static_cast<unsigned>(std::min<std::size_t>(jobs, trials));
  if (workers_n <= 1) {
    for (std::size_t t = 0; t < trials; ++t) run(t);
  } else {
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < workers_n; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t t = w; t < trials; t += workers_n) run(t);
      });
    }
    for (std::thread& th : workers) th.join();
  }

  RegistrySweep s;
  s.id = id;
  s.n = n;
  s.trials = trials;
  s.master_seed = master_seed;
  double worst = INFINITY;
  bool any = false;
  for (std::size_t t = 0; t < trials; ++t) {
    const Outcome& o = outcomes[t];
    if (o.failed) {
      s.failed_trials.push_back(t);
      continue;
    }
    if (!o.holds) ++s.violations;
    if (!any || o.margin + o.threshold < worst) {
      any = true;
      worst = o.margin + o.threshold;
      s.worst_margin = o.margin;
      s.worst_threshold = o.threshold;
      s.worst_trial = t;
      s.worst_part = o.part;
    }
  }
  s.holds = s.violations == 0 && s.failed_trials.empty();
  if (id == InequalityId::R26) {
    s.status = s.violations == 0 ? "no counterexample found" : "counterexample found";
  } else {
    s.status = s.holds ? "holds" : (s.violations ? "violated" : "numerical failure");
  }
  return s;
}

}  // namespace dkit
