// Copyright 2026 The steerlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STEERLAB_CORE_HPP
#define STEERLAB_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace steerlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Caller passed arguments that make no sense (empty sets, overlapping parties, bad ranges).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but outside the domain of the operation (non-physical CM, mixed state
/// where a pure one is required, triangle violation, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A postcondition the library itself guarantees did not hold.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

struct Tolerances {
  double absolute = 1e-9;      // symmetry defect, inequality slack
  double pairing = 1e-6;       // relative, for matching +-i nu pairs of Omega M
  double validity = 1e-8;      // accept nu_k >= 1 - validity
};

inline constexpr Tolerances kDefaultTolerances{};

/// Sorted, duplicate-free list of mode indices.
using ModeSet = std::vector<int>;

namespace detail {

inline std::string modes_to_string(const ModeSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

inline ModeSet checked_modes(ModeSet s, int n_modes, const char* what) {
  if (s.empty()) throw UsageError(std::string(what) + ": empty mode set");
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw UsageError(std::string(what) + ": duplicate mode index in " + modes_to_string(s));
  if (s.front() < 0 || s.back() >= n_modes)
    throw UsageError(std::string(what) + ": mode index out of range in " + modes_to_string(s) +
                     " for " + std::to_string(n_modes) + " modes");
  return s;
}

inline bool disjoint(const ModeSet& a, const ModeSet& b) {
  for (int m : a)
    if (std::find(b.begin(), b.end(), m) != b.end()) return false;
  return true;
}

// Row/column indices (x_k, p_k) for each mode in order.
inline std::vector<Eigen::Index> quadrature_indices(const ModeSet& modes) {
  std::vector<Eigen::Index> idx;
  idx.reserve(2 * modes.size());
  for (int m : modes) {
    idx.push_back(2 * m);
    idx.push_back(2 * m + 1);
  }
  return idx;
}

inline Matrix principal_submatrix(const Matrix& m, const std::vector<Eigen::Index>& idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Matrix out(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) out(i, j) = m(idx[i], idx[j]);
  return out;
}

inline double symmetry_defect(const Matrix& m) { return (m - m.transpose()).cwiseAbs().maxCoeff(); }

inline int modes_of(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0)
    throw UsageError(std::string(what) + ": expected a non-empty 2n x 2n matrix, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  return static_cast<int>(m.rows() / 2);
}

// Eigenvalues of the Hermitian matrix i M^{1/2} Omega M^{1/2} come in pairs +-nu_k.
inline Vector symplectic_spectrum_hermitian(const Matrix& m);

}  // namespace detail

/// Omega = omega^{(+)n}, omega = [[0, 1], [-1, 0]], interleaved x1,p1,...,xn,pn ordering.
inline Matrix symplectic_form(int n_modes) {
  if (n_modes < 1) throw UsageError("symplectic_form: n_modes must be positive");
  Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

/// ln det of a symmetric positive-definite matrix through its Cholesky factor.
inline double log_det_spd(const Matrix& m) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) throw DomainError("log_det: matrix is not positive definite");
  const Matrix& l = llt.matrixLLT();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) sum += std::log(l(i, i));
  return 2.0 * sum;
}

/// Symplectic eigenvalues of a real symmetric positive-definite 2n x 2n matrix, ascending.
///
/// Computed as the moduli of the eigenvalues of Omega M, which come in pairs +-i nu_k. The
/// sorted moduli are matched pairwise; if any pair disagrees beyond `tol.pairing` (relative)
/// the spectrum is recomputed from the Hermitian form i M^{1/2} Omega M^{1/2}.
inline Vector symplectic_eigenvalues(const Matrix& m, const Tolerances& tol = kDefaultTolerances) {
  const int n = detail::modes_of(m, "symplectic_eigenvalues");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (detail::symmetry_defect(m) > tol.absolute * scale)
    throw DomainError("symplectic_eigenvalues: matrix is not symmetric (defect " +
                      std::to_string(detail::symmetry_defect(m)) + ")");
  if (Eigen::LLT<Matrix>(m).info() != Eigen::Success)
    throw DomainError("symplectic_eigenvalues: matrix is not positive definite");

  const Matrix om = symplectic_form(n) * m;
  Eigen::EigenSolver<Matrix> es(om, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) return detail::symplectic_spectrum_hermitian(m);

  std::vector<double> moduli(2 * n);
  for (int i = 0; i < 2 * n; ++i) moduli[i] = std::abs(es.eigenvalues()[i]);
  std::sort(moduli.begin(), moduli.end());

  Vector nu(n);
  for (int k = 0; k < n; ++k) {
    const double lo = moduli[2 * k];
    const double hi = moduli[2 * k + 1];
    if (hi - lo > tol.pairing * hi) return detail::symplectic_spectrum_hermitian(m);
    nu(k) = 0.5 * (lo + hi);
  }
  return nu;
}

namespace detail {

inline Vector symplectic_spectrum_hermitian(const Matrix& m) {
  const int n = static_cast<int>(m.rows() / 2);
  Eigen::SelfAdjointEigenSolver<Matrix> root(m);
  const Matrix sqrt_m = root.operatorSqrt();
  const Matrix a = sqrt_m * symplectic_form(n) * sqrt_m;  // real antisymmetric
  const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw InternalError("symplectic_eigenvalues: Hermitian eigensolver failed");
  // Ascending real eigenvalues -nu_n..-nu_1, nu_1..nu_n.
  Vector nu(n);
  for (int k = 0; k < n; ++k) nu(k) = 0.5 * (es.eigenvalues()(n + k) - es.eigenvalues()(n - 1 - k));
  std::sort(nu.data(), nu.data() + n);
  return nu;
}

}  // namespace detail

struct ValidityReport {
  double symmetry_defect = 0.0;
  double min_symplectic_eigenvalue = 0.0;
  double min_eigenvalue = 0.0;
  bool valid = false;
  std::string reason;  // empty when valid
};

/// Diagnostic bona-fide check; never throws on a square even-sized input.
inline ValidityReport is_valid_cm(const Matrix& m, const Tolerances& tol = kDefaultTolerances) {
  detail::modes_of(m, "is_valid_cm");
  ValidityReport r;
  r.symmetry_defect = detail::symmetry_defect(m);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues()(0);
  if (r.symmetry_defect > tol.absolute * scale) {
    r.reason = "not symmetric";
    r.min_symplectic_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  if (r.min_eigenvalue <= 0.0) {
    r.reason = "not positive definite";
    r.min_symplectic_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  r.min_symplectic_eigenvalue = symplectic_eigenvalues(sym, tol)(0);
  if (r.min_symplectic_eigenvalue < 1.0 - tol.validity) {
    r.reason = "violates uncertainty relation (min symplectic eigenvalue " +
               std::to_string(r.min_symplectic_eigenvalue) + " < 1)";
    return r;
  }
  r.valid = true;
  return r;
}

/// Covariance matrix of an n-mode Gaussian state, vacuum-normalized (vacuum = identity),
/// interleaved x1,p1,...,xn,pn ordering. Construction enforces symmetry and bona-fide-ness.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Matrix m, const Tolerances& tol = kDefaultTolerances) : m_(std::move(m)) {
    const ValidityReport r = is_valid_cm(m_, tol);
    if (!r.valid) throw DomainError("invalid covariance matrix: " + r.reason);
    m_ = 0.5 * (m_ + m_.transpose()).eval();
  }

  static CovarianceMatrix vacuum(int n_modes) {
    if (n_modes < 1) throw UsageError("vacuum: n_modes must be positive");
    return CovarianceMatrix(Matrix::Identity(2 * n_modes, 2 * n_modes));
  }

  int n_modes() const { return static_cast<int>(m_.rows() / 2); }
  const Matrix& matrix() const { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  /// 2x2 block coupling modes i and j.
  Eigen::Matrix2d block(int i, int j) const { return m_.block<2, 2>(2 * i, 2 * j); }

  /// Every mode index 0..n-1.
  ModeSet all_modes() const {
    ModeSet s(n_modes());
    for (int i = 0; i < n_modes(); ++i) s[i] = i;
    return s;
  }

 private:
  Matrix m_;
};

/// Disjoint, non-empty labeled mode sets; their union may leave modes out.
class ModePartition {
 public:
  ModePartition(std::vector<ModeSet> parts, int n_modes) {
    for (auto& p : parts) parts_.push_back(detail::checked_modes(std::move(p), n_modes, "ModePartition"));
    for (std::size_t i = 0; i < parts_.size(); ++i)
      for (std::size_t j = i + 1; j < parts_.size(); ++j)
        if (!detail::disjoint(parts_[i], parts_[j]))
          throw UsageError("ModePartition: parts " + std::to_string(i) + " and " + std::to_string(j) +
                           " overlap");
  }

  /// One part per mode: {0}, {1}, ..., {n-1}.
  static ModePartition single_modes(int n_modes) {
    std::vector<ModeSet> parts;
    for (int i = 0; i < n_modes; ++i) parts.push_back({i});
    return ModePartition(std::move(parts), n_modes);
  }

  std::size_t size() const { return parts_.size(); }
  const ModeSet& operator[](std::size_t i) const { return parts_[i]; }
  const std::vector<ModeSet>& parts() const { return parts_; }

  /// Union of every part except `k`.
  ModeSet rest(std::size_t k) const {
    ModeSet out;
    for (std::size_t i = 0; i < parts_.size(); ++i)
      if (i != k) out.insert(out.end(), parts_[i].begin(), parts_[i].end());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<ModeSet> parts_;
};

/// Principal submatrix over `kept`, in the order given (so it can also relabel modes).
inline CovarianceMatrix partial_trace(const CovarianceMatrix& s, const ModeSet& kept) {
  if (kept.empty()) throw UsageError("partial_trace: empty kept set");
  detail::checked_modes(kept, s.n_modes(), "partial_trace");
  return CovarianceMatrix(detail::principal_submatrix(s.matrix(), detail::quadrature_indices(kept)));
}

/// sigma_kept - C^T sigma_removed^{-1} C, over the remaining modes in ascending order.
inline Matrix schur_complement(const CovarianceMatrix& s, const ModeSet& removed) {
  const ModeSet rem = detail::checked_modes(removed, s.n_modes(), "schur_complement");
  if (static_cast<int>(rem.size()) == s.n_modes())
    throw UsageError("schur_complement: cannot remove every mode");
  ModeSet kept;
  for (int i = 0; i < s.n_modes(); ++i)
    if (!std::binary_search(rem.begin(), rem.end(), i)) kept.push_back(i);

  const auto ri = detail::quadrature_indices(rem);
  const auto ki = detail::quadrature_indices(kept);
  const Matrix s_rr = detail::principal_submatrix(s.matrix(), ri);
  const Matrix s_kk = detail::principal_submatrix(s.matrix(), ki);
  Matrix c(ri.size(), ki.size());
  for (std::size_t i = 0; i < ri.size(); ++i)
    for (std::size_t j = 0; j < ki.size(); ++j) c(i, j) = s.matrix()(ri[i], ki[j]);

  Eigen::LLT<Matrix> llt(s_rr);
  if (llt.info() != Eigen::Success) throw DomainError("schur_complement: removed block not positive definite");
  Matrix out = s_kk - c.transpose() * llt.solve(c);
  return 0.5 * (out + out.transpose());
}

/// S sigma S^T for a symplectic S (S Omega S^T = Omega within tolerance).
inline CovarianceMatrix apply_symplectic(const CovarianceMatrix& s, const Matrix& sym,
                                         const Tolerances& tol = kDefaultTolerances) {
  const int n = s.n_modes();
  if (sym.rows() != 2 * n || sym.cols() != 2 * n)
    throw UsageError("apply_symplectic: dimension mismatch");
  const Matrix omega = symplectic_form(n);
  const double defect = (sym * omega * sym.transpose() - omega).norm();
  if (defect > tol.absolute * std::max(1.0, sym.squaredNorm()))
    throw DomainError("apply_symplectic: matrix is not symplectic, ||S Omega S^T - Omega|| = " +
                      std::to_string(defect));
  return CovarianceMatrix(sym * s.matrix() * sym.transpose(), tol);
}

/// M(sigma) = ln det sigma.
inline double log_det(const CovarianceMatrix& s) { return log_det_spd(s.matrix()); }

/// I_{conditioned|conditioning} = M(sigma over both) - M(sigma over conditioning).
inline double conditional_log_det(const CovarianceMatrix& s, const ModeSet& conditioned,
                                  const ModeSet& conditioning) {
  const ModeSet a = detail::checked_modes(conditioned, s.n_modes(), "conditional_log_det");
  const ModeSet b = detail::checked_modes(conditioning, s.n_modes(), "conditional_log_det");
  if (!detail::disjoint(a, b)) throw UsageError("conditional_log_det: overlapping mode sets");
  ModeSet both = a;
  both.insert(both.end(), b.begin(), b.end());
  std::sort(both.begin(), both.end());
  return log_det(partial_trace(s, both)) - log_det(partial_trace(s, b));
}

inline bool is_pure(const CovarianceMatrix& s, double tol = kDefaultTolerances.validity) {
  const Vector nu = symplectic_eigenvalues(s.matrix());
  return (nu.array() - 1.0).abs().maxCoeff() <= tol;
}

}  // namespace steerlab

#endif  // STEERLAB_CORE_HPP
