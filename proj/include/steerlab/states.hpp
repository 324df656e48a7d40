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

#ifndef STEERLAB_STATES_HPP
#define STEERLAB_STATES_HPP

#include "steerlab/core.hpp"
#include "steerlab/random.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

namespace steerlab {

enum class Quadrature { X, P };

inline double squeezing_to_db(double r) { return 20.0 * r / std::numbers::ln10; }
inline double db_to_squeezing(double db) { return db * std::numbers::ln10 / 20.0; }

/// Local symplectic invariants a = sqrt(det sigma_A), b, c of a three-mode state.
struct PureThreeModeParams {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;

  /// |b-c|+1 <= a <= b+c-1 and cyclic permutations, with absolute slack `tol`.
  bool satisfies_triangle(double tol = 1e-12) const {
    auto one = [tol](double x, double y, double z) {
      return std::abs(y - z) + 1.0 <= x + tol && x <= y + z - 1.0 + tol;
    };
    return a >= 1.0 - tol && b >= 1.0 - tol && c >= 1.0 - tol && one(a, b, c) && one(b, c, a) &&
           one(c, a, b);
  }

  void validate(double tol = 1e-12) const {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !satisfies_triangle(tol))
      throw DomainError("(a, b, c) = (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                        std::to_string(c) + ") violates |b-c|+1 <= a <= b+c-1 (or a cyclic permutation)");
  }

  std::array<double, 3> as_array() const { return {a, b, c}; }
};

struct OpticalNetworkParams {
  double r = 0.0;        // squeezing of each input
  double R = 1.0 / 3.0;  // first beamsplitter, modes (A, B)
  double R_prime = 0.5;  // second beamsplitter, modes (B, C)
};

enum class ParamDistribution { Uniform, LogUniform };

struct SamplerConfig {
  std::uint64_t seed = 42;
  std::size_t count = 1;
  double r_max = 1.0;
  double a_max = 5.0;
  ParamDistribution distribution = ParamDistribution::Uniform;

  void validate() const {
    if (count < 1) throw UsageError("sampler: count must be >= 1");
    if (!(r_max >= 0.0) || !std::isfinite(r_max)) throw UsageError("sampler: r_max must be >= 0");
    if (!(a_max >= 1.0) || !std::isfinite(a_max)) throw UsageError("sampler: a_max must be >= 1");
  }
};

/// Two-mode squeezed vacuum: [[cosh 2r I, sinh 2r Z], [sinh 2r Z, cosh 2r I]], Z = diag(1, -1).
inline CovarianceMatrix two_mode_squeezed(double r) {
  if (!(r >= 0.0)) throw UsageError("two_mode_squeezed: r must be >= 0");
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  Matrix m = Matrix::Zero(4, 4);
  m.diagonal().setConstant(ch);
  m(0, 2) = m(2, 0) = sh;
  m(1, 3) = m(3, 1) = -sh;
  return CovarianceMatrix(m);
}

/// Single-mode squeezed vacuum; the named quadrature gets variance e^{-2r}.
inline CovarianceMatrix squeezed_vacuum(double r, Quadrature squeezed) {
  if (!(r >= 0.0)) throw UsageError("squeezed_vacuum: r must be >= 0");
  Matrix m = Matrix::Zero(2, 2);
  const double lo = std::exp(-2.0 * r);
  const double hi = std::exp(2.0 * r);
  m(0, 0) = squeezed == Quadrature::X ? lo : hi;
  m(1, 1) = squeezed == Quadrature::X ? hi : lo;
  return CovarianceMatrix(m);
}

/// Direct sum of CMs, modes in argument order.
inline CovarianceMatrix direct_sum(const CovarianceMatrix& lhs, const CovarianceMatrix& rhs) {
  const auto n = lhs.matrix().rows();
  const auto k = rhs.matrix().rows();
  Matrix m = Matrix::Zero(n + k, n + k);
  m.topLeftCorner(n, n) = lhs.matrix();
  m.bottomRightCorner(k, k) = rhs.matrix();
  return CovarianceMatrix(m);
}

/// Beamsplitter on modes (i, j) of an n-mode system: the rotation
/// [[sqrt(1-R), sqrt(R)], [-sqrt(R), sqrt(1-R)]] applied to (x_i, x_j) and to (p_i, p_j).
inline Matrix beamsplitter(double R, int i, int j, int n_modes) {
  if (!(R >= 0.0 && R <= 1.0)) throw UsageError("beamsplitter: reflectivity must lie in [0, 1]");
  if (i == j || i < 0 || j < 0 || i >= n_modes || j >= n_modes)
    throw UsageError("beamsplitter: invalid mode pair");
  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  const double t = std::sqrt(1.0 - R);
  const double q = std::sqrt(R);
  for (int k = 0; k < 2; ++k) {
    const int u = 2 * i + k;
    const int v = 2 * j + k;
    s(u, u) = t;
    s(u, v) = q;
    s(v, u) = -q;
    s(v, v) = t;
  }
  return s;
}

/// Three squeezed vacua (input 1 squeezed in p, inputs 2 and 3 in x) through two beamsplitters.
///
/// The first beamsplitter mixes inputs 1 and 2 and output A keeps a fraction R of input 1's
/// power; the second, with reflectivity R', mixes modes B and C. With R' = 1/2 the local
/// invariants are a = sqrt(1 + 2R(1-R)(cosh 4r - 1)) and b = c = sqrt([1 + R^2 - (R^2-1) cosh 4r]/2);
/// R = 1/3 gives the permutation-symmetric a = b = c state.
inline CovarianceMatrix ghz_network(const OpticalNetworkParams& p) {
  if (!(p.r >= 0.0) || !std::isfinite(p.r)) throw UsageError("ghz_network: r must be >= 0");
  if (!(p.R >= 0.0 && p.R <= 1.0) || !(p.R_prime >= 0.0 && p.R_prime <= 1.0))
    throw UsageError("ghz_network: reflectivities must lie in [0, 1]");
  const CovarianceMatrix in = direct_sum(direct_sum(squeezed_vacuum(p.r, Quadrature::P),
                                                    squeezed_vacuum(p.r, Quadrature::X)),
                                         squeezed_vacuum(p.r, Quadrature::X));
  const Matrix s = beamsplitter(p.R_prime, 1, 2, 3) * beamsplitter(1.0 - p.R, 0, 1, 3);
  CovarianceMatrix out = apply_symplectic(in, s);
  if (!is_pure(out)) throw InternalError("ghz_network: output state is not pure");
  return out;
}

/// sqrt(det) of each single-mode block of a three-mode CM.
inline PureThreeModeParams local_invariants(const CovarianceMatrix& s) {
  if (s.n_modes() != 3) throw UsageError("local_invariants: expected a three-mode CM");
  auto inv = [&](int k) { return std::sqrt(s.block(k, k).determinant()); };
  return {inv(0), inv(1), inv(2)};
}

namespace detail {

// Diagonal of the (i, j) block of the standard form, (x-x entry, p-p entry).
inline std::pair<double, double> standard_form_coupling(double ai, double aj, double ak) {
  // Differences of squares in factored form; each factor vanishes on a triangle edge.
  const double d = std::abs(ai - aj);
  const double s = ai + aj;
  const double lo = ak - 1.0;
  const double hi = ak + 1.0;
  const double r1 = std::max(0.0, (d - lo) * (d + lo) * (d - hi) * (d + hi));
  const double r2 = std::max(0.0, (s - lo) * (s + lo) * (s - hi) * (s + hi));
  const double k = 4.0 * std::sqrt(ai * aj);
  return {(std::sqrt(r1) + std::sqrt(r2)) / k, (std::sqrt(r1) - std::sqrt(r2)) / k};
}

}  // namespace detail

/// Pure three-mode CM in standard form: local blocks a I, b I, c I and diagonal inter-modal
/// blocks diag(e+_ij, e-_ij) with
///   e+-_ij = ( sqrt([(ai-aj)^2-(ak-1)^2][(ai-aj)^2-(ak+1)^2])
///             +- sqrt([(ai+aj)^2-(ak-1)^2][(ai+aj)^2-(ak+1)^2]) ) / (4 sqrt(ai aj)).
/// Purity and the local invariants are verified before returning.
inline CovarianceMatrix standard_form_pure(const PureThreeModeParams& p) {
  p.validate(1e-9);
  const std::array<double, 3> v = p.as_array();
  Matrix m = Matrix::Zero(6, 6);
  for (int k = 0; k < 3; ++k) m(2 * k, 2 * k) = m(2 * k + 1, 2 * k + 1) = v[k];
  constexpr std::array<std::array<int, 3>, 3> pairs{{{0, 1, 2}, {1, 2, 0}, {0, 2, 1}}};
  for (const auto& [i, j, k] : pairs) {
    const auto [ex, ep] = detail::standard_form_coupling(v[i], v[j], v[k]);
    m(2 * i, 2 * j) = m(2 * j, 2 * i) = ex;
    m(2 * i + 1, 2 * j + 1) = m(2 * j + 1, 2 * i + 1) = ep;
  }

  // Roundoff in the spectrum grows with the largest local invariant.
  const double scale = std::max({1.0, v[0], v[1], v[2]});
  CovarianceMatrix out(m, Tolerances{1e-9, 1e-6, 1e-8 * scale});
  if (!is_pure(out, 1e-8 * scale) || std::abs(log_det(out)) > 1e-8 * scale)
    throw InternalError("standard_form_pure: constructed state is not pure");
  const PureThreeModeParams back = local_invariants(out);
  if (std::abs(back.a - p.a) > 1e-9 * scale || std::abs(back.b - p.b) > 1e-9 * scale ||
      std::abs(back.c - p.c) > 1e-9 * scale)
    throw InternalError("standard_form_pure: local invariants do not round-trip");
  return out;
}

namespace detail {

// Real 2n x 2n (interleaved) representation of an n x n unitary acting on a = (x + i p)/sqrt(2).
inline Matrix passive_symplectic(const Eigen::MatrixXcd& u) {
  const auto n = u.rows();
  Matrix o(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = u(i, j).real();
      const double im = u(i, j).imag();
      o(2 * i, 2 * j) = re;
      o(2 * i, 2 * j + 1) = -im;
      o(2 * i + 1, 2 * j) = im;
      o(2 * i + 1, 2 * j + 1) = re;
    }
  return o;
}

// Haar unitary: QR of a complex Ginibre matrix with the phases of diag(R) divided out.
inline Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = {gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

inline CovarianceMatrix random_pure_state(int n_modes, double r_max, Rng& rng) {
  std::uniform_real_distribution<double> squeeze(0.0, r_max);
  Vector z(2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    const double r = r_max > 0.0 ? squeeze(rng) : 0.0;
    z(2 * k) = std::exp(2.0 * r);
    z(2 * k + 1) = std::exp(-2.0 * r);
  }
  const Matrix o = passive_symplectic(haar_unitary(n_modes, rng));
  const Matrix m = o * z.asDiagonal() * o.transpose();
  return CovarianceMatrix(0.5 * (m + m.transpose()));
}

}  // namespace detail

/// Random-access sampler: sample i depends only on (cfg.seed, i).
template <class T, class Gen>
class IndexedSampler {
 public:
  IndexedSampler(SamplerConfig cfg, Gen gen) : cfg_(cfg), gen_(std::move(gen)) { cfg_.validate(); }

  T at(std::size_t index) const {
    Rng rng = rng_for(cfg_.seed, index);
    return gen_(rng);
  }
  std::size_t size() const { return cfg_.count; }
  const SamplerConfig& config() const { return cfg_; }

  std::vector<T> take(unsigned threads = 1) const {
    return parallel_map(cfg_.count, threads, [this](std::size_t i) { return at(i); });
  }

 private:
  SamplerConfig cfg_;
  Gen gen_;
};

/// O Z Z^T O^T with Z = diag(e^{r_k}, e^{-r_k}), r_k ~ U[0, r_max], O a Haar passive transformation.
inline auto random_pure(int n_modes, const SamplerConfig& cfg) {
  if (n_modes < 1) throw UsageError("random_pure: n_modes must be positive");
  const double r_max = cfg.r_max;
  auto gen = [n_modes, r_max](Rng& rng) { return detail::random_pure_state(n_modes, r_max, rng); };
  return IndexedSampler<CovarianceMatrix, decltype(gen)>(cfg, gen);
}

/// Marginals of random pure states on n_parties + k modes, keeping the first n_parties.
/// k is drawn from {1, 2} per sample unless `ancillas` fixes it.
inline auto random_mixed(int n_parties, const SamplerConfig& cfg, std::optional<int> ancillas = std::nullopt) {
  if (n_parties < 2) throw UsageError("random_mixed: n_parties must be >= 2");
  if (ancillas && *ancillas < 0) throw UsageError("random_mixed: negative ancilla count");
  const double r_max = cfg.r_max;
  auto gen = [n_parties, r_max, ancillas](Rng& rng) {
    const int k = ancillas ? *ancillas : std::uniform_int_distribution<int>(1, 2)(rng);
    const CovarianceMatrix global = detail::random_pure_state(n_parties + k, r_max, rng);
    ModeSet kept(n_parties);
    for (int i = 0; i < n_parties; ++i) kept[i] = i;
    return partial_trace(global, kept);
  };
  return IndexedSampler<CovarianceMatrix, decltype(gen)>(cfg, gen);
}

/// (a, b, c) drawn per axis from [1, a_max] (uniform or log-uniform), rejected until the triangle
/// condition holds.
inline auto random_params(const SamplerConfig& cfg) {
  if (!(cfg.a_max > 1.0)) throw UsageError("random_params: a_max must be > 1");
  const double a_max = cfg.a_max;
  const ParamDistribution dist = cfg.distribution;
  auto gen = [a_max, dist](Rng& rng) {
    std::uniform_real_distribution<double> lin(1.0, a_max);
    std::uniform_real_distribution<double> log(0.0, std::log(a_max));
    auto draw = [&] { return dist == ParamDistribution::Uniform ? lin(rng) : std::exp(log(rng)); };
    for (;;) {
      PureThreeModeParams p;
      p.a = draw();
      p.b = draw();
      p.c = draw();
      if (p.satisfies_triangle(0.0)) return p;
    }
  };
  return IndexedSampler<PureThreeModeParams, decltype(gen)>(cfg, gen);
}

}  // namespace steerlab

#endif  // STEERLAB_STATES_HPP
