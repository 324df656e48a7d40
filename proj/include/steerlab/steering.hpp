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

#ifndef STEERLAB_STEERING_HPP
#define STEERLAB_STEERING_HPP

#include "steerlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace steerlab {

/// Gaussian steering G^{steering -> steered} in nats, with the Schur-complement spectrum it
/// was computed from.
struct SteeringValue {
  double value = 0.0;
  ModeSet steering;
  ModeSet steered;
  Vector schur_spectrum;
};

namespace detail {

struct Bipartition {
  ModeSet steering;
  ModeSet steered;
  ModeSet joint;  // sorted union
};

inline Bipartition checked_bipartition(const CovarianceMatrix& s, const ModeSet& steering,
                                       const ModeSet& steered, const char* what) {
  Bipartition b{checked_modes(steering, s.n_modes(), what), checked_modes(steered, s.n_modes(), what), {}};
  if (!disjoint(b.steering, b.steered)) throw UsageError(std::string(what) + ": overlapping parties");
  b.joint = b.steering;
  b.joint.insert(b.joint.end(), b.steered.begin(), b.steered.end());
  std::sort(b.joint.begin(), b.joint.end());
  return b;
}

// -sum_{nu < 1 - tol} ln nu; eigenvalues within tol of 1 contribute nothing.
inline double steering_from_spectrum(const Vector& nu, double tol) {
  double g = 0.0;
  for (Eigen::Index j = 0; j < nu.size(); ++j)
    if (nu(j) < 1.0 - tol) g -= std::log(nu(j));
  return g;
}

}  // namespace detail

/// G^{steering -> steered}(sigma). Modes outside steering and steered are traced out first.
inline SteeringValue gaussian_steering(const CovarianceMatrix& s, const ModeSet& steering,
                                       const ModeSet& steered, const Tolerances& tol = kDefaultTolerances) {
  auto b = detail::checked_bipartition(s, steering, steered, "gaussian_steering");
  // Reorder so the steering party comes first, then Schur-complement it out.
  ModeSet order = b.steering;
  order.insert(order.end(), b.steered.begin(), b.steered.end());
  const CovarianceMatrix joint = partial_trace(s, order);
  ModeSet removed(b.steering.size());
  for (std::size_t i = 0; i < removed.size(); ++i) removed[i] = static_cast<int>(i);
  const Matrix schur = schur_complement(joint, removed);

  SteeringValue out;
  out.schur_spectrum = symplectic_eigenvalues(schur, tol);
  out.value = detail::steering_from_spectrum(out.schur_spectrum, tol.absolute);
  out.steering = std::move(b.steering);
  out.steered = std::move(b.steered);
  return out;
}

/// Single-mode steered party: G = max{0, 1/2 ln(det sigma_steering / det sigma_joint)}.
inline double steering_one_mode_steered(const CovarianceMatrix& s, const ModeSet& steering, int steered) {
  const auto b = detail::checked_bipartition(s, steering, {steered}, "steering_one_mode_steered");
  return std::max(0.0, 0.5 * (log_det(partial_trace(s, b.steering)) - log_det(partial_trace(s, b.joint))));
}

inline double steering_one_mode_steered(const CovarianceMatrix& s, const ModeSet& steering,
                                        const ModeSet& steered) {
  if (steered.size() != 1) throw UsageError("steering_one_mode_steered: steered party must be one mode");
  return steering_one_mode_steered(s, steering, steered.front());
}

/// Renyi-2 entanglement of a pure state across part : rest, 1/2 ln det sigma_part.
inline double renyi2_pure_bipartite_entanglement(const CovarianceMatrix& s, const ModeSet& part) {
  if (!is_pure(s)) throw DomainError("renyi2_pure_bipartite_entanglement: state is not pure");
  return 0.5 * log_det(partial_trace(s, detail::checked_modes(part, s.n_modes(), "renyi2")));
}

/// min(G^{A->C}, G^{B->C}) for a one-mode party C.
inline double exclusivity_margin(const CovarianceMatrix& s, const ModeSet& a, const ModeSet& b, int c) {
  return std::min(gaussian_steering(s, a, {c}).value, gaussian_steering(s, b, {c}).value);
}

/// True when A and B do not both steer the one-mode party C.
inline bool exclusivity_check(const CovarianceMatrix& s, const ModeSet& a, const ModeSet& b, int c,
                              double tol = kDefaultTolerances.absolute) {
  return exclusivity_margin(s, a, b, c) <= tol;
}

/// 2 G^{A->B} - (M(sigma_A) - M(sigma_AB)), or nullopt when G^{A->B} = 0 (bound does not apply).
inline std::optional<double> logdet_steering_bound_check(const CovarianceMatrix& s, const ModeSet& steering,
                                                         const ModeSet& steered) {
  const SteeringValue g = gaussian_steering(s, steering, steered);
  if (g.value <= 0.0) return std::nullopt;
  const auto b = detail::checked_bipartition(s, steering, steered, "logdet_steering_bound_check");
  const double gap = log_det(partial_trace(s, b.steering)) - log_det(partial_trace(s, b.joint));
  return 2.0 * g.value - gap;
}

}  // namespace steerlab

#endif  // STEERLAB_STEERING_HPP
