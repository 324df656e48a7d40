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

#ifndef STEERLAB_MONOGAMY_HPP
#define STEERLAB_MONOGAMY_HPP

#include "steerlab/core.hpp"
#include "steerlab/states.hpp"
#include "steerlab/steering.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace steerlab {

enum class MonogamyDirection {
  SteeredByRest,  // G^{rest -> k} - sum_j G^{j -> k}
  SteersRest,     // G^{k -> rest} - sum_j G^{k -> j}
};

struct MonogamyReport {
  std::size_t focus = 0;
  MonogamyDirection direction = MonogamyDirection::SteeredByRest;
  double collective = 0.0;
  std::vector<double> pairwise;  // one per party j != focus, in party order
  double residual = 0.0;
};

/// Collective-minus-pairwise steering residual around party `focus`. Every party must be a
/// single mode; parties not listed are traced out.
inline MonogamyReport monogamy_residual(const CovarianceMatrix& s, const ModePartition& parties,
                                        std::size_t focus, MonogamyDirection direction) {
  if (parties.size() < 2) throw UsageError("monogamy_residual: need at least two parties");
  if (focus >= parties.size()) throw UsageError("monogamy_residual: focus party out of range");
  for (const auto& p : parties.parts())
    if (p.size() != 1)
      throw UsageError("monogamy_residual: every party must comprise exactly one mode");

  const ModeSet& k = parties[focus];
  const ModeSet rest = parties.rest(focus);
  const bool steered = direction == MonogamyDirection::SteeredByRest;

  MonogamyReport r;
  r.focus = focus;
  r.direction = direction;
  r.collective = steered ? gaussian_steering(s, rest, k).value : gaussian_steering(s, k, rest).value;
  r.residual = r.collective;
  for (std::size_t j = 0; j < parties.size(); ++j) {
    if (j == focus) continue;
    const double g = steered ? gaussian_steering(s, parties[j], k).value : gaussian_steering(s, k, parties[j]).value;
    r.pairwise.push_back(g);
    r.residual -= g;
  }
  return r;
}

/// Residual Gaussian steering of a pure three-mode state with every residual it minimizes over.
struct RgsValue {
  double value = 0.0;
  int pivot = 0;  // index i of the minimizing <i, j, k>
  MonogamyDirection direction = MonogamyDirection::SteeredByRest;
  std::array<double, 3> steered_residuals{};   // G^{(jk)->i} - G^{j->i} - G^{k->i}, per pivot i
  std::array<double, 3> steering_residuals{};  // G^{i->(jk)} - G^{i->j} - G^{i->k}, per pivot i

  double steered_min() const { return *std::min_element(steered_residuals.begin(), steered_residuals.end()); }
  double steering_min() const { return *std::min_element(steering_residuals.begin(), steering_residuals.end()); }
};

namespace detail {

inline RgsValue rgs_residuals(const CovarianceMatrix& s) {
  const ModePartition parties = ModePartition::single_modes(3);
  RgsValue v;
  for (int i = 0; i < 3; ++i) {
    v.steered_residuals[i] = monogamy_residual(s, parties, i, MonogamyDirection::SteeredByRest).residual;
    v.steering_residuals[i] = monogamy_residual(s, parties, i, MonogamyDirection::SteersRest).residual;
  }
  v.value = v.steered_residuals[0];
  for (int i = 0; i < 3; ++i) {
    if (v.steered_residuals[i] < v.value) {
      v.value = v.steered_residuals[i];
      v.pivot = i;
      v.direction = MonogamyDirection::SteeredByRest;
    }
    if (v.steering_residuals[i] < v.value) {
      v.value = v.steering_residuals[i];
      v.pivot = i;
      v.direction = MonogamyDirection::SteersRest;
    }
  }
  return v;
}

}  // namespace detail

/// Minimum over pivots and both steering directions of the tripartite monogamy residual.
/// Throws InternalError if the two directions disagree by more than `tol` (scaled by the value).
inline RgsValue rgs(const CovarianceMatrix& s, double tol = kDefaultTolerances.absolute) {
  if (s.n_modes() != 3) throw UsageError("rgs: expected a three-mode state");
  if (!is_pure(s)) throw DomainError("rgs: state is not pure");
  RgsValue v = detail::rgs_residuals(s);
  if (std::abs(v.steered_min() - v.steering_min()) > tol * std::max(1.0, std::abs(v.value)))
    throw InternalError("rgs: steered and steering minima disagree");
  return v;
}

/// ln min{bc/a, ca/b, ab/c}.
inline double rgs_closed_form(const PureThreeModeParams& p) {
  p.validate(1e-9);
  return std::log(std::min({p.b * p.c / p.a, p.c * p.a / p.b, p.a * p.b / p.c}));
}

struct Fig1aRow {
  double b;
  double c;
  double rgs;
};

/// RGS of standard-form states with fixed a over a grid x grid lattice of (b, c) in
/// [1, b_max]^2, keeping the lattice points inside the triangle region.
inline std::vector<Fig1aRow> fig1a_sweep(double a, int grid, double b_max) {
  if (!(a >= 1.0) || grid < 2 || !(b_max > 1.0)) throw UsageError("fig1a_sweep: need a >= 1, grid >= 2, b_max > 1");
  std::vector<Fig1aRow> rows;
  for (int i = 0; i < grid; ++i) {
    const double b = 1.0 + (b_max - 1.0) * i / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double c = 1.0 + (b_max - 1.0) * j / (grid - 1);
      const PureThreeModeParams p{a, b, c};
      if (!p.satisfies_triangle(1e-12)) continue;
      rows.push_back({b, c, rgs(standard_form_pure(p)).value});
    }
  }
  return rows;
}

struct Fig1bRow {
  double R;
  double a;
  double b;
  double c;
  double rgs;
};

/// RGS of the beamsplitter-network states at squeezing r with R' = 1/2, R = i/grid for i = 0..grid.
inline std::vector<Fig1bRow> fig1b_sweep(double r, int grid) {
  if (!(r >= 0.0) || grid < 1) throw UsageError("fig1b_sweep: need r >= 0 and grid >= 1");
  std::vector<Fig1bRow> rows;
  rows.reserve(grid + 1);
  for (int i = 0; i <= grid; ++i) {
    const double R = static_cast<double>(i) / grid;
    const CovarianceMatrix s = ghz_network({r, R, 0.5});
    const PureThreeModeParams inv = local_invariants(s);
    rows.push_back({R, inv.a, inv.b, inv.c, rgs(s).value});
  }
  return rows;
}

}  // namespace steerlab

#endif  // STEERLAB_MONOGAMY_HPP
