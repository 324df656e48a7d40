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

#ifndef STEERLAB_QSS_HPP
#define STEERLAB_QSS_HPP

#include "steerlab/core.hpp"
#include "steerlab/monogamy.hpp"
#include "steerlab/random.hpp"
#include "steerlab/states.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace steerlab {

/// ln(e/2) = 1 - ln 2, the offset between steering and key rate.
inline constexpr double kLnEOver2 = 1.0 - std::numbers::ln2;

/// RGS above which the mode-invariant key rate is guaranteed positive: 2 ln(e/2).
inline constexpr double kKeyPositivityRgsThreshold = 2.0 * kLnEOver2;

struct QuadratureRef {
  int mode;
  Quadrature quadrature;

  Eigen::Index row() const { return 2 * mode + (quadrature == Quadrature::P ? 1 : 0); }
};

/// Minimum inference variance of `target` from a linear combination of the conditioners.
struct ConditionalVariance {
  double variance = 0.0;      // physical units, vacuum = 1/2
  std::vector<double> gains;  // minimizing coefficients, one per conditioner
};

/// Half the Schur complement of the conditioners' block in the quadrature submatrix of sigma.
inline ConditionalVariance conditional_variance(const CovarianceMatrix& s, QuadratureRef target,
                                                const std::vector<QuadratureRef>& conditioners) {
  auto check = [&](QuadratureRef q) {
    if (q.mode < 0 || q.mode >= s.n_modes()) throw UsageError("conditional_variance: mode out of range");
  };
  check(target);
  for (const auto& q : conditioners) {
    check(q);
    if (q.row() == target.row()) throw UsageError("conditional_variance: target is among the conditioners");
  }
  const auto k = static_cast<Eigen::Index>(conditioners.size());
  Matrix cc(k, k);
  Vector ct(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    ct(i) = s(conditioners[i].row(), target.row());
    for (Eigen::Index j = 0; j < k; ++j) cc(i, j) = s(conditioners[i].row(), conditioners[j].row());
  }
  ConditionalVariance out;
  double v = s(target.row(), target.row());
  if (k > 0) {
    Eigen::LLT<Matrix> llt(cc);
    if (llt.info() != Eigen::Success) throw DomainError("conditional_variance: degenerate conditioner block");
    const Vector g = llt.solve(ct);
    v -= ct.dot(g);
    out.gains.assign(g.data(), g.data() + k);
  }
  out.variance = 0.5 * v;
  return out;
}

/// Local blocks proportional to the identity and diagonal inter-modal blocks, to `tol` relative
/// to the largest entry.
inline bool is_standard_form(const CovarianceMatrix& s, double tol = kDefaultTolerances.absolute) {
  if (s.n_modes() != 3) return false;
  const double eps = tol * std::max(1.0, s.matrix().cwiseAbs().maxCoeff());
  for (int i = 0; i < 3; ++i) {
    const Eigen::Matrix2d local = s.block(i, i);
    if (std::abs(local(0, 0) - local(1, 1)) > eps || std::abs(local(0, 1)) > eps) return false;
    for (int j = i + 1; j < 3; ++j) {
      const Eigen::Matrix2d cross = s.block(i, j);
      if (std::abs(cross(0, 1)) > eps || std::abs(cross(1, 0)) > eps) return false;
    }
  }
  return true;
}

enum class KeyQuadrature { P, X, Best };

struct JointGains {
  double g = 0.0;  // lower-index player
  double h = 0.0;  // higher-index player
};

/// Inference variances and key rates with one mode as dealer and the other two as players.
struct DealerRecord {
  int dealer = 0;
  std::array<int, 2> players{};
  Quadrature key = Quadrature::P;
  double v_key_joint = 0.0;                // V_{key|joint key-quadrature of players}
  double v_check_joint = 0.0;              // V_{check|joint}
  std::array<double, 2> v_check_single{};  // V_{check|single player}, in `players` order
  JointGains key_gains;
  JointGains check_gains;
  double k_e_raw = 0.0;
  double k_full_raw = 0.0;
  double k_e = 0.0;
  double k_full = 0.0;
};

namespace detail {

inline void require_standard_form(const CovarianceMatrix& s, const char* what) {
  if (s.n_modes() != 3) throw DomainError(std::string(what) + ": expected a three-mode state");
  if (!is_standard_form(s)) throw DomainError(std::string(what) + ": state is not in standard form");
}

inline std::array<int, 2> players_of(int dealer) {
  if (dealer < 0 || dealer > 2) throw UsageError("dealer must be 0, 1 or 2");
  std::array<int, 2> p{};
  int n = 0;
  for (int m = 0; m < 3; ++m)
    if (m != dealer) p[n++] = m;
  return p;
}

inline Quadrature other(Quadrature q) { return q == Quadrature::P ? Quadrature::X : Quadrature::P; }

}  // namespace detail

/// All variances and rates for a fixed dealer and key quadrature (the other quadrature checks).
inline DealerRecord dealer_record(const CovarianceMatrix& s, int dealer, Quadrature key) {
  detail::require_standard_form(s, "dealer_record");
  DealerRecord r;
  r.dealer = dealer;
  r.players = detail::players_of(dealer);
  r.key = key;
  const Quadrature check = detail::other(key);
  const auto [b, c] = r.players;

  const ConditionalVariance vk = conditional_variance(s, {dealer, key}, {{b, key}, {c, key}});
  const ConditionalVariance vc = conditional_variance(s, {dealer, check}, {{b, check}, {c, check}});
  r.v_key_joint = vk.variance;
  r.v_check_joint = vc.variance;
  r.key_gains = {vk.gains[0], vk.gains[1]};
  r.check_gains = {vc.gains[0], vc.gains[1]};
  r.v_check_single[0] = conditional_variance(s, {dealer, check}, {{b, check}}).variance;
  r.v_check_single[1] = conditional_variance(s, {dealer, check}, {{c, check}}).variance;

  r.k_e_raw = -(1.0 + 0.5 * std::log(r.v_key_joint * r.v_check_joint));
  r.k_full_raw = -(1.0 + 0.5 * std::log(r.v_key_joint * std::max(r.v_check_single[0], r.v_check_single[1])));
  r.k_e = std::max(0.0, r.k_e_raw);
  r.k_full = std::max(0.0, r.k_full_raw);
  return r;
}

inline DealerRecord dealer_record(const CovarianceMatrix& s, int dealer, KeyQuadrature key) {
  if (key == KeyQuadrature::P) return dealer_record(s, dealer, Quadrature::P);
  if (key == KeyQuadrature::X) return dealer_record(s, dealer, Quadrature::X);
  DealerRecord p = dealer_record(s, dealer, Quadrature::P);
  DealerRecord x = dealer_record(s, dealer, Quadrature::X);
  return x.k_full_raw > p.k_full_raw ? x : p;
}

/// -ln(e sqrt(V_{P|P_joint} V_{X|X_joint})), security against an external eavesdropper only.
inline double key_rate_eve(const CovarianceMatrix& s, int dealer) {
  return dealer_record(s, dealer, Quadrature::P).k_e_raw;
}

/// -ln(e sqrt(V_{key|joint} max_j V_{check|player j})), also secure against dishonest players.
inline double key_rate_full(const CovarianceMatrix& s, int dealer, KeyQuadrature key = KeyQuadrature::P) {
  return dealer_record(s, dealer, key).k_full_raw;
}

/// Minimum of the full key rate over the three dealer assignments (raw, may be negative).
inline double key_rate_mode_invariant(const CovarianceMatrix& s, KeyQuadrature key = KeyQuadrature::P) {
  double k = key_rate_full(s, 0, key);
  for (int d = 1; d < 3; ++d) k = std::min(k, key_rate_full(s, d, key));
  return k;
}

inline double qss_lower_bound(double rgs_value) { return 0.5 * rgs_value - kLnEOver2; }
inline double qss_upper_bound(double rgs_value) { return rgs_value - kLnEOver2; }

struct KeyRateReport {
  KeyQuadrature key = KeyQuadrature::P;
  std::array<DealerRecord, 3> dealers;
  double mode_invariant_raw = 0.0;
  double mode_invariant = 0.0;
  double rgs = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double slack_lower = 0.0;  // mode_invariant_raw - lower_bound
  double slack_upper = 0.0;  // upper_bound - mode_invariant_raw
};

inline KeyRateReport key_rate_report(const CovarianceMatrix& s, KeyQuadrature key = KeyQuadrature::P) {
  detail::require_standard_form(s, "key_rate_report");
  KeyRateReport r;
  r.key = key;
  for (int d = 0; d < 3; ++d) r.dealers[d] = dealer_record(s, d, key);
  r.mode_invariant_raw = std::min({r.dealers[0].k_full_raw, r.dealers[1].k_full_raw, r.dealers[2].k_full_raw});
  r.mode_invariant = std::max(0.0, r.mode_invariant_raw);
  r.rgs = rgs(s).value;
  r.lower_bound = qss_lower_bound(r.rgs);
  r.upper_bound = qss_upper_bound(r.rgs);
  r.slack_lower = r.mode_invariant_raw - r.lower_bound;
  r.slack_upper = r.upper_bound - r.mode_invariant_raw;
  return r;
}

/// Mode-invariant key rate of the R = 1/3, R' = 1/2 network state at squeezing r, evaluated on
/// the standard form with the same local invariants.
inline double ghz_key_rate(double r) {
  const PureThreeModeParams inv = local_invariants(ghz_network({r, 1.0 / 3.0, 0.5}));
  return key_rate_mode_invariant(standard_form_pure(inv));
}

struct SqueezingThreshold {
  double r = 0.0;
  double db = 0.0;
};

/// Smallest squeezing giving a positive mode-invariant key rate for the GHZ-like network state,
/// by bisection on [0.05, 3] to 1e-10 in r.
inline SqueezingThreshold threshold_squeezing_ghz() {
  double lo = 0.05;
  double hi = 3.0;
  if (!(ghz_key_rate(lo) < 0.0 && ghz_key_rate(hi) > 0.0))
    throw InternalError("threshold_squeezing_ghz: root is not bracketed");
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (ghz_key_rate(mid) < 0.0 ? lo : hi) = mid;
  }
  const double r = 0.5 * (lo + hi);
  return {r, squeezing_to_db(r)};
}

struct Fig2Row {
  std::string series;     // "sample", "lower_family", "upper_family" or "ghz"
  long long sample_index;  // -1 for overlay series
  double a, b, c;
  double rgs;
  double k_raw;
  double k_clamped;
  double lower_bound;
  double upper_bound;
  double slack_lower;
  double slack_upper;
};

namespace detail {

inline Fig2Row fig2_row(std::string series, long long index, const PureThreeModeParams& p) {
  Fig2Row row{std::move(series), index, p.a, p.b, p.c, 0, 0, 0, 0, 0, 0, 0};
  row.rgs = rgs_closed_form(p);
  row.k_raw = key_rate_mode_invariant(standard_form_pure(p));
  row.k_clamped = std::max(0.0, row.k_raw);
  row.lower_bound = qss_lower_bound(row.rgs);
  row.upper_bound = qss_upper_bound(row.rgs);
  row.slack_lower = row.k_raw - row.lower_bound;
  row.slack_upper = row.upper_bound - row.k_raw;
  return row;
}

}  // namespace detail

/// Value of b = c used for the asymptotic (b = c -> infinity) upper-boundary family.
inline constexpr double kUpperFamilyLocal = 1e3;

/// Random standard-form states (cfg.count of them) followed by the three overlay families,
/// each on `overlay_points` values of a in [1, cfg.a_max]: b = c = (a+1)/2, b = c = 1e3, a = b = c.
inline std::vector<Fig2Row> fig2_campaign(const SamplerConfig& cfg, unsigned threads = 1, int overlay_points = 50) {
  const auto sampler = random_params(cfg);
  std::vector<Fig2Row> rows = parallel_map(cfg.count, threads, [&](std::size_t i) {
    return detail::fig2_row("sample", static_cast<long long>(i), sampler.at(i));
  });
  for (int i = 0; i < overlay_points; ++i) {
    const double a = overlay_points == 1 ? 1.0 : 1.0 + (cfg.a_max - 1.0) * i / (overlay_points - 1);
    // a = 2b - 1 is exact in floating point, so the parameters sit exactly on the triangle edge.
    const double b = 0.5 * (a + 1.0);
    rows.push_back(detail::fig2_row("lower_family", -1, {2.0 * b - 1.0, b, b}));
  }
  for (int i = 0; i < overlay_points; ++i) {
    const double a = overlay_points == 1 ? 1.0 : 1.0 + (cfg.a_max - 1.0) * i / (overlay_points - 1);
    rows.push_back(detail::fig2_row("upper_family", -1, {a, kUpperFamilyLocal, kUpperFamilyLocal}));
  }
  for (int i = 0; i < overlay_points; ++i) {
    const double a = overlay_points == 1 ? 1.0 : 1.0 + (cfg.a_max - 1.0) * i / (overlay_points - 1);
    rows.push_back(detail::fig2_row("ghz", -1, {a, a, a}));
  }
  return rows;
}

}  // namespace steerlab

#endif  // STEERLAB_QSS_HPP
