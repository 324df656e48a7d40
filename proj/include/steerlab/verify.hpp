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

// Seeded property campaigns over random Gaussian states. Each check produces a slack that
// must be >= -tolerance; results are reduced in sample order so they do not depend on the
// number of worker threads.

#ifndef STEERLAB_VERIFY_HPP
#define STEERLAB_VERIFY_HPP

#include "steerlab/core.hpp"
#include "steerlab/monogamy.hpp"
#include "steerlab/qss.hpp"
#include "steerlab/random.hpp"
#include "steerlab/states.hpp"
#include "steerlab/steering.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace steerlab {

enum class Suite { Monogamy, Exclusivity, Logdet, Ssa, RgsConsistency, QssBounds };

inline constexpr std::array<Suite, 6> kAllSuites{Suite::Monogamy,       Suite::Exclusivity,
                                                 Suite::Logdet,         Suite::Ssa,
                                                 Suite::RgsConsistency, Suite::QssBounds};

inline std::string_view suite_name(Suite s) {
  switch (s) {
    case Suite::Monogamy: return "monogamy";
    case Suite::Exclusivity: return "exclusivity";
    case Suite::Logdet: return "logdet";
    case Suite::Ssa: return "ssa";
    case Suite::RgsConsistency: return "rgs-consistency";
    case Suite::QssBounds: return "qss-bounds";
  }
  return "?";
}

inline std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : kAllSuites)
    if (suite_name(s) == name) return s;
  return std::nullopt;
}

struct SuiteResult {
  Suite suite = Suite::Monogamy;
  std::size_t samples = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  double tolerance = 1e-9;
  double worst_slack = std::numeric_limits<double>::infinity();
  long long worst_index = -1;
  std::string worst_case;  // which check produced worst_slack
  std::optional<CovarianceMatrix> worst_state;

  bool passed() const { return violations == 0; }
};

namespace detail {

struct SampleOutcome {
  std::size_t checks = 0;
  std::size_t violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  std::string label;
  std::optional<CovarianceMatrix> state;

  void add(double slack, double tol, const std::string& what, const CovarianceMatrix& s) {
    ++checks;
    if (!(slack >= -tol)) ++violations;  // NaN counts as a violation
    if (!(slack >= worst)) {
      worst = slack;
      label = what;
      state = s;
    }
  }
};

inline std::string party_label(const ModeSet& m) {
  std::string out;
  for (int i : m) out += static_cast<char>('A' + i);
  return out;
}

inline std::string direction_label(const ModeSet& from, const ModeSet& to) {
  return party_label(from) + "->" + party_label(to);
}

inline SamplerConfig sub_config(const SamplerConfig& cfg, std::uint64_t tag) {
  SamplerConfig c = cfg;
  c.seed = substream(cfg.seed, tag);
  return c;
}

inline void monogamy_checks(SampleOutcome& o, const CovarianceMatrix& s, double tol) {
  const ModePartition parties = ModePartition::single_modes(s.n_modes());
  for (std::size_t k = 0; k < parties.size(); ++k) {
    for (auto dir : {MonogamyDirection::SteeredByRest, MonogamyDirection::SteersRest}) {
      const MonogamyReport r = monogamy_residual(s, parties, k, dir);
      const std::string what = std::to_string(s.n_modes()) + "-party focus " + party_label({static_cast<int>(k)}) +
                               (dir == MonogamyDirection::SteeredByRest ? " steered-by-rest" : " steers-rest");
      o.add(r.residual, tol, what, s);
    }
  }
}

inline SampleOutcome monogamy_sample(const SamplerConfig& cfg, std::size_t i, double tol) {
  SampleOutcome o;
  monogamy_checks(o, random_mixed(3, sub_config(cfg, 1)).at(i), tol);
  if (i % 10 == 0) monogamy_checks(o, random_mixed(4, sub_config(cfg, 2)).at(i / 10), tol);
  return o;
}

inline SampleOutcome exclusivity_sample(const SamplerConfig& cfg, std::size_t i, double tol) {
  SampleOutcome o;
  const CovarianceMatrix s =
      i % 2 == 0 ? random_pure(3, sub_config(cfg, 3)).at(i) : random_mixed(3, sub_config(cfg, 4)).at(i);
  for (int c = 0; c < 3; ++c) {
    const int a = (c + 1) % 3;
    const int b = (c + 2) % 3;
    o.add(0.0 - exclusivity_margin(s, {a}, {b}, c), tol, "min(G^{A->C}, G^{B->C}) with C=" + party_label({c}), s);
  }
  if (i % 4 == 3) {
    // Two-mode party A = {0, 1}.
    const CovarianceMatrix s4 = random_mixed(4, sub_config(cfg, 5)).at(i);
    o.add(0.0 - exclusivity_margin(s4, {0, 1}, {2}, 3), tol, "min(G^{AB->D}, G^{C->D})", s4);
  }
  return o;
}

inline SampleOutcome logdet_sample(const SamplerConfig& cfg, std::size_t i, double tol) {
  SampleOutcome o;
  const CovarianceMatrix s =
      i % 2 == 0 ? random_mixed(3, sub_config(cfg, 6)).at(i) : random_pure(3, sub_config(cfg, 7)).at(i);
  for (int k = 0; k < 3; ++k) {
    ModeSet rest;
    for (int m = 0; m < 3; ++m)
      if (m != k) rest.push_back(m);
    // Two-mode steered party: inequality.
    if (auto slack = logdet_steering_bound_check(s, {k}, rest))
      o.add(*slack, tol, "2G^{" + direction_label({k}, rest) + "} - logdet gap", s);
    // One-mode steered party: equality.
    if (auto slack = logdet_steering_bound_check(s, rest, {k}))
      o.add(-std::abs(*slack), tol, "|2G^{" + direction_label(rest, {k}) + "} - logdet gap|", s);
    for (int m : rest)
      if (auto slack = logdet_steering_bound_check(s, {m}, {k}))
        o.add(-std::abs(*slack), tol, "|2G^{" + direction_label({m}, {k}) + "} - logdet gap|", s);
  }
  if (i % 4 == 1) {
    const CovarianceMatrix s4 = random_mixed(4, sub_config(cfg, 8)).at(i);
    if (auto slack = logdet_steering_bound_check(s4, {0, 1}, {2, 3}))
      o.add(*slack, tol, "2G^{AB->CD} - logdet gap", s4);
  }
  return o;
}

inline SampleOutcome ssa_sample(const SamplerConfig& cfg, std::size_t i, double tol) {
  SampleOutcome o;
  const CovarianceMatrix s = random_mixed(3, sub_config(cfg, 9)).at(i);
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    const double slack = conditional_log_det(s, {b}, {a}) + conditional_log_det(s, {c}, {a}) -
                         conditional_log_det(s, {b, c}, {a});
    o.add(slack, tol, "I_{B|A} + I_{C|A} - I_{BC|A} with A=" + party_label({a}), s);
  }
  return o;
}

inline SampleOutcome rgs_sample(const SamplerConfig& cfg, std::size_t i, double tol) {
  SampleOutcome o;
  CovarianceMatrix s = CovarianceMatrix::vacuum(3);
  if (i % 2 == 0) {
    s = standard_form_pure(random_params(sub_config(cfg, 10)).at(i));
  } else {
    s = random_pure(3, sub_config(cfg, 11)).at(i);
  }
  const double closed = rgs_closed_form(local_invariants(s));
  const RgsValue v = rgs_residuals(s);
  o.add(-std::abs(v.steered_min() - closed), tol, "|steered-residual minimum - closed form|", s);
  o.add(-std::abs(v.steering_min() - closed), tol, "|steering-residual minimum - closed form|", s);
  o.add(v.value, tol, "RGS >= 0", s);
  return o;
}

inline SampleOutcome qss_sample(const SamplerConfig& cfg, std::size_t i, double tol) {
  SampleOutcome o;
  const PureThreeModeParams p = random_params(sub_config(cfg, 12)).at(i);
  const CovarianceMatrix s = standard_form_pure(p);
  const double g = rgs_closed_form(p);
  const double k = key_rate_mode_invariant(s);
  o.add(k - qss_lower_bound(g), tol, "K_full - (RGS/2 - ln(e/2))", s);
  o.add(qss_upper_bound(g) - k, tol, "(RGS - ln(e/2)) - K_full", s);
  for (int d = 0; d < 3; ++d) {
    const DealerRecord r = dealer_record(s, d, Quadrature::P);
    o.add(r.k_e_raw - r.k_full_raw, tol, "K_E - K_full, dealer " + party_label({d}), s);
  }
  return o;
}

}  // namespace detail

/// Runs one property campaign over cfg.count seeded samples.
inline SuiteResult run_suite(Suite suite, const SamplerConfig& cfg, unsigned threads = 1, double tol = 1e-9) {
  cfg.validate();
  std::function<detail::SampleOutcome(const SamplerConfig&, std::size_t, double)> fn;
  switch (suite) {
    case Suite::Monogamy: fn = detail::monogamy_sample; break;
    case Suite::Exclusivity: fn = detail::exclusivity_sample; break;
    case Suite::Logdet: fn = detail::logdet_sample; break;
    case Suite::Ssa: fn = detail::ssa_sample; break;
    case Suite::RgsConsistency: fn = detail::rgs_sample; break;
    case Suite::QssBounds: fn = detail::qss_sample; break;
  }
  const auto outcomes = parallel_map(cfg.count, threads, [&](std::size_t i) { return fn(cfg, i, tol); });

  SuiteResult r;
  r.suite = suite;
  r.samples = cfg.count;
  r.tolerance = tol;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    r.checks += o.checks;
    r.violations += o.violations;
    if (o.checks > 0 && (o.worst < r.worst_slack || r.worst_index < 0)) {
      r.worst_slack = o.worst;
      r.worst_index = static_cast<long long>(i);
      r.worst_case = o.label;
      r.worst_state = o.state;
    }
  }
  return r;
}

}  // namespace steerlab

#endif  // STEERLAB_VERIFY_HPP
