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

#include "steerlab/monogamy.hpp"

#include "gtest/gtest.h"

#include <numeric>

using namespace steerlab;

TEST(monogamy, product_state_has_zero_terms) {
  const auto s = CovarianceMatrix::vacuum(3);
  const auto parties = ModePartition::single_modes(3);
  for (auto dir : {MonogamyDirection::SteeredByRest, MonogamyDirection::SteersRest}) {
    const auto r = monogamy_residual(s, parties, 1, dir);
    EXPECT_EQ(r.collective, 0.0);
    EXPECT_EQ(r.residual, 0.0);
    ASSERT_EQ(r.pairwise.size(), 2u);
  }
}

TEST(monogamy, residual_is_recomputable) {
  const auto s = random_mixed(4, {.seed = 60}).at(3);
  const auto r = monogamy_residual(s, ModePartition::single_modes(4), 2, MonogamyDirection::SteersRest);
  EXPECT_DOUBLE_EQ(r.residual, r.collective - std::accumulate(r.pairwise.begin(), r.pairwise.end(), 0.0));
  EXPECT_EQ(r.pairwise.size(), 3u);
}

TEST(monogamy, rejects_multimode_parties) {
  const auto s = CovarianceMatrix::vacuum(3);
  EXPECT_THROW(monogamy_residual(s, ModePartition({{0, 1}, {2}}, 3), 0, MonogamyDirection::SteeredByRest),
               UsageError);
  EXPECT_THROW(monogamy_residual(s, ModePartition::single_modes(3), 3, MonogamyDirection::SteeredByRest),
               UsageError);
}

TEST(monogamy, tripartite_inequality_on_example_state) {
  const auto s = standard_form_pure({2, 1.5, 1.5});
  const auto parties = ModePartition::single_modes(3);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto r = monogamy_residual(s, parties, k, MonogamyDirection::SteeredByRest);
    EXPECT_GE(r.residual, -1e-9);
    // The half-weighted form is weaker whenever pairwise terms are non-negative.
    const double half = r.collective - 0.5 * (r.pairwise[0] + r.pairwise[1]);
    EXPECT_LE(r.residual, half + 1e-15);
  }
}

TEST(monogamy, holds_on_random_mixed_states) {
  for (int n : {3, 4}) {
    const auto states = random_mixed(n, {.seed = 61u + n, .count = 1500, .r_max = 1.3}).take();
    const auto parties = ModePartition::single_modes(n);
    for (const auto& s : states)
      for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k)
        for (auto dir : {MonogamyDirection::SteeredByRest, MonogamyDirection::SteersRest})
          EXPECT_GE(monogamy_residual(s, parties, k, dir).residual, -1e-9);
  }
}

TEST(monogamy, partial_parties_trace_out_the_rest) {
  const auto s = random_mixed(4, {.seed = 63}).at(0);
  const auto direct = monogamy_residual(s, ModePartition({{0}, {2}, {3}}, 4), 1, MonogamyDirection::SteeredByRest);
  const auto traced = monogamy_residual(partial_trace(s, {0, 2, 3}), ModePartition::single_modes(3), 1,
                                        MonogamyDirection::SteeredByRest);
  EXPECT_NEAR(direct.residual, traced.residual, 1e-12);
}

TEST(monogamy, rgs_closed_form_values) {
  EXPECT_EQ(rgs_closed_form({1, 1, 1}), 0.0);
  EXPECT_NEAR(rgs_closed_form({2, 3, 3}), std::log(2.0), 1e-15);
  EXPECT_NEAR(rgs_closed_form({1, 2.5, 2.5}), 0.0, 1e-15);
  EXPECT_THROW(rgs_closed_form({3, 1, 1}), DomainError);
}

TEST(monogamy, rgs_vacuum_and_ghz) {
  EXPECT_NEAR(rgs(CovarianceMatrix::vacuum(3)).value, 0.0, 1e-12);
  for (double a : {1.5, 2.0, 4.0}) EXPECT_NEAR(rgs(standard_form_pure({a, a, a})).value, std::log(a), 1e-9);
  const RgsValue v = rgs(standard_form_pure({2, 3, 3}));
  EXPECT_NEAR(v.value, std::log(2.0), 1e-9);
  EXPECT_NEAR(v.steered_min(), v.steering_min(), 1e-9);
}

TEST(monogamy, rgs_requires_pure_three_mode) {
  EXPECT_THROW(rgs(random_mixed(3, {.seed = 64}).at(0)), DomainError);
  EXPECT_THROW(rgs(CovarianceMatrix::vacuum(2)), UsageError);
}

TEST(monogamy, rgs_matches_closed_form_on_random_states) {
  const auto params = random_params({.seed = 65, .count = 1000, .a_max = 6}).take();
  for (const auto& p : params) {
    const RgsValue v = rgs(standard_form_pure(p));
    const double closed = rgs_closed_form(p);
    EXPECT_NEAR(v.steered_min(), closed, 1e-9);
    EXPECT_NEAR(v.steering_min(), closed, 1e-9);
    EXPECT_GE(v.value, -1e-9);
    for (double r : v.steered_residuals) EXPECT_GE(r, -1e-9);
    for (double r : v.steering_residuals) EXPECT_GE(r, -1e-9);
  }
  const auto states = random_pure(3, {.seed = 66, .count = 1000}).take();
  for (const auto& s : states) EXPECT_NEAR(rgs(s).value, rgs_closed_form(local_invariants(s)), 1e-9);
}

TEST(monogamy, rgs_invariant_under_relabeling) {
  const auto s = random_pure(3, {.seed = 67}).at(0);
  const double base = rgs(s).value;
  EXPECT_NEAR(rgs(partial_trace(s, {2, 0, 1})).value, base, 1e-12);
  EXPECT_NEAR(rgs(partial_trace(s, {1, 0, 2})).value, base, 1e-12);
}

TEST(monogamy, fig1a_maximum_on_bisymmetric_ray) {
  const auto rows = fig1a_sweep(2.0, 200, 5.0);
  ASSERT_FALSE(rows.empty());
  auto best = rows.front();
  for (const auto& r : rows) {
    EXPECT_TRUE((PureThreeModeParams{2.0, r.b, r.c}.satisfies_triangle(1e-12)));
    if (r.rgs > best.rgs) best = r;
  }
  EXPECT_NEAR(best.rgs, std::log(2.0), 1e-6);
  for (const auto& r : rows)
    if (r.b == r.c && r.b >= 2.0) {
      EXPECT_NEAR(r.rgs, std::log(2.0), 1e-9);
    }
  EXPECT_THROW(fig1a_sweep(2.0, 1, 5.0), UsageError);
}

TEST(monogamy, fig1b_argmax_at_one_third) {
  const auto rows = fig1b_sweep(0.345, 1000);
  ASSERT_EQ(rows.size(), 1001u);
  auto best = rows.front();
  for (const auto& r : rows)
    if (r.rgs > best.rgs) best = r;
  EXPECT_NEAR(best.R, 1.0 / 3.0, 1e-3);
  for (const auto& r : fig1b_sweep(0.0, 20)) EXPECT_NEAR(r.rgs, 0.0, 1e-12);
}
