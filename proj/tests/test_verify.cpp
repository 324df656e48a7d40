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

#include "steerlab/verify.hpp"

#include "gtest/gtest.h"

#include "steerlab/io.hpp"

using namespace steerlab;

TEST(verify, suite_names_round_trip) {
  for (Suite s : kAllSuites) EXPECT_EQ(parse_suite(suite_name(s)), s);
  EXPECT_FALSE(parse_suite("nope").has_value());
}

TEST(verify, all_suites_pass_on_small_campaign) {
  for (Suite s : kAllSuites) {
    const SuiteResult r = run_suite(s, {.seed = 100, .count = 200});
    EXPECT_TRUE(r.passed()) << suite_name(s) << " worst " << r.worst_slack << " " << r.worst_case;
    EXPECT_EQ(r.samples, 200u);
    EXPECT_GE(r.checks, r.samples);
    EXPECT_GE(r.worst_slack, -1e-9);
    EXPECT_FALSE(r.worst_case.empty());
  }
}

TEST(verify, results_do_not_depend_on_thread_count) {
  for (Suite s : kAllSuites) {
    const SamplerConfig cfg{.seed = 101, .count = 60};
    const auto one = suite_result_to_json(run_suite(s, cfg, 1)).dump();
    const auto four = suite_result_to_json(run_suite(s, cfg, 4)).dump();
    EXPECT_EQ(one, four) << suite_name(s);
  }
}

TEST(verify, negative_tolerance_reports_violations) {
  // Saturated checks (slack 0) count as violations once the tolerance is negative.
  const SuiteResult r = run_suite(Suite::QssBounds, {.seed = 102, .count = 20}, 1, -1.0);
  EXPECT_GT(r.violations, 0u);
  EXPECT_FALSE(r.passed());
  ASSERT_TRUE(r.worst_state.has_value());
}
