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

#include "steerlab/io.hpp"

#include "gtest/gtest.h"

#include <cstdlib>
#include <sstream>

using namespace steerlab;

TEST(io, state_json_round_trip_is_exact) {
  const auto states = random_mixed(3, {.seed = 90, .count = 50}).take();
  for (const auto& s : states) {
    const auto text = state_to_json(s).dump();
    const auto back = state_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(back.matrix(), s.matrix());
  }
}

TEST(io, state_report_fields) {
  const auto j = state_report_json(standard_form_pure({2, 1.5, 1.5}));
  EXPECT_EQ(j["schema"], kSchema);
  EXPECT_TRUE(j["pure"].get<bool>());
  EXPECT_TRUE(j["standard_form"].get<bool>());
  EXPECT_NEAR(j["local_invariants"][0].get<double>(), 2.0, 1e-12);
  EXPECT_EQ(j["symplectic_eigenvalues"].size(), 3u);
}

TEST(io, malformed_and_unphysical_input) {
  using nlohmann::json;
  EXPECT_THROW(state_from_json(json::array()), UsageError);
  EXPECT_THROW(state_from_json(json{{"n_modes", 1}}), UsageError);
  EXPECT_THROW(state_from_json(json{{"n_modes", 1}, {"matrix", {{1, 0}}}}), UsageError);
  EXPECT_THROW(state_from_json(json{{"n_modes", 1}, {"matrix", {{1, 0}, {0, "x"}}}}), UsageError);
  EXPECT_THROW(state_from_json(json{{"n_modes", 0}, {"matrix", json::array()}}), UsageError);
  EXPECT_THROW(state_from_json(json{{"n_modes", 1}, {"matrix", {{0.5, 0}, {0, 0.5}}}}), DomainError);
}

TEST(io, mode_labels) {
  EXPECT_EQ(mode_label({0}), "A");
  EXPECT_EQ(mode_label({1, 2}), "BC");
  EXPECT_EQ(parse_mode_label("bc", 3), (ModeSet{1, 2}));
  EXPECT_EQ(parse_mode_label("CA", 3), (ModeSet{0, 2}));
  EXPECT_THROW(parse_mode_label("D", 3), UsageError);
  EXPECT_THROW(parse_mode_label("AA", 3), UsageError);
  EXPECT_THROW(parse_mode_label("", 3), UsageError);
}

TEST(io, format_double_round_trips) {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, 4.9e-324}) {
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(io, csv_headers) {
  std::ostringstream a, b, c;
  write_fig1a_csv(a, fig1a_sweep(2.0, 4, 3.0));
  write_fig1b_csv(b, fig1b_sweep(0.345, 2));
  write_fig2_csv(c, fig2_campaign({.seed = 1, .count = 2}, 1, 1));
  EXPECT_EQ(a.str().substr(0, 8), "b,c,rgs\n");
  EXPECT_EQ(b.str().substr(0, 12), "R,a,b,c,rgs\n");
  std::istringstream lines(c.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "sample_index,a,b,c,rgs,k_raw,k_clamped,lower_bound,upper_bound,slack_lower,slack_upper,series");
  std::getline(lines, line);
  EXPECT_EQ(line.substr(0, 2), "0,");
  std::getline(lines, line);
  std::getline(lines, line);
  EXPECT_EQ(line.front(), ',');
  EXPECT_EQ(line.substr(line.rfind(',') + 1), "lower_family");
}

TEST(io, key_value_config) {
  std::istringstream in("# sampler\nseed = 7\n\n samples=100 # inline\ndistribution = log-uniform\n");
  const auto kv = parse_key_value(in);
  EXPECT_EQ(kv.at("seed"), "7");
  EXPECT_EQ(kv.at("samples"), "100");
  EXPECT_EQ(kv.at("distribution"), "log-uniform");
  std::istringstream bad("seed 7\n");
  EXPECT_THROW(parse_key_value(bad), UsageError);
}
