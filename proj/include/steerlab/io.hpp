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

#ifndef STEERLAB_IO_HPP
#define STEERLAB_IO_HPP

#include "json.hpp"

#include "steerlab/core.hpp"
#include "steerlab/monogamy.hpp"
#include "steerlab/qss.hpp"
#include "steerlab/states.hpp"
#include "steerlab/steering.hpp"
#include "steerlab/verify.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace steerlab {

inline constexpr const char* kSchema = "steerlab/v1";

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Party label for a set of modes: {0} -> "A", {1, 2} -> "BC".
inline std::string mode_label(const ModeSet& m) {
  std::string out;
  for (int i : m) out += static_cast<char>('A' + i);
  return out;
}

/// Inverse of mode_label; throws UsageError on anything but distinct letters within range.
inline ModeSet parse_mode_label(const std::string& label, int n_modes) {
  if (label.empty()) throw UsageError("empty party label");
  ModeSet out;
  for (char ch : label) {
    const int m = ch >= 'a' && ch <= 'z' ? ch - 'a' : ch - 'A';
    if (m < 0 || m >= n_modes)
      throw UsageError("party label '" + label + "' names a mode outside A.." +
                       std::string(1, static_cast<char>('A' + n_modes - 1)));
    out.push_back(m);
  }
  return detail::checked_modes(out, n_modes, "party label");
}

inline nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

/// {"schema", "n_modes", "matrix"}.
inline nlohmann::json state_to_json(const CovarianceMatrix& s) {
  return {{"schema", kSchema}, {"n_modes", s.n_modes()}, {"matrix", matrix_to_json(s.matrix())}};
}

/// State JSON plus purity, symplectic spectrum and (for three modes) local invariants.
inline nlohmann::json state_report_json(const CovarianceMatrix& s) {
  nlohmann::json j = state_to_json(s);
  j["pure"] = is_pure(s);
  j["symplectic_eigenvalues"] = vector_to_json(symplectic_eigenvalues(s.matrix()));
  if (s.n_modes() == 3) {
    const PureThreeModeParams p = local_invariants(s);
    j["local_invariants"] = {p.a, p.b, p.c};
    j["standard_form"] = is_standard_form(s);
  }
  return j;
}

/// Parses {"n_modes": n, "matrix": [[...]]}. Malformed documents raise UsageError, unphysical
/// matrices DomainError.
inline CovarianceMatrix state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n_modes") || !j.contains("matrix"))
    throw UsageError("state JSON must be an object with \"n_modes\" and \"matrix\"");
  if (!j["n_modes"].is_number_integer() || j["n_modes"].get<int>() < 1)
    throw UsageError("state JSON: \"n_modes\" must be a positive integer");
  const int n = j["n_modes"].get<int>();
  const auto& rows = j["matrix"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != 2 * n)
    throw UsageError("state JSON: \"matrix\" must have 2*n_modes rows");
  Matrix m(2 * n, 2 * n);
  for (int r = 0; r < 2 * n; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != 2 * n)
      throw UsageError("state JSON: every row must have 2*n_modes entries");
    for (int c = 0; c < 2 * n; ++c) {
      if (!rows[r][c].is_number()) throw UsageError("state JSON: non-numeric matrix entry");
      m(r, c) = rows[r][c].get<double>();
    }
  }
  return CovarianceMatrix(m);
}

inline nlohmann::json steering_to_json(const SteeringValue& v) {
  return {{"schema", kSchema},
          {"steering", mode_label(v.steering)},
          {"steered", mode_label(v.steered)},
          {"value", v.value},
          {"schur_spectrum", vector_to_json(v.schur_spectrum)}};
}

inline const char* direction_name(MonogamyDirection d) {
  return d == MonogamyDirection::SteeredByRest ? "steered" : "steering";
}

inline nlohmann::json rgs_to_json(const RgsValue& v) {
  return {{"schema", kSchema},
          {"rgs", v.value},
          {"pivot", mode_label({v.pivot})},
          {"direction", direction_name(v.direction)},
          {"steered_residuals", v.steered_residuals},
          {"steering_residuals", v.steering_residuals}};
}

inline const char* quadrature_name(Quadrature q) { return q == Quadrature::P ? "p" : "x"; }

inline const char* key_quadrature_name(KeyQuadrature k) {
  switch (k) {
    case KeyQuadrature::P: return "p";
    case KeyQuadrature::X: return "x";
    case KeyQuadrature::Best: return "best";
  }
  return "?";
}

inline nlohmann::json key_rate_report_to_json(const KeyRateReport& r) {
  nlohmann::json dealers = nlohmann::json::array();
  for (const DealerRecord& d : r.dealers) {
    const std::string b = mode_label({d.players[0]});
    const std::string c = mode_label({d.players[1]});
    dealers.push_back({{"dealer", mode_label({d.dealer})},
                       {"players", {b, c}},
                       {"key_quadrature", quadrature_name(d.key)},
                       {"v_key_joint", d.v_key_joint},
                       {"v_check_joint", d.v_check_joint},
                       {"v_check_single", {{b, d.v_check_single[0]}, {c, d.v_check_single[1]}}},
                       {"key_gains", {d.key_gains.g, d.key_gains.h}},
                       {"check_gains", {d.check_gains.g, d.check_gains.h}},
                       {"k_e_raw", d.k_e_raw},
                       {"k_full_raw", d.k_full_raw},
                       {"k_e", d.k_e},
                       {"k_full", d.k_full}});
  }
  return {{"schema", kSchema},
          {"key_quadrature", key_quadrature_name(r.key)},
          {"dealers", dealers},
          {"k_full_mode_invariant_raw", r.mode_invariant_raw},
          {"k_full_mode_invariant", r.mode_invariant},
          {"rgs", r.rgs},
          {"lower_bound", r.lower_bound},
          {"upper_bound", r.upper_bound},
          {"slack_lower", r.slack_lower},
          {"slack_upper", r.slack_upper}};
}

inline nlohmann::json suite_result_to_json(const SuiteResult& r) {
  nlohmann::json j = {{"suite", std::string(suite_name(r.suite))},
                      {"samples", r.samples},
                      {"checks", r.checks},
                      {"violations", r.violations},
                      {"tolerance", r.tolerance},
                      {"worst_slack", r.worst_slack},
                      {"worst_index", r.worst_index},
                      {"worst_case", r.worst_case},
                      {"passed", r.passed()}};
  if (r.worst_state) j["worst_state"] = state_to_json(*r.worst_state);
  return j;
}

// CSV writers. Columns are documented next to each function.

/// b,c,rgs
inline void write_fig1a_csv(std::ostream& os, const std::vector<Fig1aRow>& rows) {
  os << "b,c,rgs\n";
  for (const auto& r : rows) os << format_double(r.b) << ',' << format_double(r.c) << ',' << format_double(r.rgs) << '\n';
}

/// R,a,b,c,rgs
inline void write_fig1b_csv(std::ostream& os, const std::vector<Fig1bRow>& rows) {
  os << "R,a,b,c,rgs\n";
  for (const auto& r : rows)
    os << format_double(r.R) << ',' << format_double(r.a) << ',' << format_double(r.b) << ','
       << format_double(r.c) << ',' << format_double(r.rgs) << '\n';
}

/// sample_index,a,b,c,rgs,k_raw,k_clamped,lower_bound,upper_bound,slack_lower,slack_upper,series
/// Overlay rows leave sample_index empty.
inline void write_fig2_csv(std::ostream& os, const std::vector<Fig2Row>& rows) {
  os << "sample_index,a,b,c,rgs,k_raw,k_clamped,lower_bound,upper_bound,slack_lower,slack_upper,series\n";
  for (const auto& r : rows) {
    if (r.sample_index >= 0) os << r.sample_index;
    for (double v : {r.a, r.b, r.c, r.rgs, r.k_raw, r.k_clamped, r.lower_bound, r.upper_bound, r.slack_lower,
                     r.slack_upper})
      os << ',' << format_double(v);
    os << ',' << r.series << '\n';
  }
}

/// Parses "key = value" lines; '#' starts a comment, blank lines are ignored.
inline std::map<std::string, std::string> parse_key_value(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

}  // namespace steerlab

#endif  // STEERLAB_IO_HPP
