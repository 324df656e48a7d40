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

// steerlab command-line front end.
//
// Exit codes: 0 success, 1 property violation, 2 usage error, 3 domain error.
// Errors are reported as a single stderr line "steerlab: error[<kind>]: <message>".

#include "CLI11.hpp"
#include "json.hpp"

#include "steerlab/steerlab.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace steerlab;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

constexpr const char* kFig2Help =
    "Figure 2 CSV columns: sample_index,a,b,c,rgs,k_raw,k_clamped,lower_bound,upper_bound,"
    "slack_lower,slack_upper,series (series is sample, lower_family, upper_family or ghz; "
    "overlay rows have an empty sample_index). Figure 1a: b,c,rgs. Figure 1b: R,a,b,c,rgs.";

std::uint64_t default_seed() {
  if (const char* env = std::getenv("STEERLAB_SEED")) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("STEERLAB_SEED is not a non-negative integer");
  }
  return 42;
}

// Constructor flags shared by `state` and `analyze`.
struct StateFlags {
  std::optional<int> vacuum;
  std::optional<double> tmsv;
  std::vector<double> ghz;
  std::vector<double> standard_form;
  std::string input;

  void add_to(CLI::App* cmd, bool allow_input) {
    cmd->add_option("--vacuum", vacuum, "n-mode vacuum");
    cmd->add_option("--tmsv", tmsv, "two-mode squeezed vacuum with squeezing r");
    cmd->add_option("--ghz-network", ghz, "beamsplitter network state: r R R'")->expected(3);
    cmd->add_option("--standard-form", standard_form, "pure three-mode standard form: a b c")->expected(3);
    if (allow_input) cmd->add_option("--input,-i", input, "state JSON file");
  }

  CovarianceMatrix build() const {
    const int selected = (vacuum ? 1 : 0) + (tmsv ? 1 : 0) + (!ghz.empty() ? 1 : 0) +
                         (!standard_form.empty() ? 1 : 0) + (!input.empty() ? 1 : 0);
    if (selected != 1) throw UsageError("select exactly one state source");
    if (vacuum) return CovarianceMatrix::vacuum(*vacuum);
    if (tmsv) return two_mode_squeezed(*tmsv);
    if (!ghz.empty()) return ghz_network({ghz[0], ghz[1], ghz[2]});
    if (!standard_form.empty()) {
      const PureThreeModeParams p{standard_form[0], standard_form[1], standard_form[2]};
      try {
        p.validate(1e-9);
      } catch (const DomainError& e) {
        throw UsageError(std::string("--standard-form: ") + e.what());
      }
      return standard_form_pure(p);
    }
    std::ifstream in(input);
    if (!in) throw UsageError("cannot open " + input);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(input + ": " + e.what());
    }
    return state_from_json(j);
  }
};

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

struct SamplerFlags {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double r_max = 1.0;
  double a_max = 5.0;
  std::string distribution = "uniform";
  std::string config;
  unsigned threads = 1;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* r_max_opt = nullptr;
  CLI::Option* a_max_opt = nullptr;
  CLI::Option* dist_opt = nullptr;

  void add_to(CLI::App* cmd) {
    seed_opt = cmd->add_option("--seed", seed, "master seed (default 42, or $STEERLAB_SEED)");
    samples_opt = cmd->add_option("--samples", samples, "number of samples");
    r_max_opt = cmd->add_option("--r-max", r_max, "maximum squeezing of random states (default 1)");
    a_max_opt = cmd->add_option("--a-max", a_max, "maximum local invariant for (a,b,c) sampling (default 5)");
    dist_opt = cmd->add_option("--distribution", distribution, "uniform | log-uniform");
    cmd->add_option("--config", config, "key = value file with seed, samples, r_max, a_max, distribution");
    cmd->add_option("--threads", threads, "worker threads (0 = hardware concurrency)");
  }

  SamplerConfig resolve(std::size_t default_samples) const {
    SamplerConfig cfg;
    cfg.seed = default_seed();
    cfg.count = default_samples;
    cfg.r_max = r_max;
    cfg.a_max = a_max;
    std::string dist = distribution;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw UsageError("cannot open " + config);
      for (const auto& [k, v] : parse_key_value(in)) {
        try {
          if (k == "seed") cfg.seed = std::stoull(v);
          else if (k == "samples") cfg.count = std::stoull(v);
          else if (k == "r_max") cfg.r_max = std::stod(v);
          else if (k == "a_max") cfg.a_max = std::stod(v);
          else if (k == "distribution") dist = v;
          else throw UsageError("config: unknown key '" + k + "'");
        } catch (const std::logic_error& e) {
          if (dynamic_cast<const UsageError*>(&e)) throw;
          throw UsageError("config: bad value for '" + k + "'");
        }
      }
    }
    if (seed_opt->count()) cfg.seed = seed;
    if (samples_opt->count()) cfg.count = samples;
    if (r_max_opt->count()) cfg.r_max = r_max;
    if (a_max_opt->count()) cfg.a_max = a_max;
    if (dist_opt->count()) dist = distribution;
    if (dist == "uniform") cfg.distribution = ParamDistribution::Uniform;
    else if (dist == "log-uniform") cfg.distribution = ParamDistribution::LogUniform;
    else throw UsageError("unknown distribution '" + dist + "'");
    cfg.validate();
    return cfg;
  }
};

int cmd_state(const StateFlags& flags, const std::string& out) {
  emit(out, state_report_json(flags.build()).dump(2) + "\n");
  return 0;
}

struct AnalyzeFlags {
  std::vector<std::string> steering;
  bool rgs = false;
  bool keyrate = false;
  std::string key = "p";
  std::string out;
};

int cmd_analyze(const StateFlags& state_flags, const AnalyzeFlags& f) {
  const int selected = (!f.steering.empty() ? 1 : 0) + (f.rgs ? 1 : 0) + (f.keyrate ? 1 : 0);
  if (selected != 1) throw UsageError("select exactly one of --steering, --rgs, --keyrate");
  const CovarianceMatrix s = state_flags.build();
  nlohmann::json j;
  if (!f.steering.empty()) {
    const ModeSet from = parse_mode_label(f.steering[0], s.n_modes());
    const ModeSet to = parse_mode_label(f.steering[1], s.n_modes());
    if (!detail::disjoint(from, to)) throw UsageError("steering parties overlap");
    j = steering_to_json(gaussian_steering(s, from, to));
  } else if (f.rgs) {
    j = rgs_to_json(rgs(s));
  } else {
    KeyQuadrature k;
    if (f.key == "p") k = KeyQuadrature::P;
    else if (f.key == "x") k = KeyQuadrature::X;
    else if (f.key == "best") k = KeyQuadrature::Best;
    else throw UsageError("--key must be p, x or best");
    j = key_rate_report_to_json(key_rate_report(s, k));
  }
  emit(f.out, j.dump(2) + "\n");
  return 0;
}

struct VerifyFlags {
  std::string suite;
  std::string dump;
  std::string format = "text";
};

int cmd_verify(const VerifyFlags& f, const SamplerFlags& sf) {
  std::vector<Suite> suites;
  if (f.suite == "all") {
    suites.assign(kAllSuites.begin(), kAllSuites.end());
  } else if (auto s = parse_suite(f.suite)) {
    suites.push_back(*s);
  } else {
    throw UsageError("unknown suite '" + f.suite + "'");
  }
  if (f.format != "text" && f.format != "json") throw UsageError("--format must be text or json");
  const SamplerConfig cfg = sf.resolve(10000);

  bool ok = true;
  nlohmann::json all = nlohmann::json::array();
  std::ostringstream text;
  for (Suite suite : suites) {
    const SuiteResult r = run_suite(suite, cfg, sf.threads);
    ok = ok && r.passed();
    if (f.format == "json") {
      all.push_back(suite_result_to_json(r));
    } else {
      text << suite_name(r.suite) << ": samples=" << r.samples << " checks=" << r.checks
           << " violations=" << r.violations << " worst_slack=" << format_double(r.worst_slack)
           << " worst_sample=" << r.worst_index << " worst_case=\"" << r.worst_case << "\" "
           << (r.passed() ? "PASS" : "FAIL") << '\n';
    }
    if (!r.passed() && r.worst_state) {
      const std::string path = f.dump.empty() ? "steerlab-violation-" + std::string(suite_name(suite)) + ".json" : f.dump;
      nlohmann::json d = state_to_json(*r.worst_state);
      d["suite"] = std::string(suite_name(suite));
      d["worst_case"] = r.worst_case;
      d["worst_slack"] = r.worst_slack;
      d["seed"] = cfg.seed;
      d["sample_index"] = r.worst_index;
      std::ofstream(path) << d.dump(2) << '\n';
    }
  }
  if (f.format == "json") {
    std::cout << nlohmann::json{{"schema", kSchema}, {"seed", cfg.seed}, {"suites", all}}.dump(2) << '\n';
  } else {
    std::cout << "seed=" << cfg.seed << '\n' << text.str();
  }
  return ok ? 0 : kExitViolation;
}

struct SweepFlags {
  std::string figure;
  double a = 2.0;
  int grid = 200;
  double b_max = 5.0;
  double r = 0.345;
  int overlay = 50;
  std::string out;
  CLI::Option* grid_opt = nullptr;
};

int cmd_sweep(const SweepFlags& f, const SamplerFlags& sf) {
  std::ostringstream os;
  if (f.figure == "1a") {
    if (!(f.a >= 1.0) || f.grid < 2 || !(f.b_max > 1.0)) throw UsageError("figure 1a needs --a >= 1, --grid >= 2, --b-max > 1");
    write_fig1a_csv(os, fig1a_sweep(f.a, f.grid, f.b_max));
  } else if (f.figure == "1b") {
    const int grid = f.grid_opt->count() ? f.grid : 1000;
    if (!(f.r >= 0.0) || grid < 1) throw UsageError("figure 1b needs --r >= 0 and --grid >= 1");
    write_fig1b_csv(os, fig1b_sweep(f.r, grid));
  } else if (f.figure == "2") {
    if (f.overlay < 1) throw UsageError("--overlay-points must be >= 1");
    const SamplerConfig cfg = sf.resolve(100000);
    if (!(cfg.a_max > 1.0)) throw UsageError("figure 2 needs --a-max > 1");
    write_fig2_csv(os, fig2_campaign(cfg, sf.threads, f.overlay));
  } else {
    throw UsageError("--figure must be 1a, 1b or 2");
  }
  emit(f.out, os.str());
  return 0;
}

int cmd_threshold() {
  const SqueezingThreshold t = threshold_squeezing_ghz();
  std::cout << std::fixed << std::setprecision(4) << "r* = " << t.r << "\ndB = " << t.db << '\n';
  return 0;
}

int fail(const char* kind, const std::string& msg, int code) {
  std::string line = msg;
  for (char& ch : line)
    if (ch == '\n') ch = ' ';
  std::cerr << "steerlab: error[" << kind << "]: " << line << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steerlab: Gaussian steering, monogamy and secret-sharing key rates from covariance matrices"};
  app.require_subcommand(1);
  app.footer(kFig2Help);

  StateFlags state_flags;
  std::string state_out;
  auto* state = app.add_subcommand("state", "construct a state and print its CM as JSON");
  state_flags.add_to(state, false);
  state->add_option("--output,-o", state_out, "output file (default stdout)");

  StateFlags analyze_state;
  AnalyzeFlags analyze_flags;
  auto* analyze = app.add_subcommand("analyze", "steering, RGS or key-rate report for a state");
  analyze_state.add_to(analyze, true);
  analyze->add_option("--steering", analyze_flags.steering, "steering direction FROM TO, e.g. BC A")->expected(2);
  analyze->add_flag("--rgs", analyze_flags.rgs, "residual Gaussian steering (pure three-mode states)");
  analyze->add_flag("--keyrate", analyze_flags.keyrate, "secret-sharing key-rate report (standard-form states)");
  analyze->add_option("--key", analyze_flags.key, "key quadrature: p (default), x or best");
  analyze->add_option("--output,-o", analyze_flags.out, "output file (default stdout)");

  VerifyFlags verify_flags;
  SamplerFlags verify_sampler;
  auto* verify = app.add_subcommand("verify", "run seeded property campaigns");
  verify->add_option("--suite", verify_flags.suite,
                     "monogamy | exclusivity | logdet | ssa | rgs-consistency | qss-bounds | all")
      ->required();
  verify->add_option("--dump", verify_flags.dump, "where to write the worst violating state");
  verify->add_option("--format", verify_flags.format, "text (default) or json");
  verify_sampler.add_to(verify);

  SweepFlags sweep_flags;
  SamplerFlags sweep_sampler;
  auto* sweep = app.add_subcommand("sweep", "figure data as CSV");
  sweep->footer(kFig2Help);
  sweep->add_option("--figure", sweep_flags.figure, "1a | 1b | 2")->required();
  sweep->add_option("--a", sweep_flags.a, "figure 1a: fixed local invariant a (default 2)");
  sweep_flags.grid_opt = sweep->add_option("--grid", sweep_flags.grid, "grid resolution (1a default 200, 1b default 1000)");
  sweep->add_option("--b-max", sweep_flags.b_max, "figure 1a: upper end of the (b, c) grid (default 5)");
  sweep->add_option("--r", sweep_flags.r, "figure 1b: squeezing parameter (default 0.345)");
  sweep->add_option("--overlay-points", sweep_flags.overlay, "figure 2: points per overlay family (default 50)");
  sweep->add_option("--output,-o", sweep_flags.out, "output file (default stdout)");
  sweep_sampler.add_to(sweep);

  auto* threshold = app.add_subcommand("threshold", "GHZ-like squeezing needed for a positive key rate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("usage", e.what(), kExitUsage);
  }

  try {
    if (state->parsed()) return cmd_state(state_flags, state_out);
    if (analyze->parsed()) return cmd_analyze(analyze_state, analyze_flags);
    if (verify->parsed()) return cmd_verify(verify_flags, verify_sampler);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, sweep_sampler);
    if (threshold->parsed()) return cmd_threshold();
  } catch (const UsageError& e) {
    return fail("usage", e.what(), kExitUsage);
  } catch (const DomainError& e) {
    return fail("domain", e.what(), kExitDomain);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kExitDomain);
  }
  return kExitUsage;
}
