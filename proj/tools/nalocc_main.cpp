// Copyright 2026 The nalocc Authors
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

// Command-line front end: optimize | bounds | sweep | validate.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nalocc/experiment.hpp"
#include "nalocc/parallel.hpp"
#include "nalocc/random.hpp"

namespace {

using namespace nalocc;

struct ProtocolFlags {
  int pairs = 1;
  double gamma = 0.0;
  double p = 0.0;
  std::string mixing = "bayes";
  std::string cnot = "01";
  std::string cnot_alice;
  std::string cnot_bob;

  void attach(CLI::App* app, bool with_p = true) {
    app->add_option("--s", pairs, "Number of qubit pairs S")->check(CLI::IsMember({1, 2}));
    app->add_option("--gamma", gamma, "Amplitude damping noise")->check(CLI::Range(0.0, 1.0));
    if (with_p) {
      app->add_option("--p", p, "BSC bit-flip probability")->check(CLI::Range(0.0, 0.5));
      app->add_option("--mixing", mixing, "Bob state mixing rule")
          ->check(CLI::IsMember({"bayes", "literal"}));
      app->add_option("--cnot", cnot, "CNOT wiring on both sides (S=2)")
          ->check(CLI::IsMember({"01", "10"}));
      app->add_option("--cnot-alice", cnot_alice, "Override Alice's CNOT wiring")
          ->check(CLI::IsMember({"01", "10"}));
      app->add_option("--cnot-bob", cnot_bob, "Override Bob's CNOT wiring")
          ->check(CLI::IsMember({"01", "10"}));
    }
  }

  ProtocolConfig config() const {
    ProtocolConfig c;
    if (pairs == 2) {
      const auto both = parse_cnot_wiring(cnot);
      c.ansatz = AnsatzSpec::two_pair(cnot_alice.empty() ? both : parse_cnot_wiring(cnot_alice),
                                      cnot_bob.empty() ? both : parse_cnot_wiring(cnot_bob));
    }
    c.gamma = gamma;
    c.flip_prob = p;
    c.mixing = parse_mixing_rule(mixing);
    c.validate();
    return c;
  }
};

struct OptimizerFlags {
  double lr = 0.01;
  int iters = 1000;
  int restarts = 8;
  std::uint64_t seed = 0;
  std::string grad = "shift";

  void attach(CLI::App* app) {
    app->add_option("--lr", lr, "Adam learning rate")->check(CLI::PositiveNumber);
    app->add_option("--iters", iters, "Adam iterations per restart")->check(CLI::PositiveNumber);
    app->add_option("--restarts", restarts, "Random restarts")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "Base random seed");
    app->add_option("--grad", grad, "Gradient method")->check(CLI::IsMember({"shift", "fd"}));
  }

  OptimizerConfig config() const {
    OptimizerConfig c;
    c.learning_rate = lr;
    c.iterations = iters;
    c.restarts = restarts;
    c.seed = seed;
    c.gradient_method = parse_gradient_method(grad);
    c.validate();
    return c;
  }
};

struct SdpFlags {
  double tol = 1e-7;
  int max_iters = 50000;
  double penalty = 1.0;
  std::string method = "admm";

  void attach(CLI::App* app) {
    app->add_option("--sdp-tol", tol, "SDP tolerance")->check(CLI::PositiveNumber);
    app->add_option("--sdp-max-iters", max_iters, "SDP iteration cap")->check(CLI::PositiveNumber);
    app->add_option("--sdp-penalty", penalty, "SDP penalty / step scale")->check(CLI::PositiveNumber);
    app->add_option("--sdp-method", method, "SDP algorithm")
        ->check(CLI::IsMember({"admm", "projected_ascent"}));
  }

  SdpConfig config() const {
    SdpConfig c;
    c.tolerance = tol;
    c.max_iterations = max_iters;
    c.penalty = penalty;
    c.method = parse_sdp_method(method);
    c.validate();
    return c;
  }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << text;
}

std::string render(const nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

int jobs_from(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("QSD_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return default_jobs();
}

std::vector<Scheme> parse_scheme_list(const std::string& text) {
  std::vector<Scheme> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_scheme(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational LOCC state discrimination under noisy classical communication"};
  app.require_subcommand(1);

  // optimize
  auto* optimize = app.add_subcommand("optimize", "Train the circuit angles for one configuration");
  ProtocolFlags opt_protocol;
  OptimizerFlags opt_flags;
  std::string opt_out;
  opt_protocol.attach(optimize);
  opt_flags.attach(optimize);
  optimize->add_option("--out", opt_out, "Result document path (default stdout)");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Helstrom, PPT and Bob-only upper bounds");
  ProtocolFlags bound_protocol;
  SdpFlags bound_sdp;
  std::string bound_out;
  bound_protocol.attach(bounds, false);
  bound_sdp.attach(bounds);
  bounds->add_option("--out", bound_out, "Result document path (default stdout)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over p or gamma, written as CSV");
  std::string preset_name;
  std::string variable;
  double from = NAN, to = NAN, fixed = NAN;
  int steps = 0;
  int jobs = 0;
  std::string schemes;
  std::string sweep_out;
  std::string sweep_mixing = "bayes";
  std::string sweep_cnot = "01";
  OptimizerFlags sweep_opt;
  SdpFlags sweep_sdp;
  sweep->add_option("--preset", preset_name, "Built-in sweep")->check(CLI::IsMember({"fig4", "fig5"}));
  sweep->add_option("--variable", variable, "Swept parameter")->check(CLI::IsMember({"p", "gamma"}));
  sweep->add_option("--from", from, "Grid start");
  sweep->add_option("--to", to, "Grid end");
  sweep->add_option("--steps", steps, "Grid points")->check(CLI::Range(2, 100000));
  sweep->add_option("--fixed", fixed, "Value of the parameter that is not swept");
  sweep->add_option("--schemes", schemes, "Comma-separated scheme list");
  sweep->add_option("--jobs", jobs, "Worker threads (default: QSD_JOBS or hardware)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--mixing", sweep_mixing, "Bob state mixing rule")
      ->check(CLI::IsMember({"bayes", "literal"}));
  sweep->add_option("--cnot", sweep_cnot, "CNOT wiring for S=2")->check(CLI::IsMember({"01", "10"}));
  sweep->add_option("--out", sweep_out, "CSV path (default stdout)");
  sweep_opt.attach(sweep);
  sweep_sdp.attach(sweep);

  // validate
  auto* validate = app.add_subcommand("validate", "Monte Carlo check of the analytic success probability");
  ProtocolFlags val_protocol;
  std::int64_t samples = 100000;
  std::uint64_t val_seed = 0;
  std::string angles_text;
  std::string angles_from;
  std::string val_out;
  val_protocol.attach(validate);
  validate->add_option("--samples", samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  validate->add_option("--seed", val_seed, "Sampler seed (also draws angles if none are given)");
  validate->add_option("--angles", angles_text, R"(Angles as JSON {"alice":[..],"bob":[[..],..]})");
  validate->add_option("--angles-from", angles_from, "Take best_angles from an optimize document");
  validate->add_option("--out", val_out, "Report path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*optimize) {
      const auto protocol = opt_protocol.config();
      const auto opt = opt_flags.config();
      emit(render(optimize_document(protocol, opt, train(protocol, opt))), opt_out);
      return 0;
    }
    if (*bounds) {
      emit(render(bounds_document(bound_protocol.gamma, bound_protocol.pairs, bound_sdp.config())),
           bound_out);
      return 0;
    }
    if (*sweep) {
      SweepSpec spec = preset_name.empty() ? SweepSpec{} : preset(preset_name);
      if (!variable.empty()) spec.variable = parse_sweep_variable(variable);
      if (!std::isnan(from)) spec.from = from;
      if (!std::isnan(to)) spec.to = to;
      if (!std::isnan(fixed)) spec.fixed = fixed;
      if (steps > 0) spec.steps = steps;
      if (!schemes.empty()) spec.schemes = parse_scheme_list(schemes);
      spec.seed = sweep_opt.seed;
      spec.optimizer = sweep_opt.config();
      spec.sdp = sweep_sdp.config();
      spec.mixing = parse_mixing_rule(sweep_mixing);
      spec.cnot = parse_cnot_wiring(sweep_cnot);
      const auto records = run_sweep(spec, jobs_from(jobs));
      std::ostringstream csv;
      write_csv(csv, records);
      emit(csv.str(), sweep_out);
      return 0;
    }
    if (*validate) {
      const auto protocol = val_protocol.config();
      AngleSet angles;
      if (!angles_text.empty()) {
        angles = angles_from_json(nlohmann::json::parse(angles_text));
      } else if (!angles_from.empty()) {
        std::ifstream in(angles_from);
        if (!in) throw std::runtime_error("cannot read " + angles_from);
        angles = angles_from_json(nlohmann::json::parse(in).at("result").at("best_angles"));
      } else {
        Rng rng(derive_seed(val_seed, {0xa9c1e5ULL}));
        std::vector<double> params(static_cast<std::size_t>(parameter_count(protocol.ansatz)));
        for (auto& x : params) x = 2.0 * std::numbers::pi * uniform01(rng);
        angles = unflatten(protocol.ansatz, params);
      }
      validate_angles(protocol.ansatz, angles);
      const auto report = validate_against_mc(angles, protocol, samples, val_seed);
      emit(render(validation_document(protocol, angles, samples, val_seed, report)), val_out);
      if (!report.passed) {
        std::cerr << "validate: |z| = " << std::abs(report.z_score) << " exceeds 5\n";
        return 3;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
