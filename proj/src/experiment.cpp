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

#include "nalocc/experiment.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

#include "nalocc/parallel.hpp"
#include "nalocc/random.hpp"

namespace nalocc {

namespace {

constexpr std::array<std::pair<Scheme, const char*>, 8> kSchemeNames{{
    {Scheme::loccnet_baseline, "loccnet_baseline"},
    {Scheme::na_loccnet_s1, "na_loccnet_s1"},
    {Scheme::na_loccnet_s2, "na_loccnet_s2"},
    {Scheme::ppt_s1, "ppt_s1"},
    {Scheme::ppt_s2, "ppt_s2"},
    {Scheme::helstrom_s1, "helstrom_s1"},
    {Scheme::helstrom_s2, "helstrom_s2"},
    {Scheme::bob_only_s2, "bob_only_s2"},
}};

std::uint64_t scheme_id(Scheme s) { return static_cast<std::uint64_t>(s); }

ProtocolConfig protocol_for(const SweepSpec& spec, bool two_pairs, double gamma, double p) {
  ProtocolConfig config;
  config.ansatz = two_pairs ? AnsatzSpec::two_pair(spec.cnot, spec.cnot) : AnsatzSpec::single_pair();
  config.gamma = gamma;
  config.flip_prob = p;
  config.mixing = spec.mixing;
  return config;
}

std::uint64_t baseline_seed(const SweepSpec& spec, double gamma) {
  return derive_seed(spec.seed, {scheme_id(Scheme::loccnet_baseline), std::bit_cast<std::uint64_t>(gamma)});
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

nlohmann::ordered_json json_array(std::span<const double> xs) {
  auto arr = nlohmann::ordered_json::array();
  for (double x : xs) arr.push_back(x);
  return arr;
}

}  // namespace

std::string to_string(Scheme scheme) {
  for (const auto& [s, name] : kSchemeNames) {
    if (s == scheme) return name;
  }
  throw std::logic_error("unknown scheme");
}

Scheme parse_scheme(const std::string& text) {
  for (const auto& [s, name] : kSchemeNames) {
    if (text == name) return s;
  }
  throw std::invalid_argument("unknown scheme '" + text + "'");
}

std::vector<Scheme> all_schemes() {
  std::vector<Scheme> out;
  for (const auto& entry : kSchemeNames) out.push_back(entry.first);
  return out;
}

std::string to_string(SweepVariable v) { return v == SweepVariable::p ? "p" : "gamma"; }

SweepVariable parse_sweep_variable(const std::string& text) {
  if (text == "p") return SweepVariable::p;
  if (text == "gamma") return SweepVariable::gamma;
  throw std::invalid_argument("sweep variable must be p or gamma, got '" + text + "'");
}

void SweepSpec::validate() const {
  if (!(from <= to)) throw std::invalid_argument("sweep: from must not exceed to");
  if (steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");
  if (schemes.empty()) throw std::invalid_argument("sweep: no schemes selected");
  const double p_lo = variable == SweepVariable::p ? from : fixed;
  const double p_hi = variable == SweepVariable::p ? to : fixed;
  const double g_lo = variable == SweepVariable::gamma ? from : fixed;
  const double g_hi = variable == SweepVariable::gamma ? to : fixed;
  if (!(p_lo >= 0.0 && p_hi <= 0.5)) throw std::invalid_argument("sweep: p values must lie in [0, 0.5]");
  if (!(g_lo >= 0.0 && g_hi <= 1.0)) throw std::invalid_argument("sweep: gamma values must lie in [0, 1]");
  optimizer.validate();
  sdp.validate();
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(steps - 1);
    out[static_cast<std::size_t>(k)] = std::clamp(from + (to - from) * t, from, to);
  }
  return out;
}

SweepSpec fig4_preset() {
  SweepSpec spec;
  spec.variable = SweepVariable::p;
  spec.from = 0.0;
  spec.to = 0.5;
  spec.steps = 26;
  spec.fixed = 0.8;
  return spec;
}

SweepSpec fig5_preset() {
  SweepSpec spec;
  spec.variable = SweepVariable::gamma;
  spec.from = 0.0;
  spec.to = 1.0;
  spec.steps = 21;
  spec.fixed = 0.25;
  return spec;
}

SweepSpec preset(const std::string& name) {
  if (name == "fig4") return fig4_preset();
  if (name == "fig5") return fig5_preset();
  throw std::invalid_argument("unknown preset '" + name + "' (expected fig4 or fig5)");
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, int jobs) {
  spec.validate();
  const auto grid = spec.grid();
  const auto& schemes = spec.schemes;

  // Baseline angles depend only on gamma; train each distinct gamma once.
  std::map<double, AngleSet> baseline_angles;
  if (std::find(schemes.begin(), schemes.end(), Scheme::loccnet_baseline) != schemes.end()) {
    std::vector<double> gammas;
    for (double v : grid) {
      const double g = spec.gamma_at(v);
      if (std::find(gammas.begin(), gammas.end(), g) == gammas.end()) gammas.push_back(g);
    }
    std::vector<std::optional<AngleSet>> trained(gammas.size());
    parallel_for(gammas.size(), jobs, [&](std::size_t k) {
      OptimizerConfig opt = spec.optimizer;
      opt.seed = baseline_seed(spec, gammas[k]);
      try {
        trained[k] = train_noise_unaware(protocol_for(spec, false, gammas[k], 0.0), opt).best_angles;
      } catch (const std::exception&) {
        // Rows for this gamma are reported as failures below.
      }
    });
    for (std::size_t k = 0; k < gammas.size(); ++k) {
      if (trained[k]) baseline_angles.emplace(gammas[k], *trained[k]);
    }
  }

  std::vector<SweepRecord> records(grid.size() * schemes.size());
  parallel_for(records.size(), jobs, [&](std::size_t task) {
    const std::size_t point = task / schemes.size();
    const Scheme scheme = schemes[task % schemes.size()];
    const double value = grid[point];
    const double gamma = spec.gamma_at(value);
    const double p = spec.p_at(value);
    const auto start = std::chrono::steady_clock::now();

    SweepRecord rec;
    rec.variable = spec.variable;
    rec.value = value;
    rec.scheme = scheme;
    try {
      switch (scheme) {
        case Scheme::loccnet_baseline: {
          const auto it = baseline_angles.find(gamma);
          if (it == baseline_angles.end()) throw std::runtime_error("baseline training failed");
          rec.angles = it->second;
          rec.seed = baseline_seed(spec, gamma);
          rec.success_prob = success_probability(it->second, protocol_for(spec, false, gamma, p));
          break;
        }
        case Scheme::na_loccnet_s1:
        case Scheme::na_loccnet_s2: {
          OptimizerConfig opt = spec.optimizer;
          opt.seed = derive_seed(spec.seed, {static_cast<std::uint64_t>(point), scheme_id(scheme)});
          const auto result =
              train(protocol_for(spec, scheme == Scheme::na_loccnet_s2, gamma, p), opt);
          rec.angles = result.best_angles;
          rec.seed = opt.seed;
          rec.success_prob = result.best_value;
          break;
        }
        case Scheme::ppt_s1:
        case Scheme::ppt_s2: {
          const auto bound = ppt_bound(gamma, scheme == Scheme::ppt_s1 ? 1 : 2, spec.sdp);
          rec.success_prob = bound.value;
          rec.converged = bound.converged;
          break;
        }
        case Scheme::helstrom_s1:
        case Scheme::helstrom_s2:
          rec.success_prob = helstrom_bound(gamma, scheme == Scheme::helstrom_s1 ? 1 : 2);
          break;
        case Scheme::bob_only_s2:
          rec.success_prob = bob_only_bound(gamma, 2);
          break;
      }
    } catch (const std::exception&) {
      rec.success_prob = std::numeric_limits<double>::quiet_NaN();
      rec.converged = false;
    }
    rec.wall_time_ms = elapsed_ms(start);
    records[task] = std::move(rec);
  });
  return records;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string angles_json(const AngleSet& angles) {
  auto list = [](std::span<const double> xs) {
    std::string s = "[";
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (k) s += ",";
      s += format_double(xs[k]);
    }
    return s + "]";
  };
  std::string s = "{\"alice\":" + list(angles.alice) + ",\"bob\":[";
  for (std::size_t m = 0; m < angles.bob.size(); ++m) {
    if (m) s += ",";
    s += list(angles.bob[m]);
  }
  return s + "]}";
}

void write_csv(std::ostream& out, std::span<const SweepRecord> records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    std::string angles;
    if (r.angles) {
      // RFC 4180 quoting: the JSON contains commas and quotes.
      angles = "\"";
      for (char c : angles_json(*r.angles)) {
        angles += c;
        if (c == '"') angles += '"';
      }
      angles += "\"";
    }
    out << to_string(r.variable) << ',' << format_double(r.value) << ',' << to_string(r.scheme) << ','
        << format_double(r.success_prob) << ',' << (r.converged ? "true" : "false") << ',' << angles
        << ',' << format_double(r.wall_time_ms) << '\n';
  }
}

nlohmann::ordered_json to_json(const AngleSet& angles) {
  nlohmann::ordered_json j;
  j["alice"] = json_array(angles.alice);
  j["bob"] = nlohmann::ordered_json::array();
  for (const auto& b : angles.bob) j["bob"].push_back(json_array(b));
  return j;
}

AngleSet angles_from_json(const nlohmann::json& j) {
  AngleSet out;
  out.alice = j.at("alice").get<std::vector<double>>();
  out.bob = j.at("bob").get<std::vector<std::vector<double>>>();
  return out;
}

nlohmann::ordered_json to_json(const ProtocolConfig& config) {
  nlohmann::ordered_json j;
  j["pairs"] = config.pairs();
  j["gamma"] = config.gamma;
  j["p"] = config.flip_prob;
  j["ansatz"] = to_string(config.ansatz.kind);
  if (config.ansatz.kind == AnsatzKind::s2) {
    j["cnot_alice"] = to_string(config.ansatz.alice_cnot);
    j["cnot_bob"] = to_string(config.ansatz.bob_cnot);
  }
  j["mixing"] = to_string(config.mixing);
  return j;
}

nlohmann::ordered_json to_json(const OptimizerConfig& config) {
  nlohmann::ordered_json j;
  j["learning_rate"] = config.learning_rate;
  j["iterations"] = config.iterations;
  j["restarts"] = config.restarts;
  j["seed"] = config.seed;
  j["gradient"] = to_string(config.gradient_method);
  j["beta1"] = config.beta1;
  j["beta2"] = config.beta2;
  j["epsilon"] = config.epsilon;
  j["fd_step"] = config.fd_step;
  return j;
}

nlohmann::ordered_json to_json(const SdpConfig& config) {
  nlohmann::ordered_json j;
  j["method"] = to_string(config.method);
  j["tolerance"] = config.tolerance;
  j["max_iterations"] = config.max_iterations;
  j["penalty"] = config.penalty;
  return j;
}

nlohmann::ordered_json optimize_document(const ProtocolConfig& protocol, const OptimizerConfig& opt,
                                         const OptimizationResult& result) {
  nlohmann::ordered_json doc;
  doc["format_version"] = kFormatVersion;
  doc["command"] = "optimize";
  doc["protocol"] = to_json(protocol);
  doc["optimizer"] = to_json(opt);
  auto seeds = nlohmann::ordered_json::array();
  for (int r = 0; r < opt.restarts; ++r) {
    seeds.push_back(derive_seed(opt.seed, {static_cast<std::uint64_t>(r)}));
  }
  doc["restart_seeds"] = seeds;
  nlohmann::ordered_json res;
  res["best_value"] = result.best_value;
  res["best_restart"] = result.best_restart;
  res["best_angles"] = to_json(result.best_angles);
  res["per_restart_values"] = json_array(result.per_restart_values);
  doc["result"] = res;
  if (protocol.ansatz.kind == AnsatzKind::s1) {
    const AngleSet reference = loccnet_reference_angles(protocol.gamma);
    nlohmann::ordered_json ref;
    ref["angles"] = to_json(reference);
    ref["success_probability"] = success_probability(reference, protocol);
    doc["loccnet_reference"] = ref;
  }
  return doc;
}

nlohmann::ordered_json bounds_document(double gamma, int pairs, const SdpConfig& sdp) {
  const auto ppt = ppt_bound(gamma, pairs, sdp);
  nlohmann::ordered_json doc;
  doc["format_version"] = kFormatVersion;
  doc["command"] = "bounds";
  doc["pairs"] = pairs;
  doc["gamma"] = gamma;
  doc["helstrom"] = helstrom_bound(gamma, pairs);
  nlohmann::ordered_json p;
  p["value"] = ppt.value;
  p["converged"] = ppt.converged;
  p["iterations"] = ppt.iterations_used;
  p["residuals"] = {{"constraint", ppt.residuals.constraint}, {"splitting", ppt.residuals.splitting}};
  p["solver"] = to_json(sdp);
  doc["ppt"] = p;
  doc["bob_only"] = bob_only_bound(gamma, pairs);
  return doc;
}

ValidationReport validate_against_mc(const AngleSet& angles, const ProtocolConfig& protocol,
                                     std::int64_t samples, std::uint64_t seed) {
  // The sampler follows the operational protocol, which is the bayes mixture.
  ProtocolConfig physical = protocol;
  physical.mixing = MixingRule::bayes;
  ValidationReport report;
  report.analytic = success_probability(angles, physical);
  report.empirical = mc_estimate(angles, physical, samples, seed);
  const double diff = report.empirical.estimate - report.analytic;
  // Standard error under the analytic value, so degenerate (0 or 1) cases
  // compare exactly.
  const double q = std::clamp(report.analytic, 0.0, 1.0);
  const double se = std::sqrt(q * (1.0 - q) / static_cast<double>(samples));
  if (std::abs(diff) <= 1e-12) {
    report.z_score = 0.0;
  } else if (se > 0.0) {
    report.z_score = diff / se;
  } else {
    report.z_score = std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  report.passed = std::abs(report.z_score) <= 5.0;
  return report;
}

nlohmann::ordered_json validation_document(const ProtocolConfig& protocol, const AngleSet& angles,
                                           std::int64_t samples, std::uint64_t seed,
                                           const ValidationReport& report) {
  nlohmann::ordered_json doc;
  doc["format_version"] = kFormatVersion;
  doc["command"] = "validate";
  doc["protocol"] = to_json(protocol);
  doc["angles"] = to_json(angles);
  doc["samples"] = samples;
  doc["seed"] = seed;
  doc["analytic"] = report.analytic;
  doc["empirical"] = report.empirical.estimate;
  doc["standard_error"] = report.empirical.standard_error;
  doc["successes"] = report.empirical.successes;
  doc["z_score"] = std::isfinite(report.z_score) ? nlohmann::ordered_json(report.z_score)
                                                  : nlohmann::ordered_json(report.z_score > 0 ? "inf" : "-inf");
  doc["passed"] = report.passed;
  return doc;
}

}  // namespace nalocc
