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

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "nalocc/ansatz.hpp"
#include "nalocc/bounds.hpp"
#include "nalocc/optimize.hpp"
#include "nalocc/protocol.hpp"

namespace nalocc {

inline constexpr int kFormatVersion = 1;

enum class Scheme {
  loccnet_baseline,  // single pair, trained at p = 0, evaluated at the true p
  na_loccnet_s1,     // single pair, trained at the true p
  na_loccnet_s2,     // two pairs, trained at the true p
  ppt_s1,
  ppt_s2,
  helstrom_s1,
  helstrom_s2,
  bob_only_s2,
};

std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& text);
std::vector<Scheme> all_schemes();

enum class SweepVariable { p, gamma };

std::string to_string(SweepVariable v);
SweepVariable parse_sweep_variable(const std::string& text);

struct SweepSpec {
  SweepVariable variable = SweepVariable::p;
  double from = 0.0;
  double to = 0.5;
  int steps = 26;
  /// Value of the noise parameter that is not swept.
  double fixed = 0.8;
  std::vector<Scheme> schemes = all_schemes();
  std::uint64_t seed = 0;

  OptimizerConfig optimizer{};
  SdpConfig sdp{};
  MixingRule mixing = MixingRule::bayes;
  CnotWiring cnot{};

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  std::vector<double> grid() const;
  double gamma_at(double value) const { return variable == SweepVariable::gamma ? value : fixed; }
  double p_at(double value) const { return variable == SweepVariable::p ? value : fixed; }
};

/// p from 0 to 0.5 in 26 points at gamma = 0.8.
SweepSpec fig4_preset();
/// gamma from 0 to 1 in 21 points at p = 0.25.
SweepSpec fig5_preset();
SweepSpec preset(const std::string& name);

struct SweepRecord {
  SweepVariable variable = SweepVariable::p;
  double value = 0.0;
  Scheme scheme = Scheme::loccnet_baseline;
  double success_prob = 0.0;
  std::optional<AngleSet> angles;  // empty for bounds
  bool converged = true;
  double wall_time_ms = 0.0;
  std::uint64_t seed = 0;  // training seed, 0 for bounds
};

/// One record per (grid value, scheme) in grid-major, scheme-minor order,
/// independent of `jobs`. A row whose computation throws is reported with
/// converged = false and a NaN value.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, int jobs);

inline constexpr const char* kCsvHeader =
    "variable,value,scheme,success_prob,converged,angles_json,wall_time_ms";

/// Writes the header and rows, LF line endings, doubles with 17 significant
/// digits.
void write_csv(std::ostream& out, std::span<const SweepRecord> records);

/// "%.17g".
std::string format_double(double x);

/// {"alice":[...],"bob":[[...],...]} with 17-significant-digit numbers.
std::string angles_json(const AngleSet& angles);

nlohmann::ordered_json to_json(const AngleSet& angles);
AngleSet angles_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const ProtocolConfig& config);
nlohmann::ordered_json to_json(const OptimizerConfig& config);
nlohmann::ordered_json to_json(const SdpConfig& config);

nlohmann::ordered_json optimize_document(const ProtocolConfig& protocol, const OptimizerConfig& opt,
                                         const OptimizationResult& result);
nlohmann::ordered_json bounds_document(double gamma, int pairs, const SdpConfig& sdp);

struct ValidationReport {
  double analytic = 0.0;
  McEstimate empirical;
  double z_score = 0.0;
  bool passed = true;  // |z| <= 5
};

ValidationReport validate_against_mc(const AngleSet& angles, const ProtocolConfig& protocol,
                                     std::int64_t samples, std::uint64_t seed);
nlohmann::ordered_json validation_document(const ProtocolConfig& protocol, const AngleSet& angles,
                                           std::int64_t samples, std::uint64_t seed,
                                           const ValidationReport& report);

}  // namespace nalocc
