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

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"

using namespace nalocc;

namespace {

SweepSpec small_p_sweep() {
  SweepSpec spec;
  spec.variable = SweepVariable::p;
  spec.from = 0.0;
  spec.to = 0.5;
  spec.steps = 3;
  spec.fixed = 0.8;
  spec.schemes = {Scheme::loccnet_baseline, Scheme::na_loccnet_s1, Scheme::helstrom_s1,
                  Scheme::ppt_s1, Scheme::bob_only_s2};
  spec.seed = 9;
  spec.optimizer.iterations = 200;
  spec.optimizer.restarts = 2;
  spec.optimizer.learning_rate = 0.05;
  return spec;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

/// CSV text with the trailing wall-time column removed from every row.
std::string without_timing(const std::string& csv) {
  std::string out;
  for (const auto& line : lines(csv)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

std::string to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

}  // namespace

TEST(Scheme, NamesRoundTrip) {
  for (Scheme s : all_schemes()) EXPECT_EQ(parse_scheme(to_string(s)), s);
  EXPECT_EQ(all_schemes().size(), 8u);
  EXPECT_EQ(to_string(Scheme::na_loccnet_s2), "na_loccnet_s2");
  EXPECT_THROW(parse_scheme("magic"), std::invalid_argument);
}

TEST(Presets, Definitions) {
  const auto f4 = preset("fig4");
  EXPECT_EQ(f4.variable, SweepVariable::p);
  EXPECT_EQ(f4.from, 0.0);
  EXPECT_EQ(f4.to, 0.5);
  EXPECT_EQ(f4.steps, 26);
  EXPECT_EQ(f4.fixed, 0.8);
  const auto f5 = preset("fig5");
  EXPECT_EQ(f5.variable, SweepVariable::gamma);
  EXPECT_EQ(f5.to, 1.0);
  EXPECT_EQ(f5.steps, 21);
  EXPECT_EQ(f5.fixed, 0.25);
  EXPECT_THROW(preset("fig6"), std::invalid_argument);

  const auto g = f4.grid();
  ASSERT_EQ(g.size(), 26u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 0.5);
  EXPECT_NEAR(g[5], 0.1, 1e-15);
}

TEST(SweepSpec, Validation) {
  auto spec = small_p_sweep();
  EXPECT_NO_THROW(spec.validate());
  spec.steps = 1;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = small_p_sweep();
  spec.to = 0.6;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = small_p_sweep();
  spec.from = 0.4;
  spec.to = 0.3;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = small_p_sweep();
  spec.fixed = 1.5;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = small_p_sweep();
  spec.schemes.clear();
  EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(RunSweep, RecordLayoutAndBounds) {
  const auto spec = small_p_sweep();
  const auto records = run_sweep(spec, 1);
  ASSERT_EQ(records.size(), 15u);
  const auto grid = spec.grid();
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    EXPECT_EQ(r.value, grid[k / 5]);
    EXPECT_EQ(r.scheme, spec.schemes[k % 5]);
    EXPECT_TRUE(r.converged);
    EXPECT_GE(r.success_prob, 0.0);
    EXPECT_LE(r.success_prob, 1.0);
    const bool trained = r.scheme == Scheme::loccnet_baseline || r.scheme == Scheme::na_loccnet_s1;
    EXPECT_EQ(r.angles.has_value(), trained);
    if (trained) EXPECT_LE(r.success_prob, helstrom_bound(0.8, 1) + 1e-6);
  }
  EXPECT_NEAR(records[2].success_prob, helstrom_bound(0.8, 1), 1e-15);
  EXPECT_NEAR(records[4].success_prob, 0.78, 1e-12);
  // At p = 0.5 noise-aware training reaches the Bob-only cap.
  EXPECT_NEAR(records[11].success_prob, 0.70, 5e-3);
}

TEST(RunSweep, BaselineTrainedOnceIsAffine) {
  const auto records = run_sweep(small_p_sweep(), 1);
  const double f0 = records[0].success_prob;
  const double fm = records[5].success_prob;
  const double f1 = records[10].success_prob;
  EXPECT_LE(std::abs(fm - 0.5 * (f0 + f1)), 1e-10);
  EXPECT_EQ(*records[0].angles, *records[10].angles);
  EXPECT_EQ(records[0].seed, records[10].seed);
  EXPECT_NE(records[1].seed, records[6].seed);
}

TEST(RunSweep, DeterministicAcrossRunsAndWorkerCounts) {
  const auto spec = small_p_sweep();
  const auto a = without_timing(to_csv(run_sweep(spec, 1)));
  const auto b = without_timing(to_csv(run_sweep(spec, 1)));
  const auto c = without_timing(to_csv(run_sweep(spec, 3)));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(RunSweep, GammaSweepUsesFixedFlip) {
  SweepSpec spec;
  spec.variable = SweepVariable::gamma;
  spec.from = 0.0;
  spec.to = 1.0;
  spec.steps = 2;
  spec.fixed = 0.25;
  spec.schemes = {Scheme::bob_only_s2, Scheme::helstrom_s2};
  const auto records = run_sweep(spec, 1);
  ASSERT_EQ(records.size(), 4u);
  EXPECT_NEAR(records[0].success_prob, 0.5, 1e-12);
  EXPECT_NEAR(records[1].success_prob, 1.0, 1e-12);
  EXPECT_NEAR(records[2].success_prob, 0.875, 1e-12);
  EXPECT_EQ(records[2].variable, SweepVariable::gamma);
}

TEST(Csv, HeaderAndQuoting) {
  SweepRecord r;
  r.variable = SweepVariable::p;
  r.value = 0.1;
  r.scheme = Scheme::na_loccnet_s1;
  r.success_prob = 0.75;
  r.angles = AngleSet{{0.5}, {{1.0}, {-2.0}}};
  r.wall_time_ms = 12.5;
  SweepRecord bound;
  bound.scheme = Scheme::ppt_s2;
  bound.success_prob = 0.9;
  bound.converged = false;
  const auto text = to_csv({r, bound});
  const auto rows = lines(text);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "variable,value,scheme,success_prob,converged,angles_json,wall_time_ms");
  EXPECT_EQ(rows[1],
            "p,0.10000000000000001,na_loccnet_s1,0.75,true,"
            "\"{\"\"alice\"\":[0.5],\"\"bob\"\":[[1],[-2]]}\",12.5");
  EXPECT_EQ(rows[2], "p,0,ppt_s2,0.90000000000000002,false,,0");
  EXPECT_EQ(text.find('\r'), std::string::npos);
}

TEST(Json, AnglesRoundTrip) {
  const AngleSet angles{{0.1234567890123456789}, {{1.0 / 3}, {2.0}, {-0.5}, {7.25}}};
  EXPECT_EQ(angles_from_json(nlohmann::json::parse(angles_json(angles))), angles);
  EXPECT_EQ(angles_from_json(nlohmann::json::parse(to_json(angles).dump())), angles);
}

TEST(Documents, OptimizeDocumentContents) {
  ProtocolConfig protocol;
  protocol.gamma = 0.0;
  OptimizerConfig opt;
  opt.iterations = 50;
  opt.restarts = 2;
  const auto result = train(protocol, opt);
  const auto doc = optimize_document(protocol, opt, result);
  EXPECT_EQ(doc["format_version"], kFormatVersion);
  EXPECT_EQ(doc["protocol"]["mixing"], "bayes");
  EXPECT_EQ(doc["optimizer"]["iterations"], 50);
  EXPECT_EQ(doc["restart_seeds"].size(), 2u);
  EXPECT_EQ(doc["result"]["best_value"].get<double>(), result.best_value);
  EXPECT_NEAR(doc["loccnet_reference"]["success_probability"].get<double>(), 0.8535533905932737, 1e-12);
  EXPECT_EQ(doc.dump(), optimize_document(protocol, opt, train(protocol, opt)).dump());
}

TEST(Documents, BoundsDocumentContents) {
  const auto doc = bounds_document(1.0, 2, SdpConfig{});
  EXPECT_NEAR(doc["bob_only"].get<double>(), 0.875, 1e-12);
  EXPECT_NEAR(doc["helstrom"].get<double>(), 0.9330127, 1e-7);
  EXPECT_TRUE(doc["ppt"]["converged"].get<bool>());
  EXPECT_LE(doc["ppt"]["value"].get<double>(), doc["helstrom"].get<double>() + 1e-6);
}

TEST(Validation, PerfectConfigHasZeroScore) {
  ProtocolConfig protocol;
  const AngleSet witness{{std::acos(-1.0) / 2}, {{std::acos(-1.0) / 2}, {-std::acos(-1.0) / 2}}};
  const auto report = validate_against_mc(witness, protocol, 10000, 1);
  EXPECT_EQ(report.empirical.estimate, 1.0);
  EXPECT_EQ(report.z_score, 0.0);
  EXPECT_TRUE(report.passed);
}

TEST(Validation, RandomConfigWithinBoundAndReproducible) {
  ProtocolConfig protocol;
  protocol.ansatz = AnsatzSpec::two_pair();
  protocol.gamma = 0.45;
  protocol.flip_prob = 0.15;
  const AngleSet angles{{0.4}, {{1.1}, {2.9}, {4.0}, {5.5}}};
  const auto a = validate_against_mc(angles, protocol, 100000, 77);
  const auto b = validate_against_mc(angles, protocol, 100000, 77);
  EXPECT_LE(std::abs(a.z_score), 4.0);
  EXPECT_EQ(validation_document(protocol, angles, 100000, 77, a).dump(),
            validation_document(protocol, angles, 100000, 77, b).dump());
}
