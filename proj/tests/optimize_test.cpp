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

#include "nalocc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "nalocc/bounds.hpp"
#include "test_util.hpp"

using namespace nalocc;
using namespace nalocc::testing;

namespace {

constexpr double kPi = std::numbers::pi;

ProtocolConfig make_config(int pairs, double gamma, double p, MixingRule mixing = MixingRule::bayes) {
  ProtocolConfig c;
  c.ansatz = pairs == 1 ? AnsatzSpec::single_pair() : AnsatzSpec::two_pair();
  c.gamma = gamma;
  c.flip_prob = p;
  c.mixing = mixing;
  return c;
}

OptimizerConfig quick(std::uint64_t seed = 0) {
  OptimizerConfig opt;
  opt.iterations = 400;
  opt.restarts = 4;
  opt.learning_rate = 0.05;
  opt.seed = seed;
  return opt;
}

double max_abs(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST(OptimizerConfig, Validation) {
  OptimizerConfig opt;
  EXPECT_NO_THROW(opt.validate());
  opt.learning_rate = 0.0;
  EXPECT_THROW(opt.validate(), std::invalid_argument);
  opt = {};
  opt.iterations = 0;
  EXPECT_THROW(opt.validate(), std::invalid_argument);
  opt = {};
  opt.restarts = 0;
  EXPECT_THROW(opt.validate(), std::invalid_argument);
  EXPECT_EQ(parse_gradient_method("fd"), GradientMethod::finite_difference);
  EXPECT_EQ(parse_gradient_method("shift"), GradientMethod::parameter_shift);
  EXPECT_THROW(parse_gradient_method("newton"), std::invalid_argument);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  Adam adam(2, 0.1, 0.9, 0.999, 1e-8);
  std::vector<double> x{1.0, -1.0};
  const std::vector<double> g{3.0, -0.5};
  adam.step(x, g);
  // Bias-corrected first step is lr * sign(g).
  EXPECT_NEAR(x[0], 0.9, 1e-8);
  EXPECT_NEAR(x[1], -0.9, 1e-8);
}

TEST(Adam, MinimizesQuadratic) {
  Adam adam(1, 0.05, 0.9, 0.999, 1e-8);
  std::vector<double> x{3.0};
  for (int t = 0; t < 2000; ++t) {
    const std::vector<double> g{2.0 * (x[0] - 1.0)};
    adam.step(x, g);
  }
  EXPECT_NEAR(x[0], 1.0, 1e-3);
}

TEST(Gradient, ShiftMatchesFiniteDifference) {
  auto rng = make_rng(21);
  for (int t = 0; t < 20; ++t) {
    const int pairs = 1 + t % 2;
    const auto rule = t % 5 == 4 ? MixingRule::literal : MixingRule::bayes;
    const auto config = make_config(pairs, uniform(rng, 0, 1), uniform(rng, 0, 0.5), rule);
    std::vector<double> params(static_cast<std::size_t>(parameter_count(config.ansatz)));
    for (auto& x : params) x = uniform(rng, 0, 2 * kPi);
    const auto angles = unflatten(config.ansatz, params);
    const auto shift = gradient(angles, config, GradientMethod::parameter_shift);
    const auto fd = gradient(angles, config, GradientMethod::finite_difference);
    EXPECT_LE(max_abs(shift, fd), 1e-6) << "point " << t;
  }
}

TEST(Gradient, AliceDirectionFlatAtHalfFlip) {
  auto rng = make_rng(22);
  for (int pairs : {1, 2}) {
    const auto config = make_config(pairs, 0.6, 0.5);
    std::vector<double> params(static_cast<std::size_t>(parameter_count(config.ansatz)));
    for (auto& x : params) x = uniform(rng, 0, 2 * kPi);
    const auto g = gradient(unflatten(config.ansatz, params), config, GradientMethod::parameter_shift);
    EXPECT_LE(std::abs(g[0]), 1e-10);
  }
}

TEST(Gradient, StationaryAtWitness) {
  const auto config = make_config(1, 0.0, 0.0);
  const AngleSet witness{{kPi / 2}, {{kPi / 2}, {-kPi / 2}}};
  EXPECT_LE(norm(gradient(witness, config, GradientMethod::parameter_shift)), 1e-4);
}

TEST(Gradient, StationaryAtRefinedGridOptimum) {
  // The 64-point grid contains the perfect-discrimination witness exactly.
  const auto config = make_config(1, 0.0, 0.0);
  const auto grid = grid_oracle(config, 64);
  EXPECT_GE(grid.best_value, 0.998);
  EXPECT_LE(norm(gradient(grid.best_angles, config, GradientMethod::parameter_shift)), 1e-4);
}

TEST(Train, RecoversPerfectDiscriminationWithDefaults) {
  const auto result = train(make_config(1, 0.0, 0.0), OptimizerConfig{});
  EXPECT_GE(result.best_value, 0.999);
}

TEST(Train, HalfFlipCap) {
  const auto result = train(make_config(1, 0.8, 0.5), quick());
  EXPECT_NEAR(result.best_value, 0.70, 0.005);
}

TEST(Train, ResultInvariants) {
  auto opt = quick(5);
  opt.record_trace = true;
  const auto config = make_config(1, 0.5, 0.2);
  const auto result = train(config, opt);
  ASSERT_EQ(result.per_restart_values.size(), 4u);
  EXPECT_EQ(result.best_value,
            *std::max_element(result.per_restart_values.begin(), result.per_restart_values.end()));
  EXPECT_EQ(result.per_restart_values[static_cast<std::size_t>(result.best_restart)], result.best_value);
  EXPECT_NEAR(success_probability(result.best_angles, config), result.best_value, 1e-14);
  ASSERT_EQ(result.trace.size(), 4u);
  for (const auto& run : result.trace) {
    ASSERT_EQ(run.size(), 400u);
    for (double v : run) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
  EXPECT_LE(result.best_value, helstrom_bound(0.5, 1) + 1e-6);
}

TEST(Train, DeterministicAndIndependentOfJobs) {
  const auto config = make_config(2, 0.7, 0.1);
  auto opt = quick(42);
  opt.iterations = 100;
  const auto a = train(config, opt);
  const auto b = train(config, opt);
  opt.jobs = 3;
  const auto c = train(config, opt);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.best_angles, b.best_angles);
  EXPECT_EQ(a.best_value, c.best_value);
  EXPECT_EQ(a.per_restart_values, c.per_restart_values);
  opt.seed = 43;
  EXPECT_NE(train(config, opt).per_restart_values, a.per_restart_values);
}

TEST(Train, StaysBelowBounds) {
  for (double gamma : {0.3, 0.8}) {
    for (int pairs : {1, 2}) {
      const auto result = train(make_config(pairs, gamma, 0.0), quick());
      const double ppt = ppt_bound(gamma, pairs).value;
      EXPECT_LE(result.best_value, std::min(helstrom_bound(gamma, pairs), ppt + 1e-3));
    }
  }
}

TEST(TrainNoiseUnaware, MatchesTrainAtZeroFlip) {
  const auto config = make_config(1, 0.8, 0.0);
  const auto aware = train(config, quick());
  const auto unaware = train_noise_unaware(make_config(1, 0.8, 0.3), quick());
  EXPECT_NEAR(aware.best_value, unaware.best_value, 5e-3);
}

TEST(TrainNoiseUnaware, PerfectAtZeroNoiseAndAffineInFlip) {
  const auto unaware = train_noise_unaware(make_config(1, 0.0, 0.4), quick());
  EXPECT_GE(success_probability(unaware.best_angles, make_config(1, 0.0, 0.0)), 0.999);

  const auto trained = train_noise_unaware(make_config(1, 0.8, 0.0), quick()).best_angles;
  const double f0 = success_probability(trained, make_config(1, 0.8, 0.0));
  const double fm = success_probability(trained, make_config(1, 0.8, 0.25));
  const double f1 = success_probability(trained, make_config(1, 0.8, 0.5));
  EXPECT_LE(std::abs(fm - 0.5 * (f0 + f1)), 1e-10);
}

TEST(GridOracle, NestedGridsAreMonotone) {
  const auto config = make_config(1, 0.8, 0.25);
  const auto coarse = grid_oracle(config, 16);
  const auto fine = grid_oracle(config, 32);
  EXPECT_GE(fine.best_value, coarse.best_value);
  EXPECT_EQ(coarse.evaluations, 16 * 16 * 16);
}

TEST(GridOracle, ParallelMatchesSerial) {
  const auto config = make_config(1, 0.4, 0.1);
  const auto serial = grid_oracle(config, 20, 1);
  const auto parallel = grid_oracle(config, 20, 4);
  EXPECT_EQ(serial.best_value, parallel.best_value);
  EXPECT_EQ(serial.best_angles, parallel.best_angles);
}

TEST(GridOracle, RejectsOversizedGrid) {
  EXPECT_THROW(grid_oracle(make_config(2, 0.5, 0.0), 64), std::invalid_argument);
  EXPECT_THROW(grid_oracle(make_config(1, 0.5, 0.0), 0), std::invalid_argument);
}

TEST(GridOracle, TrainReachesOracleOnRandomConfigs) {
  auto rng = make_rng(23);
  for (int t = 0; t < 5; ++t) {
    const auto config = make_config(1, uniform(rng, 0, 1), uniform(rng, 0, 0.5));
    const auto grid = grid_oracle(config, 32);
    EXPECT_GE(train(config, quick()).best_value, grid.best_value - 0.01)
        << "gamma " << config.gamma << " p " << config.flip_prob;
  }
}
