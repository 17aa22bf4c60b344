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
#include <span>
#include <string>
#include <vector>

#include "nalocc/ansatz.hpp"
#include "nalocc/protocol.hpp"

namespace nalocc {

enum class GradientMethod { parameter_shift, finite_difference };

std::string to_string(GradientMethod method);
/// Accepts "shift" / "parameter_shift" and "fd" / "finite_difference".
GradientMethod parse_gradient_method(const std::string& text);

struct OptimizerConfig {
  double learning_rate = 0.01;
  int iterations = 1000;
  int restarts = 8;
  std::uint64_t seed = 0;
  GradientMethod gradient_method = GradientMethod::parameter_shift;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double fd_step = 1e-6;
  /// Record the objective after every iteration of every restart.
  bool record_trace = false;
  /// Restarts may run concurrently; results do not depend on this.
  int jobs = 1;

  void validate() const;
};

struct OptimizationResult {
  AngleSet best_angles;
  double best_value = 0.0;
  int best_restart = 0;
  std::vector<double> per_restart_values;
  /// trace[r][t]: objective after iteration t of restart r (if recorded).
  std::vector<std::vector<double>> trace;
};

/// Minimal Adam state for minimization.
class Adam {
 public:
  Adam(std::size_t size, double learning_rate, double beta1, double beta2, double epsilon);
  void step(std::span<double> params, std::span<const double> grad);

 private:
  double lr_, beta1_, beta2_, eps_;
  std::vector<double> m_, v_;
  double beta1_pow_ = 1.0;
  double beta2_pow_ = 1.0;
};

/// d(success probability)/d(angle), in flatten() order.
///
/// parameter_shift uses [f(t + pi/2) - f(t - pi/2)] / 2, exact because every
/// gate is exp(-i t G / 2) with G^2 = I and the objective is linear in each
/// conjugation. That linearity fails for Alice's angles under the literal
/// mixing rule with p > 0 (it renormalizes by P^A), so those entries fall back
/// to central differences.
std::vector<double> gradient(const SuccessEvaluator& objective, std::span<const double> params,
                             GradientMethod method, double fd_step = 1e-6);
std::vector<double> gradient(const AngleSet& angles, const ProtocolConfig& config,
                             GradientMethod method, double fd_step = 1e-6);

/// Adam ascent on the success probability from `restarts` uniform random
/// starts in [0, 2 pi); deterministic in opt.seed.
OptimizationResult train(const ProtocolConfig& protocol, const OptimizerConfig& opt);

/// train() with the flip probability forced to 0. best_value is the p = 0
/// objective; evaluate best_angles at the true p separately.
OptimizationResult train_noise_unaware(const ProtocolConfig& protocol, const OptimizerConfig& opt);

struct GridOracleResult {
  AngleSet best_angles;
  double best_value = 0.0;
  std::int64_t evaluations = 0;
};

/// Exhaustive maximum over the angle grid {2 pi k / steps}^n. Ties keep the
/// lexicographically first grid point. Throws std::invalid_argument if the
/// grid exceeds 1e7 points.
GridOracleResult grid_oracle(const ProtocolConfig& protocol, int steps_per_param, int jobs = 1);

}  // namespace nalocc
