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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nalocc/parallel.hpp"
#include "nalocc/random.hpp"

namespace nalocc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct RestartOutcome {
  std::vector<double> params;
  double value = 0.0;
  std::vector<double> trace;
};

RestartOutcome run_restart(const SuccessEvaluator& objective, const OptimizerConfig& opt,
                           int restart) {
  const auto n = static_cast<std::size_t>(parameter_count(objective.config().ansatz));
  Rng rng(derive_seed(opt.seed, {static_cast<std::uint64_t>(restart)}));
  RestartOutcome out;
  out.params.resize(n);
  for (auto& x : out.params) x = kTwoPi * uniform01(rng);

  Adam adam(n, opt.learning_rate, opt.beta1, opt.beta2, opt.epsilon);
  std::vector<double> descent(n);
  for (int t = 0; t < opt.iterations; ++t) {
    const auto ascent = gradient(objective, out.params, opt.gradient_method, opt.fd_step);
    for (std::size_t k = 0; k < n; ++k) descent[k] = -ascent[k];
    adam.step(out.params, descent);
    if (opt.record_trace) out.trace.push_back(objective(std::span<const double>(out.params)));
  }
  out.value = objective(std::span<const double>(out.params));
  return out;
}

}  // namespace

std::string to_string(GradientMethod method) {
  return method == GradientMethod::parameter_shift ? "parameter_shift" : "finite_difference";
}

GradientMethod parse_gradient_method(const std::string& text) {
  if (text == "shift" || text == "parameter_shift") return GradientMethod::parameter_shift;
  if (text == "fd" || text == "finite_difference") return GradientMethod::finite_difference;
  throw std::invalid_argument("gradient method must be shift or fd, got '" + text + "'");
}

void OptimizerConfig::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (!(fd_step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
}

Adam::Adam(std::size_t size, double learning_rate, double beta1, double beta2, double epsilon)
    : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon), m_(size), v_(size) {}

void Adam::step(std::span<double> params, std::span<const double> grad) {
  if (params.size() != m_.size() || grad.size() != m_.size()) {
    throw std::invalid_argument("Adam::step: size mismatch");
  }
  beta1_pow_ *= beta1_;
  beta2_pow_ *= beta2_;
  for (std::size_t k = 0; k < m_.size(); ++k) {
    m_[k] = beta1_ * m_[k] + (1.0 - beta1_) * grad[k];
    v_[k] = beta2_ * v_[k] + (1.0 - beta2_) * grad[k] * grad[k];
    const double m_hat = m_[k] / (1.0 - beta1_pow_);
    const double v_hat = v_[k] / (1.0 - beta2_pow_);
    params[k] -= lr_ * m_hat / (std::sqrt(v_hat) + eps_);
  }
}

std::vector<double> gradient(const SuccessEvaluator& objective, std::span<const double> params,
                             GradientMethod method, double fd_step) {
  const auto& config = objective.config();
  const auto n_alice = static_cast<std::size_t>(config.ansatz.alice_param_count());
  const bool alice_nonlinear = config.mixing == MixingRule::literal && config.flip_prob > 0.0;

  std::vector<double> shifted(params.begin(), params.end());
  std::vector<double> grad(params.size());
  for (std::size_t k = 0; k < params.size(); ++k) {
    const bool use_shift = method == GradientMethod::parameter_shift && !(alice_nonlinear && k < n_alice);
    const double h = use_shift ? std::numbers::pi / 2.0 : fd_step;
    shifted[k] = params[k] + h;
    const double plus = objective(std::span<const double>(shifted));
    shifted[k] = params[k] - h;
    const double minus = objective(std::span<const double>(shifted));
    shifted[k] = params[k];
    grad[k] = use_shift ? (plus - minus) / 2.0 : (plus - minus) / (2.0 * h);
  }
  return grad;
}

std::vector<double> gradient(const AngleSet& angles, const ProtocolConfig& config,
                             GradientMethod method, double fd_step) {
  validate_angles(config.ansatz, angles);
  return gradient(SuccessEvaluator(config), flatten(angles), method, fd_step);
}

OptimizationResult train(const ProtocolConfig& protocol, const OptimizerConfig& opt) {
  opt.validate();
  const SuccessEvaluator objective(protocol);
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(opt.restarts));
  parallel_for(outcomes.size(), opt.jobs, [&](std::size_t r) {
    outcomes[r] = run_restart(objective, opt, static_cast<int>(r));
  });

  OptimizationResult result;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    result.per_restart_values.push_back(outcomes[r].value);
    if (r == 0 || outcomes[r].value > result.best_value) {
      result.best_value = outcomes[r].value;
      result.best_restart = static_cast<int>(r);
    }
    if (opt.record_trace) result.trace.push_back(std::move(outcomes[r].trace));
  }
  result.best_angles =
      unflatten(protocol.ansatz, outcomes[static_cast<std::size_t>(result.best_restart)].params);
  return result;
}

OptimizationResult train_noise_unaware(const ProtocolConfig& protocol, const OptimizerConfig& opt) {
  ProtocolConfig noiseless = protocol;
  noiseless.flip_prob = 0.0;
  return train(noiseless, opt);
}

GridOracleResult grid_oracle(const ProtocolConfig& protocol, int steps_per_param, int jobs) {
  if (steps_per_param < 1) throw std::invalid_argument("grid_oracle: steps_per_param must be >= 1");
  const int n = parameter_count(protocol.ansatz);
  double total = 1.0;
  for (int k = 0; k < n; ++k) total *= steps_per_param;
  if (total > 1e7) throw std::invalid_argument("grid_oracle: grid exceeds 1e7 points");

  const SuccessEvaluator objective(protocol);
  const auto steps = static_cast<std::size_t>(steps_per_param);
  const auto inner = static_cast<std::size_t>(total) / steps;
  auto angle = [&](std::size_t k) { return kTwoPi * static_cast<double>(k) / static_cast<double>(steps); };

  // One slice per value of the leading (Alice) angle.
  struct SliceBest {
    std::size_t index = 0;
    double value = -1.0;
  };
  std::vector<SliceBest> slices(steps);
  parallel_for(steps, jobs, [&](std::size_t lead) {
    std::vector<double> params(static_cast<std::size_t>(n));
    SliceBest best;
    for (std::size_t rest = 0; rest < inner; ++rest) {
      const std::size_t index = lead * inner + rest;
      std::size_t code = index;
      for (int k = n - 1; k >= 0; --k) {
        params[static_cast<std::size_t>(k)] = angle(code % steps);
        code /= steps;
      }
      const double value = objective(std::span<const double>(params));
      if (value > best.value) best = {index, value};
    }
    slices[lead] = best;
  });

  SliceBest best = slices.front();
  for (const auto& s : slices) {
    if (s.value > best.value) best = s;
  }
  std::vector<double> params(static_cast<std::size_t>(n));
  std::size_t code = best.index;
  for (int k = n - 1; k >= 0; --k) {
    params[static_cast<std::size_t>(k)] = angle(code % steps);
    code /= steps;
  }
  return {unflatten(protocol.ansatz, params), best.value, static_cast<std::int64_t>(total)};
}

}  // namespace nalocc
