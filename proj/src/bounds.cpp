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

#include "nalocc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nalocc/protocol.hpp"
#include "nalocc/random.hpp"

namespace nalocc {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + dagger(m)); }

ComplexMatrix from_eig(const EigDecomposition& eig, std::span<const double> values) {
  const std::size_t n = values.size();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (values[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.eigenvectors(i, k) * values[k];
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

ComplexMatrix project_transposed_box(const ComplexMatrix& m, QubitSplit split) {
  return partial_transpose(project_unit_box(partial_transpose(m, split)), split);
}

double objective(const ComplexMatrix& m, const ComplexMatrix& delta) {
  return 0.5 + 0.5 * trace(m * delta).real();
}

double spectral_norm(const ComplexMatrix& h) {
  const auto eig = hermitian_eig(hermitian_part(h));
  return std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()));
}

BoundResult finish(ComplexMatrix m, const ComplexMatrix& delta, QubitSplit split, int iterations,
                   bool converged, double splitting) {
  BoundResult out;
  out.iterations_used = iterations;
  out.converged = converged;
  out.residuals.splitting = splitting;
  const double value = objective(m, delta);
  const std::size_t n = delta.dim();
  if (value < 0.5) {
    // I/2 is always feasible with objective exactly 1/2.
    m = ComplexMatrix::identity(n) * Complex(0.5);
  }
  out.value = objective(m, delta);
  out.residuals.constraint = ppt_constraint_violation(m, split);
  out.measurement = std::move(m);
  return out;
}

BoundResult solve_admm(const ComplexMatrix& delta, QubitSplit split, const SdpConfig& config) {
  const std::size_t n = delta.dim();
  const double rho = config.penalty;
  const ComplexMatrix scaled_delta = delta * Complex(1.0 / rho);
  ComplexMatrix y = ComplexMatrix::identity(n) * Complex(0.5);
  ComplexMatrix u(n);
  double gap = 0.0;
  for (int k = 1; k <= config.max_iterations; ++k) {
    const ComplexMatrix x = project_unit_box(y - u + scaled_delta);
    ComplexMatrix y_next = project_transposed_box(x + u, split);
    u += x - y_next;
    gap = max_abs_diff(x, y_next);
    const double drift = rho * max_abs_diff(y_next, y);
    y = std::move(y_next);
    if (gap < config.tolerance && drift < config.tolerance &&
        ppt_constraint_violation(y, split) <= config.tolerance) {
      return finish(std::move(y), delta, split, k, true, gap);
    }
  }
  return finish(std::move(y), delta, split, config.max_iterations, false, gap);
}

BoundResult solve_projected_ascent(const ComplexMatrix& delta, QubitSplit split,
                                   const SdpConfig& config) {
  constexpr int kStallWindow = 100;
  const std::size_t n = delta.dim();
  const double norm = spectral_norm(delta);
  if (norm == 0.0) {
    return finish(ComplexMatrix::identity(n) * Complex(0.5), delta, split, 0, true, 0.0);
  }
  const double c = 0.1 * config.penalty / norm;

  ComplexMatrix m = ComplexMatrix::identity(n) * Complex(0.5);
  ComplexMatrix best = m;
  double best_value = objective(m, delta);
  double previous = best_value;
  double last_correction = 0.0;
  int stalled = 0;
  for (int k = 1; k <= config.max_iterations; ++k) {
    const ComplexMatrix target = m + delta * Complex(c / std::sqrt(static_cast<double>(k)));
    m = project_ppt_box(target, split, 2000, 1e-2 * config.tolerance);
    last_correction = ppt_constraint_violation(m, split);
    const double value = objective(m, delta);
    if (last_correction < config.tolerance && value > best_value) {
      best_value = value;
      best = m;
    }
    stalled = std::abs(value - previous) < config.tolerance ? stalled + 1 : 0;
    previous = value;
    if (stalled >= kStallWindow && last_correction < config.tolerance) {
      return finish(std::move(best), delta, split, k, true, last_correction);
    }
  }
  return finish(std::move(best), delta, split, config.max_iterations, false, last_correction);
}

/// Mixes m with I/2 just enough to pull every eigenvalue of m and m^T_B into
/// [0, 1]; I/2 is fixed by the partial transpose, so both boxes shrink alike.
ComplexMatrix shrink_towards_center(const ComplexMatrix& m, QubitSplit split) {
  const double v = ppt_constraint_violation(m, split);
  if (v == 0.0) return m;
  const double t = std::min(1.0, 2.0 * v / (1.0 + 2.0 * v) * (1.0 + 1e-9));
  return m * Complex(1.0 - t) + ComplexMatrix::identity(m.dim()) * Complex(0.5 * t);
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = normal(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = Complex(normal(rng), normal(rng)) / std::sqrt(2.0);
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

}  // namespace

std::string to_string(SdpMethod method) {
  return method == SdpMethod::admm ? "admm" : "projected_ascent";
}

SdpMethod parse_sdp_method(const std::string& text) {
  if (text == "admm") return SdpMethod::admm;
  if (text == "projected_ascent" || text == "subgradient") return SdpMethod::projected_ascent;
  throw std::invalid_argument("sdp method must be admm or projected_ascent, got '" + text + "'");
}

void SdpConfig::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("sdp tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("sdp max_iterations must be >= 1");
  if (!(penalty > 0.0)) throw std::invalid_argument("sdp penalty must be positive");
}

ComplexMatrix state_difference(double gamma, int pairs) {
  return joint_source_state(0, gamma, pairs) - joint_source_state(1, gamma, pairs);
}

double helstrom_bound(double gamma, int pairs) {
  return 0.5 + 0.25 * trace_norm(state_difference(gamma, pairs));
}

double bob_only_bound(double gamma, int pairs) {
  const QubitSplit split{pairs, pairs};
  const ComplexMatrix marginal_diff =
      partial_trace(joint_source_state(0, gamma, pairs), split, Subsystem::a) -
      partial_trace(joint_source_state(1, gamma, pairs), split, Subsystem::a);
  return 0.5 + 0.25 * trace_norm(marginal_diff);
}

ComplexMatrix project_unit_box(const ComplexMatrix& m) {
  const auto eig = hermitian_eig(hermitian_part(m));
  std::vector<double> clipped(eig.eigenvalues);
  for (auto& x : clipped) x = std::clamp(x, 0.0, 1.0);
  return hermitian_part(from_eig(eig, clipped));
}

ComplexMatrix project_ppt_box(const ComplexMatrix& m, QubitSplit split, int max_iterations,
                              double tolerance) {
  const std::size_t n = m.dim();
  ComplexMatrix x = m;
  ComplexMatrix p(n);
  ComplexMatrix q(n);
  for (int k = 0; k < max_iterations; ++k) {
    const ComplexMatrix y = project_unit_box(x + p);
    p = x + p - y;
    ComplexMatrix x_next = project_transposed_box(y + q, split);
    q = y + q - x_next;
    const double change = max_abs_diff(x_next, x);
    x = std::move(x_next);
    if (change < tolerance) break;
  }
  return x;
}

double ppt_constraint_violation(const ComplexMatrix& m, QubitSplit split) {
  auto worst = [](const ComplexMatrix& h) {
    const auto eig = hermitian_eig(hermitian_part(h));
    return std::max({0.0, -eig.eigenvalues.front(), eig.eigenvalues.back() - 1.0});
  };
  return std::max(worst(m), worst(partial_transpose(m, split)));
}

BoundResult solve_ppt_program(const ComplexMatrix& delta, QubitSplit split, const SdpConfig& config) {
  config.validate();
  if (!is_hermitian(delta, 1e-12)) throw std::invalid_argument("ppt program: delta must be Hermitian");
  return config.method == SdpMethod::admm ? solve_admm(delta, split, config)
                                          : solve_projected_ascent(delta, split, config);
}

BoundResult ppt_bound(double gamma, int pairs, const SdpConfig& config) {
  return solve_ppt_program(state_difference(gamma, pairs), QubitSplit{pairs, pairs}, config);
}

PerturbationReport verify_ppt_optimum(const ComplexMatrix& m, const ComplexMatrix& delta,
                                      QubitSplit split, int trials, std::uint64_t seed) {
  constexpr double kFeasibilityTol = 1e-9;
  const std::size_t n = m.dim();
  const double base = objective(m, delta);
  Rng rng(seed);
  PerturbationReport report;
  report.max_improvement = -1.0;
  for (int t = 0; t < trials; ++t) {
    ++report.trials;
    const ComplexMatrix h = random_hermitian(n, rng);
    ComplexMatrix candidate(n);
    if (t % 2 == 0) {
      const double scale = 1e-3 * std::pow(10.0, 2.0 * uniform01(rng));  // 1e-3 .. 1e-1
      candidate = shrink_towards_center(
          project_ppt_box(m + h * Complex(scale / frobenius_norm(h)), split), split);
      if (ppt_constraint_violation(candidate, split) > kFeasibilityTol) continue;
    } else {
      const double radius = std::max(spectral_norm(h), spectral_norm(partial_transpose(h, split)));
      const ComplexMatrix interior =
          ComplexMatrix::identity(n) * Complex(0.5) + h * Complex(0.499 / radius);
      const double step = uniform01(rng);
      candidate = m + (interior - m) * Complex(step);
    }
    ++report.feasible_trials;
    report.max_improvement = std::max(report.max_improvement, objective(candidate, delta) - base);
  }
  return report;
}

}  // namespace nalocc
