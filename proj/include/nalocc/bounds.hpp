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
#include <string>

#include "nalocc/linalg.hpp"

namespace nalocc {

enum class SdpMethod {
  /// Douglas-Rachford splitting between the two spectahedral boxes.
  admm,
  /// Projected ascent with c/sqrt(k) steps; each step is projected onto the
  /// intersection with Dykstra's algorithm.
  projected_ascent,
};

std::string to_string(SdpMethod method);
SdpMethod parse_sdp_method(const std::string& text);

struct SdpConfig {
  double tolerance = 1e-7;
  int max_iterations = 50000;
  /// ADMM penalty rho; scales the step constant c for projected ascent.
  double penalty = 1.0;
  SdpMethod method = SdpMethod::admm;

  void validate() const;
};

struct SdpResiduals {
  /// max(0, -lambda_min) over M, I - M, M^T_B and I - M^T_B.
  double constraint = 0.0;
  /// ADMM: max-abs gap between the two split copies. Projected ascent: last
  /// Dykstra correction size.
  double splitting = 0.0;
};

struct BoundResult {
  double value = 0.5;
  int iterations_used = 0;
  bool converged = false;
  SdpResiduals residuals;
  /// The optimizing POVM element M_0 (M_1 = I - M_0).
  ComplexMatrix measurement;
};

/// rho_0^{(x)S} - rho_1^{(x)S}, Alice-before-Bob ordering.
ComplexMatrix state_difference(double gamma, int pairs);

/// 1/2 + 1/4 ||rho_0^{(x)S} - rho_1^{(x)S}||_1.
double helstrom_bound(double gamma, int pairs);

/// 1/2 + 1/4 ||tr_A rho_0^{(x)S} - tr_A rho_1^{(x)S}||_1: the best Bob can do
/// from his marginal alone.
double bob_only_bound(double gamma, int pairs);

/// max 1/2 + 1/2 tr(M Delta) over 0 <= M <= I and 0 <= M^T_B <= I. A run that
/// hits max_iterations is reported with converged = false.
BoundResult ppt_bound(double gamma, int pairs, const SdpConfig& config = {});

/// Same program for an arbitrary Hermitian difference operator.
BoundResult solve_ppt_program(const ComplexMatrix& delta, QubitSplit split, const SdpConfig& config);

/// Euclidean projection onto {0 <= M <= I}.
ComplexMatrix project_unit_box(const ComplexMatrix& m);

/// Projection onto the intersection of the direct and partial-transposed
/// unit boxes by Dykstra's alternating scheme.
ComplexMatrix project_ppt_box(const ComplexMatrix& m, QubitSplit split, int max_iterations = 2000,
                              double tolerance = 1e-12);

/// Largest violation of the four PSD constraints.
double ppt_constraint_violation(const ComplexMatrix& m, QubitSplit split);

struct PerturbationReport {
  int trials = 0;
  int feasible_trials = 0;
  double max_improvement = 0.0;  // largest objective gain found (may be < 0)
};

/// Random search for a feasible point that beats a claimed optimum `m`.
/// Half the trials perturb m locally, project back with Dykstra and mix in
/// just enough I/2 to land strictly inside; the other half move towards a
/// random strictly feasible point around I/2, which is feasible by convexity.
PerturbationReport verify_ppt_optimum(const ComplexMatrix& m, const ComplexMatrix& delta,
                                      QubitSplit split, int trials, std::uint64_t seed);

}  // namespace nalocc
