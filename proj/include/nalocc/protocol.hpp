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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nalocc/ansatz.hpp"
#include "nalocc/linalg.hpp"
#include "nalocc/quantum.hpp"

namespace nalocc {

/// How Bob's post-message state is assembled from Alice's branches.
enum class MixingRule {
  /// sum_{a, a_hat} P^A_{a|i} P(a_hat|a) U_{a_hat} sigma_{a|i} U_{a_hat}^dagger
  bayes,
  /// sum_{a_hat} P^B_{a_hat|i} U_{a_hat} [sum_a P(a_hat|a) sigma_{a|i}] U_{a_hat}^dagger
  literal,
};

std::string to_string(MixingRule rule);
MixingRule parse_mixing_rule(const std::string& text);

/// One discrimination instance. The number of pairs S comes from the ansatz.
struct ProtocolConfig {
  AnsatzSpec ansatz = AnsatzSpec::single_pair();
  double gamma = 0.0;      // amplitude damping strength, [0, 1]
  double flip_prob = 0.0;  // BSC bit-flip probability, [0, 0.5]
  MixingRule mixing = MixingRule::bayes;

  int pairs() const { return ansatz.pairs(); }
  /// Throws std::invalid_argument naming the out-of-range field.
  void validate() const;
};

/// Bit string of `length` bits stored in `value`, first bit most significant.
struct BitString {
  unsigned value = 0;
  int length = 0;
};

int hamming_distance(BitString a, BitString b);

/// p^d (1-p)^(S-d) with d the Hamming distance. Throws on a length mismatch.
double bsc_prob(BitString a, BitString a_hat, double p);

/// Branch probabilities below this are treated as impossible.
inline constexpr double kNegligibleBranch = 1e-14;

struct MeasurementBranch {
  BitString outcome;
  double prob = 0.0;
  /// Normalized Bob-side state; the maximally mixed placeholder when
  /// `negligible` is set.
  DensityMatrix post_state;
  bool negligible = false;
};

/// rho_i^{(x)S} with Alice's qubits listed before Bob's.
ComplexMatrix joint_source_state(int index, double gamma, int pairs);

/// (U^A (x) I) rho_i^{(x)S} (U^A (x) I)^dagger.
DensityMatrix alice_output_state(int index, const AngleSet& angles, const ProtocolConfig& config);

/// Computational-basis measurement of Alice's S qubits, one branch per outcome.
std::vector<MeasurementBranch> alice_measure(const DensityMatrix& rho_ab, int pairs);

/// P^B_{a_hat|i} = sum_a P(a_hat|a) P^A_{a|i}.
double bob_message_prob(int index, BitString a_hat, const AngleSet& angles,
                        const ProtocolConfig& config);

/// Bob's state after his conditional unitary, before the parity measurement.
DensityMatrix bob_final_state(int index, const AngleSet& angles, const ProtocolConfig& config);

/// Even-weight (label 0) and odd-weight (label 1) projectors on S qubits.
ProjectorSet parity_projectors(int pairs);

/// 1/2 sum_i tr(Pi_i rho_i^B).
double success_probability(const AngleSet& angles, const ProtocolConfig& config);

/// Success-probability evaluator with the source states of one configuration
/// precomputed. Cheap to copy; evaluation is const and thread-safe.
class SuccessEvaluator {
 public:
  explicit SuccessEvaluator(ProtocolConfig config);

  const ProtocolConfig& config() const { return config_; }

  double operator()(const AngleSet& angles) const;
  /// Flat parameter vector as produced by flatten().
  double operator()(std::span<const double> params) const;

  /// Unnormalized Bob blocks (<a| (x) I) rho^AB (|a> (x) I), one per a; the
  /// trace of each is P^A_{a|i}.
  std::vector<ComplexMatrix> conditional_blocks(int index, const ComplexMatrix& alice_u) const;

  ComplexMatrix bob_final_matrix(int index, const AngleSet& angles) const;

 private:
  ProtocolConfig config_;
  std::array<ComplexMatrix, 2> sources_;
};

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::int64_t successes = 0;
  std::int64_t samples = 0;
};

/// Samples the operational protocol: i uniform, a by the Born rule, a_hat by
/// independent bit flips, then Bob's parity outcome. Deterministic in seed.
McEstimate mc_estimate(const AngleSet& angles, const ProtocolConfig& config, std::int64_t n_samples,
                       std::uint64_t seed);

}  // namespace nalocc
