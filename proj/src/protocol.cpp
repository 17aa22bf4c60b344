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

#include "nalocc/protocol.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "nalocc/random.hpp"

namespace nalocc {

namespace {

double bsc_weight(unsigned a, unsigned a_hat, int length, double p) {
  const int d = std::popcount(a ^ a_hat);
  return std::pow(p, d) * std::pow(1.0 - p, length - d);
}

double real_trace(const ComplexMatrix& m) { return trace(m).real(); }

// Bob's unnormalized per-message input state for the chosen mixing rule, with
// the message weight folded in: rho_i^B = sum_m U_m inputs[m] U_m^dagger.
std::vector<ComplexMatrix> bob_message_inputs(const std::vector<ComplexMatrix>& blocks,
                                              const ProtocolConfig& config) {
  const int pairs = config.pairs();
  const auto d = blocks.size();
  const double p = config.flip_prob;
  std::vector<double> branch_prob(d);
  for (std::size_t a = 0; a < d; ++a) branch_prob[a] = real_trace(blocks[a]);

  std::vector<ComplexMatrix> inputs(d, ComplexMatrix(d));
  for (unsigned m = 0; m < d; ++m) {
    if (config.mixing == MixingRule::bayes) {
      for (unsigned a = 0; a < d; ++a) {
        if (branch_prob[a] <= kNegligibleBranch) continue;
        inputs[m] += blocks[a] * Complex(bsc_weight(a, m, pairs, p));
      }
      continue;
    }
    double message_prob = 0.0;
    ComplexMatrix mixed(d);
    for (unsigned a = 0; a < d; ++a) {
      const double w = bsc_weight(a, m, pairs, p);
      message_prob += w * branch_prob[a];
      if (branch_prob[a] <= kNegligibleBranch) {
        // Same placeholder alice_measure reports for an impossible outcome.
        mixed += ComplexMatrix::identity(d) * Complex(w / static_cast<double>(d));
      } else {
        mixed += blocks[a] * Complex(w / branch_prob[a]);
      }
    }
    inputs[m] = mixed * Complex(message_prob);
  }
  return inputs;
}

}  // namespace

std::string to_string(MixingRule rule) { return rule == MixingRule::bayes ? "bayes" : "literal"; }

MixingRule parse_mixing_rule(const std::string& text) {
  if (text == "bayes") return MixingRule::bayes;
  if (text == "literal") return MixingRule::literal;
  throw std::invalid_argument("mixing rule must be bayes or literal, got '" + text + "'");
}

void ProtocolConfig::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  if (!(flip_prob >= 0.0 && flip_prob <= 0.5)) throw std::invalid_argument("p must lie in [0, 0.5]");
}

int hamming_distance(BitString a, BitString b) {
  if (a.length != b.length) throw std::invalid_argument("bit strings differ in length");
  return std::popcount(a.value ^ b.value);
}

double bsc_prob(BitString a, BitString a_hat, double p) {
  const int d = hamming_distance(a, a_hat);
  return std::pow(p, d) * std::pow(1.0 - p, a.length - d);
}

ComplexMatrix joint_source_state(int index, double gamma, int pairs) {
  if (pairs < 1) throw std::invalid_argument("joint_source_state: need at least one pair");
  const ComplexMatrix pair = source_state(index, gamma).matrix();
  ComplexMatrix interleaved = pair;
  for (int s = 1; s < pairs; ++s) interleaved = kron(interleaved, pair);
  // (A0 B0)(A1 B1)... -> A0 A1 ... B0 B1 ...
  std::vector<int> perm(static_cast<std::size_t>(2 * pairs));
  for (int s = 0; s < pairs; ++s) {
    perm[static_cast<std::size_t>(s)] = 2 * s;
    perm[static_cast<std::size_t>(pairs + s)] = 2 * s + 1;
  }
  return permute_qubits(interleaved, perm);
}

DensityMatrix alice_output_state(int index, const AngleSet& angles, const ProtocolConfig& config) {
  config.validate();
  validate_angles(config.ansatz, angles);
  const auto d = static_cast<std::size_t>(config.ansatz.messages());
  const ComplexMatrix u = kron(alice_unitary(config.ansatz, angles.alice), ComplexMatrix::identity(d));
  return DensityMatrix(conjugate(u, joint_source_state(index, config.gamma, config.pairs())));
}

std::vector<MeasurementBranch> alice_measure(const DensityMatrix& rho_ab, int pairs) {
  const std::size_t d = std::size_t{1} << pairs;
  if (rho_ab.dim() != d * d) throw std::invalid_argument("alice_measure: state dimension mismatch");
  const ComplexMatrix& rho = rho_ab.matrix();
  std::vector<MeasurementBranch> branches;
  for (std::size_t a = 0; a < d; ++a) {
    ComplexMatrix block(d);
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t l = 0; l < d; ++l) block(k, l) = rho(a * d + k, a * d + l);
    }
    const double prob = real_trace(block);
    const BitString outcome{static_cast<unsigned>(a), pairs};
    if (prob <= kNegligibleBranch) {
      branches.push_back({outcome, prob, DensityMatrix::maximally_mixed(d), true});
    } else {
      branches.push_back({outcome, prob, DensityMatrix(block * Complex(1.0 / prob)), false});
    }
  }
  return branches;
}

double bob_message_prob(int index, BitString a_hat, const AngleSet& angles,
                        const ProtocolConfig& config) {
  if (a_hat.length != config.pairs()) throw std::invalid_argument("message length must equal S");
  double total = 0.0;
  for (const auto& branch : alice_measure(alice_output_state(index, angles, config), config.pairs())) {
    total += bsc_prob(branch.outcome, a_hat, config.flip_prob) * branch.prob;
  }
  return total;
}

DensityMatrix bob_final_state(int index, const AngleSet& angles, const ProtocolConfig& config) {
  return DensityMatrix(SuccessEvaluator(config).bob_final_matrix(index, angles));
}

ProjectorSet parity_projectors(int pairs) {
  if (pairs < 1) throw std::invalid_argument("parity_projectors: need S >= 1");
  const std::size_t d = std::size_t{1} << pairs;
  ComplexMatrix even(d);
  ComplexMatrix odd(d);
  for (std::size_t b = 0; b < d; ++b) {
    (std::popcount(b) % 2 == 0 ? even : odd)(b, b) = 1.0;
  }
  return ProjectorSet({even, odd}, {0, 1});
}

double success_probability(const AngleSet& angles, const ProtocolConfig& config) {
  return SuccessEvaluator(config)(angles);
}

SuccessEvaluator::SuccessEvaluator(ProtocolConfig config)
    : config_(std::move(config)),
      sources_{joint_source_state(0, config_.gamma, config_.pairs()),
               joint_source_state(1, config_.gamma, config_.pairs())} {
  config_.validate();
}

std::vector<ComplexMatrix> SuccessEvaluator::conditional_blocks(int index,
                                                                const ComplexMatrix& alice_u) const {
  const ComplexMatrix& rho = sources_.at(static_cast<std::size_t>(index));
  const std::size_t d = alice_u.dim();
  std::vector<ComplexMatrix> blocks(d, ComplexMatrix(d));
  for (std::size_t a = 0; a < d; ++a) {
    ComplexMatrix& block = blocks[a];
    for (std::size_t b = 0; b < d; ++b) {
      const Complex uab = alice_u(a, b);
      if (uab == Complex{}) continue;
      for (std::size_t c = 0; c < d; ++c) {
        const Complex w = uab * std::conj(alice_u(a, c));
        if (w == Complex{}) continue;
        for (std::size_t k = 0; k < d; ++k) {
          for (std::size_t l = 0; l < d; ++l) block(k, l) += w * rho(b * d + k, c * d + l);
        }
      }
    }
  }
  return blocks;
}

ComplexMatrix SuccessEvaluator::bob_final_matrix(int index, const AngleSet& angles) const {
  validate_angles(config_.ansatz, angles);
  const auto blocks = conditional_blocks(index, alice_unitary(config_.ansatz, angles.alice));
  const auto inputs = bob_message_inputs(blocks, config_);
  ComplexMatrix out(blocks.size());
  for (std::size_t m = 0; m < inputs.size(); ++m) {
    out += conjugate(bob_unitary(config_.ansatz, angles.bob[m]), inputs[m]);
  }
  return out;
}

double SuccessEvaluator::operator()(const AngleSet& angles) const {
  double total = 0.0;
  for (int i = 0; i < 2; ++i) {
    const ComplexMatrix rho_b = bob_final_matrix(i, angles);
    for (std::size_t b = 0; b < rho_b.dim(); ++b) {
      if (std::popcount(b) % 2 == i) total += rho_b(b, b).real();
    }
  }
  return 0.5 * total;
}

double SuccessEvaluator::operator()(std::span<const double> params) const {
  return (*this)(unflatten(config_.ansatz, params));
}

McEstimate mc_estimate(const AngleSet& angles, const ProtocolConfig& config, std::int64_t n_samples,
                       std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("mc_estimate: n_samples must be >= 1");
  config.validate();
  validate_angles(config.ansatz, angles);
  const int pairs = config.pairs();
  const auto d = static_cast<std::size_t>(config.ansatz.messages());

  // Per (i, a): Alice's outcome probability; per (i, a, a_hat): probability
  // that Bob's parity measurement reports even.
  std::array<std::vector<double>, 2> branch_prob;
  std::array<std::vector<double>, 2> even_prob;
  std::vector<ComplexMatrix> bob_u;
  for (const auto& theta : angles.bob) bob_u.push_back(bob_unitary(config.ansatz, theta));
  const ComplexMatrix even = parity_projectors(pairs).projectors()[0];
  for (int i = 0; i < 2; ++i) {
    const auto branches = alice_measure(alice_output_state(i, angles, config), pairs);
    for (const auto& br : branches) {
      branch_prob[static_cast<std::size_t>(i)].push_back(br.prob);
      for (std::size_t m = 0; m < d; ++m) {
        const double q = trace(even * conjugate(bob_u[m], br.post_state.matrix())).real();
        even_prob[static_cast<std::size_t>(i)].push_back(q);
      }
    }
  }

  Rng rng(seed);
  std::int64_t successes = 0;
  for (std::int64_t n = 0; n < n_samples; ++n) {
    const int i = uniform01(rng) < 0.5 ? 0 : 1;
    const auto& probs = branch_prob[static_cast<std::size_t>(i)];
    const double u = uniform01(rng);
    std::size_t a = 0;
    double cumulative = probs[0];
    while (a + 1 < d && u >= cumulative) cumulative += probs[++a];
    std::size_t a_hat = a;
    for (int bit = 0; bit < pairs; ++bit) {
      if (uniform01(rng) < config.flip_prob) a_hat ^= std::size_t{1} << bit;
    }
    const double q = even_prob[static_cast<std::size_t>(i)][a * d + a_hat];
    const int outcome = uniform01(rng) < q ? 0 : 1;
    if (outcome == i) ++successes;
  }

  McEstimate out;
  out.samples = n_samples;
  out.successes = successes;
  out.estimate = static_cast<double>(successes) / static_cast<double>(n_samples);
  out.standard_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(n_samples));
  return out;
}

}  // namespace nalocc
