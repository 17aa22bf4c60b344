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

#include <span>
#include <string>
#include <vector>

#include "nalocc/linalg.hpp"

namespace nalocc {

enum class AnsatzKind {
  s1,  // one pair: R_Y at Alice, R_Y per message at Bob
  s2,  // two pairs: R_ZY then CNOT at Alice, CNOT then R_ZY per message at Bob
};

struct CnotWiring {
  int control = 0;
  int target = 1;
  bool operator==(const CnotWiring&) const = default;
};

/// A fixed circuit family with trainable angles on each side.
struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::s1;
  CnotWiring alice_cnot{};  // s2 only
  CnotWiring bob_cnot{};    // s2 only

  static AnsatzSpec single_pair() { return {AnsatzKind::s1, {}, {}}; }
  static AnsatzSpec two_pair(CnotWiring alice = {}, CnotWiring bob = {}) {
    return {AnsatzKind::s2, alice, bob};
  }

  /// Number of qubit pairs S the circuit acts on.
  int pairs() const { return kind == AnsatzKind::s1 ? 1 : 2; }
  /// 2^S possible classical messages.
  int messages() const { return 1 << pairs(); }
  int alice_param_count() const { return 1; }
  int bob_param_count_per_message() const { return 1; }

  bool operator==(const AnsatzSpec&) const = default;
};

/// U^A(theta): s1 -> R_Y; s2 -> CNOT * R_ZY (rotation applied first).
/// Throws std::invalid_argument if theta has the wrong length.
ComplexMatrix alice_unitary(const AnsatzSpec& spec, std::span<const double> theta);

/// U^B(theta): s1 -> R_Y; s2 -> R_ZY * CNOT (CNOT applied first).
ComplexMatrix bob_unitary(const AnsatzSpec& spec, std::span<const double> theta);

/// Alice angle vector plus one Bob angle vector per message; bob[m] belongs to
/// the message whose bit string reads m with the first bit most significant.
struct AngleSet {
  std::vector<double> alice;
  std::vector<std::vector<double>> bob;

  bool operator==(const AngleSet&) const = default;
};

/// Throws std::invalid_argument if the vector lengths disagree with spec.
void validate_angles(const AnsatzSpec& spec, const AngleSet& angles);

/// Total number of trainable angles.
int parameter_count(const AnsatzSpec& spec);

/// Flat parameter order: alice..., bob[0]..., bob[1]..., ...
std::vector<double> flatten(const AngleSet& angles);
AngleSet unflatten(const AnsatzSpec& spec, std::span<const double> params);

/// Closed-form single-pair angles for noiseless communication:
/// theta^A = pi/2 and theta^B_m = (-1)^m (pi - atan((2 - gamma) / 2)).
AngleSet loccnet_reference_angles(double gamma);

std::string to_string(AnsatzKind kind);
std::string to_string(CnotWiring wiring);  // "01" or "10"
CnotWiring parse_cnot_wiring(const std::string& text);

}  // namespace nalocc
