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

#include "nalocc/ansatz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nalocc/quantum.hpp"

namespace nalocc {

namespace {

void require_count(std::span<const double> theta, int expected, const char* side) {
  if (theta.size() != static_cast<std::size_t>(expected)) {
    throw std::invalid_argument(std::string(side) + " angle count " + std::to_string(theta.size()) +
                                " does not match ansatz (" + std::to_string(expected) + ")");
  }
}

}  // namespace

ComplexMatrix alice_unitary(const AnsatzSpec& spec, std::span<const double> theta) {
  require_count(theta, spec.alice_param_count(), "alice");
  if (spec.kind == AnsatzKind::s1) return ry(theta[0]);
  return cnot(spec.alice_cnot.control, spec.alice_cnot.target, 2) * rzy(theta[0]);
}

ComplexMatrix bob_unitary(const AnsatzSpec& spec, std::span<const double> theta) {
  require_count(theta, spec.bob_param_count_per_message(), "bob");
  if (spec.kind == AnsatzKind::s1) return ry(theta[0]);
  return rzy(theta[0]) * cnot(spec.bob_cnot.control, spec.bob_cnot.target, 2);
}

void validate_angles(const AnsatzSpec& spec, const AngleSet& angles) {
  require_count(angles.alice, spec.alice_param_count(), "alice");
  if (angles.bob.size() != static_cast<std::size_t>(spec.messages())) {
    throw std::invalid_argument("bob angle map has " + std::to_string(angles.bob.size()) +
                                " entries, expected " + std::to_string(spec.messages()));
  }
  for (const auto& b : angles.bob) require_count(b, spec.bob_param_count_per_message(), "bob");
}

int parameter_count(const AnsatzSpec& spec) {
  return spec.alice_param_count() + spec.messages() * spec.bob_param_count_per_message();
}

std::vector<double> flatten(const AngleSet& angles) {
  std::vector<double> out(angles.alice);
  for (const auto& b : angles.bob) out.insert(out.end(), b.begin(), b.end());
  return out;
}

AngleSet unflatten(const AnsatzSpec& spec, std::span<const double> params) {
  if (params.size() != static_cast<std::size_t>(parameter_count(spec))) {
    throw std::invalid_argument("unflatten: parameter count mismatch");
  }
  const auto na = static_cast<std::size_t>(spec.alice_param_count());
  const auto nb = static_cast<std::size_t>(spec.bob_param_count_per_message());
  AngleSet out;
  out.alice.assign(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(na));
  for (int m = 0; m < spec.messages(); ++m) {
    const auto first = params.begin() + static_cast<std::ptrdiff_t>(na + static_cast<std::size_t>(m) * nb);
    out.bob.emplace_back(first, first + static_cast<std::ptrdiff_t>(nb));
  }
  return out;
}

AngleSet loccnet_reference_angles(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("loccnet_reference_angles: gamma must lie in [0, 1]");
  }
  const double alpha = (2.0 - gamma) / 2.0;
  const double bob = std::numbers::pi - std::atan(alpha);
  return AngleSet{{std::numbers::pi / 2.0}, {{bob}, {-bob}}};
}

std::string to_string(AnsatzKind kind) { return kind == AnsatzKind::s1 ? "s1" : "s2"; }

std::string to_string(CnotWiring wiring) {
  return std::to_string(wiring.control) + std::to_string(wiring.target);
}

CnotWiring parse_cnot_wiring(const std::string& text) {
  if (text == "01") return {0, 1};
  if (text == "10") return {1, 0};
  throw std::invalid_argument("cnot wiring must be 01 or 10, got '" + text + "'");
}

}  // namespace nalocc
