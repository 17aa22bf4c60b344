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

#include <string>
#include <vector>

#include "nalocc/linalg.hpp"

namespace nalocc {

/// Normalized pure state on a power-of-two dimensional register.
class Ket {
 public:
  /// Throws std::invalid_argument unless the dimension is a power of two and
  /// the norm is 1 within 1e-12.
  explicit Ket(std::vector<Complex> amplitudes);

  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  ComplexMatrix projector() const { return ComplexMatrix::outer(amplitudes_); }

 private:
  std::vector<Complex> amplitudes_;
};

Complex inner_product(const Ket& bra, const Ket& ket);

/// Hermitian, positive semidefinite, unit-trace operator (tolerance 1e-10).
class DensityMatrix {
 public:
  /// Validates the invariants; throws std::invalid_argument with the violated
  /// one otherwise.
  explicit DensityMatrix(ComplexMatrix m);
  static DensityMatrix from_ket(const Ket& k) { return DensityMatrix(k.projector()); }
  static DensityMatrix maximally_mixed(std::size_t dim);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.dim(); }

 private:
  ComplexMatrix m_;
};

/// Empty string when m is a density matrix within `tol`, otherwise a message
/// naming the first violated invariant.
std::string density_violation(const ComplexMatrix& m, double tol = 1e-10);

class KrausChannel {
 public:
  /// Throws std::invalid_argument if the operators are empty, of unequal
  /// dimension, or violate sum K^dagger K = I by more than 1e-12.
  explicit KrausChannel(std::vector<ComplexMatrix> kraus_ops);

  const std::vector<ComplexMatrix>& kraus_ops() const { return ops_; }
  std::size_t dim() const { return ops_.front().dim(); }

 private:
  std::vector<ComplexMatrix> ops_;
};

class ProjectorSet {
 public:
  /// Validates idempotence, Hermiticity, mutual orthogonality and
  /// completeness, each within 1e-12.
  ProjectorSet(std::vector<ComplexMatrix> projectors, std::vector<int> labels);

  const std::vector<ComplexMatrix>& projectors() const { return projectors_; }
  const std::vector<int>& labels() const { return labels_; }
  std::size_t size() const { return projectors_.size(); }

 private:
  std::vector<ComplexMatrix> projectors_;
  std::vector<int> labels_;
};

namespace gates {
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix swap();
}  // namespace gates

enum class BellKind { plus, minus };

/// (|00> +- |11>) / sqrt(2).
Ket bell_state(BellKind kind);

/// Single-qubit amplitude-damping Kraus pair {E0, E1}.
KrausChannel ad_qubit_channel(double gamma);

/// Two-qubit product channel with Kraus operators E_i (x) E_j, ordered
/// E00, E01, E10, E11. Throws std::invalid_argument unless 0 <= gamma <= 1.
KrausChannel ad_channel(double gamma);

/// sum_k K rho K^dagger.
DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho);
ComplexMatrix apply_channel(const KrausChannel& channel, const ComplexMatrix& rho);

/// rho_0 = |Phi+><Phi+|; rho_1 = AD_gamma(|Phi-><Phi-|).
DensityMatrix source_state(int index, double gamma);

/// Y rotation [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]].
ComplexMatrix ry(double theta);

/// exp(-i t/2 Z (x) Y), with Z on the first (more significant) qubit.
ComplexMatrix rzy(double theta);

/// CNOT embedded in an n-qubit register. Throws std::invalid_argument on an
/// index clash or out-of-range qubit.
ComplexMatrix cnot(int control, int target, int n_qubits);

/// tr(proj rho). Throws std::invalid_argument on a dimension mismatch or if
/// proj is not an idempotent Hermitian matrix (tolerance 1e-12).
double born_probability(const DensityMatrix& rho, const ComplexMatrix& proj);

}  // namespace nalocc
