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

#include "nalocc/quantum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nalocc {

namespace {

constexpr double kProjectorTol = 1e-12;

void require_projector(const ComplexMatrix& p, const char* op) {
  if (!is_hermitian(p, kProjectorTol) || max_abs_diff(p * p, p) > kProjectorTol) {
    throw std::invalid_argument(std::string(op) + ": operator is not an orthogonal projector");
  }
}

}  // namespace

Ket::Ket(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty() || qubit_count(amplitudes_.size()) < 0) {
    throw std::invalid_argument("Ket: dimension must be a power of two");
  }
  double norm = 0.0;
  for (const auto& a : amplitudes_) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-12) throw std::invalid_argument("Ket: state is not normalized");
}

Complex inner_product(const Ket& bra, const Ket& ket) {
  if (bra.dim() != ket.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
  Complex sum{};
  for (std::size_t i = 0; i < bra.dim(); ++i) sum += std::conj(bra.amplitudes()[i]) * ket.amplitudes()[i];
  return sum;
}

std::string density_violation(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return "not Hermitian";
  if (std::abs(trace(m) - 1.0) > tol) return "trace differs from 1";
  // Symmetrize away sub-tolerance skew so the eigensolver's own check passes.
  const ComplexMatrix h = 0.5 * (m + dagger(m));
  const auto eig = hermitian_eig(h);
  if (eig.eigenvalues.front() < -tol) return "not positive semidefinite";
  return {};
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (auto why = density_violation(m_); !why.empty()) {
    throw std::invalid_argument("DensityMatrix: " + why);
  }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus_ops) : ops_(std::move(kraus_ops)) {
  if (ops_.empty()) throw std::invalid_argument("KrausChannel: no Kraus operators");
  const std::size_t d = ops_.front().dim();
  ComplexMatrix sum(d);
  for (const auto& k : ops_) {
    if (k.dim() != d) throw std::invalid_argument("KrausChannel: Kraus operators differ in dimension");
    sum += dagger(k) * k;
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(d)) > 1e-12) {
    throw std::invalid_argument("KrausChannel: completeness relation violated");
  }
}

ProjectorSet::ProjectorSet(std::vector<ComplexMatrix> projectors, std::vector<int> labels)
    : projectors_(std::move(projectors)), labels_(std::move(labels)) {
  if (projectors_.empty() || projectors_.size() != labels_.size()) {
    throw std::invalid_argument("ProjectorSet: need one label per projector");
  }
  const std::size_t d = projectors_.front().dim();
  ComplexMatrix sum(d);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    require_projector(projectors_[i], "ProjectorSet");
    sum += projectors_[i];
    for (std::size_t j = i + 1; j < projectors_.size(); ++j) {
      if (max_abs_diff(projectors_[i] * projectors_[j], ComplexMatrix(d)) > kProjectorTol) {
        throw std::invalid_argument("ProjectorSet: projectors are not mutually orthogonal");
      }
    }
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(d)) > kProjectorTol) {
    throw std::invalid_argument("ProjectorSet: projectors do not sum to identity");
  }
}

namespace gates {
ComplexMatrix pauli_x() { return {{0, 1}, {1, 0}}; }
ComplexMatrix pauli_y() { return {{0, Complex(0, -1)}, {Complex(0, 1), 0}}; }
ComplexMatrix pauli_z() { return {{1, 0}, {0, -1}}; }
ComplexMatrix swap() { return {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}; }
}  // namespace gates

Ket bell_state(BellKind kind) {
  const double h = std::numbers::sqrt2 / 2.0;
  return Ket({h, 0.0, 0.0, kind == BellKind::plus ? h : -h});
}

KrausChannel ad_qubit_channel(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("ad_channel: gamma must lie in [0, 1]");
  }
  ComplexMatrix e0{{1, 0}, {0, std::sqrt(1.0 - gamma)}};
  ComplexMatrix e1{{0, std::sqrt(gamma)}, {0, 0}};
  return KrausChannel({std::move(e0), std::move(e1)});
}

KrausChannel ad_channel(double gamma) {
  const auto single = ad_qubit_channel(gamma);
  std::vector<ComplexMatrix> ops;
  for (const auto& ei : single.kraus_ops()) {
    for (const auto& ej : single.kraus_ops()) ops.push_back(kron(ei, ej));
  }
  return KrausChannel(std::move(ops));
}

ComplexMatrix apply_channel(const KrausChannel& channel, const ComplexMatrix& rho) {
  if (rho.dim() != channel.dim()) throw std::invalid_argument("apply_channel: dimension mismatch");
  ComplexMatrix out(rho.dim());
  for (const auto& k : channel.kraus_ops()) out += conjugate(k, rho);
  return out;
}

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho) {
  return DensityMatrix(apply_channel(channel, rho.matrix()));
}

DensityMatrix source_state(int index, double gamma) {
  if (index == 0) return DensityMatrix::from_ket(bell_state(BellKind::plus));
  if (index != 1) throw std::invalid_argument("source_state: index must be 0 or 1");
  return apply_channel(ad_channel(gamma), DensityMatrix::from_ket(bell_state(BellKind::minus)));
}

ComplexMatrix ry(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {{c, -s}, {s, c}};
}

ComplexMatrix rzy(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  ComplexMatrix out = ComplexMatrix::identity(4) * Complex(c);
  out += kron(gates::pauli_z(), gates::pauli_y()) * Complex(0.0, -s);
  return out;
}

ComplexMatrix cnot(int control, int target, int n_qubits) {
  if (n_qubits < 2 || n_qubits > 30 || control < 0 || target < 0 || control >= n_qubits ||
      target >= n_qubits || control == target) {
    throw std::invalid_argument("cnot: invalid control/target for register of " +
                                std::to_string(n_qubits) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  const std::size_t cmask = std::size_t{1} << (n_qubits - 1 - control);
  const std::size_t tmask = std::size_t{1} << (n_qubits - 1 - target);
  ComplexMatrix out(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    const std::size_t y = (x & cmask) ? (x ^ tmask) : x;
    out(y, x) = 1.0;
  }
  return out;
}

double born_probability(const DensityMatrix& rho, const ComplexMatrix& proj) {
  if (proj.dim() != rho.dim()) throw std::invalid_argument("born_probability: dimension mismatch");
  require_projector(proj, "born_probability");
  return trace(proj * rho.matrix()).real();
}

}  // namespace nalocc
