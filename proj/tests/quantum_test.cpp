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

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace nalocc;
using namespace nalocc::testing;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix basis_projector(std::size_t dim, std::size_t index) {
  ComplexMatrix m(dim);
  m(index, index) = 1.0;
  return m;
}

std::vector<double> gamma_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 20; ++k) g.push_back(k / 20.0);
  return g;
}

}  // namespace

TEST(BellState, Amplitudes) {
  const double h = 1.0 / std::sqrt(2.0);
  const auto plus_ket = bell_state(BellKind::plus);
  const auto minus_ket = bell_state(BellKind::minus);
  const auto plus = plus_ket.amplitudes();
  const auto minus = minus_ket.amplitudes();
  const std::vector<Complex> want_plus{h, 0, 0, h};
  const std::vector<Complex> want_minus{h, 0, 0, -h};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_LE(std::abs(plus[k] - want_plus[k]), 1e-15);
    EXPECT_LE(std::abs(minus[k] - want_minus[k]), 1e-15);
  }
  EXPECT_LE(std::abs(inner_product(bell_state(BellKind::plus), bell_state(BellKind::minus))), 1e-15);
}

TEST(Ket, RejectsBadInput) {
  EXPECT_THROW(Ket({1.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(Ket({1.0, 1.0}), std::invalid_argument);
  EXPECT_NO_THROW(Ket({0.6, Complex(0.0, 0.8)}));
}

TEST(DensityMatrix, RejectsInvalidOperators) {
  EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(2)), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(ComplexMatrix::diagonal(std::vector<double>{1.5, -0.5})),
               std::invalid_argument);
  ComplexMatrix skew = ComplexMatrix::identity(2) * Complex(0.5);
  skew(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{skew}, std::invalid_argument);
  EXPECT_FALSE(density_violation(skew).empty());
  EXPECT_TRUE(density_violation(DensityMatrix::maximally_mixed(4).matrix()).empty());
}

TEST(KrausChannel, RejectsIncompleteSet) {
  EXPECT_THROW(KrausChannel({}), std::invalid_argument);
  EXPECT_THROW(KrausChannel({ComplexMatrix::identity(2) * Complex(0.5)}), std::invalid_argument);
  EXPECT_THROW(KrausChannel({ComplexMatrix::identity(2), ComplexMatrix(4)}), std::invalid_argument);
}

TEST(ProjectorSet, RejectsNonProjectors) {
  EXPECT_THROW(ProjectorSet({basis_projector(2, 0)}, {0}), std::invalid_argument);
  EXPECT_THROW(ProjectorSet({basis_projector(2, 0), basis_projector(2, 0)}, {0, 1}),
               std::invalid_argument);
  EXPECT_THROW(ProjectorSet({ComplexMatrix::identity(2) * Complex(0.5),
                             ComplexMatrix::identity(2) * Complex(0.5)},
                            {0, 1}),
               std::invalid_argument);
  EXPECT_NO_THROW(ProjectorSet({basis_projector(2, 0), basis_projector(2, 1)}, {0, 1}));
}

TEST(AdChannel, IdentityAtZeroNoise) {
  auto rng = make_rng();
  const DensityMatrix rho(random_density(4, rng));
  EXPECT_MATRIX_NEAR(apply_channel(ad_channel(0.0), rho).matrix(), rho.matrix(), 1e-15);
}

TEST(AdChannel, FullDampingSendsPhiMinusToGround) {
  const auto out = apply_channel(ad_channel(1.0), DensityMatrix::from_ket(bell_state(BellKind::minus)));
  EXPECT_MATRIX_NEAR(out.matrix(), basis_projector(4, 0), 1e-15);
}

TEST(AdChannel, SingleQubitExcitedState) {
  for (double g : {0.0, 0.3, 0.8, 1.0}) {
    const auto out = apply_channel(ad_qubit_channel(g), basis_projector(2, 1));
    EXPECT_MATRIX_NEAR(out, ComplexMatrix::diagonal(std::vector<double>{g, 1.0 - g}), 1e-15);
  }
}

TEST(AdChannel, KrausOrderAndCompleteness) {
  for (double g : gamma_grid()) {
    const auto ch = ad_channel(g);
    ASSERT_EQ(ch.kraus_ops().size(), 4u);
    const auto single_channel = ad_qubit_channel(g);
    const auto& single = single_channel.kraus_ops();
    EXPECT_MATRIX_NEAR(ch.kraus_ops()[1], kron(single[0], single[1]), 0.0);
    EXPECT_MATRIX_NEAR(ch.kraus_ops()[2], kron(single[1], single[0]), 0.0);
    ComplexMatrix sum(4);
    for (const auto& k : ch.kraus_ops()) sum = sum + dagger(k) * k;
    EXPECT_MATRIX_NEAR(sum, ComplexMatrix::identity(4), 1e-12);
  }
}

TEST(AdChannel, RejectsOutOfRangeNoise) {
  EXPECT_THROW(ad_channel(-0.01), std::invalid_argument);
  EXPECT_THROW(ad_channel(1.01), std::invalid_argument);
  EXPECT_THROW(ad_channel(std::nan("")), std::invalid_argument);
}

TEST(ApplyChannel, IdentityChannel) {
  auto rng = make_rng();
  const DensityMatrix rho(random_density(2, rng));
  const KrausChannel id({ComplexMatrix::identity(2)});
  EXPECT_EQ(apply_channel(id, rho).matrix(), rho.matrix());
  EXPECT_THROW(apply_channel(id, DensityMatrix::maximally_mixed(4)), std::invalid_argument);
}

TEST(ApplyChannel, PreservesDensityInvariantsOnRandomInputs) {
  auto rng = make_rng(17);
  for (int t = 0; t < 100; ++t) {
    const DensityMatrix rho(random_density(4, rng));
    const auto out = apply_channel(ad_channel(uniform(rng, 0.0, 1.0)), rho);
    EXPECT_TRUE(density_violation(out.matrix()).empty());
    EXPECT_TRUE(is_hermitian(out.matrix(), 1e-12));
    EXPECT_NEAR(trace(out.matrix()).real(), 1.0, 1e-12);
    EXPECT_GE(hermitian_eig(out.matrix()).eigenvalues.front(), -1e-10);
  }
}

TEST(SourceState, Values) {
  const auto phi_plus = bell_state(BellKind::plus).projector();
  for (double g : {0.0, 0.4, 1.0}) {
    EXPECT_MATRIX_NEAR(source_state(0, g).matrix(), phi_plus, 0.0);
  }
  EXPECT_MATRIX_NEAR(source_state(1, 0.0).matrix(), bell_state(BellKind::minus).projector(), 1e-15);
  EXPECT_MATRIX_NEAR(source_state(1, 1.0).matrix(), basis_projector(4, 0), 1e-15);
  EXPECT_THROW(source_state(2, 0.5), std::invalid_argument);
}

TEST(SourceState, ValidOnGammaGrid) {
  for (double g : gamma_grid()) {
    for (int i : {0, 1}) EXPECT_TRUE(density_violation(source_state(i, g).matrix()).empty());
  }
}

TEST(Ry, Values) {
  EXPECT_MATRIX_NEAR(ry(0.0), ComplexMatrix::identity(2), 0.0);
  EXPECT_MATRIX_NEAR(ry(kPi), (ComplexMatrix{{0, -1}, {1, 0}}), 1e-15);
  auto rng = make_rng();
  for (int t = 0; t < 100; ++t) {
    const double theta = uniform(rng, -10.0, 10.0);
    EXPECT_MATRIX_NEAR(ry(theta) * ry(-theta), ComplexMatrix::identity(2), 1e-12);
    EXPECT_MATRIX_NEAR(dagger(ry(theta)) * ry(theta), ComplexMatrix::identity(2), 1e-12);
  }
}

TEST(Rzy, Values) {
  const auto zy = kron(gates::pauli_z(), gates::pauli_y());
  EXPECT_MATRIX_NEAR(rzy(0.0), ComplexMatrix::identity(4), 0.0);
  EXPECT_MATRIX_NEAR(rzy(kPi), zy * Complex(0.0, -1.0), 1e-15);
  auto rng = make_rng();
  for (int t = 0; t < 100; ++t) {
    const double a = uniform(rng, -10.0, 10.0);
    const double b = uniform(rng, -10.0, 10.0);
    EXPECT_MATRIX_NEAR(dagger(rzy(a)) * rzy(a), ComplexMatrix::identity(4), 1e-12);
    EXPECT_MATRIX_NEAR(rzy(a) * rzy(b), rzy(a + b), 1e-12);
  }
}

TEST(Cnot, ActionOnBasisStates) {
  const auto c = cnot(0, 1, 2);
  // |10> -> |11>, |00> -> |00>
  EXPECT_EQ(c(3, 2), Complex(1.0));
  EXPECT_EQ(c(0, 0), Complex(1.0));
  EXPECT_EQ(c(1, 1), Complex(1.0));
  EXPECT_EQ(c(2, 3), Complex(1.0));
  EXPECT_MATRIX_NEAR(c * c, ComplexMatrix::identity(4), 0.0);
  EXPECT_MATRIX_NEAR(cnot(1, 0, 2), gates::swap() * c * gates::swap(), 0.0);
}

TEST(Cnot, EmbeddedInLargerRegister) {
  const auto c = cnot(0, 2, 3);
  // |100> -> |101>
  EXPECT_EQ(c(5, 4), Complex(1.0));
  EXPECT_EQ(c(2, 2), Complex(1.0));
  EXPECT_MATRIX_NEAR(c * c, ComplexMatrix::identity(8), 0.0);
}

TEST(Cnot, RejectsBadIndices) {
  EXPECT_THROW(cnot(0, 0, 2), std::invalid_argument);
  EXPECT_THROW(cnot(0, 2, 2), std::invalid_argument);
  EXPECT_THROW(cnot(-1, 1, 2), std::invalid_argument);
}

TEST(BornProbability, Values) {
  const auto phi_plus = DensityMatrix::from_ket(bell_state(BellKind::plus));
  const auto pi_a0 = kron(basis_projector(2, 0), ComplexMatrix::identity(2));
  EXPECT_NEAR(born_probability(phi_plus, pi_a0), 0.5, 1e-15);

  auto rng = make_rng();
  const DensityMatrix rho(random_density(4, rng));
  EXPECT_NEAR(born_probability(rho, ComplexMatrix::identity(4)), 1.0, 1e-12);

  double total = 0.0;
  for (std::size_t k = 0; k < 4; ++k) total += born_probability(rho, basis_projector(4, k));
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(BornProbability, RejectsNonProjector) {
  const auto rho = DensityMatrix::maximally_mixed(2);
  EXPECT_THROW(born_probability(rho, ComplexMatrix::identity(2) * Complex(0.5)), std::invalid_argument);
  EXPECT_THROW(born_probability(rho, ComplexMatrix::identity(4)), std::invalid_argument);
}
