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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nalocc {

using Complex = std::complex<double>;

/// Dense square matrix over complex doubles, stored row-major.
///
/// Qubit operators follow the convention that qubit 0 is the most
/// significant bit of the computational-basis index.
class ComplexMatrix {
 public:
  ComplexMatrix() : ComplexMatrix(1) {}
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |v><v| for a column vector v.
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t dim() const { return dim_; }
  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// Matrix-vector product.
std::vector<Complex> apply(const ComplexMatrix& m, std::span<const Complex> v);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);

/// u m u^dagger.
ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol = 1e-12);

/// Qubit counts of a bipartite register; subsystem A holds the most
/// significant qubits.
struct QubitSplit {
  int a_qubits = 0;
  int b_qubits = 0;
};

enum class Subsystem { a, b };

/// Traces out `over`. Throws std::invalid_argument on a dimension mismatch.
ComplexMatrix partial_trace(const ComplexMatrix& m, QubitSplit split, Subsystem over);

/// Transpose on subsystem B: |i><j| (x) |k><l|  ->  |i><j| (x) |l><k|.
ComplexMatrix partial_transpose(const ComplexMatrix& m, QubitSplit split);

struct EigDecomposition {
  std::vector<double> eigenvalues;  // non-decreasing
  ComplexMatrix eigenvectors;       // columns
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Sweeps stop once the off-diagonal Frobenius norm drops below
/// 1e-14 * max(1, ||h||_F) or after 100 sweeps. Throws std::invalid_argument
/// if h deviates from Hermitian by more than 1e-12 (max-abs).
EigDecomposition hermitian_eig(const ComplexMatrix& h);

/// Sum of |eigenvalue| of a Hermitian matrix.
double trace_norm(const ComplexMatrix& h);

/// Relabels qubits: qubit q of the result is qubit perm[q] of the input.
/// Throws std::invalid_argument unless perm is a bijection on the qubits of m.
ComplexMatrix permute_qubits(const ComplexMatrix& m, std::span<const int> perm);

/// Number of qubits n with 2^n == dim, or -1 if dim is not a power of two.
int qubit_count(std::size_t dim);

}  // namespace nalocc
