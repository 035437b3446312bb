// Copyright 2026 The qgrad Authors
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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qgrad {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;

/// Largest register a PauliWord can describe (two 64-bit masks).
inline constexpr int kMaxPauliWidth = 64;
/// Largest register for which dense matrices are built.
inline constexpr int kMaxDenseQubits = 12;

/// Duplicate words whose merged coefficient falls below this are dropped.
inline constexpr double kDedupTolerance = 1e-12;
/// Eigenvalues closer than this are reported as one.
inline constexpr double kEigenTolerance = 1e-8;

/// A tensor product of single-qubit Paulis in symplectic form.
///
/// Qubit q carries X when bit q of `x_mask` is set and Z when bit q of
/// `z_mask` is set; both set means Y. In text form qubit 0 is the leftmost
/// character, so "ZI" is Z on qubit 0. Qubit q also maps to bit q of a
/// computational-basis index everywhere in this library.
class PauliWord {
 public:
  PauliWord() = default;
  PauliWord(int width, std::uint64_t x_mask, std::uint64_t z_mask);

  static PauliWord identity(int width);
  /// Single letter `letter` on qubit `qubit`, identity elsewhere.
  static PauliWord single(int width, int qubit, char letter);
  /// Parses e.g. "XIZY". Accepts I, X, Y, Z (upper case) and '_' for I.
  static PauliWord from_string(std::string_view text);

  int width() const { return width_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  std::uint64_t support() const { return x_ | z_; }
  int weight() const;
  bool is_identity() const { return (x_ | z_) == 0; }
  char letter(int qubit) const;
  std::string to_string() const;

  /// Same letters on a wider register; new qubits carry I.
  PauliWord widened(int width) const;
  /// This word with `letter` placed on qubit `qubit` (replacing what was
  /// there).
  PauliWord with_letter(int qubit, char letter) const;

  /// Phase picked up by basis state |b> under this word:
  /// P|b> = phase(b) |b ^ x_mask>.
  Complex basis_phase(std::uint64_t basis) const;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;

 private:
  int width_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Lexicographic order on the text form (I < X < Y < Z), qubit 0 first.
bool lex_less(const PauliWord& a, const PauliWord& b);

/// Power of i: the product phase is i^exponent.
struct PauliProduct {
  int i_power = 0;  // in [0, 4)
  PauliWord word;

  Complex phase() const;
};

/// a·b = phase · word.
PauliProduct multiply(const PauliWord& a, const PauliWord& b);

/// True iff [a, b] = 0.
bool commutes(const PauliWord& a, const PauliWord& b);

/// True iff on every qubit the letters agree or one of them is I.
bool qubitwise_commutes(const PauliWord& a, const PauliWord& b);

struct PauliTerm {
  double coefficient = 0.0;
  PauliWord word;
};

/// A real-weighted sum of Pauli words; always Hermitian.
///
/// Construction normalizes: duplicate words are merged into the position of
/// their first occurrence and terms with |coefficient| < kDedupTolerance are
/// dropped.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int width) : width_(width) {}
  PauliSum(int width, std::vector<PauliTerm> terms);

  /// Convenience for literals: {{1.0, "ZZ"}, {0.5, "XI"}}.
  static PauliSum from_strings(
      const std::vector<std::pair<double, std::string>>& terms);

  int width() const { return width_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const PauliTerm& operator[](std::size_t i) const { return terms_[i]; }

  /// Coefficient of the all-I word (0 when absent).
  double identity_coefficient() const;
  /// The sum with its identity term removed. Identity terms commute with
  /// every operator, so they never contribute gradient circuits.
  PauliSum without_identity() const;
  /// Number of non-identity terms.
  std::size_t effective_size() const;

  PauliSum widened(int width) const;
  PauliSum scaled(double factor) const;
  /// True iff every pair of terms commutes.
  bool all_commute() const;

  std::string to_string() const;

 private:
  int width_ = 0;
  std::vector<PauliTerm> terms_;
};

PauliSum operator+(const PauliSum& a, const PauliSum& b);

/// Pauli expansion of a Hermitian matrix: coefficient of P is Tr(P h) / 2^N.
/// Throws std::invalid_argument when `h` is not square with a power-of-two
/// dimension, is not Hermitian within 1e-10, or exceeds kMaxDenseQubits.
PauliSum decompose(const DenseMatrix& h);

DenseMatrix to_matrix(const PauliWord& word);
DenseMatrix to_matrix(const PauliSum& sum);

/// Distinct eigenvalues of the sum in ascending order, merged within
/// kEigenTolerance.
std::vector<double> eigen_spectrum(const PauliSum& sum);

}  // namespace qgrad
