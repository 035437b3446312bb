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

#include "qgrad/pauli.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qgrad {
namespace {

std::uint64_t width_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

void check_width(int width) {
  if (width < 0 || width > kMaxPauliWidth) {
    throw std::invalid_argument("Pauli width out of range: " +
                                std::to_string(width));
  }
}

void check_same_width(const PauliWord& a, const PauliWord& b) {
  if (a.width() != b.width()) {
    throw std::invalid_argument("Pauli width mismatch: " + a.to_string() +
                                " vs " + b.to_string());
  }
}

Complex i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

struct WordHash {
  std::size_t operator()(const PauliWord& w) const noexcept {
    return std::hash<std::uint64_t>{}(w.x_mask() * 0x9E3779B97F4A7C15ULL ^
                                      w.z_mask());
  }
};

void check_dense_width(int width) {
  if (width > kMaxDenseQubits) {
    throw std::invalid_argument("dense matrices are capped at " +
                                std::to_string(kMaxDenseQubits) + " qubits");
  }
}

// In-place Walsh-Hadamard transform: v[z] <- sum_c (-1)^{|c & z|} v[c].
void walsh_hadamard(std::vector<Complex>& v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += len << 1) {
      for (std::size_t k = i; k < i + len; ++k) {
        const Complex a = v[k];
        const Complex b = v[k + len];
        v[k] = a + b;
        v[k + len] = a - b;
      }
    }
  }
}

}  // namespace

PauliWord::PauliWord(int width, std::uint64_t x_mask, std::uint64_t z_mask)
    : width_(width), x_(x_mask), z_(z_mask) {
  check_width(width);
  if (((x_mask | z_mask) & ~width_mask(width)) != 0) {
    throw std::invalid_argument("Pauli mask has bits beyond width");
  }
}

PauliWord PauliWord::identity(int width) { return PauliWord(width, 0, 0); }

PauliWord PauliWord::single(int width, int qubit, char letter) {
  return identity(width).with_letter(qubit, letter);
}

PauliWord PauliWord::from_string(std::string_view text) {
  const int width = static_cast<int>(text.size());
  check_width(width);
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < width; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (text[q]) {
      case 'I': case '_': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument("invalid Pauli letter '" +
                                    std::string(1, text[q]) + "' in \"" +
                                    std::string(text) + "\"");
    }
  }
  return PauliWord(width, x, z);
}

int PauliWord::weight() const { return std::popcount(x_ | z_); }

char PauliWord::letter(int qubit) const {
  const bool xb = (x_ >> qubit) & 1;
  const bool zb = (z_ >> qubit) & 1;
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

std::string PauliWord::to_string() const {
  std::string s(width_, 'I');
  for (int q = 0; q < width_; ++q) s[q] = letter(q);
  return s;
}

PauliWord PauliWord::widened(int width) const {
  if (width < width_) {
    throw std::invalid_argument("cannot narrow a Pauli word");
  }
  return PauliWord(width, x_, z_);
}

PauliWord PauliWord::with_letter(int qubit, char letter) const {
  if (qubit < 0 || qubit >= width_) {
    throw std::invalid_argument("qubit index out of range");
  }
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  std::uint64_t x = x_ & ~bit;
  std::uint64_t z = z_ & ~bit;
  switch (letter) {
    case 'I': break;
    case 'X': x |= bit; break;
    case 'Y': x |= bit; z |= bit; break;
    case 'Z': z |= bit; break;
    default: throw std::invalid_argument("invalid Pauli letter");
  }
  return PauliWord(width_, x, z);
}

Complex PauliWord::basis_phase(std::uint64_t basis) const {
  // P = i^{|x&z|} X^x Z^z, and Z^z |b> = (-1)^{|b&z|} |b>.
  const int k = std::popcount(x_ & z_) + 2 * std::popcount(basis & z_);
  return i_pow(k);
}

bool lex_less(const PauliWord& a, const PauliWord& b) {
  return a.to_string() < b.to_string();
}

Complex PauliProduct::phase() const { return i_pow(i_power); }

PauliProduct multiply(const PauliWord& a, const PauliWord& b) {
  check_same_width(a, b);
  // a·b = i^{ya+yb} (-1)^{|za & xb|} X^{xa^xb} Z^{za^zb}, and the result word
  // absorbs i^{yc} of its own Y letters.
  const PauliWord word(a.width(), a.x_mask() ^ b.x_mask(),
                       a.z_mask() ^ b.z_mask());
  const int ya = std::popcount(a.x_mask() & a.z_mask());
  const int yb = std::popcount(b.x_mask() & b.z_mask());
  const int yc = std::popcount(word.x_mask() & word.z_mask());
  const int sign = 2 * std::popcount(a.z_mask() & b.x_mask());
  const int k = ((ya + yb - yc + sign) % 4 + 4) % 4;
  return PauliProduct{k, word};
}

bool commutes(const PauliWord& a, const PauliWord& b) {
  check_same_width(a, b);
  const std::uint64_t anti =
      (a.x_mask() & b.z_mask()) ^ (a.z_mask() & b.x_mask());
  return std::popcount(anti) % 2 == 0;
}

bool qubitwise_commutes(const PauliWord& a, const PauliWord& b) {
  check_same_width(a, b);
  const std::uint64_t both = a.support() & b.support();
  return ((a.x_mask() ^ b.x_mask()) & both) == 0 &&
         ((a.z_mask() ^ b.z_mask()) & both) == 0;
}

PauliSum::PauliSum(int width, std::vector<PauliTerm> terms) : width_(width) {
  check_width(width);
  std::unordered_map<PauliWord, std::size_t, WordHash> slot;
  std::vector<PauliTerm> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (!std::isfinite(t.coefficient)) {
      throw std::invalid_argument("Pauli coefficient is not finite");
    }
    if (t.word.width() != width) {
      throw std::invalid_argument("Pauli term width " +
                                  std::to_string(t.word.width()) +
                                  " does not match sum width " +
                                  std::to_string(width));
    }
    auto [it, inserted] = slot.try_emplace(t.word, merged.size());
    if (inserted) {
      merged.push_back(t);
    } else {
      merged[it->second].coefficient += t.coefficient;
    }
  }
  for (auto& t : merged) {
    if (std::abs(t.coefficient) >= kDedupTolerance) terms_.push_back(t);
  }
}

PauliSum PauliSum::from_strings(
    const std::vector<std::pair<double, std::string>>& terms) {
  if (terms.empty()) throw std::invalid_argument("empty term list");
  std::vector<PauliTerm> out;
  out.reserve(terms.size());
  for (const auto& [c, s] : terms) {
    out.push_back({c, PauliWord::from_string(s)});
  }
  const int width = out.front().word.width();
  return PauliSum(width, std::move(out));
}

double PauliSum::identity_coefficient() const {
  for (const auto& t : terms_) {
    if (t.word.is_identity()) return t.coefficient;
  }
  return 0.0;
}

PauliSum PauliSum::without_identity() const {
  std::vector<PauliTerm> out;
  for (const auto& t : terms_) {
    if (!t.word.is_identity()) out.push_back(t);
  }
  return PauliSum(width_, std::move(out));
}

std::size_t PauliSum::effective_size() const {
  return static_cast<std::size_t>(
      std::count_if(terms_.begin(), terms_.end(),
                    [](const PauliTerm& t) { return !t.word.is_identity(); }));
}

PauliSum PauliSum::widened(int width) const {
  std::vector<PauliTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.coefficient, t.word.widened(width)});
  return PauliSum(width, std::move(out));
}

PauliSum PauliSum::scaled(double factor) const {
  std::vector<PauliTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.coefficient * factor, t.word});
  return PauliSum(width_, std::move(out));
}

bool PauliSum::all_commute() const {
  for (std::size_t a = 0; a < terms_.size(); ++a) {
    for (std::size_t b = a + 1; b < terms_.size(); ++b) {
      if (!commutes(terms_[a].word, terms_[b].word)) return false;
    }
  }
  return true;
}

std::string PauliSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << terms_[i].coefficient << "*" << terms_[i].word.to_string();
  }
  return os.str();
}

PauliSum operator+(const PauliSum& a, const PauliSum& b) {
  if (a.width() != b.width()) {
    throw std::invalid_argument("PauliSum width mismatch");
  }
  std::vector<PauliTerm> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return PauliSum(a.width(), std::move(terms));
}

PauliSum decompose(const DenseMatrix& h) {
  const auto dim = static_cast<std::uint64_t>(h.rows());
  if (h.rows() != h.cols() || dim == 0 || !std::has_single_bit(dim)) {
    throw std::invalid_argument(
        "decompose: matrix must be square with a power-of-two dimension");
  }
  const int width = std::countr_zero(dim);
  check_dense_width(width);
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("decompose: matrix is not Hermitian");
  }
  // Tr(P h) = i^{|x&z|} sum_c (-1)^{|c&z|} h(c, c^x); the sum over c for
  // all z at once is a Walsh-Hadamard transform.
  std::vector<PauliTerm> terms;
  std::vector<Complex> row(dim);
  const double norm = 1.0 / static_cast<double>(dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t c = 0; c < dim; ++c) row[c] = h(c, c ^ x);
    walsh_hadamard(row);
    for (std::uint64_t z = 0; z < dim; ++z) {
      const Complex tr = i_pow(std::popcount(x & z)) * row[z];
      const double coeff = tr.real() * norm;
      if (std::abs(coeff) >= kDedupTolerance) {
        terms.push_back({coeff, PauliWord(width, x, z)});
      }
    }
  }
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return lex_less(a.word, b.word);
  });
  return PauliSum(width, std::move(terms));
}

DenseMatrix to_matrix(const PauliWord& word) {
  check_dense_width(word.width());
  const std::uint64_t dim = std::uint64_t{1} << word.width();
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    m(b ^ word.x_mask(), b) = word.basis_phase(b);
  }
  return m;
}

DenseMatrix to_matrix(const PauliSum& sum) {
  check_dense_width(sum.width());
  const std::uint64_t dim = std::uint64_t{1} << sum.width();
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (const auto& t : sum.terms()) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      m(b ^ t.word.x_mask(), b) += t.coefficient * t.word.basis_phase(b);
    }
  }
  return m;
}

std::vector<double> eigen_spectrum(const PauliSum& sum) {
  std::vector<double> values;
  const PauliSum rest = sum.without_identity();
  const double shift = sum.identity_coefficient();
  if (rest.empty()) {
    values = {shift};
  } else if (rest.size() == 1) {
    const double c = std::abs(rest[0].coefficient);
    values = {shift - c, shift + c};
  } else {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(
        to_matrix(sum), Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    values.assign(ev.data(), ev.data() + ev.size());
    std::sort(values.begin(), values.end());
  }
  std::vector<double> distinct;
  for (double v : values) {
    if (distinct.empty() || v - distinct.back() > kEigenTolerance) {
      distinct.push_back(v);
    }
  }
  return distinct;
}

}  // namespace qgrad
