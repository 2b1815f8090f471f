// Copyright 2026 The qclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Reversible 3-bit maps: truth tables, algebraic normal forms and CNOT
// synthesis over GF(2).
//
// Bit convention follows the register: x is wire 0 and the most significant
// bit of a basis index, so index = 4x + 2y + z. Monomial masks use the same
// weights (4 = x, 2 = y, 1 = z).

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qclone/gates.hpp"

namespace qclone {

inline constexpr int kSynthBits = 3;
inline constexpr int kSynthStates = 8;

/// Permutation (x,y,z) -> (p,q,r) of the eight basis indices.
class BasisBijection {
 public:
  BasisBijection();  // identity

  /// Throws InvalidArgument unless `images` is a permutation of 0..7.
  explicit BasisBijection(std::array<int, kSynthStates> images);
  static BasisBijection from_images(const std::vector<int>& images);

  int operator()(int input) const { return map_[static_cast<std::size_t>(input)]; }
  const std::array<int, kSynthStates>& images() const noexcept { return map_; }
  bool is_identity() const noexcept;

  friend bool operator==(const BasisBijection&, const BasisBijection&) = default;

 private:
  std::array<int, kSynthStates> map_;
};

/// All bijections sending each input label to an equal output label.
/// Position i in either list is basis index i. Tied labels yield every
/// consistent assignment. Throws LabelMismatch if the multisets differ.
std::vector<BasisBijection> extract_bijection(const std::vector<std::string>& input_labels,
                                              const std::vector<std::string>& output_labels);

/// XOR of monomials over x, y, z.
class AnfPolynomial {
 public:
  AnfPolynomial() = default;

  /// Bit m of `coeffs` set means monomial m is present (m = 0 is the constant).
  explicit AnfPolynomial(std::uint8_t coeffs) : coeffs_(coeffs) {}

  static AnfPolynomial from_truth_table(const std::array<int, kSynthStates>& table);

  bool has(int monomial) const noexcept { return (coeffs_ >> monomial) & 1U; }
  std::uint8_t coefficients() const noexcept { return coeffs_; }
  int degree() const noexcept;  // -1 for the zero polynomial
  bool is_affine() const noexcept { return degree() <= 1; }
  bool constant_term() const noexcept { return has(0); }

  /// Variables appearing linearly, as a 3-bit mask (4 = x, 2 = y, 1 = z).
  int linear_mask() const noexcept;

  int evaluate(int input) const noexcept;

  /// Terms joined by "^", e.g. "1^x^yz"; "0" when empty.
  std::string to_string() const;

  friend bool operator==(const AnfPolynomial&, const AnfPolynomial&) = default;

 private:
  std::uint8_t coeffs_ = 0;
};

/// ANF of output bit 0 (p, wire 0), 1 (q) or 2 (r).
AnfPolynomial anf_of(const BasisBijection& bij, int output_bit);

/// 3-qubit classical circuit realizing `bij`: CNOTs from GF(2) elimination,
/// with the affine constant folded into inverted targets where possible and
/// kept as sigma_1 gates otherwise. At most 9 CNOTs.
/// Throws NonAffine on a degree >= 2 output, Singular if the linear part is
/// not invertible.
Circuit synthesize_cnots(const BasisBijection& bij);

/// Action of a classical 3-qubit circuit on the basis.
BasisBijection bijection_of(const Circuit& circuit);

/// Parses output forms such as "x^y^~z, ~z, y" (a leading "~" complements a
/// variable; "0" and "1" are constants) into the bijection they describe.
/// Throws ParseError on bad syntax, Singular if the map is not reversible.
BasisBijection parse_affine_forms(std::string_view text);

/// Inverse of parse_affine_forms for affine bijections, using "~" on the
/// first variable of each output that carries a constant.
std::string format_affine_forms(const BasisBijection& bij);

}  // namespace qclone
