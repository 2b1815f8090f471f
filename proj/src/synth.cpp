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

#include "qclone/synth.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <map>

#include "qclone/errors.hpp"

namespace qclone {

namespace {

constexpr int var_weight(int var) { return 1 << (kSynthBits - 1 - var); }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

BasisBijection::BasisBijection() {
  for (int i = 0; i < kSynthStates; ++i) map_[static_cast<std::size_t>(i)] = i;
}

BasisBijection::BasisBijection(std::array<int, kSynthStates> images) : map_(images) {
  std::array<bool, kSynthStates> seen{};
  for (int v : map_) {
    if (v < 0 || v >= kSynthStates || seen[static_cast<std::size_t>(v)]) {
      throw Error(ErrorCode::InvalidArgument, "images must be a permutation of 0..7");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

BasisBijection BasisBijection::from_images(const std::vector<int>& images) {
  if (images.size() != kSynthStates) {
    throw Error(ErrorCode::InvalidArgument,
                "expected 8 images, got " + std::to_string(images.size()));
  }
  std::array<int, kSynthStates> a{};
  std::copy(images.begin(), images.end(), a.begin());
  return BasisBijection(a);
}

bool BasisBijection::is_identity() const noexcept {
  for (int i = 0; i < kSynthStates; ++i) {
    if (map_[static_cast<std::size_t>(i)] != i) return false;
  }
  return true;
}

std::vector<BasisBijection> extract_bijection(const std::vector<std::string>& input_labels,
                                              const std::vector<std::string>& output_labels) {
  if (input_labels.size() != kSynthStates || output_labels.size() != kSynthStates) {
    throw Error(ErrorCode::InvalidArgument, "both specifications need 8 labels");
  }
  // Groups in order of first appearance among the inputs.
  std::vector<std::string> order;
  std::map<std::string, std::vector<int>> in_pos, out_pos;
  for (int i = 0; i < kSynthStates; ++i) {
    const auto& l = input_labels[static_cast<std::size_t>(i)];
    if (!in_pos.count(l)) order.push_back(l);
    in_pos[l].push_back(i);
    out_pos[output_labels[static_cast<std::size_t>(i)]].push_back(i);
  }
  for (const auto& [label, pos] : out_pos) {
    auto it = in_pos.find(label);
    if (it == in_pos.end() || it->second.size() != pos.size()) {
      throw Error(ErrorCode::LabelMismatch, "label '" + label + "' occurs " +
                                                std::to_string(pos.size()) +
                                                " times in the output but not as often in the input");
    }
  }
  if (in_pos.size() != out_pos.size()) {
    throw Error(ErrorCode::LabelMismatch, "label multisets differ");
  }

  std::vector<BasisBijection> result;
  std::array<int, kSynthStates> images{};
  std::function<void(std::size_t)> assign = [&](std::size_t g) {
    if (g == order.size()) {
      result.emplace_back(images);
      return;
    }
    const auto& ins = in_pos[order[g]];
    std::vector<int> outs = out_pos[order[g]];
    do {
      for (std::size_t k = 0; k < ins.size(); ++k) {
        images[static_cast<std::size_t>(ins[k])] = outs[k];
      }
      assign(g + 1);
    } while (std::next_permutation(outs.begin(), outs.end()));
  };
  assign(0);
  return result;
}

AnfPolynomial AnfPolynomial::from_truth_table(const std::array<int, kSynthStates>& table) {
  std::array<int, kSynthStates> a = table;
  for (int bit = 1; bit < kSynthStates; bit <<= 1) {
    for (int m = 0; m < kSynthStates; ++m) {
      if (m & bit) a[static_cast<std::size_t>(m)] ^= a[static_cast<std::size_t>(m ^ bit)];
    }
  }
  std::uint8_t coeffs = 0;
  for (int m = 0; m < kSynthStates; ++m) {
    if (a[static_cast<std::size_t>(m)] & 1) coeffs |= static_cast<std::uint8_t>(1U << m);
  }
  return AnfPolynomial(coeffs);
}

int AnfPolynomial::degree() const noexcept {
  int d = -1;
  for (int m = 0; m < kSynthStates; ++m) {
    if (has(m)) d = std::max(d, std::popcount(static_cast<unsigned>(m)));
  }
  return d;
}

int AnfPolynomial::linear_mask() const noexcept {
  int mask = 0;
  for (int var = 0; var < kSynthBits; ++var) {
    if (has(var_weight(var))) mask |= var_weight(var);
  }
  return mask;
}

int AnfPolynomial::evaluate(int input) const noexcept {
  int v = 0;
  for (int m = 0; m < kSynthStates; ++m) {
    if (has(m) && (input & m) == m) v ^= 1;
  }
  return v;
}

std::string AnfPolynomial::to_string() const {
  std::vector<int> terms;
  for (int m = 0; m < kSynthStates; ++m) {
    if (has(m)) terms.push_back(m);
  }
  if (terms.empty()) return "0";
  // Degree first, then x before y before z.
  std::sort(terms.begin(), terms.end(), [](int a, int b) {
    const int da = std::popcount(static_cast<unsigned>(a));
    const int db = std::popcount(static_cast<unsigned>(b));
    return da != db ? da < db : a > b;
  });
  std::string out;
  for (int m : terms) {
    if (!out.empty()) out += '^';
    if (m == 0) {
      out += '1';
      continue;
    }
    for (int var = 0; var < kSynthBits; ++var) {
      if (m & var_weight(var)) out += static_cast<char>('x' + var);
    }
  }
  return out;
}

AnfPolynomial anf_of(const BasisBijection& bij, int output_bit) {
  if (output_bit < 0 || output_bit >= kSynthBits) {
    throw Error(ErrorCode::IndexOutOfRange, "output bit must be 0, 1 or 2");
  }
  std::array<int, kSynthStates> table{};
  for (int i = 0; i < kSynthStates; ++i) {
    table[static_cast<std::size_t>(i)] = (bij(i) >> (kSynthBits - 1 - output_bit)) & 1;
  }
  return AnfPolynomial::from_truth_table(table);
}

Circuit synthesize_cnots(const BasisBijection& bij) {
  std::array<int, kSynthBits> rows{};
  int constant = 0;
  for (int k = 0; k < kSynthBits; ++k) {
    const AnfPolynomial p = anf_of(bij, k);
    if (!p.is_affine()) {
      throw Error(ErrorCode::NonAffine, "output " + std::to_string(k) + " is " + p.to_string() +
                                            ", which needs a Toffoli gate");
    }
    rows[static_cast<std::size_t>(k)] = p.linear_mask();
    if (p.constant_term()) constant |= var_weight(k);
  }

  // Reduce the linear part to the identity with row operations; each
  // "row t ^= row c" is CNOT(c -> t).
  struct RowOp {
    int control;
    int target;
  };
  std::vector<RowOp> elim;
  auto row_op = [&](int c, int t) {
    rows[static_cast<std::size_t>(t)] ^= rows[static_cast<std::size_t>(c)];
    elim.push_back({c, t});
  };
  for (int col = 0; col < kSynthBits; ++col) {
    const int w = var_weight(col);
    if (!(rows[static_cast<std::size_t>(col)] & w)) {
      int src = -1;
      for (int r = col + 1; r < kSynthBits && src < 0; ++r) {
        if (rows[static_cast<std::size_t>(r)] & w) src = r;
      }
      if (src < 0) throw Error(ErrorCode::Singular, "linear part is not invertible");
      row_op(src, col);
    }
    for (int r = 0; r < kSynthBits; ++r) {
      if (r != col && (rows[static_cast<std::size_t>(r)] & w)) row_op(col, r);
    }
  }

  // f(v) = A v ^ c = A (v ^ d) with d = A^-1 c, so d becomes input flips.
  int d = constant;
  for (const auto& op : elim) {
    if (d & var_weight(op.control)) d ^= var_weight(op.target);
  }

  std::vector<CnotOp> cnots;
  for (auto it = elim.rbegin(); it != elim.rend(); ++it) {
    cnots.push_back({it->control, it->target, false});
  }

  Circuit out(kSynthBits);
  std::array<bool, kSynthBits> pending{};
  for (int w = 0; w < kSynthBits; ++w) {
    pending[static_cast<std::size_t>(w)] = (d & var_weight(w)) != 0;
  }
  for (int w = 0; w < kSynthBits; ++w) {
    const bool touched = std::any_of(cnots.begin(), cnots.end(), [&](const CnotOp& c) {
      return c.control == w || c.target == w;
    });
    if (pending[static_cast<std::size_t>(w)] && !touched) {
      out.pauli(1, w);
      pending[static_cast<std::size_t>(w)] = false;
    }
  }
  for (CnotOp c : cnots) {
    if (pending[static_cast<std::size_t>(c.control)]) {
      out.pauli(1, c.control);
      pending[static_cast<std::size_t>(c.control)] = false;
    }
    if (pending[static_cast<std::size_t>(c.target)]) {
      c.inverted = true;
      pending[static_cast<std::size_t>(c.target)] = false;
    }
    out.add(c);
  }
  return out;
}

BasisBijection bijection_of(const Circuit& circuit) {
  if (circuit.n_qubits() != kSynthBits) {
    throw Error(ErrorCode::DimensionMismatch, "expected a 3-qubit circuit");
  }
  const auto perm = basis_permutation(circuit);
  std::array<int, kSynthStates> images{};
  for (int i = 0; i < kSynthStates; ++i) {
    images[static_cast<std::size_t>(i)] = static_cast<int>(perm[static_cast<std::size_t>(i)]);
  }
  return BasisBijection(images);
}

BasisBijection parse_affine_forms(std::string_view text) {
  const auto outputs = split(text, ',');
  if (outputs.size() != kSynthBits) {
    throw Error(ErrorCode::ParseError, "expected three comma-separated outputs in '" +
                                           std::string(text) + "'");
  }
  std::array<int, kSynthBits> masks{};
  std::array<int, kSynthBits> consts{};
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    for (const auto& term : split(outputs[k], '^')) {
      std::size_t i = 0;
      int flips = 0;
      while (i < term.size() && term[i] == '~') {
        ++flips;
        ++i;
      }
      const std::string body = trim(std::string_view(term).substr(i));
      if (body == "x" || body == "y" || body == "z") {
        masks[k] ^= var_weight(body[0] - 'x');
      } else if (body == "0" || body == "1") {
        consts[k] ^= body[0] - '0';
      } else {
        throw Error(ErrorCode::ParseError, "bad term '" + term + "' in '" + std::string(text) + "'");
      }
      consts[k] ^= flips & 1;
    }
  }
  std::array<int, kSynthStates> images{};
  std::array<bool, kSynthStates> seen{};
  for (int v = 0; v < kSynthStates; ++v) {
    int img = 0;
    for (int k = 0; k < kSynthBits; ++k) {
      const int bit = (std::popcount(static_cast<unsigned>(v & masks[static_cast<std::size_t>(k)])) +
                       consts[static_cast<std::size_t>(k)]) & 1;
      img |= bit << (kSynthBits - 1 - k);
    }
    if (seen[static_cast<std::size_t>(img)]) {
      throw Error(ErrorCode::Singular, "'" + std::string(text) + "' is not reversible");
    }
    seen[static_cast<std::size_t>(img)] = true;
    images[static_cast<std::size_t>(v)] = img;
  }
  return BasisBijection(images);
}

std::string format_affine_forms(const BasisBijection& bij) {
  std::string out;
  for (int k = 0; k < kSynthBits; ++k) {
    const AnfPolynomial p = anf_of(bij, k);
    if (!p.is_affine()) throw Error(ErrorCode::NonAffine, "output is not affine");
    std::string form;
    bool bar = p.constant_term();
    for (int var = 0; var < kSynthBits; ++var) {
      if (!(p.linear_mask() & var_weight(var))) continue;
      if (!form.empty()) form += '^';
      if (bar) {
        form += '~';
        bar = false;
      }
      form += static_cast<char>('x' + var);
    }
    if (form.empty()) form = p.constant_term() ? "1" : "0";
    if (k > 0) out += ", ";
    out += form;
  }
  return out;
}

}  // namespace qclone
