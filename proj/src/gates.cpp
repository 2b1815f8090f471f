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

#include "qclone/gates.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qclone {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_wire_index(int wire, int n_qubits) {
  if (wire < 0 || wire >= n_qubits) {
    throw Error(ErrorCode::IndexOutOfRange, "wire " + std::to_string(wire) + " not in [0, " +
                                                std::to_string(n_qubits) + ")");
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw Error(ErrorCode::CapacityExceeded, "circuit qubit count out of range");
  }
}

Circuit::Circuit(int n_qubits, std::vector<GateOp> ops) : Circuit(n_qubits) {
  for (auto& op : ops) add(std::move(op));
}

void Circuit::validate(const GateOp& op) const {
  std::visit(Overloaded{
                 [&](const RotationOp& r) {
                   check_wire_index(r.wire, n_qubits_);
                   if (!std::isfinite(r.theta) || !std::isfinite(r.phi)) {
                     throw Error(ErrorCode::InvalidState, "rotation angles must be finite");
                   }
                 },
                 [&](const CnotOp& c) {
                   check_wire_index(c.control, n_qubits_);
                   check_wire_index(c.target, n_qubits_);
                   if (c.control == c.target) {
                     throw Error(ErrorCode::SameWire, "CNOT control equals target");
                   }
                 },
                 [&](const PauliOp& p) {
                   check_wire_index(p.wire, n_qubits_);
                   if (p.index < 0 || p.index > 3) {
                     throw Error(ErrorCode::IndexOutOfRange, "Pauli index must be 0..3");
                   }
                 },
             },
             op);
}

Circuit& Circuit::add(GateOp op) {
  validate(op);
  ops_.push_back(std::move(op));
  return *this;
}

Circuit& Circuit::cnot(int control, int target, bool inverted) {
  return add(CnotOp{control, target, inverted});
}

Circuit& Circuit::rotation(int wire, double theta, double phi) {
  return add(RotationOp{wire, theta, phi});
}

Circuit& Circuit::pauli(int index, int wire) { return add(PauliOp{index, wire}); }

Circuit Circuit::then(const Circuit& next) const {
  if (next.n_qubits_ != n_qubits_) {
    throw Error(ErrorCode::DimensionMismatch, "cannot chain circuits of different width");
  }
  Circuit out = *this;
  out.ops_.insert(out.ops_.end(), next.ops_.begin(), next.ops_.end());
  return out;
}

bool Circuit::is_classical() const noexcept {
  return std::all_of(ops_.begin(), ops_.end(), [](const GateOp& op) {
    if (std::holds_alternative<CnotOp>(op)) return true;
    if (const auto* p = std::get_if<PauliOp>(&op)) return p->index == 0 || p->index == 1;
    return false;
  });
}

int Circuit::cnot_count() const noexcept {
  return static_cast<int>(std::count_if(ops_.begin(), ops_.end(), [](const GateOp& op) {
    return std::holds_alternative<CnotOp>(op);
  }));
}

ComplexMatrix rotation_matrix(double theta, double phi) {
  const Complex I(0.0, 1.0);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  ComplexMatrix r(2, 2);
  r(0, 0) = c;
  r(0, 1) = -I * std::exp(-I * phi) * s;
  r(1, 0) = -I * std::exp(I * phi) * s;
  r(1, 1) = c;
  return r;
}

PureState apply_rotation(const PureState& psi, const RotationOp& op) {
  psi.check_wire(op.wire);
  const ComplexMatrix r = rotation_matrix(op.theta, op.phi);
  const std::size_t mask = wire_mask(op.wire, psi.n_qubits());
  std::vector<Complex> out(psi.dim());
  for (std::size_t k = 0; k < psi.dim(); ++k) {
    if (k & mask) continue;
    const Complex a0 = psi[k];
    const Complex a1 = psi[k | mask];
    out[k] = r(0, 0) * a0 + r(0, 1) * a1;
    out[k | mask] = r(1, 0) * a0 + r(1, 1) * a1;
  }
  return PureState::adopt(std::move(out));
}

PureState apply_cnot(const PureState& psi, const CnotOp& op) {
  psi.check_wire(op.control);
  psi.check_wire(op.target);
  if (op.control == op.target) throw Error(ErrorCode::SameWire, "CNOT control equals target");
  const int n = psi.n_qubits();
  const std::size_t tmask = wire_mask(op.target, n);
  std::vector<Complex> out(psi.dim());
  for (std::size_t k = 0; k < psi.dim(); ++k) {
    const int flip = wire_bit(k, op.control, n) ^ (op.inverted ? 1 : 0);
    out[flip ? (k ^ tmask) : k] = psi[k];
  }
  return PureState::adopt(std::move(out));
}

PureState apply(const PureState& psi, const GateOp& op) {
  return std::visit(Overloaded{
                        [&](const RotationOp& r) { return apply_rotation(psi, r); },
                        [&](const CnotOp& c) { return apply_cnot(psi, c); },
                        [&](const PauliOp& p) { return pauli_apply(p.index, psi, p.wire); },
                    },
                    op);
}

PureState run(const Circuit& circuit, const PureState& psi) {
  if (circuit.n_qubits() != psi.n_qubits()) {
    throw Error(ErrorCode::DimensionMismatch, "circuit and state widths differ");
  }
  PureState state = psi;
  for (const auto& op : circuit.ops()) state = qclone::apply(state, op);
  return state;
}

ComplexMatrix circuit_unitary(const Circuit& circuit) {
  const int n = circuit.n_qubits();
  if (n > kMaxUnitaryQubits) {
    throw Error(ErrorCode::CapacityExceeded, "circuit_unitary supports at most 12 qubits");
  }
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix u(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const PureState out = run(circuit, PureState::basis(n, col));
    for (std::size_t row = 0; row < dim; ++row) u(row, col) = out[row];
  }
  return u;
}

std::vector<std::size_t> basis_permutation(const Circuit& circuit) {
  if (!circuit.is_classical()) {
    throw Error(ErrorCode::InvalidState, "circuit is not a basis permutation");
  }
  const int n = circuit.n_qubits();
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::size_t> image(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    std::size_t v = k;
    for (const auto& op : circuit.ops()) {
      if (const auto* c = std::get_if<CnotOp>(&op)) {
        if (wire_bit(v, c->control, n) ^ (c->inverted ? 1 : 0)) v ^= wire_mask(c->target, n);
      } else if (const auto* p = std::get_if<PauliOp>(&op); p && p->index == 1) {
        v ^= wire_mask(p->wire, n);
      }
    }
    image[k] = v;
  }
  return image;
}

std::string format_circuit(const Circuit& circuit) {
  std::ostringstream out;
  bool first = true;
  for (const auto& op : circuit.ops()) {
    if (!first) out << ' ';
    first = false;
    std::visit(Overloaded{
                   [&](const RotationOp& r) {
                     out << "R(" << r.wire << ',' << format_number(r.theta);
                     if (r.phi != kEquatorialPhi) out << ',' << format_number(r.phi);
                     out << ')';
                   },
                   [&](const CnotOp& c) {
                     out << (c.inverted ? "P!(" : "P(") << c.control << ',' << c.target << ')';
                   },
                   [&](const PauliOp& p) {
                     static constexpr char kNames[] = {'I', 'X', 'Y', 'Z'};
                     out << kNames[p.index] << '(' << p.wire << ')';
                   },
               },
               op);
  }
  return out.str();
}

namespace {

std::vector<std::string_view> split_args(std::string_view body) {
  std::vector<std::string_view> args;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || body[i] == ',') {
      auto a = body.substr(start, i - start);
      while (!a.empty() && std::isspace(static_cast<unsigned char>(a.front()))) a.remove_prefix(1);
      while (!a.empty() && std::isspace(static_cast<unsigned char>(a.back()))) a.remove_suffix(1);
      args.push_back(a);
      start = i + 1;
    }
  }
  return args;
}

int parse_int(std::string_view s, std::string_view token) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "bad integer in '" + std::string(token) + "'");
  }
  return v;
}

double parse_double(std::string_view s, std::string_view token) {
  const std::string copy(s);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw Error(ErrorCode::ParseError, "bad number in '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace

Circuit parse_circuit(std::string_view text, int n_qubits) {
  Circuit circuit(n_qubits);
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    const std::size_t open = text.find('(', pos);
    const std::size_t close = text.find(')', pos);
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
      throw Error(ErrorCode::ParseError, "unterminated gate near '" +
                                             std::string(text.substr(pos)) + "'");
    }
    const std::string_view name = text.substr(pos, open - pos);
    const std::string_view token = text.substr(pos, close + 1 - pos);
    const auto args = split_args(text.substr(open + 1, close - open - 1));
    if (name == "P" || name == "P!") {
      if (args.size() != 2) throw Error(ErrorCode::ParseError, "CNOT takes (control,target)");
      circuit.cnot(parse_int(args[0], token), parse_int(args[1], token), name == "P!");
    } else if (name == "R") {
      if (args.size() != 2 && args.size() != 3) {
        throw Error(ErrorCode::ParseError, "rotation takes (wire,theta[,phi])");
      }
      const double phi = args.size() == 3 ? parse_double(args[2], token) : kEquatorialPhi;
      circuit.rotation(parse_int(args[0], token), parse_double(args[1], token), phi);
    } else if (name == "I" || name == "X" || name == "Y" || name == "Z") {
      if (args.size() != 1) throw Error(ErrorCode::ParseError, "Pauli gate takes (wire)");
      const int index = name == "I" ? 0 : name == "X" ? 1 : name == "Y" ? 2 : 3;
      circuit.pauli(index, parse_int(args[0], token));
    } else {
      throw Error(ErrorCode::ParseError, "unknown gate '" + std::string(name) + "'");
    }
    pos = close + 1;
  }
  return circuit;
}

Circuit parse_operator_product(std::string_view text, int n_qubits) {
  // Collect tokens left-to-right, then apply them in reverse.
  std::vector<std::vector<GateOp>> tokens;
  std::size_t pos = 0;
  auto read_wire = [&](bool& bar) {
    bar = false;
    if (pos < text.size() && text[pos] == '~') {
      bar = true;
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw Error(ErrorCode::ParseError, "expected wire digit in '" + std::string(text) + "'");
    }
    return text[pos++] - '0';
  };
  while (pos < text.size()) {
    const char ch = text[pos];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++pos;
      continue;
    }
    if (ch == 'X') {
      ++pos;
      bool bar = false;
      const int w = read_wire(bar);
      if (bar) throw Error(ErrorCode::ParseError, "X takes a plain wire");
      tokens.push_back({PauliOp{1, w}});
      continue;
    }
    if (ch != 'P') {
      throw Error(ErrorCode::ParseError, "unexpected '" + std::string(1, ch) + "' in '" +
                                             std::string(text) + "'");
    }
    ++pos;
    bool control_bar = false;
    bool target_bar = false;
    const int c = read_wire(control_bar);
    const int t = read_wire(target_bar);
    std::vector<GateOp> seq;
    if (control_bar) seq.emplace_back(PauliOp{1, c});
    seq.emplace_back(CnotOp{c, t, target_bar});
    tokens.push_back(std::move(seq));
  }
  Circuit circuit(n_qubits);
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    for (const auto& op : *it) circuit.add(op);
  }
  return circuit;
}

std::string format_operator_product(const Circuit& circuit) {
  if (!circuit.is_classical()) {
    throw Error(ErrorCode::InvalidState, "operator-product notation is for CNOT/X circuits");
  }
  const auto& ops = circuit.ops();
  // A sigma_1 moves forward to the next CNOT on its wire (nothing in between
  // touches that wire, so it commutes) and becomes a bar on that index.
  std::vector<bool> control_bar(ops.size(), false);
  std::vector<bool> target_bar(ops.size(), false);
  std::vector<bool> folded(ops.size(), false);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto* p = std::get_if<PauliOp>(&ops[i]);
    if (p == nullptr || p->index == 0) continue;
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      if (const auto* c = std::get_if<CnotOp>(&ops[j])) {
        if (c->control == p->wire && !control_bar[j]) {
          control_bar[j] = true;
          folded[i] = true;
        } else if (c->target == p->wire && !c->inverted && !target_bar[j]) {
          target_bar[j] = true;
          folded[i] = true;
        }
        if (c->control == p->wire || c->target == p->wire) break;
      } else if (const auto* q = std::get_if<PauliOp>(&ops[j]); q && q->wire == p->wire) {
        break;
      }
    }
  }
  std::vector<std::string> tokens;  // application order
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (const auto* p = std::get_if<PauliOp>(&ops[i])) {
      if (p->index != 0 && !folded[i]) tokens.push_back("X" + std::to_string(p->wire));
      continue;
    }
    const auto& c = std::get<CnotOp>(ops[i]);
    std::string tok = "P";
    if (control_bar[i]) tok += '~';
    tok += std::to_string(c.control);
    if (c.inverted || target_bar[i]) tok += '~';
    tok += std::to_string(c.target);
    tokens.push_back(std::move(tok));
  }
  std::string out;
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    if (!out.empty()) out += ' ';
    out += *it;
  }
  return out;
}

}  // namespace qclone
