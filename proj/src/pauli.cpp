// Copyright 2026 The nnest Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nnest/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "nnest/errors.hpp"
#include "text_util.hpp"

namespace nnest {

namespace {

PauliOp op_from_char(char c) {
  switch (c) {
    case 'I': return PauliOp::I;
    case 'X': return PauliOp::X;
    case 'Y': return PauliOp::Y;
    case 'Z': return PauliOp::Z;
    default: throw ParseError("invalid Pauli letter");
  }
}

char op_char(PauliOp op) { return "IXYZ"[static_cast<int>(op)]; }

void check_length(int n, const Bits &sigma) {
  if (static_cast<int>(sigma.size()) != n)
    throw DimensionError("bitstring length " + std::to_string(sigma.size()) +
                         " does not match " + std::to_string(n) + " qubits");
}

}  // namespace

PauliString::PauliString(std::vector<PauliOp> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw DimensionError("Pauli string needs at least one qubit");
  for (int i = 0; i < n_qubits(); ++i)
    if (ops_[i] != PauliOp::I) support_.push_back(i);
}

PauliString PauliString::parse(std::string_view word) {
  std::vector<PauliOp> ops;
  ops.reserve(word.size());
  for (char c : word) ops.push_back(op_from_char(c));
  return PauliString(std::move(ops));
}

BasisAssignment PauliString::measurement_basis() const {
  BasisAssignment basis(ops_.size(), Axis::Z);
  for (int i : support_) {
    if (ops_[i] == PauliOp::X) basis[i] = Axis::X;
    else if (ops_[i] == PauliOp::Y) basis[i] = Axis::Y;
  }
  return basis;
}

std::string PauliString::str() const {
  std::string s;
  for (auto op : ops_) s.push_back(op_char(op));
  return s;
}

PauliAction apply_string(const PauliString &p, const Bits &sigma) {
  check_length(p.n_qubits(), sigma);
  PauliAction out{sigma, {1.0, 0.0}};
  // Z|s> = (-1)^s |s>,  X|s> = |1-s>,  Y|s> = i(-1)^s |1-s>
  for (int i : p.support()) {
    const bool one = sigma[i] != 0;
    switch (p[i]) {
      case PauliOp::Z:
        if (one) out.phase = -out.phase;
        break;
      case PauliOp::X:
        out.sigma[i] ^= 1u;
        break;
      case PauliOp::Y:
        out.sigma[i] ^= 1u;
        out.phase *= one ? std::complex<double>(0, -1) : std::complex<double>(0, 1);
        break;
      case PauliOp::I:
        break;
    }
  }
  return out;
}

double outcome_eigenvalue(const PauliString &p, const Bits &bits) {
  check_length(p.n_qubits(), bits);
  int parity = 0;
  for (int i : p.support()) parity ^= bits[i] & 1;
  return parity ? -1.0 : 1.0;
}

Observable::Observable(int n_qubits, std::vector<PauliTerm> terms) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw DimensionError("observable needs at least one qubit");
  if (terms.empty()) throw DimensionError("observable needs at least one term");
  for (auto &t : terms) {
    if (t.string.n_qubits() != n_qubits)
      throw DimensionError("Pauli string " + t.string.str() + " has wrong length");
    if (!std::isfinite(t.coefficient))
      throw DimensionError("non-finite coefficient for " + t.string.str());
    bool merged = false;
    for (auto &existing : terms_) {
      if (existing.string == t.string) {
        existing.coefficient += t.coefficient;
        merged = true;
        break;
      }
    }
    if (!merged) terms_.push_back(std::move(t));
  }

  for (const auto &t : terms_) {
    std::vector<int> flips;
    RowTerm row{{t.coefficient, 0.0}, {}};
    for (int i : t.string.support()) {
      switch (t.string[i]) {
        case PauliOp::X: flips.push_back(i); break;
        case PauliOp::Y:
          flips.push_back(i);
          row.sign_sites.push_back(i);
          row.weight *= std::complex<double>(0, -1);
          break;
        case PauliOp::Z: row.sign_sites.push_back(i); break;
        case PauliOp::I: break;
      }
    }
    auto it = std::find_if(groups_.begin(), groups_.end(),
                           [&](const FlipGroup &g) { return g.flips == flips; });
    if (it == groups_.end()) {
      groups_.push_back({std::move(flips), {}});
      it = std::prev(groups_.end());
    }
    it->terms.push_back(std::move(row));
  }
}

Observable Observable::parse(std::string_view text) {
  std::vector<PauliTerm> terms;
  int n = -1;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    auto line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) return;
    auto fields = detail::split_ws(line);
    if (fields.size() != 2) throw ParseError(line_no, "expected '<coefficient> <pauli-word>'");
    double c = 0.0;
    if (!detail::parse_double(fields[0], c) || !std::isfinite(c))
      throw ParseError(line_no, "malformed coefficient '" + std::string(fields[0]) + "'");
    PauliString p;
    try {
      p = PauliString::parse(fields[1]);
    } catch (const ParseError &) {
      throw ParseError(line_no, "invalid Pauli letter");
    }
    if (n < 0) n = p.n_qubits();
    if (p.n_qubits() != n) throw ParseError(line_no, "inconsistent Pauli string length");
    terms.push_back({c, std::move(p)});
  });
  if (terms.empty()) throw ParseError("empty observable");
  return Observable(n, std::move(terms));
}

Observable Observable::load(const std::filesystem::path &path) {
  return parse(detail::read_file(path));
}

double Observable::abs_coefficient_sum() const {
  double s = 0.0;
  for (const auto &t : terms_) s += std::abs(t.coefficient);
  return s;
}

std::vector<Connection> Observable::connected_elements(const Bits &sigma) const {
  check_length(n_qubits_, sigma);
  std::vector<Connection> out;
  out.reserve(groups_.size());
  for (const auto &g : groups_) {
    std::complex<double> amp{0.0, 0.0};
    for (const auto &t : g.terms) {
      int parity = 0;
      for (int i : t.sign_sites) parity ^= sigma[i] & 1;
      amp += parity ? -t.weight : t.weight;
    }
    if (amp == std::complex<double>(0.0, 0.0)) continue;
    Bits flipped = sigma;
    for (int i : g.flips) flipped[i] ^= 1u;
    out.push_back({std::move(flipped), amp});
  }
  return out;
}

std::string Observable::to_text() const {
  std::ostringstream os;
  os << std::setprecision(17);
  for (const auto &t : terms_) os << t.coefficient << ' ' << t.string.str() << '\n';
  return os.str();
}

}  // namespace nnest
