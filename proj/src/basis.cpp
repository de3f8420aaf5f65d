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

#include "nnest/basis.hpp"

#include "nnest/errors.hpp"

namespace nnest {

char axis_char(Axis a) {
  switch (a) {
    case Axis::X: return 'X';
    case Axis::Y: return 'Y';
    case Axis::Z: return 'Z';
  }
  return '?';
}

Axis axis_from_char(char c) {
  switch (c) {
    case 'X': case 'x': return Axis::X;
    case 'Y': case 'y': return Axis::Y;
    case 'Z': case 'z': return Axis::Z;
    default: throw ParseError(std::string("invalid basis letter '") + c + "'");
  }
}

std::string basis_string(const BasisAssignment &basis) {
  std::string s;
  s.reserve(basis.size());
  for (Axis a : basis) s.push_back(axis_char(a));
  return s;
}

std::string bits_string(const Bits &bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

BasisAssignment parse_basis(std::string_view word) {
  BasisAssignment basis;
  basis.reserve(word.size());
  for (char c : word) basis.push_back(axis_from_char(c));
  return basis;
}

Bits parse_bits(std::string_view word) {
  Bits bits;
  bits.reserve(word.size());
  for (char c : word) {
    if (c != '0' && c != '1')
      throw ParseError(std::string("invalid bit '") + c + "'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return bits;
}

std::uint64_t bits_to_index(const Bits &bits) {
  std::uint64_t index = 0;
  for (auto b : bits) index = (index << 1) | (b & 1u);
  return index;
}

Bits index_to_bits(std::uint64_t index, int n_qubits) {
  Bits bits(n_qubits);
  for (int i = n_qubits - 1; i >= 0; --i) {
    bits[i] = static_cast<std::uint8_t>(index & 1u);
    index >>= 1;
  }
  return bits;
}

}  // namespace nnest
