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

#ifndef NNEST_BASIS_HPP
#define NNEST_BASIS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nnest {

// Computational-basis configuration or measurement outcome, one entry per
// qubit, each 0 or 1. Qubit 0 is the most significant bit of a dense index.
using Bits = std::vector<std::uint8_t>;

// Single-qubit measurement axis. Outcome bit 0 is the +1 eigenvector.
enum class Axis : std::uint8_t { X, Y, Z };

using BasisAssignment = std::vector<Axis>;

char axis_char(Axis a);
Axis axis_from_char(char c);  // throws ParseError on anything but XYZ/xyz

std::string basis_string(const BasisAssignment &basis);
std::string bits_string(const Bits &bits);
BasisAssignment parse_basis(std::string_view word);
Bits parse_bits(std::string_view word);

// Dense index <-> bits, qubit 0 most significant.
std::uint64_t bits_to_index(const Bits &bits);
Bits index_to_bits(std::uint64_t index, int n_qubits);

}  // namespace nnest

#endif
