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

#ifndef NNEST_PAULI_HPP
#define NNEST_PAULI_HPP

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nnest/basis.hpp"

namespace nnest {

enum class PauliOp : std::uint8_t { I, X, Y, Z };

// Tensor product of single-qubit Paulis on N >= 1 qubits.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<PauliOp> ops);

  // Word over IXYZ, e.g. "ZIXY".
  static PauliString parse(std::string_view word);

  int n_qubits() const { return static_cast<int>(ops_.size()); }
  PauliOp operator[](int i) const { return ops_[i]; }
  const std::vector<PauliOp> &ops() const { return ops_; }

  // Non-identity positions, ascending.
  const std::vector<int> &support() const { return support_; }
  bool is_identity() const { return support_.empty(); }

  // Basis that diagonalises this string; identity sites are measured in z.
  BasisAssignment measurement_basis() const;

  std::string str() const;

  friend bool operator==(const PauliString &a, const PauliString &b) {
    return a.ops_ == b.ops_;
  }

 private:
  std::vector<PauliOp> ops_;
  std::vector<int> support_;
};

struct PauliAction {
  Bits sigma;
  std::complex<double> phase;
};

// Returns the unique (sigma', phase) with <sigma'|P|sigma> = phase.
PauliAction apply_string(const PauliString &p, const Bits &sigma);

// Product of (-1)^bit over the support of p; identity sites contribute +1.
// The bits must come from a measurement in p's eigenbasis.
double outcome_eigenvalue(const PauliString &p, const Bits &bits);

struct PauliTerm {
  double coefficient;
  PauliString string;
};

// Nonzero element <sigma|O|sigma'> of one row of an observable.
struct Connection {
  Bits sigma;
  std::complex<double> amplitude;
};

// Real-weighted sum of Pauli strings. Duplicate strings are merged, keeping
// first-appearance order.
class Observable {
 public:
  Observable(int n_qubits, std::vector<PauliTerm> terms);

  // Parses the `<coefficient> <pauli-word>` line format.
  static Observable parse(std::string_view text);
  static Observable load(const std::filesystem::path &path);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<PauliTerm> &terms() const { return terms_; }
  const PauliTerm &operator[](std::size_t k) const { return terms_[k]; }

  // Sum of |c_k| over all terms, identity included.
  double abs_coefficient_sum() const;

  // Row sigma of the observable: each distinct sigma' appears once, exact
  // zero sums are dropped.
  std::vector<Connection> connected_elements(const Bits &sigma) const;

  std::string to_text() const;

 private:
  struct RowTerm {
    std::complex<double> weight;  // c_k * (-i)^{#Y}
    std::vector<int> sign_sites;  // Y and Z positions
  };
  struct FlipGroup {
    std::vector<int> flips;  // X and Y positions
    std::vector<RowTerm> terms;
  };

  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
  std::vector<FlipGroup> groups_;
};

inline std::vector<Connection> connected_elements(const Observable &obs,
                                                  const Bits &sigma) {
  return obs.connected_elements(sigma);
}

}  // namespace nnest

#endif
