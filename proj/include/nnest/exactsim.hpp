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

#ifndef NNEST_EXACTSIM_HPP
#define NNEST_EXACTSIM_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "nnest/basis.hpp"
#include "nnest/dataset.hpp"
#include "nnest/pauli.hpp"

namespace nnest {

inline constexpr int kMaxDenseQubits = 12;

// Normalised dense state over 2^N amplitudes, qubit 0 most significant.
class StateVector {
 public:
  // Rescales to unit norm; throws on zero or non power-of-two length.
  explicit StateVector(Eigen::VectorXcd amplitudes);

  static StateVector basis_state(const Bits &bits);

  int n_qubits() const { return n_qubits_; }
  const Eigen::VectorXcd &amplitudes() const { return amps_; }
  std::complex<double> amplitude(const Bits &bits) const { return amps_(bits_to_index(bits)); }

  // |amplitude|^2 per dense index.
  std::vector<double> probabilities() const;

 private:
  int n_qubits_ = 0;
  Eigen::VectorXcd amps_;
};

Eigen::MatrixXcd dense_matrix(const Observable &obs, int max_qubits = kMaxDenseQubits);

struct GroundState {
  double energy;
  StateVector state;
  double gap;  // to the next eigenvalue; 0 for one-dimensional spaces
};

// Smallest eigenpair of the dense matrix. The first amplitude with modulus
// above 1e-10 is made real and positive.
GroundState ground_state(const Observable &obs, int max_qubits = kMaxDenseQubits);

double expectation(const StateVector &state, const Observable &obs);
double pauli_expectation(const StateVector &state, const PauliString &p);

// 1 - <P>^2, clamped to [0, 1].
double pauli_variance_exact(const StateVector &state, const PauliString &p);

// Single-qubit map from the z basis to the measurement basis b; row s holds
// <s^b|0> and <s^b|1>.
const Eigen::Matrix2cd &rotation_matrix(Axis axis);

StateVector rotate_to_basis(const StateVector &state, const BasisAssignment &basis);

// shots_per_basis Born-rule draws per basis, basis by basis. Each basis uses
// the stream derive_seed(seed, "basis", index).
Dataset sample_measurements(const StateVector &state, const std::vector<BasisAssignment> &bases,
                            std::size_t shots_per_basis, std::uint64_t seed);

// M records whose bases are drawn uniformly from the observable's terms
// (identity sites in z), each outcome drawn from that basis' Born rule.
Dataset sample_term_bases(const StateVector &state, const Observable &obs, std::size_t m,
                          std::uint64_t seed);

}  // namespace nnest

#endif
