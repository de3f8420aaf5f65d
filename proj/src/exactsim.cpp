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

#include "nnest/exactsim.hpp"

#include <cmath>
#include <map>
#include <random>

#include <Eigen/Eigenvalues>

#include "nnest/errors.hpp"
#include "nnest/log.hpp"
#include "nnest/random.hpp"

namespace nnest {

namespace {

void check_capacity(int n, int max_qubits) {
  if (n > max_qubits)
    throw CapacityError(std::to_string(n) + " qubits exceeds the dense limit of " +
                        std::to_string(max_qubits));
}

void check_dims(const StateVector &state, int n) {
  if (state.n_qubits() != n)
    throw DimensionError("state has " + std::to_string(state.n_qubits()) + " qubits, expected " +
                         std::to_string(n));
}

std::uint64_t dim_of(int n) { return std::uint64_t{1} << n; }

}  // namespace

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
  const auto dim = static_cast<std::uint64_t>(amps_.size());
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw DimensionError("state length must be a power of two >= 2");
  while ((std::uint64_t{1} << n_qubits_) < dim) ++n_qubits_;
  const double norm = amps_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericalError("state has zero norm");
  amps_ /= norm;
}

StateVector StateVector::basis_state(const Bits &bits) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim_of(bits.size())));
  v(static_cast<Eigen::Index>(bits_to_index(bits))) = 1.0;
  return StateVector(std::move(v));
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(amps_.size()));
  for (Eigen::Index i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_(i));
  return p;
}

Eigen::MatrixXcd dense_matrix(const Observable &obs, int max_qubits) {
  const int n = obs.n_qubits();
  check_capacity(n, max_qubits);
  const auto dim = static_cast<Eigen::Index>(dim_of(n));
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index row = 0; row < dim; ++row) {
    for (const auto &c : obs.connected_elements(index_to_bits(row, n)))
      h(row, static_cast<Eigen::Index>(bits_to_index(c.sigma))) += c.amplitude;
  }
  return h;
}

GroundState ground_state(const Observable &obs, int max_qubits) {
  const Eigen::MatrixXcd h = dense_matrix(obs, max_qubits);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  Eigen::VectorXcd v = solver.eigenvectors().col(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-10) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      break;
    }
  }
  const auto &evals = solver.eigenvalues();
  const double gap = evals.size() > 1 ? evals(1) - evals(0) : 0.0;
  if (evals.size() > 1 && gap < 1e-10)
    log_warning("degenerate ground state (gap " + std::to_string(gap) + ")");
  return {evals(0), StateVector(std::move(v)), gap};
}

double expectation(const StateVector &state, const Observable &obs) {
  check_dims(state, obs.n_qubits());
  const auto &psi = state.amplitudes();
  std::complex<double> acc{0.0, 0.0};
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (psi(i) == std::complex<double>(0.0, 0.0)) continue;
    std::complex<double> row{0.0, 0.0};
    for (const auto &c : obs.connected_elements(index_to_bits(i, obs.n_qubits())))
      row += c.amplitude * psi(static_cast<Eigen::Index>(bits_to_index(c.sigma)));
    acc += std::conj(psi(i)) * row;
  }
  if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, obs.abs_coefficient_sum()))
    throw NumericalError("expectation value has a non-negligible imaginary part");
  return acc.real();
}

double pauli_expectation(const StateVector &state, const PauliString &p) {
  return expectation(state, Observable(p.n_qubits(), {{1.0, p}}));
}

double pauli_variance_exact(const StateVector &state, const PauliString &p) {
  const double e = pauli_expectation(state, p);
  return std::clamp(1.0 - e * e, 0.0, 1.0);
}

const Eigen::Matrix2cd &rotation_matrix(Axis axis) {
  static const Eigen::Matrix2cd kz = Eigen::Matrix2cd::Identity();
  static const Eigen::Matrix2cd kx = [] {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd m;
    m << r, r, r, -r;
    return m;
  }();
  static const Eigen::Matrix2cd ky = [] {
    const double r = 1.0 / std::sqrt(2.0);
    const std::complex<double> i(0.0, r);
    Eigen::Matrix2cd m;
    m << r, -i, r, i;
    return m;
  }();
  switch (axis) {
    case Axis::X: return kx;
    case Axis::Y: return ky;
    case Axis::Z: break;
  }
  return kz;
}

StateVector rotate_to_basis(const StateVector &state, const BasisAssignment &basis) {
  const int n = state.n_qubits();
  if (static_cast<int>(basis.size()) != n)
    throw DimensionError("basis length does not match state");
  Eigen::VectorXcd v = state.amplitudes();
  const auto dim = static_cast<std::uint64_t>(v.size());
  for (int q = 0; q < n; ++q) {
    if (basis[q] == Axis::Z) continue;
    const auto &u = rotation_matrix(basis[q]);
    const std::uint64_t stride = std::uint64_t{1} << (n - 1 - q);
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (i & stride) continue;
      const auto i0 = static_cast<Eigen::Index>(i), i1 = static_cast<Eigen::Index>(i | stride);
      const std::complex<double> a0 = v(i0), a1 = v(i1);
      v(i0) = u(0, 0) * a0 + u(0, 1) * a1;
      v(i1) = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
  return StateVector(std::move(v));
}

Dataset sample_measurements(const StateVector &state, const std::vector<BasisAssignment> &bases,
                            std::size_t shots_per_basis, std::uint64_t seed) {
  check_capacity(state.n_qubits(), kMaxDenseQubits);
  if (shots_per_basis < 1) throw std::invalid_argument("shots_per_basis must be >= 1");
  const int n = state.n_qubits();
  std::vector<MeasurementRecord> records;
  records.reserve(bases.size() * shots_per_basis);
  for (std::size_t b = 0; b < bases.size(); ++b) {
    const auto probs = rotate_to_basis(state, bases[b]).probabilities();
    std::discrete_distribution<std::uint64_t> born(probs.begin(), probs.end());
    Rng rng(derive_seed(seed, "basis", b));
    for (std::size_t s = 0; s < shots_per_basis; ++s)
      records.push_back({bases[b], index_to_bits(born(rng), n)});
  }
  return Dataset(n, std::move(records));
}

Dataset sample_term_bases(const StateVector &state, const Observable &obs, std::size_t m,
                          std::uint64_t seed) {
  check_capacity(state.n_qubits(), kMaxDenseQubits);
  check_dims(state, obs.n_qubits());
  const int n = state.n_qubits();
  std::vector<BasisAssignment> term_basis;
  std::map<std::string, std::discrete_distribution<std::uint64_t>> born;
  for (const auto &t : obs.terms()) {
    auto basis = t.string.measurement_basis();
    auto key = basis_string(basis);
    if (!born.count(key)) {
      const auto probs = rotate_to_basis(state, basis).probabilities();
      born.emplace(key, std::discrete_distribution<std::uint64_t>(probs.begin(), probs.end()));
    }
    term_basis.push_back(std::move(basis));
  }
  Rng rng(derive_seed(seed, "term-bases"));
  std::uniform_int_distribution<std::size_t> pick(0, term_basis.size() - 1);
  std::vector<MeasurementRecord> records;
  records.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto &basis = term_basis[pick(rng)];
    records.push_back({basis, index_to_bits(born.at(basis_string(basis))(rng), n)});
  }
  return Dataset(n, std::move(records));
}

}  // namespace nnest
