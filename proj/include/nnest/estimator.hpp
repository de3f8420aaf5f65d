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

#ifndef NNEST_ESTIMATOR_HPP
#define NNEST_ESTIMATOR_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nnest/basis.hpp"
#include "nnest/dataset.hpp"
#include "nnest/exactsim.hpp"
#include "nnest/pauli.hpp"
#include "nnest/rbm.hpp"
#include "nnest/sampler.hpp"

namespace nnest {

inline constexpr std::size_t kDefaultMcSamples = 100000;

enum class EstimateMethod { NeuralNetwork, Standard };

std::string method_name(EstimateMethod m);

struct EstimateReport {
  double mean = 0.0;
  double variance = 0.0;   // sample variance of single-shot values
  double std_error = 0.0;  // sqrt(variance / n_samples)
  std::size_t n_samples = 0;
  EstimateMethod method = EstimateMethod::NeuralNetwork;

  // Imaginary residue of the neural-network estimator.
  double imag_mean = 0.0;
  double imag_std_error = 0.0;
  bool imag_within_bound = true;  // |imag_mean| <= 5 imag_std_error
};

// M measurements split evenly over K terms; the remainder is dropped.
struct ShotBudget {
  std::size_t total = 0;       // M after flooring, = K * S
  std::size_t terms = 0;       // K
  std::size_t per_term = 0;    // S
  std::size_t remainder = 0;   // discarded measurements

  static ShotBudget split(std::size_t m, std::size_t k);
};

struct AccuracyConfig {
  double chemical_accuracy = 1.6e-3;
  void validate() const;
};

// <sigma|O|psi> / <sigma|psi> for the RBM amplitude.
std::complex<double> local_value(const Rbm &rbm, const Observable &obs, const Bits &sigma);

EstimateReport estimate_from_samples(const Rbm &rbm, const Observable &obs,
                                     std::span<const Bits> samples);

// Monte Carlo estimate of <psi|O|psi>/<psi|psi> from n_mc tempered samples.
EstimateReport nn_estimate(const Rbm &rbm, const Observable &obs, std::size_t n_mc,
                           const SamplerConfig &sampler_cfg);

// Per-term averaging estimator. groups[k] holds the records measured for
// term k; identity terms contribute c_k exactly. Non-identity terms need at
// least two records.
EstimateReport standard_estimate(const std::vector<std::vector<MeasurementRecord>> &groups,
                                 const Observable &obs);

// sigma^2[O]_qc = sum_k c_k^2 (1 - <P_k>^2) on an exact state.
double qc_variance_exact(const StateVector &state, const Observable &obs);

// (sum_k |c_k|)^2 / M
double error_upper_bound(const Observable &obs, std::size_t m);

// Erf(E sqrt(S / (2 sigma^2_qc))).
double p_chem_accuracy_standard(double sigma2_qc, std::size_t shots_per_term,
                                const AccuracyConfig &acc);

// Upper curve obtained with sigma^2_qc = (sum_k |c_k|)^2 and S shots per term.
double p_chem_accuracy_max(const Observable &obs, std::size_t shots_per_term,
                           const AccuracyConfig &acc);

// Fraction of estimates within the chemical accuracy of the exact value.
double empirical_accuracy_probability(std::span<const double> estimates, double exact,
                                      const AccuracyConfig &acc);

}  // namespace nnest

#endif
