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

#include "nnest/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "nnest/errors.hpp"
#include "nnest/log.hpp"

namespace nnest {

std::string method_name(EstimateMethod m) {
  return m == EstimateMethod::NeuralNetwork ? "nn" : "standard";
}

ShotBudget ShotBudget::split(std::size_t m, std::size_t k) {
  if (k < 1) throw std::invalid_argument("shot budget needs at least one term");
  ShotBudget b;
  b.terms = k;
  b.per_term = m / k;
  b.total = b.per_term * k;
  b.remainder = m - b.total;
  if (b.per_term < 1)
    throw std::invalid_argument("budget of " + std::to_string(m) + " measurements is below one shot per term for " +
                                std::to_string(k) + " terms");
  if (b.remainder > 0)
    log_info("shot budget: discarding " + std::to_string(b.remainder) + " of " + std::to_string(m) +
             " measurements");
  return b;
}

void AccuracyConfig::validate() const {
  if (!(chemical_accuracy > 0.0) || !std::isfinite(chemical_accuracy))
    throw ConfigError("chemical accuracy must be positive");
}

std::complex<double> local_value(const Rbm &rbm, const Observable &obs, const Bits &sigma) {
  const std::complex<double> log_ref = rbm.log_psi(sigma);
  std::complex<double> acc{0.0, 0.0};
  for (const auto &c : obs.connected_elements(sigma)) {
    if (c.sigma == sigma)
      acc += c.amplitude;
    else
      acc += c.amplitude * std::exp(rbm.log_psi(c.sigma) - log_ref);
  }
  return acc;
}

EstimateReport estimate_from_samples(const Rbm &rbm, const Observable &obs,
                                     std::span<const Bits> samples) {
  if (samples.empty()) throw std::invalid_argument("no samples to estimate from");
  if (obs.n_qubits() != rbm.n_visible())
    throw DimensionError("observable and RBM qubit counts differ");
  const auto n = samples.size();
  std::vector<std::complex<double>> values;
  values.reserve(n);
  std::complex<double> sum{0.0, 0.0};
  for (const auto &s : samples) {
    values.push_back(local_value(rbm, obs, s));
    sum += values.back();
  }
  const std::complex<double> mean = sum / static_cast<double>(n);
  double ss_re = 0.0, ss_im = 0.0;
  for (const auto &v : values) {
    ss_re += (v.real() - mean.real()) * (v.real() - mean.real());
    ss_im += (v.imag() - mean.imag()) * (v.imag() - mean.imag());
  }
  EstimateReport r;
  r.method = EstimateMethod::NeuralNetwork;
  r.n_samples = n;
  r.mean = mean.real();
  r.variance = n > 1 ? ss_re / static_cast<double>(n - 1) : 0.0;
  r.std_error = std::sqrt(r.variance / static_cast<double>(n));
  r.imag_mean = mean.imag();
  r.imag_std_error = n > 1 ? std::sqrt(ss_im / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  r.imag_within_bound =
      std::abs(r.imag_mean) <= 5.0 * r.imag_std_error + 1e-12 * (1.0 + std::abs(r.mean));
  if (!r.imag_within_bound)
    log_warning("estimator imaginary residue " + std::to_string(r.imag_mean) +
                " exceeds 5 standard errors");
  return r;
}

EstimateReport nn_estimate(const Rbm &rbm, const Observable &obs, std::size_t n_mc,
                           const SamplerConfig &sampler_cfg) {
  if (n_mc < 1) throw std::invalid_argument("n_mc must be >= 1");
  const auto samples = draw_samples(rbm, sampler_cfg, n_mc);
  return estimate_from_samples(rbm, obs, samples);
}

EstimateReport standard_estimate(const std::vector<std::vector<MeasurementRecord>> &groups,
                                 const Observable &obs) {
  if (groups.size() != obs.size())
    throw DimensionError("expected one record group per observable term");
  EstimateReport r;
  r.method = EstimateMethod::Standard;
  double eps2 = 0.0;
  std::size_t min_shots = 0;
  bool first = true;
  for (std::size_t k = 0; k < obs.size(); ++k) {
    const auto &term = obs[k];
    if (term.string.is_identity()) {
      r.mean += term.coefficient;
      continue;
    }
    const auto &recs = groups[k];
    const std::size_t s = recs.size();
    if (s < 2)
      throw std::invalid_argument("term " + std::to_string(k) + " (" + term.string.str() + ") has " +
                                  std::to_string(s) + " records; at least 2 are needed");
    double sum = 0.0;
    std::vector<double> values;
    values.reserve(s);
    for (const auto &rec : recs) {
      values.push_back(outcome_eigenvalue(term.string, rec.bits));
      sum += values.back();
    }
    const double mean = sum / static_cast<double>(s);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(s - 1);
    const double c2 = term.coefficient * term.coefficient;
    r.mean += term.coefficient * mean;
    r.variance += c2 * var;
    eps2 += c2 * var / static_cast<double>(s);
    min_shots = first ? s : std::min(min_shots, s);
    first = false;
  }
  r.n_samples = min_shots;
  r.std_error = std::sqrt(eps2);
  return r;
}

double qc_variance_exact(const StateVector &state, const Observable &obs) {
  double v = 0.0;
  for (const auto &t : obs.terms()) {
    if (t.string.is_identity()) continue;
    v += t.coefficient * t.coefficient * pauli_variance_exact(state, t.string);
  }
  return v;
}

double error_upper_bound(const Observable &obs, std::size_t m) {
  if (m < 1) throw std::invalid_argument("M must be >= 1");
  const double s = obs.abs_coefficient_sum();
  return s * s / static_cast<double>(m);
}

double p_chem_accuracy_standard(double sigma2_qc, std::size_t shots_per_term,
                                const AccuracyConfig &acc) {
  if (shots_per_term < 1) throw std::invalid_argument("S must be >= 1");
  if (!(sigma2_qc >= 0.0)) throw std::invalid_argument("variance must be non-negative");
  if (sigma2_qc == 0.0) return 1.0;
  const double arg =
      acc.chemical_accuracy * std::sqrt(static_cast<double>(shots_per_term) / (2.0 * sigma2_qc));
  return std::clamp(std::erf(arg), 0.0, 1.0);
}

double p_chem_accuracy_max(const Observable &obs, std::size_t shots_per_term,
                           const AccuracyConfig &acc) {
  const double s = obs.abs_coefficient_sum();
  return p_chem_accuracy_standard(s * s, shots_per_term, acc);
}

double empirical_accuracy_probability(std::span<const double> estimates, double exact,
                                      const AccuracyConfig &acc) {
  if (estimates.empty()) return 0.0;
  std::size_t hits = 0;
  for (double e : estimates)
    if (std::abs(e - exact) < acc.chemical_accuracy) ++hits;
  return static_cast<double>(hits) / static_cast<double>(estimates.size());
}

}  // namespace nnest
