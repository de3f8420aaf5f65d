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

#ifndef NNEST_SAMPLER_HPP
#define NNEST_SAMPLER_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "nnest/basis.hpp"
#include "nnest/random.hpp"
#include "nnest/rbm.hpp"

namespace nnest {

// n_chains inverse temperatures spaced linearly from beta_min to 1.
std::vector<double> linear_betas(int n_chains, double beta_min = 0.2);

struct SamplerConfig {
  int n_chains = 20;
  std::vector<double> betas = linear_betas(20);  // ascending in (0, 1], ends at 1
  int sweeps_burn_in = 100;
  int sweeps_between_samples = 1;
  std::uint64_t seed = 0;

  static SamplerConfig linear_ladder(int n_chains, double beta_min = 0.2);

  // Throws ConfigError if the invariants do not hold.
  void validate() const;
};

// log |cosh(z)|^2 in real arithmetic, stable for large |Re z|.
double log_abs2_cosh(std::complex<double> z);

// One Metropolis walker on |psi|^{2 beta}. Only the modulus of psi enters
// the acceptance rule, so the chain tracks hidden angles and log |psi|^2.
class Chain {
 public:
  Chain(const Rbm &rbm, Bits sigma, double beta);

  const Bits &sigma() const { return sigma_; }
  double beta() const { return beta_; }
  // log |psi(sigma)|^2 at beta = 1.
  double log_weight() const { return log_weight_; }

  // log |psi(flipped)|^2 - log |psi(sigma)|^2 for a flip of bit i.
  double flip_delta(int i) const;

  // N single-bit flip proposals, each at a uniformly chosen site.
  void sweep(Rng &rng);
  std::uint64_t accepted() const { return accepted_; }

  // Exchanges configurations, keeping each chain's beta.
  void swap_state(Chain &other);

 private:
  const Rbm *rbm_;
  Bits sigma_;
  double beta_;
  std::vector<std::complex<double>> theta_;
  std::vector<double> hidden_weight_;  // log |cosh theta_j|^2
  std::vector<double> scratch_;
  double log_weight_ = 0.0;
  std::uint64_t accepted_ = 0;
};

Bits metropolis_sweep(const Rbm &rbm, Bits sigma, double beta, Rng &rng);

// Acceptance probability of exchanging configurations between chains at
// inverse temperatures beta_i and beta_j.
double swap_probability(double beta_i, double beta_j, double log_weight_i, double log_weight_j);

// Attempts the exchange; returns true if accepted.
bool tempering_swap(Chain &chain_i, Chain &chain_j, Rng &rng);

// Parallel-tempering ensemble. Each chain owns a stream derived from the
// config seed so that output does not depend on scheduling.
class TemperedSampler {
 public:
  TemperedSampler(const Rbm &rbm, const SamplerConfig &cfg);

  // One sweep of every chain followed by swap attempts on all adjacent pairs.
  void step();

  // Configuration of the beta = 1 chain.
  const Bits &current() const { return chains_.back().sigma(); }

  std::vector<Bits> sample(std::size_t n_samples);

  std::uint64_t swaps_attempted() const { return swaps_attempted_; }
  std::uint64_t swaps_accepted() const { return swaps_accepted_; }

 private:
  SamplerConfig cfg_;
  std::vector<Chain> chains_;
  std::vector<Rng> chain_rngs_;
  Rng swap_rng_;
  std::uint64_t swaps_attempted_ = 0;
  std::uint64_t swaps_accepted_ = 0;
};

// Burn-in, then n_samples configurations of the beta = 1 chain with the
// configured thinning.
std::vector<Bits> draw_samples(const Rbm &rbm, const SamplerConfig &cfg, std::size_t n_samples);

}  // namespace nnest

#endif
