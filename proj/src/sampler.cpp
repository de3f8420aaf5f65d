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

#include "nnest/sampler.hpp"

#include <cmath>
#include <random>
#include <utility>

#include "nnest/errors.hpp"

namespace nnest {

std::vector<double> linear_betas(int n_chains, double beta_min) {
  if (n_chains < 1) throw ConfigError("sampler needs at least one chain");
  if (n_chains == 1) return {1.0};
  std::vector<double> betas;
  for (int c = 0; c < n_chains; ++c)
    betas.push_back(beta_min + (1.0 - beta_min) * c / (n_chains - 1));
  betas.back() = 1.0;
  return betas;
}

SamplerConfig SamplerConfig::linear_ladder(int n_chains, double beta_min) {
  SamplerConfig cfg;
  cfg.n_chains = n_chains;
  cfg.betas = linear_betas(n_chains, beta_min);
  return cfg;
}

void SamplerConfig::validate() const {
  if (n_chains < 1) throw ConfigError("sampler needs at least one chain");
  if (static_cast<int>(betas.size()) != n_chains)
    throw ConfigError("sampler beta ladder has " + std::to_string(betas.size()) +
                      " entries for " + std::to_string(n_chains) + " chains");
  for (std::size_t c = 0; c < betas.size(); ++c) {
    if (!(betas[c] > 0.0 && betas[c] <= 1.0)) throw ConfigError("betas must lie in (0, 1]");
    if (c > 0 && !(betas[c] > betas[c - 1])) throw ConfigError("betas must be strictly increasing");
  }
  if (betas.back() != 1.0) throw ConfigError("last beta must be 1");
  if (sweeps_burn_in < 0 || sweeps_between_samples < 1)
    throw ConfigError("burn-in must be >= 0 and thinning >= 1");
}

double log_abs2_cosh(std::complex<double> z) {
  // |cosh(x + iy)|^2 = (cosh 2x + cos 2y) / 2
  const double ax = std::abs(z.real());
  const double e = std::exp(-2.0 * ax);
  return 2.0 * ax + std::log((1.0 + 2.0 * std::cos(2.0 * z.imag()) * e + e * e) * 0.25);
}

Chain::Chain(const Rbm &rbm, Bits sigma, double beta)
    : rbm_(&rbm),
      sigma_(std::move(sigma)),
      beta_(beta),
      theta_(rbm.n_hidden()),
      hidden_weight_(rbm.n_hidden()),
      scratch_(rbm.n_hidden()) {
  if (static_cast<int>(sigma_.size()) != rbm.n_visible())
    throw DimensionError("chain configuration does not match the RBM");
  rbm.hidden_angles(sigma_, theta_.data());
  for (int i = 0; i < rbm.n_visible(); ++i)
    if (sigma_[i]) log_weight_ += 2.0 * rbm.visible_bias()(i).real();
  for (int j = 0; j < rbm.n_hidden(); ++j) {
    hidden_weight_[j] = log_abs2_cosh(theta_[j]);
    log_weight_ += hidden_weight_[j];
  }
}

double Chain::flip_delta(int i) const {
  const auto &w = rbm_->weights();
  const double sign = sigma_[i] ? -1.0 : 1.0;
  double delta = 2.0 * sign * rbm_->visible_bias()(i).real();
  for (int j = 0; j < rbm_->n_hidden(); ++j)
    delta += log_abs2_cosh(theta_[j] + sign * w(i, j)) - hidden_weight_[j];
  return delta;
}

void Chain::sweep(Rng &rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, rbm_->n_visible() - 1);
  const auto &w = rbm_->weights();
  const int n_hidden = rbm_->n_hidden();
  for (int step = 0; step < rbm_->n_visible(); ++step) {
    const int i = pick(rng);
    const double sign = sigma_[i] ? -1.0 : 1.0;
    double delta = 2.0 * sign * rbm_->visible_bias()(i).real();
    for (int j = 0; j < n_hidden; ++j) {
      scratch_[j] = log_abs2_cosh(theta_[j] + sign * w(i, j));
      delta += scratch_[j] - hidden_weight_[j];
    }
    // Always draw so the stream advances identically for every proposal.
    const double u = unif(rng);
    const double log_ratio = beta_ * delta;
    if (log_ratio >= 0.0 || u < std::exp(log_ratio)) {
      for (int j = 0; j < n_hidden; ++j) {
        theta_[j] += sign * w(i, j);
        hidden_weight_[j] = scratch_[j];
      }
      log_weight_ += delta;
      sigma_[i] ^= 1u;
      ++accepted_;
    }
  }
}

void Chain::swap_state(Chain &other) {
  std::swap(sigma_, other.sigma_);
  std::swap(theta_, other.theta_);
  std::swap(hidden_weight_, other.hidden_weight_);
  std::swap(log_weight_, other.log_weight_);
}

Bits metropolis_sweep(const Rbm &rbm, Bits sigma, double beta, Rng &rng) {
  Chain chain(rbm, std::move(sigma), beta);
  chain.sweep(rng);
  return chain.sigma();
}

double swap_probability(double beta_i, double beta_j, double log_weight_i, double log_weight_j) {
  const double x = (beta_i - beta_j) * (log_weight_j - log_weight_i);
  return x >= 0.0 ? 1.0 : std::exp(x);
}

bool tempering_swap(Chain &chain_i, Chain &chain_j, Rng &rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double p =
      swap_probability(chain_i.beta(), chain_j.beta(), chain_i.log_weight(), chain_j.log_weight());
  const double u = unif(rng);
  if (u < p) {
    chain_i.swap_state(chain_j);
    return true;
  }
  return false;
}

TemperedSampler::TemperedSampler(const Rbm &rbm, const SamplerConfig &cfg)
    : cfg_(cfg), swap_rng_(derive_seed(cfg.seed, "swap")) {
  cfg_.validate();
  chains_.reserve(cfg_.n_chains);
  chain_rngs_.reserve(cfg_.n_chains);
  for (int c = 0; c < cfg_.n_chains; ++c) {
    chain_rngs_.emplace_back(derive_seed(cfg_.seed, "chain", static_cast<std::uint64_t>(c)));
    std::bernoulli_distribution coin(0.5);
    Bits start(rbm.n_visible());
    for (auto &b : start) b = coin(chain_rngs_.back()) ? 1 : 0;
    chains_.emplace_back(rbm, std::move(start), cfg_.betas[c]);
  }
}

void TemperedSampler::step() {
  for (std::size_t c = 0; c < chains_.size(); ++c) chains_[c].sweep(chain_rngs_[c]);
  for (std::size_t c = 0; c + 1 < chains_.size(); ++c) {
    ++swaps_attempted_;
    if (tempering_swap(chains_[c], chains_[c + 1], swap_rng_)) ++swaps_accepted_;
  }
}

std::vector<Bits> TemperedSampler::sample(std::size_t n_samples) {
  std::vector<Bits> out;
  out.reserve(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (int k = 0; k < cfg_.sweeps_between_samples; ++k) step();
    out.push_back(current());
  }
  return out;
}

std::vector<Bits> draw_samples(const Rbm &rbm, const SamplerConfig &cfg, std::size_t n_samples) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  TemperedSampler sampler(rbm, cfg);
  for (int k = 0; k < cfg.sweeps_burn_in; ++k) sampler.step();
  return sampler.sample(n_samples);
}

}  // namespace nnest
