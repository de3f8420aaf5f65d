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

#include "nnest/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "nnest/errors.hpp"
#include "nnest/estimator.hpp"
#include "nnest/log.hpp"
#include "nnest/random.hpp"

namespace nnest {

namespace {

struct Checkpoint {
  int epoch;
  double nll_validation;
  GradientVector params;
};

}  // namespace

std::string selection_rule_name(SelectionRule rule) {
  return rule == SelectionRule::LowestEnergy ? "lowest-energy" : "lowest-validation-nll";
}

SelectionRule parse_selection_rule(std::string_view name) {
  if (name == "lowest-energy") return SelectionRule::LowestEnergy;
  if (name == "lowest-validation-nll") return SelectionRule::LowestValidationNll;
  throw ConfigError("unknown selection rule '" + std::string(name) + "'");
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (!(rms_decay > 0.0 && rms_decay < 1.0)) throw ConfigError("rms_decay must lie in (0, 1)");
  if (!(rms_epsilon > 0.0)) throw ConfigError("rms_epsilon must be > 0");
  if (batch_size < 1 || batch_size > 10000) throw ConfigError("batch_size must lie in [1, 10000]");
  if (negative_samples < 0) throw ConfigError("negative_samples must be >= 0");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (checkpoint_pool < 1) throw ConfigError("checkpoint_pool must be >= 1");
  if (n_hidden < 0) throw ConfigError("n_hidden must be >= 0");
  if (!(init_stddev >= 0.0)) throw ConfigError("init_stddev must be >= 0");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("train_fraction must lie in (0, 1)");
  if (selection_n_mc < 1) throw ConfigError("selection_n_mc must be >= 1");
}

std::string TrainReport::log_text() const {
  std::ostringstream os;
  os << std::setprecision(17);
  for (const auto &e : history)
    os << "epoch " << e.epoch << " nll_val " << e.nll_validation << " nll_train " << e.nll_train
       << '\n';
  return os.str();
}

double nll(const Rbm &rbm, std::span<const MeasurementRecord> records, std::size_t *skipped) {
  if (records.empty()) throw std::invalid_argument("NLL of an empty record set");
  const double log_z = log_partition_function(rbm);
  double sum = 0.0;
  std::size_t used = 0, dropped = 0;
  for (const auto &r : records) {
    const double lp = 2.0 * log_rotated_psi(rbm, r).real();
    if (!std::isfinite(lp)) {
      ++dropped;
      continue;
    }
    sum += lp;
    ++used;
  }
  if (skipped) *skipped = dropped;
  if (dropped > 0)
    log_warning("NLL skipped " + std::to_string(dropped) + " records with vanishing amplitude");
  if (used == 0) throw DegenerateAmplitudeError("every record has a vanishing amplitude");
  return log_z - sum / static_cast<double>(used);
}

GradientVector positive_phase(const Rbm &rbm, std::span<const MeasurementRecord> batch,
                              std::size_t *skipped) {
  GradientVector acc = GradientVector::Zero(rbm.n_params());
  std::size_t used = 0, dropped = 0;
  for (const auto &r : batch) {
    try {
      acc += rotated_grad_average(rbm, r);
      ++used;
    } catch (const DegenerateAmplitudeError &e) {
      ++dropped;
      log_warning(e.what());
    }
  }
  if (skipped) *skipped = dropped;
  if (used == 0) throw DegenerateAmplitudeError("no usable records in batch");
  return acc / static_cast<double>(used);
}

GradientVector negative_phase(const Rbm &rbm, std::span<const Bits> samples) {
  if (samples.empty()) throw std::invalid_argument("negative phase needs samples");
  GradientVector acc = GradientVector::Zero(rbm.n_params());
  for (const auto &s : samples) acc += rbm.log_derivatives(s);
  return (acc / static_cast<double>(samples.size())).conjugate();
}

GradientVector negative_phase_exact(const Rbm &rbm) {
  const int n = rbm.n_visible();
  const double log_z = log_partition_function(rbm);
  GradientVector acc = GradientVector::Zero(rbm.n_params());
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < dim; ++s) {
    const Bits sigma = index_to_bits(s, n);
    const double p = std::exp(2.0 * rbm.log_psi(sigma).real() - log_z);
    acc += p * rbm.log_derivatives(sigma);
  }
  return acc.conjugate();
}

GradientVector gradient(const Rbm &rbm, std::span<const MeasurementRecord> batch,
                        std::span<const Bits> negative, std::size_t *skipped) {
  if (batch.empty()) throw std::invalid_argument("gradient needs a nonempty batch");
  return 2.0 * (negative_phase(rbm, negative) - positive_phase(rbm, batch, skipped));
}

GradientVector gradient_exact(const Rbm &rbm, std::span<const MeasurementRecord> batch,
                              std::size_t *skipped) {
  if (batch.empty()) throw std::invalid_argument("gradient needs a nonempty batch");
  return 2.0 * (negative_phase_exact(rbm) - positive_phase(rbm, batch, skipped));
}

void rmsprop_step(Rbm &rbm, OptimizerState &opt, const GradientVector &grad,
                  const TrainConfig &cfg) {
  const Eigen::Index n = rbm.n_params();
  if (grad.size() != n || opt.g_real.size() != n || opt.g_imag.size() != n)
    throw DimensionError("gradient and optimizer state do not match the RBM");
  for (Eigen::Index k = 0; k < n; ++k)
    if (!std::isfinite(grad(k).real()) || !std::isfinite(grad(k).imag()))
      throw NumericalError("non-finite gradient; step rejected");

  const double beta = cfg.rms_decay, eta = cfg.learning_rate, eps = cfg.rms_epsilon;
  GradientVector params = rbm.parameters();
  Eigen::VectorXd g_re = opt.g_real, g_im = opt.g_imag;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double gr = grad(k).real(), gi = grad(k).imag();
    g_re(k) = beta * g_re(k) + (1.0 - beta) * gr * gr;
    g_im(k) = beta * g_im(k) + (1.0 - beta) * gi * gi;
    params(k) -= std::complex<double>(eta * gr / (std::sqrt(g_re(k)) + eps),
                                      eta * gi / (std::sqrt(g_im(k)) + eps));
  }
  Rbm next = rbm;
  next.set_parameters(params);
  if (!next.all_finite()) throw NumericalError("update produced non-finite parameters");
  rbm = std::move(next);
  opt.g_real = std::move(g_re);
  opt.g_imag = std::move(g_im);
}

TrainReport train(const Dataset &ds, const Observable &obs, const TrainConfig &cfg,
                  const SamplerConfig &sampler_cfg) {
  cfg.validate();
  sampler_cfg.validate();
  if (ds.n_qubits() != obs.n_qubits())
    throw DimensionError("dataset and observable qubit counts differ");
  if (ds.n_qubits() > kMaxEnumeratedVisible)
    throw CapacityError("NLL-based training needs the exact partition function; " +
                        std::to_string(ds.n_qubits()) + " qubits exceeds the limit of " +
                        std::to_string(kMaxEnumeratedVisible));

  const int n = ds.n_qubits();
  const int n_hidden = cfg.n_hidden > 0 ? cfg.n_hidden : n;
  const auto [train_set, valid_set] = split(ds, cfg.train_fraction, derive_seed(cfg.seed, "split"));
  const auto &train_records = train_set.records();
  const std::size_t n_train_probe = std::min<std::size_t>(train_records.size(), 1000);
  const std::span<const MeasurementRecord> train_probe(train_records.data(), n_train_probe);

  Rbm rbm = Rbm::random(n, n_hidden, cfg.init_stddev, derive_seed(cfg.seed, "init"));
  OptimizerState opt(rbm.n_params());

  TrainReport report;
  std::size_t skipped_total = 0;
  std::vector<Checkpoint> pool;

  auto evaluate = [&](int epoch) {
    std::size_t sk = 0;
    const double v = nll(rbm, valid_set, &sk);
    skipped_total += sk;
    const double t = nll(rbm, train_probe, &sk);
    report.history.push_back({epoch, v, t});
    log_info("epoch " + std::to_string(epoch) + " nll_val " + std::to_string(v));
    return v;
  };

  const double initial_nll = evaluate(0);
  pool.push_back({0, initial_nll, rbm.parameters()});

  std::vector<std::size_t> order(train_records.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<MeasurementRecord> batch;
  batch.reserve(static_cast<std::size_t>(cfg.batch_size));
  std::uint64_t update = 0;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    Rng shuffle_rng(derive_seed(cfg.seed, "shuffle", static_cast<std::uint64_t>(epoch)));
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t stop = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      batch.clear();
      for (std::size_t i = start; i < stop; ++i) batch.push_back(train_records[order[i]]);

      SamplerConfig neg_cfg = sampler_cfg;
      neg_cfg.seed = derive_seed(cfg.seed, "negative", update++);
      const auto negatives = draw_samples(rbm, neg_cfg, static_cast<std::size_t>(cfg.negatives()));
      std::size_t sk = 0;
      try {
        const auto g = gradient(rbm, batch, negatives, &sk);
        rmsprop_step(rbm, opt, g, cfg);
      } catch (const DegenerateAmplitudeError &e) {
        log_warning(std::string("update skipped: ") + e.what());
      } catch (const NumericalError &e) {
        log_warning(std::string("update rejected: ") + e.what());
      }
      skipped_total += sk;
    }

    const double v = evaluate(epoch);
    if (!(v <= initial_nll)) continue;
    pool.push_back({epoch, v, rbm.parameters()});
    if (pool.size() > static_cast<std::size_t>(cfg.checkpoint_pool)) {
      // Evict the worst; among equals, the most recent.
      auto worst = std::max_element(pool.begin(), pool.end(), [](const auto &a, const auto &b) {
        return a.nll_validation < b.nll_validation ||
               (a.nll_validation == b.nll_validation && a.epoch < b.epoch);
      });
      pool.erase(worst);
    }
  }

  const Checkpoint *chosen = &pool.front();
  if (cfg.selection_rule == SelectionRule::LowestValidationNll) {
    for (const auto &c : pool)
      if (c.nll_validation < chosen->nll_validation) chosen = &c;
  } else {
    double best = std::numeric_limits<double>::infinity();
    Rbm candidate(n, n_hidden);
    for (const auto &c : pool) {
      candidate.set_parameters(c.params);
      SamplerConfig sel_cfg = sampler_cfg;
      sel_cfg.seed = derive_seed(cfg.seed, "select", static_cast<std::uint64_t>(c.epoch));
      const double e = nn_estimate(candidate, obs, cfg.selection_n_mc, sel_cfg).mean;
      if (e < best) {
        best = e;
        chosen = &c;
      }
    }
    report.selected_energy = best;
  }

  report.selected_checkpoint = chosen->epoch;
  report.selected_validation_nll = chosen->nll_validation;
  report.pool_size = pool.size();
  report.skipped_records = skipped_total;
  report.model = Rbm(n, n_hidden);
  report.model.set_parameters(chosen->params);
  return report;
}

}  // namespace nnest
