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


#include "nnest/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <thread>

#include "nnest/errors.hpp"
#include "nnest/log.hpp"
#include "nnest/random.hpp"

namespace nnest {

void EnsembleConfig::validate() const {
  if (replicates < 2) throw ConfigError("replicates must be >= 2");
  if (!replicate_seeds.empty() && replicate_seeds.size() != replicates)
    throw ConfigError("replicate_seeds has " + std::to_string(replicate_seeds.size()) +
                      " entries but replicates = " + std::to_string(replicates));
  if (n_mc < 1) throw ConfigError("n_mc must be >= 1");
  train.validate();
  sampler.validate();
  accuracy.validate();
}

std::uint64_t EnsembleConfig::replicate_seed(std::size_t r) const {
  if (!replicate_seeds.empty()) return replicate_seeds.at(r);
  return derive_seed(seed, "replicate", r);
}

namespace {

Dataset replicate_data(const Observable &obs, const EnsembleSource &source, std::uint64_t seed) {
  const std::uint64_t data_seed = derive_seed(seed, "data");
  if (const auto *syn = std::get_if<SyntheticSource>(&source))
    return sample_term_bases(syn->state, obs, syn->measurements, data_seed);
  const auto &pool = std::get<PoolSource>(source);
  return subsample(pool.pool, pool.measurements, data_seed);
}

}  // namespace

ReplicateResult run_replicate(const Observable &obs, const EnsembleSource &source,
                              const EnsembleConfig &cfg, std::uint64_t replicate_seed) {
  ReplicateResult out;
  out.seed = replicate_seed;
  try {
    const Dataset ds = replicate_data(obs, source, replicate_seed);
    TrainConfig tc = cfg.train;
    tc.seed = derive_seed(replicate_seed, "train");
    const TrainReport trained = train(ds, obs, tc, cfg.sampler);
    SamplerConfig sc = cfg.sampler;
    sc.seed = derive_seed(replicate_seed, "estimate");
    out.estimate = nn_estimate(trained.model, obs, cfg.n_mc, sc);
    out.ok = std::isfinite(out.estimate.mean);
    if (!out.ok) out.error = "non-finite estimate";
  } catch (const std::exception &e) {
    out.error = e.what();
  }
  return out;
}

EnsembleReport ensemble_run(const Observable &obs, const EnsembleSource &source,
                            const EnsembleConfig &cfg) {
  cfg.validate();
  if (const auto *syn = std::get_if<SyntheticSource>(&source)) {
    if (syn->state.n_qubits() != obs.n_qubits())
      throw DimensionError("state and observable qubit counts differ");
  } else if (std::get<PoolSource>(source).pool.n_qubits() != obs.n_qubits()) {
    throw DimensionError("pool and observable qubit counts differ");
  }

  const std::size_t r_count = cfg.replicates;
  EnsembleReport report;
  report.replicates.resize(r_count);

  unsigned n_threads = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  n_threads = std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(r_count)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < r_count; r = next++)
      report.replicates[r] = run_replicate(obs, source, cfg, cfg.replicate_seed(r));
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }

  std::vector<double> good;
  for (std::size_t r = 0; r < r_count; ++r) {
    const auto &rep = report.replicates[r];
    if (rep.ok) {
      report.estimates.push_back(rep.estimate.mean);
      good.push_back(rep.estimate.mean);
    } else {
      report.estimates.push_back(std::numeric_limits<double>::quiet_NaN());
      ++report.failures;
      log_warning("replicate " + std::to_string(r) + " failed: " + rep.error);
    }
  }

  if (good.empty()) {
    report.mean = std::numeric_limits<double>::quiet_NaN();
    report.variance = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  double sum = 0.0;
  for (double e : good) sum += e;
  report.mean = sum / static_cast<double>(good.size());
  double ss = 0.0;
  for (double e : good) ss += (e - report.mean) * (e - report.mean);
  report.variance = good.size() > 1 ? ss / static_cast<double>(good.size() - 1) : 0.0;
  if (cfg.exact_value)
    report.p_within_accuracy = empirical_accuracy_probability(good, *cfg.exact_value, cfg.accuracy);
  return report;
}

std::string histogram_csv(const EnsembleReport &report) {
  std::string out = "estimate\n";
  char buf[64];
  for (double e : report.estimates) {
    std::snprintf(buf, sizeof buf, "%.17g\n", e);
    out += buf;
  }
  return out;
}

}  // namespace nnest
