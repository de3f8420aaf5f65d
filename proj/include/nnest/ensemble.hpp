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


#ifndef NNEST_ENSEMBLE_HPP
#define NNEST_ENSEMBLE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nnest/dataset.hpp"
#include "nnest/estimator.hpp"
#include "nnest/exactsim.hpp"
#include "nnest/pauli.hpp"
#include "nnest/sampler.hpp"
#include "nnest/trainer.hpp"

namespace nnest {

// Fresh measurements of a known state, bases drawn uniformly over the terms.
struct SyntheticSource {
  StateVector state;
  std::size_t measurements = 0;
};

// Random subsamples of a fixed pool of records.
struct PoolSource {
  Dataset pool;
  std::size_t measurements = 0;
};

using EnsembleSource = std::variant<SyntheticSource, PoolSource>;

struct EnsembleConfig {
  std::size_t replicates = 2;
  std::uint64_t seed = 0;
  // Overrides the derived per-replicate seeds when non-empty.
  std::vector<std::uint64_t> replicate_seeds;
  TrainConfig train;
  SamplerConfig sampler;
  std::size_t n_mc = kDefaultMcSamples;
  AccuracyConfig accuracy;
  std::optional<double> exact_value;
  unsigned threads = 1;  // 0: hardware concurrency

  void validate() const;
  std::uint64_t replicate_seed(std::size_t r) const;
};

struct ReplicateResult {
  std::uint64_t seed = 0;
  bool ok = false;
  EstimateReport estimate;
  std::string error;
};

struct EnsembleReport {
  std::vector<ReplicateResult> replicates;  // in replicate order
  std::vector<double> estimates;            // NaN for failed replicates
  double mean = 0.0;
  double variance = 0.0;  // spread of the replicate estimates, divisor R-1
  std::optional<double> p_within_accuracy;
  std::size_t failures = 0;

  bool partial() const { return failures > 0; }
};

// One train+estimate pipeline for a single replicate seed.
ReplicateResult run_replicate(const Observable &obs, const EnsembleSource &source,
                              const EnsembleConfig &cfg, std::uint64_t replicate_seed);

EnsembleReport ensemble_run(const Observable &obs, const EnsembleSource &source,
                            const EnsembleConfig &cfg);

// "estimate" column with one row per replicate.
std::string histogram_csv(const EnsembleReport &report);

}  // namespace nnest

#endif
