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

#ifndef NNEST_TRAINER_HPP
#define NNEST_TRAINER_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nnest/dataset.hpp"
#include "nnest/pauli.hpp"
#include "nnest/rbm.hpp"
#include "nnest/sampler.hpp"

namespace nnest {

enum class SelectionRule { LowestEnergy, LowestValidationNll };

std::string selection_rule_name(SelectionRule rule);
SelectionRule parse_selection_rule(std::string_view name);  // throws ConfigError

struct TrainConfig {
  double learning_rate = 0.01;
  double rms_decay = 0.9;
  double rms_epsilon = 1e-7;
  int batch_size = 100;
  int negative_samples = 0;  // 0: same as batch_size
  int epochs = 100;
  int checkpoint_pool = 200;
  SelectionRule selection_rule = SelectionRule::LowestEnergy;
  int n_hidden = 0;  // 0: one hidden unit per qubit
  double init_stddev = 0.01;
  double train_fraction = 0.9;
  std::size_t selection_n_mc = 100000;  // MC samples per energy evaluation
  std::uint64_t seed = 0;

  void validate() const;
  int negatives() const { return negative_samples > 0 ? negative_samples : batch_size; }
};

// Running averages of the squared gradient, real and imaginary parts kept
// separately.
struct OptimizerState {
  Eigen::VectorXd g_real;
  Eigen::VectorXd g_imag;

  explicit OptimizerState(Eigen::Index n_params)
      : g_real(Eigen::VectorXd::Zero(n_params)), g_imag(Eigen::VectorXd::Zero(n_params)) {}
};

struct EpochRecord {
  int epoch;  // 0 is the initial parameter set
  double nll_validation;
  double nll_train;
};

struct TrainReport {
  std::vector<EpochRecord> history;
  int selected_checkpoint = 0;  // epoch at which the selected parameters were saved
  double selected_validation_nll = 0.0;
  double selected_energy = std::numeric_limits<double>::quiet_NaN();  // lowest-energy rule only
  std::size_t pool_size = 0;
  std::size_t skipped_records = 0;
  Rbm model{1, 1};

  // "epoch <i> nll_val <v> nll_train <t>" lines.
  std::string log_text() const;
};

// log Z - mean log |psi(sigma^b)|^2 over the records. Records whose rotated
// amplitude vanishes are skipped and counted.
double nll(const Rbm &rbm, std::span<const MeasurementRecord> records,
           std::size_t *skipped = nullptr);
inline double nll(const Rbm &rbm, const Dataset &ds, std::size_t *skipped = nullptr) {
  return nll(rbm, std::span<const MeasurementRecord>(ds.records()), skipped);
}

// Data average of the conjugated quasi-probability log-derivative average.
GradientVector positive_phase(const Rbm &rbm, std::span<const MeasurementRecord> batch,
                              std::size_t *skipped = nullptr);

// Mean of conj(log-derivatives) over model samples.
GradientVector negative_phase(const Rbm &rbm, std::span<const Bits> samples);

// Exact model average of conj(log-derivatives), by enumeration.
GradientVector negative_phase_exact(const Rbm &rbm);

// 2 [negative - positive]: the NLL gradient d/dRe + i d/dIm, an ascent
// direction consumed as lambda <- lambda - eta * preconditioned gradient.
GradientVector gradient(const Rbm &rbm, std::span<const MeasurementRecord> batch,
                        std::span<const Bits> negative, std::size_t *skipped = nullptr);

// Same with the exact negative phase.
GradientVector gradient_exact(const Rbm &rbm, std::span<const MeasurementRecord> batch,
                              std::size_t *skipped = nullptr);

// RMSprop on real and imaginary parts independently. Throws NumericalError
// and leaves both arguments untouched if the gradient is not finite.
void rmsprop_step(Rbm &rbm, OptimizerState &opt, const GradientVector &grad,
                  const TrainConfig &cfg);

// Splits off a validation set, runs mini-batch training and returns the
// checkpoint chosen by cfg.selection_rule from the pool of lowest
// validation-NLL parameter sets.
TrainReport train(const Dataset &ds, const Observable &obs, const TrainConfig &cfg,
                  const SamplerConfig &sampler_cfg);

}  // namespace nnest

#endif
