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


#ifndef NNEST_COMMANDS_HPP
#define NNEST_COMMANDS_HPP

#include <ostream>
#include <string>

#include "nnest/config.hpp"

namespace nnest {

// Each command reads its inputs from the config, writes files under
// cfg.output_dir and a short summary to out. Errors are thrown.

// Writes dataset.txt sampled from the exact ground state.
void cmd_gen_data(const RunConfig &cfg, std::ostream &out);

// Writes model.rbm and train_log.txt.
void cmd_train(const RunConfig &cfg, std::ostream &out);

// Writes estimate.csv.
void cmd_estimate(const RunConfig &cfg, std::ostream &out);

// Writes compare.csv and histogram_M<M>.csv per budget.
void cmd_compare(const RunConfig &cfg, std::ostream &out);

// Writes dataset.txt expanded from a count table.
void cmd_convert_counts(const RunConfig &cfg, std::ostream &out);

}  // namespace nnest

#endif
