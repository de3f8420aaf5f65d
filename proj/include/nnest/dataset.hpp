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

#ifndef NNEST_DATASET_HPP
#define NNEST_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nnest/basis.hpp"
#include "nnest/pauli.hpp"

namespace nnest {

struct MeasurementRecord {
  BasisAssignment basis;
  Bits bits;

  friend bool operator==(const MeasurementRecord &, const MeasurementRecord &) = default;
};

// Ordered collection of basis-tagged records over a fixed qubit count.
class Dataset {
 public:
  Dataset() = default;
  Dataset(int n_qubits, std::vector<MeasurementRecord> records);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const std::vector<MeasurementRecord> &records() const { return records_; }
  const MeasurementRecord &operator[](std::size_t i) const { return records_[i]; }

  friend bool operator==(const Dataset &, const Dataset &) = default;

 private:
  int n_qubits_ = 0;
  std::vector<MeasurementRecord> records_;
};

// Text format: "qubits <N>" header, then one "<basis-word> <bitstring>" per line.
std::string to_text(const Dataset &ds);
Dataset parse_dataset(std::string_view text);
void save(const Dataset &ds, const std::filesystem::path &path);
Dataset load(const std::filesystem::path &path);

// Count tables: "qubits <N>", a "counts" marker line, then
// "<pauli-word> <bitstring> <count>" lines. Identity letters are measured in z.
Dataset parse_counts(std::string_view text);
Dataset load_counts(const std::filesystem::path &path);

// Random partition with ceil(f*M) training records; both parts keep the
// original record order.
std::pair<Dataset, Dataset> split(const Dataset &ds, double train_fraction,
                                  std::uint64_t seed);

// m records drawn uniformly without replacement, in draw order.
Dataset subsample(const Dataset &ds, std::size_t m, std::uint64_t seed);

// True if the record's basis agrees with p on p's support.
bool matches_term(const MeasurementRecord &record, const PauliString &p);

// Assigns each record to the lowest-index non-identity term it matches;
// all-z records matching none go to the first identity term, if present.
std::vector<std::vector<MeasurementRecord>> group_by_pauli(const Dataset &ds,
                                                           const Observable &obs);

}  // namespace nnest

#endif
