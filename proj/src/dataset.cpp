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

#include "nnest/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nnest/errors.hpp"
#include "nnest/random.hpp"
#include "text_util.hpp"

namespace nnest {

namespace {

int parse_header(std::string_view line, std::size_t line_no) {
  auto fields = detail::split_ws(line);
  long long n = 0;
  if (fields.size() != 2 || fields[0] != "qubits" || !detail::parse_int(fields[1], n) || n < 1)
    throw ParseError(line_no, "expected header 'qubits <N>'");
  return static_cast<int>(n);
}

MeasurementRecord parse_record(std::string_view basis_word, std::string_view bit_word,
                               int n, std::size_t line_no, bool allow_identity) {
  MeasurementRecord r;
  if (static_cast<int>(basis_word.size()) != n || static_cast<int>(bit_word.size()) != n)
    throw ParseError(line_no, "record length mismatch (expected " + std::to_string(n) + ")");
  for (char c : basis_word) {
    if (allow_identity && (c == 'I' || c == 'i')) {
      r.basis.push_back(Axis::Z);
      continue;
    }
    if (c != 'X' && c != 'Y' && c != 'Z') throw ParseError(line_no, "bad basis letter");
    r.basis.push_back(axis_from_char(c));
  }
  for (char c : bit_word) {
    if (c != '0' && c != '1') throw ParseError(line_no, "bit not 0/1");
    r.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return r;
}

}  // namespace

Dataset::Dataset(int n_qubits, std::vector<MeasurementRecord> records)
    : n_qubits_(n_qubits), records_(std::move(records)) {
  if (n_qubits < 1) throw DimensionError("dataset needs at least one qubit");
  for (const auto &r : records_) {
    if (static_cast<int>(r.basis.size()) != n_qubits ||
        static_cast<int>(r.bits.size()) != n_qubits)
      throw DimensionError("record length does not match " + std::to_string(n_qubits) +
                           " qubits");
  }
}

std::string to_text(const Dataset &ds) {
  std::string out = "qubits " + std::to_string(ds.n_qubits()) + "\n";
  out.reserve(out.size() + ds.size() * (2 * ds.n_qubits() + 2));
  for (const auto &r : ds.records()) {
    out += basis_string(r.basis);
    out += ' ';
    out += bits_string(r.bits);
    out += '\n';
  }
  return out;
}

Dataset parse_dataset(std::string_view text) {
  int n = 0;
  std::vector<MeasurementRecord> records;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    auto line = detail::trim(raw);
    if (line.empty()) return;
    if (n == 0) {
      n = parse_header(line, line_no);
      return;
    }
    auto fields = detail::split_ws(line);
    if (fields.size() != 2) throw ParseError(line_no, "expected '<basis-word> <bitstring>'");
    records.push_back(parse_record(fields[0], fields[1], n, line_no, false));
  });
  if (records.empty()) throw ParseError("empty dataset");
  return Dataset(n, std::move(records));
}

void save(const Dataset &ds, const std::filesystem::path &path) {
  detail::write_file(path, to_text(ds));
}

Dataset load(const std::filesystem::path &path) { return parse_dataset(detail::read_file(path)); }

Dataset parse_counts(std::string_view text) {
  int n = 0;
  bool marker = false;
  std::vector<MeasurementRecord> records;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    auto line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) return;
    if (n == 0) {
      n = parse_header(line, line_no);
      return;
    }
    if (!marker) {
      if (line != "counts") throw ParseError(line_no, "expected 'counts' marker");
      marker = true;
      return;
    }
    auto fields = detail::split_ws(line);
    long long count = 0;
    if (fields.size() != 3 || !detail::parse_int(fields[2], count) || count < 0)
      throw ParseError(line_no, "expected '<pauli-word> <bitstring> <count>'");
    auto rec = parse_record(fields[0], fields[1], n, line_no, true);
    for (long long c = 0; c < count; ++c) records.push_back(rec);
  });
  if (records.empty()) throw ParseError("empty dataset");
  return Dataset(n, std::move(records));
}

Dataset load_counts(const std::filesystem::path &path) {
  return parse_counts(detail::read_file(path));
}

std::pair<Dataset, Dataset> split(const Dataset &ds, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("train fraction must lie in (0, 1)");
  const std::size_t m = ds.size();
  const auto n_train =
      static_cast<std::size_t>(std::ceil(train_fraction * static_cast<double>(m) - 1e-9));
  if (n_train >= m || n_train == 0)
    throw std::invalid_argument("dataset of " + std::to_string(m) +
                                " records is too small to split");
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::sort(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());

  std::vector<MeasurementRecord> train, valid;
  train.reserve(n_train);
  valid.reserve(m - n_train);
  for (std::size_t i = 0; i < m; ++i)
    (i < n_train ? train : valid).push_back(ds[idx[i]]);
  return {Dataset(ds.n_qubits(), std::move(train)), Dataset(ds.n_qubits(), std::move(valid))};
}

Dataset subsample(const Dataset &ds, std::size_t m, std::uint64_t seed) {
  if (m < 1 || m > ds.size())
    throw std::invalid_argument("cannot subsample " + std::to_string(m) + " of " +
                                std::to_string(ds.size()) + " records");
  std::vector<std::size_t> idx(ds.size());
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  std::vector<MeasurementRecord> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
    out.push_back(ds[idx[i]]);
  }
  return Dataset(ds.n_qubits(), std::move(out));
}

bool matches_term(const MeasurementRecord &record, const PauliString &p) {
  const auto basis = p.measurement_basis();
  for (int i : p.support())
    if (record.basis[i] != basis[i]) return false;
  return true;
}

std::vector<std::vector<MeasurementRecord>> group_by_pauli(const Dataset &ds,
                                                           const Observable &obs) {
  if (ds.n_qubits() != obs.n_qubits())
    throw DimensionError("dataset and observable qubit counts differ");
  std::vector<std::vector<MeasurementRecord>> groups(obs.size());
  std::ptrdiff_t identity_term = -1;
  for (std::size_t k = 0; k < obs.size(); ++k)
    if (obs[k].string.is_identity()) {
      identity_term = static_cast<std::ptrdiff_t>(k);
      break;
    }

  for (const auto &r : ds.records()) {
    bool placed = false;
    for (std::size_t k = 0; k < obs.size() && !placed; ++k) {
      if (obs[k].string.is_identity()) continue;
      if (matches_term(r, obs[k].string)) {
        groups[k].push_back(r);
        placed = true;
      }
    }
    if (!placed && identity_term >= 0 &&
        std::all_of(r.basis.begin(), r.basis.end(), [](Axis a) { return a == Axis::Z; })) {
      groups[identity_term].push_back(r);
      placed = true;
    }
    if (!placed)
      throw std::invalid_argument("record '" + basis_string(r.basis) + " " +
                                  bits_string(r.bits) + "' matches no observable term");
  }
  return groups;
}

}  // namespace nnest
