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

#ifndef NNEST_ERRORS_HPP
#define NNEST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nnest {

// Malformed input text (observables, datasets, checkpoints, configs).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &what) : std::runtime_error(what) {}
  ParseError(std::size_t line, const std::string &what)
      : std::runtime_error(what + " at line " + std::to_string(line)) {}
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A size limit (qubits, rotated sites) was exceeded.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Bad user configuration or arguments; maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nnest

#endif
