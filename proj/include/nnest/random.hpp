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

#ifndef NNEST_RANDOM_HPP
#define NNEST_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace nnest {

using Rng = std::mt19937_64;

// Derives an independent stream seed from a master seed, a task label and an
// index. FNV-1a over the label, mixed with the seed and index by splitmix64.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                          std::uint64_t index = 0);

}  // namespace nnest

#endif
