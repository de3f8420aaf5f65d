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

#include "nnest/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace nnest {

namespace {
std::atomic<bool> g_verbose{false};
std::mutex g_mutex;
}  // namespace

void set_verbose(bool on) { g_verbose = on; }

void log_warning(std::string_view message) {
  std::lock_guard<std::mutex> lock(g_mutex);
  std::clog << "[nnest] warning: " << message << '\n';
}

void log_info(std::string_view message) {
  if (!g_verbose) return;
  std::lock_guard<std::mutex> lock(g_mutex);
  std::clog << "[nnest] " << message << '\n';
}

}  // namespace nnest
