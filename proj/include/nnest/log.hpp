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

#ifndef NNEST_LOG_HPP
#define NNEST_LOG_HPP

#include <string_view>

namespace nnest {

// Diagnostics go to stderr so that result files stay byte-reproducible.
void log_warning(std::string_view message);
void log_info(std::string_view message);

// Info messages are off by default; the CLI turns them on with --verbose.
void set_verbose(bool on);

}  // namespace nnest

#endif
