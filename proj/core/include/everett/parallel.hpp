// Copyright 2026 The Everett Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace everett {

/// Worker budget for parallel evaluation. Defaults to the hardware
/// concurrency; set 0 to restore the default.
unsigned max_threads();
void set_max_threads(unsigned n);

/// Runs fn(0..count-1), possibly across threads. Iterations must be
/// independent; the first exception is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace everett
