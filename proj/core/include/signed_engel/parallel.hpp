// Copyright 2026 The signed-engel Authors.
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

#ifndef SIGNED_ENGEL_PARALLEL_HPP_
#define SIGNED_ENGEL_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace signed_engel {

// Worker count: SIGNED_ENGEL_THREADS if set and positive, else the hardware
// concurrency (at least 1).
unsigned worker_count();

// Runs body(i) for every i in [0, count) on up to `workers` threads. Indices
// are handed out dynamically, so body must only write to per-index slots.
// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned workers = 0);

}  // namespace signed_engel

#endif  // SIGNED_ENGEL_PARALLEL_HPP_
