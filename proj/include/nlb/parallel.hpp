// Copyright 2026 The nlbound Authors
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

namespace nlb {

/// Number of worker threads: hardware concurrency, capped by the NLB_THREADS
/// environment variable when it holds a positive integer.
unsigned worker_count();

/// Runs task(k) for k in [0, n_tasks). Tasks are handed out in index order;
/// callers that reduce must write into per-task slots and combine them
/// sequentially afterwards.
void parallel_for(std::size_t n_tasks, const std::function<void(std::size_t)>& task);

}  // namespace nlb
