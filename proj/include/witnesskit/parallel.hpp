// Copyright 2026 The witnesskit authors
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

#ifndef WITNESSKIT_PARALLEL_HPP
#define WITNESSKIT_PARALLEL_HPP

#include <functional>

namespace wk {

// Effective worker count: `requested` if positive, otherwise hardware
// concurrency; in both cases capped by the WITNESSKIT_THREADS environment
// variable when it is set to a positive integer.
int worker_count(int requested = 0);

// Runs fn(i) for i in [0, n). Work is split into contiguous index blocks,
// one per worker. Callers keep determinism by writing results into
// index-addressed slots (or per-worker partials merged in worker order);
// fn must not touch shared mutable state otherwise.
void parallel_for(long n, int workers, const std::function<void(long)>& fn);

}  // namespace wk

#endif
