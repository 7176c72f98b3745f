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

#ifndef WITNESSKIT_RNG_HPP
#define WITNESSKIT_RNG_HPP

#include <cstdint>
#include <random>
#include <span>

#include "witnesskit/types.hpp"

namespace wk {

// Deterministic RNG with reproducible sub-streams. All sampling primitives
// are implemented here (not via std::*_distribution, whose output is not
// pinned by the standard) so that a seed fixes every byte of output across
// platforms and worker counts. Parallel code derives one stream per task
// index from the master seed; results never depend on thread scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // independent stream for task `index`, derived from this Rng's master
  // seed only (not from its current position)
  Rng stream(std::uint64_t index) const;

  std::uint64_t master_seed() const { return master_; }

  // uniform on [0, 1), 53-bit resolution
  double uniform();
  // standard normal (Box-Muller; second value cached)
  double normal();
  cplx complex_normal();
  // Haar-random unit vector in C^dim
  CVec haar_ket(int dim);
  // index draw from an unnormalized nonnegative weight vector
  int categorical(std::span<const double> weights);

 private:
  std::uint64_t master_;
  std::mt19937_64 gen_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

// splitmix64 mixing step, exposed for seed/hash derivations
std::uint64_t mix64(std::uint64_t x);

}  // namespace wk

#endif
