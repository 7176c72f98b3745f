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

#include "witnesskit/rng.hpp"

#include <cmath>
#include <numbers>

namespace wk {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : master_(seed), gen_(mix64(seed)) {}

Rng Rng::stream(std::uint64_t index) const {
  return Rng(mix64(master_ ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

double Rng::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  // u1 in (0, 1] keeps the log finite
  double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(t);
  have_cached_ = true;
  return r * std::cos(t);
}

cplx Rng::complex_normal() {
  double re = normal();
  double im = normal();
  return {re, im};
}

CVec Rng::haar_ket(int dim) {
  if (dim < 1) throw Error("haar_ket: dimension must be positive");
  CVec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = complex_normal();
  double n = v.norm();
  while (n == 0.0) {
    for (int i = 0; i < dim; ++i) v(i) = complex_normal();
    n = v.norm();
  }
  return v / n;
}

int Rng::categorical(std::span<const double> weights) {
  if (weights.empty()) throw Error("categorical: empty weight vector");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error("categorical: negative weight");
    total += w;
  }
  if (total <= 0.0) throw Error("categorical: weights sum to zero");
  double u = uniform() * total;
  double acc = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    acc += weights[k];
    if (u < acc) return static_cast<int>(k);
  }
  return static_cast<int>(weights.size() - 1);
}

}  // namespace wk
