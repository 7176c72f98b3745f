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

#ifndef WITNESSKIT_TYPES_HPP
#define WITNESSKIT_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wk {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Domain error: invalid arguments, violated preconditions, infeasible
// requests. The CLI maps these to exit code 1 with a structured message.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct BipartiteDims {
  int na = 0;
  int nb = 0;

  int total() const { return na * nb; }
  // composite index convention: subsystem A is the slow (most significant)
  // index, |i>_A |j>_B -> i * nb + j
  int index(int i, int j) const { return i * nb + j; }

  bool operator==(const BipartiteDims& o) const {
    return na == o.na && nb == o.nb;
  }
};

namespace tol {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace_one = 1e-12;
inline constexpr double psd = 1e-10;
inline constexpr double reconstruction = 1e-10;
inline constexpr double ppt = 1e-12;
inline constexpr double rank_rel = 1e-10;
inline constexpr double ray_match = 1e-10;
inline constexpr double degeneracy = 1e-12;
}  // namespace tol

}  // namespace wk

#endif
