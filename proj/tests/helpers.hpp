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

#ifndef WITNESSKIT_TESTS_HELPERS_HPP
#define WITNESSKIT_TESTS_HELPERS_HPP

#include <Eigen/Dense>

#include "witnesskit/opalg.hpp"
#include "witnesskit/rng.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/types.hpp"

namespace wkt {

inline wk::CMat random_hermitian(int n, wk::Rng& rng) {
  wk::CMat g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = rng.complex_normal();
  return wk::CMat((g + g.adjoint()) / 2.0);
}

// Hilbert-Schmidt ensemble density matrix
inline wk::BipartiteState random_state(wk::BipartiteDims dims, wk::Rng& rng) {
  const int n = dims.total();
  wk::CMat g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = rng.complex_normal();
  wk::CMat rho = g * g.adjoint();
  rho /= rho.trace();
  return wk::BipartiteState::make(std::move(rho), dims);
}

inline wk::CMat haar_unitary(int n, wk::Rng& rng) {
  wk::CMat g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<wk::CMat> qr(g);
  wk::CMat q = qr.householderQ();
  wk::CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    wk::cplx d = r(k, k);
    q.col(k) *= d / std::abs(d);
  }
  return q;
}

// convex mixture of <= max_terms random product projectors
inline wk::BipartiteState random_separable(wk::BipartiteDims dims,
                                           int max_terms, wk::Rng& rng) {
  const int n = dims.total();
  const int terms = 1 + static_cast<int>(rng.uniform() * max_terms);
  wk::CMat rho = wk::CMat::Zero(n, n);
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    double w = rng.uniform() + 1e-12;
    wk::CVec e = rng.haar_ket(dims.na);
    wk::CVec f = rng.haar_ket(dims.nb);
    wk::CVec ef = wk::kron_vec(e, f);
    rho += w * (ef * ef.adjoint());
    total += w;
  }
  rho /= total;
  return wk::BipartiteState::make(std::move(rho), dims);
}

inline double max_abs(const wk::CMat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace wkt

#endif
