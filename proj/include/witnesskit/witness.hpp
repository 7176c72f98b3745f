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

#ifndef WITNESSKIT_WITNESS_HPP
#define WITNESSKIT_WITNESS_HPP

#include <string>
#include <vector>

#include "witnesskit/rng.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/types.hpp"

namespace wk {

enum class WitnessKind { npt_eigvec, edge, shifted, prewitness };

struct WitnessProvenance {
  std::string source;            // human-readable construction note
  std::uint64_t state_hash = 0;  // hash of the state it was built from, if any
  double epsilon = 0.0;          // shift/subtraction parameter, if any
};

// Hermitian block observable. Positive on product states by construction
// (nonnegative mean on every separable state); every kind except prewitness
// has at least one negative eigenvalue.
struct Witness {
  CMat op;
  BipartiteDims dims;
  WitnessKind kind = WitnessKind::npt_eigvec;
  WitnessProvenance provenance;
};

// Canonical two-qubit witness: partial transpose of the projector onto
// (|00> - |11>)/sqrt(2), i.e.
// (1(x)1 + sz(x)sz - sx(x)sx - sy(x)sy) / 4.
CMat canonical_two_qubit_witness();

// W = (|e-><e-|)^(T_A) with e- the minimal eigenvector of rho^(T_A).
// Requires the state to be NPT; errors otherwise.
Witness witness_from_npt(const BipartiteState& state);

// Edge witness (P + Q^(T_A))/2 - eps * identity, with P, Q orthogonal
// projectors (P onto ker rho, Q onto ker rho^(T_A)). eps = 0 yields the
// positive prewitness.
Witness edge_witness(const CMat& p, const CMat& q, double eps,
                     BipartiteDims dims);

struct ProductPair {
  CVec e;  // A-side unit vector
  CVec f;  // B-side unit vector
};

// <e f| op |e f>
double product_expectation(const CMat& op, const ProductPair& pair);

struct SeesawOptions {
  int restarts = 200;
  double tolerance = 1e-12;  // stop when the decrease per sweep drops below
  int max_iterations = 500;
  int workers = 0;  // 0: automatic (WITNESSKIT_THREADS-capped)
};

struct SeesawTrace {
  double value = 0.0;
  ProductPair pair;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // objective after each half-sweep
};

// Alternating eigenvector descent from a fixed starting pair; the objective
// never increases along the trajectory.
SeesawTrace seesaw_from(const CMat& op, BipartiteDims dims, ProductPair start,
                        double tolerance, int max_iterations,
                        bool record_history = false);

// Same for the Rayleigh quotient <ef|num|ef> / <ef|den|ef>, den positive
// definite.
SeesawTrace seesaw_ratio_from(const CMat& num, const CMat& den,
                              BipartiteDims dims, ProductPair start,
                              double tolerance, int max_iterations,
                              bool record_history = false);

struct EpsilonResult {
  double value = 0.0;
  ProductPair argmin;
  int restarts_used = 0;
  bool converged = false;
};

// min over product states of <e f| op |e f>, estimated by multistart
// see-saw with Haar-random starting pairs. Deterministic for a fixed seed
// and independent of the worker count.
EpsilonResult optimize_epsilon(const CMat& op, BipartiteDims dims,
                               const SeesawOptions& options, Rng& rng);

// min over product states of <e f|num|e f> / <e f|den|e f>
EpsilonResult optimize_epsilon_ratio(const CMat& num, const CMat& den,
                                     BipartiteDims dims,
                                     const SeesawOptions& options, Rng& rng);

// W - eps * identity. Detects more states; for eps > 0 it is no longer
// positive on all separable states, so downstream classification treats it
// as heuristic (sign rule only, never a separability certificate).
Witness shifted_witness(const Witness& w, double eps);

// Largest radius for which the shifted ball stays inside the separable set.
double max_noise_radius();  // 1/sqrt(12)

// Certification threshold tau(d) = 1/4 - d^2 - sqrt((1/12 - d^2)(3/4 - d^2))
// on [0, 1/sqrt(12)]. For states prepared as target + noise from the
// radius-d ball, a canonical-witness mean >= tau(d) places the state inside
// the separable ball around the maximally mixed state, certifying
// separability.
double tau_bound(double d);

}  // namespace wk

#endif
