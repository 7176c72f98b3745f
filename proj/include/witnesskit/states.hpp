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

#ifndef WITNESSKIT_STATES_HPP
#define WITNESSKIT_STATES_HPP

#include <utility>
#include <vector>

#include "witnesskit/opalg.hpp"
#include "witnesskit/rng.hpp"
#include "witnesskit/types.hpp"

namespace wk {

// Validated bipartite density operator: hermitian (1e-12), unit trace
// (1e-12), positive semidefinite (min eigenvalue >= -1e-10).
struct BipartiteState {
  CMat rho;
  BipartiteDims dims;

  static BipartiteState make(CMat rho, BipartiteDims dims);
};

BipartiteState maximally_mixed(BipartiteDims dims);

// a|01> + b|10> with b = sqrt(1 - a^2), a in (0, 1)
CVec target_ket(double a);

// p |psi><psi| + (1 - p) sigma
BipartiteState noisy_target(const CVec& psi, double p,
                            const BipartiteState& sigma);

struct MemoryChannelParams {
  double a;    // target amplitude, in (0, 1)
  double eta;  // channel transmission, in [0, 1]
  double mu;   // memory, in [0, 1]

  double b() const;
};

// Two-qubit family produced by sending |psi(a)> through a correlated
// dephasing channel:
// rho = ( 1(x)1 + eta (a^2 - b^2)(sz(x)1 - 1(x)sz)
//         + (mu + (1 - mu) eta^2)(-sz(x)sz + 2ab (sx(x)sx + sy(x)sy)) ) / 4
BipartiteState memory_channel_state(const MemoryChannelParams& params);

// The five tile product states of the 3 x 3 unextendible product basis,
// as local factor pairs and as composite kets (order psi_0 .. psi_4).
std::vector<std::pair<CVec, CVec>> upb_state_factors();
std::vector<CVec> upb_states();

// Product states psibar_4 .. psibar_8 completing {psi_0..psi_3} to an
// orthonormal basis of C^3 (x) C^3.
std::vector<std::pair<CVec, CVec>> upb_complement_factors();
std::vector<CVec> upb_complement_states();

// Projector onto span{psi_0..psi_4} (the kernel of rho_BE)
CMat upb_kernel_projector();

// Bound entangled state (1 - sum_i |psi_i><psi_i|) / 4: rank 4, PPT,
// entangled.
BipartiteState upb_rho_be();

struct NoiseBall {
  double d = 0.0;          // Hilbert-Schmidt radius
  BipartiteState center;
};

// Uniform draw from the Hilbert-Schmidt ball of radius d around the center
// (direction: iid normal coefficients on the traceless product basis;
// radius: d * u^(1/(D^2 - 1))). Draws failing positivity are rejected and
// redrawn; d = 0 returns the center unchanged.
BipartiteState sample_noise(const NoiseBall& ball, Rng& rng);

struct Form1Sample {
  BipartiteState state;
  double p;
};

// p |psi><psi| + (1 - p) sigma with psi = (|01> + |10>)/sqrt(2), p uniform
// on [0, 1), sigma drawn from the radius-d ball around identity/4.
Form1Sample sample_form1(double d, Rng& rng);

bool is_ppt(const BipartiteState& state, double tolerance = tol::ppt);

// PPT verdict as an entanglement decision; only valid where the criterion
// is necessary and sufficient (2x2, 2x3, 3x2), errors otherwise.
bool is_entangled_ppt_decisive(const BipartiteState& state);

}  // namespace wk

#endif
