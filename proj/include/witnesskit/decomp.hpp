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

#ifndef WITNESSKIT_DECOMP_HPP
#define WITNESSKIT_DECOMP_HPP

#include <vector>

#include "witnesskit/witness.hpp"

namespace wk {

// One local-projector term c * |e><e| (x) |f><f|. Witness terms carry at
// least one negative coefficient (pseudo-mixture); states have all
// coefficients nonnegative.
struct PseudoTerm {
  double c = 0.0;
  ProductPair proj;
};

struct PseudoMixture {
  std::vector<PseudoTerm> terms;
  BipartiteDims dims;
};

CMat reconstruct(const PseudoMixture& pm);
double coefficient_sum(const PseudoMixture& pm);

// One local measurement setting: an orthonormal basis on each side plus a
// real weight per outcome pair. Its operator contribution is
// sum_kl weights(k, l) |a_k><a_k| (x) |b_l><b_l|.
struct Setting {
  std::vector<CVec> basis_a;
  std::vector<CVec> basis_b;
  RMat weights;
};

CMat contribution(const Setting& s, BipartiteDims dims);

struct SettingDecomposition {
  std::vector<Setting> settings;
  BipartiteDims dims;
};

CMat reconstruct(const SettingDecomposition& sd);

// Five-projector optimal-number-of-projectors form of the canonical
// two-qubit witness family: the partial transpose of the projector onto
// alpha|00> + beta|11> decomposes into three symmetric product projectors
// with coefficient (|alpha| + |beta|)^2 / 3 and two computational-basis
// terms with coefficient -|alpha beta|. Requires alpha^2 + beta^2 = 1 and
// alpha beta != 0.
PseudoMixture onp_two_qubit(double alpha, double beta);

// Three-setting optimal-number-of-settings form of the same operator:
// z (x) z with weights (alpha^2, beta^2) on the aligned outcomes,
// x (x) x weighted alpha beta on aligned outcomes, y (x) y weighted
// -alpha beta on the crossed outcomes. Settings with vanishing weight are
// dropped (so beta = 0 yields a single setting).
SettingDecomposition ons_two_qubit(double alpha, double beta);

// Settings from the Hermitian product-basis expansion: one setting per
// nonvanishing coefficient, merged when local eigenbases coincide;
// identity factors have a free eigenbasis and are folded into a compatible
// setting (or the computational basis when none exists).
SettingDecomposition generic_setting_decomposition(const CMat& op,
                                                   BipartiteDims dims);

// Merge settings whose bases agree up to phases and outcome permutation.
// Idempotent.
SettingDecomposition merge_settings(const SettingDecomposition& sd);

struct SettingsBoundDetail {
  int correlation_rank = 0;  // rank of the traceless-traceless block
  int rank_bound = 0;        // ceil(rank / (min(na, nb) - 1))
  int schmidt_bound = 0;     // min(na, nb) + 1 when the flag is set
  int bound = 0;
};

// Lower bound on the number of local settings needed to measure `op`.
// `full_schmidt_rank_pt` marks operators known to be partial transposes of
// full-Schmidt-rank pure-state projectors, which admit the stronger
// min(na, nb) + 1 bound.
SettingsBoundDetail settings_lower_bound_detail(
    const CMat& op, BipartiteDims dims, bool full_schmidt_rank_pt = false);
int settings_lower_bound(const CMat& op, BipartiteDims dims,
                         bool full_schmidt_rank_pt = false);

struct GeneralizationCounts {
  int onp_lower = 0;
  int onp_upper = 0;
  int ons_lower = 0;
  int ons_upper = 0;
};

// Projector/setting counts for the witness family on an N x M system
// (N <= M): N^2 .. 2N^2 - N projectors, N + 1 .. 2N - 1 (N even) or 2N
// (N odd) settings; the two-qubit case is exactly 5 projectors and 3
// settings.
GeneralizationCounts generalization_counts(int n, int m);

// Ten-projector pseudo-mixture of the tiles edge witness
// (sum psi_i - eps * identity, via identity = sum psi_(0..3) + sum
// psibar_(4..8)): coefficients 1 - eps on psi_0..psi_3, 1 on psi_4, -eps on
// psibar_4..psibar_8. Exactly zero coefficients are dropped, so eps = 0
// leaves the five-projector prewitness.
PseudoMixture upb_witness_pseudomixture(double eps);

// The same operator grouped into local settings built from the bases
// B1 = {0, 1, 2}, B2 = {(0-1)/s2, 2, (0+1)/s2}, B3 = {(1-2)/s2, 0,
// (1+2)/s2}, B4 = {(0-1)/s2, (0+1+2)/s3, (0+1-2)/s6}: six settings for
// eps > 0, five at eps = 0.
SettingDecomposition upb_witness_settings(double eps);

// Positive-definite operator sum of the nine projectors
// {psi_0..psi_4, psibar_4..psibar_7} entering the ratio optimization.
CMat upb_onp_denominator();

// Nine-projector form W-tilde = sum_(i<=4) (1 - eps') psi_i
// - eps' sum_(4<=i<=7) psibar_i; groups into five settings.
PseudoMixture upb_onp_decomposition(double eps_prime);
// The operator it reconstructs: kernel projector - eps' * denominator.
CMat upb_onp_target(double eps_prime);

// Greedy grouping of pseudo-mixture terms into joint local measurements:
// a term joins a group when, on each side, its ray either matches or is
// orthogonal to every ray already present and the distinct rays still fit
// in one orthonormal basis.
int count_settings(const PseudoMixture& pm,
                   double tolerance = tol::ray_match);

struct DecompositionReport {
  double max_error = 0.0;  // max abs entry of (reconstruction - target)
  double coeff_sum = 0.0;  // sum of coefficients / weights
  int n_terms = 0;
  int n_settings = 0;
};

DecompositionReport verify_decomposition(const CMat& target,
                                         const PseudoMixture& pm,
                                         double tolerance = tol::ray_match);
DecompositionReport verify_decomposition(const CMat& target,
                                         const SettingDecomposition& sd,
                                         double tolerance = tol::ray_match);

}  // namespace wk

#endif
