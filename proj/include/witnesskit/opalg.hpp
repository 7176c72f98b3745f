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

#ifndef WITNESSKIT_OPALG_HPP
#define WITNESSKIT_OPALG_HPP

#include <cstdint>
#include <vector>

#include "witnesskit/types.hpp"

namespace wk {

enum class Subsystem { A, B };

bool is_hermitian(const CMat& m, double tolerance = tol::hermitian);
// throws Error("<what>: not hermitian") when the check fails
void require_hermitian(const CMat& m, const char* what,
                       double tolerance = tol::hermitian);

CMat kron(const CMat& a, const CMat& b);
CVec kron_vec(const CVec& a, const CVec& b);

// computational basis ket |k> in C^dim
CVec basis_ket(int dim, int k);

// Pauli matrices, idx 0..3 = identity, x, y, z
const CMat& pauli(int idx);

// Transpose of the chosen subsystem only. Pure entry permutation: applying
// it twice returns the input bit for bit.
CMat partial_transpose(const CMat& m, BipartiteDims dims, Subsystem which);

// Trace out the complement of `keep`.
CMat partial_trace(const CMat& m, BipartiteDims dims, Subsystem keep);

// Hermitian eigendecomposition, eigenvalues ascending. Every eigenvector
// column is phase-fixed: its first component of magnitude > 1e-8 is made
// real and positive, so the output is a deterministic function of the input.
struct EigResult {
  RVec values;   // ascending
  CMat vectors;  // columns, orthonormal, phase-fixed
};
EigResult herm_eig(const CMat& m);

// Smallest eigenvalue of a Hermitian matrix (no vectors computed).
double min_eigenvalue(const CMat& m);

// Eigenvector of the smallest eigenvalue. If several eigenvalues lie within
// `degeneracy_tol` of the minimum, returns the phase-fixed candidate that is
// lexicographically largest by (|v_0|, |v_1|, ...), ties broken by real
// parts; a deterministic choice inside the degenerate subspace.
CVec minimal_eigvec(const EigResult& eig,
                    double degeneracy_tol = tol::degeneracy);

// Projector onto the span of eigenvectors with |eigenvalue| <= cutoff.
CMat kernel_projector(const CMat& m, double cutoff = 1e-10);

struct SchmidtForm {
  RVec coefficients;          // descending, nonnegative, sum of squares = 1
  std::vector<CVec> basis_a;  // orthonormal, one per coefficient
  std::vector<CVec> basis_b;
};
// Schmidt decomposition of a normalized pure state:
// v = sum_k coefficients[k] * basis_a[k] (x) basis_b[k]
SchmidtForm schmidt(const CVec& v, BipartiteDims dims);
int schmidt_rank(const SchmidtForm& s, double cutoff = tol::rank_rel);

double hs_norm(const CMat& m);
// Tr(a^dagger b)
cplx hs_inner(const CMat& a, const CMat& b);

// Two-qubit Pauli expansion m = sum_ij lambda(i,j) sigma_i (x) sigma_j / ...
// with lambda(i,j) = Tr((sigma_i (x) sigma_j) m) / 4, real for Hermitian m.
struct PauliExpansion {
  Eigen::Matrix4d lambda;
};
PauliExpansion pauli_expand(const CMat& m);
CMat pauli_reconstruct(const PauliExpansion& e);

// Hilbert-Schmidt-orthonormal Hermitian basis of n x n matrices; element 0
// is identity/sqrt(n), the rest are traceless (generalized Gell-Mann set:
// symmetric and antisymmetric pair matrices, then diagonal matrices).
std::vector<CMat> hermitian_basis(int n);

// Coefficients of a Hermitian bipartite operator in the product basis
// G_a (x) H_b; entry (a, b) = Tr((G_a (x) H_b) m). Real by hermiticity.
RMat generalized_expand(const CMat& m, BipartiteDims dims);
CMat generalized_reconstruct(const RMat& coeffs, BipartiteDims dims);

// FNV-1a over the raw entry bytes; used for provenance records
std::uint64_t matrix_hash(const CMat& m);

}  // namespace wk

#endif
