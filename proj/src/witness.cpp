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

#include "witnesskit/witness.hpp"

#include <cmath>
#include <sstream>

#include "witnesskit/parallel.hpp"

namespace wk {

CMat canonical_two_qubit_witness() {
  CMat w = kron(pauli(0), pauli(0)) + kron(pauli(3), pauli(3)) -
           kron(pauli(1), pauli(1)) - kron(pauli(2), pauli(2));
  return w / 4.0;
}

namespace {

void require_negative_eigenvalue(const Witness& w) {
  if (w.kind == WitnessKind::prewitness) return;
  if (min_eigenvalue(w.op) >= -tol::ppt)
    throw Error("witness: expected at least one negative eigenvalue");
}

}  // namespace

Witness witness_from_npt(const BipartiteState& state) {
  CMat pt = partial_transpose(state.rho, state.dims, Subsystem::A);
  EigResult eig = herm_eig(pt);
  if (eig.values(0) >= -tol::ppt)
    throw Error(
        "witness_from_npt: state has positive partial transpose, no witness "
        "from this construction");
  CVec e = minimal_eigvec(eig);
  CMat w = partial_transpose(e * e.adjoint(), state.dims, Subsystem::A);
  std::ostringstream note;
  note << "partial transpose of minimal-eigenvector projector, eigenvalue "
       << eig.values(0);
  Witness out{std::move(w), state.dims, WitnessKind::npt_eigvec,
              {note.str(), matrix_hash(state.rho), 0.0}};
  require_negative_eigenvalue(out);
  return out;
}

Witness edge_witness(const CMat& p, const CMat& q, double eps,
                     BipartiteDims dims) {
  if (eps < 0.0) throw Error("edge_witness: eps must be nonnegative");
  if (p.rows() != dims.total() || q.rows() != dims.total())
    throw Error("edge_witness: projector size does not match dims");
  require_hermitian(p, "edge_witness: P");
  require_hermitian(q, "edge_witness: Q");
  if ((p * p - p).cwiseAbs().maxCoeff() > 1e-10)
    throw Error("edge_witness: P is not a projector");
  if ((q * q - q).cwiseAbs().maxCoeff() > 1e-10)
    throw Error("edge_witness: Q is not a projector");
  const int d = dims.total();
  CMat w = (p + partial_transpose(q, dims, Subsystem::A)) / 2.0 -
           eps * CMat::Identity(d, d);
  std::ostringstream note;
  note << "edge witness (P + Q^TA)/2 - eps, eps = " << eps;
  Witness out{std::move(w), dims,
              eps == 0.0 ? WitnessKind::prewitness : WitnessKind::edge,
              {note.str(), 0, eps}};
  require_negative_eigenvalue(out);
  return out;
}

double product_expectation(const CMat& op, const ProductPair& pair) {
  CVec v = kron_vec(pair.e, pair.f);
  return (v.adjoint() * op * v)(0, 0).real();
}

namespace {

// <e| . |e> on the A side: B-side operator remains
CMat contract_a(const CMat& op, const CVec& e, BipartiteDims dims) {
  CMat out = CMat::Zero(dims.nb, dims.nb);
  for (int j = 0; j < dims.nb; ++j)
    for (int l = 0; l < dims.nb; ++l) {
      cplx acc = 0.0;
      for (int i = 0; i < dims.na; ++i)
        for (int k = 0; k < dims.na; ++k)
          acc += std::conj(e(i)) * op(dims.index(i, j), dims.index(k, l)) *
                 e(k);
      out(j, l) = acc;
    }
  return out;
}

// <f| . |f> on the B side: A-side operator remains
CMat contract_b(const CMat& op, const CVec& f, BipartiteDims dims) {
  CMat out = CMat::Zero(dims.na, dims.na);
  for (int i = 0; i < dims.na; ++i)
    for (int k = 0; k < dims.na; ++k) {
      cplx acc = 0.0;
      for (int j = 0; j < dims.nb; ++j)
        for (int l = 0; l < dims.nb; ++l)
          acc += std::conj(f(j)) * op(dims.index(i, j), dims.index(k, l)) *
                 f(l);
      out(i, k) = acc;
    }
  return out;
}

CVec min_vec_of(const CMat& m) { return minimal_eigvec(herm_eig(m)); }

void check_seesaw_inputs(const CMat& op, BipartiteDims dims,
                         const ProductPair& start) {
  if (op.rows() != op.cols() || op.rows() != dims.total())
    throw Error("seesaw: operator size does not match dims");
  require_hermitian(op, "seesaw");
  if (start.e.size() != dims.na || start.f.size() != dims.nb)
    throw Error("seesaw: starting pair size does not match dims");
}

}  // namespace

SeesawTrace seesaw_from(const CMat& op, BipartiteDims dims, ProductPair start,
                        double tolerance, int max_iterations,
                        bool record_history) {
  check_seesaw_inputs(op, dims, start);
  SeesawTrace t;
  t.pair = std::move(start);
  t.pair.e /= t.pair.e.norm();
  t.pair.f /= t.pair.f.norm();
  double prev = product_expectation(op, t.pair);
  if (record_history) t.history.push_back(prev);
  for (int it = 0; it < max_iterations; ++it) {
    CMat af = contract_b(op, t.pair.f, dims);
    EigResult ea = herm_eig(af);
    t.pair.e = minimal_eigvec(ea);
    if (record_history) t.history.push_back(ea.values(0));
    CMat be = contract_a(op, t.pair.e, dims);
    EigResult eb = herm_eig(be);
    t.pair.f = minimal_eigvec(eb);
    double val = eb.values(0);
    if (record_history) t.history.push_back(val);
    t.iterations = it + 1;
    if (prev - val < tolerance) {
      t.converged = true;
      t.value = val;
      return t;
    }
    prev = val;
  }
  t.value = prev;
  return t;
}

SeesawTrace seesaw_ratio_from(const CMat& num, const CMat& den,
                              BipartiteDims dims, ProductPair start,
                              double tolerance, int max_iterations,
                              bool record_history) {
  check_seesaw_inputs(num, dims, start);
  if (den.rows() != num.rows() || den.cols() != num.cols())
    throw Error("seesaw_ratio: operator shape mismatch");
  require_hermitian(den, "seesaw_ratio: denominator");
  if (min_eigenvalue(den) <= 1e-10)
    throw Error("seesaw_ratio: denominator must be positive definite");
  auto ratio_at = [&](const ProductPair& pair) {
    return product_expectation(num, pair) / product_expectation(den, pair);
  };
  SeesawTrace t;
  t.pair = std::move(start);
  t.pair.e /= t.pair.e.norm();
  t.pair.f /= t.pair.f.norm();
  double prev = ratio_at(t.pair);
  if (record_history) t.history.push_back(prev);
  auto min_gen_pair = [](const CMat& a, const CMat& b) {
    Eigen::GeneralizedSelfAdjointEigenSolver<CMat> es(a, b);
    if (es.info() != Eigen::Success)
      throw Error("seesaw_ratio: generalized solver failed");
    CVec v = es.eigenvectors().col(0);
    v /= v.norm();
    return std::make_pair(es.eigenvalues()(0), v);
  };
  for (int it = 0; it < max_iterations; ++it) {
    auto [va, e] = min_gen_pair(contract_b(num, t.pair.f, dims),
                                contract_b(den, t.pair.f, dims));
    t.pair.e = e;
    if (record_history) t.history.push_back(va);
    auto [vb, f] = min_gen_pair(contract_a(num, t.pair.e, dims),
                                contract_a(den, t.pair.e, dims));
    t.pair.f = f;
    if (record_history) t.history.push_back(vb);
    t.iterations = it + 1;
    if (prev - vb < tolerance) {
      t.converged = true;
      t.value = vb;
      return t;
    }
    prev = vb;
  }
  t.value = prev;
  return t;
}

namespace {

EpsilonResult multistart(
    BipartiteDims dims, const SeesawOptions& options, Rng& rng,
    const std::function<SeesawTrace(ProductPair, std::uint64_t)>& run) {
  if (options.restarts < 1)
    throw Error("optimize_epsilon: restarts must be at least 1");
  const int n = options.restarts;
  std::vector<SeesawTrace> traces(n);
  int workers = worker_count(options.workers);
  parallel_for(n, workers, [&](long r) {
    Rng local = rng.stream(static_cast<std::uint64_t>(r));
    ProductPair start{local.haar_ket(dims.na), local.haar_ket(dims.nb)};
    traces[r] = run(std::move(start), static_cast<std::uint64_t>(r));
  });
  // reduce in restart order so the result is independent of scheduling
  int best = 0;
  for (int r = 1; r < n; ++r)
    if (traces[r].value < traces[best].value) best = r;
  EpsilonResult res;
  res.value = traces[best].value;
  res.argmin = traces[best].pair;
  res.restarts_used = n;
  res.converged = traces[best].converged;
  return res;
}

}  // namespace

EpsilonResult optimize_epsilon(const CMat& op, BipartiteDims dims,
                               const SeesawOptions& options, Rng& rng) {
  if (op.rows() != op.cols() || op.rows() != dims.total())
    throw Error("optimize_epsilon: operator size does not match dims");
  require_hermitian(op, "optimize_epsilon");
  return multistart(dims, options, rng, [&](ProductPair start, std::uint64_t) {
    return seesaw_from(op, dims, std::move(start), options.tolerance,
                       options.max_iterations);
  });
}

EpsilonResult optimize_epsilon_ratio(const CMat& num, const CMat& den,
                                     BipartiteDims dims,
                                     const SeesawOptions& options, Rng& rng) {
  if (num.rows() != num.cols() || num.rows() != dims.total())
    throw Error("optimize_epsilon_ratio: operator size does not match dims");
  require_hermitian(num, "optimize_epsilon_ratio");
  if (den.rows() != num.rows() || den.cols() != num.cols())
    throw Error("optimize_epsilon_ratio: operator shape mismatch");
  require_hermitian(den, "optimize_epsilon_ratio: denominator");
  if (min_eigenvalue(den) <= 1e-10)
    throw Error("optimize_epsilon_ratio: denominator must be positive definite");
  return multistart(dims, options, rng, [&](ProductPair start, std::uint64_t) {
    return seesaw_ratio_from(num, den, dims, std::move(start),
                             options.tolerance, options.max_iterations);
  });
}

Witness shifted_witness(const Witness& w, double eps) {
  if (eps < 0.0) throw Error("shifted_witness: eps must be nonnegative");
  if (eps == 0.0) return w;
  Witness out = w;
  out.op -= eps * CMat::Identity(w.op.rows(), w.op.cols());
  out.kind = WitnessKind::shifted;
  std::ostringstream note;
  note << "shifted by eps = " << eps
       << "; negative on some separable states when eps > 0, downstream "
          "verdicts are heuristic";
  out.provenance.source = note.str();
  out.provenance.epsilon = w.provenance.epsilon + eps;
  require_negative_eigenvalue(out);
  return out;
}

double max_noise_radius() { return 1.0 / std::sqrt(12.0); }

double tau_bound(double d) {
  if (d < 0.0 || d > max_noise_radius())
    throw Error("tau_bound: d must lie in [0, 1/sqrt(12)]");
  double u1 = 1.0 / 12.0 - d * d;
  // mathematically >= 0 on the domain; the representable endpoint leaves
  // a negative sliver of order 1e-17
  if (u1 < 1e-15) u1 = 0.0;
  double u2 = 0.75 - d * d;
  return 0.25 - d * d - std::sqrt(u1 * u2);
}

}  // namespace wk
