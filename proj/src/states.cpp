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

#include "witnesskit/states.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace wk {

namespace {

// traceless part of the product basis (identity (x) identity removed),
// memoized per dims: sample_noise sits in Monte Carlo hot loops
const std::vector<CMat>& traceless_product_basis(BipartiteDims dims) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<CMat>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(dims.na, dims.nb);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const auto ga = hermitian_basis(dims.na);
  const auto hb = hermitian_basis(dims.nb);
  std::vector<CMat> prod;
  prod.reserve(ga.size() * hb.size() - 1);
  for (std::size_t a = 0; a < ga.size(); ++a)
    for (std::size_t b = 0; b < hb.size(); ++b) {
      if (a == 0 && b == 0) continue;
      prod.push_back(kron(ga[a], hb[b]));
    }
  return cache.emplace(key, std::move(prod)).first->second;
}

}  // namespace

BipartiteState BipartiteState::make(CMat rho, BipartiteDims dims) {
  if (dims.na < 1 || dims.nb < 1)
    throw Error("BipartiteState: invalid subsystem dimensions");
  if (rho.rows() != rho.cols() || rho.rows() != dims.total())
    throw Error("BipartiteState: matrix size does not match dims");
  require_hermitian(rho, "BipartiteState");
  if (std::abs(rho.trace().real() - 1.0) > tol::trace_one ||
      std::abs(rho.trace().imag()) > tol::trace_one)
    throw Error("BipartiteState: trace is not 1");
  if (min_eigenvalue(rho) < -tol::psd)
    throw Error("BipartiteState: not positive semidefinite");
  return BipartiteState{std::move(rho), dims};
}

BipartiteState maximally_mixed(BipartiteDims dims) {
  if (dims.na < 1 || dims.nb < 1)
    throw Error("maximally_mixed: invalid subsystem dimensions");
  const int d = dims.total();
  return BipartiteState{CMat::Identity(d, d) / static_cast<double>(d), dims};
}

CVec target_ket(double a) {
  if (!(a > 0.0 && a < 1.0)) throw Error("target_ket: a must lie in (0, 1)");
  double b = std::sqrt(1.0 - a * a);
  CVec v = CVec::Zero(4);
  v(1) = a;  // |01>
  v(2) = b;  // |10>
  return v;
}

BipartiteState noisy_target(const CVec& psi, double p,
                            const BipartiteState& sigma) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("noisy_target: p must lie in [0, 1]");
  if (psi.size() != sigma.dims.total())
    throw Error("noisy_target: ket size does not match sigma");
  if (std::abs(psi.norm() - 1.0) > 1e-12)
    throw Error("noisy_target: ket is not normalized");
  CMat rho = p * (psi * psi.adjoint()) + (1.0 - p) * sigma.rho;
  return BipartiteState::make(std::move(rho), sigma.dims);
}

double MemoryChannelParams::b() const { return std::sqrt(1.0 - a * a); }

BipartiteState memory_channel_state(const MemoryChannelParams& params) {
  if (!(params.a > 0.0 && params.a < 1.0))
    throw Error("memory_channel_state: a must lie in (0, 1)");
  if (!(params.eta >= 0.0 && params.eta <= 1.0))
    throw Error("memory_channel_state: eta must lie in [0, 1]");
  if (!(params.mu >= 0.0 && params.mu <= 1.0))
    throw Error("memory_channel_state: mu must lie in [0, 1]");
  const double a = params.a, b = params.b();
  const double c = params.mu + (1.0 - params.mu) * params.eta * params.eta;
  const double z = params.eta * (a * a - b * b);
  CMat rho = kron(pauli(0), pauli(0));
  rho += z * (kron(pauli(3), pauli(0)) - kron(pauli(0), pauli(3)));
  rho += c * (-kron(pauli(3), pauli(3)) +
              2.0 * a * b * (kron(pauli(1), pauli(1)) +
                             kron(pauli(2), pauli(2))));
  rho /= 4.0;
  return BipartiteState::make(std::move(rho), {2, 2});
}

namespace {

CVec normalized_sum(const CVec& x, const CVec& y, double sy) {
  CVec v = x + sy * y;
  return v / v.norm();
}

}  // namespace

std::vector<std::pair<CVec, CVec>> upb_state_factors() {
  const CVec e0 = basis_ket(3, 0), e1 = basis_ket(3, 1), e2 = basis_ket(3, 2);
  const CVec m01 = normalized_sum(e0, e1, -1.0);
  const CVec m12 = normalized_sum(e1, e2, -1.0);
  CVec u(3);
  u << 1, 1, 1;
  u /= std::sqrt(3.0);
  return {{e0, m01}, {m01, e2}, {e2, m12}, {m12, e0}, {u, u}};
}

std::vector<CVec> upb_states() {
  std::vector<CVec> out;
  for (const auto& [a, b] : upb_state_factors()) out.push_back(kron_vec(a, b));
  return out;
}

std::vector<std::pair<CVec, CVec>> upb_complement_factors() {
  const CVec e0 = basis_ket(3, 0), e1 = basis_ket(3, 1), e2 = basis_ket(3, 2);
  const CVec p01 = normalized_sum(e0, e1, 1.0);
  const CVec p12 = normalized_sum(e1, e2, 1.0);
  return {{e0, p01}, {e2, p12}, {p01, e2}, {p12, e0}, {e1, e1}};
}

std::vector<CVec> upb_complement_states() {
  std::vector<CVec> out;
  for (const auto& [a, b] : upb_complement_factors())
    out.push_back(kron_vec(a, b));
  return out;
}

CMat upb_kernel_projector() {
  CMat p = CMat::Zero(9, 9);
  for (const CVec& v : upb_states()) p += v * v.adjoint();
  return p;
}

BipartiteState upb_rho_be() {
  CMat rho = (CMat::Identity(9, 9) - upb_kernel_projector()) / 4.0;
  return BipartiteState::make(std::move(rho), {3, 3});
}

BipartiteState sample_noise(const NoiseBall& ball, Rng& rng) {
  if (ball.d < 0.0) throw Error("sample_noise: radius must be nonnegative");
  if (ball.d == 0.0) return ball.center;
  const BipartiteDims dims = ball.center.dims;
  const int dim = dims.total();
  const auto& basis = traceless_product_basis(dims);
  const int n_coeff = dim * dim - 1;
  const double exponent = 1.0 / static_cast<double>(n_coeff);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    RVec g(n_coeff);
    for (int k = 0; k < n_coeff; ++k) g(k) = rng.normal();
    double gn = g.norm();
    if (gn == 0.0) continue;
    double r = ball.d * std::pow(rng.uniform(), exponent);
    double scale = r / gn;
    CMat rho = ball.center.rho;
    for (int k = 0; k < n_coeff; ++k) rho += (scale * g(k)) * basis[k];
    if (min_eigenvalue(rho) >= -tol::psd)
      return BipartiteState{std::move(rho), dims};
  }
  throw Error("sample_noise: positivity rejection did not terminate");
}

Form1Sample sample_form1(double d, Rng& rng) {
  static const CVec psi = target_ket(1.0 / std::sqrt(2.0));
  double p = rng.uniform();
  NoiseBall ball{d, maximally_mixed({2, 2})};
  BipartiteState sigma = sample_noise(ball, rng);
  return Form1Sample{noisy_target(psi, p, sigma), p};
}

bool is_ppt(const BipartiteState& state, double tolerance) {
  CMat pt = partial_transpose(state.rho, state.dims, Subsystem::A);
  return min_eigenvalue(pt) >= -tolerance;
}

bool is_entangled_ppt_decisive(const BipartiteState& state) {
  const int prod = state.dims.na * state.dims.nb;
  if (prod > 6)
    throw Error(
        "is_entangled_ppt_decisive: PPT is only decisive for 2x2 and 2x3 "
        "systems");
  return !is_ppt(state);
}

}  // namespace wk
