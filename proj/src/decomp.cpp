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

#include "witnesskit/decomp.hpp"

#include <cmath>
#include <numbers>
#include <optional>

namespace wk {

namespace {

CMat proj(const CVec& v) { return v * v.adjoint(); }

void validate_setting(const Setting& s, BipartiteDims dims, const char* what,
                      double tolerance = tol::ray_match) {
  if (static_cast<int>(s.basis_a.size()) != dims.na ||
      static_cast<int>(s.basis_b.size()) != dims.nb)
    throw Error(std::string(what) + ": setting bases must be complete");
  auto check_basis = [&](const std::vector<CVec>& basis, int dim) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (basis[k].size() != dim)
        throw Error(std::string(what) + ": basis vector size mismatch");
      for (std::size_t l = 0; l <= k; ++l) {
        double want = k == l ? 1.0 : 0.0;
        if (std::abs(std::abs(basis[k].dot(basis[l])) - want) > tolerance)
          throw Error(std::string(what) + ": basis is not orthonormal");
      }
    }
  };
  check_basis(s.basis_a, dims.na);
  check_basis(s.basis_b, dims.nb);
  if (s.weights.rows() != dims.na || s.weights.cols() != dims.nb)
    throw Error(std::string(what) + ": weight shape mismatch");
}

}  // namespace

CMat reconstruct(const PseudoMixture& pm) {
  const int d = pm.dims.total();
  CMat out = CMat::Zero(d, d);
  for (const PseudoTerm& t : pm.terms) {
    if (t.proj.e.size() != pm.dims.na || t.proj.f.size() != pm.dims.nb)
      throw Error("reconstruct: term vector size does not match dims");
    out += t.c * kron(proj(t.proj.e), proj(t.proj.f));
  }
  return out;
}

double coefficient_sum(const PseudoMixture& pm) {
  double s = 0.0;
  for (const PseudoTerm& t : pm.terms) s += t.c;
  return s;
}

CMat contribution(const Setting& s, BipartiteDims dims) {
  validate_setting(s, dims, "contribution");
  const int d = dims.total();
  CMat out = CMat::Zero(d, d);
  for (int k = 0; k < dims.na; ++k)
    for (int l = 0; l < dims.nb; ++l) {
      double w = s.weights(k, l);
      if (w != 0.0) out += w * kron(proj(s.basis_a[k]), proj(s.basis_b[l]));
    }
  return out;
}

CMat reconstruct(const SettingDecomposition& sd) {
  const int d = sd.dims.total();
  CMat out = CMat::Zero(d, d);
  for (const Setting& s : sd.settings) out += contribution(s, sd.dims);
  return out;
}

PseudoMixture onp_two_qubit(double alpha, double beta) {
  if (std::abs(alpha * alpha + beta * beta - 1.0) > 1e-9)
    throw Error("onp_two_qubit: alpha^2 + beta^2 must be 1");
  if (std::abs(alpha) < 1e-12 || std::abs(beta) < 1e-12)
    throw Error("onp_two_qubit: alpha and beta must be nonzero");
  // projectors are sign-blind, so fold a global flip into beta
  if (alpha < 0.0) {
    alpha = -alpha;
    beta = -beta;
  }
  const bool conjugate_b = beta < 0.0;
  const double a = alpha, b = std::abs(beta);
  const double c = std::sqrt(a / (a + b));
  const double s = std::sqrt(b / (a + b));
  const double coef = (a + b) * (a + b) / 3.0;
  PseudoMixture pm;
  pm.dims = {2, 2};
  for (int k = 0; k < 3; ++k) {
    const double phase = 2.0 * std::numbers::pi * k / 3.0;
    CVec f(2);
    f << c, s * std::exp(cplx(0.0, phase));
    CVec fb = f;
    if (conjugate_b) fb(1) = -fb(1);  // sigma_z on the B side
    pm.terms.push_back({coef, {f, fb}});
  }
  pm.terms.push_back({-a * b, {basis_ket(2, 0), basis_ket(2, 1)}});
  pm.terms.push_back({-a * b, {basis_ket(2, 1), basis_ket(2, 0)}});
  return pm;
}

namespace {

std::vector<CVec> pauli_eigenbasis(int axis) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CVec plus(2), minus(2);
  switch (axis) {
    case 1:  // x
      plus << inv_sqrt2, inv_sqrt2;
      minus << inv_sqrt2, -inv_sqrt2;
      break;
    case 2:  // y
      plus << inv_sqrt2, cplx(0.0, inv_sqrt2);
      minus << inv_sqrt2, cplx(0.0, -inv_sqrt2);
      break;
    default:  // z
      return {basis_ket(2, 0), basis_ket(2, 1)};
  }
  return {plus, minus};
}

bool setting_is_zero(const Setting& s) {
  return s.weights.cwiseAbs().maxCoeff() < 1e-15;
}

}  // namespace

SettingDecomposition ons_two_qubit(double alpha, double beta) {
  if (std::abs(alpha * alpha + beta * beta - 1.0) > 1e-9)
    throw Error("ons_two_qubit: alpha^2 + beta^2 must be 1");
  SettingDecomposition sd;
  sd.dims = {2, 2};
  Setting z{pauli_eigenbasis(3), pauli_eigenbasis(3), RMat::Zero(2, 2)};
  z.weights(0, 0) = alpha * alpha;
  z.weights(1, 1) = beta * beta;
  Setting x{pauli_eigenbasis(1), pauli_eigenbasis(1), RMat::Zero(2, 2)};
  x.weights(0, 0) = alpha * beta;
  x.weights(1, 1) = alpha * beta;
  Setting y{pauli_eigenbasis(2), pauli_eigenbasis(2), RMat::Zero(2, 2)};
  y.weights(0, 1) = -alpha * beta;
  y.weights(1, 0) = -alpha * beta;
  for (Setting* s : {&z, &x, &y})
    if (!setting_is_zero(*s)) sd.settings.push_back(std::move(*s));
  return sd;
}

namespace {

bool ray_equal(const CVec& u, const CVec& v, double tolerance) {
  return std::abs(u.dot(v)) >= 1.0 - tolerance;
}

bool ray_orthogonal(const CVec& u, const CVec& v, double tolerance) {
  return std::abs(u.dot(v)) <= tolerance;
}

// permutation mapping basis `from` onto basis `to` up to phases, or nullopt
std::optional<std::vector<int>> basis_permutation(
    const std::vector<CVec>& to, const std::vector<CVec>& from,
    double tolerance) {
  if (to.size() != from.size()) return std::nullopt;
  const int n = static_cast<int>(to.size());
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  for (int k = 0; k < n; ++k) {
    for (int m = 0; m < n; ++m) {
      if (used[m]) continue;
      if (ray_equal(to[k], from[m], tolerance)) {
        map[k] = m;
        used[m] = true;
        break;
      }
    }
    if (map[k] < 0) return std::nullopt;
  }
  return map;
}

}  // namespace

SettingDecomposition merge_settings(const SettingDecomposition& sd) {
  SettingDecomposition out;
  out.dims = sd.dims;
  for (const Setting& s : sd.settings) {
    validate_setting(s, sd.dims, "merge_settings");
    bool merged = false;
    for (Setting& dst : out.settings) {
      auto pa = basis_permutation(dst.basis_a, s.basis_a, tol::ray_match);
      if (!pa) continue;
      auto pb = basis_permutation(dst.basis_b, s.basis_b, tol::ray_match);
      if (!pb) continue;
      for (int k = 0; k < sd.dims.na; ++k)
        for (int l = 0; l < sd.dims.nb; ++l)
          dst.weights(k, l) += s.weights((*pa)[k], (*pb)[l]);
      merged = true;
      break;
    }
    if (!merged) out.settings.push_back(s);
  }
  return out;
}

namespace {

struct LocalFactor {
  bool wild = false;             // proportional to the identity
  double scalar = 0.0;           // identity prefactor when wild
  std::vector<CVec> basis;       // eigenbasis otherwise
  RVec values;                   // matching eigenvalues
};

LocalFactor analyze_factor(const CMat& g, int dim, bool is_identity_element) {
  LocalFactor f;
  if (is_identity_element) {
    f.wild = true;
    f.scalar = 1.0 / std::sqrt(static_cast<double>(dim));
    return f;
  }
  EigResult eig = herm_eig(g);
  f.values = eig.values;
  for (int k = 0; k < dim; ++k) f.basis.push_back(eig.vectors.col(k));
  return f;
}

}  // namespace

SettingDecomposition generic_setting_decomposition(const CMat& op,
                                                   BipartiteDims dims) {
  require_hermitian(op, "generic_setting_decomposition");
  const RMat coeffs = generalized_expand(op, dims);
  const auto ga = hermitian_basis(dims.na);
  const auto hb = hermitian_basis(dims.nb);

  struct Term {
    double c;
    LocalFactor fa, fb;
  };
  std::vector<Term> concrete, half_wild, full_wild;
  for (Eigen::Index a = 0; a < coeffs.rows(); ++a)
    for (Eigen::Index b = 0; b < coeffs.cols(); ++b) {
      double c = coeffs(a, b);
      if (std::abs(c) < 1e-13) continue;
      Term t{c, analyze_factor(ga[a], dims.na, a == 0),
             analyze_factor(hb[b], dims.nb, b == 0)};
      if (!t.fa.wild && !t.fb.wild)
        concrete.push_back(std::move(t));
      else if (t.fa.wild && t.fb.wild)
        full_wild.push_back(std::move(t));
      else
        half_wild.push_back(std::move(t));
    }

  SettingDecomposition sd;
  sd.dims = dims;
  auto add_concrete = [&](const Term& t) {
    for (Setting& dst : sd.settings) {
      auto pa = basis_permutation(dst.basis_a, t.fa.basis, tol::ray_match);
      if (!pa) continue;
      auto pb = basis_permutation(dst.basis_b, t.fb.basis, tol::ray_match);
      if (!pb) continue;
      for (int k = 0; k < dims.na; ++k)
        for (int l = 0; l < dims.nb; ++l)
          dst.weights(k, l) += t.c * t.fa.values((*pa)[k]) *
                               t.fb.values((*pb)[l]);
      return;
    }
    Setting s{t.fa.basis, t.fb.basis, RMat::Zero(dims.na, dims.nb)};
    for (int k = 0; k < dims.na; ++k)
      for (int l = 0; l < dims.nb; ++l)
        s.weights(k, l) = t.c * t.fa.values(k) * t.fb.values(l);
    sd.settings.push_back(std::move(s));
  };
  for (const Term& t : concrete) add_concrete(t);

  std::vector<CVec> comp_a, comp_b;
  for (int k = 0; k < dims.na; ++k) comp_a.push_back(basis_ket(dims.na, k));
  for (int l = 0; l < dims.nb; ++l) comp_b.push_back(basis_ket(dims.nb, l));

  for (const Term& t : half_wild) {
    if (t.fa.wild) {
      bool placed = false;
      for (Setting& dst : sd.settings) {
        auto pb = basis_permutation(dst.basis_b, t.fb.basis, tol::ray_match);
        if (!pb) continue;
        for (int k = 0; k < dims.na; ++k)
          for (int l = 0; l < dims.nb; ++l)
            dst.weights(k, l) += t.c * t.fa.scalar * t.fb.values((*pb)[l]);
        placed = true;
        break;
      }
      if (!placed) {
        Setting s{comp_a, t.fb.basis, RMat::Zero(dims.na, dims.nb)};
        for (int k = 0; k < dims.na; ++k)
          for (int l = 0; l < dims.nb; ++l)
            s.weights(k, l) = t.c * t.fa.scalar * t.fb.values(l);
        sd.settings.push_back(std::move(s));
      }
    } else {
      bool placed = false;
      for (Setting& dst : sd.settings) {
        auto pa = basis_permutation(dst.basis_a, t.fa.basis, tol::ray_match);
        if (!pa) continue;
        for (int k = 0; k < dims.na; ++k)
          for (int l = 0; l < dims.nb; ++l)
            dst.weights(k, l) += t.c * t.fa.values((*pa)[k]) * t.fb.scalar;
        placed = true;
        break;
      }
      if (!placed) {
        Setting s{t.fa.basis, comp_b, RMat::Zero(dims.na, dims.nb)};
        for (int k = 0; k < dims.na; ++k)
          for (int l = 0; l < dims.nb; ++l)
            s.weights(k, l) = t.c * t.fa.values(k) * t.fb.scalar;
        sd.settings.push_back(std::move(s));
      }
    }
  }

  for (const Term& t : full_wild) {
    double w = t.c * t.fa.scalar * t.fb.scalar;
    if (sd.settings.empty())
      sd.settings.push_back(Setting{comp_a, comp_b,
                                    RMat::Zero(dims.na, dims.nb)});
    Setting& dst = sd.settings.front();
    for (int k = 0; k < dims.na; ++k)
      for (int l = 0; l < dims.nb; ++l) dst.weights(k, l) += w;
  }

  return sd;
}

SettingsBoundDetail settings_lower_bound_detail(const CMat& op,
                                                BipartiteDims dims,
                                                bool full_schmidt_rank_pt) {
  const RMat coeffs = generalized_expand(op, dims);
  SettingsBoundDetail d;
  const int ra = dims.na * dims.na - 1, rb = dims.nb * dims.nb - 1;
  if (ra > 0 && rb > 0) {
    RMat block = coeffs.block(1, 1, ra, rb);
    Eigen::JacobiSVD<RMat> svd(block);
    const RVec sv = svd.singularValues();
    if (sv.size() > 0 && sv(0) > 0.0)
      for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > tol::rank_rel * sv(0)) ++d.correlation_rank;
  }
  const int nmin = std::min(dims.na, dims.nb);
  if (nmin > 1)
    d.rank_bound = (d.correlation_rank + nmin - 2) / (nmin - 1);
  if (full_schmidt_rank_pt) d.schmidt_bound = nmin + 1;
  d.bound = std::max(hs_norm(op) > 1e-12 ? 1 : 0,
                     std::max(d.rank_bound, d.schmidt_bound));
  return d;
}

int settings_lower_bound(const CMat& op, BipartiteDims dims,
                         bool full_schmidt_rank_pt) {
  return settings_lower_bound_detail(op, dims, full_schmidt_rank_pt).bound;
}

GeneralizationCounts generalization_counts(int n, int m) {
  if (n < 2 || m < n)
    throw Error("generalization_counts: need 2 <= N <= M");
  if (n == 2) return {5, 5, 3, 3};
  GeneralizationCounts g;
  g.onp_lower = n * n;
  g.onp_upper = 2 * n * n - n;
  g.ons_lower = n + 1;
  g.ons_upper = n % 2 == 0 ? 2 * n - 1 : 2 * n;
  return g;
}

PseudoMixture upb_witness_pseudomixture(double eps) {
  if (eps < 0.0)
    throw Error("upb_witness_pseudomixture: eps must be nonnegative");
  PseudoMixture pm;
  pm.dims = {3, 3};
  const auto tiles = upb_state_factors();
  const auto comp = upb_complement_factors();
  for (int i = 0; i < 4; ++i)
    if (1.0 - eps != 0.0)
      pm.terms.push_back({1.0 - eps, {tiles[i].first, tiles[i].second}});
  pm.terms.push_back({1.0, {tiles[4].first, tiles[4].second}});
  for (const auto& [a, b] : comp)
    if (eps != 0.0) pm.terms.push_back({-eps, {a, b}});
  return pm;
}

namespace {

std::vector<CVec> upb_basis(int which) {
  const CVec e0 = basis_ket(3, 0), e1 = basis_ket(3, 1), e2 = basis_ket(3, 2);
  auto unit = [](CVec v) {
    v /= v.norm();
    return v;
  };
  switch (which) {
    case 1:
      return {e0, e1, e2};
    case 2:
      return {unit(e0 - e1), e2, unit(e0 + e1)};
    case 3:
      return {unit(e1 - e2), e0, unit(e1 + e2)};
    default:
      return {unit(e0 - e1), unit(e0 + e1 + e2), unit(e0 + e1 - 2.0 * e2)};
  }
}

}  // namespace

SettingDecomposition upb_witness_settings(double eps) {
  if (eps < 0.0)
    throw Error("upb_witness_settings: eps must be nonnegative");
  const auto b1 = upb_basis(1), b2 = upb_basis(2), b3 = upb_basis(3),
             b4 = upb_basis(4);
  SettingDecomposition sd;
  sd.dims = {3, 3};
  auto push = [&](const std::vector<CVec>& ba, const std::vector<CVec>& bb,
                  std::initializer_list<std::tuple<int, int, double>> ws) {
    Setting s{ba, bb, RMat::Zero(3, 3)};
    for (const auto& [k, l, w] : ws) s.weights(k, l) = w;
    if (!setting_is_zero(s)) sd.settings.push_back(std::move(s));
  };
  push(b1, b2, {{0, 0, 1.0 - eps}, {0, 2, -eps}});
  push(b2, b1, {{0, 2, 1.0 - eps}, {2, 2, -eps}});
  push(b1, b3, {{2, 0, 1.0 - eps}, {2, 2, -eps}});
  push(b3, b1, {{0, 0, 1.0 - eps}, {2, 0, -eps}});
  push(b4, b4, {{1, 1, 1.0}});
  push(b1, b1, {{1, 1, -eps}});
  return sd;
}

CMat upb_onp_denominator() {
  CMat s = upb_kernel_projector();
  const auto comp = upb_complement_states();
  for (int i = 0; i < 4; ++i) s += comp[i] * comp[i].adjoint();
  return s;
}

PseudoMixture upb_onp_decomposition(double eps_prime) {
  if (!(eps_prime > 0.0 && eps_prime < 1.0))
    throw Error("upb_onp_decomposition: eps' must lie in (0, 1)");
  PseudoMixture pm;
  pm.dims = {3, 3};
  const auto tiles = upb_state_factors();
  const auto comp = upb_complement_factors();
  for (const auto& [a, b] : tiles)
    pm.terms.push_back({1.0 - eps_prime, {a, b}});
  for (int i = 0; i < 4; ++i)
    pm.terms.push_back({-eps_prime, {comp[i].first, comp[i].second}});
  return pm;
}

CMat upb_onp_target(double eps_prime) {
  return upb_kernel_projector() - eps_prime * upb_onp_denominator();
}

int count_settings(const PseudoMixture& pm, double tolerance) {
  struct Group {
    std::vector<CVec> rays_a, rays_b;
  };
  auto side_fits = [tolerance](const std::vector<CVec>& rays, const CVec& v,
                               int dim) {
    bool is_new = true;
    for (const CVec& r : rays) {
      if (ray_equal(r, v, tolerance)) {
        is_new = false;
        continue;
      }
      if (!ray_orthogonal(r, v, tolerance)) return std::pair{false, false};
    }
    if (is_new && static_cast<int>(rays.size()) >= dim)
      return std::pair{false, false};
    return std::pair{true, is_new};
  };
  std::vector<Group> groups;
  for (const PseudoTerm& t : pm.terms) {
    bool placed = false;
    for (Group& g : groups) {
      auto [oka, newa] = side_fits(g.rays_a, t.proj.e, pm.dims.na);
      if (!oka) continue;
      auto [okb, newb] = side_fits(g.rays_b, t.proj.f, pm.dims.nb);
      if (!okb) continue;
      if (newa) g.rays_a.push_back(t.proj.e);
      if (newb) g.rays_b.push_back(t.proj.f);
      placed = true;
      break;
    }
    if (!placed) groups.push_back({{t.proj.e}, {t.proj.f}});
  }
  return static_cast<int>(groups.size());
}

DecompositionReport verify_decomposition(const CMat& target,
                                         const PseudoMixture& pm,
                                         double tolerance) {
  if (target.rows() != pm.dims.total() || target.cols() != pm.dims.total())
    throw Error("verify_decomposition: target size does not match dims");
  DecompositionReport r;
  r.max_error = (reconstruct(pm) - target).cwiseAbs().maxCoeff();
  r.coeff_sum = coefficient_sum(pm);
  r.n_terms = static_cast<int>(pm.terms.size());
  r.n_settings = count_settings(pm, tolerance);
  return r;
}

DecompositionReport verify_decomposition(const CMat& target,
                                         const SettingDecomposition& sd,
                                         double tolerance) {
  if (target.rows() != sd.dims.total() || target.cols() != sd.dims.total())
    throw Error("verify_decomposition: target size does not match dims");
  for (const Setting& s : sd.settings)
    validate_setting(s, sd.dims, "verify_decomposition", tolerance);
  DecompositionReport r;
  r.max_error = (reconstruct(sd) - target).cwiseAbs().maxCoeff();
  int nonzero = 0;
  double wsum = 0.0;
  for (const Setting& s : sd.settings) {
    wsum += s.weights.sum();
    for (int k = 0; k < s.weights.rows(); ++k)
      for (int l = 0; l < s.weights.cols(); ++l)
        if (std::abs(s.weights(k, l)) > 1e-15) ++nonzero;
  }
  r.coeff_sum = wsum;
  r.n_terms = nonzero;
  r.n_settings = static_cast<int>(sd.settings.size());
  return r;
}

}  // namespace wk
