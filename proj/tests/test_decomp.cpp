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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "witnesskit/decomp.hpp"
#include "witnesskit/opalg.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/witness.hpp"

using namespace wk;
using wkt::max_abs;

namespace {

CMat target_witness(double alpha, double beta) {
  CVec psi = CVec::Zero(4);
  psi(0) = alpha;
  psi(3) = beta;
  CMat proj = psi * psi.adjoint();
  return partial_transpose(proj, {2, 2}, Subsystem::A);
}

CMat tiles_edge_op(double eps) {
  BipartiteState rho = upb_rho_be();
  CMat p = upb_kernel_projector();
  CMat q = kernel_projector(partial_transpose(rho.rho, rho.dims,
                                              Subsystem::A));
  return edge_witness(p, q, eps, rho.dims).op;
}

}  // namespace

TEST_SUITE("decomp") {

TEST_CASE("onp five-term coefficients at alpha = beta") {
  double r = 1.0 / std::sqrt(2.0);
  PseudoMixture mix = onp_two_qubit(r, r);
  REQUIRE(mix.terms.size() == 5);
  int pos = 0, neg = 0;
  for (const auto& t : mix.terms) {
    if (t.c > 0) {
      CHECK(t.c == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
      ++pos;
    } else {
      CHECK(t.c == doctest::Approx(-0.5).epsilon(1e-12));
      ++neg;
    }
  }
  CHECK(pos == 3);
  CHECK(neg == 2);
  CHECK(max_abs(reconstruct(mix) - target_witness(r, r)) < 1e-12);
}

TEST_CASE("onp reconstructs over random amplitudes") {
  Rng rng(401);
  for (int i = 0; i < 100; ++i) {
    double theta = 0.05 + rng.uniform() * (std::numbers::pi / 2.0 - 0.1);
    double alpha = std::cos(theta);
    double beta = std::sin(theta);
    if (i % 2 == 1) beta = -beta;
    PseudoMixture mix = onp_two_qubit(alpha, beta);
    CHECK(mix.terms.size() == 5);
    CHECK(max_abs(reconstruct(mix) - target_witness(alpha, beta)) < 1e-10);
    // 3 (|a|+|b|)^2/3 - 2 |ab| = a^2 + b^2 = 1
    CHECK(coefficient_sum(mix) == doctest::Approx(1.0).epsilon(1e-10));
    double negsum = 0.0;
    for (const auto& t : mix.terms) negsum += std::min(t.c, 0.0);
    CHECK(negsum < 0.0);
  }
}

TEST_CASE("onp unit-norm terms") {
  PseudoMixture mix = onp_two_qubit(0.8, 0.6);
  for (const auto& t : mix.terms) {
    CHECK(t.proj.e.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.proj.f.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("onp rejects degenerate amplitudes") {
  CHECK_THROWS_AS(onp_two_qubit(1.0, 0.0), Error);
  CHECK_THROWS_AS(onp_two_qubit(0.0, 1.0), Error);
  CHECK_THROWS_AS(onp_two_qubit(0.6, 0.6), Error);  // not normalized
}

TEST_CASE("ons three-setting weights") {
  SettingDecomposition dec = ons_two_qubit(0.8, 0.6);
  REQUIRE(dec.settings.size() == 3);
  // setting 0: z basis on both sides, aligned weights alpha^2, beta^2
  const Setting& z = dec.settings[0];
  CHECK(z.weights(0, 0) == doctest::Approx(0.64).epsilon(1e-12));
  CHECK(z.weights(1, 1) == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(z.weights(0, 1) == 0.0);
  CHECK(z.weights(1, 0) == 0.0);
  // setting 1: x basis, aligned weight alpha*beta
  const Setting& x = dec.settings[1];
  CHECK(x.weights(0, 0) == doctest::Approx(0.48).epsilon(1e-12));
  CHECK(x.weights(1, 1) == doctest::Approx(0.48).epsilon(1e-12));
  CHECK(x.weights(0, 1) == 0.0);
  // setting 2: y basis, crossed weight -alpha*beta
  const Setting& y = dec.settings[2];
  CHECK(y.weights(0, 1) == doctest::Approx(-0.48).epsilon(1e-12));
  CHECK(y.weights(1, 0) == doctest::Approx(-0.48).epsilon(1e-12));
  CHECK(y.weights(0, 0) == 0.0);
  CHECK(max_abs(reconstruct(dec) - target_witness(0.8, 0.6)) < 1e-12);
}

TEST_CASE("ons reconstructs over random amplitudes") {
  Rng rng(402);
  for (int i = 0; i < 100; ++i) {
    double theta = 0.05 + rng.uniform() * (std::numbers::pi / 2.0 - 0.1);
    double alpha = std::cos(theta);
    double beta = std::sin(theta);
    if (i % 2 == 1) beta = -beta;
    SettingDecomposition dec = ons_two_qubit(alpha, beta);
    CHECK(dec.settings.size() == 3);
    CHECK(max_abs(reconstruct(dec) - target_witness(alpha, beta)) < 1e-12);
    for (const auto& s : dec.settings) {
      CHECK(std::abs(s.basis_a[0].dot(s.basis_a[1])) < 1e-12);
      CHECK(std::abs(s.basis_b[0].dot(s.basis_b[1])) < 1e-12);
    }
  }
}

TEST_CASE("ons degenerate beta collapses to one setting") {
  SettingDecomposition dec = ons_two_qubit(1.0, 0.0);
  CHECK(dec.settings.size() == 1);
  CHECK(max_abs(reconstruct(dec) - target_witness(1.0, 0.0)) < 1e-12);
}

TEST_CASE("sign flip of beta preserves structure") {
  PseudoMixture plus = onp_two_qubit(0.8, 0.6);
  PseudoMixture minus = onp_two_qubit(0.8, -0.6);
  CHECK(plus.terms.size() == minus.terms.size());
  CHECK(max_abs(reconstruct(minus) - target_witness(0.8, -0.6)) < 1e-10);
  SettingDecomposition dm = ons_two_qubit(0.8, -0.6);
  CHECK(dm.settings.size() == 3);
  CHECK(max_abs(reconstruct(dm) - target_witness(0.8, -0.6)) < 1e-12);
}

TEST_CASE("generic decomposition") {
  CMat w = canonical_two_qubit_witness();
  SettingDecomposition dec = generic_setting_decomposition(w, {2, 2});
  CHECK(max_abs(reconstruct(dec) - w) < 1e-10);

  SettingDecomposition id =
      generic_setting_decomposition(CMat::Identity(4, 4), {2, 2});
  CHECK(id.settings.size() == 1);
  CHECK(max_abs(reconstruct(id) - CMat::Identity(4, 4)) < 1e-12);

  Rng rng(403);
  for (int i = 0; i < 10; ++i) {
    CMat h = wkt::random_hermitian(6, rng);
    SettingDecomposition hd = generic_setting_decomposition(h, {2, 3});
    CHECK(max_abs(reconstruct(hd) - h) < 1e-9);
  }
}

TEST_CASE("merge settings is idempotent") {
  Rng rng(404);
  CMat h = wkt::random_hermitian(4, rng);
  SettingDecomposition dec = generic_setting_decomposition(h, {2, 2});
  SettingDecomposition once = merge_settings(dec);
  SettingDecomposition twice = merge_settings(once);
  CHECK(once.settings.size() == twice.settings.size());
  CHECK(max_abs(reconstruct(once) - h) < 1e-9);
  CHECK(max_abs(reconstruct(twice) - h) < 1e-9);
}

TEST_CASE("setting count and lower bound") {
  CMat w = canonical_two_qubit_witness();
  CHECK(settings_lower_bound(w, {2, 2}, true) == 3);
  double r = 1.0 / std::sqrt(2.0);
  SettingDecomposition dec = ons_two_qubit(r, r);
  CHECK(static_cast<int>(dec.settings.size()) ==
        settings_lower_bound(w, {2, 2}, true));
  CHECK(count_settings(onp_two_qubit(r, r)) == 4);

  SettingsBoundDetail detail = settings_lower_bound_detail(w, {2, 2}, true);
  CHECK(detail.correlation_rank == 3);
  CHECK(detail.rank_bound == 3);
  CHECK(detail.schmidt_bound == 3);
  CHECK(detail.bound == 3);
}

TEST_CASE("lower bound on a 3x3 operator") {
  CVec psi = CVec::Zero(9);
  psi(0) = psi(4) = psi(8) = 1.0 / std::sqrt(3.0);
  CMat proj = psi * psi.adjoint();
  CMat w = partial_transpose(proj, {3, 3}, Subsystem::A);
  CHECK(settings_lower_bound(w, {3, 3}, true) == 4);
  SettingsBoundDetail detail = settings_lower_bound_detail(w, {3, 3}, true);
  CHECK(detail.schmidt_bound == 4);
  CHECK(detail.bound >= detail.rank_bound);
}

TEST_CASE("generalized counts") {
  GeneralizationCounts c22 = generalization_counts(2, 2);
  CHECK(c22.onp_lower == 5);
  CHECK(c22.onp_upper == 5);
  CHECK(c22.ons_lower == 3);
  CHECK(c22.ons_upper == 3);
  GeneralizationCounts c33 = generalization_counts(3, 3);
  CHECK(c33.onp_lower == 9);
  CHECK(c33.onp_upper == 15);
  CHECK(c33.ons_lower == 4);
  CHECK(c33.ons_upper == 6);
  GeneralizationCounts c44 = generalization_counts(4, 4);
  CHECK(c44.ons_upper == 7);
  CHECK(c44.onp_lower == 16);
  CHECK(generalization_counts(2, 5).onp_lower == 5);
  CHECK(generalization_counts(5, 5).ons_upper == 10);
  CHECK_THROWS_AS(generalization_counts(1, 2), Error);
  CHECK_THROWS_AS(generalization_counts(3, 2), Error);
}

TEST_CASE("tiles witness pseudo-mixture") {
  double eps = 0.028;
  PseudoMixture mix = upb_witness_pseudomixture(eps);
  CHECK(mix.terms.size() == 10);
  CHECK(count_settings(mix) == 6);
  CHECK(max_abs(reconstruct(mix) - tiles_edge_op(eps)) < 1e-10);
  double negsum = 0.0;
  for (const auto& t : mix.terms) negsum += std::min(t.c, 0.0);
  CHECK(negsum == doctest::Approx(-5.0 * eps).epsilon(1e-12));

  // the unshifted prewitness needs only the five tile projectors
  PseudoMixture pre = upb_witness_pseudomixture(0.0);
  CHECK(pre.terms.size() == 5);
  CHECK(max_abs(reconstruct(pre) - tiles_edge_op(0.0)) < 1e-10);
}

TEST_CASE("tiles settings decomposition") {
  double eps = 0.028;
  SettingDecomposition dec = upb_witness_settings(eps);
  CHECK(dec.settings.size() == 6);
  CHECK(max_abs(reconstruct(dec) - tiles_edge_op(eps)) < 1e-10);
  for (const auto& s : dec.settings) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        cplx ga = s.basis_a[i].dot(s.basis_a[j]);
        cplx gb = s.basis_b[i].dot(s.basis_b[j]);
        double want = (i == j) ? 1.0 : 0.0;
        CHECK(std::abs(ga - want) < 1e-12);
        CHECK(std::abs(gb - want) < 1e-12);
      }
    }
  }
  CHECK(upb_witness_settings(0.0).settings.size() == 5);
}

TEST_CASE("tiles onp decomposition") {
  double eps_prime = 0.031;
  PseudoMixture mix = upb_onp_decomposition(eps_prime);
  CHECK(mix.terms.size() == 9);
  CHECK(count_settings(mix) == 5);
  CMat target = upb_onp_target(eps_prime);
  CHECK(max_abs(reconstruct(mix) - target) < 1e-10);
  DecompositionReport rep = verify_decomposition(target, mix);
  CHECK(rep.max_error < 1e-10);
  CHECK(rep.n_terms == 9);
  CHECK(rep.n_settings == 5);
}

TEST_CASE("onp denominator is positive definite") {
  CMat den = upb_onp_denominator();
  CHECK(max_abs(den - den.adjoint()) < 1e-14);
  CHECK(min_eigenvalue(den) > 1e-3);
}

TEST_CASE("verify_decomposition reports") {
  CMat w = canonical_two_qubit_witness();
  double r = 1.0 / std::sqrt(2.0);
  DecompositionReport rep = verify_decomposition(w, onp_two_qubit(r, -r));
  CHECK(rep.max_error < 1e-10);
  CHECK(rep.n_terms == 5);
  CHECK(rep.n_settings == 4);
  CHECK(rep.coeff_sum == doctest::Approx(1.0).epsilon(1e-10));

  DecompositionReport rep2 = verify_decomposition(w, ons_two_qubit(r, -r));
  CHECK(rep2.max_error < 1e-12);
  CHECK(rep2.n_settings == 3);
  CHECK(rep2.coeff_sum == doctest::Approx(1.0).epsilon(1e-12));

  // a deliberately wrong target is reported, not masked
  DecompositionReport bad =
      verify_decomposition(2.0 * w, ons_two_qubit(r, -r));
  CHECK(bad.max_error > 0.4);
}

}  // TEST_SUITE
