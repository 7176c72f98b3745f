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
#include <string>

#include "helpers.hpp"
#include "witnesskit/analysis.hpp"
#include "witnesskit/decomp.hpp"
#include "witnesskit/serialize.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/witness.hpp"

using namespace wk;
using wkt::max_abs;

namespace {

Witness sample_witness() {
  CVec psi = target_ket(1.0 / std::sqrt(2.0));
  return witness_from_npt(noisy_target(psi, 0.8, maximally_mixed({2, 2})));
}

}  // namespace

TEST_SUITE("serialize") {

TEST_CASE("matrix round-trip is bit exact") {
  Rng rng(601);
  for (int i = 0; i < 20; ++i) {
    CMat m = wkt::random_hermitian(4, rng);
    json j = matrix_to_json(m, BipartiteDims{2, 2});
    std::optional<BipartiteDims> dims;
    CMat back = matrix_from_json(j, &dims);
    CHECK(max_abs(back - m) == 0.0);
    REQUIRE(dims.has_value());
    CHECK(dims->na == 2);
    CHECK(dims->nb == 2);
  }
  // negative zero survives the trip
  CMat z = CMat::Zero(2, 2);
  z(0, 1) = cplx(-0.0, -0.0);
  CMat back = matrix_from_json(matrix_to_json(z));
  CHECK(std::signbit(back(0, 1).real()));
  CHECK(std::signbit(back(0, 1).imag()));
  // dims stay optional
  std::optional<BipartiteDims> none;
  matrix_from_json(matrix_to_json(z), &none);
  CHECK_FALSE(none.has_value());
}

TEST_CASE("matrix schema violations throw") {
  CMat m = canonical_two_qubit_witness();
  json good = matrix_to_json(m);
  json j = good;
  j.erase("dim");
  CHECK_THROWS_AS(matrix_from_json(j), Error);
  j = good;
  j.erase("entries");
  CHECK_THROWS_AS(matrix_from_json(j), Error);
  j = good;
  j["entries"].erase(0);
  CHECK_THROWS_AS(matrix_from_json(j), Error);  // wrong entry count
  j = good;
  j["entries"][0] = json::array({1.0});
  CHECK_THROWS_AS(matrix_from_json(j), Error);  // pair expected
  j = good;
  j["entries"][0][0] = "x";
  CHECK_THROWS_AS(matrix_from_json(j), Error);
  j = good;
  j["dim"] = 0;
  CHECK_THROWS_AS(matrix_from_json(j), Error);
  j = good;
  j["dims"] = json::array({3, 2});
  CHECK_THROWS_AS(matrix_from_json(j), Error);  // dims product mismatch
  j = good;
  j["dims"] = json::array({4, 0});
  CHECK_THROWS_AS(matrix_from_json(j), Error);
  CHECK_THROWS_AS(matrix_from_json(json::array()), Error);
}

TEST_CASE("ket round-trip") {
  Rng rng(602);
  CVec v = rng.haar_ket(5);
  CVec back = ket_from_json(ket_to_json(v));
  CHECK(max_abs(back - v) == 0.0);
  json j = ket_to_json(v);
  j["entries"][2] = json::array({1.0, 2.0, 3.0});
  CHECK_THROWS_AS(ket_from_json(j), Error);
}

TEST_CASE("state round-trip enforces dims") {
  Rng rng(603);
  BipartiteState s = wkt::random_state({2, 3}, rng);
  BipartiteState back = state_from_json(state_to_json(s));
  CHECK(max_abs(back.rho - s.rho) == 0.0);
  CHECK(back.dims == s.dims);
  json j = state_to_json(s);
  j.erase("dims");
  CHECK_THROWS_AS(state_from_json(j), Error);
  // a non-state matrix is rejected by validation
  json bad = state_to_json(s);
  bad["entries"][0][0] = 5.0;
  CHECK_THROWS_AS(state_from_json(bad), Error);
}

TEST_CASE("witness kinds") {
  for (WitnessKind k : {WitnessKind::npt_eigvec, WitnessKind::edge,
                        WitnessKind::shifted, WitnessKind::prewitness}) {
    CHECK(kind_from_name(kind_name(k)) == k);
  }
  CHECK_THROWS_AS(kind_from_name("bogus"), Error);
}

TEST_CASE("witness round-trip keeps provenance") {
  Witness w = sample_witness();
  Witness s = shifted_witness(w, 0.04);
  json j = witness_to_json(s);
  Witness back = witness_from_json(j);
  CHECK(max_abs(back.op - s.op) == 0.0);
  CHECK(back.kind == s.kind);
  CHECK(back.dims == s.dims);
  CHECK(back.provenance.state_hash == s.provenance.state_hash);
  CHECK(back.provenance.epsilon == s.provenance.epsilon);
  CHECK(back.provenance.source == s.provenance.source);

  // the hash travels as a hex string
  CHECK(j["provenance"]["state_hash"].is_string());
  json bad = j;
  bad["provenance"]["state_hash"] = "not-hex";
  CHECK_THROWS_AS(witness_from_json(bad), Error);
  bad = j;
  bad["kind"] = "bogus";
  CHECK_THROWS_AS(witness_from_json(bad), Error);
  bad = j;
  bad["entries"][1] = json::array({0.5, 0.5});
  CHECK_THROWS_AS(witness_from_json(bad), Error);  // no longer hermitian
}

TEST_CASE("pseudo-mixture round-trip") {
  PseudoMixture mix = upb_witness_pseudomixture(0.028);
  json j = pseudo_mixture_to_json(mix);
  PseudoMixture back = pseudo_mixture_from_json(j);
  REQUIRE(back.terms.size() == mix.terms.size());
  CHECK(back.dims == mix.dims);
  for (std::size_t i = 0; i < mix.terms.size(); ++i) {
    CHECK(back.terms[i].c == mix.terms[i].c);
    CHECK(max_abs(back.terms[i].proj.e - mix.terms[i].proj.e) == 0.0);
    CHECK(max_abs(back.terms[i].proj.f - mix.terms[i].proj.f) == 0.0);
  }
  REQUIRE(!j["terms"].empty());
  CHECK(j["terms"][0].contains("c"));
  CHECK(j["terms"][0].contains("a"));
  CHECK(j["terms"][0].contains("b"));
  json bad = j;
  bad["terms"][0].erase("c");
  CHECK_THROWS_AS(pseudo_mixture_from_json(bad), Error);
}

TEST_CASE("settings round-trip") {
  SettingDecomposition dec = upb_witness_settings(0.028);
  json j = settings_to_json(dec);
  SettingDecomposition back = settings_from_json(j);
  REQUIRE(back.settings.size() == dec.settings.size());
  CHECK(back.dims == dec.dims);
  for (std::size_t i = 0; i < dec.settings.size(); ++i) {
    CHECK(max_abs(back.settings[i].weights - dec.settings[i].weights) == 0.0);
    for (int k = 0; k < dec.dims.na; ++k)
      CHECK(max_abs(back.settings[i].basis_a[k] -
                    dec.settings[i].basis_a[k]) == 0.0);
    for (int l = 0; l < dec.dims.nb; ++l)
      CHECK(max_abs(back.settings[i].basis_b[l] -
                    dec.settings[i].basis_b[l]) == 0.0);
  }
  json bad = j;
  bad["settings"][0]["weights"][0] = json::array({1.0});
  CHECK_THROWS_AS(settings_from_json(bad), Error);
}

TEST_CASE("verdict names") {
  for (Verdict v : {Verdict::entangled, Verdict::separable_certified,
                    Verdict::inconclusive}) {
    CHECK(verdict_from_name(verdict_name(v)) == v);
  }
  CHECK_THROWS_AS(verdict_from_name(""), Error);
}

TEST_CASE("witness report round-trip") {
  WitnessReport r;
  r.expectation = -0.123456789123456789;
  r.verdict = Verdict::entangled;
  r.heuristic = true;
  r.tau = 0.03;
  r.epsilon_used = 0.01;
  r.p_estimate = 0.95;
  WitnessReport back = report_from_json(report_to_json(r));
  CHECK(back.expectation == r.expectation);
  CHECK(back.verdict == r.verdict);
  CHECK(back.heuristic == r.heuristic);
  CHECK(back.tau == r.tau);
  CHECK(back.epsilon_used == r.epsilon_used);
  CHECK(back.p_estimate == r.p_estimate);

  WitnessReport bare;
  bare.expectation = 0.25;
  WitnessReport b2 = report_from_json(report_to_json(bare));
  CHECK_FALSE(b2.tau.has_value());
  CHECK_FALSE(b2.p_estimate.has_value());
}

TEST_CASE("shot estimate round-trip") {
  ShotEstimate e;
  e.mean = -0.499999999999999;
  e.std_error = 1.234e-5;
  e.shots_per_setting = 1000000;
  e.n_settings = 3;
  ShotEstimate back = shot_estimate_from_json(shot_estimate_to_json(e));
  CHECK(back.mean == e.mean);
  CHECK(back.std_error == e.std_error);
  CHECK(back.shots_per_setting == e.shots_per_setting);
  CHECK(back.n_settings == e.n_settings);
}

TEST_CASE("decomposition report round-trip") {
  DecompositionReport r;
  r.max_error = 3.3e-16;
  r.coeff_sum = -0.75;
  r.n_terms = 9;
  r.n_settings = 5;
  DecompositionReport back =
      decomposition_report_from_json(decomposition_report_to_json(r));
  CHECK(back.max_error == r.max_error);
  CHECK(back.coeff_sum == r.coeff_sum);
  CHECK(back.n_terms == r.n_terms);
  CHECK(back.n_settings == r.n_settings);
}

TEST_CASE("epsilon result round-trip") {
  Rng rng(604);
  EpsilonResult r;
  r.value = 0.028416213335730325;
  r.argmin = {rng.haar_ket(3), rng.haar_ket(3)};
  r.restarts_used = 200;
  r.converged = true;
  EpsilonResult back = epsilon_result_from_json(epsilon_result_to_json(r));
  CHECK(back.value == r.value);
  CHECK(max_abs(back.argmin.e - r.argmin.e) == 0.0);
  CHECK(max_abs(back.argmin.f - r.argmin.f) == 0.0);
  CHECK(back.restarts_used == r.restarts_used);
  CHECK(back.converged == r.converged);
}

TEST_CASE("counts round-trip") {
  GeneralizationCounts c = generalization_counts(3, 4);
  GeneralizationCounts back = counts_from_json(counts_to_json(c));
  CHECK(back.onp_lower == c.onp_lower);
  CHECK(back.onp_upper == c.onp_upper);
  CHECK(back.ons_lower == c.ons_lower);
  CHECK(back.ons_upper == c.ons_upper);
}

TEST_CASE("tau report round-trip") {
  TauReport r{0.2, tau_bound(0.2), max_noise_radius()};
  TauReport back = tau_report_from_json(tau_report_to_json(r));
  CHECK(back.d == r.d);
  CHECK(back.tau == r.tau);
  CHECK(back.max_radius == r.max_radius);
}

TEST_CASE("upb report round-trip") {
  double eps = 0.028, eps_prime = 0.031;
  BipartiteState rho = upb_rho_be();
  CMat p = upb_kernel_projector();
  CMat q = kernel_projector(partial_transpose(rho.rho, rho.dims,
                                              Subsystem::A));
  UpbReport r;
  r.epsilon = eps;
  r.epsilon_source = "given";
  r.epsilon_prime = eps_prime;
  r.epsilon_prime_source = "given";
  r.threshold = upb_noise_threshold(eps);
  r.witness = edge_witness(p, q, eps, rho.dims);
  r.mixture = upb_witness_pseudomixture(eps);
  r.settings = upb_witness_settings(eps);
  r.onp = upb_onp_decomposition(eps_prime);
  r.mixture_check = verify_decomposition(r.witness.op, r.mixture);
  r.settings_check = verify_decomposition(r.witness.op, r.settings);
  r.onp_check = verify_decomposition(upb_onp_target(eps_prime), r.onp);

  UpbReport back = upb_report_from_json(upb_report_to_json(r));
  CHECK(back.epsilon == r.epsilon);
  CHECK(back.epsilon_source == r.epsilon_source);
  CHECK(back.epsilon_prime == r.epsilon_prime);
  CHECK(back.epsilon_prime_source == r.epsilon_prime_source);
  CHECK(back.threshold == r.threshold);
  CHECK(max_abs(back.witness.op - r.witness.op) == 0.0);
  CHECK(back.mixture.terms.size() == r.mixture.terms.size());
  CHECK(back.settings.settings.size() == r.settings.settings.size());
  CHECK(back.onp.terms.size() == r.onp.terms.size());
  CHECK(back.mixture_check.max_error == r.mixture_check.max_error);
  CHECK(back.settings_check.n_settings == r.settings_check.n_settings);
  CHECK(back.onp_check.coeff_sum == r.onp_check.coeff_sum);

  json j = upb_report_to_json(r);
  j.erase("threshold");
  CHECK_THROWS_AS(upb_report_from_json(j), Error);
}

TEST_CASE("json text is deterministic") {
  Witness w = sample_witness();
  std::string a = witness_to_json(w).dump(2);
  std::string b = witness_to_json(w).dump(2);
  CHECK(a == b);
  Witness back = witness_from_json(json::parse(a));
  CHECK(witness_to_json(back).dump(2) == a);
}

TEST_CASE("format_double shortest round-trip") {
  for (double x : {0.0, -0.0, 1.0 / 3.0, 0.1, -2.5e-300, 1e21,
                   0.028416213335730325, -0.4999999999999999}) {
    std::string s = format_double(x);
    double back = std::stod(s);
    CHECK(back == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-1.0) == "-1");
}

}  // TEST_SUITE
