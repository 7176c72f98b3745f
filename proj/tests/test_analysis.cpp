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

#include <array>
#include <cmath>

#include "helpers.hpp"
#include "witnesskit/analysis.hpp"
#include "witnesskit/opalg.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/witness.hpp"

using namespace wk;

TEST_SUITE("analysis") {

TEST_CASE("expectation equals the minimal PT eigenvalue") {
  Rng rng(501);
  int found = 0;
  while (found < 100) {
    BipartiteState rho = wkt::random_state({2, 2}, rng);
    CMat pt = partial_transpose(rho.rho, rho.dims, Subsystem::A);
    double lmin = min_eigenvalue(pt);
    if (lmin >= -1e-8) continue;
    ++found;
    Witness w = witness_from_npt(rho);
    CHECK(expectation(w, rho) == doctest::Approx(lmin).epsilon(1e-10));
  }
}

TEST_CASE("p estimate inverts the noisy-target mean") {
  double a = 0.8, b = 0.6;
  CVec psi = target_ket(a);
  for (double p : {0.0, 0.3, 1.0 / 2.92, 0.7, 1.0}) {
    BipartiteState rho = noisy_target(psi, p, maximally_mixed({2, 2}));
    double mean = hs_inner(canonical_two_qubit_witness(), rho.rho).real();
    PEstimate est = estimate_p(mean, a, b);
    CHECK(est.within_model);
    CHECK(est.value == doctest::Approx(p).epsilon(1e-12));
  }
  // the vanishing-mean crossing sits at p = 1 / (1 + 4ab)
  PEstimate zero = estimate_p(0.0, a, b);
  CHECK(zero.value == doctest::Approx(1.0 / 2.92).epsilon(1e-12));
  // means outside the physical window flag the estimate
  CHECK_FALSE(estimate_p(0.3, a, b).within_model);
  CHECK_FALSE(estimate_p(-0.6, a, b).within_model);
}

TEST_CASE("classify verdicts") {
  CVec psi = target_ket(1.0 / std::sqrt(2.0));
  Witness w = witness_from_npt(noisy_target(psi, 1.0, maximally_mixed({2, 2})));

  WitnessReport neg = classify(w, -0.2, std::nullopt);
  CHECK(neg.verdict == Verdict::entangled);
  CHECK_FALSE(neg.heuristic);
  CHECK_FALSE(neg.tau.has_value());

  WitnessReport pos = classify(w, 0.1, std::nullopt);
  CHECK(pos.verdict == Verdict::inconclusive);

  // a separability certificate needs the noise radius
  double d = 0.1;
  double t = tau_bound(d);
  WitnessReport cert = classify(w, t + 0.01, d);
  CHECK(cert.verdict == Verdict::separable_certified);
  CHECK(cert.tau.has_value());
  CHECK(*cert.tau == doctest::Approx(t).epsilon(1e-14));
  WitnessReport below = classify(w, t / 2.0, d);
  CHECK(below.verdict == Verdict::inconclusive);

  // tiny negative means stay inconclusive for exact witnesses
  CHECK(classify(w, -1e-14, std::nullopt).verdict == Verdict::inconclusive);

  // shifted witnesses flip to the heuristic sign rule
  Witness s = shifted_witness(w, 0.03);
  WitnessReport h = classify(s, -1e-14, std::nullopt);
  CHECK(h.verdict == Verdict::entangled);
  CHECK(h.heuristic);
  CHECK(h.epsilon_used == doctest::Approx(0.03));
  WitnessReport hd = classify(s, 0.5, 0.1);
  CHECK(hd.verdict == Verdict::inconclusive);  // no certificate when shifted
  CHECK_FALSE(hd.tau.has_value());

  CHECK_THROWS_AS(classify(w, 0.0, -0.1), Error);
  // beyond the bound's radius no certificate is available
  WitnessReport far = classify(w, 0.9, 0.5);
  CHECK_FALSE(far.tau.has_value());
  CHECK(far.verdict == Verdict::inconclusive);
}

TEST_CASE("simulated means track the exact value") {
  CVec psi = target_ket(1.0 / std::sqrt(2.0));
  BipartiteState rho = noisy_target(psi, 0.7, maximally_mixed({2, 2}));
  SettingDecomposition dec =
      ons_two_qubit(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  double exact = hs_inner(reconstruct(dec), rho.rho).real();
  Rng master(502);
  int within = 0;
  const int reps = 500;
  for (int r = 0; r < reps; ++r) {
    Rng stream = master.stream(static_cast<std::uint64_t>(r));
    ShotEstimate est = simulate_measurement(dec, rho, 2000, stream);
    CHECK(est.n_settings == 3);
    CHECK(est.shots_per_setting == 2000);
    CHECK(est.std_error > 0.0);
    if (std::abs(est.mean - exact) < 5.0 * est.std_error) ++within;
  }
  CHECK(within >= 490);
}

TEST_CASE("single-shot simulation stays in range") {
  CVec psi = target_ket(0.8);
  BipartiteState rho = noisy_target(psi, 0.9, maximally_mixed({2, 2}));
  SettingDecomposition dec = ons_two_qubit(0.8, 0.6);
  Rng rng(503);
  ShotEstimate est = simulate_measurement(dec, rho, 1, rng);
  CHECK(std::isfinite(est.mean));
  CHECK(est.shots_per_setting == 1);
  CHECK_THROWS_AS(simulate_measurement(dec, rho, 0, rng), Error);
}

TEST_CASE("simulation is deterministic per seed") {
  CVec psi = target_ket(0.8);
  BipartiteState rho = noisy_target(psi, 0.9, maximally_mixed({2, 2}));
  SettingDecomposition dec = ons_two_qubit(0.8, 0.6);
  Rng r1(504), r2(504);
  ShotEstimate a = simulate_measurement(dec, rho, 1000, r1);
  ShotEstimate b = simulate_measurement(dec, rho, 1000, r2);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("error study at zero noise has zero error") {
  std::array<double, 1> ds{0.0};
  std::array<double, 3> eps{0.0, 0.01, 0.02};
  McStudyOptions opts;
  Rng rng(505);
  ErrorStudyResult res = mc_error_study(ds, eps, 2000, opts, rng);
  REQUIRE(!res.summaries.empty());
  for (const auto& row : res.rows) {
    if (row.epsilon == 0.0) CHECK(row.error_rate == 0.0);
  }
  REQUIRE(res.eps_star.size() == 1);
  CHECK(res.eps_star[0].first == 0.0);
  CHECK(res.eps_star[0].second == 0.0);
  for (const auto& s : res.summaries) {
    CHECK(s.wilson_low <= s.max_over_p + 1e-15);
    CHECK(s.max_over_p <= s.wilson_high + 1e-15);
    CHECK(s.wilson_high <= 1.0);
    CHECK(s.wilson_low >= 0.0);
  }
}

TEST_CASE("error study is deterministic and worker-independent") {
  std::array<double, 2> ds{0.0, 0.2};
  std::array<double, 3> eps{0.0, 0.02, 0.04};
  McStudyOptions serial;
  serial.workers = 1;
  McStudyOptions parallel;
  parallel.workers = 4;
  Rng r1(506), r2(506);
  ErrorStudyResult a = mc_error_study(ds, eps, 1500, serial, r1);
  ErrorStudyResult b = mc_error_study(ds, eps, 1500, parallel, r2);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].error_rate == b.rows[i].error_rate);
    CHECK(a.rows[i].n_samples == b.rows[i].n_samples);
  }
  REQUIRE(a.summaries.size() == b.summaries.size());
  for (std::size_t i = 0; i < a.summaries.size(); ++i)
    CHECK(a.summaries[i].max_over_p == b.summaries[i].max_over_p);
  REQUIRE(a.eps_star.size() == b.eps_star.size());
  for (std::size_t i = 0; i < a.eps_star.size(); ++i)
    CHECK(a.eps_star[i].second == b.eps_star[i].second);
}

TEST_CASE("error study rejects bad input") {
  std::array<double, 1> ds{0.5};  // beyond 1/sqrt(12)
  std::array<double, 1> eps{0.0};
  McStudyOptions opts;
  Rng rng(507);
  CHECK_THROWS_AS(mc_error_study(ds, eps, 100, opts, rng), Error);
  std::array<double, 1> good{0.1};
  CHECK_THROWS_AS(mc_error_study(good, eps, 0, opts, rng), Error);
}

TEST_CASE("tiles noise threshold") {
  CHECK(upb_noise_threshold(0.028416213335730325) ==
        doctest::Approx(0.9488508159956854).epsilon(1e-15));
  CHECK_THROWS_AS(upb_noise_threshold(0.0), Error);
  CHECK_THROWS_AS(upb_noise_threshold(-0.01), Error);
  CHECK_THROWS_AS(upb_noise_threshold(0.6), Error);
  // the threshold certifies detection: p slightly above flips the sign
  double eps = 0.028;
  double pc = upb_noise_threshold(eps);
  BipartiteState rho = upb_rho_be();
  CMat p = upb_kernel_projector();
  CMat q = kernel_projector(partial_transpose(rho.rho, rho.dims,
                                              Subsystem::A));
  Witness w = edge_witness(p, q, eps, rho.dims);
  for (double delta : {-0.01, 0.01}) {
    double weight = pc + delta;
    BipartiteState mixed = BipartiteState::make(
        weight * rho.rho +
            (1.0 - weight) / 9.0 * CMat::Identity(9, 9),
        rho.dims);
    double mean = expectation(w, mixed);
    CHECK((mean < 0.0) == (delta > 0.0));
  }
}

TEST_CASE("quadratic fit recovers exact quadratics") {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i <= 10; ++i) {
    double x = 0.1 * i;
    pts.push_back({x, 2.0 - 3.0 * x + 1.5 * x * x});
  }
  QuadraticFit fit = quadratic_fit(pts);
  CHECK(fit.c0 == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.c1 == doctest::Approx(-3.0).epsilon(1e-10));
  CHECK(fit.c2 == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(quadratic_fit(std::span<const std::pair<double, double>>(
                      pts.data(), 2)),
                  Error);
}

}  // TEST_SUITE
