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

#ifndef WITNESSKIT_ANALYSIS_HPP
#define WITNESSKIT_ANALYSIS_HPP

#include <optional>
#include <span>
#include <vector>

#include "witnesskit/decomp.hpp"

namespace wk {

enum class Verdict { entangled, separable_certified, inconclusive };

// Tr(W rho)
double expectation(const Witness& w, const BipartiteState& state);

struct PEstimate {
  double value = 0.0;
  bool within_model = false;  // false when the estimate leaves [0, 1]
};

// Inverts Tr(W rho) = (1 - p(1 + 4ab))/4 for the target-plus-white-noise
// family; out-of-window results are flagged, not errors.
PEstimate estimate_p(double witness_mean, double a, double b);

struct WitnessReport {
  double expectation = 0.0;
  Verdict verdict = Verdict::inconclusive;
  bool heuristic = false;  // shifted witness: sign rule only
  std::optional<double> tau;
  double epsilon_used = 0.0;
  std::optional<double> p_estimate;
};

// Verdict from a measured witness mean. Negative means detect entanglement
// (strictly below -1e-12 for unshifted witnesses, below 0 for shifted
// ones). A separability certificate (mean >= tau(d)) applies only when the
// noise radius d is given, d <= 1/sqrt(12), and the witness is not shifted.
WitnessReport classify(const Witness& w, double witness_mean,
                       std::optional<double> d);

struct ShotEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long shots_per_setting = 0;
  int n_settings = 0;
};

// Finite-statistics estimate of the decomposed observable: every setting is
// sampled shots_per_setting times from its outcome distribution under
// `state`, outcome frequencies replace the probabilities in the weighted
// sum. Standard error from the per-setting empirical variances.
ShotEstimate simulate_measurement(const SettingDecomposition& sd,
                                  const BipartiteState& state,
                                  long shots_per_setting, Rng& rng);

struct ErrorStudyRow {
  double d = 0.0;
  double epsilon = 0.0;
  double p_bin = 0.0;  // bin midpoint
  double error_rate = 0.0;
  long n_samples = 0;  // samples that fell into this bin
};

struct ErrorStudySummary {
  double d = 0.0;
  double epsilon = 0.0;
  double max_over_p = 0.0;  // worst bin misclassification rate
  double wilson_low = 0.0;  // 95% Wilson interval of the worst bin
  double wilson_high = 0.0;
  long n_samples = 0;
};

struct ErrorStudyResult {
  std::vector<ErrorStudyRow> rows;
  std::vector<ErrorStudySummary> summaries;
  // per d: the grid epsilon minimizing the worst-bin error (ties: smaller)
  std::vector<std::pair<double, double>> eps_star;
};

struct McStudyOptions {
  int p_bins = 50;
  int workers = 0;
};

// Detection-error study for the canonical witness under bounded preparation
// noise: draws fresh target-plus-noise samples for every (d, eps) grid
// cell, classifies by the sign of (mean - eps) against the PPT ground
// truth, and reports misclassification rates per p-bin. Deterministic for
// a fixed seed, independent of worker count.
ErrorStudyResult mc_error_study(std::span<const double> d_values,
                                std::span<const double> eps_grid,
                                long n_samples, const McStudyOptions& options,
                                Rng& rng);

// Critical white-noise weight above which the shifted tiles witness detects
// the bound entangled state: p > 1 - 9 eps / 5.
double upb_noise_threshold(double eps);

struct QuadraticFit {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double r_squared = 1.0;
};

// Least-squares fit y = c0 + c1 x + c2 x^2; used to summarize eps*(d).
QuadraticFit quadratic_fit(std::span<const std::pair<double, double>> points);

}  // namespace wk

#endif
