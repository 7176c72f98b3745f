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

#include "witnesskit/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "witnesskit/parallel.hpp"

namespace wk {

double expectation(const Witness& w, const BipartiteState& state) {
  if (!(w.dims == state.dims))
    throw Error("expectation: witness and state dims differ");
  return hs_inner(w.op, state.rho).real();
}

PEstimate estimate_p(double witness_mean, double a, double b) {
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0))
    throw Error("estimate_p: a and b must lie in (0, 1)");
  if (std::abs(a * a + b * b - 1.0) > 1e-9)
    throw Error("estimate_p: a^2 + b^2 must be 1");
  PEstimate e;
  e.value = (1.0 - 4.0 * witness_mean) / (1.0 + 4.0 * a * b);
  e.within_model = e.value >= 0.0 && e.value <= 1.0;
  return e;
}

WitnessReport classify(const Witness& w, double witness_mean,
                       std::optional<double> d) {
  if (d && *d < 0.0) throw Error("classify: d must be nonnegative");
  WitnessReport r;
  r.expectation = witness_mean;
  r.epsilon_used = w.provenance.epsilon;
  r.heuristic = w.kind == WitnessKind::shifted;
  if (r.heuristic) {
    r.verdict = witness_mean < 0.0 ? Verdict::entangled : Verdict::inconclusive;
    return r;
  }
  if (d && *d <= max_noise_radius()) r.tau = tau_bound(*d);
  if (witness_mean < -tol::ppt)
    r.verdict = Verdict::entangled;
  else if (r.tau && witness_mean >= *r.tau)
    r.verdict = Verdict::separable_certified;
  else
    r.verdict = Verdict::inconclusive;
  return r;
}

ShotEstimate simulate_measurement(const SettingDecomposition& sd,
                                  const BipartiteState& state,
                                  long shots_per_setting, Rng& rng) {
  if (shots_per_setting < 1)
    throw Error("simulate_measurement: shots must be at least 1");
  if (!(sd.dims == state.dims))
    throw Error("simulate_measurement: decomposition and state dims differ");
  if (sd.settings.empty())
    throw Error("simulate_measurement: no settings to measure");
  const int na = sd.dims.na, nb = sd.dims.nb;
  ShotEstimate est;
  est.shots_per_setting = shots_per_setting;
  est.n_settings = static_cast<int>(sd.settings.size());
  double var_total = 0.0;
  for (std::size_t si = 0; si < sd.settings.size(); ++si) {
    const Setting& s = sd.settings[si];
    if (static_cast<int>(s.basis_a.size()) != na ||
        static_cast<int>(s.basis_b.size()) != nb ||
        s.weights.rows() != na || s.weights.cols() != nb)
      throw Error("simulate_measurement: malformed setting");
    std::vector<double> probs(static_cast<std::size_t>(na) * nb);
    double total = 0.0;
    for (int k = 0; k < na; ++k)
      for (int l = 0; l < nb; ++l) {
        CVec v = kron_vec(s.basis_a[k], s.basis_b[l]);
        double p = (v.adjoint() * state.rho * v)(0, 0).real();
        if (p < 0.0) {
          if (p < -1e-9)
            throw Error("simulate_measurement: negative outcome probability");
          p = 0.0;
        }
        probs[static_cast<std::size_t>(k) * nb + l] = p;
        total += p;
      }
    if (std::abs(total - 1.0) > 1e-9)
      throw Error(
          "simulate_measurement: outcome probabilities do not sum to 1");
    Rng stream = rng.stream(si);
    std::vector<long> counts(probs.size(), 0);
    for (long shot = 0; shot < shots_per_setting; ++shot)
      ++counts[static_cast<std::size_t>(stream.categorical(probs))];
    double weighted = 0.0, weighted_sq = 0.0;
    for (int k = 0; k < na; ++k)
      for (int l = 0; l < nb; ++l) {
        double w = s.weights(k, l);
        double c = static_cast<double>(counts[static_cast<std::size_t>(k) * nb + l]);
        weighted += w * c;
        weighted_sq += w * w * c;
      }
    double mean_s = weighted / static_cast<double>(shots_per_setting);
    double second_s = weighted_sq / static_cast<double>(shots_per_setting);
    double var_s =
        (second_s - mean_s * mean_s) / static_cast<double>(shots_per_setting);
    if (var_s < 0.0) var_s = 0.0;
    est.mean += mean_s;
    var_total += var_s;
  }
  est.std_error = std::sqrt(var_total);
  return est;
}

namespace {

std::pair<double, double> wilson95(long errors, long total) {
  if (total <= 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  const double n = static_cast<double>(total);
  const double phat = static_cast<double>(errors) / n;
  const double denom = 1.0 + z * z / n;
  const double center = (phat + z * z / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n)) / denom;
  double lo = center - half, hi = center + half;
  return {std::max(0.0, lo), std::min(1.0, hi)};
}

}  // namespace

ErrorStudyResult mc_error_study(std::span<const double> d_values,
                                std::span<const double> eps_grid,
                                long n_samples, const McStudyOptions& options,
                                Rng& rng) {
  if (d_values.empty() || eps_grid.empty())
    throw Error("mc_error_study: empty grid");
  if (n_samples < 1) throw Error("mc_error_study: need at least one sample");
  if (options.p_bins < 1) throw Error("mc_error_study: need at least one bin");
  for (double d : d_values)
    if (d < 0.0 || d > max_noise_radius())
      throw Error("mc_error_study: d must lie in [0, 1/sqrt(12)]");
  for (double e : eps_grid)
    if (e < 0.0) throw Error("mc_error_study: eps must be nonnegative");

  const Witness w{canonical_two_qubit_witness(), {2, 2},
                  WitnessKind::npt_eigvec,
                  {"canonical two-qubit witness", 0, 0.0}};
  const int bins = options.p_bins;
  const int workers = worker_count(options.workers);
  ErrorStudyResult result;

  for (std::size_t di = 0; di < d_values.size(); ++di) {
    const double d = d_values[di];
    std::vector<std::pair<double, double>> cell_errors;  // (eps, max rate)
    for (std::size_t ei = 0; ei < eps_grid.size(); ++ei) {
      const double eps = eps_grid[ei];
      const std::uint64_t cell =
          (static_cast<std::uint64_t>(di) * eps_grid.size() + ei) *
          static_cast<std::uint64_t>(n_samples);
      std::vector<int> bin_of(static_cast<std::size_t>(n_samples));
      std::vector<unsigned char> err_of(static_cast<std::size_t>(n_samples));
      parallel_for(n_samples, workers, [&](long i) {
        Rng stream = rng.stream(cell + static_cast<std::uint64_t>(i));
        Form1Sample sample = sample_form1(d, stream);
        const bool truth =
            min_eigenvalue(partial_transpose(sample.state.rho,
                                             sample.state.dims,
                                             Subsystem::A)) < -tol::ppt;
        const double mean = expectation(w, sample.state) - eps;
        const bool predicted = mean < 0.0;
        int b = static_cast<int>(sample.p * bins);
        if (b >= bins) b = bins - 1;
        bin_of[static_cast<std::size_t>(i)] = b;
        err_of[static_cast<std::size_t>(i)] = predicted != truth ? 1 : 0;
      });
      std::vector<long> errors(static_cast<std::size_t>(bins), 0);
      std::vector<long> totals(static_cast<std::size_t>(bins), 0);
      for (long i = 0; i < n_samples; ++i) {
        ++totals[static_cast<std::size_t>(bin_of[static_cast<std::size_t>(i)])];
        errors[static_cast<std::size_t>(bin_of[static_cast<std::size_t>(i)])] +=
            err_of[static_cast<std::size_t>(i)];
      }
      int worst = -1;
      double worst_rate = 0.0;
      for (int b = 0; b < bins; ++b) {
        const long tot = totals[static_cast<std::size_t>(b)];
        ErrorStudyRow row;
        row.d = d;
        row.epsilon = eps;
        row.p_bin = (b + 0.5) / static_cast<double>(bins);
        row.n_samples = tot;
        row.error_rate =
            tot > 0 ? static_cast<double>(errors[static_cast<std::size_t>(b)]) /
                          static_cast<double>(tot)
                    : 0.0;
        result.rows.push_back(row);
        if (tot > 0 && (worst < 0 || row.error_rate > worst_rate)) {
          worst = b;
          worst_rate = row.error_rate;
        }
      }
      ErrorStudySummary summary;
      summary.d = d;
      summary.epsilon = eps;
      summary.max_over_p = worst >= 0 ? worst_rate : 0.0;
      if (worst >= 0) {
        auto [lo, hi] = wilson95(errors[static_cast<std::size_t>(worst)],
                                 totals[static_cast<std::size_t>(worst)]);
        summary.wilson_low = lo;
        summary.wilson_high = hi;
      }
      summary.n_samples = n_samples;
      result.summaries.push_back(summary);
      cell_errors.emplace_back(eps, summary.max_over_p);
    }
    double best_eps = cell_errors.front().first;
    double best_rate = cell_errors.front().second;
    for (const auto& [eps, rate] : cell_errors)
      if (rate < best_rate) {
        best_rate = rate;
        best_eps = eps;
      }
    result.eps_star.emplace_back(d, best_eps);
  }
  return result;
}

double upb_noise_threshold(double eps) {
  if (!(eps > 0.0 && eps <= 5.0 / 9.0))
    throw Error("upb_noise_threshold: eps must lie in (0, 5/9]");
  return 1.0 - 9.0 * eps / 5.0;
}

QuadraticFit quadratic_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3)
    throw Error("quadratic_fit: need at least three points");
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  RMat a(n, 3);
  RVec y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = points[static_cast<std::size_t>(i)].first;
    a(i, 0) = 1.0;
    a(i, 1) = x;
    a(i, 2) = x * x;
    y(i) = points[static_cast<std::size_t>(i)].second;
  }
  RVec c = a.colPivHouseholderQr().solve(y);
  QuadraticFit fit;
  fit.c0 = c(0);
  fit.c1 = c(1);
  fit.c2 = c(2);
  const double mean = y.mean();
  double ss_tot = 0.0, ss_res = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = y(i) - (a.row(i) * c)(0);
    ss_res += r * r;
    ss_tot += (y(i) - mean) * (y(i) - mean);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace wk
