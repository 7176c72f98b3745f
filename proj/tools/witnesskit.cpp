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

// Command-line front end.
//
// Subcommands: witness (construct | epsilon | tau), decompose, verify,
// analyze, measure, mc-study, upb, bounds. Primary output is JSON (or CSV
// for mc-study) on stdout, or in the --out file with a one-line summary on
// stdout. Errors leave as structured JSON on stderr: exit 2 for usage
// errors, 1 for domain errors.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "witnesskit/analysis.hpp"
#include "witnesskit/decomp.hpp"
#include "witnesskit/opalg.hpp"
#include "witnesskit/rng.hpp"
#include "witnesskit/serialize.hpp"
#include "witnesskit/states.hpp"
#include "witnesskit/types.hpp"
#include "witnesskit/witness.hpp"

namespace {

using wk::BipartiteDims;
using wk::BipartiteState;
using wk::CMat;
using wk::CVec;
using wk::Error;
using wk::json;
using wk::Rng;
using wk::Witness;

double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw Error(what + ": '" + s + "' is not a number");
  return v;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read file: " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": invalid JSON: " + e.what());
  }
}

void emit(const std::string& text, const std::string& out_path,
          const std::string& summary) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + out_path);
  out << text;
  std::cout << summary << "\n";
}

void emit_json(const json& j, const std::string& out_path,
               const std::string& summary) {
  emit(j.dump(2) + "\n", out_path, summary);
}

// --- state specs -----------------------------------------------------------
//
// form1:p=0.8,a=0.7071,d=0.1   target-plus-noise family (d > 0 needs --seed)
// memory:a=0.7071,eta=0.9,mu=0.5
// upb                          the 3x3 bound entangled state
// anything else                path to a state JSON file

std::map<std::string, double> parse_params(const std::string& s,
                                           const std::string& what) {
  std::map<std::string, double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(what + ": expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    if (out.count(key)) throw Error(what + ": duplicate key '" + key + "'");
    out[key] = parse_double(item.substr(eq + 1), what + "." + key);
  }
  return out;
}

double take(std::map<std::string, double>& params, const std::string& key,
            const std::string& what) {
  auto it = params.find(key);
  if (it == params.end()) throw Error(what + ": missing parameter " + key);
  double v = it->second;
  params.erase(it);
  return v;
}

void expect_empty(const std::map<std::string, double>& params,
                  const std::string& what) {
  if (!params.empty())
    throw Error(what + ": unknown parameter '" + params.begin()->first + "'");
}

struct StateSpec {
  BipartiteState state;
  // set when the spec is form1, for p-estimation downstream
  std::optional<double> form1_a;
};

StateSpec parse_state_spec(const std::string& spec, Rng* rng) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  if (kind == "form1") {
    auto params = parse_params(
        colon == std::string::npos ? "" : spec.substr(colon + 1), "form1");
    double p = take(params, "p", "form1");
    double a = params.count("a") ? take(params, "a", "form1")
                                 : 1.0 / std::sqrt(2.0);
    double d = params.count("d") ? take(params, "d", "form1") : 0.0;
    expect_empty(params, "form1");
    BipartiteState sigma = wk::maximally_mixed({2, 2});
    if (d != 0.0) {
      if (!rng)
        throw Error("form1: d > 0 draws a random noise state; --seed is "
                    "required");
      sigma = wk::sample_noise({d, sigma}, *rng);
    }
    StateSpec out{wk::noisy_target(wk::target_ket(a), p, sigma), a};
    return out;
  }
  if (kind == "memory") {
    auto params = parse_params(
        colon == std::string::npos ? "" : spec.substr(colon + 1), "memory");
    wk::MemoryChannelParams mc{take(params, "a", "memory"),
                               take(params, "eta", "memory"),
                               take(params, "mu", "memory")};
    expect_empty(params, "memory");
    return {wk::memory_channel_state(mc), std::nullopt};
  }
  if (spec == "upb") return {wk::upb_rho_be(), std::nullopt};
  return {wk::state_from_json(read_json_file(spec)), std::nullopt};
}

// Reads either a witness file or a bare matrix file; dims are mandatory.
std::pair<CMat, BipartiteDims> read_operator_file(const std::string& path) {
  json j = read_json_file(path);
  std::optional<BipartiteDims> dims;
  CMat op = wk::matrix_from_json(j, &dims);
  if (!dims) throw Error(path + ": dims field is required");
  wk::require_hermitian(op, path.c_str());
  return {std::move(op), *dims};
}

Witness read_witness_file(const std::string& path) {
  json j = read_json_file(path);
  if (j.is_object() && j.contains("kind")) return wk::witness_from_json(j);
  auto [op, dims] = read_operator_file(path);
  Witness w;
  w.op = std::move(op);
  w.dims = dims;
  w.kind = wk::WitnessKind::prewitness;
  w.provenance.source = "operator file " + path;
  return w;
}

// --- two-qubit Schmidt form extraction for onp/ons modes --------------------
//
// The closed-form decompositions cover witnesses whose partial transpose is
// a positive rank-one operator with Schmidt vectors along the computational
// axes (support {00,11} or {01,10}); any relative phase is absorbed into a
// local map on B. Everything `witness construct` emits is of this shape.

struct TwoQubitForm {
  double alpha = 0.0;  // > 0
  double beta = 0.0;   // >= 0
  CMat b_map;          // 2x2 unitary applied to every B-side vector
  double scale = 1.0;  // the partial transpose is scale * |phi><phi|
};

TwoQubitForm extract_two_qubit_form(const CMat& op, BipartiteDims dims) {
  if (dims.na != 2 || dims.nb != 2)
    throw Error("onp/ons modes require a two-qubit witness; use --mode "
                "generic");
  CMat pt = wk::partial_transpose(op, dims, wk::Subsystem::A);
  wk::EigResult eig = wk::herm_eig(pt);
  const double lam = eig.values(3);
  if (lam <= wk::tol::psd ||
      eig.values.head(3).cwiseAbs().maxCoeff() > 1e-10 * lam)
    throw Error("witness partial transpose is not rank one; use --mode "
                "generic");
  CVec phi = eig.vectors.col(3);
  int hi, lo;
  if (std::abs(phi(1)) < 1e-10 && std::abs(phi(2)) < 1e-10) {
    hi = 0;
    lo = 3;
  } else if (std::abs(phi(0)) < 1e-10 && std::abs(phi(3)) < 1e-10) {
    hi = 1;
    lo = 2;
  } else {
    throw Error("witness eigenvector is not in computational Schmidt form; "
                "use --mode generic");
  }
  if (std::abs(phi(hi).imag()) > 1e-10)
    throw Error("witness eigenvector has an unexpected global phase");
  TwoQubitForm form;
  form.alpha = phi(hi).real();
  form.beta = std::abs(phi(lo));
  form.scale = lam;
  wk::cplx phase = form.beta < 1e-12 ? wk::cplx(1.0, 0.0)
                                     : phi(lo) / std::abs(phi(lo));
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = phase;
  if (hi == 1) {
    CMat x = CMat::Zero(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    form.b_map = x * d;
  } else {
    form.b_map = d;
  }
  return form;
}

// --- grids ------------------------------------------------------------------

std::vector<double> parse_value_list(const std::string& s,
                                     const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_double(item, what));
  if (out.empty()) throw Error(what + ": empty list");
  return out;
}

// "start:end:step" inclusive grid, or a plain comma list
std::vector<double> parse_grid(const std::string& s, const std::string& what) {
  if (s.find(':') == std::string::npos) return parse_value_list(s, what);
  std::stringstream ss(s);
  std::string a, b, c;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') ||
      !std::getline(ss, c, ':'))
    throw Error(what + ": expected start:end:step");
  double start = parse_double(a, what), end = parse_double(b, what),
         step = parse_double(c, what);
  if (step <= 0.0 || end < start)
    throw Error(what + ": need step > 0 and end >= start");
  auto n = static_cast<int>(std::floor((end - start) / step + 1e-9)) + 1;
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = start + k * step;
  return out;
}

std::string study_csv(const wk::ErrorStudyResult& res, int bins) {
  std::string csv = "d,epsilon,p_bin,error_rate,n_samples,max_over_p\n";
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const wk::ErrorStudyRow& row = res.rows[i];
    const wk::ErrorStudySummary& sum =
        res.summaries[i / static_cast<std::size_t>(bins)];
    csv += wk::format_double(row.d);
    csv += ',';
    csv += wk::format_double(row.epsilon);
    csv += ',';
    csv += wk::format_double(row.p_bin);
    csv += ',';
    csv += wk::format_double(row.error_rate);
    csv += ',';
    csv += std::to_string(row.n_samples);
    csv += ',';
    csv += wk::format_double(sum.max_over_p);
    csv += '\n';
  }
  return csv;
}

std::string brief(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglement witnesses and their local decompositions"};
  app.require_subcommand(1);

  // witness construct | epsilon | tau
  auto* witness = app.add_subcommand("witness", "build witness operators");
  witness->require_subcommand(1);

  std::string c_state, c_out;
  std::optional<std::uint64_t> c_seed;
  auto* construct = witness->add_subcommand(
      "construct", "witness from the partially transposed state");
  construct->add_option("--state", c_state, "state spec or file")->required();
  construct->add_option("--seed", c_seed, "rng seed for stochastic specs");
  construct->add_option("--out", c_out, "output file");
  construct->callback([&] {
    std::optional<Rng> rng;
    if (c_seed) rng.emplace(*c_seed);
    StateSpec spec = parse_state_spec(c_state, rng ? &*rng : nullptr);
    Witness w = wk::witness_from_npt(spec.state);
    emit_json(wk::witness_to_json(w), c_out,
              "witness " + std::to_string(w.dims.total()) + "x" +
                  std::to_string(w.dims.total()) + " written to " + c_out);
  });

  std::string e_op, e_den, e_out;
  int e_restarts = 200;
  std::uint64_t e_seed = 0;
  auto* epsilon = witness->add_subcommand(
      "epsilon", "minimum of an operator over product states");
  epsilon->add_option("--operator", e_op, "operator file")->required();
  epsilon->add_option("--denominator", e_den,
                      "optional denominator file (Rayleigh quotient)");
  epsilon->add_option("--restarts", e_restarts, "see-saw restarts");
  epsilon->add_option("--seed", e_seed, "rng seed")->required();
  epsilon->add_option("--out", e_out, "output file");
  epsilon->callback([&] {
    auto [op, dims] = read_operator_file(e_op);
    wk::SeesawOptions opts;
    opts.restarts = e_restarts;
    Rng rng(e_seed);
    wk::EpsilonResult res;
    if (e_den.empty()) {
      res = wk::optimize_epsilon(op, dims, opts, rng);
    } else {
      auto [den, ddims] = read_operator_file(e_den);
      if (!(ddims == dims))
        throw Error("denominator dimensions do not match the operator");
      res = wk::optimize_epsilon_ratio(op, den, dims, opts, rng);
    }
    emit_json(wk::epsilon_result_to_json(res), e_out,
              "epsilon " + brief(res.value) + " written to " + e_out);
  });

  double t_d = 0.0;
  std::string t_out;
  auto* tau = witness->add_subcommand(
      "tau", "separability threshold for bounded preparation noise");
  tau->add_option("--d", t_d, "noise radius")->required();
  tau->add_option("--out", t_out, "output file");
  tau->callback([&] {
    wk::TauReport rep{t_d, wk::tau_bound(t_d), wk::max_noise_radius()};
    emit_json(wk::tau_report_to_json(rep), t_out,
              "tau " + brief(rep.tau) + " written to " + t_out);
  });

  // decompose
  std::string d_witness, d_mode, d_out;
  auto* decompose =
      app.add_subcommand("decompose", "split a witness into local settings");
  decompose->add_option("--witness", d_witness, "witness file")->required();
  decompose->add_option("--mode", d_mode, "onp | ons | generic")->required();
  decompose->add_option("--out", d_out, "output file");
  decompose->callback([&] {
    Witness w = read_witness_file(d_witness);
    if (d_mode == "generic") {
      wk::SettingDecomposition sd =
          wk::generic_setting_decomposition(w.op, w.dims);
      emit_json(wk::settings_to_json(sd), d_out,
                std::to_string(sd.settings.size()) + " settings written to " +
                    d_out);
      return;
    }
    if (d_mode != "onp" && d_mode != "ons")
      throw Error("unknown mode '" + d_mode + "' (onp | ons | generic)");
    TwoQubitForm form = extract_two_qubit_form(w.op, w.dims);
    if (d_mode == "onp") {
      wk::PseudoMixture pm = wk::onp_two_qubit(form.alpha, form.beta);
      for (wk::PseudoTerm& t : pm.terms) {
        t.c *= form.scale;
        t.proj.f = form.b_map * t.proj.f;
      }
      emit_json(wk::pseudo_mixture_to_json(pm), d_out,
                std::to_string(pm.terms.size()) + " product terms written "
                                                  "to " +
                    d_out);
    } else {
      wk::SettingDecomposition sd = wk::ons_two_qubit(form.alpha, form.beta);
      for (wk::Setting& s : sd.settings) {
        s.weights *= form.scale;
        for (CVec& f : s.basis_b) f = form.b_map * f;
      }
      emit_json(wk::settings_to_json(sd), d_out,
                std::to_string(sd.settings.size()) + " settings written to " +
                    d_out);
    }
  });

  // verify
  std::string v_target, v_decomp, v_out;
  auto* verify =
      app.add_subcommand("verify", "check a decomposition against its target");
  verify->add_option("--target", v_target, "target operator file")->required();
  verify->add_option("--decomposition", v_decomp, "decomposition file")
      ->required();
  verify->add_option("--out", v_out, "output file");
  verify->callback([&] {
    auto [op, dims] = read_operator_file(v_target);
    json j = read_json_file(v_decomp);
    wk::DecompositionReport rep;
    if (j.is_object() && j.contains("terms")) {
      wk::PseudoMixture pm = wk::pseudo_mixture_from_json(j);
      if (!(pm.dims == dims))
        throw Error("decomposition dimensions do not match the target");
      rep = wk::verify_decomposition(op, pm);
    } else if (j.is_object() && j.contains("settings")) {
      wk::SettingDecomposition sd = wk::settings_from_json(j);
      if (!(sd.dims == dims))
        throw Error("decomposition dimensions do not match the target");
      rep = wk::verify_decomposition(op, sd);
    } else {
      throw Error(v_decomp + ": neither a pseudo-mixture nor a setting "
                             "decomposition");
    }
    emit_json(wk::decomposition_report_to_json(rep), v_out,
              "max error " + brief(rep.max_error) + ", " +
                  std::to_string(rep.n_settings) + " settings; written to " +
                  v_out);
  });

  // analyze
  std::string a_witness, a_state, a_out;
  std::optional<double> a_d;
  std::optional<std::uint64_t> a_seed;
  auto* analyze =
      app.add_subcommand("analyze", "witness verdict for a state");
  analyze->add_option("--witness", a_witness, "witness file")->required();
  analyze->add_option("--state", a_state, "state spec or file")->required();
  analyze->add_option("--d", a_d, "preparation noise radius");
  analyze->add_option("--seed", a_seed, "rng seed for stochastic specs");
  analyze->add_option("--out", a_out, "output file");
  analyze->callback([&] {
    Witness w = read_witness_file(a_witness);
    std::optional<Rng> rng;
    if (a_seed) rng.emplace(*a_seed);
    StateSpec spec = parse_state_spec(a_state, rng ? &*rng : nullptr);
    double mean = wk::expectation(w, spec.state);
    wk::WitnessReport rep = wk::classify(w, mean, a_d);
    if (spec.form1_a) {
      double a = *spec.form1_a;
      rep.p_estimate = wk::estimate_p(mean, a, std::sqrt(1.0 - a * a)).value;
    }
    emit_json(wk::report_to_json(rep), a_out,
              "verdict " + wk::verdict_name(rep.verdict) + " written to " +
                  a_out);
  });

  // measure
  std::string m_decomp, m_state, m_out;
  long m_shots = 0;
  std::uint64_t m_seed = 0;
  auto* measure =
      app.add_subcommand("measure", "finite-shot estimate over settings");
  measure->add_option("--decomposition", m_decomp, "settings file")
      ->required();
  measure->add_option("--state", m_state, "state spec or file")->required();
  measure->add_option("--shots", m_shots, "shots per setting")->required();
  measure->add_option("--seed", m_seed, "rng seed")->required();
  measure->add_option("--out", m_out, "output file");
  measure->callback([&] {
    json j = read_json_file(m_decomp);
    wk::SettingDecomposition sd = wk::settings_from_json(j);
    Rng rng(m_seed);
    StateSpec spec = parse_state_spec(m_state, &rng);
    wk::ShotEstimate est = wk::simulate_measurement(sd, spec.state, m_shots,
                                                    rng);
    emit_json(wk::shot_estimate_to_json(est), m_out,
              "mean " + brief(est.mean) + " +- " + brief(est.std_error) +
                  " written to " + m_out);
  });

  // mc-study
  std::string s_d, s_eps, s_out;
  long s_samples = 50000;
  int s_bins = 50;
  std::uint64_t s_seed = 0;
  auto* study = app.add_subcommand(
      "mc-study", "misclassification rates on a (d, epsilon) grid");
  study->add_option("--d", s_d, "noise radii, comma list")->required();
  study->add_option("--eps", s_eps, "shift grid (start:end:step or list)")
      ->required();
  study->add_option("--samples", s_samples, "samples per grid cell");
  study->add_option("--bins", s_bins, "p bins");
  study->add_option("--seed", s_seed, "rng seed")->required();
  study->add_option("--out", s_out, "output CSV file");
  study->callback([&] {
    std::vector<double> d_values = parse_value_list(s_d, "--d");
    std::vector<double> eps_grid = parse_grid(s_eps, "--eps");
    wk::McStudyOptions opts;
    opts.p_bins = s_bins;
    Rng rng(s_seed);
    wk::ErrorStudyResult res =
        wk::mc_error_study(d_values, eps_grid, s_samples, opts, rng);
    emit(study_csv(res, s_bins), s_out,
         std::to_string(res.rows.size()) + " rows (" +
             std::to_string(d_values.size()) + " d x " +
             std::to_string(eps_grid.size()) + " eps x " +
             std::to_string(s_bins) + " bins) written to " + s_out);
  });

  // upb
  std::string u_eps = "auto", u_eps_prime = "auto", u_out;
  int u_restarts = 200;
  std::uint64_t u_seed = 0;
  auto* upb = app.add_subcommand(
      "upb", "bound entanglement witness for the 3x3 tiles basis");
  upb->add_option("--epsilon", u_eps, "shift: auto or a number");
  upb->add_option("--epsilon-prime", u_eps_prime,
                  "projector mixing weight: auto or a number");
  upb->add_option("--restarts", u_restarts, "see-saw restarts");
  upb->add_option("--seed", u_seed, "rng seed")->required();
  upb->add_option("--out", u_out, "output file");
  upb->callback([&] {
    const BipartiteDims dims{3, 3};
    BipartiteState rho = wk::upb_rho_be();
    CMat p = wk::upb_kernel_projector();
    CMat q = wk::kernel_projector(
        wk::partial_transpose(rho.rho, dims, wk::Subsystem::A));
    Witness pre = wk::edge_witness(p, q, 0.0, dims);
    wk::SeesawOptions opts;
    opts.restarts = u_restarts;
    Rng rng(u_seed);

    wk::UpbReport rep;
    if (u_eps == "auto") {
      Rng stream = rng.stream(1);
      rep.epsilon = wk::optimize_epsilon(pre.op, dims, opts, stream).value;
      rep.epsilon_source = "optimized";
    } else {
      rep.epsilon = parse_double(u_eps, "--epsilon");
      rep.epsilon_source = "given";
    }
    if (u_eps_prime == "auto") {
      Rng stream = rng.stream(2);
      rep.epsilon_prime =
          wk::optimize_epsilon_ratio(pre.op, wk::upb_onp_denominator(), dims,
                                     opts, stream)
              .value;
      rep.epsilon_prime_source = "optimized";
    } else {
      rep.epsilon_prime = parse_double(u_eps_prime, "--epsilon-prime");
      rep.epsilon_prime_source = "given";
    }
    rep.threshold = wk::upb_noise_threshold(rep.epsilon);
    rep.witness = wk::edge_witness(p, q, rep.epsilon, dims);
    rep.mixture = wk::upb_witness_pseudomixture(rep.epsilon);
    rep.settings = wk::upb_witness_settings(rep.epsilon);
    rep.onp = wk::upb_onp_decomposition(rep.epsilon_prime);
    rep.mixture_check = wk::verify_decomposition(rep.witness.op, rep.mixture);
    rep.settings_check =
        wk::verify_decomposition(rep.witness.op, rep.settings);
    rep.onp_check = wk::verify_decomposition(
        wk::upb_onp_target(rep.epsilon_prime), rep.onp);
    emit_json(wk::upb_report_to_json(rep), u_out,
              "epsilon " + brief(rep.epsilon) + ", threshold " +
                  brief(rep.threshold) + " written to " + u_out);
  });

  // bounds
  int b_n = 0, b_m = 0;
  std::string b_out;
  auto* bounds = app.add_subcommand(
      "bounds", "projector and setting counts for an N x M system");
  bounds->add_option("--n", b_n, "smaller local dimension")->required();
  bounds->add_option("--m", b_m, "larger local dimension")->required();
  bounds->add_option("--out", b_out, "output file");
  bounds->callback([&] {
    wk::GeneralizationCounts c = wk::generalization_counts(b_n, b_m);
    emit_json(wk::counts_to_json(c), b_out, "counts written to " + b_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err = {{"error", {{"type", "usage"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    json err = {{"error", {{"type", "domain"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err = {{"error", {{"type", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
