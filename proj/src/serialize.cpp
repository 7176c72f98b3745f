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

#include "witnesskit/serialize.hpp"

#include <charconv>
#include <cstdio>

namespace wk {

namespace {

double read_number(const json& j, const char* where) {
  if (!j.is_number()) throw Error(std::string(where) + ": expected a number");
  return j.get<double>();
}

int read_int(const json& j, const char* where) {
  if (!j.is_number_integer())
    throw Error(std::string(where) + ": expected an integer");
  return j.get<int>();
}

cplx read_entry(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2)
    throw Error(std::string(where) + ": entry must be a [re, im] pair");
  return {read_number(j[0], where), read_number(j[1], where)};
}

json write_entry(cplx z) { return json::array({z.real(), z.imag()}); }

template <typename F>
auto guarded(const char* where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string(where) + ": " + e.what());
  }
}

std::optional<BipartiteDims> read_dims_field(const json& j,
                                             const char* where) {
  if (!j.contains("dims")) return std::nullopt;
  const json& d = j["dims"];
  if (!d.is_array() || d.size() != 2)
    throw Error(std::string(where) + ": dims must be [na, nb]");
  BipartiteDims dims{read_int(d[0], where), read_int(d[1], where)};
  if (dims.na < 1 || dims.nb < 1)
    throw Error(std::string(where) + ": dims must be positive");
  return dims;
}

}  // namespace

json matrix_to_json(const CMat& m, std::optional<BipartiteDims> dims) {
  if (m.rows() != m.cols()) throw Error("matrix_to_json: matrix not square");
  json j;
  j["dim"] = static_cast<int>(m.rows());
  if (dims) {
    if (dims->total() != m.rows())
      throw Error("matrix_to_json: dims do not match matrix size");
    j["dims"] = json::array({dims->na, dims->nb});
  }
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      entries.push_back(write_entry(m(r, c)));
  j["entries"] = std::move(entries);
  return j;
}

CMat matrix_from_json(const json& j, std::optional<BipartiteDims>* dims_out) {
  if (!j.is_object()) throw Error("matrix: expected an object");
  if (!j.contains("dim")) throw Error("matrix: missing dim");
  const int dim = read_int(j["dim"], "matrix.dim");
  if (dim < 1) throw Error("matrix: dim must be positive");
  std::optional<BipartiteDims> dims = read_dims_field(j, "matrix");
  if (dims && dims->total() != dim)
    throw Error("matrix: dims product does not equal dim");
  if (!j.contains("entries") || !j["entries"].is_array())
    throw Error("matrix: missing entries array");
  const json& entries = j["entries"];
  if (static_cast<Eigen::Index>(entries.size()) !=
      static_cast<Eigen::Index>(dim) * dim)
    throw Error("matrix: entries length must be dim^2");
  CMat m(dim, dim);
  Eigen::Index idx = 0;
  for (const json& e : entries) {
    m(idx / dim, idx % dim) = read_entry(e, "matrix.entries");
    ++idx;
  }
  if (dims_out) *dims_out = dims;
  return m;
}

json ket_to_json(const CVec& v) {
  json j;
  j["dim"] = static_cast<int>(v.size());
  json entries = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    entries.push_back(write_entry(v(i)));
  j["entries"] = std::move(entries);
  return j;
}

CVec ket_from_json(const json& j) {
  if (!j.is_object()) throw Error("ket: expected an object");
  if (!j.contains("dim")) throw Error("ket: missing dim");
  const int dim = read_int(j["dim"], "ket.dim");
  if (dim < 1) throw Error("ket: dim must be positive");
  if (!j.contains("entries") || !j["entries"].is_array())
    throw Error("ket: missing entries array");
  const json& entries = j["entries"];
  if (static_cast<int>(entries.size()) != dim)
    throw Error("ket: entries length must equal dim");
  CVec v(dim);
  Eigen::Index i = 0;
  for (const json& e : entries) v(i++) = read_entry(e, "ket.entries");
  return v;
}

json state_to_json(const BipartiteState& s) {
  return matrix_to_json(s.rho, s.dims);
}

BipartiteState state_from_json(const json& j) {
  std::optional<BipartiteDims> dims;
  CMat rho = matrix_from_json(j, &dims);
  if (!dims) throw Error("state: dims field is required");
  return BipartiteState::make(std::move(rho), *dims);
}

std::string kind_name(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::npt_eigvec: return "npt_eigvec";
    case WitnessKind::edge: return "edge";
    case WitnessKind::shifted: return "shifted";
    case WitnessKind::prewitness: return "prewitness";
  }
  throw Error("kind_name: unknown witness kind");
}

WitnessKind kind_from_name(const std::string& name) {
  if (name == "npt_eigvec") return WitnessKind::npt_eigvec;
  if (name == "edge") return WitnessKind::edge;
  if (name == "shifted") return WitnessKind::shifted;
  if (name == "prewitness") return WitnessKind::prewitness;
  throw Error("witness: unknown kind '" + name + "'");
}

json witness_to_json(const Witness& w) {
  json j = matrix_to_json(w.op, w.dims);
  j["kind"] = kind_name(w.kind);
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(w.provenance.state_hash));
  j["provenance"] = {{"source", w.provenance.source},
                     {"state_hash", hash},
                     {"epsilon", w.provenance.epsilon}};
  return j;
}

Witness witness_from_json(const json& j) {
  std::optional<BipartiteDims> dims;
  CMat op = matrix_from_json(j, &dims);
  if (!dims) throw Error("witness: dims field is required");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw Error("witness: missing kind");
  Witness w;
  w.op = std::move(op);
  w.dims = *dims;
  w.kind = kind_from_name(j["kind"].get<std::string>());
  if (j.contains("provenance")) {
    const json& p = j["provenance"];
    if (!p.is_object()) throw Error("witness: provenance must be an object");
    if (p.contains("source")) {
      if (!p["source"].is_string())
        throw Error("witness: provenance.source must be a string");
      w.provenance.source = p["source"].get<std::string>();
    }
    if (p.contains("state_hash")) {
      if (!p["state_hash"].is_string())
        throw Error("witness: provenance.state_hash must be a string");
      try {
        w.provenance.state_hash = std::stoull(
            p["state_hash"].get<std::string>(), nullptr, 16);
      } catch (const std::exception&) {
        throw Error("witness: provenance.state_hash is not a hex string");
      }
    }
    if (p.contains("epsilon"))
      w.provenance.epsilon = read_number(p["epsilon"], "witness.provenance");
  }
  require_hermitian(w.op, "witness");
  return w;
}

json pseudo_mixture_to_json(const PseudoMixture& pm) {
  json j;
  j["dims"] = json::array({pm.dims.na, pm.dims.nb});
  json terms = json::array();
  for (const PseudoTerm& t : pm.terms)
    terms.push_back({{"c", t.c},
                     {"a", ket_to_json(t.proj.e)},
                     {"b", ket_to_json(t.proj.f)}});
  j["terms"] = std::move(terms);
  return j;
}

PseudoMixture pseudo_mixture_from_json(const json& j) {
  if (!j.is_object()) throw Error("pseudo_mixture: expected an object");
  std::optional<BipartiteDims> dims = read_dims_field(j, "pseudo_mixture");
  if (!dims) throw Error("pseudo_mixture: dims field is required");
  if (!j.contains("terms") || !j["terms"].is_array())
    throw Error("pseudo_mixture: missing terms array");
  PseudoMixture pm;
  pm.dims = *dims;
  for (const json& t : j["terms"]) {
    if (!t.is_object() || !t.contains("c") || !t.contains("a") ||
        !t.contains("b"))
      throw Error("pseudo_mixture: each term needs c, a, b");
    PseudoTerm term;
    term.c = read_number(t["c"], "pseudo_mixture.term.c");
    term.proj.e = ket_from_json(t["a"]);
    term.proj.f = ket_from_json(t["b"]);
    if (term.proj.e.size() != pm.dims.na || term.proj.f.size() != pm.dims.nb)
      throw Error("pseudo_mixture: term vector size does not match dims");
    pm.terms.push_back(std::move(term));
  }
  return pm;
}

json settings_to_json(const SettingDecomposition& sd) {
  json j;
  j["dims"] = json::array({sd.dims.na, sd.dims.nb});
  json settings = json::array();
  for (const Setting& s : sd.settings) {
    json basis_a = json::array(), basis_b = json::array();
    for (const CVec& v : s.basis_a) basis_a.push_back(ket_to_json(v));
    for (const CVec& v : s.basis_b) basis_b.push_back(ket_to_json(v));
    json weights = json::array();
    for (Eigen::Index k = 0; k < s.weights.rows(); ++k) {
      json row = json::array();
      for (Eigen::Index l = 0; l < s.weights.cols(); ++l)
        row.push_back(s.weights(k, l));
      weights.push_back(std::move(row));
    }
    settings.push_back({{"basis_a", std::move(basis_a)},
                        {"basis_b", std::move(basis_b)},
                        {"weights", std::move(weights)}});
  }
  j["settings"] = std::move(settings);
  return j;
}

SettingDecomposition settings_from_json(const json& j) {
  if (!j.is_object()) throw Error("settings: expected an object");
  std::optional<BipartiteDims> dims = read_dims_field(j, "settings");
  if (!dims) throw Error("settings: dims field is required");
  if (!j.contains("settings") || !j["settings"].is_array())
    throw Error("settings: missing settings array");
  SettingDecomposition sd;
  sd.dims = *dims;
  for (const json& js : j["settings"]) {
    if (!js.is_object() || !js.contains("basis_a") ||
        !js.contains("basis_b") || !js.contains("weights"))
      throw Error("settings: each setting needs basis_a, basis_b, weights");
    Setting s;
    for (const json& v : js["basis_a"]) s.basis_a.push_back(ket_from_json(v));
    for (const json& v : js["basis_b"]) s.basis_b.push_back(ket_from_json(v));
    if (static_cast<int>(s.basis_a.size()) != sd.dims.na ||
        static_cast<int>(s.basis_b.size()) != sd.dims.nb)
      throw Error("settings: basis size does not match dims");
    const json& wj = js["weights"];
    if (!wj.is_array() || static_cast<int>(wj.size()) != sd.dims.na)
      throw Error("settings: weights must have na rows");
    s.weights = RMat::Zero(sd.dims.na, sd.dims.nb);
    for (int k = 0; k < sd.dims.na; ++k) {
      const json& row = wj[static_cast<std::size_t>(k)];
      if (!row.is_array() || static_cast<int>(row.size()) != sd.dims.nb)
        throw Error("settings: weights must have nb columns");
      for (int l = 0; l < sd.dims.nb; ++l)
        s.weights(k, l) =
            read_number(row[static_cast<std::size_t>(l)], "settings.weights");
    }
    sd.settings.push_back(std::move(s));
  }
  return sd;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::entangled: return "entangled";
    case Verdict::separable_certified: return "separable_certified";
    case Verdict::inconclusive: return "inconclusive";
  }
  throw Error("verdict_name: unknown verdict");
}

Verdict verdict_from_name(const std::string& name) {
  if (name == "entangled") return Verdict::entangled;
  if (name == "separable_certified") return Verdict::separable_certified;
  if (name == "inconclusive") return Verdict::inconclusive;
  throw Error("report: unknown verdict '" + name + "'");
}

json report_to_json(const WitnessReport& r) {
  json j;
  j["expectation"] = r.expectation;
  j["verdict"] = verdict_name(r.verdict);
  j["heuristic"] = r.heuristic;
  j["tau"] = r.tau ? json(*r.tau) : json(nullptr);
  j["epsilon_used"] = r.epsilon_used;
  j["p_estimate"] = r.p_estimate ? json(*r.p_estimate) : json(nullptr);
  return j;
}

WitnessReport report_from_json(const json& j) {
  return guarded("report", [&] {
    if (!j.is_object()) throw Error("report: expected an object");
    WitnessReport r;
    r.expectation = read_number(j.at("expectation"), "report.expectation");
    r.verdict = verdict_from_name(j.at("verdict").get<std::string>());
    r.heuristic = j.at("heuristic").get<bool>();
    if (j.contains("tau") && !j["tau"].is_null())
      r.tau = read_number(j["tau"], "report.tau");
    r.epsilon_used = read_number(j.at("epsilon_used"), "report.epsilon_used");
    if (j.contains("p_estimate") && !j["p_estimate"].is_null())
      r.p_estimate = read_number(j["p_estimate"], "report.p_estimate");
    return r;
  });
}

json shot_estimate_to_json(const ShotEstimate& e) {
  return {{"mean", e.mean},
          {"std_error", e.std_error},
          {"shots_per_setting", e.shots_per_setting},
          {"n_settings", e.n_settings}};
}

ShotEstimate shot_estimate_from_json(const json& j) {
  return guarded("shot_estimate", [&] {
    ShotEstimate e;
    e.mean = read_number(j.at("mean"), "shot_estimate.mean");
    e.std_error = read_number(j.at("std_error"), "shot_estimate.std_error");
    e.shots_per_setting = j.at("shots_per_setting").get<long>();
    e.n_settings = read_int(j.at("n_settings"), "shot_estimate.n_settings");
    return e;
  });
}

json decomposition_report_to_json(const DecompositionReport& r) {
  return {{"max_error", r.max_error},
          {"coeff_sum", r.coeff_sum},
          {"n_terms", r.n_terms},
          {"n_settings", r.n_settings}};
}

DecompositionReport decomposition_report_from_json(const json& j) {
  return guarded("decomposition_report", [&] {
    DecompositionReport r;
    r.max_error = read_number(j.at("max_error"), "decomposition_report");
    r.coeff_sum = read_number(j.at("coeff_sum"), "decomposition_report");
    r.n_terms = read_int(j.at("n_terms"), "decomposition_report");
    r.n_settings = read_int(j.at("n_settings"), "decomposition_report");
    return r;
  });
}

json epsilon_result_to_json(const EpsilonResult& r) {
  return {{"value", r.value},
          {"argmin",
           {{"a", ket_to_json(r.argmin.e)}, {"b", ket_to_json(r.argmin.f)}}},
          {"restarts_used", r.restarts_used},
          {"converged", r.converged}};
}

EpsilonResult epsilon_result_from_json(const json& j) {
  return guarded("epsilon_result", [&] {
    if (!j.is_object()) throw Error("epsilon_result: expected an object");
    EpsilonResult r;
    r.value = read_number(j.at("value"), "epsilon_result.value");
    const json& m = j.at("argmin");
    r.argmin.e = ket_from_json(m.at("a"));
    r.argmin.f = ket_from_json(m.at("b"));
    r.restarts_used = read_int(j.at("restarts_used"), "epsilon_result");
    r.converged = j.at("converged").get<bool>();
    return r;
  });
}

json counts_to_json(const GeneralizationCounts& c) {
  return {{"onp_lower", c.onp_lower},
          {"onp_upper", c.onp_upper},
          {"ons_lower", c.ons_lower},
          {"ons_upper", c.ons_upper}};
}

GeneralizationCounts counts_from_json(const json& j) {
  return guarded("counts", [&] {
    if (!j.is_object()) throw Error("counts: expected an object");
    GeneralizationCounts c;
    c.onp_lower = read_int(j.at("onp_lower"), "counts.onp_lower");
    c.onp_upper = read_int(j.at("onp_upper"), "counts.onp_upper");
    c.ons_lower = read_int(j.at("ons_lower"), "counts.ons_lower");
    c.ons_upper = read_int(j.at("ons_upper"), "counts.ons_upper");
    return c;
  });
}

json tau_report_to_json(const TauReport& r) {
  return {{"d", r.d}, {"tau", r.tau}, {"max_radius", r.max_radius}};
}

TauReport tau_report_from_json(const json& j) {
  return guarded("tau_report", [&] {
    if (!j.is_object()) throw Error("tau_report: expected an object");
    TauReport r;
    r.d = read_number(j.at("d"), "tau_report.d");
    r.tau = read_number(j.at("tau"), "tau_report.tau");
    r.max_radius = read_number(j.at("max_radius"), "tau_report.max_radius");
    return r;
  });
}

json upb_report_to_json(const UpbReport& r) {
  return {{"epsilon", r.epsilon},
          {"epsilon_source", r.epsilon_source},
          {"epsilon_prime", r.epsilon_prime},
          {"epsilon_prime_source", r.epsilon_prime_source},
          {"threshold", r.threshold},
          {"witness", witness_to_json(r.witness)},
          {"mixture", pseudo_mixture_to_json(r.mixture)},
          {"settings", settings_to_json(r.settings)},
          {"onp", pseudo_mixture_to_json(r.onp)},
          {"mixture_check", decomposition_report_to_json(r.mixture_check)},
          {"settings_check", decomposition_report_to_json(r.settings_check)},
          {"onp_check", decomposition_report_to_json(r.onp_check)}};
}

UpbReport upb_report_from_json(const json& j) {
  return guarded("upb_report", [&] {
    if (!j.is_object()) throw Error("upb_report: expected an object");
    UpbReport r;
    r.epsilon = read_number(j.at("epsilon"), "upb_report.epsilon");
    r.epsilon_source = j.at("epsilon_source").get<std::string>();
    r.epsilon_prime = read_number(j.at("epsilon_prime"), "upb_report");
    r.epsilon_prime_source = j.at("epsilon_prime_source").get<std::string>();
    r.threshold = read_number(j.at("threshold"), "upb_report.threshold");
    r.witness = witness_from_json(j.at("witness"));
    r.mixture = pseudo_mixture_from_json(j.at("mixture"));
    r.settings = settings_from_json(j.at("settings"));
    r.onp = pseudo_mixture_from_json(j.at("onp"));
    r.mixture_check = decomposition_report_from_json(j.at("mixture_check"));
    r.settings_check = decomposition_report_from_json(j.at("settings_check"));
    r.onp_check = decomposition_report_from_json(j.at("onp_check"));
    return r;
  });
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf, ptr);
}

}  // namespace wk
