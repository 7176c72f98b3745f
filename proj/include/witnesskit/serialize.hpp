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

#ifndef WITNESSKIT_SERIALIZE_HPP
#define WITNESSKIT_SERIALIZE_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "witnesskit/analysis.hpp"

namespace wk {

using json = nlohmann::json;

// Matrix schema: {"dim": n, "dims": [na, nb] (optional), "entries":
// [[re, im], ...]} with entries flat in row-major order. Serialization is
// shortest-round-trip, so write-then-read reproduces every entry bit for
// bit. Readers throw Error on any schema violation.
json matrix_to_json(const CMat& m,
                    std::optional<BipartiteDims> dims = std::nullopt);
CMat matrix_from_json(const json& j,
                      std::optional<BipartiteDims>* dims_out = nullptr);

json ket_to_json(const CVec& v);
CVec ket_from_json(const json& j);

json state_to_json(const BipartiteState& s);
BipartiteState state_from_json(const json& j);

std::string kind_name(WitnessKind kind);
WitnessKind kind_from_name(const std::string& name);

json witness_to_json(const Witness& w);
Witness witness_from_json(const json& j);

json pseudo_mixture_to_json(const PseudoMixture& pm);
PseudoMixture pseudo_mixture_from_json(const json& j);

json settings_to_json(const SettingDecomposition& sd);
SettingDecomposition settings_from_json(const json& j);

std::string verdict_name(Verdict v);
Verdict verdict_from_name(const std::string& name);

json report_to_json(const WitnessReport& r);
WitnessReport report_from_json(const json& j);

json shot_estimate_to_json(const ShotEstimate& e);
ShotEstimate shot_estimate_from_json(const json& j);

json decomposition_report_to_json(const DecompositionReport& r);
DecompositionReport decomposition_report_from_json(const json& j);

json epsilon_result_to_json(const EpsilonResult& r);
EpsilonResult epsilon_result_from_json(const json& j);

json counts_to_json(const GeneralizationCounts& c);
GeneralizationCounts counts_from_json(const json& j);

struct TauReport {
  double d = 0.0;
  double tau = 0.0;
  double max_radius = 0.0;
};

json tau_report_to_json(const TauReport& r);
TauReport tau_report_from_json(const json& j);

// Aggregate output of the tiles-witness pipeline: the shift parameters with
// their origin ("optimized" or "given"), the critical noise weight, the
// shifted witness, both projector decompositions, and their verification
// reports.
struct UpbReport {
  double epsilon = 0.0;
  std::string epsilon_source;
  double epsilon_prime = 0.0;
  std::string epsilon_prime_source;
  double threshold = 0.0;
  Witness witness;
  PseudoMixture mixture;
  SettingDecomposition settings;
  PseudoMixture onp;
  DecompositionReport mixture_check;
  DecompositionReport settings_check;
  DecompositionReport onp_check;
};

json upb_report_to_json(const UpbReport& r);
UpbReport upb_report_from_json(const json& j);

// shortest-round-trip decimal form of a double (CSV cells)
std::string format_double(double x);

}  // namespace wk

#endif
