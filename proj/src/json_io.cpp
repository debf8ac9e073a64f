/* Copyright 2026 The invsub Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "invsub/json_io.hpp"

namespace invsub {

using nlohmann::json;

json field_to_json(const FieldSpec& spec) {
  return json{{"p", spec.p()}, {"n", spec.n()}, {"modulus", spec.modulus()}};
}

Field field_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("p") || !doc.contains("n")) {
    throw Error(ErrorKind::ParseError, "field JSON needs 'p' and 'n'");
  }
  if (!doc["p"].is_number_unsigned() || !doc["n"].is_number_integer()) {
    throw Error(ErrorKind::ParseError, "field 'p' and 'n' must be integers");
  }
  std::optional<std::vector<std::uint32_t>> modulus;
  if (doc.contains("modulus") && !doc["modulus"].is_null()) {
    if (!doc["modulus"].is_array()) throw Error(ErrorKind::ParseError, "'modulus' must be an array");
    std::vector<std::uint32_t> coeffs;
    for (const auto& c : doc["modulus"]) {
      if (!c.is_number_unsigned() || c.get<std::uint64_t>() > UINT32_MAX) {
        throw Error(ErrorKind::ParseError, "modulus coefficients must be non-negative integers");
      }
      coeffs.push_back(c.get<std::uint32_t>());
    }
    modulus = std::move(coeffs);
  }
  return make_field(doc["p"].get<std::uint64_t>(), doc["n"].get<int>(), std::move(modulus));
}

json element_to_json(const FieldElement& x) {
  json out{{"int", x.value()}};
  if (x.spec().p() == 2) out["hex"] = to_hex(x.value());
  return out;
}

json subspace_to_json(const AffineSubspace& u) {
  return json{{"dim", u.dim()}, {"basis", u.linear().basis()}, {"rep", u.rep_code()}};
}

AffineSubspace subspace_from_json(const Field& field, const json& doc) {
  if (!doc.is_object() || !doc.contains("basis") || !doc["basis"].is_array()) {
    throw Error(ErrorKind::ParseError, "subspace JSON needs 'basis'");
  }
  std::vector<Code> basis;
  for (const auto& v : doc["basis"]) {
    if (!v.is_number_unsigned() || !field->contains_code(v.get<Code>())) {
      throw Error(ErrorKind::OutOfRangeEntry, "basis entry outside the field");
    }
    basis.push_back(v.get<Code>());
  }
  const Code rep = doc.contains("rep") ? doc["rep"].get<Code>() : 0;
  if (!field->contains_code(rep)) throw Error(ErrorKind::OutOfRangeEntry, "rep outside the field");
  LinearSubspace linear(field, basis);
  if (doc.contains("dim") && doc["dim"].get<int>() != linear.dim()) {
    throw Error(ErrorKind::ParseError, "basis is not independent");
  }
  return {std::move(linear), rep};
}

namespace {

json subspace_list(const std::vector<AffineSubspace>& list) {
  json out = json::array();
  for (const auto& u : list) out.push_back(subspace_to_json(u));
  return out;
}

}  // namespace

json to_json(const StableSubspaceReport& report) {
  json out{{"field", field_to_json(*report.field)},
           {"predicted", subspace_list(report.predicted)},
           {"predicted_count", report.predicted.size()}};
  if (report.brute) {
    out["brute"] = subspace_list(*report.brute);
    out["brute_count"] = report.brute->size();
    out["brute_candidates"] = report.brute_candidates;
    out["agree"] = report.agree;
  }
  return out;
}

json to_json(const CertReport& report) {
  json out{{"form", to_string(report.form)},
           {"description", report.description},
           {"field", field_to_json(*report.field)},
           {"t", element_to_json(report.t_value)},
           {"t_subfield_degrees", report.t_divisors},
           {"t_in_f_circle", report.t_in_f_circle},
           {"nontrivial_verdict", to_string(report.nontrivial_verdict)},
           {"overall", to_string(report.overall)},
           {"exhaustive", report.exhaustive},
           {"degree_one", report.degree_one}};
  if (report.value_at_b) out["value_at_b"] = element_to_json(*report.value_at_b);
  if (report.criterion_value) out["criterion_value"] = element_to_json(*report.criterion_value);
  out["witness"] = report.witness ? subspace_to_json(*report.witness) : json(nullptr);
  json fixed = json::array();
  for (const auto& x : report.fixed_points) fixed.push_back(element_to_json(x));
  out["fixed_points"] = std::move(fixed);
  json cycles = json::array();
  for (const auto& [x, y] : report.two_cycles) cycles.push_back(json::array({element_to_json(x), element_to_json(y)}));
  out["two_cycles"] = std::move(cycles);
  out["notes"] = report.notes;
  if (report.brute) {
    out["brute_check"] = json{{"candidates", report.brute->candidates},
                              {"invariant", subspace_list(report.brute->invariant)},
                              {"nontrivial_found", report.brute->nontrivial_found},
                              {"only_whole_field", report.brute->only_whole_field}};
  }
  return out;
}

json to_json(const ScanReport& report) {
  json found = json::array();
  for (const auto& f : report.found) {
    json entry = subspace_to_json(f.subspace);
    entry["kind"] = f.kind == FindingKind::Invariant ? "invariant" : "affine_image";
    entry["small"] = f.small;
    if (f.image) entry["image"] = subspace_to_json(*f.image);
    found.push_back(std::move(entry));
  }
  return json{{"sbox_id", report.sbox_id},
              {"dims_scanned", report.dims_scanned},
              {"subspace_count_scanned", report.subspace_count_scanned},
              {"found_count", report.found.size()},
              {"found", std::move(found)}};
}

json to_json(const std::vector<CosetSurveyEntry>& survey) {
  json out = json::array();
  for (const auto& entry : survey) {
    json pairs = json::array();
    for (const auto& [u, v] : entry.pairs) pairs.push_back(json::array({u.value(), v.value()}));
    out.push_back(json{{"linear", subspace_to_json(AffineSubspace(entry.linear, 0))}, {"pairs", std::move(pairs)}});
  }
  return out;
}

}  // namespace invsub
