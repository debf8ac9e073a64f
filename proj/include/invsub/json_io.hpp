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

#pragma once

#include "json.hpp"

#include "invsub/certify.hpp"
#include "invsub/gf_core.hpp"
#include "invsub/inv_map.hpp"
#include "invsub/scan.hpp"
#include "invsub/subspaces.hpp"

namespace invsub {

/// { "p", "n", "modulus": [c0, ..., cn] }.
nlohmann::json field_to_json(const FieldSpec& spec);
/// Validates through make_field. Throws ParseError on a malformed document.
Field field_from_json(const nlohmann::json& doc);

/// Canonical integer; for p = 2 an object { "int", "hex" }.
nlohmann::json element_to_json(const FieldElement& x);
/// { "dim", "basis": [ints], "rep": int }.
nlohmann::json subspace_to_json(const AffineSubspace& u);
AffineSubspace subspace_from_json(const Field& field, const nlohmann::json& doc);

nlohmann::json to_json(const StableSubspaceReport& report);
nlohmann::json to_json(const CertReport& report);
/// Elapsed time is left out so that output is byte-identical across runs.
nlohmann::json to_json(const ScanReport& report);
nlohmann::json to_json(const std::vector<CosetSurveyEntry>& survey);

}  // namespace invsub
