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

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "invsub/gf_core.hpp"
#include "invsub/options.hpp"
#include "invsub/subspaces.hpp"

namespace invsub {

/// A function GF(p^n) -> GF(p^n) as a lookup table indexed by canonical integer.
class SBox {
 public:
  /// Throws WrongLength or OutOfRangeEntry.
  SBox(Field field, std::vector<Code> table);

  static SBox from_function(const Field& field, const std::function<Code(Code)>& fn);

  const Field& field() const noexcept { return field_; }
  const std::vector<Code>& table() const noexcept { return table_; }
  bool is_permutation() const noexcept { return is_permutation_; }
  /// "fnv1a64:" followed by 16 hex digits, hashed over the table entries.
  const std::string& digest() const noexcept { return digest_; }

  Code operator()(Code x) const { return table_[static_cast<std::size_t>(x)]; }
  FieldElement apply(const FieldElement& x) const;

 private:
  Field field_;
  std::vector<Code> table_;
  bool is_permutation_ = false;
  std::string digest_;
};

enum class SBoxFormat { HexTable, Json };

/// Whitespace-separated 0x-prefixed entries, exactly p^n of them.
SBox parse_hex_table(const Field& field, std::string_view text);
/// { "field": {p, n, modulus}, "table": [ints] }.
SBox parse_sbox_json(std::string_view text);
/// The hex table format needs the field from the caller; JSON carries its own.
SBox load_sbox(const std::filesystem::path& path, SBoxFormat format, const Field& field = nullptr);
std::string to_hex_table(const SBox& sbox);

/// The AES S-box: inversion in GF(2^8) mod x^8+x^4+x^3+x+1, then the AES
/// bit-matrix and the constant 0x63.
SBox build_aes_sbox();
/// x -> inv0(x) on the given field.
SBox inversion_sbox(const Field& field);
SBox identity_sbox(const Field& field);

enum class FindingKind { Invariant, AffineImage };

struct Finding {
  AffineSubspace subspace;
  FindingKind kind = FindingKind::Invariant;
  /// Cardinality at most 2 (fixed points and two-element invariants).
  bool small = false;
  /// The image subspace, for AffineImage findings.
  std::optional<AffineSubspace> image;
};

struct ScanReport {
  std::string sbox_id;
  std::vector<Finding> found;
  std::vector<int> dims_scanned;
  std::uint64_t subspace_count_scanned = 0;
  std::chrono::duration<double> elapsed{0};
};

/// True when f(u) lies in U for every u in U, by direct evaluation.
bool is_invariant(const SBox& f, const AffineSubspace& u);

/// Every affine U (in the requested dimensions, default 0..n) with f(U) in U.
/// Throws CapExceeded.
ScanReport scan_invariant(const SBox& f, std::optional<std::vector<int>> dims = std::nullopt,
                          const RunOptions& options = {});

/// Every affine U with |U| >= min_card whose image f(U) is an affine subspace.
ScanReport scan_affine_images(const SBox& f, std::uint64_t min_card = 3, const RunOptions& options = {});

struct CosetSurveyEntry {
  LinearSubspace linear;
  /// Canonical (u, v) with f(u + L) = v + L.
  std::vector<std::pair<FieldElement, FieldElement>> pairs;
};

/// For every linear L with 0 < dim L < n, the cosets f maps onto cosets of L.
std::vector<CosetSurveyEntry> coset_permutation_survey(const SBox& f, const RunOptions& options = {});

}  // namespace invsub
