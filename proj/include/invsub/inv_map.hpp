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

#include <optional>
#include <vector>

#include "invsub/gf_core.hpp"
#include "invsub/options.hpp"
#include "invsub/subspaces.hpp"

namespace invsub {

/// Affine subspaces U, |U| > 2, whose image under inversion is affine:
/// the closed-form prediction and, optionally, the exhaustive ground truth.
struct StableSubspaceReport {
  Field field;
  std::vector<AffineSubspace> predicted;
  std::optional<std::vector<AffineSubspace>> brute;
  std::uint64_t brute_candidates = 0;
  bool agree = false;
};

/// {inv0(u) : u in U}, sorted by canonical integer.
std::vector<FieldElement> image_under_inv(const AffineSubspace& u, std::uint64_t cap = kDefaultElementCap);

/// The image of U under inversion when that image is an affine subspace.
/// Total: also answers for |U| <= 2.
std::optional<AffineSubspace> classify_subspace(const AffineSubspace& u, std::uint64_t cap = kDefaultElementCap);

/// Every q * F_{p^k} with k | n and p^k > 2, deduplicated, in canonical order.
/// Throws CapExceeded when the scan over q is longer than options.cap.
std::vector<AffineSubspace> predicted_stable(const Field& field, const RunOptions& options = {});

/// Every affine U with |U| > 2 whose inverse image is affine, found by
/// classifying each candidate. Throws CapExceeded.
std::vector<AffineSubspace> brute_force_stable(const Field& field, const RunOptions& options = {},
                                               std::uint64_t* candidates = nullptr);

/// Checks that for every x in U the inverses of x + L sum to zero, where L
/// is the linear part of U. Throws PreconditionViolated unless |U| > 2 and
/// the image of U is affine.
bool inverse_sum_identity_check(const AffineSubspace& u);

/// Checks a^2 * inv0(b) in L for all a, b in L. Requires L and inv0(L) to
/// both be linear; throws PreconditionViolated otherwise.
bool hua_closure_check(const LinearSubspace& linear);

StableSubspaceReport classify_field(const Field& field, bool brute, const RunOptions& options = {});

}  // namespace invsub
