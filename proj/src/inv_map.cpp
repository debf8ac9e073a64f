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

#include "invsub/inv_map.hpp"

#include <algorithm>
#include <mutex>
#include <ostream>
#include <set>

#include "parallel.hpp"

namespace invsub {

std::vector<FieldElement> image_under_inv(const AffineSubspace& u, std::uint64_t cap) {
  std::vector<FieldElement> image;
  for (const auto& x : elements(u, cap)) image.push_back(inv0(x));
  std::sort(image.begin(), image.end());
  return image;
}

std::optional<AffineSubspace> classify_subspace(const AffineSubspace& u, std::uint64_t cap) {
  return as_affine_subspace(image_under_inv(u, cap));
}

std::vector<AffineSubspace> predicted_stable(const Field& field, const RunOptions& options) {
  const FieldSpec& spec = *field;
  std::set<AffineSubspace> found;
  for (int k : spec.divisors()) {
    if (spec.weight(k) <= 2) continue;
    const AffineSubspace sub(subfield_as_subspace(field, k), 0);
    if (k == spec.n()) {
      found.insert(sub);
      continue;
    }
    if (spec.order() - 1 > options.cap) {
      throw Error(ErrorKind::CapExceeded, "scaling scan over " + std::to_string(spec.order() - 1) +
                                              " multipliers exceeds cap");
    }
    for (Code q = 1; q < spec.order(); ++q) found.insert(scale_subspace(FieldElement(field, q), sub));
  }
  return {found.begin(), found.end()};
}

std::vector<AffineSubspace> brute_force_stable(const Field& field, const RunOptions& options,
                                               std::uint64_t* candidates) {
  const FieldSpec& spec = *field;
  std::vector<int> dims;
  for (int k = 0; k <= spec.n(); ++k) {
    if (spec.weight(k) > 2) dims.push_back(k);
  }
  const std::uint64_t total = affine_count(spec, dims);
  if (total > options.cap) {
    throw Error(ErrorKind::CapExceeded, std::to_string(total) + " candidate subspaces exceed cap " +
                                            std::to_string(options.cap));
  }
  std::vector<AffineSubspace> result;
  for (int k : dims) {
    const AffineEnumerator stream(field, k, options.cap);
    std::mutex mu;
    detail::parallel_ranges(stream.linear().size(), options.workers,
                            [&](std::uint64_t begin, std::uint64_t end, unsigned) {
                              std::vector<AffineSubspace> local;
                              stream.for_each(begin * stream.cosets_per_linear(), end * stream.cosets_per_linear(),
                                              [&](const AffineSubspace& u) {
                                                if (classify_subspace(u)) local.push_back(u);
                                              });
                              std::lock_guard lock(mu);
                              result.insert(result.end(), local.begin(), local.end());
                            });
    if (options.progress) *options.progress << "classify dim " << k << ": " << stream.size() << " candidates\n";
  }
  std::sort(result.begin(), result.end());
  if (candidates) *candidates = total;
  return result;
}

bool inverse_sum_identity_check(const AffineSubspace& u) {
  if (u.cardinality() <= 2) throw Error(ErrorKind::PreconditionViolated, "identity needs |U| > 2");
  if (!classify_subspace(u)) throw Error(ErrorKind::PreconditionViolated, "image of U is not affine");
  const FieldSpec& spec = *u.field();
  const auto shifts = element_codes(AffineSubspace(u.linear(), 0));
  for (Code x : element_codes(u)) {
    Code sum = 0;
    for (Code s : shifts) sum = spec.add(sum, spec.inv0(spec.add(x, s)));
    if (sum != 0) return false;
  }
  return true;
}

bool hua_closure_check(const LinearSubspace& linear) {
  const AffineSubspace as_affine(linear, 0);
  const auto image = classify_subspace(as_affine);
  if (!image || !image->is_linear()) {
    throw Error(ErrorKind::PreconditionViolated, "inverse image of L is not a linear subspace");
  }
  const FieldSpec& spec = *linear.field();
  const auto members = element_codes(as_affine);
  for (Code a : members) {
    const Code a2 = spec.mul(a, a);
    for (Code b : members) {
      if (!linear.contains_code(spec.mul(a2, spec.inv0(b)))) return false;
    }
  }
  return true;
}

StableSubspaceReport classify_field(const Field& field, bool brute, const RunOptions& options) {
  StableSubspaceReport report;
  report.field = field;
  report.predicted = predicted_stable(field, options);
  if (brute) {
    report.brute = brute_force_stable(field, options, &report.brute_candidates);
    report.agree = *report.brute == report.predicted;
  }
  return report;
}

}  // namespace invsub
