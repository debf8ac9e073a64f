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

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "invsub/gf_core.hpp"

namespace invsub {

/// Streams yielding more subspaces than this are refused unless overridden.
inline constexpr std::uint64_t kDefaultSubspaceCap = std::uint64_t{1} << 30;
/// Largest subspace cardinality that elements() will materialize by default.
inline constexpr std::uint64_t kDefaultElementCap = std::uint64_t{1} << 24;

/// Lowest coordinate index with a nonzero digit, or -1 for zero.
int pivot_of(const FieldSpec& spec, Code v);

/// Reduces v against RREF rows: subtracts multiples of each row until every
/// pivot coordinate of v is zero. The result is the canonical coset key.
Code reduce_against(const FieldSpec& spec, std::span<const Code> rows, std::span<const int> pivots, Code v);

/// Inserts v into a set of RREF rows, keeping the set reduced and sorted by
/// pivot. Returns false when v already lies in their span.
bool rref_insert(const FieldSpec& spec, std::vector<Code>& rows, std::vector<int>& pivots, Code v);

/// Number of k-dimensional subspaces of F_p^n (saturates at UINT64_MAX).
std::uint64_t gaussian_binomial(std::uint64_t p, int n, int k);

/// F_p-linear subspace of GF(p^n), stored as its unique RREF basis.
///
/// Basis rows are codes; a row's pivot is its lowest nonzero coordinate, the
/// pivot digit is 1, every other row is 0 at that coordinate, and rows are
/// sorted by pivot. Equality of subspaces is equality of these bases.
class LinearSubspace {
 public:
  LinearSubspace() = default;
  /// Span of arbitrary generators.
  LinearSubspace(Field field, std::span<const Code> generators);

  static LinearSubspace zero(Field field);
  static LinearSubspace whole(Field field);
  /// Wraps rows already in RREF order; no checking.
  static LinearSubspace from_rref(Field field, std::vector<Code> rows, std::vector<int> pivots);

  const Field& field() const noexcept { return field_; }
  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  const std::vector<Code>& basis() const noexcept { return basis_; }
  const std::vector<int>& pivots() const noexcept { return pivots_; }
  std::uint64_t cardinality() const noexcept;

  /// Canonical representative of v + L: v with every pivot coordinate zeroed.
  Code reduce(Code v) const { return reduce_against(*field_, basis_, pivots_, v); }
  bool contains_code(Code v) const { return reduce(v) == 0; }

  friend bool operator==(const LinearSubspace& a, const LinearSubspace& b) {
    return a.basis_ == b.basis_ && same_field(a.field_, b.field_);
  }
  friend std::strong_ordering operator<=>(const LinearSubspace& a, const LinearSubspace& b) {
    if (auto c = a.basis_.size() <=> b.basis_.size(); c != 0) return c;
    return a.basis_ <=> b.basis_;
  }

 private:
  Field field_;
  std::vector<Code> basis_;
  std::vector<int> pivots_;
};

/// Coset rep + L with rep canonical (zero at every pivot of L).
class AffineSubspace {
 public:
  AffineSubspace() = default;
  /// Canonicalizes rep.
  AffineSubspace(LinearSubspace linear, Code rep);

  const LinearSubspace& linear() const noexcept { return linear_; }
  const Field& field() const noexcept { return linear_.field(); }
  FieldElement rep() const { return {linear_.field(), rep_}; }
  Code rep_code() const noexcept { return rep_; }
  int dim() const noexcept { return linear_.dim(); }
  std::uint64_t cardinality() const noexcept { return linear_.cardinality(); }
  bool is_linear() const noexcept { return rep_ == 0; }
  bool contains_code(Code v) const { return linear_.reduce(v) == rep_; }

  friend bool operator==(const AffineSubspace& a, const AffineSubspace& b) {
    return a.rep_ == b.rep_ && a.linear_ == b.linear_;
  }
  friend std::strong_ordering operator<=>(const AffineSubspace& a, const AffineSubspace& b) {
    if (auto c = a.linear_ <=> b.linear_; c != 0) return c;
    return a.rep_ <=> b.rep_;
  }

 private:
  LinearSubspace linear_;
  Code rep_ = 0;
};

LinearSubspace span(std::span<const FieldElement> vectors);
/// Field given explicitly so the empty span is well defined.
LinearSubspace span(const Field& field, std::span<const FieldElement> vectors);

AffineSubspace canonicalize_affine(const FieldElement& point, const LinearSubspace& linear);

/// Every element of U, sorted by canonical integer. Throws CapExceeded.
std::vector<FieldElement> elements(const AffineSubspace& u, std::uint64_t cap = kDefaultElementCap);
std::vector<Code> element_codes(const AffineSubspace& u, std::uint64_t cap = kDefaultElementCap);

bool contains(const AffineSubspace& u, const FieldElement& x);

/// The affine subspace whose point set is exactly S, if there is one.
/// Duplicates in S are ignored. Throws EmptySet.
std::optional<AffineSubspace> as_affine_subspace(std::span<const FieldElement> set);
std::optional<AffineSubspace> as_affine_subspace_codes(const Field& field, std::span<const Code> set);

/// Canonical form of {q u : u in U}. Throws ZeroScalar.
AffineSubspace scale_subspace(const FieldElement& q, const AffineSubspace& u);

/// F_{p^k} as the fixed space of x -> x^(p^k). Throws NotADivisor.
LinearSubspace subfield_as_subspace(const Field& field, int k);

FieldElement sum_of_elements(const LinearSubspace& linear, std::uint64_t cap = kDefaultElementCap);

/// Random-access stream of all k-dimensional linear subspaces, ordered by
/// pivot set (lexicographic) and then by free entries (lexicographic, row by
/// row, lower columns first). Index ranges split the stream deterministically.
class LinearEnumerator {
 public:
  LinearEnumerator(Field field, int k, std::uint64_t cap = kDefaultSubspaceCap);

  const Field& field() const noexcept { return field_; }
  int dim() const noexcept { return k_; }
  std::uint64_t size() const noexcept { return total_; }

  /// Writes the RREF rows and pivots of the subspace at index.
  void basis_at(std::uint64_t index, std::vector<Code>& rows, std::vector<int>& pivots) const;
  LinearSubspace at(std::uint64_t index) const;

  void for_each(std::uint64_t begin, std::uint64_t end,
                const std::function<void(const LinearSubspace&)>& fn) const;

 private:
  struct PivotSet {
    std::vector<int> pivots;
    std::vector<std::pair<int, int>> free_slots;  // (row, column)
    std::uint64_t first_index;
    std::uint64_t count;
  };

  Field field_;
  int k_;
  std::vector<PivotSet> sets_;
  std::uint64_t total_ = 0;
};

/// Stream of all k-dimensional affine subspaces: linear subspace major,
/// canonical representative (by canonical integer) minor.
class AffineEnumerator {
 public:
  AffineEnumerator(Field field, int k, std::uint64_t cap = kDefaultSubspaceCap);

  const LinearEnumerator& linear() const noexcept { return linear_; }
  std::uint64_t cosets_per_linear() const noexcept { return cosets_; }
  std::uint64_t size() const noexcept { return linear_.size() * cosets_; }

  AffineSubspace at(std::uint64_t index) const;
  void for_each(std::uint64_t begin, std::uint64_t end,
                const std::function<void(const AffineSubspace&)>& fn) const;

 private:
  LinearEnumerator linear_;
  std::uint64_t cosets_;
};

/// Canonical representative number `index` among the cosets of a linear
/// subspace with these pivots (ordered by canonical integer).
Code coset_rep_at(const FieldSpec& spec, std::span<const int> pivots, std::uint64_t index);

LinearEnumerator enumerate_linear(const Field& field, int k, std::uint64_t cap = kDefaultSubspaceCap);
AffineEnumerator enumerate_affine(const Field& field, int k, std::uint64_t cap = kDefaultSubspaceCap);

/// Total affine subspace count over the given dimensions.
std::uint64_t affine_count(const FieldSpec& spec, std::span<const int> dims);

}  // namespace invsub
