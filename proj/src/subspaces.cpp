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

#include "invsub/subspaces.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "invsub/linalg.hpp"

namespace invsub {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t sat_pow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = sat_mul(r, base);
  return r;
}

}  // namespace

bool rref_insert(const FieldSpec& spec, std::vector<Code>& rows, std::vector<int>& pivots, Code v) {
  v = reduce_against(spec, rows, pivots, v);
  if (v == 0) return false;
  const int piv = pivot_of(spec, v);
  const std::uint32_t lead = spec.digit(v, piv);
  if (lead != 1) {
    // Scalar inverse in F_p via the prime-field slice of the field.
    const Code inv = spec.inv0(lead);
    v = spec.scale(v, static_cast<std::uint32_t>(inv));
  }
  for (auto& row : rows) {
    const std::uint32_t d = spec.digit(row, piv);
    if (d != 0) row = spec.sub(row, spec.scale(v, d));
  }
  const auto pos = std::upper_bound(pivots.begin(), pivots.end(), piv) - pivots.begin();
  rows.insert(rows.begin() + pos, v);
  pivots.insert(pivots.begin() + pos, piv);
  return true;
}

int pivot_of(const FieldSpec& spec, Code v) {
  if (v == 0) return -1;
  if (spec.p() == 2) return std::countr_zero(v);
  for (int i = 0; i < spec.n(); ++i) {
    if (v % spec.p() != 0) return i;
    v /= spec.p();
  }
  return -1;
}

Code reduce_against(const FieldSpec& spec, std::span<const Code> rows, std::span<const int> pivots, Code v) {
  if (spec.p() == 2) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if ((v >> pivots[i]) & 1U) v ^= rows[i];
    }
    return v;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::uint32_t d = spec.digit(v, pivots[i]);
    if (d != 0) v = spec.sub(v, spec.scale(rows[i], d));
  }
  return v;
}

std::uint64_t gaussian_binomial(std::uint64_t p, int n, int k) {
  if (k < 0 || k > n) return 0;
  unsigned __int128 result = 1;
  for (int i = 0; i < k; ++i) {
    const std::uint64_t num = sat_pow(p, n - i);
    const std::uint64_t den = sat_pow(p, i + 1);
    if (num == kSaturated || den == kSaturated) return kSaturated;
    result = result * (num - 1);
    result /= (den - 1);
    if (result > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t affine_count(const FieldSpec& spec, std::span<const int> dims) {
  std::uint64_t total = 0;
  for (int k : dims) {
    total = sat_add(total, sat_mul(gaussian_binomial(spec.p(), spec.n(), k), sat_pow(spec.p(), spec.n() - k)));
  }
  return total;
}

// ---------------------------------------------------------------------------
// LinearSubspace / AffineSubspace

LinearSubspace::LinearSubspace(Field field, std::span<const Code> generators) : field_(std::move(field)) {
  for (Code g : generators) {
    if (!field_->contains_code(g)) throw Error(ErrorKind::OutOfRangeEntry, "generator outside field");
    rref_insert(*field_, basis_, pivots_, g);
  }
}

LinearSubspace LinearSubspace::zero(Field field) { return LinearSubspace(std::move(field), std::span<const Code>{}); }

LinearSubspace LinearSubspace::whole(Field field) {
  std::vector<Code> rows;
  std::vector<int> pivots;
  for (int i = 0; i < field->n(); ++i) {
    rows.push_back(field->weight(i));
    pivots.push_back(i);
  }
  return from_rref(std::move(field), std::move(rows), std::move(pivots));
}

LinearSubspace LinearSubspace::from_rref(Field field, std::vector<Code> rows, std::vector<int> pivots) {
  LinearSubspace l;
  l.field_ = std::move(field);
  l.basis_ = std::move(rows);
  l.pivots_ = std::move(pivots);
  return l;
}

std::uint64_t LinearSubspace::cardinality() const noexcept { return sat_pow(field_->p(), dim()); }

AffineSubspace::AffineSubspace(LinearSubspace linear, Code rep) : linear_(std::move(linear)) {
  if (!linear_.field()->contains_code(rep)) throw Error(ErrorKind::OutOfRangeEntry, "representative outside field");
  rep_ = linear_.reduce(rep);
}

LinearSubspace span(const Field& field, std::span<const FieldElement> vectors) {
  std::vector<Code> codes;
  codes.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (!same_field(v.field(), field)) throw Error(ErrorKind::FieldMismatch, "span over mixed fields");
    codes.push_back(v.value());
  }
  return LinearSubspace(field, codes);
}

LinearSubspace span(std::span<const FieldElement> vectors) {
  if (vectors.empty()) throw Error(ErrorKind::InvalidArgument, "empty span needs an explicit field");
  return span(vectors.front().field(), vectors);
}

AffineSubspace canonicalize_affine(const FieldElement& point, const LinearSubspace& linear) {
  if (!same_field(point.field(), linear.field())) throw Error(ErrorKind::FieldMismatch, "point and subspace differ");
  return AffineSubspace(linear, point.value());
}

std::vector<Code> element_codes(const AffineSubspace& u, std::uint64_t cap) {
  if (u.cardinality() > cap) {
    throw Error(ErrorKind::CapExceeded, "subspace of cardinality " + std::to_string(u.cardinality()) +
                                            " exceeds element cap " + std::to_string(cap));
  }
  const FieldSpec& spec = *u.field();
  std::vector<Code> out{u.rep_code()};
  out.reserve(static_cast<std::size_t>(u.cardinality()));
  for (Code row : u.linear().basis()) {
    const std::size_t base = out.size();
    for (std::uint32_t c = 1; c < spec.p(); ++c) {
      const Code step = spec.scale(row, c);
      for (std::size_t i = 0; i < base; ++i) out.push_back(spec.add(out[i], step));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FieldElement> elements(const AffineSubspace& u, std::uint64_t cap) {
  std::vector<FieldElement> out;
  for (Code c : element_codes(u, cap)) out.emplace_back(u.field(), c);
  return out;
}

bool contains(const AffineSubspace& u, const FieldElement& x) {
  if (!same_field(u.field(), x.field())) throw Error(ErrorKind::FieldMismatch, "element and subspace differ");
  return u.contains_code(x.value());
}

std::optional<AffineSubspace> as_affine_subspace_codes(const Field& field, std::span<const Code> set) {
  if (set.empty()) throw Error(ErrorKind::EmptySet, "as_affine_subspace of an empty set");
  std::vector<Code> s(set.begin(), set.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  const FieldSpec& spec = *field;
  const Code s0 = s.front();
  std::vector<Code> rows;
  std::vector<int> pivots;
  std::uint64_t card = 1;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (rref_insert(spec, rows, pivots, spec.sub(s[i], s0))) {
      card = sat_mul(card, spec.p());
      if (card > s.size()) return std::nullopt;
    }
  }
  if (card != s.size()) return std::nullopt;
  return AffineSubspace(LinearSubspace::from_rref(field, std::move(rows), std::move(pivots)), s0);
}

std::optional<AffineSubspace> as_affine_subspace(std::span<const FieldElement> set) {
  if (set.empty()) throw Error(ErrorKind::EmptySet, "as_affine_subspace of an empty set");
  const Field& field = set.front().field();
  std::vector<Code> codes;
  codes.reserve(set.size());
  for (const auto& x : set) {
    if (!same_field(x.field(), field)) throw Error(ErrorKind::FieldMismatch, "set spans several fields");
    codes.push_back(x.value());
  }
  return as_affine_subspace_codes(field, codes);
}

AffineSubspace scale_subspace(const FieldElement& q, const AffineSubspace& u) {
  if (!same_field(q.field(), u.field())) throw Error(ErrorKind::FieldMismatch, "scalar and subspace differ");
  if (q.is_zero()) throw Error(ErrorKind::ZeroScalar, "scaling by zero");
  const FieldSpec& spec = q.spec();
  std::vector<Code> gens;
  for (Code row : u.linear().basis()) gens.push_back(spec.mul(q.value(), row));
  return AffineSubspace(LinearSubspace(u.field(), gens), spec.mul(q.value(), u.rep_code()));
}

LinearSubspace subfield_as_subspace(const Field& field, int k) {
  const int n = field->n();
  if (k < 1 || n % k != 0) {
    throw Error(ErrorKind::NotADivisor, std::to_string(k) + " does not divide " + std::to_string(n));
  }
  Matrix m(field->p(), n, n);
  for (int j = 0; j < n; ++j) {
    const Code e = field->weight(j);
    const auto col = field->coeffs(field->sub(field->frobenius(e, static_cast<std::uint64_t>(k)), e));
    for (int i = 0; i < n; ++i) m.set(i, j, col[static_cast<std::size_t>(i)]);
  }
  std::vector<Code> gens;
  for (const auto& v : m.kernel()) gens.push_back(field->encode(v));
  return LinearSubspace(field, gens);
}

FieldElement sum_of_elements(const LinearSubspace& linear, std::uint64_t cap) {
  const FieldSpec& spec = *linear.field();
  Code sum = 0;
  for (Code c : element_codes(AffineSubspace(linear, 0), cap)) sum = spec.add(sum, c);
  return {linear.field(), sum};
}

// ---------------------------------------------------------------------------
// Enumeration

LinearEnumerator::LinearEnumerator(Field field, int k, std::uint64_t cap) : field_(std::move(field)), k_(k) {
  const int n = field_->n();
  if (k < 0 || k > n) throw Error(ErrorKind::InvalidArgument, "dimension out of range");
  const std::uint64_t expected = gaussian_binomial(field_->p(), n, k);
  if (expected > cap) {
    throw Error(ErrorKind::CapExceeded, std::to_string(expected) + " subspaces of dimension " + std::to_string(k) +
                                            " exceed cap " + std::to_string(cap));
  }
  std::vector<int> comb(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
  while (true) {
    PivotSet set;
    set.pivots = comb;
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int c : comb) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int r = 0; r < k; ++r) {
      for (int col = comb[static_cast<std::size_t>(r)] + 1; col < n; ++col) {
        if (!is_pivot[static_cast<std::size_t>(col)]) set.free_slots.emplace_back(r, col);
      }
    }
    set.first_index = total_;
    set.count = sat_pow(field_->p(), static_cast<int>(set.free_slots.size()));
    total_ = sat_add(total_, set.count);
    sets_.push_back(std::move(set));
    // Next combination in lexicographic order.
    int i = k - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j) - 1] + 1;
  }
}

void LinearEnumerator::basis_at(std::uint64_t index, std::vector<Code>& rows, std::vector<int>& pivots) const {
  if (index >= total_) throw Error(ErrorKind::InvalidArgument, "subspace index out of range");
  auto it = std::upper_bound(sets_.begin(), sets_.end(), index,
                             [](std::uint64_t v, const PivotSet& s) { return v < s.first_index; });
  const PivotSet& set = *(it - 1);
  std::uint64_t local = index - set.first_index;
  const FieldSpec& spec = *field_;
  rows.assign(static_cast<std::size_t>(k_), 0);
  pivots = set.pivots;
  for (int r = 0; r < k_; ++r) rows[static_cast<std::size_t>(r)] = spec.weight(set.pivots[static_cast<std::size_t>(r)]);
  for (std::size_t s = set.free_slots.size(); s-- > 0;) {
    const auto d = local % spec.p();
    local /= spec.p();
    const auto [r, col] = set.free_slots[s];
    rows[static_cast<std::size_t>(r)] += d * spec.weight(col);
  }
}

LinearSubspace LinearEnumerator::at(std::uint64_t index) const {
  std::vector<Code> rows;
  std::vector<int> pivots;
  basis_at(index, rows, pivots);
  return LinearSubspace::from_rref(field_, std::move(rows), std::move(pivots));
}

void LinearEnumerator::for_each(std::uint64_t begin, std::uint64_t end,
                                const std::function<void(const LinearSubspace&)>& fn) const {
  end = std::min(end, total_);
  for (std::uint64_t i = begin; i < end; ++i) fn(at(i));
}

Code coset_rep_at(const FieldSpec& spec, std::span<const int> pivots, std::uint64_t index) {
  Code rep = 0;
  std::size_t next_pivot = 0;
  for (int col = 0; col < spec.n(); ++col) {
    if (next_pivot < pivots.size() && pivots[next_pivot] == col) {
      ++next_pivot;
      continue;
    }
    rep += (index % spec.p()) * spec.weight(col);
    index /= spec.p();
  }
  return rep;
}

AffineEnumerator::AffineEnumerator(Field field, int k, std::uint64_t cap)
    : linear_(field, k, cap), cosets_(sat_pow(field->p(), field->n() - k)) {
  if (sat_mul(linear_.size(), cosets_) > cap) {
    throw Error(ErrorKind::CapExceeded, "affine subspaces of dimension " + std::to_string(k) + " exceed cap " +
                                            std::to_string(cap));
  }
}

AffineSubspace AffineEnumerator::at(std::uint64_t index) const {
  const LinearSubspace lin = linear_.at(index / cosets_);
  const Code rep = coset_rep_at(*linear_.field(), lin.pivots(), index % cosets_);
  return AffineSubspace(lin, rep);
}

void AffineEnumerator::for_each(std::uint64_t begin, std::uint64_t end,
                                const std::function<void(const AffineSubspace&)>& fn) const {
  end = std::min(end, size());
  std::uint64_t i = begin;
  while (i < end) {
    const std::uint64_t li = i / cosets_;
    const LinearSubspace lin = linear_.at(li);
    const std::uint64_t stop = std::min(end, (li + 1) * cosets_);
    for (; i < stop; ++i) fn(AffineSubspace(lin, coset_rep_at(*linear_.field(), lin.pivots(), i % cosets_)));
  }
}

LinearEnumerator enumerate_linear(const Field& field, int k, std::uint64_t cap) { return {field, k, cap}; }

AffineEnumerator enumerate_affine(const Field& field, int k, std::uint64_t cap) { return {field, k, cap}; }

}  // namespace invsub
