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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "invsub/subspaces.hpp"
#include "oracles.hpp"

using namespace invsub;

namespace {

oracle::Field oracle_of(const FieldSpec& spec) { return {spec.p(), spec.n(), spec.modulus()}; }

oracle::PointSet point_set(const AffineSubspace& u) {
  const auto codes = element_codes(u);
  return {codes.begin(), codes.end()};
}

const std::vector<std::pair<std::uint32_t, int>> kFields = {{2, 2}, {2, 3}, {2, 4}, {3, 2}, {5, 2}, {3, 3}};

}  // namespace

TEST_CASE("Gaussian binomials match the product formula") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (int n = 0; n <= 8; ++n) {
      for (int k = 0; k <= n; ++k) CHECK(gaussian_binomial(p, n, k) == oracle::gaussian_binomial(p, n, k));
    }
  }
  CHECK(gaussian_binomial(2, 4, 1) == 15);
  CHECK(gaussian_binomial(2, 4, 2) == 35);
  CHECK(gaussian_binomial(2, 9, 10) == 0);
}

TEST_CASE("span") {
  const Field f16 = make_field(2, 4);
  CHECK(span(f16, std::vector<FieldElement>{}).dim() == 0);
  const FieldElement v(f16, 0x6);
  CHECK(span(std::vector<FieldElement>{v, v, v + v}).dim() == 1);
  std::vector<FieldElement> all;
  for (Code x = 0; x < 16; ++x) all.emplace_back(f16, x);
  CHECK(span(all) == LinearSubspace::whole(f16));

  const Field f9 = make_field(3, 2);
  const LinearSubspace l(f9, std::vector<Code>{5});  // 5 = 2 + 1*3, scaled to pivot digit 1
  CHECK(l.basis() == std::vector<Code>{7});
  CHECK(l.pivots() == std::vector<int>{0});
}

TEST_CASE("enumerate_linear matches the span-dedup oracle") {
  for (auto [p, n] : kFields) {
    const Field field = make_field(p, n);
    const oracle::Field ref = oracle_of(*field);
    if (field->order() > 27) continue;
    for (int k = 0; k <= n; ++k) {
      CAPTURE(p);
      CAPTURE(n);
      CAPTURE(k);
      const auto expected = oracle::linear_subspaces(ref, k);
      const LinearEnumerator en = enumerate_linear(field, k);
      REQUIRE(en.size() == expected.size());
      std::set<oracle::PointSet> got;
      std::set<LinearSubspace> distinct;
      en.for_each(0, en.size(), [&](const LinearSubspace& l) {
        got.insert(point_set(AffineSubspace(l, 0)));
        distinct.insert(l);
      });
      CHECK(distinct.size() == en.size());
      CHECK(got == expected);
      for (std::uint64_t i = 0; i < en.size(); ++i) {
        const LinearSubspace l = en.at(i);
        REQUIRE(LinearSubspace(field, l.basis()) == l);
      }
    }
  }
  std::uint64_t total = 0;
  for (int k = 0; k <= 4; ++k) total += enumerate_linear(make_field(2, 4), k).size();
  CHECK(total == 67);
}

TEST_CASE("affine counts") {
  const Field f16 = make_field(2, 4);
  CHECK(enumerate_affine(f16, 4).size() == 1);
  CHECK(enumerate_affine(f16, 1).size() == 120);
  CHECK(enumerate_affine(f16, 0).size() == 16);
  const std::vector<int> all{0, 1, 2, 3, 4};
  CHECK(affine_count(*f16, all) == oracle::affine_subspaces(oracle_of(*f16)).size());
  const Field f9 = make_field(3, 2);
  const std::vector<int> all9{0, 1, 2};
  CHECK(affine_count(*f9, all9) == oracle::affine_subspaces(oracle_of(*f9)).size());
  const std::vector<int> all256{0, 1, 2, 3, 4, 5, 6, 7, 8};
  std::uint64_t expected = 0;
  for (int k = 0; k <= 8; ++k) expected += oracle::gaussian_binomial(2, 8, k) << (8 - k);
  CHECK(affine_count(*aes_field(), all256) == expected);
  CHECK(expected == 7866259);
}

TEST_CASE("enumeration order is lexicographic and cap-checked") {
  const Field f16 = make_field(2, 4);
  const LinearEnumerator en = enumerate_linear(f16, 2);
  for (std::uint64_t i = 1; i < en.size(); ++i) {
    const LinearSubspace a = en.at(i - 1), b = en.at(i);
    REQUIRE(a.pivots() <= b.pivots());
  }
  CHECK_THROWS_AS(enumerate_linear(make_field(2, 16), 8), Error);
  CHECK_THROWS_AS(enumerate_affine(f16, 2, 10), Error);
}

TEST_CASE("coset soundness and round trip") {
  for (auto [p, n] : kFields) {
    const Field field = make_field(p, n);
    if (field->order() > 27) continue;
    for (int k = 0; k <= n; ++k) {
      const AffineEnumerator en = enumerate_affine(field, k);
      en.for_each(0, en.size(), [&](const AffineSubspace& u) {
        const auto pts = elements(u);
        REQUIRE(pts.size() == u.cardinality());
        for (const auto& x : pts) REQUIRE(canonicalize_affine(x, u.linear()) == u);
        REQUIRE(as_affine_subspace(pts) == u);
        REQUIRE(oracle::is_affine(oracle_of(*field), point_set(u)));
      });
    }
  }
}

TEST_CASE("canonicalize_affine examples") {
  const Field f16 = make_field(2, 4);
  const LinearSubspace one(f16, std::vector<Code>{1});
  CHECK(canonicalize_affine(FieldElement(f16, 0), one).rep_code() == 0);
  CHECK(canonicalize_affine(FieldElement(f16, 1), one).rep_code() == 0);
  CHECK(canonicalize_affine(FieldElement(f16, 6), one) == canonicalize_affine(FieldElement(f16, 7), one));
}

TEST_CASE("elements and containment") {
  const Field f9 = make_field(3, 2);
  CHECK(elements(AffineSubspace(LinearSubspace::whole(f9), 0)).size() == 9);
  const AffineSubspace point(LinearSubspace::zero(f9), 4);
  CHECK(element_codes(point) == std::vector<Code>{4});
  CHECK(contains(point, FieldElement(f9, 4)));
  CHECK_FALSE(contains(AffineSubspace(LinearSubspace::zero(f9), 0), FieldElement(f9, 1)));

  std::mt19937_64 rng(3);
  const Field f64 = make_field(2, 6);
  const AffineEnumerator en = enumerate_affine(f64, 3);
  std::uniform_int_distribution<std::uint64_t> pick(0, en.size() - 1);
  for (int i = 0; i < 50; ++i) {
    const AffineSubspace u = en.at(pick(rng));
    const auto pts = element_codes(u);
    for (Code x = 0; x < 64; ++x) {
      REQUIRE(u.contains_code(x) == std::binary_search(pts.begin(), pts.end(), x));
    }
  }
}

TEST_CASE("as_affine_subspace recognizes exactly the affine sets") {
  const Field f4 = make_field(2, 2);
  CHECK(as_affine_subspace_codes(f4, std::vector<Code>{2})->dim() == 0);
  CHECK(as_affine_subspace_codes(f4, std::vector<Code>{1, 3})->dim() == 1);
  CHECK_FALSE(as_affine_subspace_codes(f4, std::vector<Code>{0, 1, 2}));
  CHECK_THROWS_AS(as_affine_subspace_codes(f4, std::vector<Code>{}), Error);

  const Field f8 = make_field(2, 3);
  const oracle::Field ref = oracle_of(*f8);
  for (Code mask = 1; mask < 256; ++mask) {
    std::vector<Code> set;
    for (Code x = 0; x < 8; ++x)
      if ((mask >> x) & 1) set.push_back(x);
    const auto got = as_affine_subspace_codes(f8, set);
    const oracle::PointSet ps(set.begin(), set.end());
    REQUIRE(got.has_value() == oracle::is_affine(ref, ps));
    if (got) REQUIRE(point_set(*got) == ps);
  }
}

TEST_CASE("scale_subspace acts pointwise") {
  for (auto [p, n] : kFields) {
    const Field field = make_field(p, n);
    const FieldSpec& spec = *field;
    std::mt19937_64 rng(p * 100 + static_cast<unsigned>(n));
    for (int k = 0; k <= n; ++k) {
      const AffineEnumerator en = enumerate_affine(field, k);
      std::uniform_int_distribution<std::uint64_t> pick(0, en.size() - 1);
      for (int i = 0; i < 20; ++i) {
        const AffineSubspace u = en.at(pick(rng));
        const FieldElement q(field, 1 + rng() % (spec.order() - 1));
        oracle::PointSet expected;
        for (Code x : element_codes(u)) expected.insert(spec.mul(q.value(), x));
        const AffineSubspace scaled = scale_subspace(q, u);
        REQUIRE(point_set(scaled) == expected);
        REQUIRE(scale_subspace(inv0(q), scaled) == u);
      }
    }
    CHECK_THROWS_AS(scale_subspace(FieldElement::zero(field), AffineSubspace(LinearSubspace::whole(field), 0)), Error);
  }
  const Field f16 = make_field(2, 4);
  const AffineSubspace f4(subfield_as_subspace(f16, 2), 0);
  std::set<AffineSubspace> scalings;
  for (Code q = 1; q < 16; ++q) scalings.insert(scale_subspace(FieldElement(f16, q), f4));
  CHECK(scalings.size() == 5);
}

TEST_CASE("subfields as subspaces") {
  const Field aes = aes_field();
  const LinearSubspace f16 = subfield_as_subspace(aes, 4);
  CHECK(f16.dim() == 4);
  std::set<Code> fixed;
  for (Code x = 0; x < 256; ++x)
    if (aes->frobenius(x, 4) == x) fixed.insert(x);
  const auto codes = element_codes(AffineSubspace(f16, 0));
  CHECK(std::set<Code>(codes.begin(), codes.end()) == fixed);
  for (Code a : codes)
    for (Code b : codes) REQUIRE(f16.contains_code(aes->mul(a, b)));
  CHECK(f16.contains_code(0));
  CHECK(f16.contains_code(1));
  CHECK(subfield_as_subspace(aes, 8) == LinearSubspace::whole(aes));
  CHECK(subfield_as_subspace(aes, 1) == LinearSubspace(aes, std::vector<Code>{1}));
  CHECK_THROWS_AS(subfield_as_subspace(aes, 3), Error);
  const Field f25 = make_field(5, 2);
  const auto prime = element_codes(AffineSubspace(subfield_as_subspace(f25, 1), 0));
  CHECK(prime == std::vector<Code>{0, 1, 2, 3, 4});
}

TEST_CASE("sum of a linear subspace vanishes once it has more than two elements") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, int>>{{2, 4}, {2, 6}, {3, 2}, {3, 3}, {5, 2}}) {
    const Field field = make_field(p, n);
    for (int k = 0; k <= n; ++k) {
      const LinearEnumerator en = enumerate_linear(field, k);
      en.for_each(0, en.size(), [&](const LinearSubspace& l) {
        const FieldElement s = sum_of_elements(l);
        if (l.cardinality() > 2) {
          REQUIRE(s.is_zero());
        } else if (l.cardinality() == 2) {
          REQUIRE(s.value() == l.basis()[0]);
        } else {
          REQUIRE(s.is_zero());
        }
      });
    }
  }
}

TEST_CASE("element cap") {
  const Field big = make_field(2, 16);
  CHECK_THROWS_AS(elements(AffineSubspace(LinearSubspace::whole(big), 0), 100), Error);
}
