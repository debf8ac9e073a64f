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

#include "invsub/certify.hpp"
#include "invsub/inv_map.hpp"
#include "invsub/scan.hpp"
#include "oracles.hpp"

using namespace invsub;

namespace {

oracle::Field oracle_of(const FieldSpec& spec) { return {spec.p(), spec.n(), spec.modulus()}; }

std::set<oracle::PointSet> found_sets(const ScanReport& report) {
  std::set<oracle::PointSet> out;
  for (const auto& f : report.found) {
    const auto codes = element_codes(f.subspace);
    out.emplace(codes.begin(), codes.end());
  }
  return out;
}

std::vector<AffineSubspace> found_subspaces(const ScanReport& report) {
  std::vector<AffineSubspace> out;
  for (const auto& f : report.found) out.push_back(f.subspace);
  return out;
}

SBox random_permutation(const Field& field, std::mt19937_64& rng) {
  std::vector<Code> table(static_cast<std::size_t>(field->order()));
  std::iota(table.begin(), table.end(), Code{0});
  std::shuffle(table.begin(), table.end(), rng);
  return {field, table};
}

void check_error(ErrorKind kind, auto&& fn) {
  try {
    fn();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
  }
}

}  // namespace

TEST_CASE("AES table matches the published S-box") {
  const SBox aes = build_aes_sbox();
  for (Code x = 0; x < 256; ++x) REQUIRE(aes(x) == oracle::kAesSbox[x]);
  CHECK(aes.is_permutation());
  CHECK(aes(0x00) == 0x63);
  CHECK(aes(0x63) == 0xFB);
  CHECK(aes(0x73) == 0x8F);
  CHECK(aes(0x8F) == 0x73);
  const SBox loaded = load_sbox(INVSUB_TEST_DATA "/aes_sbox.hex", SBoxFormat::HexTable, aes_field());
  CHECK(loaded.table() == aes.table());
  CHECK(loaded.digest() == aes.digest());
  CHECK(aes.digest().rfind("fnv1a64:", 0) == 0);
  CHECK(parse_hex_table(aes_field(), to_hex_table(aes)).table() == aes.table());
}

TEST_CASE("table loading errors") {
  check_error(ErrorKind::WrongLength,
              [] { load_sbox(INVSUB_TEST_DATA "/short.hex", SBoxFormat::HexTable, aes_field()); });
  check_error(ErrorKind::ParseError, [] { parse_hex_table(make_field(2, 2), "0x1 2 0x3 0x0"); });
  check_error(ErrorKind::OutOfRangeEntry, [] { parse_hex_table(make_field(2, 2), "0x1 0x2 0x3 0x4"); });
  check_error(ErrorKind::ParseError, [] { load_sbox("/nonexistent/table.hex", SBoxFormat::HexTable, aes_field()); });
  check_error(ErrorKind::ParseError, [] { parse_sbox_json("{\"table\": [0]}"); });
  const SBox json = parse_sbox_json(R"({"field": {"p": 3, "n": 1, "modulus": [0, 1]}, "table": [0, 2, 1]})");
  CHECK(json.field()->order() == 3);
  CHECK(json(1) == 2);
  const SBox constant(make_field(2, 2), {1, 1, 1, 1});
  CHECK_FALSE(constant.is_permutation());
}

TEST_CASE("AES invariant scan") {
  RunOptions opts;
  opts.workers = 4;
  const ScanReport report = scan_invariant(build_aes_sbox(), std::nullopt, opts);
  CHECK(report.subspace_count_scanned == 7866259);
  REQUIRE(report.found.size() == 2);
  const auto sets = found_sets(report);
  CHECK(sets.count(oracle::PointSet{0x73, 0x8F}) == 1);
  CHECK(sets.count([] {
    oracle::PointSet all;
    for (Code x = 0; x < 256; ++x) all.insert(x);
    return all;
  }()) == 1);
}

TEST_CASE("invariant scan matches the set oracle") {
  std::mt19937_64 rng(41);
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {5, 1}}) {
    const Field field = make_field(p, n);
    const auto all = oracle::affine_subspaces(oracle_of(*field));
    for (int trial = 0; trial < 10; ++trial) {
      const SBox f = trial == 0 ? inversion_sbox(field) : random_permutation(field, rng);
      const auto expected = oracle::invariant_subspaces(all, [&](Code x) { return f(x); });
      REQUIRE(found_sets(scan_invariant(f)) == expected);
    }
    // A map that is not a permutation.
    std::vector<Code> table(static_cast<std::size_t>(field->order()));
    for (auto& v : table) v = rng() % field->order();
    const SBox g(field, table);
    REQUIRE(found_sets(scan_invariant(g)) == oracle::invariant_subspaces(all, [&](Code x) { return g(x); }));
  }
}

TEST_CASE("identity keeps every subspace") {
  const Field f4 = make_field(2, 2);
  const ScanReport report = scan_invariant(identity_sbox(f4));
  CHECK(report.found.size() == 4 + 6 + 1);
  const std::vector<int> dims{1};
  CHECK(scan_invariant(identity_sbox(f4), dims).found.size() == 6);
}

TEST_CASE("invariant findings are images-equal for permutations") {
  std::mt19937_64 rng(3);
  const Field f16 = make_field(2, 4);
  for (int i = 0; i < 10; ++i) {
    const SBox f = random_permutation(f16, rng);
    for (const auto& hit : scan_invariant(f).found) {
      std::set<Code> img;
      for (Code x : element_codes(hit.subspace)) img.insert(f(x));
      REQUIRE(img.size() == hit.subspace.cardinality());
    }
  }
}

TEST_CASE("affine-image scan on inversion equals the stable classification") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, int>>{{2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 2}, {3, 3}, {5, 2}}) {
    CAPTURE(p);
    CAPTURE(n);
    const Field field = make_field(p, n);
    RunOptions opts;
    opts.workers = 4;
    const ScanReport report = scan_affine_images(inversion_sbox(field), 3, opts);
    CHECK(found_subspaces(report) == brute_force_stable(field, opts));
    for (const auto& hit : report.found) CHECK(*hit.image == *classify_subspace(hit.subspace));
  }
  CHECK(scan_affine_images(inversion_sbox(make_field(3, 2))).found.size() == 5);
  CHECK(scan_affine_images(inversion_sbox(make_field(2, 5))).found.size() == 1);
}

TEST_CASE("affine-image scan on inversion over GF(2^8) matches the prediction") {
  RunOptions opts;
  opts.workers = 8;
  const ScanReport report = scan_affine_images(inversion_sbox(aes_field()), 3, opts);
  CHECK(found_subspaces(report) == predicted_stable(aes_field()));
}

TEST_CASE("affine-image scan against the set oracle, including non-permutations") {
  std::mt19937_64 rng(8);
  const Field f16 = make_field(2, 4);
  const oracle::Field ref = oracle_of(*f16);
  const auto all = oracle::affine_subspaces(ref);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Code> table(16);
    for (auto& v : table) v = rng() % (trial == 0 ? 4 : 16);
    const SBox f(f16, table);
    std::set<oracle::PointSet> expected;
    for (const auto& u : all) {
      if (u.size() < 3) continue;
      if (oracle::is_affine(ref, oracle::image(u, [&](Code x) { return f(x); }))) expected.insert(u);
    }
    REQUIRE(found_sets(scan_affine_images(f)) == expected);
  }
  // Affine permutations keep every subspace.
  const LinearMap a = LinearMap::multiplication_by(FieldElement(f16, 6)) * LinearMap::frobenius_power(f16, 1);
  const SBox affine = SBox::from_function(f16, [&](Code x) { return a.apply_code(x) ^ 5U; });
  std::uint64_t big = 0;
  for (const auto& u : all) big += u.size() >= 3;
  CHECK(scan_affine_images(affine).found.size() == big);
}

TEST_CASE("coset survey") {
  const Field f16 = make_field(2, 4);
  const auto id = coset_permutation_survey(identity_sbox(f16));
  CHECK(id.size() == 15 + 35 + 15);
  for (const auto& entry : id) {
    CHECK(entry.pairs.size() == 16 / entry.linear.cardinality());
    for (const auto& [u, v] : entry.pairs) CHECK(u == v);
  }
  // Composite n, p = 2: for every alpha, b some proper L has a coset mapped
  // onto a coset. In GF(3^2) this happens exactly when alpha is a square.
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, int>>{{2, 4}, {2, 6}, {3, 2}}) {
    const Field field = make_field(p, n);
    for (Code a = 1; a < field->order(); ++a) {
      for (Code b = 1; b < field->order(); ++b) {
        bool any = false;
        for (const auto& entry : coset_permutation_survey(scalar_sbox(FieldElement(field, a), FieldElement(field, b)))) {
          any = any || !entry.pairs.empty();
        }
        CAPTURE(p);
        CAPTURE(a);
        CAPTURE(b);
        REQUIRE(any == field->is_square(a));
      }
    }
  }
  // Each reported pair really maps the whole coset onto a coset.
  const SBox f = inversion_sbox(f16);
  for (const auto& entry : coset_permutation_survey(f)) {
    for (const auto& [u, v] : entry.pairs) {
      for (Code x : element_codes(AffineSubspace(entry.linear, u.value()))) {
        REQUIRE(entry.linear.reduce(f(x)) == v.value());
      }
    }
  }
  CHECK_NOTHROW(coset_permutation_survey(inversion_sbox(make_field(2, 5))));
}

TEST_CASE("scans are deterministic across worker counts") {
  const SBox f = scalar_sbox(FieldElement(make_field(3, 3), 5), FieldElement(make_field(3, 3), 2));
  RunOptions one, many;
  many.workers = 5;
  const ScanReport a = scan_invariant(f, std::nullopt, one), b = scan_invariant(f, std::nullopt, many);
  CHECK(found_subspaces(a) == found_subspaces(b));
  CHECK(found_subspaces(scan_affine_images(f, 3, one)) == found_subspaces(scan_affine_images(f, 3, many)));
}

TEST_CASE("scan caps") {
  RunOptions tight;
  tight.cap = 100;
  check_error(ErrorKind::CapExceeded, [&] { scan_invariant(build_aes_sbox(), std::nullopt, tight); });
  std::ostringstream progress;
  RunOptions chatty;
  chatty.progress = &progress;
  scan_invariant(identity_sbox(make_field(2, 3)), std::nullopt, chatty);
  CHECK(progress.str().find("dim 3") != std::string::npos);
}
