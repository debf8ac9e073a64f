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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "invsub/cli.hpp"
#include "json.hpp"
#include "oracles.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = invsub::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const Run r = run(std::move(args));
  REQUIRE(r.code == invsub::kExitOk);
  return json::parse(r.out);
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("invsub_test_" + name);
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("field descriptions") {
  const json doc = run_json({"field", "--p", "2", "--n", "4"});
  CHECK(doc["modulus"] == json::array({1, 0, 0, 1, 1}));
  CHECK(doc["subfield_degrees"] == json::array({1, 2, 4}));
  const json from_file = run_json({"field", "--field", INVSUB_TEST_DATA "/gf16.json"});
  CHECK(from_file == doc);
  const json aes = run_json({"field", "--field", "builtin:aes", "--element", "0x63"});
  CHECK(aes["modulus"] == json::array({1, 1, 0, 1, 1, 0, 0, 0, 1}));
  const Run text = run({"field", "--p", "3", "--n", "2", "--element", "4", "--format", "text"});
  CHECK(text.code == 0);
  CHECK(has(text.out, "square:"));
}

TEST_CASE("classify counts and caps") {
  const json f16 = run_json({"classify", "--p", "2", "--n", "4", "--brute"});
  CHECK(f16["predicted_count"] == 6);
  CHECK(f16["brute_count"] == 6);
  CHECK(f16["agree"] == true);
  const json f32 = run_json({"classify", "--p", "2", "--n", "5", "--brute"});
  CHECK(f32["brute_count"] == 1);
  CHECK(f32["agree"] == true);
  CHECK(run_json({"classify", "--p", "3", "--n", "2"})["predicted_count"] == 5);

  const json big = run_json({"classify", "--p", "2", "--n", "12"});
  CHECK_FALSE(big.contains("brute"));
  CHECK(big["predicted_count"].get<int>() > 0);
  const Run refused = run({"classify", "--p", "2", "--n", "12", "--brute"});
  CHECK(refused.code == invsub::kExitCapExceeded);
  CHECK(has(refused.err, "error:"));
}

TEST_CASE("certify subcommand") {
  const json aes = run_json({"certify", "--matrix", "builtin:aes", "--b", "0x63", "--field", "builtin:aes"});
  CHECK(aes["nontrivial_verdict"] == "CertifiedNone");
  CHECK(aes["value_at_b"]["int"] == 0xC8);
  CHECK(aes["fixed_points"].empty());
  CHECK(aes["two_cycles"] == json::parse(R"([[{"int": 115, "hex": "0x73"}, {"int": 143, "hex": "0x8F"}]])"));

  const json table = run_json({"certify", "--sbox", "builtin:aes", "--b", "0x63"});
  CHECK(table["t"]["int"] == 0xC8);

  // alpha = b = 1: c = 1 lies in F_2, so the subfield F_4 gives a witness.
  const json one = run_json({"certify", "--p", "2", "--n", "4", "--alpha", "1", "--b", "1"});
  CHECK(one["nontrivial_verdict"] == "ExistsWithWitness");
  CHECK(one["witness"]["dim"] == 2);

  // Identity with b = 1 is not decided by the sufficient condition alone.
  CHECK(run({"certify", "--p", "2", "--n", "4", "--matrix", "identity", "--b", "1"}).code == invsub::kExitInconclusive);
  const json checked = run_json({"certify", "--p", "2", "--n", "4", "--matrix", "identity", "--b", "1", "--brute-check"});
  CHECK(checked["nontrivial_verdict"] == "ExistsWithWitness");
  CHECK(checked["brute_check"]["nontrivial_found"] == true);

  CHECK(run({"certify", "--p", "2", "--n", "4", "--alpha", "1", "--b", "0"}).code == invsub::kExitFailure);
  CHECK(run({"certify", "--p", "2", "--n", "4", "--b", "1"}).code == invsub::kExitFailure);
  CHECK(run({"certify", "--p", "2", "--n", "4", "--alpha", "1", "--matrix", "identity", "--b", "1"}).code ==
        invsub::kExitFailure);
  CHECK(run({"certify", "--p", "2", "--n", "4", "--matrix", "mul:0", "--b", "1"}).code == invsub::kExitFailure);

  const auto matrix = temp_file("m.txt", "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
  CHECK(run({"certify", "--p", "2", "--n", "4", "--matrix", matrix.string(), "--b", "1"}).code ==
        invsub::kExitInconclusive);
  std::filesystem::remove(matrix);
}

TEST_CASE("scalar certificates agree with the scanner from the command line") {
  for (int a = 1; a < 16; a += 4) {
    for (int b = 1; b < 16; b += 3) {
      const json doc = run_json({"certify", "--p", "2", "--n", "4", "--alpha", std::to_string(a), "--b",
                                 std::to_string(b), "--brute-check"});
      const bool none = doc["overall"] == "NoInvariantExceptWholeField";
      CHECK(none == doc["brute_check"]["only_whole_field"].get<bool>());
    }
  }
}

TEST_CASE("construct emits certified pairs") {
  const json f16 = run_json({"construct", "--p", "2", "--n", "4", "--brute-check"});
  CHECK(f16["count"].get<int>() > 0);
  for (const auto& pair : f16["pairs"]) CHECK(pair["brute_only_whole_field"] == true);

  // b = 1 gives alpha = c.
  for (const auto& pair : run_json({"construct", "--p", "2", "--n", "4"})["pairs"]) CHECK(pair["alpha"] == pair["c"]);

  const json aes = run_json({"construct", "--field", "builtin:aes", "--b", "0x63", "--limit", "5"});
  CHECK(aes["count"] == 5);
  CHECK(run_json({"construct", "--p", "3", "--n", "3"})["count"].get<int>() > 0);
  CHECK(run_json({"construct", "--p", "7", "--n", "1"})["count"].get<int>() > 0);
}

TEST_CASE("scan subcommand") {
  const json aes = run_json({"scan", "--sbox", "builtin:aes", "--workers", "4"});
  CHECK(aes["subspace_count_scanned"] == 7866259);
  CHECK(aes["found_count"] == 2);
  const json file = run_json({"scan", "--sbox", INVSUB_TEST_DATA "/aes_sbox.hex", "--field", "builtin:aes",
                              "--dims", "0,1,2"});
  CHECK(file["found_count"] == 1);
  CHECK(file["found"][0]["dim"] == 1);

  std::string identity;
  for (int x = 0; x < 16; ++x) identity += "0x" + std::string(1, "0123456789ABCDEF"[x]) + "\n";
  const auto path = temp_file("id.hex", identity);
  const json id = run_json({"scan", "--sbox", path.string(), "--p", "2", "--n", "4"});
  CHECK(id["found_count"] == oracle::affine_subspaces(oracle::Field{2, 4, {1, 0, 0, 1, 1}}).size());
  std::filesystem::remove(path);

  CHECK(run_json({"scan", "--sbox", "builtin:inv", "--p", "3", "--n", "2", "--images"})["found_count"] == 5);
  CHECK(run_json({"scan", "--sbox", "builtin:inv", "--p", "2", "--n", "5", "--images"})["found_count"] == 1);
  const json survey = run_json({"scan", "--sbox", "builtin:inv", "--p", "2", "--n", "4", "--survey"});
  CHECK(survey["survey"].size() == 15 + 35 + 15);

  const Run short_table = run({"scan", "--sbox", INVSUB_TEST_DATA "/short.hex", "--field", "builtin:aes"});
  CHECK(short_table.code == invsub::kExitFailure);
  CHECK(run({"scan", "--sbox", "/nonexistent.hex", "--field", "builtin:aes"}).code == invsub::kExitFailure);
  CHECK(run({"scan", "--sbox", "builtin:aes", "--cap", "10"}).code == invsub::kExitCapExceeded);

  const Run progress = run({"scan", "--sbox", "builtin:inv", "--p", "2", "--n", "3", "--progress"});
  CHECK(progress.code == 0);
  CHECK(has(progress.err, "dim"));
}

TEST_CASE("output is identical across worker counts") {
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {"scan", "--sbox", "builtin:inv", "--p", "3", "--n", "3"},
           {"scan", "--sbox", "builtin:inv", "--p", "2", "--n", "6", "--images"},
           {"classify", "--p", "3", "--n", "3", "--brute"},
           {"certify", "--p", "2", "--n", "4", "--alpha", "3", "--b", "5", "--brute-check"}}) {
    std::vector<std::string> one = args, many = args;
    one.insert(one.end(), {"--workers", "1"});
    many.insert(many.end(), {"--workers", "6"});
    const Run a = run(one), b = run(many);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == run(one).out);
  }
}

TEST_CASE("aes-demo narrative") {
  const Run full = run({"aes-demo", "--workers", "4"});
  REQUIRE(full.code == 0);
  for (const char* line : {"b = 0x63", "S(b) = 0xFB", "t = b^{-1} S(b) = 0xC8", "t^{2} = 0x71", "t^{4} = 0xDD",
                           "t^{16} = 0x99", "CertifiedNone", "fixed points: none", "{0x73, 0x8F}",
                           "full scan: 7866259 affine subspaces checked, 2 invariant"}) {
    CAPTURE(line);
    CHECK(has(full.out, line));
  }
  CHECK(has(full.out, "x^8 + x^4 + x^3 + x + 1"));
  const Run quick = run({"aes-demo", "--skip-scan"});
  CHECK(quick.code == 0);
  CHECK_FALSE(has(quick.out, "full scan"));
  CHECK(has(quick.out, "fixed points: none"));
  const json doc = json::parse(run({"aes-demo", "--skip-scan", "--format", "json"}).out);
  CHECK(doc["t"]["int"] == 0xC8);
  CHECK(doc["frobenius"][2]["value"]["int"] == 0x99);
}

TEST_CASE("output file and argument errors") {
  const auto path = std::filesystem::temp_directory_path() / "invsub_test_out.json";
  const Run r = run({"classify", "--p", "2", "--n", "4", "--output", path.string()});
  CHECK(r.code == 0);
  std::ifstream in(path);
  CHECK(json::parse(in)["predicted_count"] == 6);
  std::filesystem::remove(path);

  CHECK(run({}).code == invsub::kExitFailure);
  CHECK(run({"bogus"}).code == invsub::kExitFailure);
  CHECK(run({"field", "--p", "4", "--n", "1"}).code == invsub::kExitFailure);
  CHECK(run({"field", "--p", "2", "--n", "4", "--modulus", "1,0,0,0,1"}).code == invsub::kExitFailure);
  CHECK(run({"classify", "--p", "2", "--n", "4", "--workers", "0"}).code == invsub::kExitFailure);
  CHECK(run({"field", "--field", "/nonexistent.json"}).code == invsub::kExitFailure);
}
