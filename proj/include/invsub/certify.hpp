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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "invsub/gf_core.hpp"
#include "invsub/linalg.hpp"
#include "invsub/options.hpp"
#include "invsub/scan.hpp"
#include "invsub/subspaces.hpp"

namespace invsub {

/// An F_p-linear map of GF(p^n): y_i = sum_j matrix(i, j) x_j in coefficient
/// coordinates.
class LinearMap {
 public:
  /// Throws InvalidArgument unless the matrix is n x n over F_p.
  LinearMap(Field field, Matrix matrix);

  static LinearMap identity(const Field& field);
  /// x -> gamma * x.
  static LinearMap multiplication_by(const FieldElement& gamma);
  /// x -> x^(p^k).
  static LinearMap frobenius_power(const Field& field, int k);
  static LinearMap from_rows(const Field& field, const std::vector<std::vector<std::uint32_t>>& rows);
  /// The AES affine-layer bit matrix over aes_field().
  static LinearMap aes();

  const Field& field() const noexcept { return field_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  int rank() const { return matrix_.rank(); }
  bool is_invertible() const { return rank() == field_->n(); }

  Code apply_code(Code x) const;
  FieldElement operator()(const FieldElement& x) const;
  /// Composition: (*this)(rhs(x)).
  LinearMap operator*(const LinearMap& rhs) const;

  bool operator==(const LinearMap& other) const {
    return matrix_ == other.matrix_ && same_field(field_, other.field_);
  }

 private:
  Field field_;
  Matrix matrix_;
};

enum class CertForm { General, Table, Scalar };
enum class NontrivialVerdict { CertifiedNone, Inconclusive, ExistsWithWitness };
enum class OverallVerdict { NoInvariantExceptWholeField, HasSmallInvariant, HasNontrivialInvariant, Inconclusive };

std::string_view to_string(CertForm form);
std::string_view to_string(NontrivialVerdict verdict);
std::string_view to_string(OverallVerdict verdict);

/// Ground truth from the exhaustive invariant scan.
struct BruteCheck {
  std::uint64_t candidates = 0;
  std::vector<AffineSubspace> invariant;
  bool nontrivial_found = false;
  bool only_whole_field = false;
};

struct CertReport {
  CertForm form = CertForm::General;
  std::string description;
  Field field;
  /// The quantity tested for membership in F°: b^-1 A(b^-1), b^-1 f(b) or alpha b^-2.
  FieldElement t_value;
  std::set<int> t_divisors;
  bool t_in_f_circle = false;
  /// b^-1 f(b) for the general and table forms. It equals t + 1 for the
  /// general form and shares its subfield membership.
  std::optional<FieldElement> value_at_b;
  /// Scalar form only: alpha b^-2 (p = 2) or alpha b^-2 + 4^-1 (p odd).
  std::optional<FieldElement> criterion_value;
  NontrivialVerdict nontrivial_verdict = NontrivialVerdict::Inconclusive;
  std::optional<AffineSubspace> witness;
  /// Whether fixed points and two-cycles come from full evaluation.
  bool exhaustive = false;
  std::vector<FieldElement> fixed_points;
  std::vector<std::pair<FieldElement, FieldElement>> two_cycles;
  OverallVerdict overall = OverallVerdict::Inconclusive;
  /// n = 1: every element counts as lying in no proper subfield.
  bool degree_one = false;
  std::vector<std::string> notes;
  std::optional<BruteCheck> brute;
};

struct CertifyOptions {
  /// Fields up to this order get fixed points and two-cycles by evaluation.
  std::uint64_t exhaustive_cap = std::uint64_t{1} << 20;
  /// Appends the exhaustive invariant scan to the report.
  bool brute_check = false;
  RunOptions run;
};

/// A(inv0(x)) + b. Throws SingularMap.
FieldElement apply_form(const LinearMap& a, const FieldElement& b, const FieldElement& x);
SBox form_sbox(const LinearMap& a, const FieldElement& b);
/// x -> alpha inv0(x) + b.
SBox scalar_sbox(const FieldElement& alpha, const FieldElement& b);

/// Sufficient condition: b^-1 A(b^-1) in F° rules out invariant affine U
/// with 2 < |U| < p^n. Throws SingularMap, ZeroB.
CertReport certify_general(const LinearMap& a, const FieldElement& b, const CertifyOptions& options = {});

/// Same test phrased on a table: b^-1 f(b) in F°. Throws ZeroB.
CertReport certify_via_value(const SBox& f, const FieldElement& b, const CertifyOptions& options = {});

/// x -> alpha beta A(x) with beta = (b^-1 A(b^-1))^-1, so that the repaired
/// map tests to exactly alpha. Throws SingularMap, ZeroB, AlphaNotInFCircle.
LinearMap repair_transform(const LinearMap& a, const FieldElement& b, const FieldElement& alpha);

/// x in F° with trace 1 (p = 2). Throws WrongCharacteristic.
bool m2_member(const FieldElement& x);
/// x in F° and not a square (p odd). Throws WrongCharacteristic.
bool mp_member(const FieldElement& x);

/// Complete criterion for alpha inv0(x) + b. Throws ZeroAlpha, ZeroB.
CertReport certify_scalar(const FieldElement& alpha, const FieldElement& b, const CertifyOptions& options = {});

std::vector<FieldElement> fixed_points(const SBox& f);
/// Unordered pairs {x, f(x)} with f(f(x)) = x != f(x), smaller element first.
std::vector<std::pair<FieldElement, FieldElement>> two_cycles(const SBox& f);

}  // namespace invsub
