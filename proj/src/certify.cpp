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

#include "invsub/certify.hpp"

#include <stdexcept>

namespace invsub {

std::string_view to_string(CertForm form) {
  switch (form) {
    case CertForm::General: return "general";
    case CertForm::Table: return "table";
    case CertForm::Scalar: return "scalar";
  }
  return "unknown";
}

std::string_view to_string(NontrivialVerdict verdict) {
  switch (verdict) {
    case NontrivialVerdict::CertifiedNone: return "CertifiedNone";
    case NontrivialVerdict::Inconclusive: return "Inconclusive";
    case NontrivialVerdict::ExistsWithWitness: return "ExistsWithWitness";
  }
  return "unknown";
}

std::string_view to_string(OverallVerdict verdict) {
  switch (verdict) {
    case OverallVerdict::NoInvariantExceptWholeField: return "NoInvariantExceptWholeField";
    case OverallVerdict::HasSmallInvariant: return "HasSmallInvariant";
    case OverallVerdict::HasNontrivialInvariant: return "HasNontrivialInvariant";
    case OverallVerdict::Inconclusive: return "Inconclusive";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// LinearMap

LinearMap::LinearMap(Field field, Matrix matrix) : field_(std::move(field)), matrix_(std::move(matrix)) {
  const int n = field_->n();
  if (matrix_.rows() != n || matrix_.cols() != n || matrix_.p() != field_->p()) {
    throw Error(ErrorKind::InvalidArgument, "linear map must be an n x n matrix over F_p");
  }
}

LinearMap LinearMap::identity(const Field& field) { return {field, Matrix::identity(field->p(), field->n())}; }

namespace {

// Matrix whose column j is the image of the j-th basis vector x^j.
template <typename Fn>
Matrix matrix_of(const FieldSpec& spec, Fn&& image_of) {
  const int n = spec.n();
  Matrix m(spec.p(), n, n);
  for (int j = 0; j < n; ++j) {
    const auto col = spec.coeffs(image_of(spec.weight(j)));
    for (int i = 0; i < n; ++i) m.set(i, j, col[static_cast<std::size_t>(i)]);
  }
  return m;
}

}  // namespace

LinearMap LinearMap::multiplication_by(const FieldElement& gamma) {
  const FieldSpec& spec = gamma.spec();
  return {gamma.field(), matrix_of(spec, [&](Code e) { return spec.mul(gamma.value(), e); })};
}

LinearMap LinearMap::frobenius_power(const Field& field, int k) {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative Frobenius power");
  return {field, matrix_of(*field, [&](Code e) { return field->frobenius(e, static_cast<std::uint64_t>(k)); })};
}

LinearMap LinearMap::from_rows(const Field& field, const std::vector<std::vector<std::uint32_t>>& rows) {
  const int n = field->n();
  if (static_cast<int>(rows.size()) != n) throw Error(ErrorKind::InvalidArgument, "matrix needs n rows");
  Matrix m(field->p(), n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw Error(ErrorKind::InvalidArgument, "matrix row " + std::to_string(i) + " needs n entries");
    }
    for (int j = 0; j < n; ++j) {
      const std::uint32_t v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v >= field->p()) throw Error(ErrorKind::InvalidArgument, "matrix entry not reduced mod p");
      m.set(i, j, v);
    }
  }
  return {field, std::move(m)};
}

LinearMap LinearMap::aes() {
  std::vector<std::vector<std::uint32_t>> rows(8, std::vector<std::uint32_t>(8, 0));
  for (int i = 0; i < 8; ++i) {
    for (int shift : {0, 4, 5, 6, 7}) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>((i + shift) % 8)] = 1;
  }
  return from_rows(aes_field(), rows);
}

Code LinearMap::apply_code(Code x) const { return field_->encode(matrix_.apply(field_->coeffs(x))); }

FieldElement LinearMap::operator()(const FieldElement& x) const {
  if (!same_field(x.field(), field_)) throw Error(ErrorKind::FieldMismatch, "element and map differ");
  return {field_, apply_code(x.value())};
}

LinearMap LinearMap::operator*(const LinearMap& rhs) const {
  if (!same_field(field_, rhs.field_)) throw Error(ErrorKind::FieldMismatch, "maps over different fields");
  return {field_, matrix_ * rhs.matrix_};
}

// ---------------------------------------------------------------------------
// Evaluation helpers

namespace {

void require_invertible(const LinearMap& a) {
  if (!a.is_invertible()) {
    throw Error(ErrorKind::SingularMap, "linear map has rank " + std::to_string(a.rank()) + " < " +
                                            std::to_string(a.field()->n()));
  }
}

void require_nonzero_b(const FieldElement& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroB, "b must be nonzero");
}

bool small_invariants_present(const CertReport& r) {
  const bool two_element_affine = r.field->p() == 2 && r.field->order() > 2;
  return !r.fixed_points.empty() || (two_element_affine && !r.two_cycles.empty());
}

void fill_t(CertReport& r, const FieldElement& t) {
  r.t_value = t;
  r.t_divisors = subfield_divisors(t);
  r.t_in_f_circle = in_f_circle(t);
  r.degree_one = t.spec().n() == 1;
  if (r.degree_one) r.notes.emplace_back("n = 1: every element is treated as lying in no proper subfield");
}

void fill_cycles(CertReport& r, const SBox& f) {
  r.fixed_points = fixed_points(f);
  r.two_cycles = two_cycles(f);
  r.exhaustive = true;
}

void run_brute(CertReport& r, const SBox& f, const CertifyOptions& options) {
  const ScanReport scan = scan_invariant(f, std::nullopt, options.run);
  BruteCheck brute;
  brute.candidates = scan.subspace_count_scanned;
  const std::uint64_t order = r.field->order();
  brute.only_whole_field = true;
  for (const auto& hit : scan.found) {
    brute.invariant.push_back(hit.subspace);
    const std::uint64_t card = hit.subspace.cardinality();
    if (card != order) brute.only_whole_field = false;
    if (card > 2 && card < order && !brute.nontrivial_found) {
      brute.nontrivial_found = true;
      if (r.nontrivial_verdict == NontrivialVerdict::CertifiedNone) {
        throw std::logic_error("exhaustive scan contradicts the sufficient condition");
      }
      if (r.nontrivial_verdict == NontrivialVerdict::Inconclusive) {
        r.nontrivial_verdict = NontrivialVerdict::ExistsWithWitness;
        r.witness = hit.subspace;
      }
    }
  }
  r.brute = std::move(brute);
}

// Overall verdict for the general and table forms, where the F° test is only
// sufficient.
OverallVerdict overall_for_sufficient(const CertReport& r) {
  switch (r.nontrivial_verdict) {
    case NontrivialVerdict::ExistsWithWitness:
      return OverallVerdict::HasNontrivialInvariant;
    case NontrivialVerdict::CertifiedNone:
      if (!r.exhaustive) return OverallVerdict::Inconclusive;
      return small_invariants_present(r) ? OverallVerdict::HasSmallInvariant
                                         : OverallVerdict::NoInvariantExceptWholeField;
    case NontrivialVerdict::Inconclusive:
      if (r.brute && r.exhaustive && small_invariants_present(r)) return OverallVerdict::HasSmallInvariant;
      return OverallVerdict::Inconclusive;
  }
  return OverallVerdict::Inconclusive;
}

void finish_sufficient(CertReport& r, const std::optional<SBox>& table, const CertifyOptions& options) {
  r.nontrivial_verdict = r.t_in_f_circle ? NontrivialVerdict::CertifiedNone : NontrivialVerdict::Inconclusive;
  if (table) {
    fill_cycles(r, *table);
    if (options.brute_check) run_brute(r, *table, options);
  } else {
    r.notes.emplace_back("field exceeds the exhaustive cap; fixed points and two-cycles not evaluated");
  }
  r.overall = overall_for_sufficient(r);
  if (r.nontrivial_verdict == NontrivialVerdict::Inconclusive && !r.t_in_f_circle) {
    r.notes.emplace_back("tested value lies in a proper subfield; the condition is sufficient only");
  }
  if (r.brute && r.overall == OverallVerdict::Inconclusive && r.brute->only_whole_field) {
    r.notes.emplace_back("exhaustive scan found no invariant affine subspace except the whole field");
  }
}

}  // namespace

FieldElement apply_form(const LinearMap& a, const FieldElement& b, const FieldElement& x) {
  require_invertible(a);
  require_same_field(b, x);
  return add(a(inv0(x)), b);
}

SBox form_sbox(const LinearMap& a, const FieldElement& b) {
  require_invertible(a);
  if (!same_field(a.field(), b.field())) throw Error(ErrorKind::FieldMismatch, "map and b differ");
  const FieldSpec& spec = *a.field();
  return SBox::from_function(a.field(), [&](Code x) { return spec.add(a.apply_code(spec.inv0(x)), b.value()); });
}

SBox scalar_sbox(const FieldElement& alpha, const FieldElement& b) {
  require_same_field(alpha, b);
  const FieldSpec& spec = alpha.spec();
  return SBox::from_function(alpha.field(),
                             [&](Code x) { return spec.add(spec.mul(alpha.value(), spec.inv0(x)), b.value()); });
}

CertReport certify_general(const LinearMap& a, const FieldElement& b, const CertifyOptions& options) {
  if (!same_field(a.field(), b.field())) throw Error(ErrorKind::FieldMismatch, "map and b differ");
  require_invertible(a);
  require_nonzero_b(b);
  CertReport r;
  r.form = CertForm::General;
  r.field = b.field();
  r.description = "A(inv0(x)) + b, b = " + format_code(b.spec(), b.value());
  const FieldElement b_inv = inv0(b);
  fill_t(r, b_inv * a(b_inv));
  r.value_at_b = b_inv * apply_form(a, b, b);
  std::optional<SBox> table;
  if (r.field->order() <= options.exhaustive_cap) table = form_sbox(a, b);
  finish_sufficient(r, table, options);
  return r;
}

CertReport certify_via_value(const SBox& f, const FieldElement& b, const CertifyOptions& options) {
  if (!same_field(f.field(), b.field())) throw Error(ErrorKind::FieldMismatch, "table and b differ");
  require_nonzero_b(b);
  CertReport r;
  r.form = CertForm::Table;
  r.field = b.field();
  r.description = "table " + f.digest() + ", b = " + format_code(b.spec(), b.value());
  fill_t(r, inv0(b) * f.apply(b));
  r.value_at_b = r.t_value;
  finish_sufficient(r, f, options);
  return r;
}

LinearMap repair_transform(const LinearMap& a, const FieldElement& b, const FieldElement& alpha) {
  if (!same_field(a.field(), b.field())) throw Error(ErrorKind::FieldMismatch, "map and b differ");
  require_same_field(b, alpha);
  require_invertible(a);
  require_nonzero_b(b);
  if (!in_f_circle(alpha)) throw Error(ErrorKind::AlphaNotInFCircle, "alpha lies in a proper subfield");
  const FieldElement b_inv = inv0(b);
  const FieldElement beta = inv0(b_inv * a(b_inv));
  return LinearMap::multiplication_by(alpha * beta) * a;
}

bool m2_member(const FieldElement& x) {
  if (x.spec().p() != 2) throw Error(ErrorKind::WrongCharacteristic, "M2 is defined for p = 2");
  return in_f_circle(x) && trace(x).value() == 1;
}

bool mp_member(const FieldElement& x) {
  if (x.spec().p() == 2) throw Error(ErrorKind::WrongCharacteristic, "M_p is defined for odd p");
  return in_f_circle(x) && !is_square(x);
}

CertReport certify_scalar(const FieldElement& alpha, const FieldElement& b, const CertifyOptions& options) {
  require_same_field(alpha, b);
  if (alpha.is_zero()) throw Error(ErrorKind::ZeroAlpha, "alpha must be nonzero");
  require_nonzero_b(b);
  const Field& field = b.field();
  const FieldSpec& spec = *field;
  CertReport r;
  r.form = CertForm::Scalar;
  r.field = field;
  r.description = "alpha inv0(x) + b, alpha = " + format_code(spec, alpha.value()) +
                  ", b = " + format_code(spec, b.value());
  const FieldElement b_inv = inv0(b);
  const FieldElement c = alpha * b_inv * b_inv;
  fill_t(r, c);

  const FieldElement one = FieldElement::one(field);
  bool criterion = false;
  bool fixed_point_predicted = false;
  if (spec.p() == 2) {
    r.criterion_value = c;
    criterion = m2_member(c);
    fixed_point_predicted = trace(c).value() == 0;
  } else {
    const FieldElement quarter = inv0(FieldElement(field, spec.from_integer(4)));
    const FieldElement shifted = c + quarter;
    r.criterion_value = shifted;
    criterion = mp_member(shifted);
    fixed_point_predicted = is_square(shifted);
  }
  const bool two_cycle_predicted = c == -one && spec.order() > 2;

  // Nontrivial part: invariant iff c lies in a proper subfield K with |K| > 2,
  // and then b K is one.
  if (r.t_in_f_circle) {
    r.nontrivial_verdict = NontrivialVerdict::CertifiedNone;
  } else {
    std::optional<int> degree;
    for (int d : r.t_divisors) {
      if (d < spec.n() && spec.weight(d) > 2) {
        degree = d;
        break;
      }
    }
    if (degree) {
      const AffineSubspace witness = scale_subspace(b, AffineSubspace(subfield_as_subspace(field, *degree), 0));
      for (Code u : element_codes(witness)) {
        const Code image = spec.add(spec.mul(alpha.value(), spec.inv0(u)), b.value());
        if (!witness.contains_code(image)) throw std::logic_error("scalar witness is not invariant");
      }
      r.nontrivial_verdict = NontrivialVerdict::ExistsWithWitness;
      r.witness = witness;
    } else {
      r.nontrivial_verdict = NontrivialVerdict::Inconclusive;
      r.notes.emplace_back("alpha b^-2 lies only in F_2; no subfield of size > 2 yields a witness");
    }
  }

  if (criterion) {
    r.overall = OverallVerdict::NoInvariantExceptWholeField;
  } else if (r.nontrivial_verdict == NontrivialVerdict::ExistsWithWitness) {
    r.overall = OverallVerdict::HasNontrivialInvariant;
  } else {
    r.overall = OverallVerdict::HasSmallInvariant;
  }

  if (spec.order() <= options.exhaustive_cap) {
    const SBox table = scalar_sbox(alpha, b);
    fill_cycles(r, table);
    if (r.fixed_points.empty() == fixed_point_predicted) {
      throw std::logic_error("fixed-point criterion disagrees with evaluation");
    }
    for (const auto& [x, y] : r.two_cycles) {
      if (!(x.is_zero() && y == b)) throw std::logic_error("two-cycle other than {0, b}");
    }
    if (spec.order() > 2 && r.two_cycles.empty() == (c == -one)) {
      throw std::logic_error("two-cycle criterion disagrees with evaluation");
    }
    const bool nontrivial = r.nontrivial_verdict == NontrivialVerdict::ExistsWithWitness;
    const OverallVerdict derived = nontrivial                     ? OverallVerdict::HasNontrivialInvariant
                                   : small_invariants_present(r) ? OverallVerdict::HasSmallInvariant
                                                                  : OverallVerdict::NoInvariantExceptWholeField;
    if (derived != r.overall) throw std::logic_error("scalar criterion disagrees with its components");
    if (options.brute_check) run_brute(r, table, options);
  } else {
    r.notes.emplace_back("field exceeds the exhaustive cap; fixed points and two-cycles not listed");
    if (fixed_point_predicted) r.notes.emplace_back("a fixed point exists");
    if (two_cycle_predicted) {
      r.two_cycles.emplace_back(FieldElement::zero(field), b);
    }
  }
  return r;
}

std::vector<FieldElement> fixed_points(const SBox& f) {
  std::vector<FieldElement> out;
  for (Code x = 0; x < f.field()->order(); ++x) {
    if (f(x) == x) out.emplace_back(f.field(), x);
  }
  return out;
}

std::vector<std::pair<FieldElement, FieldElement>> two_cycles(const SBox& f) {
  std::vector<std::pair<FieldElement, FieldElement>> out;
  for (Code x = 0; x < f.field()->order(); ++x) {
    const Code y = f(x);
    if (y > x && f(y) == x) out.emplace_back(FieldElement(f.field(), x), FieldElement(f.field(), y));
  }
  return out;
}

}  // namespace invsub
