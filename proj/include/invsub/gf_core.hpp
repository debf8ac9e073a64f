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
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "invsub/error.hpp"

namespace invsub {

/// Canonical integer encoding of a field element: sum of coeffs[i] * p^i.
using Code = std::uint64_t;

/// Largest extension degree accepted by make_field. Irreducibility is decided
/// by trial division, which stays cheap up to this degree.
inline constexpr int kMaxDegree = 16;

/// Largest field order accepted by make_field (codes must stay in 32 bits so
/// products of two codes never overflow).
inline constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 32;

/// GF(p^n) realized as F_p[x] / (modulus). Immutable after construction.
///
/// All arithmetic is exposed on raw Codes so that hot loops (table building,
/// scanning) avoid the bound FieldElement wrapper. Vector-space operations
/// (digit access, F_p scaling) treat a code as its coefficient vector.
class FieldSpec {
 public:
  FieldSpec(std::uint32_t p, int n, std::vector<std::uint32_t> modulus);

  std::uint32_t p() const noexcept { return p_; }
  int n() const noexcept { return n_; }
  /// Monic modulus, constant term first, length n + 1.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  /// Number of elements p^n.
  std::uint64_t order() const noexcept { return order_; }
  /// p^i for 0 <= i <= n.
  std::uint64_t weight(int i) const noexcept { return weights_[static_cast<std::size_t>(i)]; }
  /// Sorted divisors of n.
  const std::vector<int>& divisors() const noexcept { return divisors_; }

  bool operator==(const FieldSpec& other) const noexcept {
    return p_ == other.p_ && n_ == other.n_ && modulus_ == other.modulus_;
  }

  // Vector-space view.
  std::uint32_t digit(Code a, int i) const noexcept;
  std::vector<std::uint32_t> coeffs(Code a) const;
  Code encode(std::span<const std::uint32_t> coeffs) const;
  Code with_digit(Code a, int i, std::uint32_t value) const noexcept;

  Code add(Code a, Code b) const noexcept;
  Code sub(Code a, Code b) const noexcept;
  Code neg(Code a) const noexcept;
  /// Multiplication by the prime-field scalar c (0 <= c < p).
  Code scale(Code a, std::uint32_t c) const noexcept;

  // Field operations.
  Code mul(Code a, Code b) const;
  Code pow(Code a, std::uint64_t e) const;
  /// Inverse extended by 0 -> 0, via extended Euclid over F_p[x].
  Code inv0(Code a) const;
  /// a^(p^k).
  Code frobenius(Code a, std::uint64_t k) const;
  /// Absolute trace: sum over i < n of a^(p^i). Lies in F_p.
  Code trace(Code a) const;
  /// Euler criterion; every element is a square when p = 2.
  bool is_square(Code a) const;
  /// Degrees k | n of the subfields containing a.
  std::set<int> subfield_divisors(Code a) const;
  /// True when a lies in no proper subfield. For n = 1 every element qualifies.
  bool in_f_circle(Code a) const;

  /// The element c * 1 for an integer c, reduced mod p.
  Code from_integer(std::int64_t c) const noexcept;

  bool contains_code(Code a) const noexcept { return a < order_; }

 private:
  std::uint32_t p_;
  int n_;
  std::vector<std::uint32_t> modulus_;
  std::uint64_t order_;
  std::vector<std::uint64_t> weights_;
  std::vector<int> divisors_;
  Code modulus_low_bits_ = 0;  // p = 2 only: modulus without the x^n term
};

using Field = std::shared_ptr<const FieldSpec>;

/// True when p is prime (trial division).
bool is_prime(std::uint64_t p);

/// True when the polynomial (constant term first, monic, degree >= 1) is
/// irreducible over F_p. Trial division by every monic polynomial of degree
/// at most deg/2.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly);

/// Lexicographically smallest monic irreducible of degree n over F_p, with
/// coefficients compared constant term first.
std::vector<std::uint32_t> default_modulus(std::uint32_t p, int n);

/// Builds a validated field. When modulus is omitted the default one is used.
/// Throws NonPrime, Reducible, DegreeMismatch or UnsupportedField.
Field make_field(std::uint64_t p, int n,
                 std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

/// GF(2^8) modulo x^8 + x^4 + x^3 + x + 1.
Field aes_field();

bool same_field(const Field& a, const Field& b) noexcept;

/// An element bound to its field. Arithmetic between elements of different
/// fields throws FieldMismatch.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(Field field, Code value);

  static FieldElement zero(const Field& field) { return {field, 0}; }
  static FieldElement one(const Field& field) { return {field, 1}; }

  const Field& field() const noexcept { return field_; }
  const FieldSpec& spec() const noexcept { return *field_; }
  Code value() const noexcept { return value_; }
  std::vector<std::uint32_t> coeffs() const { return field_->coeffs(value_); }
  bool is_zero() const noexcept { return value_ == 0; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
    return a.value_ == b.value_ && same_field(a.field_, b.field_);
  }
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) noexcept {
    return a.value_ <=> b.value_;
  }

 private:
  Field field_;
  Code value_ = 0;
};

void require_same_field(const FieldElement& a, const FieldElement& b);

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement sub(const FieldElement& a, const FieldElement& b);
FieldElement neg(const FieldElement& a);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement pow(const FieldElement& a, std::uint64_t e);
FieldElement inv0(const FieldElement& x);
FieldElement frobenius(const FieldElement& x, std::uint64_t k);
FieldElement trace(const FieldElement& x);
bool is_square(const FieldElement& x);
std::set<int> subfield_divisors(const FieldElement& x);
bool in_f_circle(const FieldElement& x);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return sub(a, b); }
inline FieldElement operator-(const FieldElement& a) { return neg(a); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return mul(a, b); }

/// "0x.."-prefixed hex or decimal canonical integer.
Code parse_code(const std::string& text);
/// Parses and validates against the field. Throws ParseError / OutOfRangeEntry.
FieldElement parse_element(const Field& field, const std::string& text);
/// Two-digit (or wider) 0x-prefixed uppercase hex.
std::string to_hex(Code value, int min_digits = 2);
/// Hex for p = 2, decimal otherwise.
std::string format_code(const FieldSpec& spec, Code value);

}  // namespace invsub
