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

#include "invsub/gf_core.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdio>
#include <utility>

namespace invsub {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrime: return "NonPrime";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::ZeroScalar: return "ZeroScalar";
    case ErrorKind::NotADivisor: return "NotADivisor";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::SingularMap: return "SingularMap";
    case ErrorKind::ZeroB: return "ZeroB";
    case ErrorKind::ZeroAlpha: return "ZeroAlpha";
    case ErrorKind::AlphaNotInFCircle: return "AlphaNotInFCircle";
    case ErrorKind::WrongCharacteristic: return "WrongCharacteristic";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::WrongLength: return "WrongLength";
    case ErrorKind::OutOfRangeEntry: return "OutOfRangeEntry";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint32_t p) { return (a * b) % p; }

std::uint32_t inverse_mod_prime(std::uint32_t a, std::uint32_t p) {
  std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    r0 = std::exchange(r1, r0 - q * r1);
    s0 = std::exchange(s1, s0 - q * s1);
  }
  std::int64_t inv = s0 % static_cast<std::int64_t>(p);
  if (inv < 0) inv += p;
  return static_cast<std::uint32_t>(inv);
}

// Remainder and quotient of a by b over F_p; b must be nonzero and trimmed.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inverse_mod_prime(b.back(), p);
  Poly q(a.size() >= b.size() ? a.size() - db : 0, 0);
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const auto c = static_cast<std::uint32_t>(mulmod(a.back(), lead_inv, p));
    q[shift] = c;
    for (std::size_t j = 0; j <= db; ++j) {
      std::uint64_t sub = mulmod(c, b[j], p);
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - sub) % p);
    }
    trim(a);
  }
  return {std::move(q), std::move(a)};
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + mulmod(a[i], b[j], p)) % p);
    }
  }
  trim(r);
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = static_cast<std::uint32_t>((x + p - y) % p);
  }
  trim(r);
  return r;
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly) {
  Poly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const int degree = static_cast<int>(f.size()) - 1;
  if (degree == 1) return true;
  for (int m = 1; m <= degree / 2; ++m) {
    // Every monic divisor candidate of degree m: p^m choices of lower coefficients.
    std::uint64_t count = 1;
    for (int i = 0; i < m; ++i) count *= p;
    Poly g(static_cast<std::size_t>(m) + 1, 0);
    g[static_cast<std::size_t>(m)] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t rest = idx;
      for (int i = 0; i < m; ++i) {
        g[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      if (divmod(f, g, p).second.empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> default_modulus(std::uint32_t p, int n) {
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) count *= p;
  Poly f(static_cast<std::size_t>(n) + 1, 0);
  f[static_cast<std::size_t>(n)] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    // c0 is the most significant digit of idx.
    std::uint64_t rest = idx;
    for (int i = n - 1; i >= 0; --i) {
      f[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    if (is_irreducible(p, f)) return f;
  }
  throw Error(ErrorKind::Reducible, "no irreducible polynomial found");
}

FieldSpec::FieldSpec(std::uint32_t p, int n, std::vector<std::uint32_t> modulus)
    : p_(p), n_(n), modulus_(std::move(modulus)) {
  weights_.resize(static_cast<std::size_t>(n) + 1);
  weights_[0] = 1;
  for (int i = 1; i <= n; ++i) weights_[static_cast<std::size_t>(i)] = weights_[static_cast<std::size_t>(i) - 1] * p;
  order_ = weights_[static_cast<std::size_t>(n)];
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) divisors_.push_back(d);
  }
  if (p == 2) {
    for (int i = 0; i < n; ++i) {
      if (modulus_[static_cast<std::size_t>(i)] != 0) modulus_low_bits_ |= Code{1} << i;
    }
  }
}

std::uint32_t FieldSpec::digit(Code a, int i) const noexcept {
  if (p_ == 2) return static_cast<std::uint32_t>((a >> i) & 1U);
  return static_cast<std::uint32_t>((a / weights_[static_cast<std::size_t>(i)]) % p_);
}

std::vector<std::uint32_t> FieldSpec::coeffs(Code a) const {
  std::vector<std::uint32_t> c(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(a % p_);
    a /= p_;
  }
  return c;
}

Code FieldSpec::encode(std::span<const std::uint32_t> coeffs) const {
  Code v = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (i < static_cast<std::size_t>(n_)) v = v * p_ + coeffs[i] % p_;
  }
  return v;
}

Code FieldSpec::with_digit(Code a, int i, std::uint32_t value) const noexcept {
  const Code w = weights_[static_cast<std::size_t>(i)];
  return a - digit(a, i) * w + Code{value} * w;
}

Code FieldSpec::add(Code a, Code b) const noexcept {
  if (p_ == 2) return a ^ b;
  Code r = 0;
  for (int i = n_ - 1; i >= 0; --i) {
    const Code w = weights_[static_cast<std::size_t>(i)];
    const std::uint64_t da = (a / w) % p_;
    const std::uint64_t db = (b / w) % p_;
    r = r * p_ + (da + db) % p_;
  }
  return r;
}

Code FieldSpec::neg(Code a) const noexcept {
  if (p_ == 2) return a;
  Code r = 0;
  for (int i = n_ - 1; i >= 0; --i) {
    const std::uint64_t d = (a / weights_[static_cast<std::size_t>(i)]) % p_;
    r = r * p_ + (p_ - d) % p_;
  }
  return r;
}

Code FieldSpec::sub(Code a, Code b) const noexcept { return add(a, neg(b)); }

Code FieldSpec::scale(Code a, std::uint32_t c) const noexcept {
  c %= p_;
  if (c == 0) return 0;
  if (c == 1) return a;
  Code r = 0;
  for (int i = n_ - 1; i >= 0; --i) {
    const std::uint64_t d = (a / weights_[static_cast<std::size_t>(i)]) % p_;
    r = r * p_ + mulmod(d, c, p_);
  }
  return r;
}

Code FieldSpec::mul(Code a, Code b) const {
  if (p_ == 2) {
    Code r = 0;
    for (Code x = a, y = b; y != 0; y >>= 1, x <<= 1) {
      if (y & 1U) r ^= x;
    }
    const Code full = modulus_low_bits_ | (Code{1} << n_);
    for (int i = 2 * n_ - 2; i >= n_; --i) {
      if ((r >> i) & 1U) r ^= full << (i - n_);
    }
    return r;
  }
  const auto ca = coeffs(a);
  const auto cb = coeffs(b);
  std::vector<std::uint64_t> r(static_cast<std::size_t>(2 * n_ - 1), 0);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] == 0) continue;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      r[i + j] = (r[i + j] + mulmod(ca[i], cb[j], p_)) % p_;
    }
  }
  for (std::size_t i = r.size(); i-- > static_cast<std::size_t>(n_);) {
    const std::uint64_t c = r[i];
    if (c == 0) continue;
    const std::size_t base = i - static_cast<std::size_t>(n_);
    for (std::size_t j = 0; j <= static_cast<std::size_t>(n_); ++j) {
      r[base + j] = (r[base + j] + p_ - mulmod(c, modulus_[j], p_)) % p_;
    }
  }
  Code v = 0;
  for (int i = n_ - 1; i >= 0; --i) v = v * p_ + r[static_cast<std::size_t>(i)];
  return v;
}

Code FieldSpec::pow(Code a, std::uint64_t e) const {
  Code result = 1;
  while (e > 0) {
    if (e & 1U) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Code FieldSpec::inv0(Code a) const {
  if (a == 0) return 0;
  Poly r0(modulus_.begin(), modulus_.end());
  Poly r1 = coeffs(a);
  trim(r1);
  Poly s0, s1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p_);
    r0 = std::exchange(r1, std::move(r));
    Poly next = poly_sub(s0, poly_mul(q, s1, p_), p_);
    s0 = std::exchange(s1, std::move(next));
  }
  // r0 is a nonzero constant since the modulus is irreducible.
  const std::uint32_t c_inv = inverse_mod_prime(r0[0], p_);
  for (auto& c : s0) c = static_cast<std::uint32_t>(mulmod(c, c_inv, p_));
  return encode(s0);
}

Code FieldSpec::frobenius(Code a, std::uint64_t k) const {
  k %= static_cast<std::uint64_t>(n_);
  for (std::uint64_t i = 0; i < k; ++i) a = pow(a, p_);
  return a;
}

Code FieldSpec::trace(Code a) const {
  Code sum = 0;
  Code term = a;
  for (int i = 0; i < n_; ++i) {
    sum = add(sum, term);
    term = pow(term, p_);
  }
  return sum;
}

bool FieldSpec::is_square(Code a) const {
  if (p_ == 2 || a == 0) return true;
  return pow(a, (order_ - 1) / 2) == 1;
}

std::set<int> FieldSpec::subfield_divisors(Code a) const {
  std::set<int> result;
  for (int d : divisors_) {
    if (frobenius(a, static_cast<std::uint64_t>(d)) == a) result.insert(d);
  }
  return result;
}

bool FieldSpec::in_f_circle(Code a) const {
  for (int d : divisors_) {
    if (d < n_ && frobenius(a, static_cast<std::uint64_t>(d)) == a) return false;
  }
  return true;
}

Code FieldSpec::from_integer(std::int64_t c) const noexcept {
  const auto p = static_cast<std::int64_t>(p_);
  return static_cast<Code>(((c % p) + p) % p);
}

Field make_field(std::uint64_t p, int n, std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw Error(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
  if (n < 1) throw Error(ErrorKind::DegreeMismatch, "degree must be at least 1");
  if (n > kMaxDegree) {
    throw Error(ErrorKind::UnsupportedField, "degree " + std::to_string(n) + " exceeds " +
                                                 std::to_string(kMaxDegree));
  }
  std::uint64_t order = 1;
  for (int i = 0; i < n; ++i) {
    order *= p;
    if (order > kMaxOrder) throw Error(ErrorKind::UnsupportedField, "field order exceeds 2^32");
  }
  const auto pp = static_cast<std::uint32_t>(p);
  std::vector<std::uint32_t> mod;
  if (modulus) {
    mod = *modulus;
    while (mod.size() > 1 && mod.back() == 0) mod.pop_back();
    if (mod.size() != static_cast<std::size_t>(n) + 1) {
      throw Error(ErrorKind::DegreeMismatch,
                  "modulus has degree " + std::to_string(static_cast<int>(mod.size()) - 1) +
                      ", expected " + std::to_string(n));
    }
    for (auto c : mod) {
      if (c >= pp) throw Error(ErrorKind::InvalidArgument, "modulus coefficient not reduced mod p");
    }
    if (mod.back() != 1) throw Error(ErrorKind::InvalidArgument, "modulus must be monic");
    if (!is_irreducible(pp, mod)) throw Error(ErrorKind::Reducible, "modulus is reducible");
  } else {
    mod = default_modulus(pp, n);
  }
  return std::make_shared<const FieldSpec>(pp, n, std::move(mod));
}

Field aes_field() {
  static const Field field = make_field(2, 8, std::vector<std::uint32_t>{1, 1, 0, 1, 1, 0, 0, 0, 1});
  return field;
}

bool same_field(const Field& a, const Field& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

FieldElement::FieldElement(Field field, Code value) : field_(std::move(field)), value_(value) {
  if (!field_) throw Error(ErrorKind::InvalidArgument, "element without field");
  if (!field_->contains_code(value_)) {
    throw Error(ErrorKind::OutOfRangeEntry, std::to_string(value_) + " outside field of order " +
                                                std::to_string(field_->order()));
  }
}

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (!same_field(a.field(), b.field())) throw Error(ErrorKind::FieldMismatch, "operands from different fields");
}

FieldElement add(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return {a.field(), a.spec().add(a.value(), b.value())};
}

FieldElement sub(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return {a.field(), a.spec().sub(a.value(), b.value())};
}

FieldElement neg(const FieldElement& a) { return {a.field(), a.spec().neg(a.value())}; }

FieldElement mul(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return {a.field(), a.spec().mul(a.value(), b.value())};
}

FieldElement pow(const FieldElement& a, std::uint64_t e) { return {a.field(), a.spec().pow(a.value(), e)}; }

FieldElement inv0(const FieldElement& x) { return {x.field(), x.spec().inv0(x.value())}; }

FieldElement frobenius(const FieldElement& x, std::uint64_t k) {
  return {x.field(), x.spec().frobenius(x.value(), k)};
}

FieldElement trace(const FieldElement& x) { return {x.field(), x.spec().trace(x.value())}; }

bool is_square(const FieldElement& x) { return x.spec().is_square(x.value()); }

std::set<int> subfield_divisors(const FieldElement& x) { return x.spec().subfield_divisors(x.value()); }

bool in_f_circle(const FieldElement& x) { return x.spec().in_f_circle(x.value()); }

Code parse_code(const std::string& text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    base = 16;
    s.remove_prefix(2);
  }
  Code value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::ParseError, "not an integer: '" + text + "'");
  }
  return value;
}

FieldElement parse_element(const Field& field, const std::string& text) {
  return {field, parse_code(text)};
}

std::string to_hex(Code value, int min_digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%0*llX", min_digits, static_cast<unsigned long long>(value));
  return buf;
}

std::string format_code(const FieldSpec& spec, Code value) {
  if (spec.p() != 2) return std::to_string(value);
  int width = 2;
  for (std::uint64_t m = spec.order() - 1; m >= 256; m /= 16) ++width;
  return to_hex(value, width);
}

}  // namespace invsub
