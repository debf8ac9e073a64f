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

#include "invsub/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace invsub {

namespace {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    r0 = std::exchange(r1, r0 - q * r1);
    s0 = std::exchange(s1, s0 - q * s1);
  }
  std::int64_t v = s0 % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(v < 0 ? v + p : v);
}

}  // namespace

Matrix::Matrix(std::uint32_t p, int rows, int cols)
    : p_(p), rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {}

Matrix Matrix::identity(std::uint32_t p, int n) {
  Matrix m(p, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_ || p_ != rhs.p_) throw std::invalid_argument("matrix shape mismatch");
  Matrix out(p_, rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < rhs.cols_; ++j) {
      std::uint64_t acc = 0;
      for (int k = 0; k < cols_; ++k) acc = (acc + std::uint64_t{at(i, k)} * rhs.at(k, j)) % p_;
      out.set(i, j, static_cast<std::uint32_t>(acc));
    }
  }
  return out;
}

std::vector<std::uint32_t> Matrix::apply(const std::vector<std::uint32_t>& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("vector length mismatch");
  std::vector<std::uint32_t> y(static_cast<std::size_t>(rows_), 0);
  for (int i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (int k = 0; k < cols_; ++k) acc = (acc + std::uint64_t{at(i, k)} * x[static_cast<std::size_t>(k)]) % p_;
    y[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(acc);
  }
  return y;
}

Matrix Matrix::rref(std::vector<int>* pivots) const {
  Matrix m = *this;
  std::vector<int> piv;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int sel = -1;
    for (int r = row; r < rows_; ++r) {
      if (m.at(r, col) != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != row) {
      for (int c = 0; c < cols_; ++c) {
        auto tmp = m.at(row, c);
        m.set(row, c, m.at(sel, c));
        m.set(sel, c, tmp);
      }
    }
    const std::uint32_t inv = inverse_mod(m.at(row, col), p_);
    for (int c = 0; c < cols_; ++c) m.set(row, c, static_cast<std::uint32_t>(std::uint64_t{m.at(row, c)} * inv % p_));
    for (int r = 0; r < rows_; ++r) {
      if (r == row) continue;
      const std::uint32_t f = m.at(r, col);
      if (f == 0) continue;
      for (int c = 0; c < cols_; ++c) {
        const std::uint64_t sub = std::uint64_t{f} * m.at(row, c) % p_;
        m.set(r, c, static_cast<std::uint32_t>((m.at(r, c) + p_ - sub) % p_));
      }
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

int Matrix::rank() const {
  std::vector<int> piv;
  rref(&piv);
  return static_cast<int>(piv.size());
}

std::vector<std::vector<std::uint32_t>> Matrix::kernel() const {
  std::vector<int> piv;
  const Matrix r = rref(&piv);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols_), false);
  for (int c : piv) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<std::uint32_t>> basis;
  for (int f = 0; f < cols_; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<std::uint32_t> x(static_cast<std::size_t>(cols_), 0);
    x[static_cast<std::size_t>(f)] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) {
      const std::uint32_t v = r.at(static_cast<int>(i), f);
      x[static_cast<std::size_t>(piv[i])] = (p_ - v) % p_;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace invsub
