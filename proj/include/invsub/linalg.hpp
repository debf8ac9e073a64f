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

#include <cstdint>
#include <vector>

namespace invsub {

/// Dense row-major matrix over F_p.
class Matrix {
 public:
  Matrix(std::uint32_t p, int rows, int cols);

  static Matrix identity(std::uint32_t p, int n);

  std::uint32_t p() const noexcept { return p_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  std::uint32_t at(int r, int c) const { return data_[index(r, c)]; }
  void set(int r, int c, std::uint32_t v) { data_[index(r, c)] = v % p_; }

  Matrix operator*(const Matrix& rhs) const;
  std::vector<std::uint32_t> apply(const std::vector<std::uint32_t>& x) const;

  /// Reduced row echelon form (leftmost pivots) and its pivot columns.
  Matrix rref(std::vector<int>* pivots = nullptr) const;
  int rank() const;
  /// Basis of {x : M x = 0}.
  std::vector<std::vector<std::uint32_t>> kernel() const;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
  }

  std::uint32_t p_;
  int rows_;
  int cols_;
  std::vector<std::uint32_t> data_;
};

}  // namespace invsub
