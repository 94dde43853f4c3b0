/*
 Copyright 2026 The valg Authors
 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "valg/linalg.hpp"

#include <utility>

namespace valg::linalg {

bool Echelon::is_pivot(std::size_t col) const {
  for (std::size_t p : pivots)
    if (p == col) return true;
  return false;
}

std::vector<std::size_t> Echelon::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot(c)) out.push_back(c);
  return out;
}

std::optional<ParamScalar> Echelon::pinned_value(std::size_t col) const {
  if (!consistent) return std::nullopt;
  for (std::size_t r = 0; r < rank(); ++r) {
    if (pivots[r] != col) continue;
    for (std::size_t c : free_columns())
      if (rows[r][c] != 0) return std::nullopt;
    return rhs[r];
  }
  return std::nullopt;
}

std::vector<ParamScalar> Echelon::particular_solution() const {
  std::vector<ParamScalar> x(cols);
  for (std::size_t r = 0; r < rank(); ++r) x[pivots[r]] = rhs[r];
  return x;
}

Echelon reduce(Matrix a, std::vector<ParamScalar> b, std::size_t cols) {
  Echelon e;
  e.cols = cols;
  const std::size_t m = a.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m; ++c) {
    std::size_t piv = r;
    while (piv < m && a[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
      b[i] -= b[r] * f;
    }
    e.pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (!b[i].is_zero()) e.consistent = false;
  e.rows = std::move(a);
  e.rhs = std::move(b);
  return e;
}

std::size_t rank(Matrix a, std::size_t cols) {
  std::vector<ParamScalar> zero(a.size());
  return reduce(std::move(a), std::move(zero), cols).rank();
}

Matrix nullspace(Matrix a, std::size_t cols) {
  std::vector<ParamScalar> zero(a.size());
  Echelon e = reduce(std::move(a), std::move(zero), cols);
  Matrix basis;
  for (std::size_t f : e.free_columns()) {
    Row v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < e.rank(); ++r) v[e.pivots[r]] = -e.rows[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace valg::linalg
