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

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "valg/scalar.hpp"

namespace valg::linalg {

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

/// Reduced row echelon form of [A | b] with rational A and a right-hand side
/// that may carry formal parameters.
struct Echelon {
  std::size_t cols = 0;
  Matrix rows;                       // first `rank` rows are nonzero
  std::vector<ParamScalar> rhs;
  std::vector<std::size_t> pivots;   // pivot column of row r, r < rank
  bool consistent = true;

  std::size_t rank() const { return pivots.size(); }
  bool is_pivot(std::size_t col) const;
  std::vector<std::size_t> free_columns() const;
  /// The value x[col] takes on every solution, when it is pinned.
  std::optional<ParamScalar> pinned_value(std::size_t col) const;
  /// Solution with all free variables set to zero.
  std::vector<ParamScalar> particular_solution() const;
};

Echelon reduce(Matrix a, std::vector<ParamScalar> b, std::size_t cols);
std::size_t rank(Matrix a, std::size_t cols);
/// Basis of {x : A x = 0}.
Matrix nullspace(Matrix a, std::size_t cols);

}  // namespace valg::linalg
