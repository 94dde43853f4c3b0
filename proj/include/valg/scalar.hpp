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

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace valg {

using Rational = mpq_class;
using ParamId = std::uint32_t;

std::string rational_to_string(const Rational& q);

/// Interned table of formal parameter names (levels, charges, gluing
/// coefficients). Ids are assigned in declaration order, which fixes the
/// canonical ordering of parameter monomials. Once frozen, declaring a new
/// name is an error; re-declaring an existing one is a no-op.
class ParamRegistry {
 public:
  static ParamRegistry& global();

  ParamId declare(std::string_view name);
  std::optional<ParamId> find(std::string_view name) const;
  ParamId require(std::string_view name) const;
  std::string name(ParamId id) const;

  void freeze();
  void thaw();
  bool frozen() const;

 private:
  ParamRegistry();

  mutable std::mutex mu_;
  std::vector<std::string> names_;
  bool frozen_ = false;
};

ParamId param_id(std::string_view name);

/// Polynomial in formal parameters with arbitrary-precision rational
/// coefficients. Always canonical: no zero coefficients, sorted keys.
class ParamScalar {
 public:
  /// Sorted (id, exponent) pairs, exponents strictly positive.
  using Monomial = std::vector<std::pair<ParamId, unsigned>>;
  using Terms = std::map<Monomial, Rational>;

  ParamScalar() = default;
  ParamScalar(long value);  // NOLINT(google-explicit-constructor)
  ParamScalar(const Rational& value);  // NOLINT(google-explicit-constructor)

  static ParamScalar param(ParamId id);
  static ParamScalar param(std::string_view name);
  static ParamScalar from_terms(Terms terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::optional<Rational> as_rational() const;
  const Terms& terms() const { return terms_; }

  unsigned degree_in(ParamId id) const;
  /// Coefficient of id^power, as a polynomial in the remaining parameters.
  ParamScalar coefficient_of(ParamId id, unsigned power) const;
  ParamScalar substitute(ParamId id, const ParamScalar& value) const;
  bool mentions(ParamId id) const { return degree_in(id) > 0; }

  ParamScalar& operator+=(const ParamScalar& rhs);
  ParamScalar& operator-=(const ParamScalar& rhs);
  ParamScalar& operator*=(const ParamScalar& rhs);
  ParamScalar& operator*=(const Rational& rhs);
  ParamScalar operator-() const;

  friend ParamScalar operator+(ParamScalar a, const ParamScalar& b) { return a += b; }
  friend ParamScalar operator-(ParamScalar a, const ParamScalar& b) { return a -= b; }
  friend ParamScalar operator*(const ParamScalar& a, const ParamScalar& b);
  friend ParamScalar operator*(ParamScalar a, const Rational& b) { return a *= b; }
  friend ParamScalar operator*(const Rational& b, ParamScalar a) { return a *= b; }
  friend bool operator==(const ParamScalar& a, const ParamScalar& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const ParamScalar& a, const ParamScalar& b) { return !(a == b); }
  friend bool operator<(const ParamScalar& a, const ParamScalar& b) { return a.terms_ < b.terms_; }

  std::string to_string() const;
  /// True when the printed form needs parentheses inside a product.
  bool is_compound() const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  Terms terms_;
};

/// Appends "+ c*basis" to a printed sum, choosing signs and parentheses.
/// An empty basis stands for the unit.
void append_term(std::string& out, const ParamScalar& coeff, const std::string& basis);

/// Arithmetic tree accepted by scalar_normalize.
struct ScalarExpr {
  enum class Op { Literal, Param, Add, Sub, Mul, Div, Neg, Pow };

  Op op = Op::Literal;
  Rational value;
  std::string name;
  long exponent = 0;
  std::vector<ScalarExpr> args;

  static ScalarExpr literal(const Rational& v);
  static ScalarExpr parameter(std::string name);
  static ScalarExpr binary(Op op, ScalarExpr lhs, ScalarExpr rhs);
  static ScalarExpr negate(ScalarExpr e);
  static ScalarExpr power(ScalarExpr base, long exponent);
};

ParamScalar scalar_normalize(const ScalarExpr& expr);

struct LinearSolution {
  enum class Status { Unique, Underdetermined, Inconsistent };

  Status status = Status::Inconsistent;
  /// Present for every unknown when status == Unique. Values may still
  /// mention parameters that were not listed as unknowns.
  std::map<ParamId, ParamScalar> assignment;
};

const char* to_string(LinearSolution::Status status);

/// Classifies the affine system {equations = 0} in the listed unknowns.
/// Coefficients of the unknowns must be rational constants.
LinearSolution solve_linear_system(const std::vector<ParamScalar>& equations,
                                   const std::vector<ParamId>& unknowns);

}  // namespace valg
