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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "valg/algebroid.hpp"
#include "valg/error.hpp"
#include "valg/freefield.hpp"
#include "valg/geometry.hpp"

namespace valg {

struct SourcePos {
  int line = 1;
  int column = 1;
};

/// Syntax tree of the expression language.
///
///   expr   := ('+'|'-')? term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' int)?
///   atom   := rational | ident | 'T(' expr ')' | 'w[' int ',' int ']'
///           | '(' expr ')' | atom '.(' int ')' atom
///
/// '*' is the right-nested (-1)-product; y1*y2*d1 means y1 .(-1) (y2 .(-1) d1).
struct Expr {
  enum class Kind { Number, Param, Coordinate, Frame, Translate, Gluing, Sum, Negate, Product, Power, NProduct };

  Kind kind = Kind::Number;
  Rational value;
  std::string name;
  std::size_t index = 0;  // 0-based coordinate or frame index
  int a = 0;              // exponent, mode, or first gluing index
  int b = 0;
  std::vector<Expr> args;
  SourcePos pos;

  friend bool operator==(const Expr& x, const Expr& y);
  friend bool operator!=(const Expr& x, const Expr& y) { return !(x == y); }
};

/// Prefix rendering of the tree, position-free.
std::string to_sexpr(const Expr& e);

struct Scope {
  std::size_t nvars = 2;
  std::vector<std::string> params;

  bool declares(std::string_view name) const;
};

struct Diagnostic {
  SourcePos pos;
  std::string message;
  std::vector<std::string> expected;

  std::string to_string() const;
};

class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, Diagnostic diag) : Error(kind, diag.to_string()), diag_(std::move(diag)) {}

  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

Expr parse_expr(std::string_view text, const Scope& scope);

/// Result of evaluating an expression: a scalar, a function (weight 0), a
/// general Fock-space element, or a gluing form.
struct Value {
  enum class Kind { Scalar, Function, Field, Gluing };

  Kind kind = Kind::Scalar;
  ParamScalar scalar;
  Laurent function;
  FreeFieldElement field;
  GluingForm gluing;

  std::string to_string() const;
};

class Evaluator {
 public:
  Evaluator(std::size_t nvars, WeightBound bound, std::map<std::string, ParamScalar> bindings = {});

  Value eval(const Expr& e);
  FreeFieldEngine& engine() { return engine_; }

  FreeFieldElement as_field(const Value& v) const;
  Laurent as_function(const Value& v) const;
  WeightOneElement as_weight_one(const Value& v, Chart chart) const;
  GluingForm as_gluing(const Value& v) const;

 private:
  Value add(Value x, const Value& y);
  Value multiply(const Value& x, const Value& y);
  Value power(const Value& x, int exponent, const SourcePos& pos);

  std::size_t nvars_;
  FreeFieldEngine engine_;
  std::map<std::string, ParamScalar> bindings_;
};

}  // namespace valg
