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

#include "valg/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace valg {

bool operator==(const Expr& x, const Expr& y) {
  return x.kind == y.kind && x.value == y.value && x.name == y.name && x.index == y.index && x.a == y.a &&
         x.b == y.b && x.args == y.args;
}

std::string to_sexpr(const Expr& e) {
  auto list = [&e](const std::string& head) {
    std::string out = "(" + head;
    for (const auto& x : e.args) out += " " + to_sexpr(x);
    return out + ")";
  };
  switch (e.kind) {
    case Expr::Kind::Number: return rational_to_string(e.value);
    case Expr::Kind::Param: return e.name;
    case Expr::Kind::Coordinate: return "y" + std::to_string(e.index + 1);
    case Expr::Kind::Frame: return "d" + std::to_string(e.index + 1);
    case Expr::Kind::Translate: return list("T");
    case Expr::Kind::Gluing: return "w[" + std::to_string(e.a) + "," + std::to_string(e.b) + "]";
    case Expr::Kind::Sum: return list("+");
    case Expr::Kind::Negate: return list("neg");
    case Expr::Kind::Product: return list("*");
    case Expr::Kind::Power: return list("^" + std::to_string(e.a));
    case Expr::Kind::NProduct: return list(".(" + std::to_string(e.a) + ")");
  }
  return "?";
}

bool Scope::declares(std::string_view name) const {
  return std::find(params.begin(), params.end(), name) != params.end();
}

std::string Diagnostic::to_string() const {
  std::ostringstream os;
  os << pos.line << ":" << pos.column << ": " << message;
  if (!expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? ", " : "") << expected[i];
    os << ")";
  }
  return os.str();
}

namespace {

struct Token {
  enum class Kind { Number, Ident, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.pos = pos_;
      if (i_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char c = text_[i_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Token::Kind::Number;
        t.text = digits();
        if (i_ + 1 < text_.size() && text_[i_] == '/' && std::isdigit(static_cast<unsigned char>(text_[i_ + 1]))) {
          advance();
          t.text += "/" + digits();
        }
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Token::Kind::Ident;
        while (i_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_'))
          t.text += advance();
      } else {
        t.kind = Token::Kind::Symbol;
        t.text = std::string(1, advance());
      }
      out.push_back(t);
    }
  }

 private:
  char advance() {
    char c = text_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }
  void skip_space() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) advance();
  }
  std::string digits() {
    std::string s;
    while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) s += advance();
    return s;
  }

  std::string_view text_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

const std::vector<std::string> kAtomStart = {"number", "identifier", "'T('", "'w['", "'('"};

class Parser {
 public:
  Parser(std::string_view text, const Scope& scope) : toks_(Lexer(text).run()), scope_(scope) {}

  Expr parse() {
    Expr e = expr();
    if (peek().kind != Token::Kind::End) {
      if (is(")")) error("unbalanced parentheses", {"end of input"});
      error("unexpected '" + peek().text + "'", {"'+'", "'-'", "'*'", "'^'", "'.('", "end of input"});
    }
    return e;
  }

 private:
  const Token& peek() const { return toks_[k_]; }
  bool is(const char* sym) const { return peek().kind == Token::Kind::Symbol && peek().text == sym; }
  const Token& next() { return toks_[k_ < toks_.size() - 1 ? k_++ : k_]; }

  [[noreturn]] void error(const std::string& message, std::vector<std::string> expected,
                          ErrorKind kind = ErrorKind::Parse) const {
    throw ParseError(kind, Diagnostic{peek().pos, message, std::move(expected)});
  }

  void expect(const char* sym, const std::string& message) {
    if (!is(sym)) error(message, {std::string("'") + sym + "'"});
    next();
  }

  std::string found() const { return peek().kind == Token::Kind::End ? "end of input" : "'" + peek().text + "'"; }

  long integer(const char* what) {
    bool neg = false;
    if (is("-") || is("+")) neg = next().text == "-";
    if (peek().kind != Token::Kind::Number || peek().text.find('/') != std::string::npos)
      error(std::string("malformed ") + what + ": found " + found(), {"integer"});
    try {
      long v = std::stol(next().text);
      return neg ? -v : v;
    } catch (const std::out_of_range&) {
      error(std::string(what) + " out of range", {"integer"});
    }
  }

  Expr node(Expr::Kind kind, SourcePos pos, std::vector<Expr> args = {}) {
    Expr e;
    e.kind = kind;
    e.pos = pos;
    e.args = std::move(args);
    return e;
  }

  Expr expr() {
    SourcePos pos = peek().pos;
    std::vector<Expr> terms;
    bool first = true;
    while (first || is("+") || is("-")) {
      bool neg = false;
      if (is("+") || is("-")) neg = next().text == "-";
      Expr t = term();
      if (neg) t = node(Expr::Kind::Negate, t.pos, {std::move(t)});
      terms.push_back(std::move(t));
      first = false;
    }
    if (terms.size() == 1) return std::move(terms.front());
    return node(Expr::Kind::Sum, pos, std::move(terms));
  }

  Expr term() {
    SourcePos pos = peek().pos;
    std::vector<Expr> factors;
    factors.push_back(factor());
    while (is("*")) {
      next();
      factors.push_back(factor());
    }
    if (factors.size() == 1) return std::move(factors.front());
    return node(Expr::Kind::Product, pos, std::move(factors));
  }

  Expr factor() {
    Expr base = chain();
    if (!is("^")) return base;
    next();
    Expr e = node(Expr::Kind::Power, base.pos, {std::move(base)});
    e.a = static_cast<int>(integer("exponent"));
    return e;
  }

  Expr chain() {
    Expr x = atom();
    while (is(".")) {
      SourcePos pos = peek().pos;
      next();
      expect("(", "expected '(' after '.'");
      int mode = static_cast<int>(integer("mode"));
      expect(")", "unbalanced parentheses");
      Expr y = atom();
      Expr e = node(Expr::Kind::NProduct, pos, {std::move(x), std::move(y)});
      e.a = mode;
      x = std::move(e);
    }
    return x;
  }

  std::optional<std::size_t> indexed(const std::string& s, char head) const {
    if (s.size() < 2 || s[0] != head) return std::nullopt;
    if (!std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return std::nullopt;
    if (s.size() > 6) return std::size_t{0};
    return static_cast<std::size_t>(std::stoul(s.substr(1)));
  }

  Expr atom() {
    const Token& t = peek();
    SourcePos pos = t.pos;
    if (t.kind == Token::Kind::Number) {
      Expr e = node(Expr::Kind::Number, pos);
      std::string text = next().text;
      auto slash = text.find('/');
      if (slash != std::string::npos && std::stol(text.substr(slash + 1)) == 0) {
        --k_;
        error("zero denominator", {});
      }
      e.value = Rational(text);
      e.value.canonicalize();
      return e;
    }
    if (is("(")) {
      next();
      Expr e = expr();
      if (!is(")")) error("unbalanced parentheses: found " + found(), {"')'"});
      next();
      return e;
    }
    if (t.kind != Token::Kind::Ident) error("unexpected " + found(), kAtomStart);

    std::string name = t.text;
    if (name == "T" && toks_[k_ + 1].text == "(" && toks_[k_ + 1].kind == Token::Kind::Symbol) {
      next();
      next();
      Expr inner = expr();
      if (!is(")")) error("unbalanced parentheses: found " + found(), {"')'"});
      next();
      return node(Expr::Kind::Translate, pos, {std::move(inner)});
    }
    if (name == "w" && toks_[k_ + 1].text == "[" && toks_[k_ + 1].kind == Token::Kind::Symbol) {
      next();
      next();
      Expr e = node(Expr::Kind::Gluing, pos);
      e.a = static_cast<int>(integer("gluing index"));
      expect(",", "expected ',' in w[a,b]");
      e.b = static_cast<int>(integer("gluing index"));
      expect("]", "expected ']' closing w[a,b]");
      return e;
    }
    if (scope_.declares(name)) {
      next();
      Expr e = node(Expr::Kind::Param, pos);
      e.name = name;
      return e;
    }
    for (char head : {'y', 'd'}) {
      auto i = indexed(name, head);
      if (!i) continue;
      if (*i < 1 || *i > scope_.nvars)
        error("unknown identifier '" + name + "': only " + std::to_string(scope_.nvars) + " variables", {},
              ErrorKind::UnknownIdentifier);
      next();
      Expr e = node(head == 'y' ? Expr::Kind::Coordinate : Expr::Kind::Frame, pos);
      e.index = *i - 1;
      return e;
    }
    error("unknown identifier '" + name + "'", {}, ErrorKind::UnknownIdentifier);
  }

  std::vector<Token> toks_;
  std::size_t k_ = 0;
  const Scope& scope_;
};

[[noreturn]] void semantic(const SourcePos& pos, const std::string& message) {
  throw ParseError(ErrorKind::Parse, Diagnostic{pos, message, {}});
}

}  // namespace

Expr parse_expr(std::string_view text, const Scope& scope) { return Parser(text, scope).parse(); }

std::string Value::to_string() const {
  switch (kind) {
    case Kind::Scalar: return scalar.to_string();
    case Kind::Function: return function.to_string();
    case Kind::Field: return field.to_string();
    case Kind::Gluing: return gluing.to_string();
  }
  return "?";
}

Evaluator::Evaluator(std::size_t nvars, WeightBound bound, std::map<std::string, ParamScalar> bindings)
    : nvars_(nvars), engine_(nvars, bound), bindings_(std::move(bindings)) {}

FreeFieldElement Evaluator::as_field(const Value& v) const {
  switch (v.kind) {
    case Value::Kind::Scalar: return v.scalar * FreeFieldElement::vacuum(nvars_);
    case Value::Kind::Function: return FreeFieldElement::function(v.function);
    case Value::Kind::Field: return v.field;
    case Value::Kind::Gluing: break;
  }
  fail(ErrorKind::Precondition, "a gluing form is not a field");
}

Laurent Evaluator::as_function(const Value& v) const {
  switch (v.kind) {
    case Value::Kind::Scalar: return Laurent::constant(nvars_, v.scalar);
    case Value::Kind::Function: return v.function;
    case Value::Kind::Field: return project_function(v.field);
    case Value::Kind::Gluing: break;
  }
  fail(ErrorKind::Precondition, "a gluing form is not a function");
}

WeightOneElement Evaluator::as_weight_one(const Value& v, Chart chart) const {
  if (v.kind == Value::Kind::Field) return project(v.field, chart);
  if ((v.kind == Value::Kind::Scalar && v.scalar.is_zero()) || (v.kind == Value::Kind::Function && v.function.is_zero()))
    return WeightOneElement(nvars_, chart);
  fail(ErrorKind::Precondition, "expected a weight-one section, got " + v.to_string());
}

GluingForm Evaluator::as_gluing(const Value& v) const {
  if (v.kind == Value::Kind::Gluing) return v.gluing;
  if (v.kind == Value::Kind::Scalar && v.scalar.is_zero()) return GluingForm();
  fail(ErrorKind::Precondition, "expected a combination of w[a,b], got " + v.to_string());
}

Value Evaluator::add(Value x, const Value& y) {
  if (x.kind == Value::Kind::Gluing || y.kind == Value::Kind::Gluing) {
    x.gluing = as_gluing(x) + as_gluing(y);
    x.kind = Value::Kind::Gluing;
    return x;
  }
  auto kind = std::max(x.kind, y.kind);
  Value out;
  out.kind = kind;
  if (kind == Value::Kind::Scalar) {
    out.scalar = x.scalar + y.scalar;
  } else if (kind == Value::Kind::Function) {
    out.function = as_function(x) + as_function(y);
  } else {
    out.field = as_field(x) + as_field(y);
  }
  return out;
}

Value Evaluator::multiply(const Value& x, const Value& y) {
  Value out;
  if (x.kind == Value::Kind::Scalar || y.kind == Value::Kind::Scalar) {
    const Value& c = x.kind == Value::Kind::Scalar ? x : y;
    out = x.kind == Value::Kind::Scalar ? y : x;
    out.scalar *= c.scalar;
    out.function *= c.scalar;
    out.field *= c.scalar;
    out.gluing = c.scalar * out.gluing;
    return out;
  }
  if (x.kind == Value::Kind::Gluing || y.kind == Value::Kind::Gluing)
    fail(ErrorKind::Precondition, "gluing forms only take scalar multiples");
  if (x.kind == Value::Kind::Function && y.kind == Value::Kind::Function) {
    out.kind = Value::Kind::Function;
    out.function = x.function * y.function;
    return out;
  }
  out.kind = Value::Kind::Field;
  out.field = engine_.nproduct(as_field(x), -1, as_field(y));
  return out;
}

Value Evaluator::power(const Value& x, int exponent, const SourcePos& pos) {
  if (x.kind == Value::Kind::Field || x.kind == Value::Kind::Gluing)
    semantic(pos, "powers apply only to weight-0 atoms");
  Value out = x;
  if (exponent >= 0) {
    Value one;
    one.scalar = ParamScalar(1L);
    out = one;
    for (int i = 0; i < exponent; ++i) out = multiply(out, x);
    return out;
  }
  if (x.kind == Value::Kind::Scalar) {
    auto q = x.scalar.as_rational();
    if (!q || *q == 0) semantic(pos, "negative power of a non-invertible scalar");
    Rational inv = 1 / *q, acc = 1;
    for (int i = 0; i < -exponent; ++i) acc *= inv;
    out.scalar = ParamScalar(acc);
    return out;
  }
  const auto& terms = x.function.terms();
  if (terms.size() != 1 || !terms.begin()->second.as_rational())
    semantic(pos, "negative power of a function that is not a monomial");
  Exponents e = terms.begin()->first;
  for (auto& v : e) v *= exponent;
  Rational inv = 1 / *terms.begin()->second.as_rational(), acc = 1;
  for (int i = 0; i < -exponent; ++i) acc *= inv;
  out.function = Laurent::monomial(nvars_, e, ParamScalar(acc));
  return out;
}

Value Evaluator::eval(const Expr& e) {
  Value out;
  switch (e.kind) {
    case Expr::Kind::Number:
      out.scalar = ParamScalar(e.value);
      return out;
    case Expr::Kind::Param: {
      auto it = bindings_.find(e.name);
      out.scalar = it != bindings_.end() ? it->second : ParamScalar::param(e.name);
      return out;
    }
    case Expr::Kind::Coordinate:
      out.kind = Value::Kind::Function;
      out.function = Laurent::coordinate(nvars_, e.index);
      return out;
    case Expr::Kind::Frame:
      out.kind = Value::Kind::Field;
      out.field = FreeFieldElement::frame(nvars_, e.index);
      return out;
    case Expr::Kind::Translate: {
      Value x = eval(e.args.at(0));
      if (x.kind == Value::Kind::Scalar) return out;
      if (x.kind == Value::Kind::Gluing) semantic(e.pos, "T() does not apply to gluing forms");
      out.kind = Value::Kind::Field;
      out.field = engine_.translate(as_field(x));
      return out;
    }
    case Expr::Kind::Gluing:
      out.kind = Value::Kind::Gluing;
      out.gluing = GluingForm::basis(e.a, e.b);
      return out;
    case Expr::Kind::Sum:
      out = eval(e.args.at(0));
      for (std::size_t i = 1; i < e.args.size(); ++i) out = add(out, eval(e.args[i]));
      return out;
    case Expr::Kind::Negate: {
      Value minus;
      minus.scalar = ParamScalar(-1L);
      return multiply(minus, eval(e.args.at(0)));
    }
    case Expr::Kind::Product: {
      out = eval(e.args.back());
      for (std::size_t i = e.args.size() - 1; i-- > 0;) out = multiply(eval(e.args[i]), out);
      return out;
    }
    case Expr::Kind::Power: return power(eval(e.args.at(0)), e.a, e.pos);
    case Expr::Kind::NProduct: {
      Value x = eval(e.args.at(0));
      Value y = eval(e.args.at(1));
      out.kind = Value::Kind::Field;
      out.field = engine_.nproduct(as_field(x), e.a, as_field(y));
      return out;
    }
  }
  return out;
}

}  // namespace valg
