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

#include "valg/scalar.hpp"

#include <algorithm>
#include <sstream>

#include "valg/error.hpp"
#include "valg/linalg.hpp"

namespace valg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonScalarDivisor: return "non-scalar divisor";
    case ErrorKind::NonlinearCondition: return "nonlinear condition";
    case ErrorKind::VariableMismatch: return "mismatched variable lists";
    case ErrorKind::WeightBoundExceeded: return "weight bound exceeded";
    case ErrorKind::ChartMismatch: return "chart mismatch";
    case ErrorKind::RuleOracleDivergence: return "rule/oracle divergence";
    case ErrorKind::InvariantViolation: return "invariant violation";
    case ErrorKind::DegreeBoundExceeded: return "degree bound exceeded";
    case ErrorKind::InhomogeneousInput: return "inhomogeneous input";
    case ErrorKind::UnknownIdentifier: return "unknown identifier";
    case ErrorKind::UnknownParameter: return "unknown parameter";
    case ErrorKind::ParameterSetFrozen: return "parameter set frozen";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::TheoremContradiction: return "theorem contradiction";
    case ErrorKind::Usage: return "usage error";
  }
  return "error";
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// ParamRegistry

ParamRegistry::ParamRegistry() {
  // Parameters every verifier refers to by name.
  for (const char* n : {"k", "k1", "k2", "c"}) names_.emplace_back(n);
}

ParamRegistry& ParamRegistry::global() {
  static ParamRegistry registry;
  return registry;
}

ParamId ParamRegistry::declare(std::string_view name) {
  std::lock_guard lock(mu_);
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it != names_.end()) return static_cast<ParamId>(it - names_.begin());
  if (frozen_)
    fail(ErrorKind::ParameterSetFrozen,
         "cannot introduce parameter '" + std::string(name) + "' after the parameter set was fixed");
  names_.emplace_back(name);
  return static_cast<ParamId>(names_.size() - 1);
}

std::optional<ParamId> ParamRegistry::find(std::string_view name) const {
  std::lock_guard lock(mu_);
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<ParamId>(it - names_.begin());
}

ParamId ParamRegistry::require(std::string_view name) const {
  if (auto id = find(name)) return *id;
  fail(ErrorKind::UnknownParameter, "undeclared parameter '" + std::string(name) + "'");
}

std::string ParamRegistry::name(ParamId id) const {
  std::lock_guard lock(mu_);
  return id < names_.size() ? names_[id] : "p" + std::to_string(id);
}

void ParamRegistry::freeze() {
  std::lock_guard lock(mu_);
  frozen_ = true;
}

void ParamRegistry::thaw() {
  std::lock_guard lock(mu_);
  frozen_ = false;
}

bool ParamRegistry::frozen() const {
  std::lock_guard lock(mu_);
  return frozen_;
}

ParamId param_id(std::string_view name) { return ParamRegistry::global().require(name); }

// ---------------------------------------------------------------------------
// ParamScalar

ParamScalar::ParamScalar(long value) {
  if (value != 0) terms_.emplace(Monomial{}, Rational(value));
}

ParamScalar::ParamScalar(const Rational& value) {
  if (value == 0) return;
  Rational v = value;
  v.canonicalize();  // mpq_class(num, den) does not reduce
  terms_.emplace(Monomial{}, std::move(v));
}

ParamScalar ParamScalar::param(ParamId id) {
  ParamScalar s;
  s.terms_.emplace(Monomial{{id, 1u}}, Rational(1));
  return s;
}

ParamScalar ParamScalar::param(std::string_view name) { return param(param_id(name)); }

ParamScalar ParamScalar::from_terms(Terms terms) {
  ParamScalar s;
  for (auto& [m, c] : terms) {
    c.canonicalize();
    if (c != 0) s.terms_.emplace(m, c);
  }
  return s;
}

bool ParamScalar::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational ParamScalar::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<Rational> ParamScalar::as_rational() const {
  if (!is_constant()) return std::nullopt;
  return constant_term();
}

unsigned ParamScalar::degree_in(ParamId id) const {
  unsigned deg = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [p, e] : m)
      if (p == id) deg = std::max(deg, e);
  return deg;
}

ParamScalar ParamScalar::coefficient_of(ParamId id, unsigned power) const {
  ParamScalar out;
  for (const auto& [m, c] : terms_) {
    unsigned e = 0;
    Monomial rest;
    for (const auto& pe : m) {
      if (pe.first == id)
        e = pe.second;
      else
        rest.push_back(pe);
    }
    if (e == power) out.add_term(rest, c);
  }
  return out;
}

ParamScalar ParamScalar::substitute(ParamId id, const ParamScalar& value) const {
  ParamScalar out;
  for (const auto& [m, c] : terms_) {
    unsigned e = 0;
    Monomial rest;
    for (const auto& pe : m) {
      if (pe.first == id)
        e = pe.second;
      else
        rest.push_back(pe);
    }
    ParamScalar term;
    term.add_term(rest, c);
    for (unsigned i = 0; i < e; ++i) term *= value;
    out += term;
  }
  return out;
}

void ParamScalar::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ParamScalar& ParamScalar::operator+=(const ParamScalar& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

ParamScalar& ParamScalar::operator-=(const ParamScalar& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

ParamScalar& ParamScalar::operator*=(const Rational& rhs) {
  if (rhs == 0) {
    terms_.clear();
    return *this;
  }
  Rational r = rhs;
  r.canonicalize();
  for (auto& [m, c] : terms_) c *= r;
  return *this;
}

ParamScalar& ParamScalar::operator*=(const ParamScalar& rhs) {
  *this = *this * rhs;
  return *this;
}

namespace {

ParamScalar::Monomial multiply(const ParamScalar::Monomial& a, const ParamScalar::Monomial& b) {
  ParamScalar::Monomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

ParamScalar operator*(const ParamScalar& a, const ParamScalar& b) {
  ParamScalar out;
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
  return out;
}

ParamScalar ParamScalar::operator-() const {
  ParamScalar out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

bool ParamScalar::is_compound() const { return terms_.size() > 1; }

std::string ParamScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Map order puts the constant term first, so affine values print as 1 - k.
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (mag == 1) && !m.empty();
    if (!unit) {
      os << mag.get_str();
      if (!m.empty()) os << "*";
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) os << "*";
      os << ParamRegistry::global().name(m[i].first);
      if (m[i].second != 1) os << "^" << m[i].second;
    }
  }
  return os.str();
}

void append_term(std::string& out, const ParamScalar& coeff, const std::string& basis) {
  if (coeff.is_zero()) return;
  if (basis.empty()) {
    std::string c = coeff.to_string();
    if (out.empty()) {
      out = c;
    } else if (coeff.is_compound()) {
      out += " + (" + c + ")";
    } else if (c.front() == '-') {
      out += " - " + c.substr(1);
    } else {
      out += " + " + c;
    }
    return;
  }
  std::string prefix;
  bool negative = false;
  if (coeff.is_compound()) {
    prefix = "(" + coeff.to_string() + ")*";
  } else {
    std::string c = coeff.to_string();
    if (c.front() == '-') {
      negative = true;
      c = c.substr(1);
    }
    if (c != "1") prefix = c + "*";
  }
  if (out.empty())
    out = (negative ? "-" : "") + prefix + basis;
  else
    out += (negative ? " - " : " + ") + prefix + basis;
}

// ---------------------------------------------------------------------------
// scalar_normalize

ScalarExpr ScalarExpr::literal(const Rational& v) {
  ScalarExpr e;
  e.op = Op::Literal;
  e.value = v;
  return e;
}

ScalarExpr ScalarExpr::parameter(std::string name) {
  ScalarExpr e;
  e.op = Op::Param;
  e.name = std::move(name);
  return e;
}

ScalarExpr ScalarExpr::binary(Op op, ScalarExpr lhs, ScalarExpr rhs) {
  ScalarExpr e;
  e.op = op;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

ScalarExpr ScalarExpr::negate(ScalarExpr inner) {
  ScalarExpr e;
  e.op = Op::Neg;
  e.args.push_back(std::move(inner));
  return e;
}

ScalarExpr ScalarExpr::power(ScalarExpr base, long exponent) {
  ScalarExpr e;
  e.op = Op::Pow;
  e.exponent = exponent;
  e.args.push_back(std::move(base));
  return e;
}

ParamScalar scalar_normalize(const ScalarExpr& expr) {
  using Op = ScalarExpr::Op;
  switch (expr.op) {
    case Op::Literal:
      return ParamScalar(expr.value);
    case Op::Param:
      return ParamScalar::param(expr.name);
    case Op::Add:
      return scalar_normalize(expr.args.at(0)) + scalar_normalize(expr.args.at(1));
    case Op::Sub:
      return scalar_normalize(expr.args.at(0)) - scalar_normalize(expr.args.at(1));
    case Op::Mul:
      return scalar_normalize(expr.args.at(0)) * scalar_normalize(expr.args.at(1));
    case Op::Neg:
      return -scalar_normalize(expr.args.at(0));
    case Op::Div: {
      ParamScalar num = scalar_normalize(expr.args.at(0));
      ParamScalar den = scalar_normalize(expr.args.at(1));
      auto q = den.as_rational();
      if (!q || *q == 0) fail(ErrorKind::NonScalarDivisor, "non-scalar divisor: " + den.to_string());
      Rational inv = 1 / *q;
      return num * inv;
    }
    case Op::Pow: {
      ParamScalar base = scalar_normalize(expr.args.at(0));
      long e = expr.exponent;
      if (e < 0) {
        auto q = base.as_rational();
        if (!q || *q == 0) fail(ErrorKind::NonScalarDivisor, "non-scalar divisor: " + base.to_string());
        base = ParamScalar(Rational(1 / *q));
        e = -e;
      }
      ParamScalar out(1L);
      for (long i = 0; i < e; ++i) out *= base;
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// solve_linear_system

const char* to_string(LinearSolution::Status status) {
  switch (status) {
    case LinearSolution::Status::Unique: return "unique";
    case LinearSolution::Status::Underdetermined: return "underdetermined";
    case LinearSolution::Status::Inconsistent: return "inconsistent";
  }
  return "?";
}

LinearSolution solve_linear_system(const std::vector<ParamScalar>& equations,
                                   const std::vector<ParamId>& unknowns) {
  const std::size_t n = unknowns.size();
  linalg::Matrix a;
  std::vector<ParamScalar> b;
  for (const ParamScalar& eq : equations) {
    linalg::Row row(n, Rational(0));
    ParamScalar rest = eq;
    for (std::size_t j = 0; j < n; ++j) {
      if (eq.degree_in(unknowns[j]) > 1)
        fail(ErrorKind::NonlinearCondition, "nonlinear condition: " + eq.to_string());
      ParamScalar coeff = eq.coefficient_of(unknowns[j], 1);
      for (std::size_t l = 0; l < n; ++l)
        if (coeff.mentions(unknowns[l]))
          fail(ErrorKind::NonlinearCondition, "nonlinear condition: " + eq.to_string());
      auto q = coeff.as_rational();
      if (!q)
        fail(ErrorKind::NonlinearCondition,
             "coefficient of an unknown is not a constant: " + eq.to_string());
      row[j] = *q;
      rest = rest.coefficient_of(unknowns[j], 0);
    }
    a.push_back(std::move(row));
    b.push_back(-rest);
  }

  linalg::Echelon ech = linalg::reduce(std::move(a), std::move(b), n);
  LinearSolution sol;
  if (!ech.consistent) {
    sol.status = LinearSolution::Status::Inconsistent;
    return sol;
  }
  if (ech.rank() < n) {
    sol.status = LinearSolution::Status::Underdetermined;
    return sol;
  }
  sol.status = LinearSolution::Status::Unique;
  auto x = ech.particular_solution();
  for (std::size_t j = 0; j < n; ++j) sol.assignment.emplace(unknowns[j], x[j]);
  return sol;
}

}  // namespace valg
