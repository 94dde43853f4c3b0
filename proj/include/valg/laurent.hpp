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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "valg/scalar.hpp"

namespace valg {

/// Exponent vector of a Laurent monomial in y1..yn; entries may be negative.
using Exponents = std::vector<int>;

int total_degree(const Exponents& e);
std::string monomial_to_string(const Exponents& e);

/// Laurent polynomial in the chart coordinates y1..yn with parameter-valued
/// coefficients. Coordinates are 0-based internally and printed 1-based.
class Laurent {
 public:
  using Terms = std::map<Exponents, ParamScalar>;

  explicit Laurent(std::size_t nvars = 0) : nvars_(nvars) {}

  static Laurent constant(std::size_t nvars, const ParamScalar& c);
  static Laurent monomial(std::size_t nvars, Exponents e, const ParamScalar& c = ParamScalar(1L));
  static Laurent coordinate(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  ParamScalar coefficient(const Exponents& e) const;

  void add_term(const Exponents& e, const ParamScalar& c);

  Laurent& operator+=(const Laurent& rhs);
  Laurent& operator-=(const Laurent& rhs);
  Laurent& operator*=(const ParamScalar& c);
  Laurent operator-() const;
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend Laurent operator*(Laurent a, const ParamScalar& c) { return a *= c; }
  friend Laurent operator*(const ParamScalar& c, Laurent a) { return a *= c; }
  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  /// Partial derivative in y_{i+1}; negative exponents differentiate as usual.
  Laurent derive(std::size_t i) const;

  /// Degree shared by every monomial; nullopt for zero or mixed degrees.
  std::optional<int> degree() const;
  bool is_homogeneous() const;
  bool is_polynomial() const;
  int min_exponent(std::size_t i) const;

  Laurent substitute(ParamId id, const ParamScalar& value) const;

  std::string to_string() const;

 private:
  std::size_t nvars_;
  Terms terms_;
};

void require_same_vars(std::size_t a, std::size_t b);

/// Sum g_j dy_j.
class OneForm {
 public:
  explicit OneForm(std::size_t nvars = 0) : comps_(nvars, Laurent(nvars)) {}

  static OneForm basis(std::size_t nvars, std::size_t j, const Laurent& coeff);

  std::size_t nvars() const { return comps_.size(); }
  const Laurent& operator[](std::size_t j) const { return comps_.at(j); }
  Laurent& operator[](std::size_t j) { return comps_.at(j); }
  bool is_zero() const;

  OneForm& operator+=(const OneForm& rhs);
  OneForm& operator-=(const OneForm& rhs);
  OneForm operator-() const;
  friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
  friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
  friend OneForm operator*(const Laurent& f, const OneForm& w);
  friend bool operator==(const OneForm& a, const OneForm& b) { return a.comps_ == b.comps_; }
  friend bool operator!=(const OneForm& a, const OneForm& b) { return !(a == b); }

  OneForm substitute(ParamId id, const ParamScalar& value) const;
  std::string to_string() const;

 private:
  std::vector<Laurent> comps_;
};

/// Sum over i<j of f_ij dy_i ^ dy_j.
class TwoForm {
 public:
  explicit TwoForm(std::size_t nvars = 0) : nvars_(nvars) {}

  static TwoForm basis(std::size_t nvars, std::size_t i, std::size_t j, const Laurent& coeff);

  std::size_t nvars() const { return nvars_; }
  /// Coefficient of dy_i ^ dy_j with the sign implied by antisymmetry.
  Laurent component(std::size_t i, std::size_t j) const;
  void add(std::size_t i, std::size_t j, const Laurent& coeff);
  const std::map<std::pair<std::size_t, std::size_t>, Laurent>& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  TwoForm& operator+=(const TwoForm& rhs);
  friend bool operator==(const TwoForm& a, const TwoForm& b) {
    return a.nvars_ == b.nvars_ && a.comps_ == b.comps_;
  }
  std::string to_string() const;

 private:
  std::size_t nvars_;
  std::map<std::pair<std::size_t, std::size_t>, Laurent> comps_;
};

/// Sum f_i d/dy_i.
class VectorField {
 public:
  explicit VectorField(std::size_t nvars = 0) : comps_(nvars, Laurent(nvars)) {}

  static VectorField basis(std::size_t nvars, std::size_t i, const Laurent& coeff);

  std::size_t nvars() const { return comps_.size(); }
  const Laurent& operator[](std::size_t i) const { return comps_.at(i); }
  Laurent& operator[](std::size_t i) { return comps_.at(i); }
  bool is_zero() const;

  VectorField& operator+=(const VectorField& rhs);
  VectorField& operator-=(const VectorField& rhs);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Laurent& f, const VectorField& v);
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.comps_ == b.comps_; }
  friend bool operator!=(const VectorField& a, const VectorField& b) { return !(a == b); }

  /// tau(f).
  Laurent apply(const Laurent& f) const;
  std::string to_string() const;

 private:
  std::vector<Laurent> comps_;
};

OneForm de_rham(const Laurent& f);
TwoForm de_rham(const OneForm& w);

// Classical Courant operations.
VectorField bracket(const VectorField& a, const VectorField& b);
OneForm lie(const VectorField& v, const OneForm& w);
Laurent iota(const VectorField& v, const OneForm& w);
OneForm iota(const VectorField& v, const TwoForm& w);

/// Residue mod N of the Z_N weight, or nullopt when the object mixes weights.
/// The zero object has every weight; it reports 0.
std::optional<int> zn_weight(const Laurent& f, int N);
std::optional<int> zn_weight(const OneForm& w, int N);
std::optional<int> zn_weight(const TwoForm& w, int N);
std::optional<int> zn_weight(const VectorField& v, int N);

}  // namespace valg
