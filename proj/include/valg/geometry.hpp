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

#include "valg/algebroid.hpp"
#include "valg/freefield.hpp"
#include "valg/laurent.hpp"

namespace valg {

/// omega = sum c_ab dy1 ^ dy2 / (y1^a y2^b) on the punctured plane, a, b >= 1.
class GluingForm {
 public:
  using Key = std::pair<int, int>;

  GluingForm() = default;
  static GluingForm basis(int a, int b, const ParamScalar& c = ParamScalar(1L));

  const std::map<Key, ParamScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(int a, int b, const ParamScalar& c);
  ParamScalar coefficient(int a, int b) const;

  GluingForm& operator+=(const GluingForm& rhs);
  friend GluingForm operator+(GluingForm a, const GluingForm& b) { return a += b; }
  friend GluingForm operator*(const ParamScalar& c, const GluingForm& w);
  friend bool operator==(const GluingForm& a, const GluingForm& b) { return a.terms_ == b.terms_; }

  TwoForm two_form() const;
  /// "k*w[1,1] + 2*w[2,1]".
  std::string to_string() const;

 private:
  std::map<Key, ParamScalar> terms_;
};

enum class Direction { OneToTwo, TwoToOne };

/// Twisted gluing: the form part moves by +-iota_{pi v} omega.
WeightOneElement transition(const WeightOneElement& v, const GluingForm& omega, Direction dir);

/// Coefficients may have poles only along the coordinate inverted on the chart.
bool regular_on(const Laurent& f, Chart chart);
bool regular_on(const OneForm& w, Chart chart);
bool regular_on(const WeightOneElement& v, Chart chart);

/// Internal degree: deg f - 1 for f (.) d_i, deg g + 1 for g dy_j.
std::optional<int> internal_degree(const WeightOneElement& v);

struct Extension {
  OneForm alpha;
  WeightOneElement on_u1;
  WeightOneElement on_u2;
};

/// Finds alpha regular on U1 with transition(v + alpha) regular on U2.
std::optional<Extension> extend_section(const WeightOneElement& v, const GluingForm& omega);

/// Section given on both charts with its gluing datum.
struct ChartedSection {
  WeightOneElement on_u1;
  WeightOneElement on_u2;
  GluingForm omega;

  bool consistent() const;
};

/// Keeps the monomials of a dy1^dy2 coefficient that are not coboundaries.
std::map<GluingForm::Key, ParamScalar> h1_class(const Laurent& f);
GluingForm h1_class_form(const Laurent& f);

/// Keeps the omega_ab with N | a + b - 2.
GluingForm zn_filter(const GluingForm& omega, int N);

/// Monomial fields y^e (.) d_i and forms y^e dy_j on the plane with the
/// given internal degree, when N divides it.
std::vector<WeightOneElement> invariant_sections(int degree, int N, std::size_t nvars = 2);

/// phi(L) - L, where phi fixes coordinates and sends d_i to
/// d_i + iota_{d_i} omega, extended multiplicatively to words.
FreeFieldElement conformal_glue_defect(const GluingForm& omega, WeightBound bound = {});
bool conformal_glue_check(const GluingForm& omega, WeightBound bound = {});

}  // namespace valg
