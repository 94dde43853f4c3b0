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
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "valg/freefield.hpp"
#include "valg/laurent.hpp"
#include "valg/scalar.hpp"

namespace valg {

/// Affine space, the two charts of the punctured plane (U1 = {y1 != 0},
/// U2 = {y2 != 0}) and their overlap.
enum class Chart { Affine, U1, U2, Overlap };

const char* to_string(Chart chart);
Chart parse_chart(const std::string& name);

/// Weight-one element sum_i f_i (.) d_i + sum_j g_j dy_j, where f (.) d_i is
/// the single product f.(-1) d_i.
class WeightOneElement {
 public:
  explicit WeightOneElement(std::size_t nvars = 0, Chart chart = Chart::Affine)
      : chart_(chart), field_(nvars), form_(nvars) {}
  WeightOneElement(Chart chart, VectorField field, OneForm form);

  static WeightOneElement field(Chart chart, std::size_t nvars, std::size_t i, const Laurent& f);
  static WeightOneElement form(Chart chart, const OneForm& w);

  std::size_t nvars() const { return field_.nvars(); }
  Chart chart() const { return chart_; }
  const VectorField& field_part() const { return field_; }
  const OneForm& form_part() const { return form_; }
  VectorField& field_part() { return field_; }
  OneForm& form_part() { return form_; }
  bool is_zero() const { return field_.is_zero() && form_.is_zero(); }
  bool is_form() const { return field_.is_zero(); }

  WeightOneElement with_chart(Chart chart) const;

  WeightOneElement& operator+=(const WeightOneElement& rhs);
  WeightOneElement& operator-=(const WeightOneElement& rhs);
  WeightOneElement& operator*=(const ParamScalar& c);
  WeightOneElement operator-() const;
  friend WeightOneElement operator+(WeightOneElement a, const WeightOneElement& b) { return a += b; }
  friend WeightOneElement operator-(WeightOneElement a, const WeightOneElement& b) { return a -= b; }
  friend WeightOneElement operator*(const ParamScalar& c, WeightOneElement a) { return a *= c; }
  friend bool operator==(const WeightOneElement& a, const WeightOneElement& b) {
    return a.chart_ == b.chart_ && a.field_ == b.field_ && a.form_ == b.form_;
  }
  friend bool operator!=(const WeightOneElement& a, const WeightOneElement& b) { return !(a == b); }

  WeightOneElement substitute(ParamId id, const ParamScalar& value) const;
  /// Printed in the expression language; parses back to the same element.
  std::string to_string() const;

 private:
  Chart chart_;
  VectorField field_;
  OneForm form_;
};

void require_same_chart(Chart a, Chart b);

FreeFieldElement embed(const WeightOneElement& v);
FreeFieldElement embed(const Laurent& f);
/// Inverse of embed on weight <= 1; other words are an invariant violation.
WeightOneElement project(const FreeFieldElement& x, Chart chart);
Laurent project_function(const FreeFieldElement& x);

/// f.(-1) v.
WeightOneElement mul_weight0(const Laurent& f, const WeightOneElement& v);
/// v.(-1) f.
WeightOneElement mul_weight0_right(const WeightOneElement& v, const Laurent& f);
/// v.(0) f = pi(v)(f); f.(0) v is its negative.
Laurent act(const WeightOneElement& v, const Laurent& f);

/// The one-form part of xi.(0) tau beyond the Lie bracket:
/// -d(tau(div xi)) - sum_ab d_a(tau^b) d(d_b xi^a).
OneForm bracket_correction(const VectorField& xi, const VectorField& tau);
/// (xi).(1)(tau) for vector fields:
/// -sum_ab (xi^a d_b d_a tau^b + tau^b d_a d_b xi^a + d_a tau^b d_b xi^a).
Laurent frame_pairing(const VectorField& xi, const VectorField& tau);

WeightOneElement vprod0(const WeightOneElement& u, const WeightOneElement& v);
Laurent vprod1(const WeightOneElement& u, const WeightOneElement& v);
using VProduct = std::variant<WeightOneElement, Laurent>;
VProduct vprod(const WeightOneElement& u, int n, const WeightOneElement& v);
std::string to_string(const VProduct& p);

/// Recomputes u.(n) v with the free-field engine and fails with a rule/oracle
/// divergence when the closed form disagrees.
VProduct vprod_checked(FreeFieldEngine& engine, const WeightOneElement& u, int n, const WeightOneElement& v);

/// Cross-checks the closed-form rules on every pair of monomial generators up
/// to the given degree (Laurent exponents down to -1). Runs once per number
/// of variables unless forced.
void validate_rules(std::size_t nvars, int degree = 2, bool force = false);

std::pair<VectorField, OneForm> symbol(const WeightOneElement& v);

struct ClassicalDefect {
  int n = 0;
  VProduct quantum;
  VProduct classical;
  VProduct defect;
  /// The defect sits one filtration step down.
  bool filtered = true;
};

/// Quantum product minus the classical Courant operation.
ClassicalDefect classical_defect(const WeightOneElement& u, const WeightOneElement& v, int n);

/// Structure constants and invariant form of a Lie algebra.
struct LieAlgebraData {
  std::vector<std::string> names;
  /// bracket[a][b] = coefficients of [e_a, e_b] in the basis.
  std::vector<std::vector<std::vector<ParamScalar>>> bracket;
  std::vector<std::vector<ParamScalar>> form;
  /// Parameters in the form table that the check solves for.
  std::vector<ParamId> levels;

  std::size_t dim() const { return names.size(); }
};

/// gl_n with basis E_ij (row-major) and form
/// k1 (tr(ab) - tr a tr b / n) + k2 tr a tr b / n.
LieAlgebraData gl_data(std::size_t n);

/// Tautological images E_ij -> y_i (.) d_j on the affine chart.
std::vector<WeightOneElement> gl_tautological(std::size_t n);

/// The gl_2 images on U1 for gluing k*omega_11, with the given value of k.
std::vector<WeightOneElement> gl2_twisted(const ParamScalar& k);

struct MorphismFailure {
  std::size_t a = 0;
  std::size_t b = 0;
  int n = 0;
  std::string defect;
};

struct MorphismReport {
  bool pass = false;
  std::vector<std::pair<ParamId, ParamScalar>> levels;
  std::vector<MorphismFailure> failures;
};

MorphismReport morphism_check(const LieAlgebraData& lie, const std::vector<WeightOneElement>& images);

}  // namespace valg
