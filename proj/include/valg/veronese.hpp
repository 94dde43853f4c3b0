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
#include <vector>

#include "valg/algebroid.hpp"
#include "valg/geometry.hpp"
#include "valg/laurent.hpp"

namespace valg {

/// x_u x_v - x_p x_q.
struct Relation {
  std::size_t u, v, p, q;
};

/// Coordinate ring of the degree-N Veronese embedding of P^{n-1}, realized as
/// the degree-divisible-by-N part of C[y1..yn].
struct VeroneseModel {
  int n = 2;
  int N = 1;
  int degree_bound = 4;
  std::vector<Exponents> generators;  // x_j as a y-monomial
  std::vector<Relation> relations;

  std::string relation_to_string(const Relation& r) const;
};

/// A negative degree_bound selects the default 2N + 2.
VeroneseModel build_model(int n, int N, int degree_bound = -1);

/// Factor N in E11 + E22 -> N sum_j x_j d_j.
int identity_normalization(const VeroneseModel& model);

/// Residual equations for w to lie in the span of A-monomials times d(x_j);
/// empty when w lies in the span for every value of the parameters.
std::vector<ParamScalar> membership_conditions(const OneForm& w, const VeroneseModel& model, int degree);
bool omega_membership(const OneForm& w, const VeroneseModel& model, int degree);

/// (E12, E22): (y1^r y2^(N-r)) rho(E12) - (y1^(r+1) y2^(N-r-1)) rho(E22).
/// (E11, E21): (y1^r y2^(N-r)) rho(E11) - (y1^(r+1) y2^(N-r-1)) rho(E21).
enum class RelationPair { E12_E22, E11_E21 };

const char* to_string(RelationPair pair);

WeightOneElement relation_defect(const VeroneseModel& model, int r, RelationPair pair, const ParamScalar& k);

struct AdmissibleResult {
  std::vector<GluingForm::Key> candidates;
  std::vector<GluingForm::Key> survivors;
};

/// Z_N-equivariant omega_ab with a + b <= bound whose twisted sheaf still
/// lifts every generator field g y_i d_j of degree <= bound.
AdmissibleResult classify_admissible(const VeroneseModel& model, int bound = 4);

struct ChargeInstance {
  RelationPair pair;
  int r = 0;
  WeightOneElement defect;
  std::vector<ParamScalar> conditions;
  LinearSolution solution;
};

struct ChargeResult {
  enum class Status { Unique, Unconstrained, NoSolution };

  Status status = Status::NoSolution;
  std::optional<Rational> charge;
  GluingForm admissible;
  AdmissibleResult classification;
  std::vector<ChargeInstance> instances;
};

const char* to_string(ChargeResult::Status status);

ChargeResult solve_charge(const VeroneseModel& model, int classify_bound = 4);

struct QuantizedGl2 {
  MorphismReport report;
  std::vector<WeightOneElement> images;
};

/// Images of gl_2 at charge k (default N + 1) and their morphism check.
QuantizedGl2 quantized_gl2(const VeroneseModel& model, std::optional<ParamScalar> k = std::nullopt);

struct DerivationResult {
  int degree = 0;
  /// basis[b][j] = tau_b(x_j) as a y-polynomial.
  std::vector<std::vector<Laurent>> basis;
  std::size_t generated_rank = 0;
  bool generated = false;
  bool euler_in_span = false;

  std::size_t dimension() const { return basis.size(); }
};

DerivationResult derivations(const VeroneseModel& model, int degree);

struct WitnessResult {
  WeightOneElement witness;
  WeightOneElement display;
  bool matches_display = false;
  bool member = false;
  bool closed = false;
  std::string verdict;
};

WitnessResult higher_witness(const VeroneseModel& model);

}  // namespace valg
