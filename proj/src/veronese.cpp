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

#include "valg/veronese.hpp"

#include <map>

#include "valg/error.hpp"
#include "valg/linalg.hpp"

namespace valg {

namespace {

std::vector<Exponents> monomials(std::size_t nvars, int degree) {
  std::vector<Exponents> out;
  if (degree < 0) return out;
  Exponents e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == nvars) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int x = left; x >= 0; --x) {
      e[i] = x;
      self(self, i + 1, left - x);
    }
  };
  rec(rec, 0, degree);
  return out;
}

Exponents add(const Exponents& a, const Exponents& b) {
  Exponents out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Laurent mono(std::size_t nvars, const Exponents& e) { return Laurent::monomial(nvars, e); }

Laurent y_power(int a, int b) { return Laurent::monomial(2, {a, b}); }

void require_plane(const VeroneseModel& model) {
  if (model.n != 2) fail(ErrorKind::Precondition, "operation needs the plane model (n = 2)");
}

bool divides(int N, int d) { return ((d % N) + N) % N == 0; }

}  // namespace

std::string VeroneseModel::relation_to_string(const Relation& r) const {
  auto x = [](std::size_t j) { return "x" + std::to_string(j); };
  return x(r.u) + "*" + x(r.v) + " - " + x(r.p) + "*" + x(r.q);
}

VeroneseModel build_model(int n, int N, int degree_bound) {
  if (n < 2) fail(ErrorKind::Precondition, "n must be at least 2");
  if (N < 1) fail(ErrorKind::Precondition, "N must be at least 1");
  VeroneseModel m;
  m.n = n;
  m.N = N;
  m.degree_bound = degree_bound < 0 ? 2 * N + 2 : degree_bound;
  m.generators = monomials(static_cast<std::size_t>(n), N);
  std::map<Exponents, std::vector<std::pair<std::size_t, std::size_t>>, std::greater<>> products;
  for (std::size_t u = 0; u < m.generators.size(); ++u)
    for (std::size_t v = u; v < m.generators.size(); ++v)
      products[add(m.generators[u], m.generators[v])].emplace_back(u, v);
  for (const auto& [e, pairs] : products)
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
      m.relations.push_back({pairs[i].first, pairs[i].second, pairs[i + 1].first, pairs[i + 1].second});
  return m;
}

int identity_normalization(const VeroneseModel& model) { return model.N; }

std::vector<ParamScalar> membership_conditions(const OneForm& w, const VeroneseModel& model, int degree) {
  std::size_t n = static_cast<std::size_t>(model.n);
  require_same_vars(w.nvars(), n);
  if (degree > model.degree_bound)
    fail(ErrorKind::DegreeBoundExceeded,
         "degree " + std::to_string(degree) + " exceeds the bound " + std::to_string(model.degree_bound));
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [e, c] : w[j].terms())
      if (total_degree(e) + 1 != degree) fail(ErrorKind::InhomogeneousInput, "form is not of degree " + std::to_string(degree));

  // Columns: multiplier monomial times d(x_j).
  std::vector<OneForm> columns;
  int mult_degree = degree - model.N;
  if (mult_degree >= 0 && divides(model.N, mult_degree)) {
    for (const auto& m : monomials(n, mult_degree))
      for (const auto& g : model.generators) columns.push_back(mono(n, m) * de_rham(mono(n, g)));
  }
  std::map<std::pair<std::size_t, Exponents>, std::size_t> row_of;
  auto row = [&row_of](std::size_t j, const Exponents& e) {
    return row_of.emplace(std::make_pair(j, e), row_of.size()).first->second;
  };
  for (const auto& col : columns)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [e, c] : col[j].terms()) row(j, e);
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [e, c] : w[j].terms()) row(j, e);

  linalg::Matrix a(row_of.size(), linalg::Row(columns.size(), Rational(0)));
  std::vector<ParamScalar> b(row_of.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [e, x] : columns[c][j].terms()) a[row_of.at({j, e})][c] = *x.as_rational();
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [e, x] : w[j].terms()) b[row_of.at({j, e})] = x;

  linalg::Echelon ech = linalg::reduce(std::move(a), std::move(b), columns.size());
  std::vector<ParamScalar> out;
  for (std::size_t i = ech.rank(); i < ech.rhs.size(); ++i)
    if (!ech.rhs[i].is_zero()) out.push_back(ech.rhs[i]);
  return out;
}

bool omega_membership(const OneForm& w, const VeroneseModel& model, int degree) {
  return membership_conditions(w, model, degree).empty();
}

const char* to_string(RelationPair pair) {
  return pair == RelationPair::E12_E22 ? "E12,E22" : "E11,E21";
}

WeightOneElement relation_defect(const VeroneseModel& model, int r, RelationPair pair, const ParamScalar& k) {
  require_plane(model);
  const int N = model.N;
  if (r < 0 || r >= N) fail(ErrorKind::Precondition, "r must satisfy 0 <= r < N");
  auto rho = gl2_twisted(k);  // E11, E12, E21, E22
  const WeightOneElement& first = pair == RelationPair::E12_E22 ? rho[1] : rho[0];
  const WeightOneElement& second = pair == RelationPair::E12_E22 ? rho[3] : rho[2];
  WeightOneElement out = mul_weight0(y_power(r, N - r), first) - mul_weight0(y_power(r + 1, N - r - 1), second);
  if (!out.field_part().is_zero())
    fail(ErrorKind::InvariantViolation, "module relation leaves a vector field: " + out.to_string());
  return out;
}

AdmissibleResult classify_admissible(const VeroneseModel& model, int bound) {
  require_plane(model);
  const int N = model.N;
  AdmissibleResult res;
  for (int a = 1; a < bound; ++a)
    for (int b = 1; a + b <= bound; ++b)
      if (divides(N, a + b - 2)) res.candidates.emplace_back(a, b);
  std::vector<WeightOneElement> fields;
  for (int d = 0; d <= bound; d += N)
    for (const auto& g : monomials(2, d))
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
          fields.push_back(WeightOneElement::field(Chart::U1, 2, j, mono(2, g) * Laurent::coordinate(2, i)));
  for (const auto& key : res.candidates) {
    GluingForm omega = GluingForm::basis(key.first, key.second);
    bool ok = true;
    for (const auto& v : fields)
      if (!extend_section(v, omega)) {
        ok = false;
        break;
      }
    if (ok) res.survivors.push_back(key);
  }
  return res;
}

const char* to_string(ChargeResult::Status status) {
  switch (status) {
    case ChargeResult::Status::Unique: return "unique";
    case ChargeResult::Status::Unconstrained: return "unconstrained";
    case ChargeResult::Status::NoSolution: return "no_solution";
  }
  return "?";
}

ChargeResult solve_charge(const VeroneseModel& model, int classify_bound) {
  require_plane(model);
  ChargeResult res;
  ParamId k_id = param_id("k");
  ParamScalar k = ParamScalar::param(k_id);
  res.classification = classify_admissible(model, classify_bound);
  bool has_line = false;
  for (const auto& key : res.classification.survivors) has_line |= key == GluingForm::Key{1, 1};
  if (!has_line || res.classification.survivors.size() != 1) {
    res.status = ChargeResult::Status::NoSolution;
    return res;
  }
  res.admissible = GluingForm::basis(1, 1, k);
  std::vector<ParamScalar> all;
  for (RelationPair pair : {RelationPair::E12_E22, RelationPair::E11_E21})
    for (int r = 0; r < model.N; ++r) {
      if (model.N == 1) break;
      ChargeInstance inst;
      inst.pair = pair;
      inst.r = r;
      inst.defect = relation_defect(model, r, pair, k);
      inst.conditions = membership_conditions(inst.defect.form_part(), model, model.N);
      inst.solution = solve_linear_system(inst.conditions, {k_id});
      all.insert(all.end(), inst.conditions.begin(), inst.conditions.end());
      res.instances.push_back(std::move(inst));
    }
  // N = 1: A is a polynomial ring and there are no relations to lift.
  if (model.relations.empty()) {
    res.status = ChargeResult::Status::Unconstrained;
    return res;
  }
  LinearSolution sol = solve_linear_system(all, {k_id});
  switch (sol.status) {
    case LinearSolution::Status::Unique:
      res.status = ChargeResult::Status::Unique;
      res.charge = sol.assignment.at(k_id).as_rational();
      res.admissible = GluingForm::basis(1, 1, ParamScalar(*res.charge));
      break;
    case LinearSolution::Status::Underdetermined:
      res.status = ChargeResult::Status::Unconstrained;
      break;
    case LinearSolution::Status::Inconsistent:
      res.status = ChargeResult::Status::NoSolution;
      break;
  }
  return res;
}

QuantizedGl2 quantized_gl2(const VeroneseModel& model, std::optional<ParamScalar> k) {
  require_plane(model);
  bool specialized = !k;
  ParamScalar charge = k ? *k : ParamScalar(static_cast<long>(model.N + 1));
  QuantizedGl2 out;
  out.images = gl2_twisted(charge);
  out.report = morphism_check(gl_data(2), out.images);
  if (specialized && out.report.pass) {
    const long N = model.N;
    if (out.report.levels.size() != 2 || out.report.levels[0].second != ParamScalar(-N - 2) ||
        out.report.levels[1].second != ParamScalar(N))
      fail(ErrorKind::TheoremContradiction, "levels at k = N + 1 differ from (-N-2, N)");
  }
  return out;
}

DerivationResult derivations(const VeroneseModel& model, int degree) {
  if (degree > model.degree_bound)
    fail(ErrorKind::DegreeBoundExceeded,
         "degree " + std::to_string(degree) + " exceeds the bound " + std::to_string(model.degree_bound));
  const std::size_t n = static_cast<std::size_t>(model.n);
  const std::size_t G = model.generators.size();
  DerivationResult res;
  res.degree = degree;
  std::vector<Exponents> targets;
  if (model.N + degree >= 0 && divides(model.N, degree)) targets = monomials(n, model.N + degree);
  const std::size_t T = targets.size();
  const std::size_t cols = G * T;
  std::map<Exponents, std::size_t> target_index;
  for (std::size_t t = 0; t < T; ++t) target_index[targets[t]] = t;

  // Row per (relation, monomial of the image).
  std::map<std::pair<std::size_t, Exponents>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> entries;
  auto bump = [&](std::size_t rel, const Exponents& e, std::size_t col, const Rational& x) {
    auto [it, inserted] = row_of.emplace(std::make_pair(rel, e), entries.size());
    if (inserted) entries.emplace_back();
    entries[it->second].emplace_back(col, x);
  };
  for (std::size_t ri = 0; ri < model.relations.size(); ++ri) {
    const Relation& rel = model.relations[ri];
    // tau(x_a) x_b terms with sign.
    const std::pair<std::size_t, std::size_t> terms[4] = {{rel.u, rel.v}, {rel.v, rel.u}, {rel.p, rel.q}, {rel.q, rel.p}};
    for (int s = 0; s < 4; ++s) {
      Rational sign = s < 2 ? 1 : -1;
      auto [a, b] = terms[s];
      for (std::size_t t = 0; t < T; ++t) bump(ri, add(targets[t], model.generators[b]), a * T + t, sign);
    }
  }
  linalg::Matrix mat(entries.size(), linalg::Row(cols, Rational(0)));
  for (std::size_t r = 0; r < entries.size(); ++r)
    for (const auto& [c, x] : entries[r]) mat[r][c] += x;

  linalg::Matrix null = linalg::nullspace(mat, cols);
  for (const auto& vec : null) {
    for (const auto& row : mat) {
      Rational acc = 0;
      for (std::size_t c = 0; c < cols; ++c) acc += row[c] * vec[c];
      if (acc != 0) fail(ErrorKind::InvariantViolation, "derivation basis element violates a relation");
    }
    std::vector<Laurent> tau(G, Laurent(n));
    for (std::size_t j = 0; j < G; ++j)
      for (std::size_t t = 0; t < T; ++t)
        if (vec[j * T + t] != 0) tau[j].add_term(targets[t], ParamScalar(vec[j * T + t]));
    res.basis.push_back(std::move(tau));
  }

  // A-module generated by the gl_n images y_i d_j.
  auto to_vector = [&](const std::vector<Laurent>& tau) {
    linalg::Row v(cols, Rational(0));
    for (std::size_t j = 0; j < G; ++j)
      for (const auto& [e, c] : tau[j].terms()) {
        auto it = target_index.find(e);
        if (it == target_index.end()) fail(ErrorKind::InvariantViolation, "derivation leaves the target degree");
        v[j * T + it->second] = *c.as_rational();
      }
    return v;
  };
  linalg::Matrix gens;
  if (degree >= 0 && divides(model.N, degree)) {
    for (const auto& g : monomials(n, degree))
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t jj = 0; jj < n; ++jj) {
          std::vector<Laurent> tau;
          for (const auto& x : model.generators)
            tau.push_back(mono(n, g) * Laurent::coordinate(n, i) * mono(n, x).derive(jj));
          gens.push_back(to_vector(tau));
        }
  }
  res.generated_rank = linalg::rank(gens, cols);
  linalg::Matrix both = gens;
  both.insert(both.end(), null.begin(), null.end());
  res.generated = res.generated_rank == null.size() && linalg::rank(both, cols) == null.size();

  if (degree == 0) {
    std::vector<Laurent> euler;
    for (const auto& x : model.generators) euler.push_back(mono(n, x));
    linalg::Matrix with_euler = null;
    with_euler.push_back(to_vector(euler));
    res.euler_in_span = linalg::rank(with_euler, cols) == null.size();
  }
  return res;
}

WitnessResult higher_witness(const VeroneseModel& model) {
  if (model.n < 3 || model.N < 2) fail(ErrorKind::Precondition, "witness needs n >= 3 and N >= 2");
  const std::size_t n = static_cast<std::size_t>(model.n);
  const int N = model.N;
  auto y = [n](std::size_t i) { return Laurent::coordinate(n, i); };
  Exponents f1(n, 0), f2(n, 0), h(n, 0);
  f1[2] = 1;
  f1[1] = N - 1;
  f2[2] = 1;
  f2[1] = N - 2;
  f2[0] = 1;
  h[2] = 1;
  h[1] = N - 2;
  WitnessResult res;
  res.witness = mul_weight0(mono(n, f1), WeightOneElement::field(Chart::Affine, n, 0, y(0))) -
                mul_weight0(mono(n, f2), WeightOneElement::field(Chart::Affine, n, 0, y(1)));
  if (!res.witness.field_part().is_zero())
    fail(ErrorKind::InvariantViolation, "witness keeps a vector field: " + res.witness.to_string());
  res.display = mul_weight0_right(WeightOneElement::form(Chart::Affine, de_rham(mono(n, h))), y(1));
  res.matches_display = res.witness == res.display;
  res.closed = de_rham(res.witness.form_part()).is_zero();
  res.member = omega_membership(res.witness.form_part(), model, N);
  if (res.member) fail(ErrorKind::TheoremContradiction, "witness lies in the image of the algebra's forms");
  res.verdict = "non-quantizable";
  return res;
}

}  // namespace valg
