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

#include "valg/algebroid.hpp"

#include <mutex>
#include <set>

#include "valg/error.hpp"

namespace valg {

namespace {

Word symbol_word(const Exponents& e, FieldSymbol::Kind kind, std::size_t i, int order) {
  return Word{e, {FieldSymbol{kind, static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(order)}}};
}

Laurent divergence(const VectorField& xi) {
  Laurent out(xi.nvars());
  for (std::size_t a = 0; a < xi.nvars(); ++a) out += xi[a].derive(a);
  return out;
}

std::string wrap_monomial(const Exponents& e) {
  std::string m = monomial_to_string(e);
  if (m.find('*') != std::string::npos) return "(" + m + ")";
  return m;
}

}  // namespace

const char* to_string(Chart chart) {
  switch (chart) {
    case Chart::Affine: return "A";
    case Chart::U1: return "U1";
    case Chart::U2: return "U2";
    case Chart::Overlap: return "U12";
  }
  return "?";
}

Chart parse_chart(const std::string& name) {
  if (name == "A" || name == "affine") return Chart::Affine;
  if (name == "U1") return Chart::U1;
  if (name == "U2") return Chart::U2;
  if (name == "U12" || name == "overlap") return Chart::Overlap;
  fail(ErrorKind::Usage, "unknown chart '" + name + "' (expected A, U1, U2 or U12)");
}

void require_same_chart(Chart a, Chart b) {
  if (a != b)
    fail(ErrorKind::ChartMismatch,
         std::string("chart mismatch: ") + to_string(a) + " vs " + to_string(b));
}

WeightOneElement::WeightOneElement(Chart chart, VectorField field, OneForm form)
    : chart_(chart), field_(std::move(field)), form_(std::move(form)) {
  require_same_vars(field_.nvars(), form_.nvars());
}

WeightOneElement WeightOneElement::field(Chart chart, std::size_t nvars, std::size_t i, const Laurent& f) {
  return WeightOneElement(chart, VectorField::basis(nvars, i, f), OneForm(nvars));
}

WeightOneElement WeightOneElement::form(Chart chart, const OneForm& w) {
  return WeightOneElement(chart, VectorField(w.nvars()), w);
}

WeightOneElement WeightOneElement::with_chart(Chart chart) const {
  WeightOneElement out = *this;
  out.chart_ = chart;
  return out;
}

WeightOneElement& WeightOneElement::operator+=(const WeightOneElement& rhs) {
  require_same_chart(chart_, rhs.chart_);
  field_ += rhs.field_;
  form_ += rhs.form_;
  return *this;
}

WeightOneElement& WeightOneElement::operator-=(const WeightOneElement& rhs) {
  require_same_chart(chart_, rhs.chart_);
  field_ -= rhs.field_;
  form_ -= rhs.form_;
  return *this;
}

WeightOneElement& WeightOneElement::operator*=(const ParamScalar& c) {
  for (std::size_t i = 0; i < nvars(); ++i) {
    field_[i] *= c;
    form_[i] *= c;
  }
  return *this;
}

WeightOneElement WeightOneElement::operator-() const {
  WeightOneElement out = *this;
  return out *= ParamScalar(-1L);
}

WeightOneElement WeightOneElement::substitute(ParamId id, const ParamScalar& value) const {
  WeightOneElement out = *this;
  for (std::size_t i = 0; i < nvars(); ++i) {
    out.field_[i] = field_[i].substitute(id, value);
    out.form_[i] = form_[i].substitute(id, value);
  }
  return out;
}

std::string WeightOneElement::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < nvars(); ++i) {
    std::string d = "d" + std::to_string(i + 1);
    for (const auto& [e, c] : field_[i].terms()) {
      std::string m = wrap_monomial(e);
      append_term(out, c, m.empty() ? d : m + "*" + d);
    }
  }
  for (std::size_t j = 0; j < nvars(); ++j) {
    std::string t = "T(y" + std::to_string(j + 1) + ")";
    for (const auto& [e, c] : form_[j].terms()) {
      std::string m = monomial_to_string(e);
      append_term(out, c, m.empty() ? t : m + "*" + t);
    }
  }
  return out.empty() ? "0" : out;
}

// f (.) d_i is the word f d_i minus T(d_i f).
FreeFieldElement embed(const WeightOneElement& v) {
  std::size_t n = v.nvars();
  FreeFieldElement out(n);
  OneForm shift(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Laurent& f = v.field_part()[i];
    for (const auto& [e, c] : f.terms()) out.add_term(symbol_word(e, FieldSymbol::Kind::Frame, i, 0), c);
    shift -= de_rham(f.derive(i));
  }
  shift += v.form_part();
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& [e, c] : shift[j].terms()) out.add_term(symbol_word(e, FieldSymbol::Kind::Coordinate, j, 1), c);
  return out;
}

FreeFieldElement embed(const Laurent& f) { return FreeFieldElement::function(f); }

WeightOneElement project(const FreeFieldElement& x, Chart chart) {
  std::size_t n = x.nvars();
  VectorField field(n);
  OneForm form(n);
  for (const auto& [w, c] : x.terms()) {
    if (w.tail.size() != 1 || w.weight() != 1)
      fail(ErrorKind::Precondition, "element " + x.to_string() + " is not of weight one");
    const FieldSymbol& s = w.tail.front();
    Laurent m = Laurent::monomial(n, w.prefix, c);
    if (s.kind == FieldSymbol::Kind::Frame) {
      field[s.index] += m;
      form += de_rham(m.derive(s.index));
    } else {
      form[s.index] += m;
    }
  }
  return WeightOneElement(chart, field, form);
}

Laurent project_function(const FreeFieldElement& x) {
  Laurent out(x.nvars());
  for (const auto& [w, c] : x.terms()) {
    if (!w.tail.empty()) fail(ErrorKind::InvariantViolation, "word " + w.to_string() + " is not of weight zero");
    out.add_term(w.prefix, c);
  }
  return out;
}

WeightOneElement mul_weight0(const Laurent& f, const WeightOneElement& v) {
  require_same_vars(f.nvars(), v.nvars());
  std::size_t n = v.nvars();
  VectorField field = f * v.field_part();
  OneForm form = f * v.form_part();
  OneForm df = de_rham(f);
  for (std::size_t i = 0; i < n; ++i) {
    const Laurent& g = v.field_part()[i];
    if (g.is_zero()) continue;
    form += g.derive(i) * df;
    form += f.derive(i) * de_rham(g);
  }
  return WeightOneElement(v.chart(), field, form);
}

WeightOneElement mul_weight0_right(const WeightOneElement& v, const Laurent& f) {
  WeightOneElement out = mul_weight0(f, v);
  out.form_part() += de_rham(act(v, f));
  return out;
}

Laurent act(const WeightOneElement& v, const Laurent& f) {
  require_same_vars(f.nvars(), v.nvars());
  return v.field_part().apply(f);
}

OneForm bracket_correction(const VectorField& xi, const VectorField& tau) {
  std::size_t n = xi.nvars();
  OneForm out = -de_rham(tau.apply(divergence(xi)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Laurent t = tau[b].derive(a);
      if (t.is_zero()) continue;
      out -= t * de_rham(xi[a].derive(b));
    }
  return out;
}

Laurent frame_pairing(const VectorField& xi, const VectorField& tau) {
  std::size_t n = xi.nvars();
  Laurent out(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      out -= xi[a] * tau[b].derive(a).derive(b);
      out -= tau[b] * xi[a].derive(a).derive(b);
      out -= tau[b].derive(a) * xi[a].derive(b);
    }
  return out;
}

namespace {

int validation_degree(std::size_t nvars) {
  if (nvars <= 2) return 3;
  return nvars == 3 ? 2 : 1;
}

void ensure_validated(std::size_t nvars) { validate_rules(nvars, validation_degree(nvars)); }

WeightOneElement vprod0_raw(const WeightOneElement& u, const WeightOneElement& v) {
  require_same_chart(u.chart(), v.chart());
  require_same_vars(u.nvars(), v.nvars());
  const VectorField& xi = u.field_part();
  const VectorField& tau = v.field_part();
  const OneForm& alpha = u.form_part();
  const OneForm& beta = v.form_part();
  OneForm form = lie(xi, beta) - lie(tau, alpha) + de_rham(iota(tau, alpha)) + bracket_correction(xi, tau);
  return WeightOneElement(u.chart(), bracket(xi, tau), form);
}

Laurent vprod1_raw(const WeightOneElement& u, const WeightOneElement& v) {
  require_same_chart(u.chart(), v.chart());
  require_same_vars(u.nvars(), v.nvars());
  return frame_pairing(u.field_part(), v.field_part()) + iota(u.field_part(), v.form_part()) +
         iota(v.field_part(), u.form_part());
}

std::vector<WeightOneElement> generators(std::size_t nvars, int degree) {
  std::vector<Exponents> monos;
  Exponents e(nvars, -1);
  while (true) {
    int abs_sum = 0;
    for (int x : e) abs_sum += x < 0 ? -x : x;
    if (abs_sum <= degree) monos.push_back(e);
    std::size_t i = 0;
    while (i < nvars && e[i] == degree) e[i++] = -1;
    if (i == nvars) break;
    ++e[i];
  }
  std::vector<WeightOneElement> out;
  for (const auto& m : monos)
    for (std::size_t i = 0; i < nvars; ++i) {
      Laurent f = Laurent::monomial(nvars, m);
      out.push_back(WeightOneElement::field(Chart::Affine, nvars, i, f));
      out.push_back(WeightOneElement::form(Chart::Affine, OneForm::basis(nvars, i, f)));
    }
  return out;
}

void divergence_error(const std::string& what, const WeightOneElement& u, int n, const WeightOneElement& v,
                      const std::string& rule, const std::string& oracle) {
  fail(ErrorKind::RuleOracleDivergence, "rule/oracle divergence in " + what + ": (" + u.to_string() + ").(" +
                                            std::to_string(n) + ")(" + v.to_string() + ") rule " + rule +
                                            " oracle " + oracle);
}

}  // namespace

void validate_rules(std::size_t nvars, int degree, bool force) {
  static std::mutex mu;
  static std::set<std::size_t> done;
  std::lock_guard<std::mutex> lock(mu);
  if (!force && done.count(nvars)) return;
  FreeFieldEngine engine(nvars, WeightBound{2});
  auto gens = generators(nvars, degree);
  for (const auto& u : gens) {
    FreeFieldElement eu = embed(u);
    for (const auto& v : gens) {
      FreeFieldElement ev = embed(v);
      WeightOneElement r0 = vprod0_raw(u, v);
      WeightOneElement o0 = project(engine.nproduct(eu, 0, ev), Chart::Affine);
      if (r0 != o0) divergence_error("vprod", u, 0, v, r0.to_string(), o0.to_string());
      Laurent r1 = vprod1_raw(u, v);
      Laurent o1 = project_function(engine.nproduct(eu, 1, ev));
      if (r1 != o1) divergence_error("vprod", u, 1, v, r1.to_string(), o1.to_string());
    }
    for (const auto& f : gens) {
      if (!f.is_form()) continue;
      // Reuse the form coefficients as weight-zero inputs.
      for (std::size_t j = 0; j < nvars; ++j) {
        const Laurent& g = f.form_part()[j];
        if (g.is_zero()) continue;
        WeightOneElement r = mul_weight0(g, u);
        WeightOneElement o = project(engine.nproduct(embed(g), -1, eu), Chart::Affine);
        if (r != o) divergence_error("mul_weight0", u, -1, u, r.to_string(), o.to_string());
      }
    }
  }
  done.insert(nvars);
}

WeightOneElement vprod0(const WeightOneElement& u, const WeightOneElement& v) {
  ensure_validated(u.nvars());
  return vprod0_raw(u, v);
}

Laurent vprod1(const WeightOneElement& u, const WeightOneElement& v) {
  ensure_validated(u.nvars());
  return vprod1_raw(u, v);
}

VProduct vprod(const WeightOneElement& u, int n, const WeightOneElement& v) {
  if (n == 0) return vprod0(u, v);
  if (n == 1) return vprod1(u, v);
  if (n >= 2) return Laurent(u.nvars());
  fail(ErrorKind::Precondition, "vprod takes n = 0 or 1; use mul_weight0 for n = -1");
}

std::string to_string(const VProduct& p) {
  return std::visit([](const auto& x) { return x.to_string(); }, p);
}

VProduct vprod_checked(FreeFieldEngine& engine, const WeightOneElement& u, int n, const WeightOneElement& v) {
  VProduct rule = vprod(u, n, v);
  FreeFieldElement oracle = engine.nproduct(embed(u), n, embed(v));
  if (n == 0) {
    WeightOneElement o = project(oracle, u.chart());
    if (std::get<WeightOneElement>(rule) != o) divergence_error("vprod", u, n, v, to_string(rule), o.to_string());
  } else {
    Laurent o = project_function(oracle);
    if (std::get<Laurent>(rule) != o) divergence_error("vprod", u, n, v, to_string(rule), o.to_string());
  }
  return rule;
}

std::pair<VectorField, OneForm> symbol(const WeightOneElement& v) { return {v.field_part(), v.form_part()}; }

ClassicalDefect classical_defect(const WeightOneElement& u, const WeightOneElement& v, int n) {
  require_same_chart(u.chart(), v.chart());
  const VectorField& xi = u.field_part();
  const VectorField& tau = v.field_part();
  const OneForm& alpha = u.form_part();
  const OneForm& beta = v.form_part();
  ClassicalDefect out;
  out.n = n;
  if (n == 0) {
    WeightOneElement q = vprod0(u, v);
    WeightOneElement c(u.chart(), bracket(xi, tau), lie(xi, beta) - lie(tau, alpha) + de_rham(iota(tau, alpha)));
    WeightOneElement d = q - c;
    out.quantum = q;
    out.classical = c;
    out.defect = d;
    out.filtered = d.field_part().is_zero();
  } else if (n == 1) {
    Laurent q = vprod1(u, v);
    Laurent c = iota(xi, beta) + iota(tau, alpha);
    out.quantum = q;
    out.classical = c;
    out.defect = q - c;
  } else {
    fail(ErrorKind::Precondition, "classical_defect takes n = 0 or 1");
  }
  if (!out.filtered)
    fail(ErrorKind::InvariantViolation, "quantum correction has a vector-field part: " + to_string(out.defect));
  return out;
}

LieAlgebraData gl_data(std::size_t n) {
  if (n == 0) fail(ErrorKind::Precondition, "gl_n needs n >= 1");
  LieAlgebraData lie;
  std::size_t dim = n * n;
  auto idx = [n](std::size_t i, std::size_t j) { return i * n + j; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) lie.names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
  ParamScalar k1 = ParamScalar::param("k1");
  ParamScalar k2 = ParamScalar::param("k2");
  Rational inv_n = Rational(1) / Rational(static_cast<long>(n));
  lie.bracket.assign(dim, std::vector<std::vector<ParamScalar>>(dim, std::vector<ParamScalar>(dim)));
  lie.form.assign(dim, std::vector<ParamScalar>(dim));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          auto& br = lie.bracket[idx(i, j)][idx(k, l)];
          // [E_ij, E_kl] = d_jk E_il - d_li E_kj
          if (j == k) br[idx(i, l)] += ParamScalar(1L);
          if (l == i) br[idx(k, j)] -= ParamScalar(1L);
          Rational tr_ab = (j == k && i == l) ? 1 : 0;
          Rational tr_tr = (i == j && k == l) ? 1 : 0;
          lie.form[idx(i, j)][idx(k, l)] = k1 * Rational(tr_ab - tr_tr * inv_n) + k2 * Rational(tr_tr * inv_n);
        }
  lie.levels = {param_id("k1"), param_id("k2")};
  return lie;
}

std::vector<WeightOneElement> gl_tautological(std::size_t n) {
  std::vector<WeightOneElement> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.push_back(WeightOneElement::field(Chart::Affine, n, j, Laurent::coordinate(n, i)));
  return out;
}

std::vector<WeightOneElement> gl2_twisted(const ParamScalar& k) {
  const std::size_t n = 2;
  auto y1 = Laurent::coordinate(n, 0);
  auto y2 = Laurent::coordinate(n, 1);
  auto inv_y1 = Laurent::monomial(n, {-1, 0});
  auto e11 = WeightOneElement::field(Chart::U1, n, 0, y1);
  auto e12 = WeightOneElement::field(Chart::U1, n, 1, y1);
  auto e21 = WeightOneElement::field(Chart::U1, n, 0, y2) -
             WeightOneElement::form(Chart::U1, OneForm::basis(n, 1, k * inv_y1));
  auto e22 = WeightOneElement::field(Chart::U1, n, 1, y2) +
             WeightOneElement::form(Chart::U1, OneForm::basis(n, 0, k * inv_y1));
  return {e11, e12, e21, e22};
}

MorphismReport morphism_check(const LieAlgebraData& lie, const std::vector<WeightOneElement>& images) {
  std::size_t dim = lie.dim();
  if (images.size() != dim) fail(ErrorKind::Precondition, "need one image per basis element");
  for (const auto& im : images) require_same_chart(im.chart(), images.front().chart());
  MorphismReport report;
  std::vector<ParamScalar> equations;
  std::vector<std::pair<std::size_t, std::size_t>> origin;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      WeightOneElement expected(images[a].nvars(), images[a].chart());
      for (std::size_t c = 0; c < dim; ++c)
        if (!lie.bracket[a][b][c].is_zero()) expected += lie.bracket[a][b][c] * images[c];
      WeightOneElement d0 = vprod0(images[a], images[b]) - expected;
      if (!d0.is_zero()) report.failures.push_back({a, b, 0, d0.to_string()});

      Laurent p = vprod1(images[a], images[b]);
      Laurent rest = p - Laurent::constant(p.nvars(), p.coefficient(Exponents(p.nvars(), 0)));
      if (!rest.is_zero()) {
        report.failures.push_back({a, b, 1, (p - Laurent::constant(p.nvars(), lie.form[a][b])).to_string()});
        continue;
      }
      equations.push_back(p.coefficient(Exponents(p.nvars(), 0)) - lie.form[a][b]);
      origin.emplace_back(a, b);
    }
  if (lie.levels.empty()) {
    for (std::size_t e = 0; e < equations.size(); ++e)
      if (!equations[e].is_zero())
        report.failures.push_back({origin[e].first, origin[e].second, 1, equations[e].to_string()});
  } else {
    LinearSolution sol = solve_linear_system(equations, lie.levels);
    if (sol.status == LinearSolution::Status::Unique) {
      for (ParamId id : lie.levels) report.levels.emplace_back(id, sol.assignment.at(id));
    } else {
      for (std::size_t e = 0; e < equations.size(); ++e)
        report.failures.push_back({origin[e].first, origin[e].second, 1,
                                   std::string("levels ") + to_string(sol.status) + ": " + equations[e].to_string()});
    }
  }
  report.pass = report.failures.empty();
  return report;
}

}  // namespace valg
