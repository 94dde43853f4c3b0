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

#include "valg/geometry.hpp"

#include "valg/error.hpp"

namespace valg {

GluingForm GluingForm::basis(int a, int b, const ParamScalar& c) {
  GluingForm w;
  w.add(a, b, c);
  return w;
}

void GluingForm::add(int a, int b, const ParamScalar& c) {
  if (a < 1 || b < 1) fail(ErrorKind::Precondition, "gluing basis needs a, b >= 1");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(Key{a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ParamScalar GluingForm::coefficient(int a, int b) const {
  auto it = terms_.find(Key{a, b});
  return it == terms_.end() ? ParamScalar() : it->second;
}

GluingForm& GluingForm::operator+=(const GluingForm& rhs) {
  for (const auto& [key, c] : rhs.terms_) add(key.first, key.second, c);
  return *this;
}

GluingForm operator*(const ParamScalar& c, const GluingForm& w) {
  GluingForm out;
  for (const auto& [key, x] : w.terms_) out.add(key.first, key.second, c * x);
  return out;
}

TwoForm GluingForm::two_form() const {
  Laurent f(2);
  for (const auto& [key, c] : terms_) f.add_term({-key.first, -key.second}, c);
  return TwoForm::basis(2, 0, 1, f);
}

std::string GluingForm::to_string() const {
  std::string out;
  for (const auto& [key, c] : terms_)
    append_term(out, c, "w[" + std::to_string(key.first) + "," + std::to_string(key.second) + "]");
  return out.empty() ? "0" : out;
}

WeightOneElement transition(const WeightOneElement& v, const GluingForm& omega, Direction dir) {
  require_same_vars(v.nvars(), 2);
  OneForm shift = iota(v.field_part(), omega.two_form());
  OneForm form = dir == Direction::OneToTwo ? v.form_part() + shift : v.form_part() - shift;
  return WeightOneElement(dir == Direction::OneToTwo ? Chart::U2 : Chart::U1, v.field_part(), form);
}

bool regular_on(const Laurent& f, Chart chart) {
  for (const auto& [e, c] : f.terms())
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] >= 0) continue;
      bool inverted = (chart == Chart::U1 && i == 0) || (chart == Chart::U2 && i == 1) ||
                      (chart == Chart::Overlap && i < 2);
      if (!inverted) return false;
    }
  return true;
}

bool regular_on(const OneForm& w, Chart chart) {
  for (std::size_t j = 0; j < w.nvars(); ++j)
    if (!regular_on(w[j], chart)) return false;
  return true;
}

bool regular_on(const WeightOneElement& v, Chart chart) {
  for (std::size_t i = 0; i < v.nvars(); ++i)
    if (!regular_on(v.field_part()[i], chart)) return false;
  return regular_on(v.form_part(), chart);
}

std::optional<int> internal_degree(const WeightOneElement& v) {
  std::optional<int> deg;
  auto merge = [&deg](int d) {
    if (deg && *deg != d) return false;
    deg = d;
    return true;
  };
  for (std::size_t i = 0; i < v.nvars(); ++i) {
    for (const auto& [e, c] : v.field_part()[i].terms())
      if (!merge(total_degree(e) - 1)) return std::nullopt;
    for (const auto& [e, c] : v.form_part()[i].terms())
      if (!merge(total_degree(e) + 1)) return std::nullopt;
  }
  return deg;
}

// The conditions decouple monomial by monomial: a term of the U2 form with a
// pole along y1 = 0 must be cancelled by alpha, which is allowed only when
// the term has no pole along y2 = 0.
std::optional<Extension> extend_section(const WeightOneElement& v, const GluingForm& omega) {
  require_same_vars(v.nvars(), 2);
  if (!v.is_zero() && !internal_degree(v)) fail(ErrorKind::InhomogeneousInput, "section is not homogeneous");
  if (!regular_on(v, Chart::U1)) fail(ErrorKind::Precondition, "section is not regular on U1");
  for (std::size_t i = 0; i < 2; ++i)
    if (!regular_on(v.field_part()[i], Chart::U2)) return std::nullopt;
  WeightOneElement image = transition(v.with_chart(Chart::U1), omega, Direction::OneToTwo);
  OneForm alpha(2);
  for (std::size_t j = 0; j < 2; ++j)
    for (const auto& [e, c] : image.form_part()[j].terms()) {
      if (e[0] >= 0) continue;
      if (e[1] < 0) return std::nullopt;
      alpha[j].add_term(e, -c);
    }
  Extension ext;
  ext.alpha = alpha;
  ext.on_u1 = v.with_chart(Chart::U1) + WeightOneElement::form(Chart::U1, alpha);
  ext.on_u2 = transition(ext.on_u1, omega, Direction::OneToTwo);
  if (!regular_on(ext.on_u2, Chart::U2) || !regular_on(ext.on_u1, Chart::U1))
    fail(ErrorKind::InvariantViolation, "extension is not regular on both charts");
  return ext;
}

bool ChartedSection::consistent() const {
  return regular_on(on_u1, Chart::U1) && regular_on(on_u2, Chart::U2) &&
         transition(on_u1, omega, Direction::OneToTwo) == on_u2.with_chart(Chart::U2);
}

std::map<GluingForm::Key, ParamScalar> h1_class(const Laurent& f) {
  require_same_vars(f.nvars(), 2);
  std::map<GluingForm::Key, ParamScalar> out;
  for (const auto& [e, c] : f.terms())
    if (e[0] < 0 && e[1] < 0) out.emplace(GluingForm::Key{-e[0], -e[1]}, c);
  return out;
}

GluingForm h1_class_form(const Laurent& f) {
  GluingForm out;
  for (const auto& [key, c] : h1_class(f)) out.add(key.first, key.second, c);
  return out;
}

GluingForm zn_filter(const GluingForm& omega, int N) {
  if (N < 1) fail(ErrorKind::Precondition, "N must be positive");
  GluingForm out;
  for (const auto& [key, c] : omega.terms())
    if ((key.first + key.second - 2) % N == 0) out.add(key.first, key.second, c);
  return out;
}

namespace {

void monomials_of_degree(std::size_t nvars, int degree, std::vector<Exponents>& out) {
  if (degree < 0) return;
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
}

}  // namespace

std::vector<WeightOneElement> invariant_sections(int degree, int N, std::size_t nvars) {
  if (N < 1) fail(ErrorKind::Precondition, "N must be positive");
  std::vector<WeightOneElement> out;
  if (((degree % N) + N) % N != 0) return out;
  std::vector<Exponents> fields, forms;
  monomials_of_degree(nvars, degree + 1, fields);
  monomials_of_degree(nvars, degree - 1, forms);
  for (const auto& e : fields)
    for (std::size_t i = 0; i < nvars; ++i)
      out.push_back(WeightOneElement::field(Chart::Affine, nvars, i, Laurent::monomial(nvars, e)));
  for (const auto& e : forms)
    for (std::size_t j = 0; j < nvars; ++j)
      out.push_back(WeightOneElement::form(Chart::Affine, OneForm::basis(nvars, j, Laurent::monomial(nvars, e))));
  return out;
}

FreeFieldElement conformal_glue_defect(const GluingForm& omega, WeightBound bound) {
  if (bound.max_weight < 2) fail(ErrorKind::WeightBoundExceeded, "conformal check needs weight bound >= 2");
  FreeFieldEngine engine(2, bound);
  TwoForm w = omega.two_form();
  std::vector<FreeFieldElement> images;
  for (std::size_t i = 0; i < 2; ++i) {
    WeightOneElement d = WeightOneElement::field(Chart::Overlap, 2, i, Laurent::constant(2, 1L));
    d.form_part() += iota(d.field_part(), w);
    images.push_back(embed(d));
  }
  FreeFieldElement l = virasoro(engine);
  FreeFieldElement image(2);
  for (const auto& [word, c] : l.terms()) {
    Word ring{word.prefix, {}};
    std::vector<FieldSymbol> frames;
    for (const auto& s : word.tail) (s.kind == FieldSymbol::Kind::Frame ? frames : ring.tail).push_back(s);
    FreeFieldElement x = FreeFieldElement::word(2, ring, c);
    for (const auto& s : frames) {
      FreeFieldElement g = images[s.index];
      for (int t = 0; t < s.order; ++t) g = engine.translate(g);
      x = engine.nproduct(g, -1, x);
    }
    image += x;
  }
  return image - l;
}

bool conformal_glue_check(const GluingForm& omega, WeightBound bound) {
  return conformal_glue_defect(omega, bound).is_zero();
}

}  // namespace valg
