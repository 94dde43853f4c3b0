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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "valg/algebroid.hpp"
#include "valg/error.hpp"
#include "valg/sampling.hpp"

using namespace valg;

namespace {

using W = WeightOneElement;

Laurent mono(int a, int b, const ParamScalar& c = ParamScalar(1L)) { return Laurent::monomial(2, {a, b}, c); }
W field(std::size_t i, const Laurent& f, Chart chart = Chart::Affine) { return W::field(chart, 2, i, f); }
W form(std::size_t j, const Laurent& g, Chart chart = Chart::Affine) { return W::form(chart, OneForm::basis(2, j, g)); }
ParamScalar k() { return ParamScalar::param("k"); }

/// Polynomial coefficients of total degree at most 3.
W random_poly_section(Rng& rng) {
  SampleShape shape;
  shape.max_exponent = 3;
  shape.max_terms = 2;
  W v = random_weight_one(2, Chart::Affine, rng, shape);
  auto clip = [](const Laurent& f) {
    Laurent out(f.nvars());
    for (const auto& [e, c] : f.terms())
      if (total_degree(e) <= 3) out.add_term(e, c);
    return out;
  };
  for (std::size_t i = 0; i < 2; ++i) {
    v.field_part()[i] = clip(v.field_part()[i]);
    v.form_part()[i] = clip(v.form_part()[i]);
  }
  return v;
}

}  // namespace

TEST_CASE("module action of functions") {
  W v = field(0, mono(0, 1));
  CHECK(mul_weight0(mono(1, 0), v) == field(0, mono(1, 1)) + form(1, mono(0, 0)));
  CHECK(mul_weight0(mono(0, 0), v) == v);
  CHECK(mul_weight0(mono(-1, 0), form(0, mono(0, 0))) == form(0, mono(-1, 0)));
}

TEST_CASE("vertex products of weight-one elements") {
  CHECK(std::get<Laurent>(vprod(field(1, mono(1, 0)), 1, field(0, mono(0, 1)))) == Laurent::constant(2, -1L));
  CHECK(std::get<Laurent>(vprod(field(0, mono(0, 0)), 1, field(1, mono(0, 0)))).is_zero());
  CHECK(std::get<W>(vprod(field(0, mono(0, 0)), 0, field(1, mono(1, 0)))) == field(1, mono(0, 0)));
  W i = field(0, mono(1, 0)) + field(1, mono(0, 1));
  CHECK(vprod1(i, i) == Laurent::constant(2, -2L));
}

TEST_CASE("products refuse mixed charts") {
  try {
    vprod(field(0, mono(1, 0), Chart::U1), 0, field(0, mono(1, 0), Chart::U2));
    FAIL("expected a chart mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ChartMismatch);
  }
}

TEST_CASE("symbols and classical defects") {
  ClassicalDefect c = classical_defect(field(1, mono(1, 0)), field(0, mono(0, 1)), 1);
  CHECK(std::get<Laurent>(c.defect) == Laurent::constant(2, -1L));
  CHECK(std::get<Laurent>(c.classical).is_zero());
  CHECK(c.filtered);
  ClassicalDefect z = classical_defect(field(0, mono(0, 0)), field(1, mono(0, 0)), 0);
  CHECK(std::get<W>(z.defect).is_zero());
  W s = field(0, mono(0, 1), Chart::U1) - form(1, mono(-1, 0, k()), Chart::U1);
  auto [xi, alpha] = symbol(s);
  CHECK(xi == VectorField::basis(2, 0, mono(0, 1)));
  CHECK(alpha == OneForm::basis(2, 1, mono(-1, 0, -k())));
}

TEST_CASE("gl_2 twisted images have levels (-k-1, k-1)") {
  MorphismReport r = morphism_check(gl_data(2), gl2_twisted(k()));
  REQUIRE(r.pass);
  REQUIRE(r.levels.size() == 2);
  CHECK(r.levels[0].second == -k() - ParamScalar(1L));
  CHECK(r.levels[1].second == k() - ParamScalar(1L));
}

TEST_CASE("tautological gl_n images have levels (-1, -1)") {
  for (std::size_t n = 2; n <= 4; ++n) {
    CAPTURE(n);
    MorphismReport r = morphism_check(gl_data(n), gl_tautological(n));
    REQUIRE(r.pass);
    for (const auto& [id, value] : r.levels) CHECK(value == ParamScalar(-1L));
  }
}

TEST_CASE("wrong images are reported with defects") {
  auto images = gl_tautological(2);
  images[1] = images[1] + form(0, mono(0, 1));
  MorphismReport r = morphism_check(gl_data(2), images);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.failures.empty());
}

TEST_CASE("closed-form products agree with the Fock oracle") {
  FreeFieldEngine engine(2, WeightBound{2});
  Rng rng(201);
  for (int t = 0; t < 100; ++t) {
    W u = random_poly_section(rng), v = random_poly_section(rng);
    CHECK(project(engine.nproduct(embed(u), 0, embed(v)), Chart::Affine) == vprod0(u, v));
    CHECK(project_function(engine.nproduct(embed(u), 1, embed(v))) == vprod1(u, v));
  }
}

TEST_CASE("closed forms agree with the oracle on Laurent charts") {
  FreeFieldEngine engine(2, WeightBound{2});
  Rng rng(202);
  SampleShape shape;
  shape.min_exponent = -2;
  for (int t = 0; t < 60; ++t) {
    W u = random_weight_one(2, Chart::Overlap, rng, shape), v = random_weight_one(2, Chart::Overlap, rng, shape);
    CHECK(std::get<W>(vprod_checked(engine, u, 0, v)) == vprod0(u, v));
    CHECK(std::get<Laurent>(vprod_checked(engine, u, 1, v)) == vprod1(u, v));
  }
}

TEST_CASE("first product is symmetric and the bracket has the classical symbol") {
  Rng rng(203);
  for (int t = 0; t < 100; ++t) {
    W u = random_poly_section(rng), v = random_poly_section(rng);
    CHECK(vprod1(u, v) == vprod1(v, u));
    CHECK(vprod0(u, v).field_part() == bracket(u.field_part(), v.field_part()));
  }
}

TEST_CASE("function action is associative up to the quantum correction") {
  Rng rng(204);
  SampleShape shape;
  shape.min_exponent = -1;
  for (int t = 0; t < 100; ++t) {
    Laurent f = random_laurent(2, rng, shape), g = random_laurent(2, rng, shape);
    W v = random_weight_one(2, Chart::Overlap, rng, shape);
    W diff = mul_weight0(f, mul_weight0(g, v)) - mul_weight0(f * g, v);
    const VectorField& xi = v.field_part();
    OneForm expected = xi.apply(g) * de_rham(f) + xi.apply(f) * de_rham(g);
    CHECK(diff.is_form());
    CHECK(diff.form_part() == expected);
  }
}

TEST_CASE("rule validation runs against the engine") {
  CHECK_NOTHROW(validate_rules(2, 2, true));
  CHECK_NOTHROW(validate_rules(3, 1, true));
}

TEST_CASE("printing parses back the 2.29b section") {
  W s = field(0, mono(0, 1), Chart::U1) - form(1, mono(-1, 0, k()), Chart::U1);
  CHECK(s.to_string() == "y2*d1 - k*y1^-1*T(y2)");
}
