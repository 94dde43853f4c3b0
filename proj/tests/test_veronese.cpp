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

#include "valg/error.hpp"
#include "valg/sampling.hpp"
#include "valg/veronese.hpp"

using namespace valg;

namespace {

Laurent mono(const Exponents& e, const ParamScalar& c = ParamScalar(1L)) {
  return Laurent::monomial(e.size(), e, c);
}
Laurent generator(const VeroneseModel& m, std::size_t j) { return mono(m.generators.at(j)); }
ParamScalar k() { return ParamScalar::param("k"); }

}  // namespace

TEST_CASE("model construction") {
  VeroneseModel m = build_model(2, 2);
  REQUIRE(m.generators.size() == 3);
  CHECK(m.generators[0] == Exponents{2, 0});
  CHECK(m.generators[1] == Exponents{1, 1});
  CHECK(m.generators[2] == Exponents{0, 2});
  REQUIRE(m.relations.size() == 1);
  CHECK(m.relation_to_string(m.relations[0]) == "x0*x2 - x1*x1");
  CHECK(m.degree_bound == 6);
  CHECK(identity_normalization(m) == 2);

  CHECK(build_model(2, 1).relations.empty());

  VeroneseModel h = build_model(3, 2);
  CHECK(h.generators.size() == 6);
  CHECK(h.relations.size() == 6);

  for (auto [n, N] : {std::pair{2, 3}, {2, 5}, {3, 2}, {3, 3}, {4, 2}}) {
    VeroneseModel v = build_model(n, N);
    for (const auto& g : v.generators) CHECK(total_degree(g) == N);
    for (const auto& r : v.relations) {
      Laurent q = generator(v, r.u) * generator(v, r.v) - generator(v, r.p) * generator(v, r.q);
      CHECK(q.is_zero());
    }
  }
  CHECK_THROWS_AS(build_model(1, 2), Error);
  CHECK_THROWS_AS(build_model(2, 0), Error);
}

TEST_CASE("membership in the Kaehler image") {
  VeroneseModel m = build_model(2, 2);
  CHECK_FALSE(omega_membership(OneForm::basis(2, 0, mono({0, 1})), m, 2));
  CHECK(omega_membership(de_rham(mono({2, 0})), m, 2));
  Laurent x1 = mono({1, 1});
  CHECK(omega_membership(x1 * de_rham(x1), m, 4));

  VeroneseModel m3 = build_model(2, 3);
  CHECK_FALSE(omega_membership(OneForm::basis(2, 0, mono({0, 2})), m3, 3));
  CHECK_FALSE(omega_membership(OneForm::basis(2, 0, mono({1, 1})), m3, 3));
  for (std::size_t j = 0; j < m3.generators.size(); ++j) CHECK(omega_membership(de_rham(generator(m3, j)), m3, 3));

  try {
    omega_membership(de_rham(mono({4, 4})), m, 8);
    FAIL("expected a degree bound error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeBoundExceeded);
  }
  CHECK_THROWS_AS(omega_membership(OneForm::basis(2, 0, mono({0, 1}) + mono({0, 2})), m, 2), Error);
}

TEST_CASE("relation defects at N = 2") {
  VeroneseModel m = build_model(2, 2);
  WeightOneElement d = relation_defect(m, 0, RelationPair::E12_E22, k());
  CHECK(d.is_form());
  OneForm expected = OneForm::basis(2, 0, mono({0, 1}, ParamScalar(1L) - k())) + OneForm::basis(2, 1, mono({1, 0}, ParamScalar(-2L)));
  CHECK(d.form_part() == expected);

  WeightOneElement at3 = relation_defect(m, 0, RelationPair::E12_E22, ParamScalar(3L));
  CHECK(at3.form_part() == de_rham(mono({1, 1}, ParamScalar(-2L))));
  CHECK_THROWS_AS(relation_defect(m, 2, RelationPair::E12_E22, k()), Error);
}

TEST_CASE("at k = N + 1 every defect is -2 T(x_{N-r-1})") {
  for (int N = 2; N <= 5; ++N) {
    VeroneseModel m = build_model(2, N);
    ParamScalar charge(static_cast<long>(N + 1));
    for (int r = 0; r < N; ++r) {
      CAPTURE(N);
      CAPTURE(r);
      WeightOneElement d = relation_defect(m, r, RelationPair::E12_E22, charge);
      Laurent x = generator(m, static_cast<std::size_t>(N - r - 1));
      CHECK(d.form_part() == Laurent::constant(2, -2L) * de_rham(x));
      CHECK(omega_membership(d.form_part(), m, N));
    }
  }
}

TEST_CASE("charge solver") {
  for (int N = 2; N <= 6; ++N) {
    CAPTURE(N);
    ChargeResult r = solve_charge(build_model(2, N));
    REQUIRE(r.status == ChargeResult::Status::Unique);
    CHECK(*r.charge == Rational(N + 1));
    CHECK(r.admissible == GluingForm::basis(1, 1, ParamScalar(static_cast<long>(N + 1))));
  }
  ChargeResult one = solve_charge(build_model(2, 1));
  CHECK(one.status == ChargeResult::Status::Unconstrained);
  CHECK_FALSE(one.charge);
  CHECK(std::string(to_string(one.status)) == "unconstrained");
}

TEST_CASE("admissible gluing classes") {
  using Key = GluingForm::Key;
  AdmissibleResult two = classify_admissible(build_model(2, 2), 4);
  CHECK(two.candidates == std::vector<Key>{{1, 1}, {1, 3}, {2, 2}, {3, 1}});
  CHECK(two.survivors == std::vector<Key>{{1, 1}});
  AdmissibleResult three = classify_admissible(build_model(2, 3), 5);
  CHECK(three.candidates == std::vector<Key>{{1, 1}, {1, 4}, {2, 3}, {3, 2}, {4, 1}});
  CHECK(three.survivors == std::vector<Key>{{1, 1}});
  AdmissibleResult one = classify_admissible(build_model(2, 1), 4);
  CHECK(one.candidates.size() == 6);
  CHECK(one.survivors == std::vector<Key>{{1, 1}});
}

TEST_CASE("quantized gl_2") {
  for (int N = 2; N <= 3; ++N) {
    QuantizedGl2 q = quantized_gl2(build_model(2, N));
    REQUIRE(q.report.pass);
    REQUIRE(q.report.levels.size() == 2);
    CHECK(q.report.levels[0].second == ParamScalar(static_cast<long>(-N - 2)));
    CHECK(q.report.levels[1].second == ParamScalar(static_cast<long>(N)));
  }
  QuantizedGl2 g = quantized_gl2(build_model(2, 2), k());
  REQUIRE(g.report.pass);
  CHECK(g.report.levels[0].second == -k() - ParamScalar(1L));
  CHECK(g.report.levels[1].second == k() - ParamScalar(1L));
}

TEST_CASE("derivations of the Veronese ring") {
  for (int N = 2; N <= 4; ++N) {
    CAPTURE(N);
    VeroneseModel m = build_model(2, N);
    DerivationResult d0 = derivations(m, 0);
    CHECK(d0.dimension() == 4);
    CHECK(d0.generated);
    CHECK(d0.euler_in_span);
    DerivationResult dn = derivations(m, N);
    CHECK(dn.generated);
    CHECK(dn.dimension() == static_cast<std::size_t>(2 * N + 4));
    for (const auto& tau : dn.basis) {
      for (const auto& r : m.relations) {
        Laurent image = tau[r.u] * generator(m, r.v) + generator(m, r.u) * tau[r.v] - tau[r.p] * generator(m, r.q) -
                        generator(m, r.p) * tau[r.q];
        CHECK(image.is_zero());
      }
    }
  }
  CHECK_THROWS_AS(derivations(build_model(2, 2), 40), Error);
}

TEST_CASE("higher Veronese witnesses") {
  for (auto [n, N] : {std::pair{3, 2}, {3, 3}, {4, 2}}) {
    CAPTURE(n);
    CAPTURE(N);
    WitnessResult w = higher_witness(build_model(n, N));
    CHECK(w.verdict == "non-quantizable");
    CHECK_FALSE(w.member);
    CHECK(w.witness.is_form());
    if (n == 3) CHECK(w.matches_display);
    CHECK(zn_weight(w.witness.form_part(), N) == 0);
  }
  CHECK(higher_witness(build_model(3, 2)).witness.to_string() == "y2*T(y3)");
  try {
    higher_witness(build_model(3, 1));
    FAIL("expected a precondition failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
}

TEST_CASE("charge conditions agree across instances") {
  for (int N = 2; N <= 6; ++N) {
    VeroneseModel m = build_model(2, N);
    ChargeResult r = solve_charge(m);
    ParamScalar charge(*r.charge);
    CHECK(r.instances.size() == static_cast<std::size_t>(2 * N));
    for (const auto& inst : r.instances) {
      CHECK(omega_membership(relation_defect(m, inst.r, inst.pair, charge).form_part(), m, N));
    }
  }
}

TEST_CASE("defects are pure Z_N-invariant forms") {
  for (int N = 2; N <= 5; ++N) {
    VeroneseModel m = build_model(2, N);
    for (auto pair : {RelationPair::E12_E22, RelationPair::E11_E21})
      for (int r = 0; r < N; ++r) {
        WeightOneElement d = relation_defect(m, r, pair, k());
        CHECK(d.field_part().is_zero());
        CHECK(zn_weight(d.form_part(), N) == 0);
      }
  }
}

TEST_CASE("membership is stable under generator multiplication") {
  Rng rng(401);
  for (int t = 0; t < 20; ++t) {
    int N = 2 + static_cast<int>(rng() % 2);
    VeroneseModel m = build_model(2, N, 4 * N);
    std::size_t ng = m.generators.size();
    OneForm w(2);
    for (int s = 0; s < 2; ++s) {
      std::size_t a = rng() % ng, b = rng() % ng;
      long c = static_cast<long>(rng() % 5) - 2;
      w = w + (Laurent::constant(2, c == 0 ? 1L : c) * generator(m, a)) * de_rham(generator(m, b));
    }
    if (w.is_zero()) continue;
    REQUIRE(omega_membership(w, m, 2 * N));
    std::size_t j = rng() % ng;
    CHECK(omega_membership(generator(m, j) * w, m, 3 * N));
  }
}
