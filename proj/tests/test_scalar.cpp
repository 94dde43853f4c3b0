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

#include <random>

#include "valg/error.hpp"
#include "valg/linalg.hpp"
#include "valg/scalar.hpp"

using namespace valg;

namespace {

ParamScalar k() { return ParamScalar::param("k"); }

ParamId declare(const char* name) { return ParamRegistry::global().declare(name); }

ParamScalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-4, 4), p(0, 2);
  ParamId ids[] = {declare("k"), declare("c11")};
  ParamScalar out;
  for (int t = 0; t < 3; ++t) {
    ParamScalar term(Rational(c(rng), 1 + p(rng)));
    for (ParamId id : ids)
      for (int e = p(rng); e > 0; --e) term *= ParamScalar::param(id);
    out += term;
  }
  return out;
}

}  // namespace

TEST_CASE("normalize rational sums") {
  auto e = ScalarExpr::binary(ScalarExpr::Op::Add, ScalarExpr::literal(Rational(1, 2)), ScalarExpr::literal(Rational(1, 3)));
  CHECK(scalar_normalize(e) == ParamScalar(Rational(5, 6)));
}

TEST_CASE("normalize cancels k*k - k^2") {
  auto kk = ScalarExpr::binary(ScalarExpr::Op::Mul, ScalarExpr::parameter("k"), ScalarExpr::parameter("k"));
  auto k2 = ScalarExpr::power(ScalarExpr::parameter("k"), 2);
  CHECK(scalar_normalize(ScalarExpr::binary(ScalarExpr::Op::Sub, kk, k2)).is_zero());
}

TEST_CASE("relation coefficient N-1-2r-k at N=2, r=0") {
  long N = 2, r = 0;
  ParamScalar v = ParamScalar(N - 1 - 2 * r) - k();
  CHECK(v == ParamScalar(1L) - k());
  CHECK(v.to_string() == "1 - k");
}

TEST_CASE("division by a parameter is rejected") {
  auto e = ScalarExpr::binary(ScalarExpr::Op::Div, ScalarExpr::literal(1), ScalarExpr::parameter("k"));
  CHECK_THROWS_AS(scalar_normalize(e), Error);
  try {
    scalar_normalize(e);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NonScalarDivisor);
  }
  auto z = ScalarExpr::binary(ScalarExpr::Op::Div, ScalarExpr::literal(1), ScalarExpr::literal(0));
  CHECK_THROWS_AS(scalar_normalize(z), Error);
}

TEST_CASE("solve k - 3 = 0") {
  auto s = solve_linear_system({k() - ParamScalar(3L)}, {param_id("k")});
  REQUIRE(s.status == LinearSolution::Status::Unique);
  CHECK(s.assignment.at(param_id("k")) == ParamScalar(3L));
}

TEST_CASE("inconsistent and underdetermined systems") {
  CHECK(solve_linear_system({k() + ParamScalar(1L), k() - ParamScalar(1L)}, {param_id("k")}).status ==
        LinearSolution::Status::Inconsistent);
  CHECK(solve_linear_system({ParamScalar()}, {param_id("k")}).status == LinearSolution::Status::Underdetermined);
}

TEST_CASE("nonlinear conditions are rejected") {
  try {
    solve_linear_system({k() * k() - ParamScalar(1L)}, {param_id("k")});
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NonlinearCondition);
  }
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    auto a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + (-a)).is_zero());
    CHECK(a * b == b * a);
  }
}

TEST_CASE("solving is stable under rescaling the equations") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int t = 0; t < 50; ++t) {
    ParamScalar eq = ParamScalar(static_cast<long>(c(rng))) * k() + ParamScalar(static_cast<long>(c(rng)));
    auto once = solve_linear_system({eq}, {param_id("k")});
    auto again = solve_linear_system({eq * Rational(7, 3), eq}, {param_id("k")});
    CHECK(once.status == again.status);
    CHECK(once.assignment == again.assignment);
  }
}

TEST_CASE("unique solutions satisfy every equation") {
  ParamId kk = declare("k"), c = declare("c11");
  std::vector<ParamScalar> eqs = {k() + ParamScalar::param(c) - ParamScalar(4L), k() - ParamScalar::param(c)};
  auto s = solve_linear_system(eqs, {kk, c});
  REQUIRE(s.status == LinearSolution::Status::Unique);
  for (const auto& e : eqs) CHECK(e.substitute(kk, s.assignment[kk]).substitute(c, s.assignment[c]).is_zero());
}

TEST_CASE("echelon residuals and nullspace") {
  linalg::Matrix a = {{1, 2}, {2, 4}};
  auto ech = linalg::reduce(a, {ParamScalar(1L), k()}, 2);
  CHECK(ech.rank() == 1);
  CHECK(ech.rhs[1] == k() - ParamScalar(2L));
  auto null = linalg::nullspace(a, 2);
  REQUIRE(null.size() == 1);
  CHECK(null[0][0] + 2 * null[0][1] == 0);
}
