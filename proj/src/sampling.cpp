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

#include "valg/sampling.hpp"

#include <algorithm>

namespace valg {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

ParamScalar coefficient(Rng& rng, int bound) {
  int c = 0;
  while (c == 0) c = uniform(rng, -bound, bound);
  return ParamScalar(static_cast<long>(c));
}

Exponents exponents(std::size_t nvars, Rng& rng, int lo, int hi) {
  Exponents e(nvars);
  for (auto& x : e) x = uniform(rng, lo, hi);
  return e;
}

}  // namespace

Laurent random_laurent(std::size_t nvars, Rng& rng, const SampleShape& shape) {
  Laurent f(nvars);
  int terms = uniform(rng, 1, shape.max_terms);
  for (int t = 0; t < terms; ++t)
    f.add_term(exponents(nvars, rng, shape.min_exponent, shape.max_exponent), coefficient(rng, shape.max_coefficient));
  return f;
}

FreeFieldElement random_field_element(std::size_t nvars, int weight, Rng& rng, const SampleShape& shape) {
  FreeFieldElement out(nvars);
  int terms = uniform(rng, 1, shape.max_terms);
  for (int t = 0; t < terms; ++t) {
    Word w;
    w.prefix = exponents(nvars, rng, shape.min_exponent, shape.max_exponent);
    int left = weight;
    while (left > 0) {
      FieldSymbol s;
      s.index = static_cast<std::uint16_t>(uniform(rng, 0, static_cast<int>(nvars) - 1));
      if (uniform(rng, 0, 1) == 0) {
        s.kind = FieldSymbol::Kind::Frame;
        s.order = static_cast<std::uint16_t>(uniform(rng, 0, left - 1));
      } else {
        s.kind = FieldSymbol::Kind::Coordinate;
        s.order = static_cast<std::uint16_t>(uniform(rng, 1, left));
      }
      left -= s.weight();
      w.tail.push_back(s);
    }
    std::sort(w.tail.begin(), w.tail.end());
    out.add_term(w, coefficient(rng, shape.max_coefficient));
  }
  return out;
}

WeightOneElement random_weight_one(std::size_t nvars, Chart chart, Rng& rng, const SampleShape& shape) {
  auto coeff = [&](void) {
    SampleShape s = shape;
    if (chart == Chart::Affine) s.min_exponent = std::max(0, s.min_exponent);
    Laurent f = random_laurent(nvars, rng, s);
    // Chart coordinates that are not inverted keep nonnegative exponents.
    Laurent out(nvars);
    for (const auto& [exps, c] : f.terms()) {
      Exponents e = exps;
      if (chart == Chart::U1) e[1] = std::abs(e[1]);
      if (chart == Chart::U2) e[0] = std::abs(e[0]);
      out.add_term(e, c);
    }
    return out;
  };
  VectorField xi(nvars);
  OneForm alpha(nvars);
  for (std::size_t i = 0; i < nvars; ++i) {
    if (uniform(rng, 0, 2) > 0) xi[i] = coeff();
    if (uniform(rng, 0, 2) > 0) alpha[i] = coeff();
  }
  return WeightOneElement(chart, xi, alpha);
}

}  // namespace valg
