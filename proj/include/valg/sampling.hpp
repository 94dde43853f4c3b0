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
#include <random>

#include "valg/algebroid.hpp"
#include "valg/freefield.hpp"
#include "valg/laurent.hpp"

namespace valg {

using Rng = std::mt19937_64;

struct SampleShape {
  int min_exponent = 0;
  int max_exponent = 2;
  int max_terms = 2;
  int max_coefficient = 3;
};

Laurent random_laurent(std::size_t nvars, Rng& rng, const SampleShape& shape = {});

/// Homogeneous element of the given weight built from random words.
FreeFieldElement random_field_element(std::size_t nvars, int weight, Rng& rng, const SampleShape& shape = {});

/// Random vector field plus one-form. Affine keeps polynomial
/// coefficients, U1/U2/U12 allow the matching negative exponents.
WeightOneElement random_weight_one(std::size_t nvars, Chart chart, Rng& rng, const SampleShape& shape = {});

}  // namespace valg
