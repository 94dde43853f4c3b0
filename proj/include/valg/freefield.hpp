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
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "valg/laurent.hpp"
#include "valg/scalar.hpp"

namespace valg {

/// A translate of a generator: T^order y_i (order >= 1, conformal weight
/// `order`) or T^order d_i (order >= 0, conformal weight order + 1).
struct FieldSymbol {
  enum class Kind : std::uint8_t { Coordinate = 0, Frame = 1 };

  Kind kind = Kind::Coordinate;
  std::uint16_t index = 0;
  std::uint16_t order = 0;

  int weight() const { return kind == Kind::Coordinate ? order : order + 1; }
  std::string to_string() const;

  // Canonical order: coordinate symbols before frame symbols, ascending
  // index, descending derivative order.
  friend bool operator<(const FieldSymbol& a, const FieldSymbol& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.index != b.index) return a.index < b.index;
    return a.order > b.order;
  }
  friend bool operator==(const FieldSymbol& a, const FieldSymbol& b) {
    return a.kind == b.kind && a.index == b.index && a.order == b.order;
  }
};

/// A normally ordered word: the frame symbols act as (-1)-products on the
/// commutative part, which is the prefix times the coordinate symbols. For a
/// polynomial prefix this is the same element as the right-nested product
///   y.(-1)( ... (s_1.(-1)( ... (s_k.(-1) 1))))
/// with the prefix spelled out one coordinate at a time.
struct Word {
  Exponents prefix;
  std::vector<FieldSymbol> tail;  // sorted, repeats adjacent

  int weight() const;
  std::size_t frame_count() const;
  bool is_vacuum() const;
  std::string to_string() const;

  friend bool operator<(const Word& a, const Word& b) {
    return std::tie(a.prefix, a.tail) < std::tie(b.prefix, b.tail);
  }
  friend bool operator==(const Word& a, const Word& b) {
    return a.prefix == b.prefix && a.tail == b.tail;
  }
};

/// Element of the weight-truncated chiral differential operators on a chart.
class FreeFieldElement {
 public:
  using Terms = std::map<Word, ParamScalar>;

  explicit FreeFieldElement(std::size_t nvars = 0) : nvars_(nvars) {}

  static FreeFieldElement vacuum(std::size_t nvars);
  static FreeFieldElement coordinate(std::size_t nvars, std::size_t i);
  static FreeFieldElement frame(std::size_t nvars, std::size_t i);
  /// A weight-zero element: a Laurent function of the coordinates.
  static FreeFieldElement function(const Laurent& f);
  static FreeFieldElement word(std::size_t nvars, Word w, const ParamScalar& c = ParamScalar(1L));

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Common conformal weight; nullopt for zero or inhomogeneous elements.
  std::optional<int> weight() const;
  int max_weight() const;

  void add_term(const Word& w, const ParamScalar& c);

  FreeFieldElement& operator+=(const FreeFieldElement& rhs);
  FreeFieldElement& operator-=(const FreeFieldElement& rhs);
  FreeFieldElement& operator*=(const ParamScalar& c);
  FreeFieldElement operator-() const;
  friend FreeFieldElement operator+(FreeFieldElement a, const FreeFieldElement& b) { return a += b; }
  friend FreeFieldElement operator-(FreeFieldElement a, const FreeFieldElement& b) { return a -= b; }
  friend FreeFieldElement operator*(const ParamScalar& c, FreeFieldElement a) { return a *= c; }
  friend FreeFieldElement operator*(FreeFieldElement a, const ParamScalar& c) { return a *= c; }
  friend bool operator==(const FreeFieldElement& a, const FreeFieldElement& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const FreeFieldElement& a, const FreeFieldElement& b) { return !(a == b); }

  FreeFieldElement substitute(ParamId id, const ParamScalar& value) const;
  std::string to_string() const;

 private:
  std::size_t nvars_;
  Terms terms_;
};

struct WeightBound {
  int max_weight = 3;
};

/// Computes all (n)-products of the chart CDO from the vertex algebra axioms:
/// composite left factors are peeled with quasi-associativity, modes are
/// commuted past frame symbols with the Jacobi identity, and the base
/// contractions are d_i.(0) y_j = delta_ij extended to Laurent functions as
/// derivations. Results are memoized per engine; an engine is not meant to be
/// shared between threads.
class FreeFieldEngine {
 public:
  /// Which frame symbol is peeled first. The randomized strategy exists to
  /// check that the rewriting is confluent.
  enum class Strategy { Canonical, Randomized };

  explicit FreeFieldEngine(std::size_t nvars, WeightBound bound = {},
                           Strategy strategy = Strategy::Canonical, std::uint64_t seed = 0);

  std::size_t nvars() const { return nvars_; }
  WeightBound bound() const { return bound_; }

  FreeFieldElement nproduct(const FreeFieldElement& a, int n, const FreeFieldElement& b);
  FreeFieldElement translate(const FreeFieldElement& a);
  /// T^j a / j!.
  FreeFieldElement divided_translate(const FreeFieldElement& a, int j);

  std::size_t cache_size() const { return cache_.size(); }

  // Internal rational-coefficient vectors.
  using Vec = std::map<Word, Rational>;

 private:
  void check_bound(int weight, const char* what) const;

  Vec product(const Vec& a, int n, const Vec& b);
  const Vec& product_words(const Word& a, int n, const Word& b);
  Vec compute_product(const Word& a, int n, const Word& b);

  Vec frame_mode(std::size_t i, int order, int mode, const Vec& x) const;
  Vec frame_annihilate(std::size_t i, int q, const Word& w) const;
  Vec translate_vec(const Vec& x) const;
  Vec commutative_product(const Word& a, const Vec& b) const;
  std::size_t pick(std::size_t count);

  std::size_t nvars_;
  WeightBound bound_;
  Strategy strategy_;
  std::mt19937_64 rng_;
  std::map<std::tuple<Word, int, Word>, Vec> cache_;
};

/// Raw expression tree over generators, T, sums, scalar multiples and
/// (n)-products; normal_form reduces it to canonical words.
struct FieldExpr {
  enum class Kind { Vacuum, Coordinate, Frame, Function, Sum, Scale, Translate, Product };

  Kind kind = Kind::Vacuum;
  std::size_t index = 0;
  Laurent function;
  ParamScalar scale;
  int mode = -1;
  std::vector<FieldExpr> args;

  static FieldExpr vacuum();
  static FieldExpr coordinate(std::size_t i);
  static FieldExpr frame(std::size_t i);
  static FieldExpr func(Laurent f);
  static FieldExpr sum(std::vector<FieldExpr> terms);
  static FieldExpr scaled(ParamScalar c, FieldExpr e);
  static FieldExpr translated(FieldExpr e);
  static FieldExpr product(FieldExpr a, int n, FieldExpr b);
};

FreeFieldElement normal_form(FreeFieldEngine& engine, const FieldExpr& expr);

enum class Axiom { Vacuum, Translation, Skew, Jacobi, QuasiAssociativity };

const char* to_string(Axiom axiom);

struct AxiomInstance {
  FreeFieldElement a, b, c;
  int m = 0;
  int n = 0;
};

/// LHS - RHS of the named axiom instance; zero when the axiom holds.
/// Vacuum uses (a, n); translation and skew use (a, b, n); Jacobi uses
/// (a, b, c, m, n); quasi-associativity uses (a, b, c, n).
FreeFieldElement axiom_defect(FreeFieldEngine& engine, Axiom axiom, const AxiomInstance& args);

/// L = sum_j T(y_j).(-1) d_j, weight 2.
FreeFieldElement virasoro(FreeFieldEngine& engine);

/// The Poisson vertex algebra of the same chart: words are monomials of the
/// commutative differential algebra, (-1) is their product, and the
/// non-negative products come from the lambda-bracket with
/// {d_i _lambda y_j} = delta_ij extended by the master formula.
class PoissonEngine {
 public:
  explicit PoissonEngine(std::size_t nvars, WeightBound bound = {});

  std::size_t nvars() const { return nvars_; }
  WeightBound bound() const { return bound_; }

  FreeFieldElement nproduct(const FreeFieldElement& a, int n, const FreeFieldElement& b) const;
  FreeFieldElement translate(const FreeFieldElement& a) const;

 private:
  std::size_t nvars_;
  WeightBound bound_;
};

enum class Setting { Poisson, Quantum };

/// xi.(0) L for a weight-one field xi. The Poisson value vanishes for every
/// vector field; the quantum value is -T^2(div xi)/2.
FreeFieldElement lemma441_defect(FreeFieldEngine& engine, const FreeFieldElement& xi,
                                 Setting setting = Setting::Poisson);

/// Binomial coefficient C(n, j) for any integer n and j >= 0.
Rational binomial(long n, long j);
Rational factorial(long n);

}  // namespace valg
