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

#include "valg/freefield.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "valg/error.hpp"

namespace valg {

namespace {

using Vec = FreeFieldEngine::Vec;

void add_into(Vec& out, const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = out.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) out.erase(it);
  }
}

void add_into(Vec& out, const Vec& v, const Rational& scale) {
  if (scale == 0) return;
  for (const auto& [w, c] : v) add_into(out, w, c * scale);
}

void insert_symbol(std::vector<FieldSymbol>& tail, const FieldSymbol& s) {
  tail.insert(std::upper_bound(tail.begin(), tail.end(), s), s);
}

Rational falling(long m, long p) {
  Rational r = 1;
  for (long t = 0; t < p; ++t) r *= Rational(m - t);
  return r;
}

bool has_frame(const Word& w) {
  return !w.tail.empty() && w.tail.back().kind == FieldSymbol::Kind::Frame;
}

}  // namespace

Rational factorial(long n) {
  Rational r = 1;
  for (long t = 2; t <= n; ++t) r *= Rational(t);
  return r;
}

Rational binomial(long n, long j) {
  if (j < 0) return 0;
  return falling(n, j) / factorial(j);
}

std::string FieldSymbol::to_string() const {
  std::string base = (kind == Kind::Coordinate ? "y" : "d") + std::to_string(index + 1);
  if (order == 0) return base;
  if (order == 1) return "T(" + base + ")";
  return "T^" + std::to_string(order) + "(" + base + ")";
}

int Word::weight() const {
  int w = 0;
  for (const auto& s : tail) w += s.weight();
  return w;
}

std::size_t Word::frame_count() const {
  return static_cast<std::size_t>(std::count_if(tail.begin(), tail.end(), [](const FieldSymbol& s) {
    return s.kind == FieldSymbol::Kind::Frame;
  }));
}

bool Word::is_vacuum() const {
  return tail.empty() && std::all_of(prefix.begin(), prefix.end(), [](int e) { return e == 0; });
}

// Frames go first when the prefix has a pole, since only then does the
// left-to-right reading differ from the word.
std::string Word::to_string() const {
  std::vector<std::string> ring, frames;
  bool pole = false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] == 0) continue;
    if (prefix[i] < 0) pole = true;
    std::string f = "y" + std::to_string(i + 1);
    if (prefix[i] != 1) f += "^" + std::to_string(prefix[i]);
    ring.push_back(f);
  }
  for (const auto& s : tail)
    (s.kind == FieldSymbol::Kind::Frame ? frames : ring).push_back(s.to_string());
  std::vector<std::string> parts;
  if (pole) {
    parts = frames;
    parts.insert(parts.end(), ring.begin(), ring.end());
  } else {
    parts = ring;
    parts.insert(parts.end(), frames.begin(), frames.end());
  }
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "*";
    out += p;
  }
  return out;
}

FreeFieldElement FreeFieldElement::vacuum(std::size_t nvars) {
  return word(nvars, Word{Exponents(nvars, 0), {}});
}

FreeFieldElement FreeFieldElement::coordinate(std::size_t nvars, std::size_t i) {
  if (i >= nvars) fail(ErrorKind::VariableMismatch, "coordinate index out of range");
  Exponents e(nvars, 0);
  e[i] = 1;
  return word(nvars, Word{e, {}});
}

FreeFieldElement FreeFieldElement::frame(std::size_t nvars, std::size_t i) {
  if (i >= nvars) fail(ErrorKind::VariableMismatch, "frame index out of range");
  FieldSymbol s{FieldSymbol::Kind::Frame, static_cast<std::uint16_t>(i), 0};
  return word(nvars, Word{Exponents(nvars, 0), {s}});
}

FreeFieldElement FreeFieldElement::function(const Laurent& f) {
  FreeFieldElement out(f.nvars());
  for (const auto& [e, c] : f.terms()) out.add_term(Word{e, {}}, c);
  return out;
}

FreeFieldElement FreeFieldElement::word(std::size_t nvars, Word w, const ParamScalar& c) {
  FreeFieldElement out(nvars);
  out.add_term(w, c);
  return out;
}

std::optional<int> FreeFieldElement::weight() const {
  std::optional<int> w;
  for (const auto& [word, c] : terms_) {
    int x = word.weight();
    if (w && *w != x) return std::nullopt;
    w = x;
  }
  return w;
}

int FreeFieldElement::max_weight() const {
  int w = 0;
  for (const auto& [word, c] : terms_) w = std::max(w, word.weight());
  return w;
}

void FreeFieldElement::add_term(const Word& w, const ParamScalar& c) {
  if (w.prefix.size() != nvars_) fail(ErrorKind::VariableMismatch, "word has wrong number of coordinates");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FreeFieldElement& FreeFieldElement::operator+=(const FreeFieldElement& rhs) {
  require_same_vars(nvars_, rhs.nvars_);
  for (const auto& [w, c] : rhs.terms_) add_term(w, c);
  return *this;
}

FreeFieldElement& FreeFieldElement::operator-=(const FreeFieldElement& rhs) {
  require_same_vars(nvars_, rhs.nvars_);
  for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
  return *this;
}

FreeFieldElement& FreeFieldElement::operator*=(const ParamScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, x] : terms_) x *= c;
  return *this;
}

FreeFieldElement FreeFieldElement::operator-() const {
  FreeFieldElement out = *this;
  return out *= ParamScalar(-1L);
}

FreeFieldElement FreeFieldElement::substitute(ParamId id, const ParamScalar& value) const {
  FreeFieldElement out(nvars_);
  for (const auto& [w, c] : terms_) out.add_term(w, c.substitute(id, value));
  return out;
}

std::string FreeFieldElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) append_term(out, c, w.is_vacuum() ? std::string() : w.to_string());
  return out;
}

FreeFieldEngine::FreeFieldEngine(std::size_t nvars, WeightBound bound, Strategy strategy,
                                 std::uint64_t seed)
    : nvars_(nvars), bound_(bound), strategy_(strategy), rng_(seed) {
  if (nvars == 0) fail(ErrorKind::Precondition, "engine needs at least one coordinate");
  if (bound.max_weight < 1) fail(ErrorKind::Precondition, "weight bound must be positive");
}

void FreeFieldEngine::check_bound(int weight, const char* what) const {
  if (weight > bound_.max_weight) {
    std::ostringstream os;
    os << what << " has weight " << weight << " above the bound " << bound_.max_weight;
    fail(ErrorKind::WeightBoundExceeded, os.str());
  }
}

std::size_t FreeFieldEngine::pick(std::size_t count) {
  if (strategy_ == Strategy::Canonical || count <= 1) return 0;
  return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng_);
}

FreeFieldElement FreeFieldEngine::nproduct(const FreeFieldElement& a, int n, const FreeFieldElement& b) {
  require_same_vars(a.nvars(), nvars_);
  require_same_vars(b.nvars(), nvars_);
  FreeFieldElement out(nvars_);
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      int w = wa.weight() + wb.weight() - n - 1;
      if (w < 0) continue;
      check_bound(w, "product");
      ParamScalar c = ca * cb;
      for (const auto& [word, x] : product_words(wa, n, wb)) out.add_term(word, c * x);
    }
  }
  return out;
}

FreeFieldElement FreeFieldEngine::translate(const FreeFieldElement& a) {
  require_same_vars(a.nvars(), nvars_);
  FreeFieldElement out(nvars_);
  for (const auto& [w, c] : a.terms()) {
    check_bound(w.weight() + 1, "translate");
    for (const auto& [word, x] : translate_vec(Vec{{w, Rational(1)}})) out.add_term(word, c * x);
  }
  return out;
}

FreeFieldElement FreeFieldEngine::divided_translate(const FreeFieldElement& a, int j) {
  FreeFieldElement out = a;
  for (int t = 0; t < j; ++t) out = translate(out);
  return out *= ParamScalar(Rational(1) / factorial(j));
}

Vec FreeFieldEngine::translate_vec(const Vec& x) const {
  Vec out;
  for (const auto& [w, c] : x) {
    for (std::size_t i = 0; i < w.prefix.size(); ++i) {
      if (w.prefix[i] == 0) continue;
      Word nw = w;
      nw.prefix[i] -= 1;
      insert_symbol(nw.tail, FieldSymbol{FieldSymbol::Kind::Coordinate, static_cast<std::uint16_t>(i), 1});
      add_into(out, nw, c * w.prefix[i]);
    }
    for (std::size_t k = 0; k < w.tail.size();) {
      std::size_t mult = 1;
      while (k + mult < w.tail.size() && w.tail[k + mult] == w.tail[k]) ++mult;
      Word nw = w;
      FieldSymbol s = nw.tail[k];
      nw.tail.erase(nw.tail.begin() + static_cast<std::ptrdiff_t>(k));
      s.order += 1;
      insert_symbol(nw.tail, s);
      add_into(out, nw, c * static_cast<long>(mult));
      k += mult;
    }
  }
  return out;
}

// d_i.(q) for q >= 0 acts on the commutative part as q! d/d(T^q y_i).
Vec FreeFieldEngine::frame_annihilate(std::size_t i, int q, const Word& w) const {
  Vec out;
  if (q == 0) {
    if (w.prefix[i] == 0) return out;
    Word nw = w;
    nw.prefix[i] -= 1;
    add_into(out, nw, Rational(w.prefix[i]));
    return out;
  }
  FieldSymbol target{FieldSymbol::Kind::Coordinate, static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(q)};
  auto range = std::equal_range(w.tail.begin(), w.tail.end(), target);
  auto mult = std::distance(range.first, range.second);
  if (mult == 0) return out;
  Word nw = w;
  nw.tail.erase(nw.tail.begin() + std::distance(w.tail.begin(), range.first));
  add_into(out, nw, factorial(q) * static_cast<long>(mult));
  return out;
}

// (T^p d_i).(m) = (-1)^p m(m-1)...(m-p+1) d_i.(m-p); negative modes create.
Vec FreeFieldEngine::frame_mode(std::size_t i, int order, int mode, const Vec& x) const {
  Vec out;
  Rational c = falling(mode, order);
  if (order % 2) c = -c;
  if (c == 0) return out;
  int q = mode - order;
  if (q < 0) {
    int created = -1 - q;
    c /= factorial(created);  // the symbol T^r d stands for r! d.(-1-r) 1
    FieldSymbol s{FieldSymbol::Kind::Frame, static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(created)};
    for (const auto& [w, coeff] : x) {
      Word nw = w;
      insert_symbol(nw.tail, s);
      add_into(out, nw, coeff * c);
    }
    return out;
  }
  for (const auto& [w, coeff] : x) add_into(out, frame_annihilate(i, q, w), coeff * c);
  return out;
}

Vec FreeFieldEngine::commutative_product(const Word& a, const Vec& b) const {
  Vec out;
  for (const auto& [w, c] : b) {
    Word nw = w;
    for (std::size_t i = 0; i < nw.prefix.size(); ++i) nw.prefix[i] += a.prefix[i];
    for (const auto& s : a.tail) insert_symbol(nw.tail, s);
    add_into(out, nw, c);
  }
  return out;
}

Vec FreeFieldEngine::product(const Vec& a, int n, const Vec& b) {
  Vec out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) add_into(out, product_words(wa, n, wb), ca * cb);
  return out;
}

const Vec& FreeFieldEngine::product_words(const Word& a, int n, const Word& b) {
  auto key = std::make_tuple(a, n, b);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Vec v = compute_product(a, n, b);
  return cache_.emplace(std::move(key), std::move(v)).first->second;
}

Vec FreeFieldEngine::compute_product(const Word& a, int n, const Word& b) {
  Vec out;
  int wa = a.weight(), wb = b.weight();
  if (wa + wb - n - 1 < 0) return out;
  if (a.is_vacuum()) {
    if (n == -1) out.emplace(b, Rational(1));
    return out;
  }

  std::size_t frames_a = a.frame_count();
  if (frames_a > 0) {
    // a = s.(-1) a'; quasi-associativity.
    std::size_t first = a.tail.size() - frames_a;
    FieldSymbol s = a.tail[first + pick(frames_a)];
    Word rest = a;
    rest.tail.erase(std::find(rest.tail.begin(), rest.tail.end(), s));
    int wr = rest.weight();
    Vec single{{b, Rational(1)}};
    for (int j = 0; n + j <= wr + wb - 1; ++j) {
      Vec inner = product_words(rest, n + j, b);
      if (inner.empty()) continue;
      add_into(out, frame_mode(s.index, s.order, -1 - j, inner), 1);
    }
    for (int j = 1; j - 1 <= s.order + wb; ++j) {
      Vec moved = frame_mode(s.index, s.order, j - 1, single);
      if (moved.empty()) continue;
      Vec rest_vec{{rest, Rational(1)}};
      add_into(out, product(rest_vec, n - j, moved), 1);
    }
    return out;
  }

  // a lies in the commutative ring.
  if (!has_frame(b)) {
    if (n >= 0) return out;
    Vec ta{{a, Rational(1)}};
    for (int t = 0; t < -n - 1; ++t) ta = translate_vec(ta);
    Rational scale = Rational(1) / factorial(-n - 1);
    for (const auto& [w, c] : ta) add_into(out, commutative_product(w, Vec{{b, Rational(1)}}), c * scale);
    return out;
  }

  // b = t.(-1) b'; commute a.(n) past t.(-1).
  std::size_t frames_b = b.frame_count();
  std::size_t first = b.tail.size() - frames_b;
  FieldSymbol t = b.tail[first + pick(frames_b)];
  Word rest = b;
  rest.tail.erase(std::find(rest.tail.begin(), rest.tail.end(), t));
  Vec rest_vec{{rest, Rational(1)}};
  Vec a_vec{{a, Rational(1)}};

  add_into(out, frame_mode(t.index, t.order, -1, product_words(a, n, rest)), 1);

  for (int j = 0; j <= wa + t.order; ++j) {
    Rational bc = binomial(n, j);
    if (bc == 0) continue;
    // a.(j) t by skew-symmetry: sum_l (-1)^(j+1+l) T^l (t.(j+l) a) / l!.
    Vec ajt;
    for (int l = 0; j + l <= wa + t.order; ++l) {
      Vec term = frame_mode(t.index, t.order, j + l, a_vec);
      if (term.empty()) continue;
      for (int r = 0; r < l; ++r) term = translate_vec(term);
      Rational sign = ((j + 1 + l) % 2) ? Rational(-1) : Rational(1);
      add_into(ajt, term, sign / factorial(l));
    }
    if (ajt.empty()) continue;
    add_into(out, product(ajt, n - 1 - j, rest_vec), bc);
  }
  return out;
}

FieldExpr FieldExpr::vacuum() {
  FieldExpr e;
  return e;
}

FieldExpr FieldExpr::coordinate(std::size_t i) {
  FieldExpr e;
  e.kind = Kind::Coordinate;
  e.index = i;
  return e;
}

FieldExpr FieldExpr::frame(std::size_t i) {
  FieldExpr e;
  e.kind = Kind::Frame;
  e.index = i;
  return e;
}

FieldExpr FieldExpr::func(Laurent f) {
  FieldExpr e;
  e.kind = Kind::Function;
  e.function = std::move(f);
  return e;
}

FieldExpr FieldExpr::sum(std::vector<FieldExpr> terms) {
  FieldExpr e;
  e.kind = Kind::Sum;
  e.args = std::move(terms);
  return e;
}

FieldExpr FieldExpr::scaled(ParamScalar c, FieldExpr x) {
  FieldExpr e;
  e.kind = Kind::Scale;
  e.scale = std::move(c);
  e.args.push_back(std::move(x));
  return e;
}

FieldExpr FieldExpr::translated(FieldExpr x) {
  FieldExpr e;
  e.kind = Kind::Translate;
  e.args.push_back(std::move(x));
  return e;
}

FieldExpr FieldExpr::product(FieldExpr a, int n, FieldExpr b) {
  FieldExpr e;
  e.kind = Kind::Product;
  e.mode = n;
  e.args.push_back(std::move(a));
  e.args.push_back(std::move(b));
  return e;
}

FreeFieldElement normal_form(FreeFieldEngine& engine, const FieldExpr& expr) {
  std::size_t n = engine.nvars();
  switch (expr.kind) {
    case FieldExpr::Kind::Vacuum:
      return FreeFieldElement::vacuum(n);
    case FieldExpr::Kind::Coordinate:
      return FreeFieldElement::coordinate(n, expr.index);
    case FieldExpr::Kind::Frame: {
      auto f = FreeFieldElement::frame(n, expr.index);
      if (engine.bound().max_weight < 1) fail(ErrorKind::WeightBoundExceeded, "frame exceeds weight bound");
      return f;
    }
    case FieldExpr::Kind::Function:
      require_same_vars(expr.function.nvars(), n);
      return FreeFieldElement::function(expr.function);
    case FieldExpr::Kind::Sum: {
      FreeFieldElement out(n);
      std::optional<int> w;
      for (const auto& arg : expr.args) {
        FreeFieldElement x = normal_form(engine, arg);
        if (x.is_zero()) continue;
        auto wx = x.weight();
        if (!wx || (w && *w != *wx)) fail(ErrorKind::InhomogeneousInput, "sum mixes conformal weights");
        w = wx;
        out += x;
      }
      return out;
    }
    case FieldExpr::Kind::Scale:
      return expr.scale * normal_form(engine, expr.args.at(0));
    case FieldExpr::Kind::Translate:
      return engine.translate(normal_form(engine, expr.args.at(0)));
    case FieldExpr::Kind::Product:
      return engine.nproduct(normal_form(engine, expr.args.at(0)), expr.mode,
                             normal_form(engine, expr.args.at(1)));
  }
  fail(ErrorKind::Precondition, "unknown expression node");
}

const char* to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::Vacuum: return "vacuum";
    case Axiom::Translation: return "translation";
    case Axiom::Skew: return "skew";
    case Axiom::Jacobi: return "jacobi";
    case Axiom::QuasiAssociativity: return "quasi_assoc";
  }
  return "?";
}

FreeFieldElement axiom_defect(FreeFieldEngine& engine, Axiom axiom, const AxiomInstance& args) {
  const auto& a = args.a;
  const auto& b = args.b;
  const auto& c = args.c;
  const int m = args.m, n = args.n;
  std::size_t nv = engine.nvars();
  FreeFieldElement out(nv);
  switch (axiom) {
    case Axiom::Vacuum: {
      auto one = FreeFieldElement::vacuum(nv);
      out = engine.nproduct(one, n, a);
      if (n == -1) {
        out -= a;
        out += engine.nproduct(a, -1, one) - a;
      } else if (n >= 0) {
        out += engine.nproduct(a, n, one);
      }
      return out;
    }
    case Axiom::Translation: {
      auto ta = engine.translate(a);
      out = engine.nproduct(ta, n, b) + ParamScalar(static_cast<long>(n)) * engine.nproduct(a, n - 1, b);
      out += engine.translate(engine.nproduct(a, n, b)) - engine.nproduct(a, n, engine.translate(b)) -
             engine.nproduct(ta, n, b);
      return out;
    }
    case Axiom::Skew: {
      out = engine.nproduct(a, n, b);
      int top = a.max_weight() + b.max_weight() - 1;
      for (int j = 0; n + j <= top; ++j) {
        auto ba = engine.nproduct(b, n + j, a);
        if (ba.is_zero()) continue;
        ParamScalar sign = ((n + 1 + j) % 2) ? ParamScalar(-1L) : ParamScalar(1L);
        out -= sign * engine.divided_translate(ba, j);
      }
      return out;
    }
    case Axiom::Jacobi: {
      out = engine.nproduct(a, m, engine.nproduct(b, n, c)) - engine.nproduct(b, n, engine.nproduct(a, m, c));
      int top = a.max_weight() + b.max_weight() - 1;
      for (int j = 0; j <= top; ++j) {
        Rational bc = binomial(m, j);
        if (bc == 0) continue;
        auto ab = engine.nproduct(a, j, b);
        if (ab.is_zero()) continue;
        out -= ParamScalar(bc) * engine.nproduct(ab, m + n - j, c);
      }
      return out;
    }
    case Axiom::QuasiAssociativity: {
      out = engine.nproduct(engine.nproduct(a, -1, b), n, c);
      int wa = a.max_weight(), wb = b.max_weight(), wc = c.max_weight();
      for (int j = 0; n + j <= wb + wc - 1; ++j) {
        auto bc = engine.nproduct(b, n + j, c);
        if (bc.is_zero()) continue;
        out -= engine.nproduct(engine.divided_translate(a, j), -1, bc);
      }
      for (int j = 1; j - 1 <= wa + wc - 1; ++j) {
        auto ac = engine.nproduct(a, j - 1, c);
        if (ac.is_zero()) continue;
        out -= engine.nproduct(b, n - j, ac);
      }
      return out;
    }
  }
  return out;
}

FreeFieldElement virasoro(FreeFieldEngine& engine) {
  if (engine.bound().max_weight < 2) fail(ErrorKind::WeightBoundExceeded, "L has weight 2 above the bound");
  std::size_t n = engine.nvars();
  FreeFieldElement out(n);
  for (std::size_t j = 0; j < n; ++j)
    out += engine.nproduct(engine.translate(FreeFieldElement::coordinate(n, j)), -1, FreeFieldElement::frame(n, j));
  return out;
}

namespace {

struct Partial {
  bool frame;
  std::size_t index;
  int order;
  Rational coeff;
  Word rest;
};

// Partial derivatives of a monomial in the jet variables T^m y_i and T^p d_i.
std::vector<Partial> partials(const Word& w) {
  std::vector<Partial> out;
  for (std::size_t i = 0; i < w.prefix.size(); ++i) {
    if (w.prefix[i] == 0) continue;
    Word r = w;
    r.prefix[i] -= 1;
    out.push_back({false, i, 0, Rational(w.prefix[i]), r});
  }
  for (std::size_t k = 0; k < w.tail.size();) {
    std::size_t mult = 1;
    while (k + mult < w.tail.size() && w.tail[k + mult] == w.tail[k]) ++mult;
    const FieldSymbol& s = w.tail[k];
    Word r = w;
    r.tail.erase(r.tail.begin() + static_cast<std::ptrdiff_t>(k));
    out.push_back({s.kind == FieldSymbol::Kind::Frame, s.index, s.order, Rational(static_cast<long>(mult)), r});
    k += mult;
  }
  return out;
}

Word multiply(const Word& a, const Word& b) {
  Word out = b;
  for (std::size_t i = 0; i < out.prefix.size(); ++i) out.prefix[i] += a.prefix[i];
  for (const auto& s : a.tail) insert_symbol(out.tail, s);
  return out;
}

FreeFieldElement multiply(const FreeFieldElement& a, const FreeFieldElement& b) {
  FreeFieldElement out(a.nvars());
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) out.add_term(multiply(wa, wb), ca * cb);
  return out;
}

}  // namespace

PoissonEngine::PoissonEngine(std::size_t nvars, WeightBound bound) : nvars_(nvars), bound_(bound) {
  if (nvars == 0) fail(ErrorKind::Precondition, "engine needs at least one coordinate");
}

FreeFieldElement PoissonEngine::translate(const FreeFieldElement& a) const {
  FreeFieldEngine helper(nvars_, bound_);
  return helper.translate(a);
}

// f.(k) g = sum c_ij (-1)^m k! C(n+m, k) (dg/du_j^(n)) T^(n+m-k) (df/du_i^(m)).
FreeFieldElement PoissonEngine::nproduct(const FreeFieldElement& a, int n, const FreeFieldElement& b) const {
  require_same_vars(a.nvars(), nvars_);
  require_same_vars(b.nvars(), nvars_);
  FreeFieldElement out(nvars_);
  if (n < 0) {
    FreeFieldElement ta = a;
    for (int t = 0; t < -n - 1; ++t) ta = translate(ta);
    out = multiply(ta, b) * ParamScalar(Rational(1) / factorial(-n - 1));
  } else {
    FreeFieldEngine helper(nvars_, WeightBound{bound_.max_weight + 1});
    for (const auto& [wa, ca] : a.terms()) {
      auto pa = partials(wa);
      for (const auto& [wb, cb] : b.terms()) {
        for (const auto& pb : partials(wb)) {
          for (const auto& fa : pa) {
            if (fa.frame == pb.frame || fa.index != pb.index) continue;
            int total = fa.order + pb.order;
            if (total < n) continue;
            Rational c = fa.frame ? Rational(1) : Rational(-1);
            if (fa.order % 2) c = -c;
            c *= factorial(n) * binomial(total, n) * fa.coeff * pb.coeff;
            auto f = FreeFieldElement::word(nvars_, fa.rest);
            for (int t = 0; t < total - n; ++t) f = helper.translate(f);
            out += multiply(FreeFieldElement::word(nvars_, pb.rest, ca * cb * c), f);
          }
        }
      }
    }
  }
  for (const auto& [w, c] : out.terms()) {
    if (w.weight() > bound_.max_weight) fail(ErrorKind::WeightBoundExceeded, "product exceeds the weight bound");
  }
  return out;
}

FreeFieldElement lemma441_defect(FreeFieldEngine& engine, const FreeFieldElement& xi, Setting setting) {
  auto w = xi.weight();
  if (!xi.is_zero() && (!w || *w != 1)) fail(ErrorKind::Precondition, "xi must have weight 1");
  FreeFieldElement l = virasoro(engine);
  if (setting == Setting::Quantum) return engine.nproduct(xi, 0, l);
  return PoissonEngine(engine.nvars(), engine.bound()).nproduct(xi, 0, l);
}

}  // namespace valg
