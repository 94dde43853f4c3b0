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

#include "valg/laurent.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include "valg/error.hpp"

namespace valg {

int total_degree(const Exponents& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

std::string monomial_to_string(const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "y" + std::to_string(i + 1);
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

void require_same_vars(std::size_t a, std::size_t b) {
  if (a != b)
    fail(ErrorKind::VariableMismatch, "mismatched variable lists: " + std::to_string(a) +
                                          " vs " + std::to_string(b) + " coordinates");
}

// ---------------------------------------------------------------------------
// Laurent

Laurent Laurent::constant(std::size_t nvars, const ParamScalar& c) {
  return monomial(nvars, Exponents(nvars, 0), c);
}

Laurent Laurent::monomial(std::size_t nvars, Exponents e, const ParamScalar& c) {
  if (e.size() != nvars) fail(ErrorKind::VariableMismatch, "exponent vector has wrong length");
  Laurent f(nvars);
  f.add_term(e, c);
  return f;
}

Laurent Laurent::coordinate(std::size_t nvars, std::size_t i) {
  Exponents e(nvars, 0);
  e.at(i) = 1;
  return monomial(nvars, std::move(e));
}

ParamScalar Laurent::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? ParamScalar() : it->second;
}

void Laurent::add_term(const Exponents& e, const ParamScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Laurent& Laurent::operator+=(const Laurent& rhs) {
  require_same_vars(nvars_, rhs.nvars_);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& rhs) {
  require_same_vars(nvars_, rhs.nvars_);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Laurent& Laurent::operator*=(const ParamScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

Laurent Laurent::operator-() const {
  Laurent out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  require_same_vars(a.nvars_, b.nvars_);
  Laurent out(a.nvars_);
  Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Laurent Laurent::derive(std::size_t i) const {
  if (i >= nvars_) fail(ErrorKind::VariableMismatch, "derivative index out of range");
  Laurent out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents d = e;
    d[i] -= 1;
    out.add_term(d, c * Rational(e[i]));
  }
  return out;
}

std::optional<int> Laurent::degree() const {
  std::optional<int> deg;
  for (const auto& [e, c] : terms_) {
    int d = total_degree(e);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

bool Laurent::is_homogeneous() const { return is_zero() || degree().has_value(); }

bool Laurent::is_polynomial() const {
  for (const auto& [e, c] : terms_)
    for (int x : e)
      if (x < 0) return false;
  return true;
}

int Laurent::min_exponent(std::size_t i) const {
  int m = INT_MAX;
  for (const auto& [e, c] : terms_) m = std::min(m, e.at(i));
  return terms_.empty() ? 0 : m;
}

Laurent Laurent::substitute(ParamId id, const ParamScalar& value) const {
  Laurent out(nvars_);
  for (const auto& [e, c] : terms_) out.add_term(e, c.substitute(id, value));
  return out;
}

std::string Laurent::to_string() const {
  std::string out;
  for (const auto& [e, c] : terms_) append_term(out, c, monomial_to_string(e));
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// OneForm

OneForm OneForm::basis(std::size_t nvars, std::size_t j, const Laurent& coeff) {
  require_same_vars(nvars, coeff.nvars());
  OneForm w(nvars);
  w[j] = coeff;
  return w;
}

bool OneForm::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Laurent& f) { return f.is_zero(); });
}

OneForm& OneForm::operator+=(const OneForm& rhs) {
  require_same_vars(nvars(), rhs.nvars());
  for (std::size_t j = 0; j < comps_.size(); ++j) comps_[j] += rhs.comps_[j];
  return *this;
}

OneForm& OneForm::operator-=(const OneForm& rhs) {
  require_same_vars(nvars(), rhs.nvars());
  for (std::size_t j = 0; j < comps_.size(); ++j) comps_[j] -= rhs.comps_[j];
  return *this;
}

OneForm OneForm::operator-() const {
  OneForm out = *this;
  for (auto& f : out.comps_) f = -f;
  return out;
}

OneForm operator*(const Laurent& f, const OneForm& w) {
  require_same_vars(f.nvars(), w.nvars());
  OneForm out(w.nvars());
  for (std::size_t j = 0; j < w.nvars(); ++j) out[j] = f * w[j];
  return out;
}

OneForm OneForm::substitute(ParamId id, const ParamScalar& value) const {
  OneForm out(nvars());
  for (std::size_t j = 0; j < nvars(); ++j) out[j] = comps_[j].substitute(id, value);
  return out;
}

std::string OneForm::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < comps_.size(); ++j)
    for (const auto& [e, c] : comps_[j].terms()) {
      std::string m = monomial_to_string(e);
      append_term(out, c, (m.empty() ? "" : m + "*") + "dy" + std::to_string(j + 1));
    }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// TwoForm

TwoForm TwoForm::basis(std::size_t nvars, std::size_t i, std::size_t j, const Laurent& coeff) {
  TwoForm w(nvars);
  w.add(i, j, coeff);
  return w;
}

Laurent TwoForm::component(std::size_t i, std::size_t j) const {
  if (i == j) return Laurent(nvars_);
  bool swapped = i > j;
  auto it = comps_.find(swapped ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == comps_.end()) return Laurent(nvars_);
  return swapped ? -it->second : it->second;
}

void TwoForm::add(std::size_t i, std::size_t j, const Laurent& coeff) {
  require_same_vars(nvars_, coeff.nvars());
  if (i == j || coeff.is_zero()) return;
  bool swapped = i > j;
  auto key = swapped ? std::make_pair(j, i) : std::make_pair(i, j);
  Laurent& slot = comps_.try_emplace(key, Laurent(nvars_)).first->second;
  if (swapped)
    slot -= coeff;
  else
    slot += coeff;
  if (slot.is_zero()) comps_.erase(key);
}

TwoForm& TwoForm::operator+=(const TwoForm& rhs) {
  require_same_vars(nvars_, rhs.nvars_);
  for (const auto& [ij, f] : rhs.comps_) add(ij.first, ij.second, f);
  return *this;
}

std::string TwoForm::to_string() const {
  std::string out;
  for (const auto& [ij, f] : comps_)
    for (const auto& [e, c] : f.terms()) {
      std::string m = monomial_to_string(e);
      append_term(out, c,
                  (m.empty() ? "" : m + "*") + "dy" + std::to_string(ij.first + 1) + "^dy" +
                      std::to_string(ij.second + 1));
    }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// VectorField

VectorField VectorField::basis(std::size_t nvars, std::size_t i, const Laurent& coeff) {
  require_same_vars(nvars, coeff.nvars());
  VectorField v(nvars);
  v[i] = coeff;
  return v;
}

bool VectorField::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Laurent& f) { return f.is_zero(); });
}

VectorField& VectorField::operator+=(const VectorField& rhs) {
  require_same_vars(nvars(), rhs.nvars());
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += rhs.comps_[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& rhs) {
  require_same_vars(nvars(), rhs.nvars());
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= rhs.comps_[i];
  return *this;
}

VectorField operator*(const Laurent& f, const VectorField& v) {
  require_same_vars(f.nvars(), v.nvars());
  VectorField out(v.nvars());
  for (std::size_t i = 0; i < v.nvars(); ++i) out[i] = f * v[i];
  return out;
}

Laurent VectorField::apply(const Laurent& f) const {
  require_same_vars(nvars(), f.nvars());
  Laurent out(nvars());
  for (std::size_t i = 0; i < nvars(); ++i)
    if (!comps_[i].is_zero()) out += comps_[i] * f.derive(i);
  return out;
}

std::string VectorField::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < comps_.size(); ++i)
    for (const auto& [e, c] : comps_[i].terms()) {
      std::string m = monomial_to_string(e);
      append_term(out, c, (m.empty() ? "" : m + "*") + "d" + std::to_string(i + 1));
    }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Cartan calculus

OneForm de_rham(const Laurent& f) {
  OneForm w(f.nvars());
  for (std::size_t j = 0; j < f.nvars(); ++j) w[j] = f.derive(j);
  return w;
}

TwoForm de_rham(const OneForm& w) {
  TwoForm out(w.nvars());
  for (std::size_t j = 0; j < w.nvars(); ++j)
    for (std::size_t i = 0; i < w.nvars(); ++i)
      if (i != j) out.add(i, j, w[j].derive(i));
  return out;
}

VectorField bracket(const VectorField& a, const VectorField& b) {
  require_same_vars(a.nvars(), b.nvars());
  VectorField out(a.nvars());
  for (std::size_t i = 0; i < a.nvars(); ++i) out[i] = a.apply(b[i]) - b.apply(a[i]);
  return out;
}

Laurent iota(const VectorField& v, const OneForm& w) {
  require_same_vars(v.nvars(), w.nvars());
  Laurent out(v.nvars());
  for (std::size_t i = 0; i < v.nvars(); ++i)
    if (!v[i].is_zero() && !w[i].is_zero()) out += v[i] * w[i];
  return out;
}

OneForm iota(const VectorField& v, const TwoForm& w) {
  require_same_vars(v.nvars(), w.nvars());
  OneForm out(v.nvars());
  for (const auto& [ij, f] : w.components()) {
    auto [i, j] = ij;
    // iota_v (f dy_i ^ dy_j) = f (v_i dy_j - v_j dy_i)
    out[j] += v[i] * f;
    out[i] -= v[j] * f;
  }
  return out;
}

OneForm lie(const VectorField& v, const OneForm& w) {
  require_same_vars(v.nvars(), w.nvars());
  OneForm out(v.nvars());
  for (std::size_t j = 0; j < v.nvars(); ++j) {
    out[j] += v.apply(w[j]);
    for (std::size_t i = 0; i < v.nvars(); ++i)
      if (!w[i].is_zero()) out[j] += w[i] * v[i].derive(j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Z_N weights

namespace {

int residue(int value, int N) {
  int r = value % N;
  return r < 0 ? r + N : r;
}

class WeightCollector {
 public:
  explicit WeightCollector(int N) : N_(N) {
    if (N < 1) fail(ErrorKind::Precondition, "Z_N weight requires N >= 1");
  }
  void add(const Laurent& f, int shift) {
    for (const auto& [e, c] : f.terms()) seen_.insert(residue(total_degree(e) + shift, N_));
  }
  std::optional<int> result() const {
    if (seen_.size() > 1) return std::nullopt;
    return seen_.empty() ? 0 : *seen_.begin();
  }

 private:
  int N_;
  std::set<int> seen_;
};

}  // namespace

std::optional<int> zn_weight(const Laurent& f, int N) {
  WeightCollector w(N);
  w.add(f, 0);
  return w.result();
}

std::optional<int> zn_weight(const OneForm& form, int N) {
  WeightCollector w(N);
  for (std::size_t j = 0; j < form.nvars(); ++j) w.add(form[j], 1);
  return w.result();
}

std::optional<int> zn_weight(const TwoForm& form, int N) {
  WeightCollector w(N);
  for (const auto& [ij, f] : form.components()) w.add(f, 2);
  return w.result();
}

std::optional<int> zn_weight(const VectorField& v, int N) {
  WeightCollector w(N);
  for (std::size_t i = 0; i < v.nvars(); ++i) w.add(v[i], -1);
  return w.result();
}

}  // namespace valg
