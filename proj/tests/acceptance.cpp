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

// Runs each acceptance criterion and prints one PASS/FAIL line for it.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "valg/algebroid.hpp"
#include "valg/error.hpp"
#include "valg/freefield.hpp"
#include "valg/geometry.hpp"
#include "valg/sampling.hpp"
#include "valg/veronese.hpp"

using namespace valg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      out_.pass = false;
      if (failures_++ < 3) out_.detail += (out_.detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& s) {
    if (out_.pass) out_.detail += (out_.detail.empty() ? "" : "; ") + s;
  }
  Outcome done() { return out_; }

 private:
  Outcome out_;
  int failures_ = 0;
};

void monomials_of_degree(std::size_t nvars, int degree, Exponents& e, std::size_t at, std::vector<Exponents>& out) {
  if (at + 1 == nvars) {
    e[at] = degree;
    out.push_back(e);
    return;
  }
  for (int d = degree; d >= 0; --d) {
    e[at] = d;
    monomials_of_degree(nvars, degree - d, e, at + 1, out);
  }
}

std::vector<Exponents> monomials_of_degree(std::size_t nvars, int degree) {
  std::vector<Exponents> out;
  Exponents e(nvars, 0);
  monomials_of_degree(nvars, degree, e, 0, out);
  return out;
}

ParamScalar k() { return ParamScalar::param("k"); }
ParamScalar num(long v) { return ParamScalar(v); }

Outcome charge() {
  Checker c;
  for (int N = 2; N <= 6; ++N) {
    auto t0 = std::chrono::steady_clock::now();
    ChargeResult r = solve_charge(build_model(2, N));
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = r.status == ChargeResult::Status::Unique && r.charge && *r.charge == Rational(N + 1);
    c.expect(ok, "N=" + std::to_string(N) + " gave " + to_string(r.status));
    c.expect(s < 10.0, "N=" + std::to_string(N) + " took " + std::to_string(s) + " s");
  }
  c.note("k = N+1 for N = 2..6");
  return c.done();
}

Outcome gluing() {
  Checker c;
  for (int N = 2; N <= 3; ++N) {
    AdmissibleResult r = classify_admissible(build_model(2, N), 2 * N);
    c.expect(r.survivors == std::vector<GluingForm::Key>{{1, 1}}, "N=" + std::to_string(N) + " survivors differ");
    c.note("N=" + std::to_string(N) + ": " + std::to_string(r.candidates.size()) + " candidates, w[1,1] survives");
  }
  return c.done();
}

Outcome gl2() {
  Checker c;
  MorphismReport formal = morphism_check(gl_data(2), gl2_twisted(k()));
  c.expect(formal.pass && formal.levels.size() == 2 && formal.levels[0].second == -k() - num(1) &&
               formal.levels[1].second == k() - num(1),
           "formal k levels");
  for (int N = 2; N <= 3; ++N) {
    QuantizedGl2 q = quantized_gl2(build_model(2, N));
    c.expect(q.report.pass && q.report.levels.size() == 2 && q.report.levels[0].second == num(-N - 2) &&
                 q.report.levels[1].second == num(N),
             "N=" + std::to_string(N) + " levels");
  }
  c.note("levels (-k-1, k-1); (-4, 2) and (-5, 3) at k = N+1");
  return c.done();
}

Outcome gln() {
  Checker c;
  for (std::size_t n = 2; n <= 4; ++n) {
    MorphismReport r = morphism_check(gl_data(n), gl_tautological(n));
    bool ok = r.pass && !r.levels.empty();
    for (const auto& [id, v] : r.levels) ok = ok && v == num(-1);
    c.expect(ok, "n=" + std::to_string(n));
  }
  c.note("levels (-1, -1) for n = 2, 3, 4");
  return c.done();
}

Outcome conformal() {
  Checker c;
  for (std::size_t n = 1; n <= 4; ++n) {
    FreeFieldEngine e(n);
    FreeFieldElement l = virasoro(e);
    std::string tag = "n=" + std::to_string(n);
    c.expect(e.nproduct(l, 0, l) == e.translate(l), tag + " L(0)L");
    c.expect(e.nproduct(l, 1, l) == num(2) * l, tag + " L(1)L");
    c.expect(e.nproduct(l, 2, l).is_zero(), tag + " L(2)L");
    c.expect(e.nproduct(l, 3, l) == num(static_cast<long>(n)) * FreeFieldElement::vacuum(n), tag + " L(3)L");
  }
  c.note("n = 1..4");
  return c.done();
}

Outcome glue() {
  Checker c;
  c.expect(conformal_glue_check(GluingForm::basis(1, 1)), "w[1,1]");
  c.expect(conformal_glue_check(GluingForm::basis(1, 2)), "w[1,2]");
  c.expect(conformal_glue_check(GluingForm::basis(2, 1, num(2))), "2*w[2,1]");
  c.note("w[1,1], w[1,2], 2*w[2,1]");
  return c.done();
}

Outcome lemma() {
  Checker c;
  std::size_t count = 0, anomalous = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    FreeFieldEngine e(n);
    for (int deg = 0; deg <= 5; ++deg)
      for (const auto& ex : monomials_of_degree(n, deg))
        for (std::size_t i = 0; i < n; ++i) {
          WeightOneElement xi = WeightOneElement::field(Chart::Affine, n, i, Laurent::monomial(n, ex, num(1)));
          FreeFieldElement f = embed(xi);
          ++count;
          c.expect(lemma441_defect(e, f, Setting::Poisson).is_zero(), xi.to_string());
          if (!lemma441_defect(e, f, Setting::Quantum).is_zero()) ++anomalous;
        }
  }
  c.note(std::to_string(count) + " monomial fields of degree <= 4, n <= 3; quantum -T^2(div)/2 nonzero on " +
         std::to_string(anomalous));
  return c.done();
}

Outcome witness() {
  Checker c;
  for (auto [n, N] : {std::pair{3, 2}, {3, 3}, {4, 2}}) {
    std::string tag = "(" + std::to_string(n) + "," + std::to_string(N) + ")";
    WitnessResult w = higher_witness(build_model(n, N));
    c.expect(w.verdict == "non-quantizable" && !w.member, tag + " verdict " + w.verdict);
    if (n == 3) c.expect(w.matches_display, tag + " witness differs from the display");
  }
  c.note("non-quantizable for (3,2), (3,3), (4,2)");
  return c.done();
}

Outcome membership() {
  Checker c;
  VeroneseModel m = build_model(2, 3);
  auto form = [](int a, int b) { return OneForm::basis(2, 0, Laurent::monomial(2, {a, b}, num(1))); };
  c.expect(!omega_membership(form(0, 2), m, 3), "y2^2 dy1 is a member");
  c.expect(!omega_membership(form(1, 1), m, 3), "y1 y2 dy1 is a member");
  for (const auto& g : m.generators)
    c.expect(omega_membership(de_rham(Laurent::monomial(2, g, num(1))), m, 3), "d(x_j) is not a member");
  c.note("r = 0, 1 excluded; d(x_j) included");
  return c.done();
}

Outcome derivation() {
  Checker c;
  for (int N = 2; N <= 4; ++N) {
    DerivationResult d = derivations(build_model(2, N), 0);
    c.expect(d.dimension() == 4 && d.generated && d.euler_in_span, "N=" + std::to_string(N));
  }
  c.note("dimension 4, generated by gl_2, N = 2..4");
  return c.done();
}

Outcome properties() {
  Checker c;
  SampleShape laurent;
  laurent.min_exponent = -1;
  laurent.max_exponent = 1;
  {
    FreeFieldEngine e(2, WeightBound{8});
    Rng rng(11);
    std::uniform_int_distribution<int> wt(0, 2), mode(-1, 1);
    for (int t = 0; t < 200; ++t) {
      AxiomInstance inst{random_field_element(2, wt(rng), rng, laurent), random_field_element(2, wt(rng), rng, laurent),
                         random_field_element(2, wt(rng), rng, laurent), mode(rng), mode(rng)};
      c.expect(axiom_defect(e, Axiom::Jacobi, inst).is_zero(), "Jacobi");
      c.expect(axiom_defect(e, Axiom::Skew, inst).is_zero(), "skew");
      c.expect(axiom_defect(e, Axiom::Translation, inst).is_zero(), "translation");
    }
  }
  {
    FreeFieldEngine e(2, WeightBound{2});
    Rng rng(12);
    SampleShape shape;
    shape.min_exponent = -2;
    for (int t = 0; t < 100; ++t) {
      WeightOneElement u = random_weight_one(2, Chart::Overlap, rng, shape);
      WeightOneElement v = random_weight_one(2, Chart::Overlap, rng, shape);
      c.expect(project(e.nproduct(embed(u), 0, embed(v)), Chart::Overlap) == vprod0(u, v), "oracle (0)");
      c.expect(project_function(e.nproduct(embed(u), 1, embed(v))) == vprod1(u, v), "oracle (1)");
    }
  }
  {
    Rng rng(13);
    SampleShape shape;
    shape.min_exponent = -2;
    GluingForm omega = GluingForm::basis(1, 1, k()) + GluingForm::basis(1, 2, num(3));
    for (int t = 0; t < 100; ++t) {
      WeightOneElement u = random_weight_one(2, Chart::Overlap, rng, shape);
      WeightOneElement v = random_weight_one(2, Chart::Overlap, rng, shape);
      WeightOneElement tu = transition(u, omega, Direction::OneToTwo);
      WeightOneElement tv = transition(v, omega, Direction::OneToTwo);
      c.expect(transition(tu, omega, Direction::TwoToOne) == u.with_chart(Chart::U1), "round trip");
      c.expect(transition(vprod0(u, v), omega, Direction::OneToTwo) == vprod0(tu, tv), "transition of (0)");
      c.expect(vprod1(u, v) == vprod1(tu, tv), "transition of (1)");
    }
  }
  c.note("200 axiom triples, 100 oracle pairs, 100 transition pairs");
  return c.done();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "quantization charge", charge},   {2, "admissible gluing", gluing},
      {3, "gl_2 morphism levels", gl2},      {4, "gl_n tautological level", gln},
      {5, "Virasoro relations", conformal},  {6, "conformal gluing", glue},
      {7, "divergence lemma", lemma},        {8, "higher Veronese witness", witness},
      {9, "membership table", membership},   {10, "derivations in degree 0", derivation},
      {11, "property suites", properties},
  };
  int failed = 0;
  auto start = std::chrono::steady_clock::now();
  for (const auto& cr : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.id == 11 && s >= 120.0) o = {false, "took " + std::to_string(s) + " s"};
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2d %s: %s (%.2f s) %s\n", cr.id, o.pass ? "PASS" : "FAIL", cr.name, s, o.detail.c_str());
    std::fflush(stdout);
  }
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(), total);
  return failed == 0 ? 0 : 1;
}
