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

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "valg/cli.hpp"
#include "valg/expr.hpp"

using namespace valg;

namespace {

Scope scope2() {
  Scope s;
  s.nvars = 2;
  s.params = {"k"};
  return s;
}

Value eval(const std::string& text, std::size_t nvars = 2) {
  Scope s = scope2();
  s.nvars = nvars;
  Evaluator ev(nvars, WeightBound{3}, {});
  return ev.eval(parse_expr(text, s));
}

Diagnostic diagnose(const std::string& text) {
  try {
    parse_expr(text, scope2());
  } catch (const ParseError& e) {
    return e.diagnostic();
  }
  FAIL("expected a parse error for " << text);
  return {};
}

Report run(const std::string& line, const Config& config = {}) {
  std::vector<std::string> args;
  std::size_t start = 0;
  while (start < line.size()) {
    std::size_t end = line.find(' ', start);
    if (end == std::string::npos) end = line.size();
    if (end > start) args.push_back(line.substr(start, end - start));
    start = end + 1;
  }
  return run_command(args, config);
}

std::string value(const Report& r, const std::string& key) {
  const std::string* v = r.get(key);
  return v ? *v : "<missing>";
}

}  // namespace

TEST_CASE("parser examples") {
  Expr mono = parse_expr("y1^2*y2^-1", scope2());
  CHECK(to_sexpr(mono) == "(* (^2 y1) (^-1 y2))");
  CHECK(eval("y1^2*y2^-1").to_string() == "y1^2*y2^-1");

  Expr section = parse_expr("y2*d1 - k*T(y2)*y1^-1", scope2());
  CHECK(to_sexpr(section) == "(+ (* y2 d1) (neg (* k (T y2) (^-1 y1))))");

  Expr n0 = parse_expr("y1 .(0) d1", scope2());
  CHECK(n0.kind == Expr::Kind::NProduct);
  CHECK(n0.a == 0);
  CHECK(eval("y1 .(0) d1").to_string() == "-1");
  CHECK(eval("d1 .(0) y1").to_string() == "1");

  Expr g = parse_expr("3/2*w[1,2]", scope2());
  CHECK(to_sexpr(g) == "(* 3/2 w[1,2])");
}

TEST_CASE("products follow the right-nested convention") {
  CHECK(eval("y1*y2*d1").to_string() == "y1*y2*d1");
  CHECK(eval("(y1*y2)*d1").to_string() == "-T(y2) + y1*y2*d1");
  CHECK(eval("(y1*y2)*d1 + T(y2)").to_string() == eval("y1*(y2*d1)").to_string());
  CHECK(eval("T(y1*d1)").to_string() == "T(y1)*d1 + y1*T(d1)");
  CHECK(eval("d1 .(1) (y1*y2*d2)").to_string() == eval("0").to_string());
}

TEST_CASE("whitespace does not change the tree") {
  const char* pairs[][2] = {
      {"y1^2*y2^-1", "  y1 ^ 2 * y2 ^ -1 "},
      {"y2*d1-k*T(y2)*y1^-1", "y2 * d1\t-  k*T( y2 )*y1^-1"},
      {"y1.(0)d1", "y1 .( 0 ) d1"},
      {"w[1,2]+2*w[2,1]", "w[ 1 , 2 ] + 2 * w[2,1]"},
      {"(y1+y2)*d1", "( y1 + y2 )\n* d1"},
  };
  for (auto& p : pairs) CHECK(parse_expr(p[0], scope2()) == parse_expr(p[1], scope2()));
}

TEST_CASE("parse diagnostics carry positions and expectations") {
  Diagnostic unknown = diagnose("y1 + z3");
  CHECK(unknown.pos.line == 1);
  CHECK(unknown.pos.column == 6);
  CHECK(unknown.message.find("z3") != std::string::npos);

  Diagnostic unbalanced = diagnose("(y1 + y2");
  CHECK(unbalanced.pos.column == 9);
  CHECK(std::find(unbalanced.expected.begin(), unbalanced.expected.end(), "')'") != unbalanced.expected.end());

  Diagnostic exponent = diagnose("y1^x");
  CHECK(exponent.pos.column == 4);

  Diagnostic multi = diagnose("y1 +\n  y5");
  CHECK(multi.pos.line == 2);
  CHECK(multi.pos.column == 3);

  CHECK_THROWS_AS(parse_expr("y3", scope2()), ParseError);
  CHECK_THROWS_AS(eval("d1^2"), Error);
  CHECK_THROWS_AS(eval("y1/0"), Error);
}

TEST_CASE("report text round trip") {
  Report r;
  r.command = "quantize --N 2";
  r.status = "unique";
  r.exit_code = 0;
  r.set("charge", "3");
  r.set("note", "two\nlines with \\ backslash");
  r.seconds = 0.25;
  Report back = Report::from_text(r.to_text());
  CHECK(back.to_text() == r.to_text());
  CHECK(*back.get("note") == "two\nlines with \\ backslash");
  CHECK(*back.get("status") == "unique");

  auto doc = nlohmann::json::parse(r.to_machine());
  CHECK(doc["status"] == "unique");
  CHECK(doc["payload"]["charge"] == "3");
  CHECK(doc["seconds"] == 0.25);
}

TEST_CASE("command examples") {
  Report q = run("quantize --N 4");
  CHECK(q.status == "unique");
  CHECK(q.exit_code == 0);
  CHECK(value(q, "charge") == "5");
  CHECK(value(q, "levels") == "(-6, 4)");

  Report w = run("witness --n 3 --N 2");
  CHECK(w.status == "non-quantizable");
  CHECK(w.exit_code == 0);
  CHECK(value(w, "witness") == "y2*T(y3)");

  Report a = run("axioms --weight 2 --trials 200 --seed 7");
  CHECK(a.status == "pass");
  CHECK(value(a, "defects") == "0");

  Report c = run("classify --N 3 --degree-bound 6");
  CHECK(c.status == "pass");
  CHECK(value(c, "survivors") == "w[1,1]");

  CHECK(run("glue-check --omega w[1,2]").status == "pass");

  Report e = run("extend y2*d1 --omega k*w[1,1]");
  CHECK(e.status == "extends");
  CHECK(value(e, "alpha") == "-k*y1^-1*T(y2)");
  Report ob = run("extend y2*d1 --omega w[1,2]");
  CHECK(ob.status == "obstructed");
  CHECK(ob.exit_code == 1);

  Report m = run("morphism --images twisted");
  CHECK(m.status == "pass");
  CHECK(value(m, "k1") == "-1 - k");
  CHECK(value(m, "k2") == "-1 + k");
  CHECK(value(run("morphism --images twisted --param k=3"), "k2") == "2");
  CHECK(value(run("morphism --n 4"), "k1") == "-1");

  Report d = run("derivations --N 2 --degree 0");
  CHECK(d.status == "pass");
  CHECK(value(d, "dimension") == "4");

  CHECK(run("membership T(y1^3) --N 3").status == "member");
  Report nm = run("membership y2^2*T(y1) --N 3");
  CHECK(nm.status == "non-member");
  CHECK(nm.exit_code == 1);

  Report v = run("virasoro --n 2");
  CHECK(v.status == "pass");
  CHECK(value(v, "L(3)L") == "2");

  Report np = run("nprod (y1*d2).(1)(y2*d1)");
  CHECK(np.status == "pass");
  CHECK(value(np, "result") == "-1");
}

TEST_CASE("usage errors") {
  for (const char* line : {"bogus", "quantize --weight 2", "axioms --format machine", "nprod y1+", "quantize --N x",
                           "witness --n 3 --N 1", "extend y2*d1 --omega w[1,1] --chart U3", "virasoro --n 2 --bad"}) {
    CAPTURE(line);
    Report r = run(line);
    CHECK(r.exit_code == 2);
    CHECK(r.status == "usage-error");
    CHECK(r.get("error") != nullptr);
  }
  CHECK(run("").exit_code == 2);
  CHECK(run("").status == "help");
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("reports are reproducible") {
  const std::string line = "axioms --weight 2 --trials 60 --seed 11 --format machine";
  Report a = run(line), b = run(line);
  CHECK(a.to_machine() == b.to_machine());
  CHECK(run("quantize --N 3").to_text() == run("quantize --N 3").to_text());
  CHECK(run("axioms --trials 30 --seed 1").to_text() != run("axioms --trials 30 --seed 2").to_text());
}

TEST_CASE("configuration defaults and flag precedence") {
  Config cfg;
  cfg.merge_text("# defaults\nN = 3\ntrials=20\n\nseed = 5\n");
  CHECK(cfg.get("N") == std::optional<std::string>("3"));
  CHECK(value(run("quantize", cfg), "charge") == "4");
  CHECK(value(run("quantize --N 5", cfg), "charge") == "6");
  CHECK(value(run("axioms", cfg), "trials") == "20");

  CHECK_THROWS_AS(cfg.set("colour", "red"), Error);
  CHECK_THROWS(Config().merge_text("N 3"));

  const char* path = "valg_test_config.txt";
  {
    std::ofstream out(path);
    out << "classify-bound = 6\nN = 2\n";
  }
  Config file;
  file.load_file(path);
  CHECK(value(run("classify", file), "bound") == "6");
  std::remove(path);
  CHECK_THROWS_AS(Config().load_file("/nonexistent/valg.conf"), Error);
}
