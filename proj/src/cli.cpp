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

#include "valg/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "valg/algebroid.hpp"
#include "valg/expr.hpp"
#include "valg/freefield.hpp"
#include "valg/geometry.hpp"
#include "valg/sampling.hpp"
#include "valg/veronese.hpp"

namespace valg {

namespace {

const std::set<std::string> kConfigKeys = {"N",     "n",      "weight", "trials", "seed", "degree-bound",
                                           "classify-bound", "chart", "format", "param", "timing"};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void Config::set(const std::string& key, const std::string& value) {
  if (!kConfigKeys.count(key)) fail(ErrorKind::Usage, "unknown configuration key '" + key + "'");
  values_[key] = value;
}

std::optional<std::string> Config::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void Config::merge_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string body = trim(line);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::Usage, "config line " + std::to_string(line_no) + ": expected key = value");
    set(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  }
}

void Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Usage, "cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  merge_text(buf.str());
}

std::string usage_text() {
  return "usage: valg <command> [flags] [expression]\n"
         "commands:\n"
         "  axioms       random vertex algebra axiom checks (--n --weight --trials --seed)\n"
         "  nprod        normal form of an expression, e.g. \"d1 .(0) (y1^2*d1)\" (--n --weight --chart)\n"
         "  quantize     charge k for the Veronese ring A_N (--N --degree-bound)\n"
         "  classify     admissible gluing forms for A_N (--N --degree-bound)\n"
         "  glue-check   conformal vector gluing for a form (--omega --weight)\n"
         "  extend       extend a section from U1 to the punctured plane (--omega --chart)\n"
         "  morphism     gl_n morphism check and levels (--n --images --param)\n"
         "  derivations  derivations of A_N in a degree (--N --n --degree --degree-bound)\n"
         "  witness      non-quantizability witness for n > 2 (--n --N)\n"
         "  membership   is a one-form in the image of forms on A_N (--N --n --degree)\n"
         "  virasoro     conformal vector relations (--n)\n"
         "common flags: --format text|machine, --timing, --config FILE, --param name[=value]\n"
         "exit codes: 0 pass, 1 fail or mismatch, 2 usage error\n";
}

namespace {

struct Options {
  std::string command;
  std::vector<std::string> positional;
  std::optional<int> N, n, weight, trials, degree, degree_bound;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> chart, omega, format, images, config;
  std::vector<std::string> params;
  bool timing = false;
};

const std::map<std::string, std::set<std::string>> kAllowed = {
    {"axioms", {"--n", "--weight", "--trials", "--seed"}},
    {"nprod", {"--n", "--weight", "--chart", "--param", "expr"}},
    {"quantize", {"--N", "--n", "--degree-bound"}},
    {"classify", {"--N", "--n", "--degree-bound"}},
    {"glue-check", {"--omega", "--weight", "--param"}},
    {"extend", {"--omega", "--chart", "--param", "expr"}},
    {"morphism", {"--n", "--images", "--param"}},
    {"derivations", {"--N", "--n", "--degree", "--degree-bound"}},
    {"witness", {"--n", "--N", "--degree-bound"}},
    {"membership", {"--N", "--n", "--degree", "--degree-bound", "--param", "expr"}},
    {"virasoro", {"--n"}},
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flag value, then config, then the built-in default.
class Settings {
 public:
  Settings(const Options& opt, const Config& cfg) : opt_(opt), cfg_(cfg) {}

  int integer(const std::optional<int>& flag, const char* key, int fallback) const {
    if (flag) return *flag;
    if (auto v = cfg_.get(key)) return parse_int(*v, key);
    return fallback;
  }
  std::optional<std::uint64_t> seed() const {
    if (opt_.seed) return opt_.seed;
    if (auto v = cfg_.get("seed")) return static_cast<std::uint64_t>(parse_int(*v, "seed"));
    return std::nullopt;
  }
  std::string text(const std::optional<std::string>& flag, const char* key, const std::string& fallback) const {
    if (flag) return *flag;
    if (auto v = cfg_.get(key)) return *v;
    return fallback;
  }
  std::vector<std::string> params() const {
    std::vector<std::string> out;
    if (auto v = cfg_.get("param")) {
      std::stringstream ss(*v);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(trim(item));
    }
    out.insert(out.end(), opt_.params.begin(), opt_.params.end());
    return out;
  }

 private:
  static int parse_int(const std::string& s, const char* key) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("config value for '") + key + "' is not an integer: " + s);
  }

  const Options& opt_;
  const Config& cfg_;
};

struct Bindings {
  Scope scope;
  std::map<std::string, ParamScalar> values;
};

Bindings bindings(const Settings& s, std::size_t nvars) {
  Bindings b;
  b.scope.nvars = nvars;
  b.scope.params = {"k"};
  std::vector<std::pair<std::string, std::string>> given;
  for (const auto& p : s.params()) {
    auto eq = p.find('=');
    std::string name = trim(p.substr(0, eq));
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
      throw UsageError("bad parameter name in --param " + p);
    if (!b.scope.declares(name)) b.scope.params.push_back(name);
    ParamRegistry::global().declare(name);
    if (eq != std::string::npos) given.emplace_back(name, p.substr(eq + 1));
  }
  for (const auto& [name, text] : given) {
    Evaluator ev(nvars, WeightBound{1});
    Value v = ev.eval(parse_expr(text, b.scope));
    if (v.kind != Value::Kind::Scalar) throw UsageError("--param " + name + " must be a scalar");
    b.values[name] = v.scalar;
  }
  return b;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string gluing_keys(const std::vector<GluingForm::Key>& keys) {
  std::vector<std::string> parts;
  for (const auto& [a, b] : keys) parts.push_back("w[" + std::to_string(a) + "," + std::to_string(b) + "]");
  return parts.empty() ? "none" : join(parts);
}

std::string flag(bool b) { return b ? "true" : "false"; }

void verdict(Report& r, bool ok) {
  r.status = ok ? "pass" : "fail";
  r.exit_code = ok ? 0 : 1;
}

const std::string& single_expression(const Options& opt) {
  if (opt.positional.size() != 1) throw UsageError(opt.command + " takes exactly one expression argument");
  return opt.positional.front();
}

// Commands -----------------------------------------------------------------

void cmd_axioms(const Settings& s, const Options& opt, Report& r) {
  int nvars = s.integer(opt.n, "n", 2);
  int weight = s.integer(opt.weight, "weight", 2);
  int trials = s.integer(opt.trials, "trials", 200);
  auto seed = s.seed();
  if (!seed && r.format == "machine") throw UsageError("randomized suites need --seed in machine format");
  if (nvars < 1 || weight < 0 || weight > 3 || trials < 0)
    throw UsageError("axioms needs --n >= 1, 0 <= --weight <= 3 and --trials >= 0");
  Rng rng(seed.value_or(0));
  FreeFieldEngine engine(static_cast<std::size_t>(nvars), WeightBound{3 * weight + 2});
  SampleShape shape;
  shape.min_exponent = -1;
  shape.max_exponent = 1;
  const Axiom order[] = {Axiom::Jacobi, Axiom::Skew, Axiom::Translation, Axiom::QuasiAssociativity, Axiom::Vacuum};
  std::map<std::string, std::pair<int, int>> tally;  // checked, failed
  std::string first_failure;
  int defects = 0;
  std::uniform_int_distribution<int> wt(0, weight), mode(-1, 1);
  for (int t = 0; t < trials; ++t) {
    Axiom ax = order[t % 5];
    AxiomInstance inst;
    std::size_t nv = static_cast<std::size_t>(nvars);
    inst.a = random_field_element(nv, wt(rng), rng, shape);
    inst.b = random_field_element(nv, wt(rng), rng, shape);
    inst.c = random_field_element(nv, wt(rng), rng, shape);
    inst.m = mode(rng);
    inst.n = mode(rng);
    FreeFieldElement d = axiom_defect(engine, ax, inst);
    auto& [checked, failed] = tally[to_string(ax)];
    ++checked;
    if (!d.is_zero()) {
      ++failed;
      ++defects;
      if (first_failure.empty())
        first_failure = std::string(to_string(ax)) + " a=" + inst.a.to_string() + " b=" + inst.b.to_string() +
                        " c=" + inst.c.to_string() + " m=" + std::to_string(inst.m) +
                        " n=" + std::to_string(inst.n) + " defect=" + d.to_string();
    }
  }
  r.set("n", std::to_string(nvars));
  r.set("weight", std::to_string(weight));
  r.set("trials", std::to_string(trials));
  r.set("seed", seed ? std::to_string(*seed) : "0 (default)");
  for (const auto& [name, counts] : tally)
    r.set("checked[" + name + "]", std::to_string(counts.first) + " (" + std::to_string(counts.second) + " failed)");
  r.set("defects", std::to_string(defects));
  if (!first_failure.empty()) r.set("first_failure", first_failure);
  verdict(r, defects == 0);
}

void cmd_nprod(const Settings& s, const Options& opt, Report& r) {
  int nvars = s.integer(opt.n, "n", 2);
  int weight = s.integer(opt.weight, "weight", 3);
  if (nvars < 1) throw UsageError("--n must be positive");
  Chart chart = parse_chart(s.text(opt.chart, "chart", "A"));
  Bindings b = bindings(s, static_cast<std::size_t>(nvars));
  Expr e = parse_expr(single_expression(opt), b.scope);
  Evaluator ev(static_cast<std::size_t>(nvars), WeightBound{weight}, b.values);
  Value v = ev.eval(e);
  r.set("expression", to_sexpr(e));
  r.set("result", v.to_string());
  bool ok = true;
  if (v.kind == Value::Kind::Field && v.field.weight() == 1) r.set("section", ev.as_weight_one(v, chart).to_string());
  if (e.kind == Expr::Kind::NProduct && (e.a == 0 || e.a == 1)) {
    Value x = ev.eval(e.args[0]), y = ev.eval(e.args[1]);
    auto wx = ev.as_field(x).weight(), wy = ev.as_field(y).weight();
    if (wx == 1 && wy == 1) {
      VProduct closed = vprod(ev.as_weight_one(x, chart), e.a, ev.as_weight_one(y, chart));
      VProduct fock = e.a == 0 ? VProduct(ev.as_weight_one(v, chart)) : VProduct(ev.as_function(v));
      ok = closed == fock;
      r.set("closed_form", to_string(closed));
      r.set("oracle", ok ? "agree" : "disagree");
    }
  }
  verdict(r, ok);
}

void cmd_quantize(const Settings& s, const Options& opt, Report& r) {
  int N = s.integer(opt.N, "N", 2);
  int n = s.integer(opt.n, "n", 2);
  if (n != 2) throw UsageError("quantize works on the plane model: --n must be 2");
  VeroneseModel model = build_model(n, N, s.integer(opt.degree_bound, "degree-bound", -1));
  ChargeResult res = solve_charge(model, s.integer(std::nullopt, "classify-bound", 4));
  r.set("N", std::to_string(N));
  r.set("survivors", gluing_keys(res.classification.survivors));
  if (res.charge) r.set("charge", rational_to_string(*res.charge));
  r.set("admissible", res.admissible.is_zero() ? "0" : res.admissible.to_string());
  for (const auto& inst : res.instances) {
    std::string tag = std::string("[") + to_string(inst.pair) + ";r=" + std::to_string(inst.r) + "]";
    r.set("defect" + tag, inst.defect.to_string());
    std::string sol = inst.solution.status == LinearSolution::Status::Unique
                          ? "k = " + inst.solution.assignment.begin()->second.to_string()
                          : to_string(inst.solution.status);
    r.set("condition" + tag, sol);
  }
  if (res.charge) {
    QuantizedGl2 q = quantized_gl2(model, ParamScalar(*res.charge));
    std::vector<std::string> lv;
    for (const auto& [id, value] : q.report.levels) lv.push_back(value.to_string());
    r.set("levels", "(" + join(lv) + ")");
  }
  r.status = to_string(res.status);
  r.exit_code = res.status == ChargeResult::Status::NoSolution ? 1 : 0;
}

void cmd_classify(const Settings& s, const Options& opt, Report& r) {
  int N = s.integer(opt.N, "N", 2);
  int n = s.integer(opt.n, "n", 2);
  if (n != 2) throw UsageError("classify works on the plane model: --n must be 2");
  int bound = opt.degree_bound ? *opt.degree_bound : s.integer(std::nullopt, "classify-bound", 4);
  AdmissibleResult res = classify_admissible(build_model(n, N), bound);
  r.set("N", std::to_string(N));
  r.set("bound", std::to_string(bound));
  r.set("candidates", gluing_keys(res.candidates));
  r.set("survivors", gluing_keys(res.survivors));
  verdict(r, res.survivors == std::vector<GluingForm::Key>{{1, 1}});
}

GluingForm omega_of(const Settings& s, const Options& opt, const Bindings& b, bool required) {
  std::string text = s.text(opt.omega, "omega", "");
  if (text.empty()) {
    if (required) throw UsageError(opt.command + " needs --omega");
    return GluingForm();
  }
  Evaluator ev(2, WeightBound{1}, b.values);
  return ev.as_gluing(ev.eval(parse_expr(text, b.scope)));
}

void cmd_glue_check(const Settings& s, const Options& opt, Report& r) {
  Bindings b = bindings(s, 2);
  GluingForm omega = omega_of(s, opt, b, true);
  int weight = s.integer(opt.weight, "weight", 3);
  FreeFieldElement d = conformal_glue_defect(omega, WeightBound{weight});
  r.set("omega", omega.is_zero() ? "0" : omega.to_string());
  r.set("defect", d.is_zero() ? "0" : d.to_string());
  verdict(r, d.is_zero());
}

void cmd_extend(const Settings& s, const Options& opt, Report& r) {
  Bindings b = bindings(s, 2);
  GluingForm omega = omega_of(s, opt, b, false);
  Chart chart = parse_chart(s.text(opt.chart, "chart", "U1"));
  Evaluator ev(2, WeightBound{2}, b.values);
  WeightOneElement v = ev.as_weight_one(ev.eval(parse_expr(single_expression(opt), b.scope)), chart);
  auto ext = extend_section(v, omega);
  r.set("section", v.to_string());
  r.set("omega", omega.is_zero() ? "0" : omega.to_string());
  if (ext) {
    r.set("alpha", ext->alpha.is_zero() ? "0" : WeightOneElement::form(chart, ext->alpha).to_string());
    r.set("on_U1", ext->on_u1.to_string());
    r.set("on_U2", ext->on_u2.to_string());
  }
  r.status = ext ? "extends" : "obstructed";
  r.exit_code = ext ? 0 : 1;
}

void cmd_morphism(const Settings& s, const Options& opt, Report& r) {
  int n = s.integer(opt.n, "n", 2);
  if (n < 1) throw UsageError("--n must be positive");
  std::string images = opt.images.value_or("tautological");
  std::vector<WeightOneElement> rho;
  if (images == "tautological") {
    rho = gl_tautological(static_cast<std::size_t>(n));
  } else if (images == "twisted") {
    if (n != 2) throw UsageError("twisted images exist for gl_2 only");
    Bindings b = bindings(s, 2);
    auto it = b.values.find("k");
    rho = gl2_twisted(it != b.values.end() ? it->second : ParamScalar::param("k"));
  } else {
    throw UsageError("--images must be tautological or twisted");
  }
  MorphismReport rep = morphism_check(gl_data(static_cast<std::size_t>(n)), rho);
  r.set("n", std::to_string(n));
  r.set("images", images);
  for (std::size_t i = 0; i < rho.size(); ++i) r.set("rho[" + std::to_string(i) + "]", rho[i].to_string());
  for (const auto& [id, value] : rep.levels) r.set(ParamRegistry::global().name(id), value.to_string());
  r.set("failures", std::to_string(rep.failures.size()));
  if (!rep.failures.empty()) {
    const auto& f = rep.failures.front();
    r.set("first_failure", "a=" + std::to_string(f.a) + " b=" + std::to_string(f.b) + " n=" + std::to_string(f.n) +
                               " defect=" + f.defect);
  }
  verdict(r, rep.pass);
}

void cmd_derivations(const Settings& s, const Options& opt, Report& r) {
  int N = s.integer(opt.N, "N", 2);
  int n = s.integer(opt.n, "n", 2);
  int d = opt.degree.value_or(0);
  VeroneseModel model = build_model(n, N, s.integer(opt.degree_bound, "degree-bound", -1));
  DerivationResult res = derivations(model, d);
  r.set("N", std::to_string(N));
  r.set("n", std::to_string(n));
  r.set("degree", std::to_string(d));
  r.set("dimension", std::to_string(res.dimension()));
  r.set("generated_rank", std::to_string(res.generated_rank));
  r.set("generated", flag(res.generated));
  if (d == 0) r.set("euler_in_span", flag(res.euler_in_span));
  for (std::size_t i = 0; i < res.basis.size(); ++i) {
    std::vector<std::string> parts;
    for (std::size_t j = 0; j < res.basis[i].size(); ++j) {
      const Laurent& f = res.basis[i][j];
      if (!f.is_zero()) parts.push_back("x" + std::to_string(j) + " -> " + f.to_string());
    }
    r.set("tau[" + std::to_string(i) + "]", join(parts, "; "));
  }
  verdict(r, res.generated && (d != 0 || res.euler_in_span));
}

void cmd_witness(const Settings& s, const Options& opt, Report& r) {
  int n = s.integer(opt.n, "n", 3);
  int N = s.integer(opt.N, "N", 2);
  VeroneseModel model = build_model(n, N, s.integer(opt.degree_bound, "degree-bound", -1));
  WitnessResult w = higher_witness(model);
  r.set("n", std::to_string(n));
  r.set("N", std::to_string(N));
  r.set("witness", w.witness.to_string());
  r.set("display", w.display.to_string());
  r.set("matches_display", flag(w.matches_display));
  r.set("closed", flag(w.closed));
  r.set("member", flag(w.member));
  auto zn = zn_weight(w.witness.form_part(), N);
  r.set("zn_weight", zn ? std::to_string(*zn) : "mixed");
  if (w.matches_display) {
    r.status = w.verdict;
    r.exit_code = 0;
  } else {
    verdict(r, false);
  }
}

void cmd_membership(const Settings& s, const Options& opt, Report& r) {
  int N = s.integer(opt.N, "N", 2);
  int n = s.integer(opt.n, "n", 2);
  VeroneseModel model = build_model(n, N, s.integer(opt.degree_bound, "degree-bound", -1));
  Bindings b = bindings(s, static_cast<std::size_t>(n));
  Evaluator ev(static_cast<std::size_t>(n), WeightBound{2}, b.values);
  WeightOneElement v = ev.as_weight_one(ev.eval(parse_expr(single_expression(opt), b.scope)), Chart::Affine);
  if (!v.is_form()) throw UsageError("membership needs a one-form, got " + v.to_string());
  int degree = 0;
  if (opt.degree) {
    degree = *opt.degree;
  } else {
    for (std::size_t j = 0; j < v.form_part().nvars(); ++j)
      if (!v.form_part()[j].is_zero()) {
        degree = total_degree(v.form_part()[j].terms().begin()->first) + 1;
        break;
      }
  }
  auto conditions = membership_conditions(v.form_part(), model, degree);
  std::vector<std::string> parts;
  for (const auto& c : conditions) parts.push_back(c.to_string() + " = 0");
  r.set("form", v.to_string());
  r.set("N", std::to_string(N));
  r.set("degree", std::to_string(degree));
  r.set("conditions", parts.empty() ? "none" : join(parts));
  r.status = conditions.empty() ? "member" : "non-member";
  r.exit_code = conditions.empty() ? 0 : 1;
}

void cmd_virasoro(const Settings& s, const Options& opt, Report& r) {
  int n = s.integer(opt.n, "n", 1);
  if (n < 1) throw UsageError("--n must be positive");
  std::size_t nv = static_cast<std::size_t>(n);
  FreeFieldEngine engine(nv, WeightBound{4});
  FreeFieldElement L = virasoro(engine);
  const FreeFieldElement expected[] = {engine.translate(L), ParamScalar(2L) * L, FreeFieldElement(nv),
                                       ParamScalar(static_cast<long>(n)) * FreeFieldElement::vacuum(nv)};
  bool ok = true;
  r.set("n", std::to_string(n));
  r.set("L", L.to_string());
  r.set("central_charge", std::to_string(2 * n));
  for (int j = 0; j < 4; ++j) {
    FreeFieldElement p = engine.nproduct(L, j, L);
    bool match = p == expected[j];
    ok &= match;
    r.set("L(" + std::to_string(j) + ")L", (p.is_zero() ? std::string("0") : p.to_string()) + (match ? "" : " (mismatch)"));
  }
  verdict(r, ok);
}

using Handler = void (*)(const Settings&, const Options&, Report&);

const std::map<std::string, Handler> kHandlers = {
    {"axioms", cmd_axioms},         {"nprod", cmd_nprod},         {"quantize", cmd_quantize},
    {"classify", cmd_classify},     {"glue-check", cmd_glue_check}, {"extend", cmd_extend},
    {"morphism", cmd_morphism},     {"derivations", cmd_derivations}, {"witness", cmd_witness},
    {"membership", cmd_membership}, {"virasoro", cmd_virasoro},
};

void usage_report(Report& r, const std::string& message) {
  r.status = "usage-error";
  r.exit_code = 2;
  r.payload.clear();
  r.set("error", message);
}

}  // namespace

Report run_command(const std::vector<std::string>& args, const Config& config) {
  Report r;
  r.command = join(args, " ");
  Options opt;
  CLI::App app("valg");
  app.set_help_flag();
  app.allow_extras(false);
  app.add_option("command", opt.command);
  app.add_option("expr", opt.positional);
  app.add_option("--N", opt.N);
  app.add_option("--n", opt.n);
  app.add_option("--weight", opt.weight);
  app.add_option("--trials", opt.trials);
  app.add_option("--seed", opt.seed);
  app.add_option("--degree", opt.degree);
  app.add_option("--degree-bound", opt.degree_bound);
  app.add_option("--chart", opt.chart);
  app.add_option("--omega", opt.omega);
  app.add_option("--format", opt.format);
  app.add_option("--images", opt.images);
  app.add_option("--config", opt.config);
  app.add_option("--param", opt.params)->allow_extra_args(false);
  app.add_flag("--timing", opt.timing);
  bool help = false;
  app.add_flag("--help,-h", help);

  auto start = std::chrono::steady_clock::now();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      throw UsageError(e.what());
    }
    Config cfg = config;
    if (opt.config) cfg.load_file(*opt.config);
    Settings settings(opt, cfg);
    r.format = settings.text(opt.format, "format", "text");
    if (r.format != "text" && r.format != "machine") throw UsageError("--format must be text or machine");
    bool timing = opt.timing || settings.text(std::nullopt, "timing", "false") == "true";
    if (help || opt.command.empty() || opt.command == "help") {
      r.status = "help";
      r.exit_code = help || opt.command == "help" ? 0 : 2;
      r.set("usage", usage_text());
      return r;
    }
    auto handler = kHandlers.find(opt.command);
    if (handler == kHandlers.end()) throw UsageError("unknown command '" + opt.command + "'");
    const auto& allowed = kAllowed.at(opt.command);
    for (const auto* o : app.get_options()) {
      if (o->count() == 0) continue;
      std::string name = o->get_name();
      if (name == "command" || name == "--format" || name == "--timing" || name == "--config") continue;
      if (!allowed.count(name))
        throw UsageError((name == "expr" ? std::string("an expression argument") : "flag " + name) +
                         " is not valid for " + opt.command);
    }
    handler->second(settings, opt, r);
    if (timing)
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  } catch (const UsageError& e) {
    usage_report(r, e.what());
  } catch (const ParseError& e) {
    usage_report(r, e.what());
    r.set("line", std::to_string(e.diagnostic().pos.line));
    r.set("column", std::to_string(e.diagnostic().pos.column));
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::Usage:
      case ErrorKind::Precondition:
      case ErrorKind::UnknownIdentifier:
      case ErrorKind::UnknownParameter:
      case ErrorKind::Parse:
        usage_report(r, e.what());
        break;
      default:
        r.status = "error";
        r.exit_code = 1;
        r.set("error_kind", to_string(e.kind()));
        r.set("error", e.what());
    }
  } catch (const std::exception& e) {
    r.status = "error";
    r.exit_code = 1;
    r.set("error", e.what());
  }
  return r;
}

}  // namespace valg
