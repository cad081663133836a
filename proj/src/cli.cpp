// Copyright 2026 The setsyl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "setsyl/setsyl.hpp"

namespace setsyl::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Script load_script(const std::string& path) { return parse_script(read_file(path)); }

Json pair_json(const Variable& a, const Variable& b) { return Json::array({a.name, b.name}); }

Json names_json(const std::vector<Variable>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(v.name);
  return out;
}

Json place_json(const NormalizedConjunction& nc, const Place& p) {
  Json out = Json::array();
  const auto& vars = nc.vars();
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (p[i]) out.push_back(vars[i].name);
  return out;
}

void print_model(std::ostream& out, const SetAssignment& m) {
  for (const auto& [v, s] : m) out << v.name << " = " << to_braces(s) << "\n";
}

void print_names(std::ostream& out, const std::vector<Variable>& vs) {
  out << "{";
  for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? ", " : "") << vs[i].name;
  out << "}";
}

bool term_is_set(const Term& t) {
  if (is_arith_op(t.op()) || is_list_op(t.op())) return false;
  return std::all_of(t.args().begin(), t.args().end(), term_is_set);
}

/// True when every atom is a set-theory atom, so the MLS solver applies directly.
bool set_only(const Formula& f) {
  if (f.kind() != FormulaKind::Atom)
    return std::all_of(f.children().begin(), f.children().end(), set_only);
  const Atom& a = f.as_atom();
  if (a.pred == Pred::Leq || a.pred == Pred::IsAtom) return false;
  return std::all_of(a.args.begin(), a.args.end(), term_is_set);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Json lits_json(const LiteralConjunction& lits) {
  Json out = Json::array();
  for (const auto& l : lits) out.push_back(print_literal(l));
  return out;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string file;
  bool json = false;
  bool witness = false;
  std::string plugins;
  std::uint64_t budget = SolveOptions{}.budget;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const Script script = load_script(a.file);
  const Formula f = script.conjunction();
  SolveOptions sopt;
  sopt.budget = a.budget;

  if (a.plugins.empty() && set_only(f)) {
    SolveResult r;
    NormalizedConjunction nc;
    std::uint64_t candidates = 0;
    for (const auto& conj : dnf_split(f)) {
      nc = normalize(conj);
      r = solve(nc, sopt);
      candidates += r.candidates;
      if (r.sat) break;
    }
    SetAssignment model;
    if (r.sat) {
      model = r.model.restricted_to(free_vars(f));
      if (!eval_formula(f, model)) throw InvariantViolation("solver model fails the input formula");
    }
    if (a.json) {
      Json j;
      j["status"] = r.sat ? "sat" : "unsat";
      j["engine"] = "mls";
      if (r.sat) j["model"] = model_json(model);
      j["propagated"] = Json::array();
      j["candidates"] = candidates;
      if (r.sat && a.witness) j["witness"] = witness_json(nc, r.witness);
      out << j.dump(2) << "\n";
      return kExitOk;
    }
    out << (r.sat ? "sat" : "unsat") << "\n";
    if (r.sat) print_model(out, model);
    if (r.sat && a.witness) out << witness_json(nc, r.witness).dump(2) << "\n";
    return kExitOk;
  }

  CombineOptions copt;
  copt.solver = sopt;
  if (!a.plugins.empty()) copt.plugins = split_list(a.plugins);
  const CombinedResult r = solve_combined(script, copt);
  Json propagated = Json::array();
  for (const auto& [x, y] : r.propagated) propagated.push_back(pair_json(x, y));
  if (a.json) {
    Json j;
    j["status"] = r.sat ? "sat" : "unsat";
    j["engine"] = "combined";
    if (!r.sat) j["culprit"] = r.culprit;
    j["propagated"] = propagated;
    j["rounds"] = r.rounds;
    j["shared"] = names_json(r.problem.shared);
    j["partitions"] = {{"mls", lits_json(r.problem.mls)},
                       {"lra", lits_json(r.problem.lra)},
                       {"list", lits_json(r.problem.list)}};
    if (r.sat) {
      j["model"] = model_json(r.mls_model);
      Json lra = Json::object();
      for (const auto& [v, q] : r.lra_point) lra[v] = to_string(q);
      j["lra"] = lra;
      Json list = Json::object();
      for (const auto& [v, rep] : r.list_classes) list[v] = rep;
      j["list"] = list;
    }
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << (r.sat ? "sat" : "unsat") << "\n";
  if (!r.sat) out << "culprit " << r.culprit << "\n";
  for (const auto& [x, y] : r.propagated) out << "propagated " << x.name << " = " << y.name << "\n";
  if (r.sat) {
    print_model(out, r.mls_model);
    for (const auto& [v, q] : r.lra_point) out << v << " = " << to_string(q) << "\n";
    for (const auto& [v, rep] : r.list_classes) out << v << " ~ " << rep << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// normalize

int cmd_normalize(const std::string& file, bool json, std::ostream& out) {
  const Script script = load_script(file);
  const auto ncs = normalize_formula(script.conjunction());
  if (json) {
    Json arr = Json::array();
    for (const auto& nc : ncs) {
      Json d;
      Json mem = Json::array();
      for (const auto& m : nc.memberships()) mem.push_back(pair_json(m.x, m.y));
      Json diff = Json::array();
      for (const auto& x : nc.differences()) diff.push_back(Json::array({x.x.name, x.y.name, x.z.name}));
      auto sz = normalized_size(nc);
      d["memberships"] = mem;
      d["differences"] = diff;
      d["nvars"] = sz.nvars;
      d["nlits"] = sz.nlits;
      arr.push_back(d);
    }
    out << Json{{"disjuncts", arr}}.dump(2) << "\n";
    return kExitOk;
  }
  for (std::size_t i = 0; i < ncs.size(); ++i) {
    if (i) out << "\n";
    out << "; disjunct " << i + 1 << "\n" << ncs[i].print();
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// oracle

int cmd_oracle(const std::string& file, std::optional<std::size_t> rank, bool json, std::uint64_t budget,
               std::ostream& out) {
  const Script script = load_script(file);
  OracleOptions opt;
  opt.budget = budget;
  if (rank) {
    opt.rank_bound = *rank;
  } else if (const auto* r = script.option("rank")) {
    opt.rank_bound = std::stoul(*r);
  }
  universe_size(opt.rank_bound);  // BoundTooLargeError above the cap
  const auto r = oracle_sat(script.conjunction(), opt);
  if (json) {
    Json j;
    j["status"] = r.sat ? "sat" : "no-model-within-bound";
    j["rank_bound"] = opt.rank_bound;
    if (r.sat) j["model"] = model_json(r.model);
    j["nodes"] = r.nodes;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  if (r.sat) {
    out << "sat\n";
    print_model(out, r.model);
  } else {
    out << "no-model-within-bound " << opt.rank_bound << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// witness

struct WitnessArgs {
  std::string file;
  std::string eq;
  std::string trace;
  std::string models;
  bool json = false;
  std::uint64_t budget = SolveOptions{}.budget;
};

int cmd_witness(const WitnessArgs& a, std::ostream& out) {
  auto pos = a.eq.find('=');
  if (pos == std::string::npos || pos == 0 || pos + 1 == a.eq.size())
    throw PreconditionError("--eq expects x=y, got " + a.eq);
  const Variable x(a.eq.substr(0, pos));
  const Variable y(a.eq.substr(pos + 1));
  const Script script = load_script(a.file);
  auto ncs = normalize_formula(script.conjunction());
  if (ncs.size() != 1) throw PreconditionError("witness needs a conjunction of literals");
  const NormalizedConjunction nc = pad_vars(ncs.front(), {{x, y}});
  SolveOptions sopt;
  sopt.budget = a.budget;

  SetAssignment M, Mbar;
  if (!a.models.empty()) {
    const Json j = Json::parse(read_file(a.models));
    M = model_from_json(j.at("M"));
    Mbar = model_from_json(j.at("Mbar"));
  } else {
    auto lits = nc.literals();
    lits.push_back(Literal{Atom::eq(Term::var(x), Term::var(y)), true});
    auto r = solve(normalize(lits), sopt);
    if (!r.sat) {
      out << (a.json ? Json{{"status", "no-model-with-equality"}}.dump(2) : "no-model-with-equality") << "\n";
      return kExitOk;
    }
    auto rb = solve(with_disequality(nc, x, y), sopt);
    if (!rb.sat) {
      out << (a.json ? Json{{"status", "implied"}}.dump(2) : "implied " + x.name + " = " + y.name) << "\n";
      return kExitOk;
    }
    M = r.model.restricted_to(nc.vars());
    Mbar = rb.model.restricted_to(nc.vars());
  }

  const auto res = enlarge(nc, M, Mbar, x, y);
  const auto lemmas = check_lemmas(res.trace, M, nc);
  const bool preserved = disequalities_preserved(nc.vars(), M, res.model);
  Json tj = trace_json(res.trace, res.model, lemmas);
  tj["disequalities_preserved"] = preserved;
  if (!a.trace.empty()) {
    std::ofstream f(a.trace);
    if (!f) throw PreconditionError("cannot write " + a.trace);
    f << tj.dump(2) << "\n";
  }
  if (a.json) {
    out << tj.dump(2) << "\n";
    return kExitOk;
  }
  const auto& tr = res.trace;
  out << "s = " << to_braces(tr.s) << "\n";
  out << "t = " << to_braces(tr.t) << "\n";
  out << "direction = " << tr.direction.name << "\n";
  for (std::size_t k = 0; k < tr.V.size(); ++k) {
    out << "V" << k << " = ";
    print_names(out, tr.V[k]);
    out << "\n";
  }
  for (std::size_t k = 0; k < tr.Ms.size(); ++k)
    for (const auto& v : tr.V[k]) out << "M" << k << " " << v.name << " = " << to_braces(tr.Ms[k].at(v)) << "\n";
  out << "stabilized_at = " << tr.stabilized_at << "\n";
  out << "model\n";
  print_model(out, res.model);
  out << "lemmas " << (lemmas.checks.size() - lemmas.failures().size()) << "/" << lemmas.checks.size()
      << " pass\n";
  for (const auto& c : lemmas.failures()) out << "  fail " << c.lemma << "[" << c.index << "] " << c.detail << "\n";
  out << "disequalities preserved: " << (preserved ? "yes" : "no") << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// fuzz-convexity

int cmd_fuzz(const FuzzConfig& cfg, bool json, std::ostream& out) {
  const auto rep = convexity_fuzz(cfg);
  if (json) {
    Json j;
    j["iterations"] = rep.iterations;
    j["skipped"] = rep.skipped;
    j["disjunction_implied"] = rep.disjunction_implied;
    j["single_implied"] = rep.single_implied;
    j["violations"] = rep.violations;
    j["reproducers"] = rep.reproducers;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "iterations " << rep.iterations << "\n"
      << "skipped " << rep.skipped << "\n"
      << "disjunction_implied " << rep.disjunction_implied << "\n"
      << "single_implied " << rep.single_implied << "\n"
      << "violations " << rep.violations << "\n";
  for (const auto& r : rep.reproducers) out << r;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// nonconvex-demo

int cmd_demo(const std::string& theory, std::size_t rank, bool json, std::ostream& out) {
  const auto rep = nonconvex_demo(theory, rank);
  if (json) {
    Json j;
    j["theory"] = rep.theory;
    j["phi"] = rep.phi;
    Json checks = Json::array();
    for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = checks;
    j["pass"] = rep.pass();
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "theory " << rep.theory << "\n" << "phi " << rep.phi << "\n";
  std::size_t refuted = 0, singles = 0;
  bool implied = false;
  for (const auto& c : rep.checks) {
    out << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
    if (c.name.rfind("refutes ", 0) == 0) {
      ++singles;
      refuted += c.pass;
    }
    if (c.name == "disjunction implied within bound") implied = c.pass;
  }
  out << "disjunction implied within bound: " << (implied ? "yes" : "no")
      << "; each single equality refutable: " << (refuted == singles ? "yes" : "no") << " (" << refuted << "/"
      << singles << ")\n";
  out << "result " << (rep.pass() ? "pass" : "fail") << "\n";
  return kExitOk;
}

Formula eq_formula(const std::string& a, const std::string& b) {
  return Formula::atom(Atom::eq(Term::var(a), Term::var(b)));
}

Formula empty_formula(const std::string& a) { return Formula::atom(Atom::eq(Term::var(a), Term::empty())); }

}  // namespace

// ---------------------------------------------------------------------------
// JSON helpers

Json model_json(const SetAssignment& m) {
  Json out = Json::object();
  for (const auto& [v, s] : m) out[v.name] = to_braces(s);
  return out;
}

SetAssignment model_from_json(const Json& j) {
  if (!j.is_object()) throw PreconditionError("model must be a JSON object of braces strings");
  SetAssignment m;
  for (const auto& [k, v] : j.items()) m.set(Variable(k), parse_braces(v.get<std::string>()));
  return m;
}

Json witness_json(const NormalizedConjunction& nc, const SolverWitness& w) {
  Json merge = Json::array();
  for (const auto& cls : w.merge) merge.push_back(names_json(cls));
  Json sigma = Json::object();
  for (std::size_t c = 0; c < w.merge.size(); ++c) sigma[w.merge[c].front().name] = place_json(nc, w.sigma[c]);
  Json junk = Json::array();
  for (const auto& j : w.junk) junk.push_back({{"place", place_json(nc, j.place)}, {"copy", j.copy}});
  Json topo = Json::array();
  for (std::size_t c : w.topo) topo.push_back(w.merge[c].front().name);
  return Json{{"merge", merge}, {"sigma", sigma}, {"junk", junk}, {"topo", topo}};
}

Json trace_json(const EnlargementTrace& tr, const SetAssignment& model, const LemmaReport& lemmas) {
  Json V = Json::array();
  for (const auto& vs : tr.V) V.push_back(names_json(vs));
  Json Ms = Json::array();
  for (const auto& m : tr.Ms) Ms.push_back(model_json(m));
  Json checks = Json::array();
  for (const auto& c : lemmas.checks)
    checks.push_back({{"lemma", c.lemma}, {"index", c.index}, {"pass", c.pass}, {"detail", c.detail}});
  Json j;
  j["s"] = to_braces(tr.s);
  j["t"] = to_braces(tr.t);
  j["direction"] = tr.direction.name;
  j["V"] = V;
  j["M"] = Ms;
  j["stabilized_at"] = tr.stabilized_at;
  j["model"] = model_json(model);
  j["lemmas"] = {{"pass", lemmas.all_pass()}, {"checks", checks}};
  return j;
}

// ---------------------------------------------------------------------------
// Non-convexity demonstrations

bool DemoReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const DemoCheck& c) { return c.pass; });
}

const std::vector<std::string>& demo_theories() {
  static const std::vector<std::string> names{"mlss", "mlsp", "mlsu", "mlsx", "mlsox"};
  return names;
}

DemoReport nonconvex_demo(const std::string& theory, std::size_t rank_bound) {
  DemoReport rep;
  rep.theory = theory;
  auto check = [&](std::string name, bool pass, std::string detail = {}) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  auto countermodel_detail = [](const SetAssignment& m, const std::vector<std::string>& show) {
    std::string d;
    for (const auto& v : show) {
      if (!m.contains(Variable(v))) continue;
      if (!d.empty()) d += ", ";
      d += v + " = " + to_braces(m.at(v));
    }
    return d;
  };

  if (theory == "mlsx" || theory == "mlsox") {
    // x ⊗ y = ∅ forces one factor to be empty, but neither in particular.
    const std::string op = theory == "mlsx" ? "cross" : "ucross";
    const Formula phi = parse_formula("(= (" + op + " x y) empty)");
    rep.phi = print_formula(phi);
    const std::vector<Formula> disjuncts{empty_formula("x"), empty_formula("y")};
    check("phi satisfiable within bound", oracle_sat(phi, rank_bound).sat);
    check("disjunction implied within bound", oracle_implies(phi, Formula::disjunction(disjuncts), rank_bound).implied);
    for (const auto& d : disjuncts) {
      auto r = oracle_implies(phi, d, rank_bound);
      bool ok = !r.implied && eval_formula(phi, r.countermodel) && !eval_formula(d, r.countermodel);
      check("refutes " + print_formula(d), ok, ok ? countermodel_detail(r.countermodel, {"x", "y"}) : "");
    }
    return rep;
  }

  Formula phi;
  std::optional<SetAssignment> reference;
  const HFSet e;
  const HFSet s1 = hf({e});
  const HFSet s2 = hf({s1});
  const HFSet pair = hf({e, s1});
  if (theory == "mlss") {
    phi = parse_formula("(and (= x (single y)) (= x' (single y')) (= xbar (union x x')))");
    reference = SetAssignment{{Variable("y"), e}, {Variable("y'"), s1}, {Variable("x"), s1},
                              {Variable("x'"), s2}, {Variable("xbar"), pair}};
  } else if (theory == "mlsp") {
    phi = parse_formula("(and (= x empty) (= y (pow x)) (= xbar (pow y)))");
  } else if (theory == "mlsu") {
    phi = parse_formula("(and (= x empty) (= (bigU y) x) (= (bigU xbar) y))");
    reference = SetAssignment{{Variable("x"), e}, {Variable("y"), s1}, {Variable("xbar"), pair}};
  } else {
    throw PreconditionError("unknown theory " + theory + "; expected mlss, mlsp, mlsu, mlsx or mlsox");
  }
  rep.phi = print_formula(phi);
  const Variable xbar("xbar");
  const std::size_t k = 2;

  check("phi satisfiable within bound", oracle_sat(phi, rank_bound).sat);
  if (reference) {
    bool ok = eval_formula(phi, *reference) && reference->at(xbar).size() == k;
    check("reference model satisfies phi with |xbar| = 2", ok, "xbar = " + to_braces(reference->at(xbar)));
  }
  if (theory == "mlsp") {
    std::size_t models = 0, matching = 0;
    OracleOptions opt;
    opt.rank_bound = rank_bound;
    oracle_all_models(phi, opt, [&](const SetAssignment& m) {
      ++models;
      matching += m.at(xbar) == pair;
    });
    check("every bounded model has xbar = " + to_braces(pair), models > 0 && matching == models,
          std::to_string(matching) + "/" + std::to_string(models) + " models");
  }
  const auto schema = nonconvexity_schema(phi, xbar, k);
  check("disjunction implied within bound", oracle_implies(schema.phi, schema.disjunction(), rank_bound).implied);
  std::vector<std::string> show{"xbar"};
  for (const auto& v : schema.elements) show.push_back(v.name);
  for (const auto& [a, b] : schema.candidates) {
    const Formula eq = eq_formula(a.name, b.name);
    auto r = oracle_implies(schema.phi, eq, rank_bound);
    bool ok = !r.implied && eval_formula(schema.phi, r.countermodel) && !eval_formula(eq, r.countermodel);
    check("refutes " + print_formula(eq), ok, ok ? countermodel_detail(r.countermodel, show) : "");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Dispatch

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision procedures for multi-level syllogistic set theory"};
  app.name("setsyl");
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Decide satisfiability and print a model");
  solve_cmd->add_option("file", solve_args.file, "Input script (.syl)")->required();
  solve_cmd->add_flag("--json", solve_args.json, "JSON output");
  solve_cmd->add_flag("--witness", solve_args.witness, "Dump the solver witness");
  solve_cmd->add_option("--plugins", solve_args.plugins, "Comma-separated plugins: mls,lra,list");
  solve_cmd->add_option("--budget", solve_args.budget, "Solver candidate budget")->check(CLI::PositiveNumber);

  std::string norm_file;
  bool norm_json = false;
  auto* norm_cmd = app.add_subcommand("normalize", "Print the normalized disjuncts");
  norm_cmd->add_option("file", norm_file, "Input script (.syl)")->required();
  norm_cmd->add_flag("--json", norm_json, "JSON output");

  std::string oracle_file;
  std::optional<std::size_t> oracle_rank;
  bool oracle_json = false;
  std::uint64_t oracle_budget = OracleOptions{}.budget;
  auto* oracle_cmd = app.add_subcommand("oracle", "Bounded brute-force model search");
  oracle_cmd->add_option("file", oracle_file, "Input script (.syl)")->required();
  oracle_cmd->add_option("--rank", oracle_rank, "Rank bound (at most 4)");
  oracle_cmd->add_flag("--json", oracle_json, "JSON output");
  oracle_cmd->add_option("--budget", oracle_budget, "Search node budget")->check(CLI::PositiveNumber);

  WitnessArgs wit;
  auto* wit_cmd = app.add_subcommand("witness", "Run the enlargement construction for one equality");
  wit_cmd->add_option("file", wit.file, "Normalized conjunction (.syl)")->required();
  wit_cmd->add_option("--eq", wit.eq, "Designated equality x=y")->required();
  wit_cmd->add_option("--trace", wit.trace, "Write the trace as JSON");
  wit_cmd->add_option("--models", wit.models, "JSON file with M and Mbar in braces notation");
  wit_cmd->add_flag("--json", wit.json, "JSON output");
  wit_cmd->add_option("--budget", wit.budget, "Solver candidate budget")->check(CLI::PositiveNumber);

  FuzzConfig fuzz;
  bool fuzz_json = false;
  std::string fuzz_dump;
  auto* fuzz_cmd = app.add_subcommand("fuzz-convexity", "Random convexity check against the oracle");
  fuzz_cmd->add_option("--vars", fuzz.vars, "Variables per instance (1..4)");
  fuzz_cmd->add_option("--lits", fuzz.lits, "Maximum literals per instance");
  fuzz_cmd->add_option("--iters", fuzz.iters, "Iterations");
  fuzz_cmd->add_option("--seed", fuzz.seed, "Seed");
  fuzz_cmd->add_option("--rank", fuzz.rank_bound, "Oracle rank bound (at most 3)");
  fuzz_cmd->add_option("--dump", fuzz_dump, "Directory for reproducers");
  fuzz_cmd->add_flag("--json", fuzz_json, "JSON output");

  std::string demo_theory;
  std::size_t demo_rank = 3;
  bool demo_json = false;
  auto* demo_cmd = app.add_subcommand("nonconvex-demo", "Bounded non-convexity check for a set extension");
  demo_cmd->add_option("--theory", demo_theory, "mlss, mlsp, mlsu, mlsx or mlsox")
      ->required()
      ->check(CLI::IsMember(demo_theories()));
  demo_cmd->add_option("--rank", demo_rank, "Oracle rank bound");
  demo_cmd->add_flag("--json", demo_json, "JSON output");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "setsyl: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, out);
    if (*norm_cmd) return cmd_normalize(norm_file, norm_json, out);
    if (*oracle_cmd) return cmd_oracle(oracle_file, oracle_rank, oracle_json, oracle_budget, out);
    if (*wit_cmd) return cmd_witness(wit, out);
    if (*fuzz_cmd) {
      fuzz.dump_dir = fuzz_dump;
      return cmd_fuzz(fuzz, fuzz_json, out);
    }
    if (*demo_cmd) return cmd_demo(demo_theory, demo_rank, demo_json, out);
  } catch (const InvariantViolation& e) {
    err << "setsyl: internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const ResourceLimitError& e) {
    err << "setsyl: " << e.what() << "\n";
    return kExitResource;
  } catch (const SearchSpaceTooLargeError& e) {
    err << "setsyl: " << e.what() << "\n";
    return kExitResource;
  } catch (const BoundTooLargeError& e) {
    err << "setsyl: " << e.what() << "\n";
    return kExitResource;
  } catch (const Error& e) {
    err << "setsyl: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "setsyl: bad JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "setsyl: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace setsyl::cli
