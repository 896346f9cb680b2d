// carith: command-line front end.
//
// Exit codes: 0 success or valid, 1 checked invalid (a certificate is printed), 2 input
// error, 3 internal invariant breach.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "carith/corpus.hpp"
#include "carith/format.hpp"
#include "carith/sexpr.hpp"
#include "carith/suites.hpp"
#include "carith/translator.hpp"

using namespace carith;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kInput = 2, kInvariant = 3 };

struct Options {
  RunConfig cfg;
  bool json = false;
  std::string output;
};

/// Line-oriented key: value report, or the same fields as one JSON object.
void emit(const Options& o, const Json& j) {
  if (o.json) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) {
    if (v.is_string()) {
      std::string s = v.get<std::string>();
      if (s.find('\n') != std::string::npos)
        std::cout << k << ":\n" << s << (s.ends_with("\n") ? "" : "\n");
      else
        std::cout << k << ": " << s << "\n";
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_string(); })) {
      std::cout << k << ":";
      for (const auto& x : v) std::cout << " " << x.get<std::string>();
      std::cout << "\n";
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) std::cout << k << "[" << i << "]: " << v[i].dump() << "\n";
    } else {
      std::cout << k << ": " << v.dump() << "\n";
    }
  }
}

/// Writes generated text to --output when given, else stdout.
void emit_text(const Options& o, const std::string& key, const std::string& text, Json j = Json::object()) {
  if (!o.output.empty()) {
    std::ofstream f(o.output);
    if (!f) throw InputError("cannot write " + o.output);
    f << text;
    j["output"] = o.output;
    emit(o, j);
    return;
  }
  if (o.json) {
    j[key] = text;
    emit(o, j);
  } else {
    std::cout << text;
  }
}

Json edges_json(const std::vector<ProofEdge>& es) {
  Json a = Json::array();
  for (const auto& e : es) a.push_back(to_string(e));
  return a;
}

std::string lasso_text(const LassoBranch& b) {
  std::string s;
  for (const auto& e : b.prefix) s += (s.empty() ? "" : " ") + to_string(e);
  s += ";";
  for (std::size_t i = 0; i < b.cycle.size(); ++i) s += (i ? " " : "") + to_string(b.cycle[i]);
  return s;
}

CyclicPreproof load_cyclic(const std::string& path) {
  ProofDocument d = parse_proof(read_file(path));
  if (auto* f = std::get_if<FiniteProof>(&d)) return to_cyclic(*f);
  return std::get<CyclicPreproof>(std::move(d));
}

Automaton load_automaton(const std::string& path) { return parse_automaton(read_file(path)); }

NBA as_nba(const Automaton& a) {
  if (auto* n = std::get_if<NBA>(&a)) return *n;
  if (auto* d = std::get_if<DBA>(&a)) return d->to_nba();
  throw InputError("expected a Buchi automaton, got a parity automaton");
}

/// A lasso given inline (u;v or (lasso ...)) or as a file containing one.
LassoWord load_lasso(const std::string& arg, const std::vector<std::string>& alphabet) {
  std::error_code ec;
  std::string text = std::filesystem::is_regular_file(arg, ec) ? read_file(arg) : arg;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  return parse_lasso(text, alphabet);
}

std::vector<std::string> edge_names(const std::vector<ProofEdge>& es) {
  std::vector<std::string> out;
  for (const auto& e : es) out.push_back(to_string(e));
  return out;
}

// ---------------------------------------------------------------- subcommands

int cmd_check(const Options& o, const std::string& path, const std::string& emit_dir) {
  ProofDocument d = parse_proof(read_file(path));
  Json j;
  j["file"] = path;
  if (auto* f = std::get_if<FiniteProof>(&d)) {
    ProofReport r = check_proof(*f);
    j["kind"] = "finite";
    j["verdict"] = r.ok ? "valid" : "invalid";
    j["conclusion"] = to_string(r.conclusion);
    Json errs = Json::array();
    for (const auto& e : r.errors) errs.push_back(e.node + ": " + e.message);
    j["errors"] = errs;
    emit(o, j);
    return r.ok ? kOk : kInvalid;
  }
  const auto& p = std::get<CyclicPreproof>(d);
  Verdict v = check(p);
  j["kind"] = "cyclic";
  j["verdict"] = v.valid ? "valid" : "invalid";
  j["conclusion"] = to_string(p.conclusion());
  j["nodes"] = p.nodes.size();
  j["buds"] = p.num_buds();
  j["bud-targets"] = p.bud_targets();
  Json errs = Json::array();
  for (const auto& e : v.local_errors) errs.push_back(e.node + ": " + to_string(e.kind) + ": " + e.message);
  j["local-errors"] = errs;
  j["branch-states"] = v.branch_states;
  j["trace-states"] = v.trace_states;
  j["explored"] = v.explored;
  if (v.counterexample) {
    j["counterexample"] = lasso_text(*v.counterexample);
    j["counterexample-prefix"] = edges_json(v.counterexample->prefix);
    j["counterexample-cycle"] = edges_json(v.counterexample->cycle);
  }
  if (!emit_dir.empty() && v.local_errors.empty()) {
    std::filesystem::create_directories(emit_dir);
    auto ba = branch_automaton(p);
    auto ta = trace_automaton(p);
    // Trace states are named after terms; plain names keep the file parseable.
    for (std::size_t i = 0; i < ta.nba.states.size(); ++i) ta.nba.states[i] = "t" + std::to_string(i);
    std::ofstream(emit_dir + "/branch.dba") << print_automaton(ba.dba);
    std::ofstream(emit_dir + "/trace.nba") << print_automaton(ta.nba);
    if (v.counterexample)
      std::ofstream(emit_dir + "/counterexample.lasso")
          << print_lasso(to_lasso_word(ba.edges, *v.counterexample), edge_names(ba.edges)) << "\n";
    j["automata"] = emit_dir;
  }
  emit(o, j);
  if (v.valid) return kOk;
  return kInvalid;
}

int cmd_oracle(const Options& o, const std::string& path, const std::string& lasso) {
  CyclicPreproof p = load_cyclic(path);
  auto edges = proof_edges(p);
  LassoBranch b = to_lasso_branch(edges, load_lasso(lasso, edge_names(edges)));
  Json j;
  bool branch = is_branch(p, b);
  j["branch"] = branch;
  bool progress = branch && oracle_trace_check(p, b);
  if (branch) j["progressing-trace"] = progress;
  j["certificate"] = branch && !progress ? "confirmed" : "refuted";
  emit(o, j);
  return branch && !progress ? kOk : kInvalid;
}

int cmd_translate(const Options& o, const std::string& path, bool broken) {
  FiniteProof p = parse_finite_proof(read_file(path));
  CyclicPreproof c = translate(p, o.cfg.level, GadgetOptions{broken});
  emit_text(o, "proof", print_proof(c));
  return kOk;
}

int cmd_dualize(const Options& o, const std::string& path) {
  emit_text(o, "proof", print_proof(dualize(load_cyclic(path), o.cfg.level)));
  return kOk;
}

int cmd_simulate(const Options& o, const std::string& path, bool broken) {
  FiniteProof p = parse_finite_proof(read_file(path));
  emit_text(o, "proof", print_proof(simulate_induction(induction_spec(p), GadgetOptions{broken})));
  return kOk;
}

int cmd_complement(const Options& o, const std::string& path) {
  Automaton a = load_automaton(path);
  NBA c;
  if (auto* d = std::get_if<DBA>(&a)) c = dba_complement(*d);
  else c = nba_complement(as_nba(a));
  emit_text(o, "automaton", print_automaton(c));
  return kOk;
}

int cmd_union(const Options& o, const std::string& p1, const std::string& p2) {
  emit_text(o, "automaton", print_automaton(nba_union(as_nba(load_automaton(p1)), as_nba(load_automaton(p2)))));
  return kOk;
}

int cmd_empty(const Options& o, const std::string& path) {
  NBA a = as_nba(load_automaton(path));
  auto r = nba_empty(a);
  Json j;
  j["empty"] = r.empty;
  if (r.witness) j["witness"] = print_lasso(*r.witness, a.alphabet);
  emit(o, j);
  return kOk;
}

int cmd_include(const Options& o, const std::string& p1, const std::string& p2) {
  Automaton a1 = load_automaton(p1);
  auto* d = std::get_if<DBA>(&a1);
  if (!d) throw InputError("the first automaton of include must be a dba");
  NBA a2 = as_nba(load_automaton(p2));
  auto r = includes(*d, a2);
  Json j;
  j["includes"] = r.holds;
  j["explored"] = r.explored;
  if (r.counterexample) j["counterexample"] = print_lasso(*r.counterexample, d->alphabet);
  emit(o, j);
  return r.holds ? kOk : kInvalid;
}

int cmd_factorize(const Options& o, const std::string& path, const std::string& lasso) {
  NBA a = as_nba(load_automaton(path));
  LassoWord w = load_lasso(lasso, a.alphabet);
  auto r = ramsey_factorize_lasso(a, w);
  Json j;
  j["k"] = r.k;
  j["i0"] = r.i0;
  j["stride"] = r.stride;
  j["beta"] = r.beta.to_string();
  j["gamma"] = r.gamma.to_string();
  j["rejecting"] = is_rejecting_pair(a, r.beta, r.gamma);
  j["accepts"] = nba_accepts_lasso(a, w);
  emit(o, j);
  return kOk;
}

int cmd_universal(const Options& o, const std::string& path) {
  Automaton a = load_automaton(path);
  auto* d = std::get_if<DRA>(&a);
  if (!d) throw InputError("universal expects a dra");
  Json j;
  j["universal"] = dra_universal(*d);
  emit(o, j);
  return kOk;
}

int cmd_accepts(const Options& o, const std::string& path, const std::string& lasso) {
  Automaton a = load_automaton(path);
  LassoWord w = load_lasso(lasso, alphabet_of(a));
  bool acc = std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, NBA>) return nba_accepts_lasso(x, w);
        else if constexpr (std::is_same_v<T, DBA>) return dba_accepts_lasso(x, w);
        else return dra_accepts_lasso(x, w);
      },
      a);
  Json j;
  j["accepts"] = acc;
  if (auto* n = std::get_if<NBA>(&a)) j["ar-acc"] = ar_acc_lasso(*n, w);
  emit(o, j);
  return kOk;
}

int cmd_branch(const Options& o, const std::string& path, const std::string& assign, const std::string& interp,
               std::size_t steps) {
  CyclicPreproof p = load_cyclic(path);
  Assignment rho = parse_assignment(std::filesystem::is_regular_file(assign) ? read_file(assign) : assign);
  Interpretation in = interp.empty() ? Interpretation{} : parse_interpretation(read_file(interp));
  Branch b;
  try {
    b = generate_branch(p, rho, in, steps, o.cfg.fuel);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  Json j;
  Json st = Json::array();
  for (const auto& s : b.steps) {
    Json x;
    x["node"] = s.node;
    x["assignment"] = to_string(s.rho);
    x["premiss"] = s.premiss;
    st.push_back(x);
  }
  j["steps"] = st;
  if (b.loop_start) {
    j["loop-start"] = *b.loop_start;
    j["lasso"] = lasso_text(branch_lasso(b));
  } else {
    j["stuck"] = b.stuck;
  }
  emit(o, j);
  return b.loop_start ? kInvalid : kOk;
}

int cmd_corpus(const Options& o, bool skip_suites) {
  const std::string dir = o.cfg.corpus.empty() ? corpus_dir() : o.cfg.corpus;
  Json j;
  Json items = Json::array();
  bool all = true;
  for (const auto& e : corpus_entries()) {
    Json x;
    x["name"] = e.name;
    x["kind"] = to_string(e.kind);
    bool valid = false;
    std::string text = read_file(dir + "/" + e.file);
    if (e.kind == CorpusKind::check) {
      valid = check(parse_cyclic_proof(text)).valid;
    } else {
      FiniteProof fp = parse_finite_proof(text);
      CyclicPreproof c = e.kind == CorpusKind::simulate ? simulate_induction(induction_spec(fp))
                                                        : translate(fp, e.level);
      valid = check(c).valid && !validate_translation(c, e.level);
    }
    x["valid"] = valid;
    x["expected"] = e.expect_valid;
    all = all && valid == e.expect_valid;
    items.push_back(x);
  }
  j["corpus"] = items;
  if (!skip_suites) {
    Json suites = Json::array();
    for (int id = 1; id <= kNumCriteria; ++id) {
      auto r = run_criterion(id, o.cfg);
      Json x;
      x["id"] = r.id;
      x["title"] = r.title;
      x["pass"] = r.pass;
      x["detail"] = r.detail;
      suites.push_back(x);
      all = all && r.pass;
    }
    j["suites"] = suites;
  }
  j["result"] = all ? "pass" : "fail";
  emit(o, j);
  return all ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checker and toolkit for cyclic proofs in arithmetic"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Emit a JSON document instead of key: value lines");
  app.add_option("-o,--output", o.output, "Write generated proofs or automata to this file");
  app.add_option("--fuel", o.cfg.fuel, "Search bound for unbounded quantifiers")->capture_default_str();
  app.add_option("--max-lasso-spoke", o.cfg.max_spoke, "Longest lasso prefix in suites")->capture_default_str();
  app.add_option("--max-lasso-loop", o.cfg.max_loop, "Longest lasso loop in suites")->capture_default_str();
  app.add_option("-j,--parallelism", o.cfg.parallelism, "Worker threads, 0 for all cores")->capture_default_str();
  app.add_option("--seed", o.cfg.seed, "Seed of the randomized suites")->capture_default_str();
  app.add_option("--corpus", o.cfg.corpus, "Corpus directory")->default_str(corpus_dir());

  std::string a1, a2, a3, interp, emit_dir;
  bool broken = false, skip_suites = false;
  std::size_t steps = 1000;
  std::function<int()> run;

  auto level = [&](CLI::App* c) {
    c->add_option("--level", o.cfg.level, "Hierarchy level n")->required();
  };
  auto* check_c = app.add_subcommand("check", "Check a proof and print the verdict");
  check_c->add_option("proof", a1)->required();
  check_c->add_option("--emit-automata", emit_dir, "Also write the branch and trace automata here");
  check_c->callback([&] { run = [&] { return cmd_check(o, a1, emit_dir); }; });

  auto* oracle_c = app.add_subcommand("oracle", "Confirm a counterexample lasso of proof edges");
  oracle_c->add_option("proof", a1)->required();
  oracle_c->add_option("lasso", a2)->required();
  oracle_c->callback([&] { run = [&] { return cmd_oracle(o, a1, a2); }; });

  auto* tr = app.add_subcommand("translate", "Translate an inductive proof into a cyclic one");
  tr->add_option("proof", a1)->required();
  tr->add_flag("--broken", broken, "Drop the descent in every induction cycle");
  level(tr);
  tr->callback([&] { run = [&] { return cmd_translate(o, a1, broken); }; });

  auto* du = app.add_subcommand("dualize", "Dualize every sequent of a cyclic proof");
  du->add_option("proof", a1)->required();
  level(du);
  du->callback([&] { run = [&] { return cmd_dualize(o, a1); }; });

  auto* si = app.add_subcommand("simulate-ind", "Simulate the induction step at the root of a proof");
  si->add_option("proof", a1)->required();
  si->add_flag("--broken", broken, "Drop the descent in the cycle");
  si->callback([&] { run = [&] { return cmd_simulate(o, a1, broken); }; });

  auto* co = app.add_subcommand("complement", "Complement a dba or nba");
  co->add_option("automaton", a1)->required();
  co->callback([&] { run = [&] { return cmd_complement(o, a1); }; });

  auto* un = app.add_subcommand("union", "Union of two Buchi automata");
  un->add_option("first", a1)->required();
  un->add_option("second", a2)->required();
  un->callback([&] { run = [&] { return cmd_union(o, a1, a2); }; });

  auto* em = app.add_subcommand("empty", "Emptiness with a witness lasso");
  em->add_option("automaton", a1)->required();
  em->callback([&] { run = [&] { return cmd_empty(o, a1); }; });

  auto* in = app.add_subcommand("include", "Inclusion of a dba in a Buchi automaton");
  in->add_option("dba", a1)->required();
  in->add_option("nba", a2)->required();
  in->callback([&] { run = [&] { return cmd_include(o, a1, a2); }; });

  auto* fa = app.add_subcommand("factorize", "Ramsey factorisation of a lasso");
  fa->add_option("automaton", a1)->required();
  fa->add_option("lasso", a2)->required();
  fa->callback([&] { run = [&] { return cmd_factorize(o, a1, a2); }; });

  auto* uv = app.add_subcommand("universal", "Universality of a parity automaton");
  uv->add_option("dra", a1)->required();
  uv->callback([&] { run = [&] { return cmd_universal(o, a1); }; });

  auto* ac = app.add_subcommand("accepts", "Membership of a lasso");
  ac->add_option("automaton", a1)->required();
  ac->add_option("lasso", a2)->required();
  ac->callback([&] { run = [&] { return cmd_accepts(o, a1, a2); }; });

  auto* br = app.add_subcommand("simulate-branch", "Follow falsified sequents from the root");
  br->add_option("proof", a1)->required();
  br->add_option("assignment", a2)->required();
  br->add_option("--interp", interp, "Interpretation of declared symbols");
  br->add_option("--steps", steps, "Step limit")->capture_default_str();
  br->callback([&] { run = [&] { return cmd_branch(o, a1, a2, interp, steps); }; });

  auto* cp = app.add_subcommand("corpus", "Bundled corpus");
  auto* cr = cp->add_subcommand("run", "Check every corpus item and run the property suites");
  cp->require_subcommand(1);
  cr->add_flag("--skip-suites", skip_suites, "Only check the corpus items");
  cr->callback([&] { run = [&] { return cmd_corpus(o, skip_suites); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  try {
    return run();
  } catch (const InvariantError& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return kInvariant;
  } catch (const TranslationError& e) {
    std::cerr << "error: " << e.code << (e.node.empty() ? "" : " at " + e.node) << ": " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariant;
  }
}
