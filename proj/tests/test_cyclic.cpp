#include <doctest.h>

#include <functional>

#include "carith/corpus.hpp"
#include "carith/format.hpp"
#include "carith/translator.hpp"

using namespace carith;

namespace {

CyclicPreproof P(const std::string& body) { return parse_cyclic_proof("(cyclic-proof " + body + ")"); }

CyclicPreproof corpus_proof(const std::string& file) {
  return parse_cyclic_proof(read_file(corpus_dir() + "/" + file));
}

/// For every bud: the path from the root to its companion, then once around the cycle.
std::vector<LassoBranch> bud_lassos(const CyclicPreproof& p) {
  std::map<std::string, ProofEdge> parent;
  for (const auto& [id, n] : p.nodes)
    for (std::size_t i = 0; i < n.children.size(); ++i)
      if (!n.children[i].bud) parent[n.children[i].id] = {id, i};
  auto path_to = [&](std::string id) {
    std::vector<ProofEdge> out;
    while (id != p.root) {
      out.insert(out.begin(), parent.at(id));
      id = parent.at(id).source;
    }
    return out;
  };
  std::vector<LassoBranch> out;
  for (const auto& [id, n] : p.nodes)
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (!n.children[i].bud) continue;
      const std::string& comp = n.children[i].id;
      auto to_comp = path_to(comp), to_bud = path_to(id);
      LassoBranch b;
      b.prefix = to_comp;
      b.cycle.assign(to_bud.begin() + static_cast<long>(to_comp.size()), to_bud.end());
      b.cycle.push_back({id, i});
      out.push_back(b);
    }
  return out;
}

const char* kLoop =
    "(root n0)"
    "(node n0 (seq () ((eq z z))) (rule sub ()) (children n1))"
    "(node n1 (seq () ((eq z z))) (rule sub ()) (children (bud n0)))";

}  // namespace

TEST_CASE("branch automaton of a single axiom") {
  auto p = P("(root n0) (node n0 (seq () ((eq z z))) (rule eq1) (children))");
  auto ba = branch_automaton(p);
  CHECK(ba.dba.num_states() == 2);
  CHECK(nba_empty(ba.dba.to_nba()).empty);
  CHECK(check(p).valid);
}

TEST_CASE("a cycle without progress") {
  auto p = P(kLoop);
  CHECK(check_local(p).empty());
  auto ba = branch_automaton(p);
  CHECK(ba.dba.num_states() == p.nodes.size() + 1);
  LassoBranch a{{}, {{"n0", 0}, {"n1", 0}}}, b{{{"n0", 0}}, {{"n1", 0}, {"n0", 0}}};
  for (const auto& l : {a, b}) {
    CHECK(is_branch(p, l));
    CHECK(dba_accepts_lasso(ba.dba, to_lasso_word(ba.edges, l)));
    CHECK_FALSE(oracle_trace_check(p, l));
  }
  CHECK_FALSE(is_branch(p, LassoBranch{{}, {{"n1", 0}}}));
  Verdict v = check(p);
  CHECK_FALSE(v.valid);
  REQUIRE(v.counterexample);
  CHECK(is_branch(p, *v.counterexample));
  auto ta = trace_automaton(p);
  CHECK_FALSE(nba_accepts_lasso(ta.nba, to_lasso_word(ta.edges, *v.counterexample)));
  CHECK(trace_successors(p, {"n0", 0}, Term::zero()) == std::vector<std::pair<Term, bool>>{{Term::zero(), false}});
}

TEST_CASE("precursors") {
  auto p = P("(root n0)"
             "(node n0 (seq () ((eq (s (v b)) (s (v b))))) (rule sub ((a (s (v b))))) (children n1))"
             "(node n1 (seq () ((eq (v a) (v a)))) (rule eq1) (children))");
  auto pre = precursors(p, {"n0", 0}, Term::succ(Term::var("b")));
  CHECK(std::find(pre.begin(), pre.end(), Term::var("a")) != pre.end());

  auto q = P("(root n0)"
             "(node n0 (seq ((eq (v u) (v t))) ((eq (v t) (v t)) (eq (v u) (v u)))) (rule wk) (children n1))"
             "(node n1 (seq ((eq (v u) (v t))) ((eq (v t) (v t)))) (rule eq1) (children))");
  auto pu = precursors(q, {"n0", 0}, Term::var("t"));
  CHECK(std::find(pu.begin(), pu.end(), Term::var("t")) != pu.end());
  CHECK(std::find(pu.begin(), pu.end(), Term::var("u")) != pu.end());
}

TEST_CASE("local errors") {
  auto r = check_local(corpus_proof("php-retarget.cyc"));
  REQUIRE_FALSE(r.empty());
  CHECK(std::any_of(r.begin(), r.end(), [](const LocalError& e) { return e.kind == LocalErrorKind::bud_mismatch; }));
  auto ind = check_local(to_cyclic(corpus::zero_add_induction()));
  CHECK(std::any_of(ind.begin(), ind.end(),
                    [](const LocalError& e) { return e.kind == LocalErrorKind::induction_forbidden; }));
}

TEST_CASE("the induction simulation progresses at the eigenvariable of its descent") {
  auto p = simulate_induction(induction_spec(corpus::zero_add_induction()));
  CHECK(check_local(p).empty());
  bool found = false;
  for (const auto& [id, n] : p.nodes) {
    if (n.rule.tag != RuleTag::bex_left) continue;
    Term a = Term::var(n.rule.eigen), b = n.rule.principal.bound();
    auto succ = trace_successors(p, {id, 0}, b);
    found = found || std::find(succ.begin(), succ.end(), std::make_pair(a, true)) != succ.end();
  }
  CHECK(found);
  for (const auto& l : bud_lassos(p)) CHECK(oracle_trace_check(p, l));
  CHECK(check(p).valid);
}

TEST_CASE("trace automaton and relation oracle agree on bud cycles") {
  for (const char* f : {"php.cyc", "php-broken.cyc", "sim-zero-add-broken.cyc", "sim-le-add-broken.cyc",
                        "tr-zero-add-broken.cyc", "tr-le-add-broken.cyc", "unsound.cyc"}) {
    CAPTURE(f);
    auto p = corpus_proof(f);
    auto ta = trace_automaton(p);
    auto ls = bud_lassos(p);
    CHECK_FALSE(ls.empty());
    for (const auto& l : ls) {
      REQUIRE(is_branch(p, l));
      CHECK(nba_accepts_lasso(ta.nba, to_lasso_word(ta.edges, l)) == oracle_trace_check(p, l));
    }
  }
}

TEST_CASE("corpus verdicts") {
  CHECK(check(corpus_proof("php.cyc")).valid);
  for (const char* f : {"php-broken.cyc", "unsound.cyc", "sim-le-add-broken.cyc"}) {
    CAPTURE(f);
    auto p = corpus_proof(f);
    Verdict v = check(p);
    CHECK_FALSE(v.valid);
    REQUIRE(v.counterexample);
    CHECK(is_branch(p, *v.counterexample));
    CHECK_FALSE(oracle_trace_check(p, *v.counterexample));
  }
}
