#include <doctest.h>

#include "carith/corpus.hpp"
#include "carith/format.hpp"
#include "carith/translator.hpp"

using namespace carith;

namespace {

bool all_in(const CyclicPreproof& p, unsigned n) {
  for (const auto& [id, node] : p.nodes)
    for (const auto* side : {&node.sequent.ant, &node.sequent.suc})
      for (const auto& f : *side)
        if (!is_in_level(f, HierarchyLevel::sigma(n))) return false;
  return true;
}

FiniteProof F(const std::string& body) { return parse_finite_proof("(finite-proof " + body + ")"); }

}  // namespace

TEST_CASE("simulated induction") {
  for (auto [fp, n] : {std::pair{corpus::zero_add_induction(), 0u}, std::pair{corpus::le_add_induction(), 1u}}) {
    InductionSpec s = induction_spec(fp);
    CyclicPreproof p = simulate_induction(s);
    CHECK(p.conclusion() == fp.conclusion());
    CHECK(check(p).valid);
    CHECK(all_in(p, n));
    CHECK(p.num_buds() == 1);
    Verdict broken = check(simulate_induction(s, GadgetOptions{true}));
    CHECK_FALSE(broken.valid);
    CHECK(broken.counterexample);
  }
}

TEST_CASE("translation of closed inductive proofs") {
  for (auto [fp, n] : {std::pair{corpus::zero_add_closed(), 0u}, std::pair{corpus::le_add_closed(), 1u}}) {
    CHECK(check_proof(fp).ok);
    CyclicPreproof p = translate(fp, n);
    CHECK(p.conclusion() == fp.conclusion());
    CHECK_FALSE(validate_translation(p, n));
    Verdict v = check(p);
    CHECK(v.valid);
    CHECK_FALSE(check(translate(fp, n, GadgetOptions{true})).valid);
    // No free variable of the conclusion is rebound inside.
    for (const auto& [node, x] : bound_variables(p)) CHECK_FALSE(fp.conclusion().has_free_var(x));
  }
}

TEST_CASE("lifting a proof without induction or unbounded quantifiers") {
  FiniteProof fp = F("(root n0) (node n0 (seq () ((eq (+ (v x) z) (v x)))) (rule q-axiom 4) (children))");
  REQUIRE(check_proof(fp).ok);
  LiftResult r = lift(fp, 0);
  CHECK(r.assumptions.empty());
  CHECK(r.derivation.nodes.size() == 1);
  CHECK(r.derivation.conclusion() == fp.conclusion());
}

TEST_CASE("a cut above the fragment is rejected") {
  FiniteProof fp = F("(root n0)"
                     "(node n0 (seq () ((eq z z))) (rule cut (ex x (all y (eq (v x) (v y))))) (children n1 n2))"
                     "(node n1 (seq () ((eq z z) (ex x (all y (eq (v x) (v y)))))) (rule eq1) (children))"
                     "(node n2 (seq ((ex x (all y (eq (v x) (v y))))) ((eq z z))) (rule eq1) (children))");
  REQUIRE(check_proof(fp).ok);
  try {
    translate(fp, 0);
    FAIL("expected a translation error");
  } catch (const TranslationError& e) {
    CHECK(e.code == "free-cut-precondition");
  }
}

TEST_CASE("dualizing") {
  Sequent s({parse_formula("(eq (v x) z)"), parse_formula("(ex y (lt (v y) (v x)))")},
            {parse_formula("(lt z (v x))")});
  Sequent d = dual_sequent(s);
  CHECK(cedent_contains(d.ant, parse_formula("(eq (v x) z)")));
  CHECK(cedent_contains(d.ant, parse_formula("(nlt z (v x))")));
  CHECK(cedent_contains(d.suc, parse_formula("(all y (nlt (v y) (v x)))")));

  CyclicPreproof p = simulate_induction(induction_spec(corpus::zero_add_induction()));
  CyclicPreproof q = dualize(p, 0);
  CHECK(q.conclusion() == dual_sequent(p.conclusion()));
  CHECK(check(q).valid);
  CyclicPreproof back = dualize(q, 0);
  CHECK(dual_sequent(q.conclusion()) == back.conclusion());
  CHECK(check(back).valid);
}
