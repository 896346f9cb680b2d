#include <doctest.h>

#include "carith/corpus.hpp"
#include "carith/format.hpp"
#include "carith/suites.hpp"
#include "carith/translator.hpp"

using namespace carith;

namespace {
Formula F(const std::string& s) { return parse_formula(s); }
const Interpretation kStd;
}  // namespace

TEST_CASE("term evaluation") {
  CHECK(eval_term({}, kStd, Term::numeral(1)) == 1);
  CHECK(eval_term({{"x", 2}}, kStd, parse_term("(* (v x) (v x))")) == 4);
  CHECK(eval_term({}, kStd, parse_term("(+ (s z) (s z))")) == 2);
  CHECK_THROWS_AS(eval_term({}, kStd, parse_term("(v x)")), SemanticsError);
}

TEST_CASE("truth with fuel") {
  for (Value t = 0; t < 6; ++t)
    CHECK(models({{"t", t}}, kStd, F("(ball x (v t) (lt (v x) (s (v t))))"), 4) == Truth::True);
  CHECK(models({}, kStd, F("(ex x (eq (v x) (s z)))"), 10) == Truth::True);
  for (Value k : {0, 3, 20})
    CHECK(models({}, kStd, F("(all x (ex y (lt (v x) (v y))))"), k) == Truth::Unknown);
  CHECK(models({}, kStd, F("(all x (lt (v x) (s (s z))))"), 10) == Truth::False);
}

TEST_CASE("truth of sequents") {
  CHECK(models_sequent({{"t", 5}}, kStd, Sequent({}, {F("(eq (v t) (v t))")}), 4) == Truth::True);
  CHECK(models_sequent({}, kStd, Sequent(), 4) == Truth::False);
  random_gen::Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    Formula a = random_gen::delta0(rng, {"x", "y"}, 2), b = random_gen::delta0(rng, {"x", "y"}, 2);
    Assignment rho{{"x", rng() % 4}, {"y", rng() % 4}};
    bool want = !oracle::delta0_truth(a, rho) || oracle::delta0_truth(b, rho);
    CHECK(models_sequent(rho, kStd, Sequent({a}, {b}), 4) == (want ? Truth::True : Truth::False));
  }
}

TEST_CASE("declared symbols") {
  auto in = parse_interpretation("(interp (fn f 1 (table (0 1) (1 0)) (default 0)) (pred p (n) (eq (v n) z)))");
  Formula f = parse_formula("(p p (fn f (v x)))");
  CHECK(models({{"x", 1}}, in, f, 4) == Truth::True);
  CHECK(models({{"x", 0}}, in, f, 4) == Truth::False);
}

TEST_CASE("branch through a substitution loop") {
  auto p = parse_cyclic_proof(
      "(cyclic-proof (root n0)"
      "(node n0 (seq () ((eq z (s z)))) (rule sub ((x z))) (children n1))"
      "(node n1 (seq () ((eq (v x) (s (v x))))) (rule sub ()) (children n2))"
      "(node n2 (seq () ((eq (v x) (s (v x))))) (rule sub ()) (children (bud n1))))");
  REQUIRE(check_local(p).empty());
  Branch b = generate_branch(p, {}, kStd, 100, 8);
  REQUIRE(b.loop_start);
  CHECK(b.steps.size() == 4);
  for (const auto& s : b.steps) CHECK(models_sequent(s.rho, kStd, p.nodes.at(s.node).sequent, 8) == Truth::False);
  CHECK(is_branch(p, branch_lasso(b)));
}

TEST_CASE("a true conclusion is rejected up front") {
  auto p = simulate_induction(induction_spec(corpus::zero_add_induction()));
  CHECK_THROWS_AS(generate_branch(p, {{"x", 3}}, kStd, 100, 8), std::invalid_argument);
}

TEST_CASE("branch of the unsound proof") {
  auto p = corpus::unsound();
  Branch b = generate_branch(p, {}, kStd, 1000, 64);
  REQUIRE(b.loop_start);
  auto trace = corpus::unsound_trace();
  REQUIRE(trace.size() == b.steps.size());
  for (const auto& s : b.steps) CHECK(models_sequent(s.rho, kStd, p.nodes.at(s.node).sequent, 64) == Truth::False);
  CHECK_FALSE(oracle_trace_check(p, branch_lasso(b)));
}
