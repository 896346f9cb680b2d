#include <doctest.h>

#include <random>

#include "carith/format.hpp"
#include "carith/logic.hpp"
#include "carith/suites.hpp"

using namespace carith;

namespace {
Formula F(const std::string& s) { return parse_formula(s); }
Term T(const std::string& s) { return parse_term(s); }
}  // namespace

TEST_CASE("dual pushes negation to the atoms") {
  CHECK(dual(F("(and (eq (v x) z) (lt (v y) z))")) == F("(or (neq (v x) z) (nlt (v y) z))"));
  CHECK(dual(F("(neq (v s) (v t))")) == F("(eq (v s) (v t))"));
  CHECK(dual(F("(all x (lt (v x) (v y)))")) == F("(ex x (nlt (v x) (v y)))"));
  CHECK(dual(F("(bex x (v y) (eq (v x) z))")) == F("(ball x (v y) (neq (v x) z))"));
}

TEST_CASE("dual is an involution on random formulas") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    Formula f = random_gen::delta0(rng, {"x", "y"}, 3);
    CHECK(dual(dual(f)) == f);
    CHECK(classify(dual(f)) == classify(f));
  }
}

TEST_CASE("classification") {
  CHECK(classify(F("(ball x (v t) (eq (v x) (v x)))")) == HierarchyLevel::delta0());
  CHECK(classify(F("(ex x (eq (v x) (v x)))")) == HierarchyLevel::sigma(1));
  CHECK(classify(F("(all y (ex x (eq (v x) (v y))))")) == HierarchyLevel::pi(2));
  // Unbounded quantifiers under a connective fall outside the prenex classes.
  CHECK(classify(F("(and (ex x (eq (v x) z)) (eq z z))")) == HierarchyLevel::none());
  CHECK(is_in_level(F("(eq z z)"), HierarchyLevel::pi(1)));
  CHECK(sigma_rank(F("(all y (ex x (eq (v x) (v y))))")) == 3u);
  CHECK(pi_rank(F("(all y (ex x (eq (v x) (v y))))")) == 2u);
}

TEST_CASE("substitution avoids capture") {
  CHECK(apply_subst({{"x", Term::zero()}}, F("(lt (v x) (v y))")) == F("(lt z (v y))"));
  Formula f = F("(ex x (eq (v x) (v y)))");
  CHECK(apply_subst({}, f) == f);
  CHECK(apply_subst({{"y", Term::var("x")}}, f) == F("(ex x' (eq (v x') (v x)))"));
}

TEST_CASE("free variables") {
  CHECK(free_vars(F("(ex x (lt (v x) (v y)))")) == std::vector<std::string>{"y"});
  CHECK(free_vars(Term::zero()).empty());
  CHECK(free_vars(T("(+ (v x) (s (v x)))")) == std::vector<std::string>{"x"});
}

TEST_CASE("merging universal blocks") {
  CHECK(merge_forall_block(F("(all x (eq (v x) z))"), F("(all y (lt (v y) z))")) ==
        F("(all x (all y (and (eq (v x) z) (lt (v y) z))))"));
  CHECK(merge_forall_block(F("(all x (eq (v x) z))"), F("(all x (lt (v x) z))")) ==
        F("(all x (all x' (and (eq (v x) z) (lt (v x') z))))"));
  CHECK(merge_forall_block(F("(eq z z)"), F("(lt z z)")) == F("(and (eq z z) (lt z z))"));
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Formula::bex("x", Term::var("x"), F("(eq z z)")), ConstructionError);
  Signature sig;
  sig.declare_function("f", 1);
  CHECK_THROWS_AS(sig.make_apply("f", {Term::zero(), Term::zero()}), SignatureError);
  CHECK_THROWS_AS(sig.declare_function("+", 2), SignatureError);
}
