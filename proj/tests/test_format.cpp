#include <doctest.h>

#include "carith/corpus.hpp"
#include "carith/format.hpp"
#include "carith/sexpr.hpp"

using namespace carith;

TEST_CASE("printing is a normal form for every corpus file") {
  for (const auto& [name, text] : corpus_files()) {
    if (!name.ends_with(".prf") && !name.ends_with(".cyc")) continue;
    CAPTURE(name);
    std::string once = print_proof(parse_proof(text));
    CHECK(print_proof(parse_proof(once)) == once);
  }
}

TEST_CASE("bundled corpus files match the builders") {
  for (const auto& [name, text] : corpus_files()) {
    CAPTURE(name);
    CHECK(read_file(corpus_dir() + "/" + name) == text);
  }
}

TEST_CASE("the pigeonhole file has two buds to one companion") {
  auto p = parse_cyclic_proof(read_file(corpus_dir() + "/php.cyc"));
  auto t = p.bud_targets();
  REQUIRE(t.size() == 2);
  CHECK(t[0] == corpus::php_companion());
  CHECK(t[1] == corpus::php_companion());
}

TEST_CASE("a bad bud target names the node") {
  std::string text =
      "(cyclic-proof (root n0)\n"
      "  (node n0 (seq () ((eq z z))) (rule sub ()) (children (bud nowhere))))";
  try {
    parse_proof(text);
    FAIL("expected an error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("n0") != std::string::npos);
    CHECK(std::string(e.what()).find("nowhere") != std::string::npos);
  }
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_formula("(and (eq z z)\n  (lt z))");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("automata round trip") {
  std::string text = "(nba (alphabet a b) (states q0 q1) (init q0) (finals q1) (trans (q0 a q1) (q1 b q0) (q1 a q1)))";
  Automaton a = parse_automaton(text);
  std::string once = print_automaton(a);
  CHECK(print_automaton(parse_automaton(once)) == once);
  auto dra = parse_automaton("(dra (alphabet a) (states p) (init p) (colours (p 1)) (trans (p a p)))");
  CHECK(std::holds_alternative<DRA>(dra));
}

TEST_CASE("lasso syntax") {
  std::vector<std::string> ab{"a", "b"};
  CHECK(parse_lasso("a b;b", ab) == LassoWord{{0, 1}, {1}});
  CHECK(parse_lasso("(lasso (a b) (b))", ab) == LassoWord{{0, 1}, {1}});
  CHECK(parse_lasso(print_lasso({{}, {0, 1}}, ab), ab) == LassoWord{{}, {0, 1}});
  CHECK_THROWS(parse_lasso("a;", ab));
  CHECK_THROWS(parse_lasso("c;a", ab));
}

TEST_CASE("assignments and interpretations") {
  auto rho = parse_assignment("(assign (x 3) (y 0))");
  CHECK(rho.at("x") == 3);
  auto in = parse_interpretation("(interp (fn double (n) (+ (v n) (v n))) (pred small (n) (lt (v n) (s (s z)))))");
  CHECK(in.functions.at("double").eval({4}) == 8);
  CHECK(in.predicates.at("small").eval({1}));
  CHECK_FALSE(in.predicates.at("small").eval({2}));
}

TEST_CASE("constructed automata print to parseable text") {
  auto a = std::get<NBA>(parse_automaton(
      "(nba (alphabet a b) (states p q) (init p) (finals q) (trans (p a q) (q b p) (q a q) (p b p)))"));
  DBA d = DBA::from_nba(a);
  for (const NBA& c : {nba_union(a, a), dba_complement(d), nba_complement(a)}) {
    std::string once = print_automaton(c);
    CHECK(print_automaton(parse_automaton(once)) == once);
  }
}
