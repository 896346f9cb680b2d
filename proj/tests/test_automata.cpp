#include <doctest.h>

#include "carith/automata.hpp"
#include "carith/suites.hpp"

using namespace carith;

namespace {

/// One state over {a, b}; final as given, with self loops on the listed letters.
NBA single(bool final, std::vector<int> loops) {
  NBA a({"a", "b"});
  a.add_state("q0", final);
  for (int l : loops) a.add_transition(0, l, 0);
  return a;
}

DRA single_dra(unsigned colour) {
  DRA a;
  a.alphabet = {"a"};
  a.states = {"p"};
  a.colour = {colour};
  a.next = {{0}};
  return a;
}

const auto kLassos = oracle::all_lassos(2, 3, 3);

}  // namespace

TEST_CASE("lasso membership on small automata") {
  CHECK(nba_accepts_lasso(single(true, {0}), {{}, {0}}));
  CHECK_FALSE(nba_accepts_lasso(single(true, {0}), {{}, {1}}));
  DBA all = DBA::from_nba(single(true, {0, 1}));
  for (const auto& w : kLassos) CHECK(dba_accepts_lasso(all, w));
  for (const auto& w : oracle::all_lassos(1, 2, 2)) {
    CHECK_FALSE(dra_accepts_lasso(single_dra(1), w));
    CHECK(dra_accepts_lasso(single_dra(0), w));
  }
}

TEST_CASE("lasso membership agrees with the run-graph oracle") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    random_gen::Rng rng(s);
    NBA a = random_gen::nba(rng, 4, 2);
    DRA d = random_gen::dra(rng, 4, 2);
    for (const auto& w : kLassos) {
      CHECK(nba_accepts_lasso(a, w) == oracle::nba_accepts(a, w));
      CHECK(dra_accepts_lasso(d, w) == oracle::dra_accepts(d, w));
      CHECK(dra_accepts_lasso_negative(d, w) == dra_accepts_lasso(d, w));
    }
  }
}

TEST_CASE("union") {
  NBA a = single(true, {0});
  NBA none = single(false, {0, 1});
  for (const auto& w : kLassos) {
    CHECK(nba_accepts_lasso(nba_union(a, a), w) == nba_accepts_lasso(a, w));
    CHECK(nba_accepts_lasso(nba_union(a, none), w) == nba_accepts_lasso(a, w));
  }
}

TEST_CASE("DBA complement") {
  DBA one = DBA::from_nba(single(true, {0, 1}));
  NBA c = dba_complement(one);
  CHECK(c.num_states() == 1);
  CHECK(std::count(c.final.begin(), c.final.end(), 1) == 0);
  DBA never = DBA::from_nba(single(false, {0, 1}));
  for (const auto& w : kLassos) {
    CHECK_FALSE(nba_accepts_lasso(c, w));
    CHECK(nba_accepts_lasso(dba_complement(never), w));
  }
}

TEST_CASE("letter matrices") {
  NBA a = single(true, {0});
  CHECK(letter_matrix(a, 0).at(0, 0) == kInf);
  CHECK(letter_matrix(a, 1).at(0, 0) == kZero);
  CHECK(letter_matrix(single(false, {0}), 0).at(0, 0) == kOne);
  TransitionMatrix m(2);
  m.set(1, 0, kInf);
  m.set(1, 1, kOne);
  TransitionMatrix any(2);
  any.set(0, 0, kInf);
  any.set(0, 1, kOne);
  any.set(1, 1, kInf);
  // Row 0 of m is zero and stays zero.
  CHECK(matrix_product(m, any).row(0).empty());
}

TEST_CASE("semigroup closure") {
  NBA a({"a"});
  a.add_state("q0", true);
  a.add_transition(0, 0, 0);
  CHECK(semigroup_closure(a).size() == 1);
  for (std::uint64_t s = 0; s < 20; ++s) {
    random_gen::Rng rng(s);
    NBA b = random_gen::nba(rng, 3, 2);
    Semigroup g = semigroup_closure(b);
    CHECK(g.size() <= 19683u);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(transition_matrix(b, g.witness[i]) == g.elements[i]);
  }
}

TEST_CASE("rejecting pairs and factorisation") {
  NBA a = single(true, {0});
  TransitionMatrix zero(1);
  CHECK(is_rejecting_pair(a, zero, zero));
  TransitionMatrix nonidem(2);
  nonidem.set(0, 1, kOne);
  NBA two({"a"});
  two.add_state("p");
  two.add_state("q");
  CHECK_FALSE(is_rejecting_pair(two, nonidem, nonidem));

  auto r = ramsey_factorize_lasso(a, {{}, {0}});
  CHECK(r.k == 1);
  CHECK(r.gamma == letter_matrix(a, 0));
  CHECK(r.beta == r.gamma);
  CHECK_FALSE(is_rejecting_pair(a, r.beta, r.gamma));
  auto s = ramsey_factorize_lasso(a, {{0}, {1}});
  CHECK(is_rejecting_pair(a, s.beta, s.gamma));
}

TEST_CASE("Ramsey complement") {
  NBA all = single(true, {0, 1});
  NBA none = single(false, {0, 1});
  for (const auto& w : kLassos) {
    CHECK_FALSE(nba_accepts_lasso(nba_complement(all), w));
    CHECK(nba_accepts_lasso(nba_complement(none), w));
  }
  for (std::uint64_t s = 0; s < 25; ++s) {
    random_gen::Rng rng(100 + s);
    NBA a = random_gen::nba(rng, 3, 2);
    NBA c = nba_complement(a);
    for (const auto& w : kLassos) CHECK(nba_accepts_lasso(c, w) != oracle::nba_accepts(a, w));
  }
}

TEST_CASE("emptiness") {
  CHECK(nba_empty(single(false, {0, 1})).empty);
  auto r = nba_empty(single(true, {0}));
  REQUIRE_FALSE(r.empty);
  CHECK(*r.witness == LassoWord{{}, {0}});
}

TEST_CASE("inclusion") {
  DBA u = DBA::from_nba(single(true, {0, 1}));
  CHECK(includes(u, u.to_nba()).holds);
  NBA empty({"a", "b"});
  empty.add_state("q0");
  auto r = includes(u, empty);
  REQUIRE_FALSE(r.holds);
  CHECK(dba_accepts_lasso(u, *r.counterexample));
  CHECK_FALSE(nba_accepts_lasso(empty, *r.counterexample));
}

TEST_CASE("ArAcc") {
  NBA a({"a"});
  a.add_state("q0");
  a.add_state("q1", true);
  a.add_transition(0, 0, 0);
  CHECK_FALSE(ar_acc_lasso(a, {{}, {0}}));
  CHECK(ar_acc_lasso(single(true, {0}), {{}, {0}}));
}

TEST_CASE("DRA universality") {
  CHECK(dra_universal(single_dra(0)));
  CHECK_FALSE(dra_universal(single_dra(1)));
}
