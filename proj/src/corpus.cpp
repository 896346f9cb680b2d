#include "carith/corpus.hpp"

#include "carith/deriv.hpp"
#include "carith/format.hpp"
#include "carith/translator.hpp"

#ifndef CARITH_CORPUS_DIR
#define CARITH_CORPUS_DIR "corpus"
#endif

namespace carith {

std::string corpus_dir() { return CARITH_CORPUS_DIR; }

std::string to_string(CorpusKind k) {
  switch (k) {
    case CorpusKind::simulate: return "simulate";
    case CorpusKind::translate: return "translate";
    case CorpusKind::check: return "check";
  }
  return "?";
}

namespace corpus {

namespace {

Term V(const std::string& x) { return Term::var(x); }
Term S(const Term& t) { return Term::succ(t); }
Term Z() { return Term::zero(); }
Term add(const Term& a, const Term& b) { return Term::plus(a, b); }
Term fn(const std::string& f, std::vector<Term> args) { return Term::apply(f, std::move(args)); }
Formula eq(const Term& a, const Term& b) { return Formula::eq(a, b); }
Formula lt(const Term& a, const Term& b) { return Formula::lt(a, b); }
Formula p(const std::string& r, std::vector<Term> args) { return Formula::atom(r, std::move(args)); }
Formula np(const std::string& r, std::vector<Term> args) { return Formula::neg_atom(r, std::move(args)); }
Sequent seq(std::vector<Formula> a, std::vector<Formula> s) { return Sequent(std::move(a), std::move(s)); }

/// {e + g = e + a} => e + s g = e + s a
Deriv successor_step(const Term& e, const Term& g, const Term& a, NameSupply& names) {
  const Formula hyp = eq(add(e, g), add(e, a));
  const Formula goal = eq(add(e, S(g)), add(e, S(a)));
  const Formula q5g = eq(add(e, S(g)), S(add(e, g)));
  const Formula mid = eq(add(e, S(g)), S(add(e, a)));
  const Formula q5a = eq(add(e, S(a)), S(add(e, a)));
  const std::string h = names.fresh("h");
  const Sequent s0 = seq({hyp}, {goal});
  const Sequent s1 = extend(s0, {q5g}, {});
  const Sequent s2 = extend(s1, {mid}, {});
  Deriv last = cut(s2, q5a, leaf(seq({}, {q5a}), rule_q(5)),
                   congruence_reverse(eq(add(e, S(g)), V(h)), h, add(e, S(a)), S(add(e, a)), names));
  Deriv second = cut(s1, mid, congruence(eq(add(e, S(g)), S(V(h))), h, add(e, g), add(e, a), names), last);
  return cut(s0, q5g, leaf(seq({}, {q5g}), rule_q(5)), second);
}

FiniteProof finish(const Deriv& d, const Theory& th = {}) {
  FiniteProof p = flatten_finite(d, th);
  ProofReport r = check_proof(p);
  if (!r.ok) throw InvariantError("corpus proof is incorrect at " + r.errors.front().node + ": " +
                                  r.errors.front().message);
  return p;
}

RuleInstance ind_rule(const std::string& hole, const Formula& f, const std::string& a, const Term& t) {
  RuleInstance r = RuleInstance::make(RuleTag::ind);
  r.hole = hole;
  r.formula = f;
  r.eigen = a;
  r.witness = t;
  return r;
}

Deriv zero_add_tree() {
  const Term A = V("a"), X = V("x");
  auto phi = [&](const Term& t) { return eq(add(Z(), t), t); };
  Deriv base = leaf(seq({}, {phi(Z())}), rule_q(4));
  // 0 + s a = s (0 + a) = s a
  const Formula q5 = eq(add(Z(), S(A)), S(add(Z(), A)));
  const Formula cong = eq(S(add(Z(), A)), S(A));
  const Sequent st = seq({phi(A)}, {phi(S(A))});
  const Sequent st1 = extend(st, {q5}, {});
  Deriv chain = cut(st1, cong, leaf(extend(st1, {}, {cong}), rule_of(RuleTag::eq2)),
                    leaf(extend(st1, {cong}, {}), rule_of(RuleTag::eq3)));
  Deriv step = cut(st, q5, leaf(seq({}, {q5}), rule_q(5)), chain);
  return make_step(seq({}, {phi(X)}), ind_rule("y", phi(V("y")), "a", X), {base, step});
}

Deriv le_add_tree() {
  NameSupply names;
  for (const char* x : {"x", "y", "z", "u", "a", "g"}) names.reserve(x);
  const Term X = V("x"), A = V("a"), G = V("g");
  auto phi = [&](const Term& t) { return Formula::ex("z", eq(add(X, V("z")), add(X, t))); };
  const Sequent b = seq({}, {phi(Z())});
  Deriv base = make_step(b, rule_witness(RuleTag::ex_right, Z(), phi(Z())),
                         {leaf(extend(b, {}, {eq(add(X, Z()), add(X, Z()))}), rule_of(RuleTag::eq1))});
  const Sequent st = seq({phi(A)}, {phi(S(A))});
  const Formula hyp = eq(add(X, G), add(X, A));
  const Sequent st1 = extend(st, {hyp}, {});
  const Sequent st2 = extend(st1, {}, {eq(add(X, S(G)), add(X, S(A)))});
  Deriv inner = make_step(st1, rule_witness(RuleTag::ex_right, S(G), phi(S(A))),
                          {weaken(st2, successor_step(X, G, A, names))});
  Deriv step = make_step(st, rule_eigen(RuleTag::ex_left, "g", phi(A)), {inner});
  return make_step(seq({}, {phi(V("y"))}), ind_rule("u", phi(V("u")), "a", V("y")), {base, step});
}

}  // namespace

FiniteProof zero_add_induction() { return finish(zero_add_tree()); }

FiniteProof le_add_induction() { return finish(le_add_tree()); }

FiniteProof zero_add_closed() {
  Deriv d = zero_add_tree();
  Formula goal = Formula::all("x", eq(add(Z(), V("x")), V("x")));
  return finish(make_step(seq({}, {goal}), rule_eigen(RuleTag::all_right, "x", goal), {d}));
}

FiniteProof le_add_closed() {
  NameSupply names;
  for (const char* x : {"x", "y", "z", "u", "a", "g", "e"}) names.reserve(x);
  const Term A = V("a"), G = V("g"), E = V("e");
  // F(u) = all x. ex z. x + z = x + u
  auto body = [&](const Term& x, const Term& u) { return Formula::ex("z", eq(add(x, V("z")), add(x, u))); };
  auto F = [&](const Term& u) { return Formula::all("x", body(V("x"), u)); };

  const Sequent b = seq({}, {F(Z())});
  const Sequent b1 = seq({}, {body(E, Z())});
  Deriv base = make_step(
      b, rule_eigen(RuleTag::all_right, "e", F(Z())),
      {weaken(extend(b, {}, {body(E, Z())}),
              make_step(b1, rule_witness(RuleTag::ex_right, Z(), body(E, Z())),
                        {leaf(extend(b1, {}, {eq(add(E, Z()), add(E, Z()))}), rule_of(RuleTag::eq1))}))});

  const Sequent st = seq({F(A)}, {F(S(A))});
  const Sequent st1 = seq({F(A)}, {body(E, S(A))});
  const Sequent st2 = extend(st1, {body(E, A)}, {});
  const Formula hyp = eq(add(E, G), add(E, A));
  const Sequent st3 = extend(st2, {hyp}, {});
  const Sequent st4 = extend(st3, {}, {eq(add(E, S(G)), add(E, S(A)))});
  Deriv d4 = make_step(st3, rule_witness(RuleTag::ex_right, S(G), body(E, S(A))),
                       {weaken(st4, successor_step(E, G, A, names))});
  Deriv d3 = make_step(st2, rule_eigen(RuleTag::ex_left, "g", body(E, A)), {d4});
  Deriv d2 = make_step(st1, rule_witness(RuleTag::all_left, E, F(A)), {d3});
  Deriv step = make_step(st, rule_eigen(RuleTag::all_right, "e", F(S(A))),
                         {weaken(extend(st, {}, {body(E, S(A))}), d2)});

  Deriv ind = make_step(seq({}, {F(V("y"))}), ind_rule("u", F(V("u")), "a", V("y")), {base, step});
  Formula goal = Formula::all("y", F(V("y")));
  return finish(make_step(seq({}, {goal}), rule_eigen(RuleTag::all_right, "y", goal), {ind}));
}

// ---------------------------------------------------------------- pigeonhole

namespace {

enum class PhpVariant { sound, broken };

Term card(const Term& t) { return fn("card", {t}); }
Term rm(const Term& s, const Term& x) { return fn("rm", {s, x}); }
Formula mem(const Term& x, const Term& s) { return p("mem", {x, s}); }

Theory php_theory(PhpVariant v) {
  Theory th;
  th.sig.declare_function("card", 1);
  th.sig.declare_function("rm", 2);
  th.sig.declare_function("f", 1);
  th.sig.declare_predicate("mem", 2);
  th.sig.declare_predicate("mapsto", 2);
  th.sig.declare_predicate("inj", 1);
  th.sig.declare_predicate("empty", 1);
  const Term A = V("A"), B = V("B"), a = V("a"), a2 = V("c"), b = V("b");
  auto f = [](const Term& t) { return fn("f", {t}); };
  auto mapsto = [](const Term& x, const Term& y) { return p("mapsto", {x, y}); };
  // some x < A. x in A and f x = b
  Formula hit = Formula::bex("x", A, Formula::conj(mem(V("x"), A), eq(f(V("x")), b)));
  // some x < A. x in A and x != a and f x = b
  Formula hit2 = Formula::bex("x", A, Formula::conj(mem(V("x"), A), Formula::conj(Formula::neq(V("x"), a),
                                                                                   eq(f(V("x")), b))));
  th.axioms["nonempty"] = seq({}, {p("empty", {B}), Formula::bex("x", B, mem(V("x"), B))});
  th.axioms["empty"] = seq({p("empty", {B}), lt(card(B), card(A)), mapsto(A, B)}, {np("inj", {A})});
  th.axioms["lt-trans"] = seq({lt(V("x"), V("y")), lt(V("y"), V("w"))}, {lt(V("x"), V("w"))});
  th.axioms["shrink-codomain"] = seq({mapsto(A, B)}, {hit, mapsto(A, rm(B, b))});
  th.axioms["shrink-both"] = seq({mapsto(A, B), mem(a, A), eq(f(a), b)}, {hit2, mapsto(rm(A, a), rm(B, b))});
  th.axioms["card-both"] =
      seq({mem(a, A), mem(b, B), lt(card(B), card(A))}, {lt(card(rm(B, b)), card(rm(A, a)))});
  th.axioms["collision"] =
      seq({mem(a2, A), Formula::neq(a2, a), eq(f(a2), b), mem(a, A), eq(f(a), b)}, {np("inj", {A})});
  th.axioms["inj-remove"] = seq({np("inj", {rm(A, a)})}, {np("inj", {A})});
  if (v == PhpVariant::sound) th.axioms["card-remove"] = seq({mem(b, B)}, {lt(card(rm(B, b)), card(B))});
  else th.axioms["card-remove-below"] = seq({mem(b, B), lt(card(B), card(A))}, {lt(card(rm(B, b)), card(A))});
  return th;
}

RuleInstance axiom_rule(const std::string& name) {
  RuleInstance r = RuleInstance::make(RuleTag::axiom);
  r.axiom = name;
  return r;
}

Deriv php_tree(PhpVariant v, int& companion_label) {
  const Term A = V("A"), B = V("B"), a = V("a"), a2 = V("c"), b = V("b");
  auto f = [](const Term& t) { return fn("f", {t}); };
  auto mapsto = [](const Term& x, const Term& y) { return p("mapsto", {x, y}); };
  auto ax = [](const Sequent& s, const std::string& name) { return leaf(s, axiom_rule(name)); };

  const Formula bigger = lt(card(B), card(A));
  const Formula maps = mapsto(A, B);
  const Formula noninj = np("inj", {A});
  const Sequent bullet = seq({bigger, maps}, {noninj});
  const int label = new_label();
  companion_label = label;

  // Case B empty.
  const Formula empty = p("empty", {B});
  Deriv empty_case = ax(extend(bullet, {empty}, {}), "empty");

  // Case b in B.
  const Formula in_b = mem(b, B);
  const Sequent K = extend(bullet, {in_b}, {});
  const Formula hit = Formula::bex("x", A, Formula::conj(mem(V("x"), A), eq(f(V("x")), b)));

  // No x in A hits b: shrink B.
  const Sequent L = extend(K, {}, {hit});
  const Formula smaller_b = lt(card(rm(B, b)), card(B));
  const Formula still_bigger = lt(card(rm(B, b)), card(A));
  const Formula maps_shrunk = mapsto(A, rm(B, b));
  const Sequent back1 = seq({still_bigger, maps_shrunk}, {noninj});
  Deriv loop1 = substitute(back1, {{"B", rm(B, b)}}, bud_leaf(bullet, label));
  Deriv after_map = cut(extend(L, {smaller_b, still_bigger}, {}), maps_shrunk,
                        ax(seq({maps}, {hit, maps_shrunk}), "shrink-codomain"), loop1);
  Deriv left;
  if (v == PhpVariant::sound) {
    const Sequent L1 = extend(L, {smaller_b}, {});
    Deriv l2 = cut(L1, still_bigger, ax(seq({smaller_b, bigger}, {still_bigger}), "lt-trans"), after_map);
    left = cut(L, smaller_b, ax(seq({in_b}, {smaller_b}), "card-remove"), l2);
  } else {
    Deriv after = cut(extend(L, {still_bigger}, {}), maps_shrunk,
                      ax(seq({maps}, {hit, maps_shrunk}), "shrink-codomain"), loop1);
    left = cut(L, still_bigger, ax(seq({in_b, bigger}, {still_bigger}), "card-remove-below"), after);
  }

  // Some a in A with f a = b.
  const Formula a_in = mem(a, A), fa = eq(f(a), b);
  const Formula hit_a = Formula::conj(a_in, fa);
  const Sequent R = extend(K, {a_in, fa}, {});
  const Formula hit2 = Formula::bex("x", A, Formula::conj(mem(V("x"), A), Formula::conj(Formula::neq(V("x"), a),
                                                                                       eq(f(V("x")), b))));
  // Another c != a also hits b.
  const Formula c_in = mem(a2, A), c_ne = Formula::neq(a2, a), fc = eq(f(a2), b);
  const Formula rest = Formula::conj(c_ne, fc);
  const Formula hit2_c = Formula::conj(c_in, rest);
  const Sequent C0 = extend(R, {hit2}, {});
  const Sequent C1 = extend(C0, {lt(a2, A), hit2_c}, {});
  const Sequent C2 = extend(C1, {c_in}, {});
  const Sequent C3 = extend(C2, {rest}, {});
  const Sequent C4 = extend(C3, {c_ne}, {});
  const Sequent C5 = extend(C4, {fc}, {});
  Deriv collide = make_step(
      C1, rule_index(RuleTag::and_left, 0, hit2_c),
      {make_step(C2, rule_index(RuleTag::and_left, 1, hit2_c),
                 {make_step(C3, rule_index(RuleTag::and_left, 0, rest),
                            {make_step(C4, rule_index(RuleTag::and_left, 1, rest),
                                       {weaken(C5, ax(seq({c_in, c_ne, fc, a_in, fa}, {noninj}), "collision"))})})})});
  Deriv collide_case = make_step(C0, rule_eigen(RuleTag::bex_left, "c", hit2), {collide});

  // a is the only preimage of b: shrink both sides.
  const Sequent U = extend(R, {}, {hit2});
  const Formula both_bigger = lt(card(rm(B, b)), card(rm(A, a)));
  const Formula maps_both = mapsto(rm(A, a), rm(B, b));
  const Formula noninj_rm = np("inj", {rm(A, a)});
  const Sequent back2 = seq({both_bigger, maps_both}, {noninj_rm});
  Deriv loop2 = substitute(back2, {{"A", rm(A, a)}, {"B", rm(B, b)}}, bud_leaf(bullet, label));
  const Sequent U1 = extend(U, {smaller_b}, {});
  const Sequent U2 = extend(U1, {both_bigger}, {});
  const Sequent U3 = extend(U2, {maps_both}, {});
  Deriv u3 = cut(U3, noninj_rm, loop2, ax(seq({noninj_rm}, {noninj}), "inj-remove"));
  Deriv u2 = cut(U2, maps_both, ax(seq({maps, a_in, fa}, {hit2, maps_both}), "shrink-both"), u3);
  Deriv u1 = cut(U1, both_bigger, ax(seq({a_in, in_b, bigger}, {both_bigger}), "card-both"), u2);
  Deriv unique;
  if (v == PhpVariant::sound) {
    unique = cut(U, smaller_b, ax(seq({in_b}, {smaller_b}), "card-remove"), u1);
  } else {
    Deriv w2 = cut(extend(U, {both_bigger}, {}), maps_both,
                   ax(seq({maps, a_in, fa}, {hit2, maps_both}), "shrink-both"),
                   cut(extend(U, {both_bigger, maps_both}, {}), noninj_rm, loop2,
                       ax(seq({noninj_rm}, {noninj}), "inj-remove")));
    unique = cut(U, both_bigger, ax(seq({a_in, in_b, bigger}, {both_bigger}), "card-both"), w2);
  }
  Deriv found = cut(R, hit2, unique, collide_case);

  const Sequent H0 = extend(K, {hit}, {});
  const Sequent H1 = extend(H0, {lt(a, A), hit_a}, {});
  const Sequent H2 = extend(H1, {a_in}, {});
  Deriv opened = make_step(
      H1, rule_index(RuleTag::and_left, 0, hit_a),
      {make_step(H2, rule_index(RuleTag::and_left, 1, hit_a), {weaken(extend(H2, {fa}, {}), found)})});
  Deriv right = make_step(H0, rule_eigen(RuleTag::bex_left, "a", hit), {opened});
  Deriv member = cut(K, hit, left, right);

  // B is empty or has an element b.
  const Formula some = Formula::bex("x", B, mem(V("x"), B));
  const Sequent N = extend(bullet, {}, {empty});
  const Sequent N1 = extend(N, {some}, {});
  Deriv pick = make_step(N1, rule_eigen(RuleTag::bex_left, "b", some),
                         {weaken(extend(N1, {lt(b, B), in_b}, {}), member)});
  Deriv split = cut(N, some, ax(seq({}, {empty, some}), "nonempty"), pick);
  Deriv top = cut(bullet, empty, split, empty_case);
  top->label = label;

  // => all A. all B. (not |B| < |A|) or ((not A maps into B) or (not inj A))
  const Formula body = Formula::disj(Formula::nlt(card(B), card(A)),
                                     Formula::disj(np("mapsto", {A, B}), noninj));
  const Formula inner = Formula::all("B", body);
  const Formula goal = Formula::all("A", inner);
  const Formula tail = Formula::disj(np("mapsto", {A, B}), noninj);
  const Sequent r3 = seq({}, {body, Formula::nlt(card(B), card(A)), tail, np("mapsto", {A, B}), noninj});
  const Sequent r2 = seq({}, {body, Formula::nlt(card(B), card(A)), tail, np("mapsto", {A, B})});
  const Sequent r1 = seq({}, {body, Formula::nlt(card(B), card(A)), tail});
  const Sequent r0 = seq({}, {body, Formula::nlt(card(B), card(A))});
  Deriv d = bridge(r3, top);
  d = make_step(r2, rule_index(RuleTag::or_right, 1, tail), {d});
  d = make_step(r1, rule_index(RuleTag::or_right, 0, tail), {d});
  d = make_step(r0, rule_index(RuleTag::or_right, 1, body), {d});
  d = make_step(seq({}, {body}), rule_index(RuleTag::or_right, 0, body), {d});
  d = make_step(seq({}, {inner}), rule_eigen(RuleTag::all_right, "B", inner), {d});
  return make_step(seq({}, {goal}), rule_eigen(RuleTag::all_right, "A", goal), {d});
}

CyclicPreproof php_build(PhpVariant v) {
  int label = -1;
  Deriv d = php_tree(v, label);
  CyclicPreproof p = flatten(d, php_theory(v), "php");
  auto errs = check_local(p);
  if (!errs.empty())
    throw InvariantError("pigeonhole proof is locally incorrect at " + errs.front().node + ": " +
                         errs.front().message);
  return p;
}

}  // namespace

CyclicPreproof php() { return php_build(PhpVariant::sound); }

CyclicPreproof php_broken() { return php_build(PhpVariant::broken); }

std::string php_companion() {
  CyclicPreproof p = php();
  return p.bud_targets().front();
}

CyclicPreproof php_retarget() {
  CyclicPreproof p = php();
  const std::string companion = php_companion();
  // Send the last bud to the companion's first premiss instead.
  std::string first_premiss = p.nodes.at(companion).children.front().id;
  for (auto it = p.nodes.rbegin(); it != p.nodes.rend(); ++it)
    for (auto& c : it->second.children)
      if (c.bud) {
        c.id = first_premiss;
        return p;
      }
  throw InvariantError("pigeonhole proof has no bud");
}

// ---------------------------------------------------------------- unsound preproof

CyclicPreproof unsound() {
  const Term Y = V("y"), C = V("c");
  const Sequent bullet = seq({}, {eq(Y, Z())});
  Sequent q3 = q_axiom_instance(3, Y);
  Formula pred;
  for (const auto& f : q3.suc)
    if (f.kind() == FormulaKind::bex) pred = f;
  const int label = new_label();
  const Sequent s_pred = extend(bullet, {pred}, {});
  const Sequent s_desc = extend(s_pred, {lt(C, Y), eq(Y, S(C))}, {});
  const Formula zero_c = eq(C, Z());
  // c = 0 fails: restart below at c.
  Deriv down = weaken(extend(s_desc, {}, {zero_c}),
                      substitute(seq({}, {zero_c}), {{"y", C}}, bud_leaf(bullet, label)));
  // c = 0 holds: restart at y without descending.
  Deriv stay = weaken(extend(s_desc, {zero_c}, {}), bud_leaf(bullet, label));
  Deriv desc = cut(s_desc, zero_c, down, stay);
  Deriv n3 = make_step(s_pred, rule_eigen(RuleTag::bex_left, "c", pred), {desc});
  Deriv n1 = cut(bullet, pred, leaf(extend(bullet, {}, {pred}), rule_q(3)), n3);
  n1->label = label;
  const Term two = Term::numeral(2);
  Deriv root = substitute(seq({}, {eq(two, Z())}), {{"y", two}}, n1);
  CyclicPreproof p = flatten(root, Theory{}, "u");
  auto errs = check_local(p);
  if (!errs.empty()) throw InvariantError("unsound preproof is locally incorrect: " + errs.front().message);
  return p;
}

std::vector<Term> unsound_trace() {
  const Term Y = V("y"), C = V("c");
  const Term two = Term::numeral(2);
  // root, then y = 2: companion, bex-left, cut (c = 1), c != 0 branch, sub; then y = 1 around the
  // stay loop, which repeats.
  return {two, Y, Y, C, C, C, Y, Y, Y, Y, Y};
}

}  // namespace corpus

std::vector<CorpusEntry> corpus_entries() {
  return {
      {"sim-zero-add", "sim-zero-add.prf", CorpusKind::simulate, 0, true},
      {"sim-zero-add-broken", "sim-zero-add-broken.cyc", CorpusKind::check, 0, false},
      {"sim-le-add", "sim-le-add.prf", CorpusKind::simulate, 1, true},
      {"sim-le-add-broken", "sim-le-add-broken.cyc", CorpusKind::check, 1, false},
      {"tr-zero-add", "tr-zero-add.prf", CorpusKind::translate, 0, true},
      {"tr-zero-add-broken", "tr-zero-add-broken.cyc", CorpusKind::check, 0, false},
      {"tr-le-add", "tr-le-add.prf", CorpusKind::translate, 1, true},
      {"tr-le-add-broken", "tr-le-add-broken.cyc", CorpusKind::check, 1, false},
      {"php", "php.cyc", CorpusKind::check, 0, true},
      {"php-broken", "php-broken.cyc", CorpusKind::check, 0, false},
      {"php-retarget", "php-retarget.cyc", CorpusKind::check, 0, false},
      {"unsound", "unsound.cyc", CorpusKind::check, 0, false},
  };
}

std::vector<std::pair<std::string, std::string>> corpus_files() {
  GadgetOptions broken{true};
  std::vector<std::pair<std::string, std::string>> out;
  auto add = [&](const std::string& name, const std::string& header, const std::string& body) {
    out.emplace_back(name, header + body);
  };
  add("sim-zero-add.prf", "; induction for 0 + x = x, input to simulate-ind\n",
      print_proof(corpus::zero_add_induction()));
  add("sim-zero-add-broken.cyc", "; simulation of sim-zero-add.prf whose cycle never descends\n",
      print_proof(simulate_induction(induction_spec(corpus::zero_add_induction()), broken)));
  add("sim-le-add.prf", "; induction for ex z. x + z = x + y, input to simulate-ind\n",
      print_proof(corpus::le_add_induction()));
  add("sim-le-add-broken.cyc", "; simulation of sim-le-add.prf whose cycle never descends\n",
      print_proof(simulate_induction(induction_spec(corpus::le_add_induction()), broken)));
  add("tr-zero-add.prf", "; all x. 0 + x = x, input to translate --level 0\n",
      print_proof(corpus::zero_add_closed()));
  add("tr-zero-add-broken.cyc", "; translation of tr-zero-add.prf whose cycle never descends\n",
      print_proof(translate(corpus::zero_add_closed(), 0, broken)));
  add("tr-le-add.prf", "; all y. all x. ex z. x + z = x + y, input to translate --level 1\n",
      print_proof(corpus::le_add_closed()));
  add("tr-le-add-broken.cyc", "; translation of tr-le-add.prf whose cycle never descends\n",
      print_proof(translate(corpus::le_add_closed(), 1, broken)));
  add("php.cyc", "; pigeonhole principle for f, companion " + corpus::php_companion() + "\n",
      print_proof(corpus::php()));
  add("php-broken.cyc", "; pigeonhole proof without the cardinality descent\n",
      print_proof(corpus::php_broken()));
  add("php-retarget.cyc", "; pigeonhole proof with a bud sent to the wrong node\n",
      print_proof(corpus::php_retarget()));
  add("unsound.cyc", "; a preproof of s s 0 = 0 with a cycle that does not descend\n",
      print_proof(corpus::unsound()));
  out.emplace_back("unsound.assign", "(assign)\n");
  out.emplace_back("unsound.trace",
                   [] {
                     std::string s = "; trace terms along the generated branch, one per step\n(trace";
                     for (const auto& t : corpus::unsound_trace()) s += " " + to_string(t);
                     return s + ")\n";
                   }());
  return out;
}

}  // namespace carith
