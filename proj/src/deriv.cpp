#include "carith/deriv.hpp"

#include <atomic>
#include <algorithm>
#include <functional>
#include <map>

namespace carith {

// ---------------------------------------------------------------- names

void NameSupply::reserve(const Term& t) {
  for (const auto& x : t.free_vars()) used_.insert(x);
}

void NameSupply::reserve(const Formula& f) {
  for (const auto& x : f.free_vars()) used_.insert(x);
  switch (f.kind()) {
    case FormulaKind::atom:
    case FormulaKind::neg_atom:
      break;
    case FormulaKind::conj:
    case FormulaKind::disj:
      reserve(f.left());
      reserve(f.right());
      break;
    case FormulaKind::bex:
    case FormulaKind::ball:
      reserve(f.bound());
      [[fallthrough]];
    case FormulaKind::ex:
    case FormulaKind::all:
      used_.insert(f.var());
      reserve(f.body());
      break;
  }
}

void NameSupply::reserve(const Sequent& s) {
  for (const auto& f : s.ant) reserve(f);
  for (const auto& f : s.suc) reserve(f);
}

void NameSupply::reserve(const RuleInstance& r) {
  if (r.principal.valid()) reserve(r.principal);
  if (r.witness.valid()) reserve(r.witness);
  if (r.formula.valid()) reserve(r.formula);
  if (!r.eigen.empty()) used_.insert(r.eigen);
  if (!r.hole.empty()) used_.insert(r.hole);
  for (const auto& [x, t] : r.theta) {
    used_.insert(x);
    reserve(t);
  }
}

void NameSupply::reserve(const Deriv& d) {
  reserve(d->seq);
  reserve(d->rule);
  for (const auto& t : d->registered) reserve(t);
  for (const auto& k : d->kids) reserve(k);
}

std::string NameSupply::fresh(const std::string& base) {
  std::string x = base + "'";
  while (used_.count(x)) x += "'";
  used_.insert(x);
  return x;
}

int new_label() {
  static std::atomic<int> next{0};
  return next++;
}

// ---------------------------------------------------------------- construction

Deriv leaf(Sequent s, RuleInstance r) { return make_step(std::move(s), std::move(r), {}); }

Deriv make_step(Sequent s, RuleInstance r, std::vector<Deriv> kids) {
  auto n = std::make_shared<DNode>();
  n->seq = std::move(s);
  n->rule = std::move(r);
  n->kids = std::move(kids);
  return n;
}

Deriv bud_leaf(Sequent s, int label) {
  auto n = std::make_shared<DNode>();
  n->seq = std::move(s);
  n->bud = label;
  return n;
}

Deriv assume(Sequent s, std::optional<Formula> key) {
  auto n = leaf(std::move(s), RuleInstance::make(RuleTag::assumption));
  n->key = std::move(key);
  return n;
}

Deriv weaken(const Sequent& target, Deriv d) {
  if (d->seq == target) return d;
  if (!cedent_subset(d->seq.ant, target.ant) || !cedent_subset(d->seq.suc, target.suc))
    throw ConstructionError("cannot weaken " + to_string(d->seq) + " to " + to_string(target));
  return make_step(target, RuleInstance::make(RuleTag::wk), {std::move(d)});
}

Deriv cut(const Sequent& s, const Formula& f, Deriv left, Deriv right) {
  RuleInstance r = RuleInstance::make(RuleTag::cut);
  r.formula = f;
  Deriv l = weaken(extend(s, {}, {f}), std::move(left));
  Deriv rr = weaken(extend(s, {f}, {}), std::move(right));
  return make_step(s, r, {l, rr});
}

Deriv substitute(const Sequent& target, Substitution theta, Deriv d) {
  RuleInstance r = RuleInstance::make(RuleTag::sub);
  r.theta = std::move(theta);
  return make_step(target, r, {std::move(d)});
}

RuleInstance rule_of(RuleTag t) { return RuleInstance::make(t); }

RuleInstance rule_q(int k) {
  RuleInstance r = RuleInstance::make(RuleTag::q_axiom);
  r.index = k;
  return r;
}

RuleInstance rule_eigen(RuleTag t, const std::string& a, const Formula& principal) {
  RuleInstance r = RuleInstance::make(t);
  r.eigen = a;
  r.principal = principal;
  return r;
}

RuleInstance rule_witness(RuleTag t, const Term& w, const Formula& principal) {
  RuleInstance r = RuleInstance::make(t);
  r.witness = w;
  r.principal = principal;
  return r;
}

RuleInstance rule_index(RuleTag t, int i, const Formula& principal) {
  RuleInstance r = RuleInstance::make(t);
  r.index = i;
  r.principal = principal;
  return r;
}

// ---------------------------------------------------------------- tree maps

namespace {

/// Copy the tree, mapping every node with f and renaming companion labels.
Deriv map_tree(const Deriv& d, const std::function<void(DNode&)>& f, std::map<int, int>& labels) {
  auto n = std::make_shared<DNode>(*d);
  if (d->label >= 0) {
    n->label = new_label();
    labels[d->label] = n->label;
  }
  if (d->bud >= 0) {
    auto it = labels.find(d->bud);
    // Buds to companions outside the copied subtree keep their label.
    if (it != labels.end()) n->bud = it->second;
  }
  f(*n);
  for (auto& k : n->kids) k = map_tree(k, f, labels);
  return n;
}

Deriv map_tree(const Deriv& d, const std::function<void(DNode&)>& f) {
  std::map<int, int> labels;
  return map_tree(d, f, labels);
}

}  // namespace

Deriv copy(const Deriv& d) {
  return map_tree(d, [](DNode&) {});
}

Deriv extend_all(const Deriv& d, const Sequent& extra) {
  return map_tree(d, [&](DNode& n) {
    n.seq.ant = cedent_union(n.seq.ant, extra.ant);
    n.seq.suc = cedent_union(n.seq.suc, extra.suc);
  });
}

Deriv subst_tree(const Deriv& d, const Substitution& theta) {
  return map_tree(d, [&](DNode& n) {
    n.seq = apply_subst(theta, n.seq);
    RuleInstance& r = n.rule;
    if (r.principal.valid()) r.principal = apply_subst(theta, r.principal);
    if (r.witness.valid()) r.witness = apply_subst(theta, r.witness);
    if (r.formula.valid()) r.formula = apply_subst(theta, r.formula);
    for (auto& [x, t] : r.theta) t = apply_subst(theta, t);
    for (auto& t : n.registered) t = apply_subst(theta, t);
    if (n.key) n.key = apply_subst(theta, *n.key);
  });
}

void register_all(const Deriv& d, const Term& t) {
  if (std::find(d->registered.begin(), d->registered.end(), t) == d->registered.end())
    d->registered.push_back(t);
  for (const auto& k : d->kids) register_all(k, t);
}

std::size_t size(const Deriv& d) {
  std::size_t n = d->bud >= 0 ? 0 : 1;
  for (const auto& k : d->kids) n += size(k);
  return n;
}

std::vector<Deriv> assumption_leaves(const Deriv& d) {
  std::vector<Deriv> out;
  std::function<void(const Deriv&)> go = [&](const Deriv& n) {
    if (n->bud < 0 && n->rule.tag == RuleTag::assumption) out.push_back(n);
    for (const auto& k : n->kids) go(k);
  };
  go(d);
  return out;
}

// ---------------------------------------------------------------- flattening

CyclicPreproof flatten(const Deriv& d, const Theory& th, const std::string& prefix) {
  if (d->bud >= 0) throw ConstructionError("a bud cannot be the root");
  CyclicPreproof p;
  p.theory = th;
  std::map<int, std::string> companion;
  std::size_t counter = 0;
  std::function<std::string(const Deriv&)> go = [&](const Deriv& n) -> std::string {
    std::string id = prefix + std::to_string(counter++);
    if (n->label >= 0) companion[n->label] = id;
    CyclicNode node;
    node.sequent = n->seq;
    node.rule = n->rule;
    node.registered = n->registered;
    p.nodes[id] = node;
    std::vector<ChildRef> refs;
    for (const auto& k : n->kids) {
      if (k->bud >= 0) {
        auto it = companion.find(k->bud);
        if (it == companion.end())
          throw ConstructionError("bud below " + id + " has no companion among its ancestors");
        refs.push_back(ChildRef::to(it->second, k->seq));
      } else {
        refs.push_back(ChildRef::child(go(k)));
      }
    }
    p.nodes[id].children = std::move(refs);
    return id;
  };
  p.root = go(d);
  return p;
}

FiniteProof flatten_finite(const Deriv& d, const Theory& th, const std::string& prefix) {
  CyclicPreproof c = flatten(d, th, prefix);
  FiniteProof p;
  p.theory = th;
  p.root = c.root;
  for (auto& [id, n] : c.nodes) {
    ProofNode pn{n.sequent, n.rule, {}};
    for (const auto& ch : n.children) {
      if (ch.bud) throw ConstructionError("finite proof with a bud at " + id);
      pn.children.push_back(ch.id);
    }
    p.nodes[id] = std::move(pn);
  }
  return p;
}

Deriv unflatten(const CyclicPreproof& p) {
  std::map<std::string, int> labels;
  for (const auto& id : p.bud_targets())
    if (!labels.count(id)) labels[id] = new_label();
  std::function<Deriv(const std::string&, int)> go = [&](const std::string& id, int depth) {
    if (depth > 100000) throw ConstructionError("proof graph too deep or not a tree");
    auto it = p.nodes.find(id);
    if (it == p.nodes.end()) throw ConstructionError("unknown node " + id);
    const CyclicNode& n = it->second;
    auto d = std::make_shared<DNode>();
    d->seq = n.sequent;
    d->rule = n.rule;
    d->registered = n.registered;
    if (auto l = labels.find(id); l != labels.end()) d->label = l->second;
    for (const auto& c : n.children) {
      if (c.bud) {
        auto t = p.nodes.find(c.id);
        if (t == p.nodes.end()) throw ConstructionError("bud to unknown node " + c.id);
        d->kids.push_back(bud_leaf(t->second.sequent, labels.at(c.id)));
      } else {
        d->kids.push_back(go(c.id, depth + 1));
      }
    }
    return d;
  };
  return go(p.root, 0);
}

Deriv unflatten(const FiniteProof& p) {
  std::function<Deriv(const std::string&, int)> go = [&](const std::string& id, int depth) {
    if (depth > 100000) throw ConstructionError("proof too deep or not a tree");
    auto it = p.nodes.find(id);
    if (it == p.nodes.end()) throw ConstructionError("unknown node " + id);
    std::vector<Deriv> kids;
    for (const auto& c : it->second.children) kids.push_back(go(c, depth + 1));
    return make_step(it->second.sequent, it->second.rule, std::move(kids));
  };
  return go(p.root, 0);
}

// ---------------------------------------------------------------- bridges

Deriv bridge(const Sequent& target, Deriv d) {
  const Sequent& s = d->seq;
  for (const auto& x : s.ant) {
    if (cedent_contains(target.ant, x) || !cedent_contains(target.suc, dual(x))) continue;
    Deriv closed = leaf(extend(target, {}, {x}), rule_of(RuleTag::neg_right));
    return cut(target, x, closed, bridge(extend(target, {x}, {}), std::move(d)));
  }
  for (const auto& x : s.suc) {
    if (cedent_contains(target.suc, x) || !cedent_contains(target.ant, dual(x))) continue;
    Deriv closed = leaf(extend(target, {x}, {}), rule_of(RuleTag::neg_left));
    return cut(target, x, bridge(extend(target, {}, {x}), std::move(d)), closed);
  }
  return weaken(target, std::move(d));
}

// ---------------------------------------------------------------- equality reasoning

namespace {

Term at(const Term& u, const std::string& x, const Term& v) { return apply_subst({{x, v}}, u); }
Formula at(const Formula& f, const std::string& x, const Term& v) {
  return apply_subst({{x, v}}, f);
}

/// {l = r, P(u[l])} => P(u[r]) for a positive atom.
Deriv atom_congruence(const Formula& a, const std::string& x, const Term& l, const Term& r) {
  const Formula e = Formula::eq(l, r);
  const Formula al = at(a, x, l), ar = at(a, x, r);
  if (al == ar) return leaf(Sequent({e, al}, {ar}), rule_of(RuleTag::id));
  std::vector<Formula> eqs;
  std::vector<std::size_t> which;
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    Term ul = at(a.args()[i], x, l), ur = at(a.args()[i], x, r);
    if (ul == ur) continue;
    eqs.push_back(Formula::eq(ul, ur));
    which.push_back(i);
  }
  std::vector<Formula> ant{e, al};
  ant.insert(ant.end(), eqs.begin(), eqs.end());
  Deriv cur = leaf(Sequent(ant, {ar}), rule_of(RuleTag::eq3));
  for (std::size_t k = eqs.size(); k-- > 0;) {
    std::vector<Formula> base{e, al};
    base.insert(base.end(), eqs.begin(), eqs.begin() + static_cast<long>(k));
    Sequent s(base, {ar});
    cur = cut(s, eqs[k], term_congruence(a.args()[which[k]], x, l, r), cur);
  }
  return cur;
}

}  // namespace

Deriv symmetry(const Term& a, const Term& b) {
  Sequent s({Formula::eq(a, b)}, {Formula::eq(b, a)});
  if (a == b) return leaf(s, rule_of(RuleTag::id));
  Formula refl = Formula::eq(a, a);
  return cut(s, refl, leaf(extend(s, {}, {refl}), rule_of(RuleTag::eq1)),
             leaf(extend(s, {refl}, {}), rule_of(RuleTag::eq3)));
}

Deriv term_congruence(const Term& u, const std::string& x, const Term& l, const Term& r) {
  const Formula e = Formula::eq(l, r);
  const Term ul = at(u, x, l), ur = at(u, x, r);
  const Formula goal = Formula::eq(ul, ur);
  if (ul == ur) return leaf(Sequent({e}, {goal}), rule_of(RuleTag::eq1));
  if (u.kind() == TermKind::var) return leaf(Sequent({e}, {goal}), rule_of(RuleTag::id));
  std::vector<Formula> eqs;
  std::vector<std::size_t> which;
  for (std::size_t i = 0; i < u.args().size(); ++i) {
    Term al = at(u.args()[i], x, l), ar = at(u.args()[i], x, r);
    if (al == ar) continue;
    eqs.push_back(Formula::eq(al, ar));
    which.push_back(i);
  }
  std::vector<Formula> ant{e};
  ant.insert(ant.end(), eqs.begin(), eqs.end());
  Deriv cur = leaf(Sequent(ant, {goal}), rule_of(RuleTag::eq2));
  for (std::size_t k = eqs.size(); k-- > 0;) {
    std::vector<Formula> base{e};
    base.insert(base.end(), eqs.begin(), eqs.begin() + static_cast<long>(k));
    Sequent s(base, {goal});
    cur = cut(s, eqs[k], term_congruence(u.args()[which[k]], x, l, r), cur);
  }
  return cur;
}

Deriv congruence(const Formula& psi, const std::string& x, const Term& l, const Term& r,
                 NameSupply& names) {
  const Formula e = Formula::eq(l, r);
  const Formula pl = at(psi, x, l), pr = at(psi, x, r);
  const Sequent s({e, pl}, {pr});
  if (pl == pr) return leaf(s, rule_of(RuleTag::id));
  switch (psi.kind()) {
    case FormulaKind::atom:
      return atom_congruence(psi, x, l, r);
    case FormulaKind::neg_atom: {
      const Formula pos = dual(psi);
      const Formula posl = dual(pl), posr = dual(pr);
      Sequent s1 = extend(s, {posr}, {});
      Deriv inner = cut(s1, posl, congruence_reverse(pos, x, l, r, names),
                        leaf(extend(s1, {posl}, {}), rule_of(RuleTag::neg_left)));
      return cut(s, posr, leaf(extend(s, {}, {posr}), rule_of(RuleTag::neg_right)), inner);
    }
    case FormulaKind::conj: {
      std::vector<Deriv> kids;
      for (int i = 0; i < 2; ++i) {
        const Formula& part = i == 0 ? psi.left() : psi.right();
        Formula partl = at(part, x, l), partr = at(part, x, r);
        Sequent top = extend(s, {partl}, {partr});
        Sequent mid = extend(s, {}, {partr});
        kids.push_back(make_step(mid, rule_index(RuleTag::and_left, i, pl),
                                 {weaken(top, congruence(part, x, l, r, names))}));
      }
      return make_step(s, rule_witness(RuleTag::and_right, Term(), pr), std::move(kids));
    }
    case FormulaKind::disj: {
      std::vector<Deriv> kids;
      for (int i = 0; i < 2; ++i) {
        const Formula& part = i == 0 ? psi.left() : psi.right();
        Formula partl = at(part, x, l), partr = at(part, x, r);
        Sequent top = extend(s, {partl}, {partr});
        Sequent mid = extend(s, {partl}, {});
        kids.push_back(make_step(mid, rule_index(RuleTag::or_right, i, pr),
                                 {weaken(top, congruence(part, x, l, r, names))}));
      }
      return make_step(s, rule_witness(RuleTag::or_left, Term(), pl), std::move(kids));
    }
    case FormulaKind::all: {
      std::string a = names.fresh(psi.var());
      Term A = Term::var(a);
      Formula body = instantiate(psi, A);
      Sequent mid = extend(s, {}, {instantiate(pr, A)});
      Sequent top = extend(mid, {instantiate(pl, A)}, {});
      Deriv inner = make_step(mid, rule_witness(RuleTag::all_left, A, pl),
                              {weaken(top, congruence(body, x, l, r, names))});
      return make_step(s, rule_eigen(RuleTag::all_right, a, pr), {inner});
    }
    case FormulaKind::ex: {
      std::string a = names.fresh(psi.var());
      Term A = Term::var(a);
      Formula body = instantiate(psi, A);
      Sequent mid = extend(s, {instantiate(pl, A)}, {});
      Sequent top = extend(mid, {}, {instantiate(pr, A)});
      Deriv inner = make_step(mid, rule_witness(RuleTag::ex_right, A, pr),
                              {weaken(top, congruence(body, x, l, r, names))});
      return make_step(s, rule_eigen(RuleTag::ex_left, a, pl), {inner});
    }
    case FormulaKind::ball: {
      std::string a = names.fresh(psi.var());
      Term A = Term::var(a);
      Formula guard = Formula::lt(A, psi.bound());
      Formula gl = at(guard, x, l), gr = at(guard, x, r);
      Sequent s1 = extend(s, {gr}, {instantiate(pr, A)});
      Sequent s2 = extend(s1, {gl}, {});
      Deriv use = make_step(s2, rule_witness(RuleTag::ball_left, A, pl),
                            {weaken(extend(s2, {instantiate(pl, A)}, {}),
                                    congruence(instantiate(psi, A), x, l, r, names))});
      Deriv c = cut(s1, gl, congruence_reverse(guard, x, l, r, names), use);
      return make_step(s, rule_eigen(RuleTag::ball_right, a, pr), {c});
    }
    case FormulaKind::bex: {
      std::string a = names.fresh(psi.var());
      Term A = Term::var(a);
      Formula guard = Formula::lt(A, psi.bound());
      Formula gl = at(guard, x, l), gr = at(guard, x, r);
      Sequent s1 = extend(s, {gl, instantiate(pl, A)}, {});
      Sequent s2 = extend(s1, {gr}, {});
      Deriv use = make_step(s2, rule_witness(RuleTag::bex_right, A, pr),
                            {weaken(extend(s2, {}, {instantiate(pr, A)}),
                                    congruence(instantiate(psi, A), x, l, r, names))});
      Deriv c = cut(s1, gr, congruence(guard, x, l, r, names), use);
      return make_step(s, rule_eigen(RuleTag::bex_left, a, pl), {c});
    }
  }
  throw ConstructionError("congruence: unhandled formula");
}

Deriv congruence_reverse(const Formula& psi, const std::string& x, const Term& l, const Term& r,
                         NameSupply& names) {
  const Formula pl = at(psi, x, l), pr = at(psi, x, r);
  Sequent s({Formula::eq(l, r), pr}, {pl});
  if (pl == pr) return leaf(s, rule_of(RuleTag::id));
  Formula back = Formula::eq(r, l);
  return cut(s, back, symmetry(l, r), congruence(psi, x, r, l, names));
}

}  // namespace carith
