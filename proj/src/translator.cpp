#include "carith/translator.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "carith/automata.hpp"
#include "carith/deriv.hpp"

namespace carith {

TranslationError::TranslationError(std::string c, std::string n, const std::string& msg)
    : std::runtime_error(c + (n.empty() ? "" : " at " + n) + ": " + msg),
      code(std::move(c)),
      node(std::move(n)) {}

namespace {

/// The annotated principal, or the first candidate that makes the step check.
Formula find_principal(const DNode& d, const Theory* th) {
  if (d.rule.principal.valid()) return d.rule.principal;
  std::vector<Sequent> prem;
  for (const auto& k : d.kids) prem.push_back(k->seq);
  static const std::map<RuleTag, std::pair<bool, FormulaKind>> shape = {
      {RuleTag::or_left, {true, FormulaKind::disj}},   {RuleTag::or_right, {false, FormulaKind::disj}},
      {RuleTag::and_left, {true, FormulaKind::conj}},  {RuleTag::and_right, {false, FormulaKind::conj}},
      {RuleTag::ex_left, {true, FormulaKind::ex}},     {RuleTag::ex_right, {false, FormulaKind::ex}},
      {RuleTag::all_left, {true, FormulaKind::all}},   {RuleTag::all_right, {false, FormulaKind::all}},
      {RuleTag::bex_left, {true, FormulaKind::bex}},   {RuleTag::bex_right, {false, FormulaKind::bex}},
      {RuleTag::ball_left, {true, FormulaKind::ball}}, {RuleTag::ball_right, {false, FormulaKind::ball}},
  };
  auto it = shape.find(d.rule.tag);
  if (it == shape.end()) return Formula();
  const auto& [left, kind] = it->second;
  for (const auto& f : left ? d.seq.ant : d.seq.suc) {
    if (f.kind() != kind) continue;
    RuleInstance r = d.rule;
    r.principal = f;
    if (!check_step(d.seq, r, prem, th)) return f;
  }
  return Formula();
}

bool is_logical(RuleTag t) {
  switch (t) {
    case RuleTag::or_left: case RuleTag::or_right: case RuleTag::and_left: case RuleTag::and_right:
    case RuleTag::ex_left: case RuleTag::ex_right: case RuleTag::all_left: case RuleTag::all_right:
    case RuleTag::bex_left: case RuleTag::bex_right: case RuleTag::ball_left: case RuleTag::ball_right:
      return true;
    default:
      return false;
  }
}

bool has_bud(const Deriv& d) {
  if (d->bud >= 0) return true;
  for (const auto& k : d->kids)
    if (has_bud(k)) return true;
  return false;
}

void require_local(const CyclicPreproof& p, const std::string& what, bool allow_assumptions) {
  auto errs = check_local(p, allow_assumptions);
  if (!errs.empty())
    throw InvariantError(what + " produced a locally incorrect step at " + errs.front().node +
                         ": " + errs.front().message);
}

// ---------------------------------------------------------------- dualization

RuleTag dual_tag(RuleTag t) {
  switch (t) {
    case RuleTag::and_left: return RuleTag::or_right;
    case RuleTag::or_right: return RuleTag::and_left;
    case RuleTag::or_left: return RuleTag::and_right;
    case RuleTag::and_right: return RuleTag::or_left;
    case RuleTag::ex_left: return RuleTag::all_right;
    case RuleTag::all_right: return RuleTag::ex_left;
    case RuleTag::ex_right: return RuleTag::all_left;
    case RuleTag::all_left: return RuleTag::ex_right;
    case RuleTag::bex_left: return RuleTag::ball_right;
    case RuleTag::ball_right: return RuleTag::bex_left;
    case RuleTag::bex_right: return RuleTag::ball_left;
    case RuleTag::ball_left: return RuleTag::bex_right;
    default: return t;
  }
}

struct Active {
  Formula f;
  bool left;
};

/// Formulas the premisses of a logical step add, per premiss.
std::vector<std::vector<Active>> actives(const RuleInstance& r, const Formula& p) {
  switch (r.tag) {
    case RuleTag::and_left:
      return {{{r.index == 0 ? p.left() : p.right(), true}}};
    case RuleTag::or_right:
      return {{{r.index == 0 ? p.left() : p.right(), false}}};
    case RuleTag::and_right:
      return {{{p.left(), false}}, {{p.right(), false}}};
    case RuleTag::or_left:
      return {{{p.left(), true}}, {{p.right(), true}}};
    case RuleTag::ex_left:
    case RuleTag::all_left:
      return {{{instantiate(p, r.tag == RuleTag::ex_left ? Term::var(r.eigen) : r.witness), true}}};
    case RuleTag::all_right:
    case RuleTag::ex_right:
      return {{{instantiate(p, r.tag == RuleTag::all_right ? Term::var(r.eigen) : r.witness), false}}};
    case RuleTag::bex_left: {
      Term a = Term::var(r.eigen);
      return {{{Formula::lt(a, p.bound()), true}, {instantiate(p, a), true}}};
    }
    case RuleTag::ball_right: {
      Term a = Term::var(r.eigen);
      return {{{Formula::lt(a, p.bound()), true}, {instantiate(p, a), false}}};
    }
    case RuleTag::bex_right:
      return {{{instantiate(p, r.witness), false}}};
    case RuleTag::ball_left:
      return {{{instantiate(p, r.witness), true}}};
    default:
      return {};
  }
}

bool is_guard(const RuleInstance& r, const Formula& p, const Formula& f) {
  if (r.tag != RuleTag::bex_left && r.tag != RuleTag::ball_right) return false;
  return f == Formula::lt(Term::var(r.eigen), p.bound());
}

Deriv dualize_tree(const Deriv& d, const Theory& th) {
  const Sequent t = dual_sequent(d->seq);
  if (d->bud >= 0) return bud_leaf(t, d->bud);
  const RuleInstance& r = d->rule;
  Deriv out;
  if (rule_arity(r.tag) == 0) {
    out = r.tag == RuleTag::assumption ? assume(t) : bridge(t, leaf(d->seq, r));
  } else if (r.tag == RuleTag::wk || r.tag == RuleTag::sub) {
    out = make_step(t, r, {dualize_tree(d->kids[0], th)});
  } else if (r.tag == RuleTag::cut) {
    Formula x = dual(r.formula);
    RuleInstance rr = r;
    rr.formula = x;
    Sequent n0 = extend(t, {}, {x}), n1 = extend(t, {x}, {});
    out = make_step(t, rr, {bridge(n0, dualize_tree(d->kids[1], th)),
                            bridge(n1, dualize_tree(d->kids[0], th))});
  } else if (is_logical(r.tag)) {
    Formula p = find_principal(*d, &th);
    if (!p.valid()) throw TranslationError("invalid-input", "", "no principal formula for " + to_string(r));
    RuleInstance rr = r;
    rr.tag = dual_tag(r.tag);
    rr.principal = dual(p);
    auto acts = actives(r, p);
    std::vector<Deriv> kids;
    for (std::size_t j = 0; j < d->kids.size(); ++j) {
      std::vector<Formula> ant, suc;
      for (const auto& a : acts[j]) {
        if (is_guard(r, p, a.f)) ant.push_back(a.f);
        else if (a.left) suc.push_back(dual(a.f));
        else ant.push_back(dual(a.f));
      }
      kids.push_back(bridge(extend(t, ant, suc), dualize_tree(d->kids[j], th)));
    }
    out = make_step(t, rr, std::move(kids));
  } else {
    throw TranslationError("unsupported-rule", "", to_string(r.tag) + " cannot be dualized");
  }
  if (out->seq == t) {
    out->label = d->label;
    out->registered = d->registered;
  } else {
    throw InvariantError("dualization lost the sequent " + to_string(t));
  }
  return out;
}

// ---------------------------------------------------------------- induction cycle

struct Gadget {
  Cedent gamma, delta;
  std::string b, c;
  /// Formula with b free.
  Formula phi_b;
  Sequent root;
  Substitution root_theta;
  Deriv base;
  /// Derivation of Gamma => Delta, phi(s c) given the companion label and sequent.
  std::function<Deriv(int, const Sequent&)> step;
};

Deriv build_gadget(const Gadget& g, NameSupply& names, const GadgetOptions& opt) {
  const Term B = Term::var(g.b), C = Term::var(g.c), SC = Term::succ(C);
  auto phi = [&](const Term& t) { return apply_subst({{g.b, t}}, g.phi_b); };
  const Sequent bullet(g.gamma, cedent_union(g.delta, {g.phi_b}));
  const int label = new_label();

  const Formula zero = Formula::eq(B, Term::zero());
  Sequent q3 = q_axiom_instance(3, B);
  Formula pred;
  for (const auto& f : q3.suc)
    if (f.kind() == FormulaKind::bex) pred = f;

  // b = 0
  Sequent s_zero = extend(bullet, {zero}, {});
  Deriv zero_case = cut(s_zero, phi(Term::zero()), g.base,
                        congruence_reverse(g.phi_b, g.b, B, Term::zero(), names));

  // b = s c with c < b
  Sequent s_left = extend(bullet, {}, {zero});
  Sequent s_pred = extend(s_left, {pred}, {});
  Sequent s_desc = extend(s_pred, {Formula::lt(C, B), Formula::eq(B, SC)}, {});
  Sequent s_step(g.gamma, cedent_union(g.delta, {phi(SC)}));
  Deriv step = opt.drop_descent
                   ? substitute(s_step, {{g.b, SC}}, bud_leaf(bullet, label))
                   : g.step(label, bullet);
  if (!(step->seq == s_step) && !opt.drop_descent)
    throw InvariantError("induction step concludes " + to_string(step->seq) + ", expected " +
                         to_string(s_step));
  Deriv inner = cut(s_desc, phi(SC), step, congruence_reverse(g.phi_b, g.b, B, SC, names));
  register_all(inner, C);
  Deriv desc = make_step(s_pred, rule_eigen(RuleTag::bex_left, g.c, pred), {inner});
  Deriv succ_case = cut(s_left, pred, leaf(extend(s_left, {}, {pred}), rule_q(3)), desc);

  Deriv top = cut(bullet, zero, succ_case, zero_case);
  top->label = label;
  top->registered.push_back(B);
  return substitute(g.root, g.root_theta, top);
}

/// The hypothesis phi(c), obtained from the companion by renaming b to c.
Deriv close_hypothesis(const Sequent& target, const Substitution& theta, int label,
                       const Sequent& bullet) {
  return substitute(target, theta, bud_leaf(bullet, label));
}

// ---------------------------------------------------------------- lift

class Lifter {
 public:
  Lifter(const FiniteProof& p, unsigned n, GadgetOptions opt) : n_(n), opt_(opt), th_(p.theory) {
    Deriv d = unflatten(p);
    names_.reserve(d);
    input_ = hygiene(d);
    FiniteProof renamed = flatten_finite(input_, th_);
    if (!check_proof(renamed).ok) throw InvariantError("renaming eigenvariables broke the input proof");
  }

  const Deriv& input() const { return input_; }
  NameSupply& names() { return names_; }
  const Theory& theory() const { return th_; }

  bool sigma(const Formula& f) const { return is_in_level(f, HierarchyLevel::sigma(n_)); }

  /// Number of outer universal binders to strip before the body is Sigma_n.
  std::size_t block(const Formula& g, const std::string& node) const {
    std::size_t k = 0;
    Formula f = g;
    while (!sigma(f)) {
      if (f.kind() != FormulaKind::all)
        throw TranslationError("fragment", node,
                               to_string(g) + " is neither Sigma_" + std::to_string(n_) +
                                   " nor a universal block over a Sigma_" + std::to_string(n_) +
                                   " formula");
      f = f.body();
      ++k;
    }
    return k;
  }

  const std::vector<std::string>& opening(const Formula& g, const std::string& node) {
    auto it = open_vars_.find(g);
    if (it != open_vars_.end()) return it->second;
    std::vector<std::string> vars;
    Formula f = g;
    for (std::size_t i = 0, k = block(g, node); i < k; ++i) {
      vars.push_back(names_.fresh(f.var()));
      f = f.body();
    }
    return open_vars_[g] = vars;
  }

  static Formula open_with(const Formula& g, const std::vector<std::string>& vars) {
    Formula f = g;
    for (const auto& v : vars) f = instantiate(f, Term::var(v));
    return f;
  }

  Formula open(const Formula& g, const std::string& node) { return open_with(g, opening(g, node)); }

  /// Sigma parts of c plus the opened Pi formulas of its succedent.
  Sequent lifted(const Sequent& c, const std::string& node) {
    Sequent s;
    for (const auto& f : c.ant)
      if (sigma(f)) s.ant.push_back(f);
    for (const auto& f : c.suc) s.suc.push_back(sigma(f) ? f : open(f, node));
    return Sequent(s.ant, s.suc);
  }

  Sequent sigma_part(const Sequent& c) {
    std::vector<Formula> a, s;
    for (const auto& f : c.ant)
      if (sigma(f)) a.push_back(f);
    for (const auto& f : c.suc)
      if (sigma(f)) s.push_back(f);
    return Sequent(a, s);
  }

  Deriv go(const Deriv& d);
  Deriv induction(const Deriv& d, const Sequent& lc);

 private:
  /// Rename every eigenvariable, substitution support and induction hole to a fresh name.
  Deriv hygiene(const Deriv& d) {
    auto n = std::make_shared<DNode>(*d);
    for (auto& k : n->kids) k = hygiene(k);
    RuleInstance& r = n->rule;
    Substitution ren;
    switch (r.tag) {
      case RuleTag::ex_left:
      case RuleTag::all_right:
      case RuleTag::bex_left:
      case RuleTag::ball_right:
      case RuleTag::ind: {
        std::string a = names_.fresh(r.eigen);
        ren[r.eigen] = Term::var(a);
        r.eigen = a;
        if (r.tag == RuleTag::ind) {
          std::string h = names_.fresh(r.hole);
          r.formula = apply_subst({{r.hole, Term::var(h)}}, r.formula);
          r.hole = h;
        }
        break;
      }
      case RuleTag::sub: {
        Substitution theta;
        for (const auto& [x, t] : r.theta) {
          std::string y = names_.fresh(x);
          ren[x] = Term::var(y);
          theta[y] = t;
        }
        r.theta = std::move(theta);
        break;
      }
      default:
        break;
    }
    if (!ren.empty())
      for (auto& k : n->kids) k = subst_tree(k, ren);
    return n;
  }

  unsigned n_;
  GadgetOptions opt_;
  Theory th_;
  NameSupply names_;
  Deriv input_;
  std::map<Formula, std::vector<std::string>> open_vars_;
  std::size_t counter_ = 0;
};

Deriv Lifter::go(const Deriv& d) {
  const std::string where = "input node " + std::to_string(counter_++);
  const Sequent& c = d->seq;
  const RuleInstance& r = d->rule;
  const Sequent lc = lifted(c, where);
  auto kid = [&](std::size_t i) { return extend_all(go(d->kids[i]), lc); };

  if (r.tag == RuleTag::assumption)
    throw TranslationError("unsupported-rule", where, "open assumption in the input proof");
  if (rule_arity(r.tag) == 0) {
    if (!check_step(lc, r, {}, &th_)) return leaf(lc, r);
    if (r.tag == RuleTag::id)
      for (const auto& f : c.ant)
        if (!sigma(f) && cedent_contains(c.suc, f)) return assume(lc, f);
    throw TranslationError("unsupported-rule", where,
                           to_string(r.tag) + " does not survive opening its universal formulas");
  }

  switch (r.tag) {
    case RuleTag::wk:
      return kid(0);
    case RuleTag::sub: {
      const Sequent& p = d->kids[0]->seq;
      for (const auto& f : p.ant)
        if (!sigma(f))
          throw TranslationError("unsupported-rule", where,
                                 "substitution over a universal antecedent formula");
      Substitution theta = r.theta;
      for (const auto& f : p.suc) {
        if (sigma(f)) continue;
        const auto& from = opening(f, where);
        const auto& to = opening(apply_subst(r.theta, f), where);
        for (std::size_t i = 0; i < from.size(); ++i) theta[from[i]] = Term::var(to[i]);
      }
      RuleInstance rr = r;
      rr.theta = theta;
      return make_step(lc, rr, {go(d->kids[0])});
    }
    case RuleTag::cut: {
      const Formula& f = r.formula;
      if (sigma(f)) return make_step(lc, r, {kid(0), kid(1)});
      Deriv proves = kid(0);
      Deriv uses = extend_all(go(d->kids[1]), lc);
      return plug(uses, f, [&](const Sequent& s) { return weaken(s, copy(proves)); });
    }
    case RuleTag::ind:
      return induction(d, lc);
    default:
      break;
  }

  if (!is_logical(r.tag))
    throw TranslationError("unsupported-rule", where, to_string(r.tag) + " is not handled");
  Formula p = find_principal(*d, &th_);
  if (!p.valid()) throw TranslationError("invalid-input", where, "no principal formula");
  if (sigma(p)) {
    RuleInstance rr = r;
    rr.principal = p;
    std::vector<Deriv> kids;
    for (std::size_t i = 0; i < d->kids.size(); ++i) kids.push_back(kid(i));
    return make_step(lc, rr, std::move(kids));
  }

  if (r.tag == RuleTag::all_right) {
    const auto& o = opening(p, where);
    Formula active = instantiate(p, Term::var(r.eigen));
    Substitution theta{{r.eigen, Term::var(o[0])}};
    if (!sigma(active)) {
      const auto& o2 = opening(active, where);
      for (std::size_t i = 0; i < o2.size(); ++i) theta[o2[i]] = Term::var(o[i + 1]);
    }
    return substitute(lc, theta, kid(0));
  }
  if (r.tag == RuleTag::all_left) {
    const auto& o = opening(p, where);
    Formula active = instantiate(p, r.witness);
    Deriv premiss = kid(0);
    if (sigma(active)) {
      Sequent hyp = extend(lc, {}, {open(p, where)});
      Deriv left = substitute(extend(lc, {}, {active}), {{o[0], r.witness}}, assume(hyp, p));
      return cut(lc, active, left, premiss);
    }
    Sequent ctx = sigma_part(c);
    const auto& o2 = opening(active, where);
    Substitution theta{{o[0], r.witness}};
    for (std::size_t i = 0; i < o2.size(); ++i) theta[o[i + 1]] = Term::var(o2[i]);
    Sequent inst = extend(ctx, {}, {open(active, where)});
    Sequent hyp = extend(ctx, {}, {open(p, where)});
    return plug(premiss, active, [&](const Sequent& s) {
      return weaken(s, substitute(inst, theta, assume(hyp, p)));
    });
  }
  throw TranslationError("unsupported-rule", where,
                         to_string(r.tag) + " on the universal formula " + to_string(p));
}

Deriv Lifter::induction(const Deriv& d, const Sequent& lc) {
  const std::string where = "input node " + std::to_string(counter_);
  const RuleInstance& r = d->rule;
  const std::string a = r.eigen;
  const Term A = Term::var(a), SA = Term::succ(A);
  auto inst = [&](const Term& t) { return apply_subst({{r.hole, t}}, r.formula); };
  Gadget g;
  g.gamma = lc.ant;
  g.delta = lc.suc;
  g.b = names_.fresh("b");
  g.c = a;
  g.root = lc;
  const Term B = Term::var(g.b);
  Deriv base = extend_all(go(d->kids[0]), lc);
  Deriv step = extend_all(go(d->kids[1]), lc);

  if (sigma(inst(r.witness))) {
    g.phi_b = inst(B);
    g.root_theta = {{g.b, r.witness}};
    g.base = base;
    Sequent target(lc.ant, cedent_union(lc.suc, {inst(SA)}));
    Sequent hyp(lc.ant, cedent_union(lc.suc, {inst(A)}));
    g.step = [=](int label, const Sequent& bullet) {
      return cut(target, inst(A), close_hypothesis(hyp, {{g.b, A}}, label, bullet), step);
    };
    return build_gadget(g, names_, opt_);
  }

  const std::size_t k = block(inst(r.witness), where);
  std::vector<std::string> ob;
  {
    Formula f = inst(B);
    for (std::size_t i = 0; i < k; ++i) {
      ob.push_back(names_.fresh(f.var()));
      f = f.body();
    }
  }
  auto rename = [&](const Formula& f) {
    Substitution s;
    const auto& o = opening(f, where);
    for (std::size_t i = 0; i < k; ++i) s[o[i]] = Term::var(ob[i]);
    return s;
  };
  g.phi_b = open_with(inst(B), ob);
  auto phi = [&](const Term& t) { return apply_subst({{g.b, t}}, g.phi_b); };
  // root: b -> t, and the companion's opening variables to those of phi(t)
  {
    Substitution s{{g.b, r.witness}};
    const auto& ot = opening(inst(r.witness), where);
    for (std::size_t i = 0; i < k; ++i) s[ob[i]] = Term::var(ot[i]);
    g.root_theta = s;
  }
  g.base = substitute(Sequent(lc.ant, cedent_union(lc.suc, {phi(Term::zero())})),
                      rename(inst(Term::zero())), base);
  Formula hyp_formula = inst(A);
  Sequent hyp(lc.ant, cedent_union(lc.suc, {open(hyp_formula, where)}));
  Substitution to_hyp{{g.b, A}};
  {
    const auto& oa = opening(hyp_formula, where);
    for (std::size_t i = 0; i < k; ++i) to_hyp[ob[i]] = Term::var(oa[i]);
  }
  Sequent target(lc.ant, cedent_union(lc.suc, {phi(SA)}));
  Substitution to_target = rename(inst(SA));
  g.step = [=](int label, const Sequent& bullet) {
    Deriv plugged = plug(step, hyp_formula, [&](const Sequent& s) {
      return weaken(s, close_hypothesis(hyp, to_hyp, label, bullet));
    });
    return substitute(target, to_target, plugged);
  };
  return build_gadget(g, names_, opt_);
}

}  // namespace

// ---------------------------------------------------------------- public operations

Sequent dual_sequent(const Sequent& s) {
  std::vector<Formula> ant, suc;
  for (const auto& f : s.ant) {
    if (f.is_atomic()) ant.push_back(f);
    else suc.push_back(dual(f));
  }
  for (const auto& f : s.suc) ant.push_back(dual(f));
  return Sequent(ant, suc);
}

CyclicPreproof dualize(const CyclicPreproof& p, unsigned n) {
  for (const auto& [id, node] : p.nodes)
    for (const auto* side : {&node.sequent.ant, &node.sequent.suc})
      for (const auto& f : *side)
        if (!is_in_level(f, HierarchyLevel::sigma(n)) && !is_in_level(f, HierarchyLevel::pi(n)))
          throw TranslationError("fragment", id,
                                 to_string(f) + " is neither Sigma_" + std::to_string(n) +
                                     " nor Pi_" + std::to_string(n));
  Deriv d = dualize_tree(unflatten(p), p.theory);
  CyclicPreproof out = flatten(d, p.theory);
  require_local(out, "dualization", true);
  return out;
}

InductionSpec induction_spec(const FiniteProof& p) {
  const ProofNode& root = p.nodes.at(p.root);
  if (root.rule.tag != RuleTag::ind)
    throw TranslationError("precondition", p.root, "the root is not an induction step");
  if (root.children.size() != 2)
    throw TranslationError("precondition", p.root, "induction needs two premisses");
  InductionSpec s;
  s.formula = root.rule.formula;
  s.hole = root.rule.hole;
  s.term = root.rule.witness;
  s.eigen = root.rule.eigen;
  Formula goal = apply_subst({{s.hole, s.term}}, s.formula);
  s.gamma = root.sequent.ant;
  s.delta = cedent_minus(root.sequent.suc, {goal});
  auto sub = [&](const std::string& id) {
    FiniteProof q;
    q.theory = p.theory;
    q.root = id;
    std::vector<std::string> stack{id};
    while (!stack.empty()) {
      std::string x = stack.back();
      stack.pop_back();
      const ProofNode& n = p.nodes.at(x);
      q.nodes[x] = n;
      for (const auto& c : n.children) stack.push_back(c);
    }
    return flatten(unflatten(q), p.theory, id + ".");
  };
  s.base = sub(root.children[0]);
  s.step = sub(root.children[1]);
  return s;
}

CyclicPreproof simulate_induction(const InductionSpec& spec, const GadgetOptions& opt) {
  auto at = [&](const Term& t) { return apply_subst({{spec.hole, t}}, spec.formula); };
  const Term A = Term::var(spec.eigen);
  Sequent base_goal(spec.gamma, cedent_union(spec.delta, {at(Term::zero())}));
  Sequent step_goal(cedent_union(spec.gamma, {at(A)}), cedent_union(spec.delta, {at(Term::succ(A))}));
  Deriv base = unflatten(spec.base), step = unflatten(spec.step);
  auto contained = [](const Sequent& a, const Sequent& b) {
    return cedent_subset(a.ant, b.ant) && cedent_subset(a.suc, b.suc);
  };
  if (!contained(base->seq, base_goal))
    throw TranslationError("precondition", spec.base.root,
                           "base concludes " + to_string(base->seq) + ", expected " + to_string(base_goal));
  if (!contained(step->seq, step_goal))
    throw TranslationError("precondition", spec.step.root,
                           "step concludes " + to_string(step->seq) + ", expected " + to_string(step_goal));
  Sequent ctx(spec.gamma, spec.delta);
  if (ctx.has_free_var(spec.eigen) || spec.term.has_var(spec.eigen))
    throw TranslationError("precondition", spec.step.root,
                           "eigenvariable " + spec.eigen + " occurs in the context or the term");

  NameSupply names;
  names.reserve(base);
  names.reserve(step);
  names.reserve(ctx);
  names.reserve(spec.formula);
  names.reserve(spec.term);
  names.reserve(spec.hole);
  names.reserve(spec.eigen);

  Gadget g;
  g.gamma = spec.gamma;
  g.delta = spec.delta;
  g.b = names.fresh("b");
  g.c = spec.eigen;
  const Term B = Term::var(g.b);
  g.phi_b = at(B);
  g.root = Sequent(spec.gamma, cedent_union(spec.delta, {at(spec.term)}));
  g.root_theta = {{g.b, spec.term}};
  g.base = weaken(base_goal, base);
  Sequent target(spec.gamma, cedent_union(spec.delta, {at(Term::succ(A))}));
  Sequent hyp(spec.gamma, cedent_union(spec.delta, {at(A)}));
  Deriv step_full = weaken(step_goal, step);
  g.step = [&](int label, const Sequent& bullet) {
    return cut(target, at(A), close_hypothesis(hyp, {{g.b, A}}, label, bullet), step_full);
  };
  CyclicPreproof out = flatten(build_gadget(g, names, opt), spec.base.theory);
  require_local(out, "induction simulation", true);
  return out;
}

namespace {

struct Lifted {
  Deriv deriv;
  std::vector<Sequent> assumptions;
  /// Opening variables of the universal formulas of the conclusion.
  std::map<Formula, std::vector<std::string>> openings;
};

Lifted lift_tree(const FiniteProof& p, unsigned n, const GadgetOptions& opt) {
  ProofReport rep = check_proof(p);
  if (!rep.ok)
    throw TranslationError("invalid-input", rep.errors.front().node, rep.errors.front().message);
  if (!rep.assumptions.empty())
    throw TranslationError("invalid-input", rep.assumptions.front().first, "open assumption");
  if (auto e = validate_fragment(p, n, FragmentMode::lift_conclusion))
    throw TranslationError(e->formula.valid() ? "free-cut-precondition" : "shape", e->node, e->message);

  Lifter lifter(p, n, opt);
  Lifted out;
  Deriv d = lifter.go(lifter.input());
  const Sequent ctx = lifter.sigma_part(p.conclusion());

  std::function<Deriv(const Deriv&)> normalize = [&](const Deriv& x) -> Deriv {
    if (x->bud < 0 && x->rule.tag == RuleTag::assumption) {
      Sequent a = extend(ctx, {}, {lifter.open(*x->key, "")});
      if (std::find(out.assumptions.begin(), out.assumptions.end(), a) == out.assumptions.end())
        out.assumptions.push_back(a);
      return weaken(x->seq, assume(a, x->key));
    }
    auto n2 = std::make_shared<DNode>(*x);
    for (auto& k : n2->kids) k = normalize(k);
    return n2;
  };
  out.deriv = normalize(d);
  for (const auto& f : p.conclusion().suc)
    if (!lifter.sigma(f)) out.openings[f] = lifter.opening(f, p.root);
  return out;
}

}  // namespace

LiftResult lift(const FiniteProof& p, unsigned n, const GadgetOptions& opt) {
  Lifted l = lift_tree(p, n, opt);
  LiftResult out{flatten(l.deriv, p.theory), l.assumptions};
  require_local(out.derivation, "lift", true);
  return out;
}

CyclicPreproof translate(const FiniteProof& p, unsigned n, const GadgetOptions& opt) {
  const Sequent& c = p.conclusion();
  if (!c.ant.empty())
    throw TranslationError("shape", p.root, "the conclusion must have an empty antecedent");
  if (auto e = validate_fragment(p, n, FragmentMode::all_pi))
    throw TranslationError("free-cut-precondition", e->node, e->message);
  Lifted l = lift_tree(p, n, opt);
  if (!l.assumptions.empty())
    throw InvariantError("lift left assumptions although the antecedent is empty");

  // Close each opened formula again with all-right steps on its opening variables.
  Deriv cur = l.deriv;
  for (const auto& [g, vars] : l.openings) {
    std::vector<Formula> hs{g};
    for (const auto& v : vars) hs.push_back(instantiate(hs.back(), Term::var(v)));
    for (std::size_t i = vars.size(); i > 0; --i) {
      Sequent below(cur->seq.ant, cedent_union(cedent_minus(cur->seq.suc, {hs[i]}), {hs[i - 1]}));
      cur = make_step(below, rule_eigen(RuleTag::all_right, vars[i - 1], hs[i - 1]), {cur});
    }
  }
  if (!(cur->seq == c))
    throw InvariantError("translation concludes " + to_string(cur->seq) + " instead of " + to_string(c));
  CyclicPreproof out = flatten(cur, p.theory);
  require_local(out, "translation", false);
  return out;
}

std::optional<FragmentError> validate_translation(const CyclicPreproof& p, unsigned n) {
  const HierarchyLevel sig = HierarchyLevel::sigma(n);
  std::set<std::string> spine;
  std::string cur = p.root;
  while (true) {
    const CyclicNode& node = p.nodes.at(cur);
    bool closure = false;
    for (const auto& f : node.sequent.suc)
      if (!is_in_level(f, sig)) closure = true;
    if (!closure || node.rule.tag != RuleTag::all_right || node.children.size() != 1) break;
    spine.insert(cur);
    cur = node.children[0].id;
  }
  for (const auto& [id, node] : p.nodes)
    for (const auto* side : {&node.sequent.ant, &node.sequent.suc})
      for (const auto& f : *side) {
        if (is_in_level(f, sig)) continue;
        if (spine.count(id) && side == &node.sequent.suc && !check_lift_shape(Sequent({}, {f}), n))
          continue;
        return FragmentError{id, f,
                             "formula " + to_string(f) + " is " + to_string(classify(f)) +
                                 ", outside " + to_string(sig)};
      }
  return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> bound_variables(const CyclicPreproof& p) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [id, node] : p.nodes)
    for (const auto& x : node.rule.eigenvariables()) out.emplace_back(id, x);
  return out;
}

}  // namespace carith
