#include "carith/calculus.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace carith {

// ---------------------------------------------------------------- cedents and sequents

Cedent make_cedent(std::vector<Formula> fs) {
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  return fs;
}

bool cedent_contains(const Cedent& c, const Formula& f) {
  return std::binary_search(c.begin(), c.end(), f);
}

bool cedent_subset(const Cedent& a, const Cedent& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Cedent cedent_union(const Cedent& a, const Cedent& b) {
  Cedent out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Cedent cedent_minus(const Cedent& a, const Cedent& b) {
  Cedent out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Sequent::Sequent(std::vector<Formula> a, std::vector<Formula> s)
    : ant(make_cedent(std::move(a))), suc(make_cedent(std::move(s))) {}

std::vector<std::string> Sequent::free_vars() const {
  std::set<std::string> out;
  for (const auto& f : ant) out.insert(f.free_vars().begin(), f.free_vars().end());
  for (const auto& f : suc) out.insert(f.free_vars().begin(), f.free_vars().end());
  return {out.begin(), out.end()};
}

bool Sequent::has_free_var(const std::string& x) const {
  for (const auto& f : ant)
    if (f.has_free_var(x)) return true;
  for (const auto& f : suc)
    if (f.has_free_var(x)) return true;
  return false;
}

std::vector<Term> Sequent::terms() const {
  std::vector<Term> out;
  for (const auto* side : {&ant, &suc})
    for (const auto& f : *side) {
      auto ts = free_subterms(f);
      out.insert(out.end(), ts.begin(), ts.end());
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Sequent apply_subst(const Substitution& theta, const Sequent& s) {
  std::vector<Formula> a, b;
  for (const auto& f : s.ant) a.push_back(apply_subst(theta, f));
  for (const auto& f : s.suc) b.push_back(apply_subst(theta, f));
  return Sequent(std::move(a), std::move(b));
}

Sequent extend(const Sequent& s, const std::vector<Formula>& ant, const std::vector<Formula>& suc) {
  std::vector<Formula> a(s.ant.begin(), s.ant.end());
  std::vector<Formula> b(s.suc.begin(), s.suc.end());
  a.insert(a.end(), ant.begin(), ant.end());
  b.insert(b.end(), suc.begin(), suc.end());
  return Sequent(std::move(a), std::move(b));
}

std::string to_string(const Sequent& s) {
  std::string out = "(seq (";
  for (std::size_t i = 0; i < s.ant.size(); ++i) out += (i ? " " : "") + to_string(s.ant[i]);
  out += ") (";
  for (std::size_t i = 0; i < s.suc.size(); ++i) out += (i ? " " : "") + to_string(s.suc[i]);
  return out + "))";
}

// ---------------------------------------------------------------- rule tags

namespace {

const std::vector<std::pair<RuleTag, std::string>>& tag_names() {
  static const std::vector<std::pair<RuleTag, std::string>> names = {
      {RuleTag::id, "id"},
      {RuleTag::eq1, "eq1"},
      {RuleTag::eq2, "eq2"},
      {RuleTag::eq3, "eq3"},
      {RuleTag::neg_left, "neg-left"},
      {RuleTag::neg_right, "neg-right"},
      {RuleTag::or_left, "or-left"},
      {RuleTag::or_right, "or-right"},
      {RuleTag::and_left, "and-left"},
      {RuleTag::and_right, "and-right"},
      {RuleTag::ex_left, "ex-left"},
      {RuleTag::ex_right, "ex-right"},
      {RuleTag::all_left, "all-left"},
      {RuleTag::all_right, "all-right"},
      {RuleTag::bex_left, "bex-left"},
      {RuleTag::bex_right, "bex-right"},
      {RuleTag::ball_left, "ball-left"},
      {RuleTag::ball_right, "ball-right"},
      {RuleTag::sub, "sub"},
      {RuleTag::cut, "cut"},
      {RuleTag::wk, "wk"},
      {RuleTag::ind, "ind"},
      {RuleTag::q_axiom, "q-axiom"},
      {RuleTag::assumption, "assumption"},
      {RuleTag::axiom, "axiom"},
  };
  return names;
}

}  // namespace

std::string to_string(RuleTag t) {
  for (const auto& [k, v] : tag_names())
    if (k == t) return v;
  return "?";
}

std::optional<RuleTag> rule_tag_from_string(const std::string& s) {
  for (const auto& [k, v] : tag_names())
    if (v == s) return k;
  return std::nullopt;
}

int rule_arity(RuleTag t) {
  switch (t) {
    case RuleTag::id:
    case RuleTag::eq1:
    case RuleTag::eq2:
    case RuleTag::eq3:
    case RuleTag::neg_left:
    case RuleTag::neg_right:
    case RuleTag::q_axiom:
    case RuleTag::assumption:
    case RuleTag::axiom:
      return 0;
    case RuleTag::or_left:
    case RuleTag::and_right:
    case RuleTag::cut:
    case RuleTag::ind:
      return 2;
    default:
      return 1;
  }
}

bool is_initial_rule(RuleTag t) { return rule_arity(t) == 0 && t != RuleTag::assumption; }

std::vector<std::string> RuleInstance::eigenvariables() const {
  switch (tag) {
    case RuleTag::ex_left:
    case RuleTag::all_right:
    case RuleTag::bex_left:
    case RuleTag::ball_right:
    case RuleTag::ind:
      return {eigen};
    case RuleTag::sub: {
      std::vector<std::string> out;
      for (const auto& [x, t] : theta) out.push_back(x);
      return out;
    }
    default:
      return {};
  }
}

bool operator==(const RuleInstance& a, const RuleInstance& b) {
  return a.tag == b.tag && a.index == b.index && a.principal == b.principal && a.eigen == b.eigen &&
         a.witness == b.witness && a.theta == b.theta && a.formula == b.formula &&
         a.hole == b.hole && a.axiom == b.axiom;
}

std::string to_string(const RuleInstance& r) {
  std::string s = "(rule " + to_string(r.tag);
  auto p = [&] {
    if (r.principal.valid()) s += " " + to_string(r.principal);
  };
  switch (r.tag) {
    case RuleTag::or_right:
    case RuleTag::and_left:
      s += " " + std::to_string(r.index);
      p();
      break;
    case RuleTag::or_left:
    case RuleTag::and_right:
      p();
      break;
    case RuleTag::ex_left:
    case RuleTag::all_right:
    case RuleTag::bex_left:
    case RuleTag::ball_right:
      s += " " + r.eigen;
      p();
      break;
    case RuleTag::ex_right:
    case RuleTag::all_left:
    case RuleTag::bex_right:
    case RuleTag::ball_left:
      s += " " + to_string(r.witness);
      p();
      break;
    case RuleTag::sub: {
      s += " (";
      bool first = true;
      for (const auto& [x, t] : r.theta) {
        s += (first ? "(" : " (") + x + " " + to_string(t) + ")";
        first = false;
      }
      s += ")";
      break;
    }
    case RuleTag::cut:
      s += " " + to_string(r.formula);
      break;
    case RuleTag::ind:
      s += " " + r.hole + " " + to_string(r.formula) + " " + r.eigen + " " + to_string(r.witness);
      break;
    case RuleTag::q_axiom:
      s += " " + std::to_string(r.index);
      break;
    case RuleTag::axiom:
      s += " " + r.axiom;
      break;
    default:
      break;
  }
  return s + ")";
}

std::string to_string(StepErrorKind k) {
  switch (k) {
    case StepErrorKind::missing_principal: return "missing-principal";
    case StepErrorKind::eigenvariable_not_fresh: return "eigenvariable-not-fresh";
    case StepErrorKind::substitution_mismatch: return "substitution-mismatch";
    case StepErrorKind::arity: return "arity";
    case StepErrorKind::bound_mismatch: return "bound-mismatch";
    case StepErrorKind::context_mismatch: return "context-mismatch";
    case StepErrorKind::not_an_axiom: return "not-an-axiom";
  }
  return "?";
}

// ---------------------------------------------------------------- schematic matching

namespace {

using Binds = std::map<std::string, Term>;
using Env = std::vector<std::pair<std::string, std::string>>;

bool is_meta(const std::string& x) { return !x.empty() && x[0] == '?'; }

const std::string* env_lookup_pattern(const Env& env, const std::string& x) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == x) return &it->second;
  return nullptr;
}

bool mentions_actual_binder(const Term& t, const Env& env) {
  for (const auto& [p, a] : env)
    if (t.has_var(a)) return true;
  return false;
}

bool match_term(const Term& p, const Term& t, const Env& env, Binds& b) {
  if (p.kind() == TermKind::var) {
    if (is_meta(p.name())) {
      if (mentions_actual_binder(t, env)) return false;
      auto it = b.find(p.name());
      if (it != b.end()) return it->second == t;
      b.emplace(p.name(), t);
      return true;
    }
    if (const std::string* a = env_lookup_pattern(env, p.name()))
      return t.kind() == TermKind::var && t.name() == *a;
    return t.kind() == TermKind::var && t.name() == p.name();
  }
  if (p.kind() != t.kind() || p.name() != t.name() || p.args().size() != t.args().size())
    return false;
  for (std::size_t i = 0; i < p.args().size(); ++i)
    if (!match_term(p.arg(i), t.arg(i), env, b)) return false;
  return true;
}

bool match_formula(const Formula& p, const Formula& f, Env& env, Binds& b) {
  if (p.kind() != f.kind()) return false;
  switch (p.kind()) {
    case FormulaKind::atom:
    case FormulaKind::neg_atom:
      if (p.pred() != f.pred() || p.args().size() != f.args().size()) return false;
      for (std::size_t i = 0; i < p.args().size(); ++i)
        if (!match_term(p.args()[i], f.args()[i], env, b)) return false;
      return true;
    case FormulaKind::conj:
    case FormulaKind::disj:
      return match_formula(p.left(), f.left(), env, b) && match_formula(p.right(), f.right(), env, b);
    default: {
      if (p.is_bounded_quantifier() && !match_term(p.bound(), f.bound(), env, b)) return false;
      env.emplace_back(p.var(), f.var());
      bool ok = match_formula(p.body(), f.body(), env, b);
      env.pop_back();
      return ok;
    }
  }
}

/// Every pattern formula must occur (under one common instantiation) in the matching cedent.
bool match_sequent_rec(const std::vector<const Formula*>& pats, const std::vector<bool>& on_left,
                       std::size_t i, const Sequent& s, Binds& b) {
  if (i == pats.size()) return true;
  const Cedent& side = on_left[i] ? s.ant : s.suc;
  for (const auto& f : side) {
    Binds saved = b;
    Env env;
    if (match_formula(*pats[i], f, env, b) && match_sequent_rec(pats, on_left, i + 1, s, b))
      return true;
    b = std::move(saved);
  }
  return false;
}

bool match_sequent(const Sequent& pattern, const Sequent& s, Binds& b) {
  std::vector<const Formula*> pats;
  std::vector<bool> left;
  for (const auto& f : pattern.ant) {
    pats.push_back(&f);
    left.push_back(true);
  }
  for (const auto& f : pattern.suc) {
    pats.push_back(&f);
    left.push_back(false);
  }
  return match_sequent_rec(pats, left, 0, s, b);
}

Term mv(const char* n) { return Term::var(n); }

struct QForms {
  std::vector<Sequent> forms;
};

/// Sequent forms, the bare matrix and its universal closure for Q1..Q8.
const std::vector<QForms>& q_patterns() {
  static const std::vector<QForms> pats = [] {
    std::vector<QForms> out(9);
    const Term x = mv("?x"), y = mv("?y"), Z = Term::zero();
    auto add = [&](int k, std::vector<Sequent> seqs, const Formula& matrix, const Formula& closure) {
      for (auto& s : seqs) out[k].forms.push_back(s);
      out[k].forms.push_back(Sequent({}, {matrix}));
      out[k].forms.push_back(Sequent({}, {closure}));
    };
    const Term X = Term::var("x"), Y = Term::var("y");
    // Q1 succ x != 0
    add(1, {Sequent({Formula::eq(Term::succ(x), Z)}, {})}, Formula::neq(Term::succ(x), Z),
        Formula::all("x", Formula::neq(Term::succ(X), Z)));
    // Q2 succ x = succ y -> x = y
    add(2, {Sequent({Formula::eq(Term::succ(x), Term::succ(y))}, {Formula::eq(x, y)})},
        Formula::disj(Formula::neq(Term::succ(x), Term::succ(y)), Formula::eq(x, y)),
        Formula::all("x", Formula::all("y", Formula::disj(Formula::neq(Term::succ(X), Term::succ(Y)),
                                                          Formula::eq(X, Y)))));
    // Q3 x != 0 -> exists y < x. x = succ y
    {
      auto q3 = [&](const Term& a) {
        return Formula::bex("w", a, Formula::eq(a, Term::succ(Term::var("w"))));
      };
      add(3, {Sequent({}, {Formula::eq(x, Z), q3(x)})}, Formula::disj(Formula::eq(x, Z), q3(x)),
          Formula::all("x", Formula::disj(Formula::eq(X, Z), q3(X))));
    }
    // Q4..Q7
    add(4, {Sequent({}, {Formula::eq(Term::plus(x, Z), x)})}, Formula::eq(Term::plus(x, Z), x),
        Formula::all("x", Formula::eq(Term::plus(X, Z), X)));
    add(5, {Sequent({}, {Formula::eq(Term::plus(x, Term::succ(y)), Term::succ(Term::plus(x, y)))})},
        Formula::eq(Term::plus(x, Term::succ(y)), Term::succ(Term::plus(x, y))),
        Formula::all("x", Formula::all("y", Formula::eq(Term::plus(X, Term::succ(Y)),
                                                        Term::succ(Term::plus(X, Y))))));
    add(6, {Sequent({}, {Formula::eq(Term::times(x, Z), Z)})}, Formula::eq(Term::times(x, Z), Z),
        Formula::all("x", Formula::eq(Term::times(X, Z), Z)));
    add(7, {Sequent({}, {Formula::eq(Term::times(x, Term::succ(y)), Term::plus(Term::times(x, y), x))})},
        Formula::eq(Term::times(x, Term::succ(y)), Term::plus(Term::times(x, y), x)),
        Formula::all("x", Formula::all("y", Formula::eq(Term::times(X, Term::succ(Y)),
                                                        Term::plus(Term::times(X, Y), X)))));
    // Q8 x < y <-> exists z < y. x + succ z = y
    {
      auto rhs = [&](const Term& a, const Term& b) {
        return Formula::bex("w", b, Formula::eq(Term::plus(a, Term::succ(Term::var("w"))), b));
      };
      auto matrix = [&](const Term& a, const Term& b) {
        return Formula::conj(Formula::disj(Formula::nlt(a, b), rhs(a, b)),
                             Formula::disj(dual(rhs(a, b)), Formula::lt(a, b)));
      };
      add(8, {Sequent({Formula::lt(x, y)}, {rhs(x, y)}), Sequent({rhs(x, y)}, {Formula::lt(x, y)})},
          matrix(x, y), Formula::all("x", Formula::all("y", matrix(X, Y))));
    }
    return out;
  }();
  return pats;
}

Sequent metavarize(const Sequent& s) {
  Substitution th;
  for (const auto& x : s.free_vars()) th[x] = Term::var("?" + x);
  return apply_subst(th, s);
}

bool is_id(const Sequent& s) {
  for (const auto& f : s.ant)
    if (cedent_contains(s.suc, f)) return true;
  return false;
}

bool is_eq1(const Sequent& s) {
  for (const auto& f : s.suc)
    if (f.kind() == FormulaKind::atom && f.pred() == "=" && f.args()[0] == f.args()[1]) return true;
  // Universal closure form: => forall x. x = x
  for (const auto& f : s.suc)
    if (f.kind() == FormulaKind::all) {
      const Formula& b = f.body();
      Term x = Term::var(f.var());
      if (b.kind() == FormulaKind::atom && b.pred() == "=" && b.args()[0] == x && b.args()[1] == x)
        return true;
    }
  return false;
}

bool args_equated(const std::vector<Term>& s, const std::vector<Term>& t, const Cedent& ant) {
  if (s.size() != t.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!(s[i] == t[i]) && !cedent_contains(ant, Formula::eq(s[i], t[i]))) return false;
  return true;
}

bool is_function_application(const Term& t) {
  return t.kind() == TermKind::succ || t.kind() == TermKind::plus || t.kind() == TermKind::times ||
         t.kind() == TermKind::apply;
}

bool is_eq2(const Sequent& s) {
  for (const auto& f : s.suc) {
    if (f.kind() != FormulaKind::atom || f.pred() != "=") continue;
    const Term& l = f.args()[0];
    const Term& r = f.args()[1];
    if (!is_function_application(l) || l.kind() != r.kind() || l.name() != r.name()) continue;
    if (args_equated(l.args(), r.args(), s.ant)) return true;
  }
  return false;
}

bool is_eq3(const Sequent& s) {
  for (const auto& g : s.suc) {
    if (g.kind() != FormulaKind::atom) continue;
    for (const auto& f : s.ant) {
      if (f.kind() != FormulaKind::atom || f.pred() != g.pred()) continue;
      if (args_equated(f.args(), g.args(), s.ant)) return true;
    }
  }
  return false;
}

bool is_neg_left(const Sequent& s) {
  for (const auto& f : s.ant)
    if (cedent_contains(s.ant, dual(f))) return true;
  return false;
}

bool is_neg_right(const Sequent& s) {
  for (const auto& f : s.suc)
    if (cedent_contains(s.suc, dual(f))) return true;
  return false;
}

}  // namespace

bool matches_q_axiom(const Sequent& s, int k) {
  if (k < 1 || k > 8) return false;
  for (const auto& form : q_patterns()[k].forms) {
    Binds b;
    if (match_sequent(form, s, b)) return true;
  }
  return false;
}

bool matches_theory_axiom(const Sequent& s, const Sequent& axiom) {
  Binds b;
  return match_sequent(metavarize(axiom), s, b);
}

bool is_q_axiom(const Sequent& s) {
  if (is_id(s) || is_eq1(s) || is_eq2(s) || is_eq3(s) || is_neg_left(s) || is_neg_right(s))
    return true;
  for (int k = 1; k <= 8; ++k)
    if (matches_q_axiom(s, k)) return true;
  return false;
}

Sequent q_axiom_instance(int k, const Term& x, const Term& y, bool converse) {
  const Term Z = Term::zero();
  std::vector<std::string> avoid = x.free_vars();
  avoid.insert(avoid.end(), y.free_vars().begin(), y.free_vars().end());
  std::string w = std::find(avoid.begin(), avoid.end(), "w") == avoid.end() ? "w" : fresh_name("w", avoid);
  Term W = Term::var(w);
  switch (k) {
    case 1: return Sequent({Formula::eq(Term::succ(x), Z)}, {});
    case 2: return Sequent({Formula::eq(Term::succ(x), Term::succ(y))}, {Formula::eq(x, y)});
    case 3: return Sequent({}, {Formula::eq(x, Z), Formula::bex(w, x, Formula::eq(x, Term::succ(W)))});
    case 4: return Sequent({}, {Formula::eq(Term::plus(x, Z), x)});
    case 5: return Sequent({}, {Formula::eq(Term::plus(x, Term::succ(y)), Term::succ(Term::plus(x, y)))});
    case 6: return Sequent({}, {Formula::eq(Term::times(x, Z), Z)});
    case 7:
      return Sequent({}, {Formula::eq(Term::times(x, Term::succ(y)), Term::plus(Term::times(x, y), x))});
    case 8: {
      Formula rhs = Formula::bex(w, y, Formula::eq(Term::plus(x, Term::succ(W)), y));
      if (converse) return Sequent({rhs}, {Formula::lt(x, y)});
      return Sequent({Formula::lt(x, y)}, {rhs});
    }
    default:
      throw ConstructionError("no Q axiom numbered " + std::to_string(k));
  }
}

// ---------------------------------------------------------------- step checking

namespace {

std::optional<StepError> err(StepErrorKind k, std::string msg) { return StepError{k, std::move(msg)}; }

/// One premiss of a logical rule: formulas the conclusion loses and the premiss gains, per side.
struct PremissShape {
  std::vector<Formula> ant_removed, ant_added, suc_removed, suc_added;
};

std::optional<StepError> check_shape(const Sequent& c, const Sequent& p, const PremissShape& sh,
                                     std::size_t idx) {
  std::string where = "premiss " + std::to_string(idx);
  for (const auto& f : sh.ant_added)
    if (!cedent_contains(p.ant, f))
      return err(StepErrorKind::missing_principal, where + " lacks " + to_string(f) + " on the left");
  for (const auto& f : sh.suc_added)
    if (!cedent_contains(p.suc, f))
      return err(StepErrorKind::missing_principal, where + " lacks " + to_string(f) + " on the right");
  if (cedent_union(p.ant, make_cedent(sh.ant_removed)) != cedent_union(c.ant, make_cedent(sh.ant_added)))
    return err(StepErrorKind::context_mismatch, where + ": antecedent side formulas differ");
  if (cedent_union(p.suc, make_cedent(sh.suc_removed)) != cedent_union(c.suc, make_cedent(sh.suc_added)))
    return err(StepErrorKind::context_mismatch, where + ": succedent side formulas differ");
  return std::nullopt;
}

std::optional<StepError> check_shapes(const Sequent& c, const std::vector<Sequent>& ps,
                                      const std::vector<PremissShape>& shapes) {
  for (std::size_t i = 0; i < shapes.size(); ++i)
    if (auto e = check_shape(c, ps[i], shapes[i], i)) return e;
  return std::nullopt;
}

std::optional<StepError> fresh(const Sequent& c, const std::string& a) {
  if (a.empty()) return err(StepErrorKind::eigenvariable_not_fresh, "missing eigenvariable");
  if (c.has_free_var(a))
    return err(StepErrorKind::eigenvariable_not_fresh,
               "eigenvariable " + a + " occurs free in the conclusion");
  return std::nullopt;
}

FormulaKind principal_kind(RuleTag t) {
  switch (t) {
    case RuleTag::or_left:
    case RuleTag::or_right: return FormulaKind::disj;
    case RuleTag::and_left:
    case RuleTag::and_right: return FormulaKind::conj;
    case RuleTag::ex_left:
    case RuleTag::ex_right: return FormulaKind::ex;
    case RuleTag::all_left:
    case RuleTag::all_right: return FormulaKind::all;
    case RuleTag::bex_left:
    case RuleTag::bex_right: return FormulaKind::bex;
    default: return FormulaKind::ball;
  }
}

bool principal_on_left(RuleTag t) {
  switch (t) {
    case RuleTag::or_left:
    case RuleTag::and_left:
    case RuleTag::ex_left:
    case RuleTag::all_left:
    case RuleTag::bex_left:
    case RuleTag::ball_left:
      return true;
    default:
      return false;
  }
}

std::optional<StepError> check_logical(const Sequent& c, const RuleInstance& r,
                                       const std::vector<Sequent>& ps, const Formula& p) {
  const bool left = principal_on_left(r.tag);
  if (p.kind() != principal_kind(r.tag))
    return err(StepErrorKind::missing_principal, "principal " + to_string(p) + " has the wrong shape");
  if (!cedent_contains(left ? c.ant : c.suc, p))
    return err(StepErrorKind::missing_principal,
               "principal " + to_string(p) + " not in the conclusion's " +
                   (left ? "antecedent" : "succedent"));
  auto one = [&](std::vector<Formula> added) {
    PremissShape s;
    if (left) {
      s.ant_removed = {p};
      s.ant_added = std::move(added);
    } else {
      s.suc_removed = {p};
      s.suc_added = std::move(added);
    }
    return s;
  };
  switch (r.tag) {
    case RuleTag::or_left:
    case RuleTag::and_right:
      return check_shapes(c, ps, {one({p.left()}), one({p.right()})});
    case RuleTag::or_right:
    case RuleTag::and_left:
      if (r.index != 0 && r.index != 1) return err(StepErrorKind::arity, "index must be 0 or 1");
      return check_shapes(c, ps, {one({r.index == 0 ? p.left() : p.right()})});
    case RuleTag::ex_left:
    case RuleTag::all_right: {
      if (auto e = fresh(c, r.eigen)) return e;
      return check_shapes(c, ps, {one({instantiate(p, Term::var(r.eigen))})});
    }
    case RuleTag::ex_right:
    case RuleTag::all_left:
      if (!r.witness.valid()) return err(StepErrorKind::missing_principal, "missing witness term");
      return check_shapes(c, ps, {one({instantiate(p, r.witness)})});
    case RuleTag::bex_left: {
      if (auto e = fresh(c, r.eigen)) return e;
      Term a = Term::var(r.eigen);
      return check_shapes(c, ps, {one({Formula::lt(a, p.bound()), instantiate(p, a)})});
    }
    case RuleTag::ball_right: {
      if (auto e = fresh(c, r.eigen)) return e;
      Term a = Term::var(r.eigen);
      PremissShape s = one({instantiate(p, a)});
      s.ant_added = {Formula::lt(a, p.bound())};
      return check_shapes(c, ps, {s});
    }
    case RuleTag::bex_right: {
      if (!r.witness.valid()) return err(StepErrorKind::missing_principal, "missing witness term");
      Formula guard = Formula::lt(r.witness, p.bound());
      if (!cedent_contains(c.ant, guard))
        return err(StepErrorKind::bound_mismatch,
                   "conclusion antecedent lacks the guard " + to_string(guard));
      PremissShape s = one({instantiate(p, r.witness)});
      s.ant_removed = {guard};
      return check_shapes(c, ps, {s});
    }
    case RuleTag::ball_left: {
      if (!r.witness.valid()) return err(StepErrorKind::missing_principal, "missing witness term");
      Formula guard = Formula::lt(r.witness, p.bound());
      if (!cedent_contains(c.ant, guard))
        return err(StepErrorKind::bound_mismatch,
                   "conclusion antecedent lacks the guard " + to_string(guard));
      PremissShape s = one({instantiate(p, r.witness)});
      s.ant_removed.push_back(guard);
      return check_shapes(c, ps, {s});
    }
    default:
      return err(StepErrorKind::arity, "not a logical rule");
  }
}

}  // namespace

std::optional<StepError> check_step(const Sequent& c, const RuleInstance& r,
                                    const std::vector<Sequent>& ps, const Theory* theory) {
  const int arity = rule_arity(r.tag);
  if (static_cast<int>(ps.size()) != arity)
    return err(StepErrorKind::arity, to_string(r.tag) + " expects " + std::to_string(arity) +
                                         " premisses, got " + std::to_string(ps.size()));
  switch (r.tag) {
    case RuleTag::id:
      return is_id(c) ? std::nullopt : err(StepErrorKind::not_an_axiom, "no formula on both sides");
    case RuleTag::eq1:
      return is_eq1(c) ? std::nullopt : err(StepErrorKind::not_an_axiom, "no t = t in the succedent");
    case RuleTag::eq2:
      return is_eq2(c) ? std::nullopt : err(StepErrorKind::not_an_axiom, "not an =2 instance");
    case RuleTag::eq3:
      return is_eq3(c) ? std::nullopt : err(StepErrorKind::not_an_axiom, "not an =3 instance");
    case RuleTag::neg_left:
      return is_neg_left(c) ? std::nullopt
                            : err(StepErrorKind::not_an_axiom, "no dual pair in the antecedent");
    case RuleTag::neg_right:
      return is_neg_right(c) ? std::nullopt
                             : err(StepErrorKind::not_an_axiom, "no dual pair in the succedent");
    case RuleTag::q_axiom:
      if (r.index < 1 || r.index > 8) return err(StepErrorKind::arity, "Q axiom index out of range");
      return matches_q_axiom(c, r.index)
                 ? std::nullopt
                 : err(StepErrorKind::not_an_axiom, "not an instance of Q" + std::to_string(r.index));
    case RuleTag::axiom: {
      if (!theory) return err(StepErrorKind::not_an_axiom, "no theory for axiom " + r.axiom);
      auto it = theory->axioms.find(r.axiom);
      if (it == theory->axioms.end())
        return err(StepErrorKind::not_an_axiom, "undeclared axiom " + r.axiom);
      return matches_theory_axiom(c, it->second)
                 ? std::nullopt
                 : err(StepErrorKind::not_an_axiom, "not an instance of axiom " + r.axiom);
    }
    case RuleTag::assumption:
      return std::nullopt;
    case RuleTag::wk:
      if (!cedent_subset(ps[0].ant, c.ant) || !cedent_subset(ps[0].suc, c.suc))
        return err(StepErrorKind::context_mismatch, "premiss is not contained in the conclusion");
      return std::nullopt;
    case RuleTag::sub:
      if (!(apply_subst(r.theta, ps[0]) == c))
        return err(StepErrorKind::substitution_mismatch,
                   "conclusion is not the substitution instance of the premiss");
      return std::nullopt;
    case RuleTag::cut: {
      if (!r.formula.valid()) return err(StepErrorKind::missing_principal, "missing cut formula");
      PremissShape a, b;
      a.suc_added = {r.formula};
      b.ant_added = {r.formula};
      return check_shapes(c, ps, {a, b});
    }
    case RuleTag::ind: {
      if (!r.formula.valid() || r.hole.empty() || !r.witness.valid())
        return err(StepErrorKind::missing_principal, "incomplete induction annotation");
      if (auto e = fresh(c, r.eigen)) return e;
      auto at = [&](const Term& t) { return apply_subst(Substitution{{r.hole, t}}, r.formula); };
      Formula goal = at(r.witness);
      if (!cedent_contains(c.suc, goal))
        return err(StepErrorKind::missing_principal, "conclusion lacks " + to_string(goal));
      Term a = Term::var(r.eigen);
      PremissShape base, step;
      base.suc_removed = {goal};
      base.suc_added = {at(Term::zero())};
      step.suc_removed = {goal};
      step.suc_added = {at(Term::succ(a))};
      step.ant_added = {at(a)};
      return check_shapes(c, ps, {base, step});
    }
    default:
      break;
  }
  // Logical rules: use the annotated principal, or try every candidate.
  const bool left = principal_on_left(r.tag);
  if (r.principal.valid()) return check_logical(c, r, ps, r.principal);
  std::optional<StepError> first;
  for (const auto& f : left ? c.ant : c.suc) {
    if (f.kind() != principal_kind(r.tag)) continue;
    auto e = check_logical(c, r, ps, f);
    if (!e) return std::nullopt;
    if (!first) first = e;
  }
  if (first) return first;
  return err(StepErrorKind::missing_principal, "no candidate principal formula for " + to_string(r.tag));
}

// ---------------------------------------------------------------- proofs

ProofReport check_proof(const FiniteProof& p) {
  ProofReport rep;
  auto root_it = p.nodes.find(p.root);
  if (root_it == p.nodes.end()) {
    rep.ok = false;
    rep.errors.push_back({p.root, "root node missing"});
    return rep;
  }
  rep.conclusion = root_it->second.sequent;
  std::set<std::string> seen;
  std::vector<std::string> stack{p.root};
  while (!stack.empty()) {
    std::string id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) {
      rep.ok = false;
      rep.errors.push_back({id, "node reached twice; a finite proof must be a tree"});
      continue;
    }
    const ProofNode& n = p.nodes.at(id);
    std::vector<Sequent> prem;
    bool missing = false;
    for (const auto& c : n.children) {
      auto it = p.nodes.find(c);
      if (it == p.nodes.end()) {
        rep.ok = false;
        rep.errors.push_back({id, "unknown child " + c});
        missing = true;
        continue;
      }
      prem.push_back(it->second.sequent);
      stack.push_back(c);
    }
    if (missing) continue;
    if (auto e = check_step(n.sequent, n.rule, prem, &p.theory)) {
      rep.ok = false;
      rep.errors.push_back({id, to_string(e->kind) + ": " + e->message});
    }
    if (n.rule.tag == RuleTag::assumption) rep.assumptions.emplace_back(id, n.sequent);
  }
  for (const auto& [id, n] : p.nodes)
    if (!seen.count(id)) {
      rep.ok = false;
      rep.errors.push_back({id, "node unreachable from the root"});
    }
  return rep;
}

std::optional<std::string> check_lift_shape(const Sequent& s, unsigned n) {
  const HierarchyLevel sig = HierarchyLevel::sigma(n);
  struct Item {
    Formula f;
    std::vector<std::string> binders;
  };
  std::vector<Item> items;
  for (const auto* side : {&s.ant, &s.suc})
    for (const auto& f : *side) {
      if (is_in_level(f, sig)) {
        items.push_back({f, {}});
        continue;
      }
      auto [xs, body] = forall_block(f);
      if (xs.empty() || !is_in_level(body, sig))
        return "formula " + to_string(f) + " is neither Sigma_" + std::to_string(n) +
               " nor a universal closure of one";
      items.push_back({f, xs});
    }
  for (std::size_t i = 0; i < items.size(); ++i)
    for (const auto& x : items[i].binders)
      for (std::size_t j = 0; j < items.size(); ++j)
        if (j != i && items[j].f.has_free_var(x))
          return "bound variable " + x + " of " + to_string(items[i].f) + " occurs free in " +
                 to_string(items[j].f);
  return std::nullopt;
}

std::optional<FragmentError> validate_fragment(
    const std::vector<std::pair<std::string, Sequent>>& sequents, unsigned n, FragmentMode mode) {
  if (mode == FragmentMode::lift_conclusion) {
    if (sequents.empty()) return FragmentError{"", {}, "no conclusion"};
    if (auto e = check_lift_shape(sequents.front().second, n))
      return FragmentError{sequents.front().first, {}, *e};
  }
  HierarchyLevel lvl = mode == FragmentMode::all_sigma ? HierarchyLevel::sigma(n)
                                                       : HierarchyLevel::pi(n + 1);
  for (const auto& [id, s] : sequents)
    for (const auto* side : {&s.ant, &s.suc})
      for (const auto& f : *side)
        if (!is_in_level(f, lvl))
          return FragmentError{id, f,
                               "formula " + to_string(f) + " is " + to_string(classify(f)) +
                                   ", outside " + to_string(lvl)};
  return std::nullopt;
}

std::optional<FragmentError> validate_fragment(const FiniteProof& p, unsigned n, FragmentMode mode) {
  std::vector<std::pair<std::string, Sequent>> seqs;
  seqs.emplace_back(p.root, p.nodes.at(p.root).sequent);
  for (const auto& [id, node] : p.nodes)
    if (id != p.root) seqs.emplace_back(id, node.sequent);
  if (mode == FragmentMode::lift_conclusion) {
    // Shape of the conclusion, and every formula of the proof within Pi_{n+1}.
    if (auto e = check_lift_shape(p.conclusion(), n)) return FragmentError{p.root, {}, *e};
    return validate_fragment(seqs, n, FragmentMode::all_pi);
  }
  return validate_fragment(seqs, n, mode);
}

}  // namespace carith
