#include "carith/logic.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace carith {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

void merge_sorted(std::vector<std::string>& into, const std::vector<std::string>& more) {
  if (more.empty()) return;
  std::vector<std::string> out;
  out.reserve(into.size() + more.size());
  std::set_union(into.begin(), into.end(), more.begin(), more.end(), std::back_inserter(out));
  into.swap(out);
}

}  // namespace

struct Term::Node {
  TermKind kind;
  std::string name;
  std::vector<Term> args;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::vector<std::string> fv;
};

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  std::vector<Term> args;
  Term bound;
  Formula l, r;
  std::size_t hash = 0;
  std::vector<std::string> fv;
};

// ---------------------------------------------------------------- Term

namespace {

std::shared_ptr<Term::Node> make_term_node(TermKind k, std::string name, std::vector<Term> args) {
  auto n = std::make_shared<Term::Node>();
  n->kind = k;
  n->name = std::move(name);
  n->args = std::move(args);
  std::size_t h = mix(static_cast<std::size_t>(k) + 17, std::hash<std::string>{}(n->name));
  for (const auto& a : n->args) {
    h = mix(h, a.hash());
    n->size += a.size();
    merge_sorted(n->fv, a.free_vars());
  }
  if (k == TermKind::var) n->fv.push_back(n->name);
  n->hash = h;
  return n;
}

}  // namespace

Term Term::var(std::string name) {
  if (name.empty()) throw ConstructionError("empty variable name");
  return Term(make_term_node(TermKind::var, std::move(name), {}));
}

Term Term::zero() {
  static const Term z(make_term_node(TermKind::zero, "", {}));
  return z;
}

Term Term::succ(Term t) { return Term(make_term_node(TermKind::succ, "", {std::move(t)})); }
Term Term::plus(Term a, Term b) {
  return Term(make_term_node(TermKind::plus, "", {std::move(a), std::move(b)}));
}
Term Term::times(Term a, Term b) {
  return Term(make_term_node(TermKind::times, "", {std::move(a), std::move(b)}));
}
Term Term::apply(std::string fn, std::vector<Term> args) {
  if (fn.empty()) throw ConstructionError("empty function symbol");
  return Term(make_term_node(TermKind::apply, std::move(fn), std::move(args)));
}

Term Term::numeral(unsigned n) {
  Term t = zero();
  for (unsigned i = 0; i < n; ++i) t = succ(t);
  return t;
}

TermKind Term::kind() const { return p_->kind; }
const std::string& Term::name() const { return p_->name; }
const std::vector<Term>& Term::args() const { return p_->args; }
std::size_t Term::hash() const { return p_ ? p_->hash : 0; }
const std::vector<std::string>& Term::free_vars() const { return p_->fv; }
std::size_t Term::size() const { return p_->size; }

bool Term::has_var(const std::string& x) const {
  return std::binary_search(p_->fv.begin(), p_->fv.end(), x);
}

bool operator==(const Term& a, const Term& b) {
  if (a.p_ == b.p_) return true;
  if (!a.p_ || !b.p_) return false;
  if (a.p_->hash != b.p_->hash) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.p_ == b.p_) return std::strong_ordering::equal;
  if (!a.p_) return std::strong_ordering::less;
  if (!b.p_) return std::strong_ordering::greater;
  if (auto c = a.p_->kind <=> b.p_->kind; c != 0) return c;
  if (auto c = a.p_->name <=> b.p_->name; c != 0) return c;
  if (auto c = a.p_->args.size() <=> b.p_->args.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.p_->args.size(); ++i)
    if (auto c = a.p_->args[i] <=> b.p_->args[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- Formula

namespace {

std::shared_ptr<Formula::Node> make_formula_node(FormulaKind k, std::string name,
                                                 std::vector<Term> args, Term bound, Formula l,
                                                 Formula r) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = k;
  n->name = std::move(name);
  n->args = std::move(args);
  n->bound = std::move(bound);
  n->l = std::move(l);
  n->r = std::move(r);
  std::size_t h = mix(static_cast<std::size_t>(k) + 101, std::hash<std::string>{}(n->name));
  for (const auto& a : n->args) {
    h = mix(h, a.hash());
    merge_sorted(n->fv, a.free_vars());
  }
  if (n->l.valid()) h = mix(h, n->l.hash());
  if (n->r.valid()) h = mix(h, n->r.hash());
  if (n->bound.valid()) h = mix(h, n->bound.hash());
  switch (k) {
    case FormulaKind::atom:
    case FormulaKind::neg_atom:
      break;
    case FormulaKind::conj:
    case FormulaKind::disj:
      merge_sorted(n->fv, n->l.free_vars());
      merge_sorted(n->fv, n->r.free_vars());
      break;
    default: {
      std::vector<std::string> body = n->l.free_vars();
      body.erase(std::remove(body.begin(), body.end(), n->name), body.end());
      merge_sorted(n->fv, body);
      if (n->bound.valid()) merge_sorted(n->fv, n->bound.free_vars());
    }
  }
  n->hash = h;
  return n;
}

}  // namespace

Formula Formula::atom(std::string pred, std::vector<Term> args) {
  if (pred.empty()) throw ConstructionError("empty predicate symbol");
  return Formula(make_formula_node(FormulaKind::atom, std::move(pred), std::move(args), {}, {}, {}));
}
Formula Formula::neg_atom(std::string pred, std::vector<Term> args) {
  if (pred.empty()) throw ConstructionError("empty predicate symbol");
  return Formula(
      make_formula_node(FormulaKind::neg_atom, std::move(pred), std::move(args), {}, {}, {}));
}
Formula Formula::conj(Formula a, Formula b) {
  return Formula(make_formula_node(FormulaKind::conj, "", {}, {}, std::move(a), std::move(b)));
}
Formula Formula::disj(Formula a, Formula b) {
  return Formula(make_formula_node(FormulaKind::disj, "", {}, {}, std::move(a), std::move(b)));
}
Formula Formula::ex(std::string x, Formula body) {
  if (x.empty()) throw ConstructionError("empty bound variable");
  return Formula(make_formula_node(FormulaKind::ex, std::move(x), {}, {}, std::move(body), {}));
}
Formula Formula::all(std::string x, Formula body) {
  if (x.empty()) throw ConstructionError("empty bound variable");
  return Formula(make_formula_node(FormulaKind::all, std::move(x), {}, {}, std::move(body), {}));
}
Formula Formula::bex(std::string x, Term bound, Formula body) {
  if (x.empty()) throw ConstructionError("empty bound variable");
  if (bound.has_var(x))
    throw ConstructionError("bound of a bounded quantifier mentions its variable " + x);
  return Formula(
      make_formula_node(FormulaKind::bex, std::move(x), {}, std::move(bound), std::move(body), {}));
}
Formula Formula::ball(std::string x, Term bound, Formula body) {
  if (x.empty()) throw ConstructionError("empty bound variable");
  if (bound.has_var(x))
    throw ConstructionError("bound of a bounded quantifier mentions its variable " + x);
  return Formula(
      make_formula_node(FormulaKind::ball, std::move(x), {}, std::move(bound), std::move(body), {}));
}

FormulaKind Formula::kind() const { return p_->kind; }
const std::string& Formula::name() const { return p_->name; }
const std::vector<Term>& Formula::args() const { return p_->args; }
const Term& Formula::bound() const { return p_->bound; }
const Formula& Formula::left() const { return p_->l; }
const Formula& Formula::right() const { return p_->r; }
const Formula& Formula::body() const { return p_->l; }
std::size_t Formula::hash() const { return p_ ? p_->hash : 0; }
const std::vector<std::string>& Formula::free_vars() const { return p_->fv; }
bool Formula::has_free_var(const std::string& x) const {
  return std::binary_search(p_->fv.begin(), p_->fv.end(), x);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.p_ == b.p_) return true;
  if (!a.p_ || !b.p_) return false;
  if (a.p_->hash != b.p_->hash) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.p_ == b.p_) return std::strong_ordering::equal;
  if (!a.p_) return std::strong_ordering::less;
  if (!b.p_) return std::strong_ordering::greater;
  const auto& x = *a.p_;
  const auto& y = *b.p_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.args.size() <=> y.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (auto c = x.args[i] <=> y.args[i]; c != 0) return c;
  if (auto c = x.bound <=> y.bound; c != 0) return c;
  if (auto c = x.l <=> y.l; c != 0) return c;
  return x.r <=> y.r;
}

// ---------------------------------------------------------------- Signature

Signature::Signature() {
  functions_ = {{"0", 0}, {"s", 1}, {"+", 2}, {"*", 2}};
  predicates_ = {{"=", 2}, {"<", 2}};
}

bool Signature::is_base_function(const std::string& name) const {
  return name == "0" || name == "s" || name == "+" || name == "*";
}
bool Signature::is_base_predicate(const std::string& name) const {
  return name == "=" || name == "<";
}

void Signature::declare_function(const std::string& name, int arity) {
  if (is_base_function(name)) throw SignatureError("cannot redeclare base function symbol " + name);
  if (arity < 0) throw SignatureError("negative arity for " + name);
  auto it = functions_.find(name);
  if (it != functions_.end() && it->second != arity)
    throw SignatureError("conflicting arity for function symbol " + name);
  functions_[name] = arity;
}

void Signature::declare_predicate(const std::string& name, int arity) {
  if (is_base_predicate(name)) throw SignatureError("cannot redeclare base predicate " + name);
  if (arity < 0) throw SignatureError("negative arity for " + name);
  auto it = predicates_.find(name);
  if (it != predicates_.end() && it->second != arity)
    throw SignatureError("conflicting arity for predicate " + name);
  predicates_[name] = arity;
}

std::optional<int> Signature::function_arity(const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end()) return std::nullopt;
  return it->second;
}
std::optional<int> Signature::predicate_arity(const std::string& name) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end()) return std::nullopt;
  return it->second;
}

std::map<std::string, int> Signature::declared_functions() const {
  std::map<std::string, int> out;
  for (const auto& [k, v] : functions_)
    if (!is_base_function(k)) out[k] = v;
  return out;
}
std::map<std::string, int> Signature::declared_predicates() const {
  std::map<std::string, int> out;
  for (const auto& [k, v] : predicates_)
    if (!is_base_predicate(k)) out[k] = v;
  return out;
}

void Signature::check(const Term& t) const {
  if (t.kind() == TermKind::apply) {
    if (is_base_function(t.name()))
      throw SignatureError("base symbol " + t.name() + " used as a declared function");
    auto a = function_arity(t.name());
    if (!a) throw SignatureError("undeclared function symbol " + t.name());
    if (*a != static_cast<int>(t.args().size()))
      throw SignatureError("function symbol " + t.name() + " expects " + std::to_string(*a) +
                           " arguments, got " + std::to_string(t.args().size()));
  }
  for (const auto& a : t.args()) check(a);
}

void Signature::check(const Formula& f) const {
  switch (f.kind()) {
    case FormulaKind::atom:
    case FormulaKind::neg_atom: {
      auto a = predicate_arity(f.pred());
      if (!a) throw SignatureError("undeclared predicate " + f.pred());
      if (*a != static_cast<int>(f.args().size()))
        throw SignatureError("predicate " + f.pred() + " expects " + std::to_string(*a) +
                             " arguments, got " + std::to_string(f.args().size()));
      for (const auto& t : f.args()) check(t);
      return;
    }
    case FormulaKind::conj:
    case FormulaKind::disj:
      check(f.left());
      check(f.right());
      return;
    case FormulaKind::bex:
    case FormulaKind::ball:
      check(f.bound());
      check(f.body());
      return;
    default:
      check(f.body());
  }
}

Term Signature::make_apply(const std::string& fn, std::vector<Term> args) const {
  Term t = Term::apply(fn, std::move(args));
  check(t);
  return t;
}

Formula Signature::make_atom(const std::string& pred, std::vector<Term> args, bool negated) const {
  Formula f = negated ? Formula::neg_atom(pred, std::move(args)) : Formula::atom(pred, std::move(args));
  check(f);
  return f;
}

// ---------------------------------------------------------------- duality and hierarchy

Formula dual(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::atom: return Formula::neg_atom(f.pred(), f.args());
    case FormulaKind::neg_atom: return Formula::atom(f.pred(), f.args());
    case FormulaKind::conj: return Formula::disj(dual(f.left()), dual(f.right()));
    case FormulaKind::disj: return Formula::conj(dual(f.left()), dual(f.right()));
    case FormulaKind::ex: return Formula::all(f.var(), dual(f.body()));
    case FormulaKind::all: return Formula::ex(f.var(), dual(f.body()));
    case FormulaKind::bex: return Formula::ball(f.var(), f.bound(), dual(f.body()));
    case FormulaKind::ball: return Formula::bex(f.var(), f.bound(), dual(f.body()));
  }
  return f;
}

namespace {

struct Ranks {
  std::optional<unsigned> sig, pi;
};

Ranks ranks(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::atom:
    case FormulaKind::neg_atom:
      return {0u, 0u};
    case FormulaKind::conj:
    case FormulaKind::disj: {
      Ranks a = ranks(f.left());
      Ranks b = ranks(f.right());
      if (a.sig == 0u && b.sig == 0u) return {0u, 0u};
      return {};
    }
    case FormulaKind::bex:
    case FormulaKind::ball: {
      Ranks b = ranks(f.body());
      if (b.sig == 0u) return {0u, 0u};
      return {};
    }
    case FormulaKind::ex: {
      Ranks b = ranks(f.body());
      std::optional<unsigned> s;
      if (b.pi) s = *b.pi + 1;
      if (f.body().kind() == FormulaKind::ex && b.sig && (!s || *b.sig < *s)) s = b.sig;
      if (!s) return {};
      return {s, *s + 1};
    }
    case FormulaKind::all: {
      Ranks b = ranks(f.body());
      std::optional<unsigned> p;
      if (b.sig) p = *b.sig + 1;
      if (f.body().kind() == FormulaKind::all && b.pi && (!p || *b.pi < *p)) p = b.pi;
      if (!p) return {};
      return {*p + 1, p};
    }
  }
  return {};
}

}  // namespace

std::optional<unsigned> sigma_rank(const Formula& f) { return ranks(f).sig; }
std::optional<unsigned> pi_rank(const Formula& f) { return ranks(f).pi; }

HierarchyLevel classify(const Formula& f) {
  Ranks r = ranks(f);
  if (!r.sig && !r.pi) return HierarchyLevel::none();
  if (r.sig == 0u) return HierarchyLevel::delta0();
  if (*r.sig < *r.pi) return HierarchyLevel::sigma(*r.sig);
  return HierarchyLevel::pi(*r.pi);
}

bool is_delta0(const Formula& f) { return ranks(f).sig == 0u; }

bool is_in_level(const Formula& f, const HierarchyLevel& l) {
  Ranks r = ranks(f);
  switch (l.kind) {
    case LevelKind::delta0: return r.sig == 0u;
    case LevelKind::sigma: return r.sig && *r.sig <= l.level;
    case LevelKind::pi: return r.pi && *r.pi <= l.level;
    case LevelKind::none: return !r.sig && !r.pi;
  }
  return false;
}

std::string to_string(const HierarchyLevel& l) {
  switch (l.kind) {
    case LevelKind::delta0: return "delta0";
    case LevelKind::sigma: return "sigma-" + std::to_string(l.level);
    case LevelKind::pi: return "pi-" + std::to_string(l.level);
    case LevelKind::none: return "none";
  }
  return "?";
}

// ---------------------------------------------------------------- substitution

std::string fresh_name(const std::string& base, const std::vector<std::string>& avoid) {
  std::string x = base + "'";
  while (std::find(avoid.begin(), avoid.end(), x) != avoid.end()) x += "'";
  return x;
}

Term apply_subst(const Substitution& theta, const Term& t) {
  if (theta.empty()) return t;
  if (t.kind() == TermKind::var) {
    auto it = theta.find(t.name());
    return it == theta.end() ? t : it->second;
  }
  if (t.args().empty()) return t;
  bool touches = false;
  for (const auto& x : t.free_vars())
    if (theta.count(x)) {
      touches = true;
      break;
    }
  if (!touches) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(apply_subst(theta, a));
  switch (t.kind()) {
    case TermKind::succ: return Term::succ(args[0]);
    case TermKind::plus: return Term::plus(args[0], args[1]);
    case TermKind::times: return Term::times(args[0], args[1]);
    case TermKind::apply: return Term::apply(t.name(), std::move(args));
    default: return t;
  }
}

Term replace_term(const Term& t, const Term& from, const Term& to) {
  if (t == from) return to;
  if (t.args().empty()) return t;
  std::vector<Term> args;
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(replace_term(a, from, to));
    changed = changed || !(args.back() == a);
  }
  if (!changed) return t;
  switch (t.kind()) {
    case TermKind::succ: return Term::succ(args[0]);
    case TermKind::plus: return Term::plus(args[0], args[1]);
    case TermKind::times: return Term::times(args[0], args[1]);
    case TermKind::apply: return Term::apply(t.name(), std::move(args));
    default: return t;
  }
}

namespace {

Substitution restrict_to(const Substitution& theta, const std::vector<std::string>& vars) {
  Substitution out;
  for (const auto& x : vars) {
    auto it = theta.find(x);
    if (it != theta.end() && !(it->second.kind() == TermKind::var && it->second.name() == x))
      out.emplace(x, it->second);
  }
  return out;
}

}  // namespace

Formula apply_subst(const Substitution& theta, const Formula& f) {
  Substitution th = restrict_to(theta, f.free_vars());
  if (th.empty()) return f;
  switch (f.kind()) {
    case FormulaKind::atom:
    case FormulaKind::neg_atom: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(apply_subst(th, a));
      return f.kind() == FormulaKind::atom ? Formula::atom(f.pred(), std::move(args))
                                           : Formula::neg_atom(f.pred(), std::move(args));
    }
    case FormulaKind::conj:
      return Formula::conj(apply_subst(th, f.left()), apply_subst(th, f.right()));
    case FormulaKind::disj:
      return Formula::disj(apply_subst(th, f.left()), apply_subst(th, f.right()));
    default:
      break;
  }
  const std::string& x = f.var();
  Term bound;
  if (f.is_bounded_quantifier()) bound = apply_subst(th, f.bound());
  std::vector<std::string> body_fv = f.body().free_vars();
  body_fv.erase(std::remove(body_fv.begin(), body_fv.end(), x), body_fv.end());
  Substitution inner = restrict_to(th, body_fv);
  bool capture = bound.valid() && bound.has_var(x);
  for (const auto& [y, t] : inner)
    if (t.has_var(x)) capture = true;
  std::string nx = x;
  if (capture) {
    std::vector<std::string> avoid = f.body().free_vars();
    for (const auto& [y, t] : inner) {
      avoid.push_back(y);
      avoid.insert(avoid.end(), t.free_vars().begin(), t.free_vars().end());
    }
    if (bound.valid()) avoid.insert(avoid.end(), bound.free_vars().begin(), bound.free_vars().end());
    nx = fresh_name(x, avoid);
    inner[x] = Term::var(nx);
  }
  Formula body = apply_subst(inner, f.body());
  switch (f.kind()) {
    case FormulaKind::ex: return Formula::ex(nx, body);
    case FormulaKind::all: return Formula::all(nx, body);
    case FormulaKind::bex: return Formula::bex(nx, bound, body);
    default: return Formula::ball(nx, bound, body);
  }
}

Formula instantiate(const Formula& quantified, const Term& t) {
  if (!quantified.is_quantifier()) throw ConstructionError("instantiate on a non-quantifier");
  return apply_subst(Substitution{{quantified.var(), t}}, quantified.body());
}

std::vector<std::string> free_vars(const Term& t) { return t.free_vars(); }
std::vector<std::string> free_vars(const Formula& f) { return f.free_vars(); }

std::pair<std::vector<std::string>, Formula> forall_block(const Formula& f) {
  std::vector<std::string> xs;
  Formula cur = f;
  while (cur.kind() == FormulaKind::all) {
    xs.push_back(cur.var());
    cur = cur.body();
  }
  return {xs, cur};
}

std::pair<std::vector<std::string>, Formula> exists_block(const Formula& f) {
  std::vector<std::string> xs;
  Formula cur = f;
  while (cur.kind() == FormulaKind::ex) {
    xs.push_back(cur.var());
    cur = cur.body();
  }
  return {xs, cur};
}

Formula close_forall(const std::vector<std::string>& xs, Formula body) {
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = Formula::all(*it, body);
  return body;
}

Formula merge_forall_block(const Formula& f1, const Formula& f2) {
  auto [xs, b1] = forall_block(f1);
  auto [ys, b2] = forall_block(f2);
  std::vector<std::string> avoid = f1.free_vars();
  avoid.insert(avoid.end(), f2.free_vars().begin(), f2.free_vars().end());
  avoid.insert(avoid.end(), xs.begin(), xs.end());
  avoid.insert(avoid.end(), ys.begin(), ys.end());
  auto add_all = [&](const Formula& g) {
    avoid.insert(avoid.end(), g.free_vars().begin(), g.free_vars().end());
  };
  add_all(b1);
  add_all(b2);
  // A binder of the first block free in the second formula would capture it.
  Substitution r1;
  for (auto& x : xs) {
    if (f2.has_free_var(x)) {
      std::string nx = fresh_name(x, avoid);
      avoid.push_back(nx);
      r1[x] = Term::var(nx);
      x = nx;
    }
  }
  if (!r1.empty()) b1 = apply_subst(r1, b1);
  Substitution r2;
  std::vector<std::string> taken = xs;
  for (auto& y : ys) {
    bool clash = std::find(taken.begin(), taken.end(), y) != taken.end() || b1.has_free_var(y);
    if (clash) {
      std::string ny = fresh_name(y, avoid);
      avoid.push_back(ny);
      r2[y] = Term::var(ny);
      y = ny;
    }
    taken.push_back(y);
  }
  if (!r2.empty()) b2 = apply_subst(r2, b2);
  std::vector<std::string> all = xs;
  all.insert(all.end(), ys.begin(), ys.end());
  return close_forall(all, Formula::conj(b1, b2));
}

void collect_subterms(const Term& t, std::vector<Term>& out) {
  out.push_back(t);
  for (const auto& a : t.args()) collect_subterms(a, out);
}

namespace {

void free_subterms_rec(const Formula& f, std::vector<std::string>& bound, std::vector<Term>& out) {
  auto keep = [&](const Term& t) {
    std::vector<Term> all;
    collect_subterms(t, all);
    for (const auto& s : all) {
      bool ok = true;
      for (const auto& b : bound)
        if (s.has_var(b)) {
          ok = false;
          break;
        }
      if (ok) out.push_back(s);
    }
  };
  switch (f.kind()) {
    case FormulaKind::atom:
    case FormulaKind::neg_atom:
      for (const auto& a : f.args()) keep(a);
      return;
    case FormulaKind::conj:
    case FormulaKind::disj:
      free_subterms_rec(f.left(), bound, out);
      free_subterms_rec(f.right(), bound, out);
      return;
    default:
      if (f.is_bounded_quantifier()) keep(f.bound());
      bound.push_back(f.var());
      free_subterms_rec(f.body(), bound, out);
      bound.pop_back();
  }
}

}  // namespace

std::vector<Term> free_subterms(const Formula& f) {
  std::vector<std::string> bound;
  std::vector<Term> out;
  free_subterms_rec(f, bound, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------- printing

std::string to_string(const Term& t) {
  if (!t.valid()) return "<null>";
  switch (t.kind()) {
    case TermKind::var: return "(v " + t.name() + ")";
    case TermKind::zero: return "z";
    case TermKind::succ: return "(s " + to_string(t.arg(0)) + ")";
    case TermKind::plus: return "(+ " + to_string(t.arg(0)) + " " + to_string(t.arg(1)) + ")";
    case TermKind::times: return "(* " + to_string(t.arg(0)) + " " + to_string(t.arg(1)) + ")";
    case TermKind::apply: {
      std::string s = "(fn " + t.name();
      for (const auto& a : t.args()) s += " " + to_string(a);
      return s + ")";
    }
  }
  return "?";
}

std::string to_string(const Formula& f) {
  if (!f.valid()) return "<null>";
  auto atom_text = [&](bool neg) {
    std::string s;
    if (f.pred() == "=") s = neg ? "(neq" : "(eq";
    else if (f.pred() == "<") s = neg ? "(nlt" : "(lt";
    else s = std::string(neg ? "(np " : "(p ") + f.pred();
    for (const auto& a : f.args()) s += " " + to_string(a);
    return s + ")";
  };
  switch (f.kind()) {
    case FormulaKind::atom: return atom_text(false);
    case FormulaKind::neg_atom: return atom_text(true);
    case FormulaKind::conj: return "(and " + to_string(f.left()) + " " + to_string(f.right()) + ")";
    case FormulaKind::disj: return "(or " + to_string(f.left()) + " " + to_string(f.right()) + ")";
    case FormulaKind::ex: return "(ex " + f.var() + " " + to_string(f.body()) + ")";
    case FormulaKind::all: return "(all " + f.var() + " " + to_string(f.body()) + ")";
    case FormulaKind::bex:
      return "(bex " + f.var() + " " + to_string(f.bound()) + " " + to_string(f.body()) + ")";
    case FormulaKind::ball:
      return "(ball " + f.var() + " " + to_string(f.bound()) + " " + to_string(f.body()) + ")";
  }
  return "?";
}

}  // namespace carith
