#include "carith/format.hpp"

#include <fstream>
#include <functional>
#include <memory>
#include <set>
#include <sstream>

namespace carith {

namespace {

const std::string& atom_text(const SExpr& e, const std::string& what) {
  if (!e.is_atom) e.fail("expected " + what);
  return e.text;
}

void expect_size(const SExpr& e, std::size_t n, const std::string& form) {
  if (e.size() != n) e.fail(form + " takes " + std::to_string(n - 1) + " argument(s)");
}

std::uint64_t parse_number(const SExpr& e) {
  const std::string& s = atom_text(e, "a natural number");
  if (s.empty() || s.size() > 19 || s.find_first_not_of("0123456789") != std::string::npos)
    e.fail("expected a natural number, got " + s);
  return std::stoull(s);
}

std::vector<Term> parse_terms(const SExpr& e, std::size_t from) {
  std::vector<Term> out;
  for (std::size_t i = from; i < e.size(); ++i) out.push_back(parse_term(e[i]));
  return out;
}

}  // namespace

Term parse_term(const SExpr& e) {
  if (e.is_atom) {
    if (e.text == "z") return Term::zero();
    e.fail("unknown term " + e.text + " (variables are written (v name))");
  }
  const std::string& h = e.head();
  if (h == "s") {
    expect_size(e, 2, "s");
    return Term::succ(parse_term(e[1]));
  }
  if (h == "+" || h == "*") {
    expect_size(e, 3, h);
    Term a = parse_term(e[1]), b = parse_term(e[2]);
    return h == "+" ? Term::plus(a, b) : Term::times(a, b);
  }
  if (h == "v") {
    expect_size(e, 2, "v");
    return Term::var(atom_text(e[1], "a variable name"));
  }
  if (h == "fn") {
    if (e.size() < 2) e.fail("fn needs a symbol");
    return Term::apply(atom_text(e[1], "a function symbol"), parse_terms(e, 2));
  }
  e.fail("unknown term form '" + h + "'");
}

Formula parse_formula(const SExpr& e) {
  if (!e.is_list()) e.fail("expected a formula, got " + e.text);
  const std::string& h = e.head();
  try {
    if (h == "eq" || h == "lt" || h == "neq" || h == "nlt") {
      expect_size(e, 3, h);
      Term a = parse_term(e[1]), b = parse_term(e[2]);
      if (h == "eq") return Formula::eq(a, b);
      if (h == "lt") return Formula::lt(a, b);
      if (h == "neq") return Formula::neq(a, b);
      return Formula::nlt(a, b);
    }
    if (h == "p" || h == "np") {
      if (e.size() < 2) e.fail(h + " needs a predicate symbol");
      const std::string& name = atom_text(e[1], "a predicate symbol");
      if (name == "=" || name == "<") e.fail("use eq/lt for the arithmetic predicates");
      return h == "p" ? Formula::atom(name, parse_terms(e, 2))
                      : Formula::neg_atom(name, parse_terms(e, 2));
    }
    if (h == "and" || h == "or") {
      expect_size(e, 3, h);
      Formula a = parse_formula(e[1]), b = parse_formula(e[2]);
      return h == "and" ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    if (h == "ex" || h == "all") {
      expect_size(e, 3, h);
      const std::string& x = atom_text(e[1], "a bound variable");
      Formula body = parse_formula(e[2]);
      return h == "ex" ? Formula::ex(x, body) : Formula::all(x, body);
    }
    if (h == "bex" || h == "ball") {
      expect_size(e, 4, h);
      const std::string& x = atom_text(e[1], "a bound variable");
      Term bound = parse_term(e[2]);
      Formula body = parse_formula(e[3]);
      return h == "bex" ? Formula::bex(x, bound, body) : Formula::ball(x, bound, body);
    }
  } catch (const ConstructionError& err) {
    e.fail(err.what());
  }
  e.fail("unknown formula form '" + h + "'");
}

Sequent parse_sequent(const SExpr& e) {
  if (!e.is_form("seq") || e.size() != 3 || e[1].is_atom || e[2].is_atom)
    e.fail("expected (seq (formulas...) (formulas...))");
  std::vector<Formula> a, s;
  for (const auto& f : e[1].items) a.push_back(parse_formula(f));
  for (const auto& f : e[2].items) s.push_back(parse_formula(f));
  return Sequent(a, s);
}

RuleInstance parse_rule(const SExpr& e) {
  if (!e.is_form("rule") || e.size() < 2) e.fail("expected (rule tag args...)");
  const std::string& name = atom_text(e[1], "a rule tag");
  auto tag = rule_tag_from_string(name);
  if (!tag) e[1].fail("unknown rule " + name);
  RuleInstance r = RuleInstance::make(*tag);
  auto optional_principal = [&](std::size_t i) {
    if (e.size() > i + 1) e.fail("too many arguments to " + name);
    if (e.size() == i + 1) r.principal = parse_formula(e[i]);
  };
  switch (*tag) {
    case RuleTag::or_right:
    case RuleTag::and_left:
      if (e.size() < 3) e.fail(name + " needs the index of the active disjunct/conjunct");
      r.index = static_cast<int>(parse_number(e[2]));
      if (r.index > 1) e[2].fail("index must be 0 or 1");
      optional_principal(3);
      break;
    case RuleTag::or_left:
    case RuleTag::and_right:
      optional_principal(2);
      break;
    case RuleTag::ex_left:
    case RuleTag::all_right:
    case RuleTag::bex_left:
    case RuleTag::ball_right:
      if (e.size() < 3) e.fail(name + " needs an eigenvariable");
      r.eigen = atom_text(e[2], "an eigenvariable");
      optional_principal(3);
      break;
    case RuleTag::ex_right:
    case RuleTag::all_left:
    case RuleTag::bex_right:
    case RuleTag::ball_left:
      if (e.size() < 3) e.fail(name + " needs a witness term");
      r.witness = parse_term(e[2]);
      optional_principal(3);
      break;
    case RuleTag::sub:
      expect_size(e, 3, "sub");
      if (e[2].is_atom) e[2].fail("expected ((x t)...)");
      for (const auto& b : e[2].items) {
        if (b.is_atom || b.size() != 2) b.fail("expected (x t)");
        const std::string& x = atom_text(b[0], "a variable");
        if (r.theta.count(x)) b.fail("variable " + x + " bound twice");
        r.theta[x] = parse_term(b[1]);
      }
      break;
    case RuleTag::cut:
      expect_size(e, 3, "cut");
      r.formula = parse_formula(e[2]);
      break;
    case RuleTag::ind:
      expect_size(e, 6, "ind");
      r.hole = atom_text(e[2], "the induction variable");
      r.formula = parse_formula(e[3]);
      r.eigen = atom_text(e[4], "an eigenvariable");
      r.witness = parse_term(e[5]);
      break;
    case RuleTag::q_axiom:
      expect_size(e, 3, "q-axiom");
      r.index = static_cast<int>(parse_number(e[2]));
      if (r.index < 1 || r.index > 8) e[2].fail("Q axioms are numbered 1 to 8");
      break;
    case RuleTag::axiom:
      expect_size(e, 3, "axiom");
      r.axiom = atom_text(e[2], "an axiom name");
      break;
    default:
      expect_size(e, 2, name);
      break;
  }
  return r;
}

Term parse_term(const std::string& text) { return parse_term(parse_sexpr(text)); }
Formula parse_formula(const std::string& text) { return parse_formula(parse_sexpr(text)); }
Sequent parse_sequent(const std::string& text) { return parse_sequent(parse_sexpr(text)); }

// ---------------------------------------------------------------- proofs

namespace {

void check_symbols(const Signature& sig, const Sequent& s, const SExpr& where) {
  try {
    for (const auto& f : s.ant) sig.check(f);
    for (const auto& f : s.suc) sig.check(f);
  } catch (const SignatureError& err) {
    where.fail(err.what());
  }
}

void check_symbols(const Signature& sig, const RuleInstance& r, const SExpr& where) {
  try {
    if (r.principal.valid()) sig.check(r.principal);
    if (r.witness.valid()) sig.check(r.witness);
    if (r.formula.valid()) sig.check(r.formula);
    for (const auto& [x, t] : r.theta) sig.check(t);
  } catch (const SignatureError& err) {
    where.fail(err.what());
  }
}

struct ParsedNode {
  CyclicNode node;
  const SExpr* where = nullptr;
};

}  // namespace

ProofDocument parse_proof(const std::string& text) {
  std::vector<SExpr> top = parse_sexprs(text);
  if (top.size() != 1) {
    if (top.empty()) throw ParseError("empty document", 1, 1);
    top[1].fail("expected a single proof document");
  }
  const SExpr& doc = top[0];
  bool cyclic = doc.is_form("cyclic-proof");
  if (!cyclic && !doc.is_form("finite-proof")) doc.fail("expected (finite-proof ...) or (cyclic-proof ...)");

  Theory th;
  std::string root;
  std::map<std::string, ParsedNode> nodes;
  std::vector<std::string> order;
  std::vector<std::pair<std::string, const SExpr*>> axiom_sites;
  for (std::size_t i = 1; i < doc.size(); ++i) {
    const SExpr& e = doc[i];
    const std::string& h = e.head();
    if (h == "declare") {
      for (std::size_t j = 1; j < e.size(); ++j) {
        const SExpr& d = e[j];
        if (!(d.is_form("fn") || d.is_form("pred")) || d.size() != 3)
          d.fail("expected (fn name arity) or (pred name arity)");
        int arity = static_cast<int>(parse_number(d[2]));
        try {
          if (d.head() == "fn") th.sig.declare_function(atom_text(d[1], "a symbol"), arity);
          else th.sig.declare_predicate(atom_text(d[1], "a symbol"), arity);
        } catch (const SignatureError& err) {
          d.fail(err.what());
        }
      }
    } else if (h == "axiom") {
      expect_size(e, 3, "axiom");
      const std::string& name = atom_text(e[1], "an axiom name");
      if (th.axioms.count(name)) e.fail("axiom " + name + " declared twice");
      th.axioms[name] = parse_sequent(e[2]);
      axiom_sites.emplace_back(name, &e);
    } else if (h == "root") {
      expect_size(e, 2, "root");
      root = atom_text(e[1], "a node id");
    } else if (h == "node") {
      if (e.size() < 5 || e.size() > 6) e.fail("expected (node id (seq ...) (rule ...) (children ...) [(track ...)])");
      const std::string& id = atom_text(e[1], "a node id");
      if (nodes.count(id)) e.fail("node " + id + " defined twice");
      ParsedNode pn;
      pn.where = &e;
      pn.node.sequent = parse_sequent(e[2]);
      pn.node.rule = parse_rule(e[3]);
      if (!e[4].is_form("children")) e[4].fail("expected (children ...)");
      for (std::size_t j = 1; j < e[4].size(); ++j) {
        const SExpr& c = e[4][j];
        if (c.is_atom) {
          pn.node.children.push_back(ChildRef::child(c.text));
        } else if (c.is_form("bud") && (c.size() == 2 || c.size() == 3)) {
          if (!cyclic) c.fail("node " + id + ": buds are not allowed in a finite proof");
          std::optional<Sequent> s;
          if (c.size() == 3) s = parse_sequent(c[2]);
          pn.node.children.push_back(ChildRef::to(atom_text(c[1], "a node id"), s));
        } else {
          c.fail("node " + id + ": expected a node id or (bud id [sequent])");
        }
      }
      if (e.size() == 6) {
        if (!e[5].is_form("track")) e[5].fail("expected (track terms...)");
        if (!cyclic) e[5].fail("track annotations belong to cyclic proofs");
        for (std::size_t j = 1; j < e[5].size(); ++j) pn.node.registered.push_back(parse_term(e[5][j]));
      }
      nodes[id] = std::move(pn);
      order.push_back(id);
    } else {
      e.fail("unknown entry '" + (e.is_atom ? e.text : h) + "'");
    }
  }
  if (nodes.empty()) doc.fail("no nodes");
  if (root.empty()) root = order.front();
  if (!nodes.count(root)) doc.fail("root " + root + " is not a node");
  for (const auto& [name, e] : axiom_sites) check_symbols(th.sig, th.axioms[name], *e);
  for (const auto& [id, pn] : nodes) {
    check_symbols(th.sig, pn.node.sequent, *pn.where);
    check_symbols(th.sig, pn.node.rule, *pn.where);
    for (const auto& c : pn.node.children)
      if (!nodes.count(c.id))
        pn.where->fail("node " + id + ": " + (c.bud ? "bud target " : "child ") + c.id +
                       " does not exist");
    if (pn.node.rule.tag == RuleTag::axiom && !th.axioms.count(pn.node.rule.axiom))
      pn.where->fail("node " + id + ": undeclared axiom " + pn.node.rule.axiom);
  }

  if (cyclic) {
    CyclicPreproof p;
    p.theory = th;
    p.root = root;
    for (auto& [id, pn] : nodes) p.nodes[id] = std::move(pn.node);
    return p;
  }
  FiniteProof p;
  p.theory = th;
  p.root = root;
  for (auto& [id, pn] : nodes) {
    ProofNode n{pn.node.sequent, pn.node.rule, {}};
    for (const auto& c : pn.node.children) n.children.push_back(c.id);
    p.nodes[id] = std::move(n);
  }
  return p;
}

CyclicPreproof to_cyclic(const FiniteProof& p) {
  CyclicPreproof c;
  c.theory = p.theory;
  c.root = p.root;
  for (const auto& [id, n] : p.nodes) {
    CyclicNode cn;
    cn.sequent = n.sequent;
    cn.rule = n.rule;
    for (const auto& k : n.children) cn.children.push_back(ChildRef::child(k));
    c.nodes[id] = std::move(cn);
  }
  return c;
}

CyclicPreproof parse_cyclic_proof(const std::string& text) {
  ProofDocument d = parse_proof(text);
  if (auto* f = std::get_if<FiniteProof>(&d)) return to_cyclic(*f);
  return std::get<CyclicPreproof>(std::move(d));
}

FiniteProof parse_finite_proof(const std::string& text) {
  ProofDocument d = parse_proof(text);
  if (auto* f = std::get_if<FiniteProof>(&d)) return std::move(*f);
  throw InputError("expected a finite proof, got a cyclic one");
}

namespace {

std::string print_header(const std::string& kind, const Theory& th, const std::string& root) {
  std::string s = "(" + kind + "\n";
  auto fns = th.sig.declared_functions();
  auto preds = th.sig.declared_predicates();
  if (!fns.empty() || !preds.empty()) {
    s += "  (declare";
    for (const auto& [f, n] : fns) s += " (fn " + f + " " + std::to_string(n) + ")";
    for (const auto& [f, n] : preds) s += " (pred " + f + " " + std::to_string(n) + ")";
    s += ")\n";
  }
  for (const auto& [name, seq] : th.axioms) s += "  (axiom " + name + " " + to_string(seq) + ")\n";
  s += "  (root " + root + ")\n";
  return s;
}

/// Node ids in preorder from the root, then any unreachable ones.
template <class Nodes, class Kids>
std::vector<std::string> node_order(const Nodes& nodes, const std::string& root, Kids kids) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::vector<std::string> stack{root};
  while (!stack.empty()) {
    std::string id = stack.back();
    stack.pop_back();
    if (!nodes.count(id) || !seen.insert(id).second) continue;
    out.push_back(id);
    auto ks = kids(nodes.at(id));
    for (auto it = ks.rbegin(); it != ks.rend(); ++it) stack.push_back(*it);
  }
  for (const auto& [id, n] : nodes)
    if (!seen.count(id)) out.push_back(id);
  return out;
}

}  // namespace

std::string print_proof(const FiniteProof& p) {
  std::string s = print_header("finite-proof", p.theory, p.root);
  auto order = node_order(p.nodes, p.root, [](const ProofNode& n) { return n.children; });
  for (const auto& id : order) {
    const ProofNode& n = p.nodes.at(id);
    s += "  (node " + id + " " + to_string(n.sequent) + " " + to_string(n.rule) + " (children";
    for (const auto& c : n.children) s += " " + c;
    s += "))\n";
  }
  return s + ")\n";
}

std::string print_proof(const CyclicPreproof& p) {
  std::string s = print_header("cyclic-proof", p.theory, p.root);
  auto order = node_order(p.nodes, p.root, [](const CyclicNode& n) {
    std::vector<std::string> out;
    for (const auto& c : n.children)
      if (!c.bud) out.push_back(c.id);
    return out;
  });
  for (const auto& id : order) {
    const CyclicNode& n = p.nodes.at(id);
    s += "  (node " + id + " " + to_string(n.sequent) + " " + to_string(n.rule) + " (children";
    for (const auto& c : n.children) {
      if (!c.bud) s += " " + c.id;
      else if (c.sequent) s += " (bud " + c.id + " " + to_string(*c.sequent) + ")";
      else s += " (bud " + c.id + ")";
    }
    s += ")";
    if (!n.registered.empty()) {
      s += " (track";
      for (const auto& t : n.registered) s += " " + to_string(t);
      s += ")";
    }
    s += ")\n";
  }
  return s + ")\n";
}

std::string print_proof(const ProofDocument& p) {
  return std::visit([](const auto& x) { return print_proof(x); }, p);
}

// ---------------------------------------------------------------- automata

namespace {

std::vector<std::string> atoms_of(const SExpr& e, const std::string& form) {
  if (!e.is_form(form)) e.fail("expected (" + form + " ...)");
  std::vector<std::string> out;
  for (std::size_t i = 1; i < e.size(); ++i) out.push_back(atom_text(e[i], "a name"));
  return out;
}

struct RawAutomaton {
  std::string kind;
  NBA nba;
  std::vector<unsigned> colour;
};

RawAutomaton parse_raw_automaton(const SExpr& doc) {
  RawAutomaton r;
  r.kind = doc.head();
  if (r.kind != "nba" && r.kind != "dba" && r.kind != "dra") doc.fail("expected (nba ...), (dba ...) or (dra ...)");
  std::map<std::string, const SExpr*> parts;
  for (std::size_t i = 1; i < doc.size(); ++i) {
    const std::string& h = doc[i].head();
    if (h.empty()) doc[i].fail("expected a section");
    if (parts.count(h)) doc[i].fail("section " + h + " given twice");
    parts[h] = &doc[i];
  }
  for (const char* need : {"alphabet", "states", "init", "trans"})
    if (!parts.count(need)) doc.fail(std::string("missing (") + need + " ...)");
  NBA a(atoms_of(*parts["alphabet"], "alphabet"));
  if (a.alphabet.empty()) parts["alphabet"]->fail("empty alphabet");
  std::set<std::string> letters(a.alphabet.begin(), a.alphabet.end());
  if (letters.size() != a.alphabet.size()) parts["alphabet"]->fail("repeated letter");
  for (const auto& q : atoms_of(*parts["states"], "states")) {
    if (a.state_index(q) >= 0) parts["states"]->fail("repeated state " + q);
    a.add_state(q);
  }
  if (a.states.empty()) parts["states"]->fail("no states");
  auto state = [&](const SExpr& e) {
    int q = a.state_index(atom_text(e, "a state"));
    if (q < 0) e.fail("unknown state " + e.text);
    return q;
  };
  const SExpr& init = *parts["init"];
  expect_size(init, 2, "init");
  a.initial = state(init[1]);
  if (parts.count("finals")) {
    if (r.kind == "dra") parts["finals"]->fail("a dra has colours, not finals");
    for (std::size_t i = 1; i < parts["finals"]->size(); ++i) a.final[state((*parts["finals"])[i])] = 1;
  }
  if (r.kind == "dra") {
    if (!parts.count("colours")) doc.fail("missing (colours ...)");
    r.colour.assign(a.states.size(), 0);
    std::vector<char> given(a.states.size(), 0);
    const SExpr& cs = *parts["colours"];
    for (std::size_t i = 1; i < cs.size(); ++i) {
      if (cs[i].is_atom || cs[i].size() != 2) cs[i].fail("expected (state colour)");
      int q = state(cs[i][0]);
      r.colour[q] = static_cast<unsigned>(parse_number(cs[i][1]));
      given[q] = 1;
    }
    for (std::size_t q = 0; q < given.size(); ++q)
      if (!given[q]) cs.fail("state " + a.states[q] + " has no colour");
  }
  const SExpr& tr = *parts["trans"];
  for (std::size_t i = 1; i < tr.size(); ++i) {
    const SExpr& t = tr[i];
    if (t.is_atom || t.size() != 3) t.fail("expected (from letter to)");
    int l = a.letter_index(atom_text(t[1], "a letter"));
    if (l < 0) t[1].fail("unknown letter " + t[1].text);
    a.add_transition(state(t[0]), l, state(t[2]));
  }
  for (const auto& [h, e] : parts)
    if (h != "alphabet" && h != "states" && h != "init" && h != "finals" && h != "trans" && h != "colours")
      e->fail("unknown section " + h);
  r.nba = std::move(a);
  return r;
}

std::string print_common(const std::string& kind, const std::vector<std::string>& alphabet,
                         const std::vector<std::string>& states, int initial) {
  std::string s = "(" + kind + "\n  (alphabet";
  for (const auto& a : alphabet) s += " " + a;
  s += ")\n  (states";
  for (const auto& q : states) s += " " + q;
  s += ")\n  (init " + states[initial] + ")\n";
  return s;
}

}  // namespace

Automaton parse_automaton(const std::string& text) {
  std::vector<SExpr> top = parse_sexprs(text);
  if (top.size() != 1) {
    if (top.empty()) throw ParseError("empty document", 1, 1);
    top[1].fail("expected a single automaton");
  }
  RawAutomaton r = parse_raw_automaton(top[0]);
  try {
    if (r.kind == "nba") return r.nba;
    DBA d = DBA::from_nba(r.nba);
    if (r.kind == "dba") return d;
    DRA out;
    out.alphabet = d.alphabet;
    out.states = d.states;
    out.initial = d.initial;
    out.next = d.next;
    out.colour = r.colour;
    return out;
  } catch (const AutomatonError& e) {
    top[0].fail(e.what());
  }
}

std::string print_automaton(const NBA& a) {
  std::string s = print_common("nba", a.alphabet, a.states, a.initial) + "  (finals";
  for (std::size_t q = 0; q < a.num_states(); ++q)
    if (a.final[q]) s += " " + a.states[q];
  s += ")\n  (trans";
  for (std::size_t q = 0; q < a.num_states(); ++q)
    for (std::size_t l = 0; l < a.num_letters(); ++l)
      for (int t : a.delta[q][l]) s += " (" + a.states[q] + " " + a.alphabet[l] + " " + a.states[t] + ")";
  return s + "))\n";
}

std::string print_automaton(const DBA& a) {
  std::string s = print_common("dba", a.alphabet, a.states, a.initial) + "  (finals";
  for (std::size_t q = 0; q < a.num_states(); ++q)
    if (a.final[q]) s += " " + a.states[q];
  s += ")\n  (trans";
  for (std::size_t q = 0; q < a.num_states(); ++q)
    for (std::size_t l = 0; l < a.alphabet.size(); ++l)
      s += " (" + a.states[q] + " " + a.alphabet[l] + " " + a.states[a.next[q][l]] + ")";
  return s + "))\n";
}

std::string print_automaton(const DRA& a) {
  std::string s = print_common("dra", a.alphabet, a.states, a.initial) + "  (colours";
  for (std::size_t q = 0; q < a.num_states(); ++q)
    s += " (" + a.states[q] + " " + std::to_string(a.colour[q]) + ")";
  s += ")\n  (trans";
  for (std::size_t q = 0; q < a.num_states(); ++q)
    for (std::size_t l = 0; l < a.alphabet.size(); ++l)
      s += " (" + a.states[q] + " " + a.alphabet[l] + " " + a.states[a.next[q][l]] + ")";
  return s + "))\n";
}

std::string print_automaton(const Automaton& a) {
  return std::visit([](const auto& x) { return print_automaton(x); }, a);
}

const std::vector<std::string>& alphabet_of(const Automaton& a) {
  return std::visit([](const auto& x) -> const std::vector<std::string>& { return x.alphabet; }, a);
}

// ---------------------------------------------------------------- lassos, assignments

LassoWord parse_lasso(const std::string& text, const std::vector<std::string>& alphabet) {
  auto letter = [&](const std::string& a, std::size_t line, std::size_t col) {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == a) return static_cast<int>(i);
    throw ParseError("unknown letter " + a, line, col);
  };
  LassoWord w;
  std::size_t start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text[start] == '(') {
    SExpr e = parse_sexpr(text);
    if (!e.is_form("lasso") || e.size() != 3 || e[1].is_atom || e[2].is_atom)
      e.fail("expected (lasso (u...) (v...))");
    for (const auto& a : e[1].items) w.u.push_back(letter(atom_text(a, "a letter"), a.line, a.col));
    for (const auto& a : e[2].items) w.v.push_back(letter(atom_text(a, "a letter"), a.line, a.col));
  } else {
    std::size_t semi = text.find(';');
    if (semi == std::string::npos || text.find(';', semi + 1) != std::string::npos)
      throw ParseError("expected u;v with exactly one ';'", 1, 1);
    auto split = [&](std::size_t from, std::size_t to, std::vector<int>& out) {
      std::string cur;
      std::size_t col = from + 1;
      for (std::size_t i = from; i <= to; ++i) {
        char c = i < to ? text[i] : ' ';
        if (c == ' ' || c == ',' || c == '\t' || c == '\n' || c == '\r') {
          if (!cur.empty()) out.push_back(letter(cur, 1, col));
          cur.clear();
          col = i + 2;
        } else {
          cur += c;
        }
      }
    };
    split(0, semi, w.u);
    split(semi + 1, text.size(), w.v);
  }
  if (w.v.empty()) throw ParseError("the loop of a lasso must be nonempty", 1, 1);
  return w;
}

std::string print_lasso(const LassoWord& w, const std::vector<std::string>& alphabet) {
  std::string s = "(lasso (";
  for (std::size_t i = 0; i < w.u.size(); ++i) s += (i ? " " : "") + alphabet.at(w.u[i]);
  s += ") (";
  for (std::size_t i = 0; i < w.v.size(); ++i) s += (i ? " " : "") + alphabet.at(w.v[i]);
  return s + "))";
}

Assignment parse_assignment(const std::string& text) {
  SExpr e = parse_sexpr(text);
  if (!e.is_form("assign")) e.fail("expected (assign (x n)...)");
  Assignment rho;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const SExpr& b = e[i];
    if (b.is_atom || b.size() != 2) b.fail("expected (x n)");
    const std::string& x = atom_text(b[0], "a variable");
    if (rho.count(x)) b.fail("variable " + x + " assigned twice");
    rho[x] = parse_number(b[1]);
  }
  return rho;
}

Interpretation parse_interpretation(const std::string& text) {
  SExpr doc = parse_sexpr(text);
  if (!doc.is_form("interp")) doc.fail("expected (interp ...)");
  Interpretation in;
  auto params_of = [](const SExpr& e) {
    std::vector<std::string> xs;
    for (const auto& x : e.items) xs.push_back(atom_text(x, "a parameter"));
    return xs;
  };
  auto bind = [](const std::vector<std::string>& xs, const std::vector<Value>& args) {
    Assignment rho;
    for (std::size_t i = 0; i < xs.size(); ++i) rho[xs[i]] = args[i];
    return rho;
  };
  for (std::size_t i = 1; i < doc.size(); ++i) {
    const SExpr& e = doc[i];
    const std::string& h = e.head();
    if (h == "bound") {
      expect_size(e, 2, "bound");
      in.value_bound = parse_number(e[1]);
      continue;
    }
    if ((h != "fn" && h != "pred") || e.size() < 4) e.fail("expected (fn ...) or (pred ...)");
    const std::string& name = atom_text(e[1], "a symbol");
    if (in.functions.count(name) || in.predicates.count(name)) e.fail(name + " defined twice");
    auto snapshot = std::make_shared<Interpretation>(in);
    if (e[2].is_list()) {
      expect_size(e, 4, h);
      auto xs = params_of(e[2]);
      int arity = static_cast<int>(xs.size());
      if (h == "fn") {
        Term body = parse_term(e[3]);
        in.functions[name] = {arity, [=](const std::vector<Value>& args) {
                                return eval_term(bind(xs, args), *snapshot, body);
                              }};
      } else {
        Formula body = parse_formula(e[3]);
        in.predicates[name] = {arity, [=](const std::vector<Value>& args) {
                                 Truth t = models(bind(xs, args), *snapshot, body, 0);
                                 if (t == Truth::Unknown)
                                   throw SemanticsError("predicate " + name + " needs an unbounded search");
                                 return t == Truth::True;
                               }};
      }
      continue;
    }
    int arity = static_cast<int>(parse_number(e[2]));
    const SExpr& table = e[3];
    if (!table.is_form("table")) table.fail("expected (table rows...)");
    if (h == "fn") {
      std::map<std::vector<Value>, Value> rows;
      std::optional<Value> fallback;
      if (e.size() == 5) {
        if (!e[4].is_form("default") || e[4].size() != 2) e[4].fail("expected (default n)");
        fallback = parse_number(e[4][1]);
      } else if (e.size() != 4) {
        e.fail("too many arguments");
      }
      for (std::size_t j = 1; j < table.size(); ++j) {
        const SExpr& row = table[j];
        if (row.is_atom || row.size() != static_cast<std::size_t>(arity) + 1)
          row.fail("a row lists " + std::to_string(arity) + " argument(s) and a value");
        std::vector<Value> args;
        for (int k = 0; k < arity; ++k) args.push_back(parse_number(row[k]));
        rows[args] = parse_number(row[arity]);
      }
      in.functions[name] = {arity, [=](const std::vector<Value>& args) {
                              auto it = rows.find(args);
                              if (it != rows.end()) return it->second;
                              if (fallback) return *fallback;
                              throw SemanticsError("function " + name + " undefined at these arguments");
                            }};
    } else {
      std::set<std::vector<Value>> rows;
      for (std::size_t j = 1; j < table.size(); ++j) {
        const SExpr& row = table[j];
        if (row.is_atom || row.size() != static_cast<std::size_t>(arity))
          row.fail("a row lists " + std::to_string(arity) + " argument(s)");
        std::vector<Value> args;
        for (int k = 0; k < arity; ++k) args.push_back(parse_number(row[k]));
        rows.insert(args);
      }
      in.predicates[name] = {arity, [=](const std::vector<Value>& args) { return rows.count(args) > 0; }};
    }
  }
  return in;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace carith
