#include "carith/cyclic.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace carith {

std::size_t CyclicPreproof::num_buds() const { return bud_targets().size(); }

std::vector<std::string> CyclicPreproof::bud_targets() const {
  std::vector<std::string> out;
  for (const auto& [id, n] : nodes)
    for (const auto& c : n.children)
      if (c.bud) out.push_back(c.id);
  return out;
}

std::string to_string(const ProofEdge& e) { return e.source + ":" + std::to_string(e.index); }

std::string to_string(LocalErrorKind k) {
  switch (k) {
    case LocalErrorKind::step: return "step";
    case LocalErrorKind::bud_mismatch: return "bud-mismatch";
    case LocalErrorKind::bad_reference: return "bad-reference";
    case LocalErrorKind::not_a_tree: return "not-a-tree";
    case LocalErrorKind::induction_forbidden: return "induction-forbidden";
    case LocalErrorKind::assumption_forbidden: return "assumption-forbidden";
  }
  return "?";
}

std::vector<LocalError> check_local(const CyclicPreproof& p, bool allow_assumptions) {
  std::vector<LocalError> errs;
  if (!p.nodes.count(p.root)) {
    errs.push_back({p.root, LocalErrorKind::bad_reference, "root node missing"});
    return errs;
  }
  // Tree shape and bud targets, by a depth-first walk that keeps the current root path.
  std::set<std::string> visited, on_path;
  std::function<void(const std::string&)> walk = [&](const std::string& id) {
    visited.insert(id);
    on_path.insert(id);
    const CyclicNode& n = p.nodes.at(id);
    for (const auto& c : n.children) {
      if (!p.nodes.count(c.id)) {
        errs.push_back({id, LocalErrorKind::bad_reference, "unknown node " + c.id});
        continue;
      }
      if (c.bud) {
        if (!on_path.count(c.id))
          errs.push_back({id, LocalErrorKind::bad_reference,
                          "bud target " + c.id + " is not on the path from the root"});
        if (c.sequent && !(*c.sequent == p.nodes.at(c.id).sequent))
          errs.push_back({id, LocalErrorKind::bud_mismatch,
                          "bud sequent differs from its companion " + c.id});
        continue;
      }
      if (visited.count(c.id)) {
        errs.push_back({id, LocalErrorKind::not_a_tree, "node " + c.id + " has two parents"});
        continue;
      }
      walk(c.id);
    }
    on_path.erase(id);
  };
  walk(p.root);
  for (const auto& [id, n] : p.nodes)
    if (!visited.count(id))
      errs.push_back({id, LocalErrorKind::not_a_tree, "node unreachable from the root"});

  for (const auto& [id, n] : p.nodes) {
    if (n.rule.tag == RuleTag::ind) {
      errs.push_back({id, LocalErrorKind::induction_forbidden, "induction steps are not allowed"});
      continue;
    }
    if (n.rule.tag == RuleTag::assumption && !allow_assumptions) {
      errs.push_back({id, LocalErrorKind::assumption_forbidden, "open assumption"});
      continue;
    }
    std::vector<Sequent> prem;
    bool ok = true;
    for (const auto& c : n.children) {
      auto it = p.nodes.find(c.id);
      if (it == p.nodes.end()) {
        ok = false;
        break;
      }
      prem.push_back(it->second.sequent);
    }
    if (!ok) continue;
    if (auto e = check_step(n.sequent, n.rule, prem, &p.theory))
      errs.push_back({id, LocalErrorKind::step, to_string(e->kind) + ": " + e->message});
  }
  return errs;
}

const std::string& resolve(const CyclicPreproof& p, const ProofEdge& e) {
  return p.nodes.at(e.source).children.at(e.index).id;
}

std::vector<ProofEdge> proof_edges(const CyclicPreproof& p) {
  std::vector<ProofEdge> out;
  for (const auto& [id, n] : p.nodes)
    for (std::size_t i = 0; i < n.children.size(); ++i) out.push_back({id, i});
  return out;
}

std::vector<Term> tracked_terms(const CyclicPreproof& p, const std::string& node) {
  const CyclicNode& n = p.nodes.at(node);
  std::vector<Term> out = n.sequent.terms();
  for (const auto& t : n.registered) collect_subterms(t, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Term> precursors(const CyclicPreproof& p, const ProofEdge& e, const Term& t) {
  const CyclicNode& n = p.nodes.at(e.source);
  std::vector<Term> out;
  if (n.rule.tag == RuleTag::sub) {
    for (const auto& s : tracked_terms(p, resolve(p, e)))
      if (apply_subst(n.rule.theta, s) == t) out.push_back(s);
    return out;
  }
  for (const auto& f : n.sequent.ant)
    if (f.kind() == FormulaKind::atom && f.pred() == "=" && f.args()[1] == t)
      out.push_back(f.args()[0]);
  bool blocked = false;
  for (const auto& a : n.rule.eigenvariables())
    if (t.has_var(a)) blocked = true;
  if (!blocked) out.push_back(t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<Term, bool>> trace_successors(const CyclicPreproof& p, const ProofEdge& e,
                                                    const Term& t) {
  const std::string& target = resolve(p, e);
  const Sequent& prem = p.nodes.at(target).sequent;
  std::vector<Term> tracked = tracked_terms(p, target);
  std::vector<std::pair<Term, bool>> out;
  for (const auto& s : precursors(p, e, t)) {
    if (std::binary_search(tracked.begin(), tracked.end(), s)) out.emplace_back(s, false);
    for (const auto& f : prem.ant)
      if (f.kind() == FormulaKind::atom && f.pred() == "<" && f.args()[1] == s)
        out.emplace_back(f.args()[0], true);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<std::string> edge_alphabet(const std::vector<ProofEdge>& edges) {
  std::vector<std::string> out;
  for (const auto& e : edges) out.push_back(to_string(e));
  return out;
}

int edge_letter(const std::vector<ProofEdge>& alphabet, const ProofEdge& e) {
  auto it = std::lower_bound(alphabet.begin(), alphabet.end(), e);
  if (it == alphabet.end() || !(*it == e))
    throw std::invalid_argument("edge " + to_string(e) + " is not in the proof");
  return static_cast<int>(it - alphabet.begin());
}

}  // namespace

BranchAutomaton branch_automaton(const CyclicPreproof& p) {
  BranchAutomaton b;
  b.edges = proof_edges(p);
  DBA& d = b.dba;
  d.alphabet = edge_alphabet(b.edges);
  std::map<std::string, int> index;
  for (const auto& [id, n] : p.nodes) {
    index[id] = static_cast<int>(d.states.size());
    d.states.push_back(id);
    d.final.push_back(1);
  }
  const int sink = static_cast<int>(d.states.size());
  d.states.push_back("sink");
  d.final.push_back(0);
  d.initial = index.at(p.root);
  d.next.assign(d.states.size(), std::vector<int>(b.edges.size(), sink));
  for (std::size_t l = 0; l < b.edges.size(); ++l) {
    const ProofEdge& e = b.edges[l];
    d.next[index.at(e.source)][l] = index.at(resolve(p, e));
  }
  return b;
}

TraceAutomaton trace_automaton(const CyclicPreproof& p) {
  TraceAutomaton ta;
  ta.edges = proof_edges(p);
  NBA& a = ta.nba;
  a.alphabet = edge_alphabet(ta.edges);
  a.initial = a.add_state("scan");
  // state_of[node][term index][progress]
  std::map<std::string, std::vector<Term>> terms;
  std::map<std::string, std::vector<std::array<int, 2>>> state_of;
  for (const auto& [id, n] : p.nodes) {
    terms[id] = tracked_terms(p, id);
    auto& v = state_of[id];
    for (const auto& t : terms[id]) {
      std::array<int, 2> s{};
      for (int prog = 0; prog < 2; ++prog)
        s[prog] = a.add_state(id + "|" + to_string(t) + (prog ? "|prog" : "|noprog"), prog == 1);
      v.push_back(s);
    }
  }
  for (std::size_t l = 0; l < ta.edges.size(); ++l) {
    const ProofEdge& e = ta.edges[l];
    const std::string& target = resolve(p, e);
    const auto& tgt_terms = terms.at(target);
    const auto& tgt_states = state_of.at(target);
    a.add_transition(a.initial, l, a.initial);
    for (std::size_t k = 0; k < tgt_terms.size(); ++k) a.add_transition(a.initial, l, tgt_states[k][0]);
    const auto& src_terms = terms.at(e.source);
    const auto& src_states = state_of.at(e.source);
    for (std::size_t k = 0; k < src_terms.size(); ++k)
      for (const auto& [t2, prog] : trace_successors(p, e, src_terms[k])) {
        auto it = std::lower_bound(tgt_terms.begin(), tgt_terms.end(), t2);
        int to = tgt_states[it - tgt_terms.begin()][prog ? 1 : 0];
        a.add_transition(src_states[k][0], l, to);
        a.add_transition(src_states[k][1], l, to);
      }
  }
  return ta;
}

LassoWord to_lasso_word(const std::vector<ProofEdge>& alphabet, const LassoBranch& b) {
  LassoWord w;
  for (const auto& e : b.prefix) w.u.push_back(edge_letter(alphabet, e));
  for (const auto& e : b.cycle) w.v.push_back(edge_letter(alphabet, e));
  return w;
}

LassoBranch to_lasso_branch(const std::vector<ProofEdge>& alphabet, const LassoWord& w) {
  LassoBranch b;
  for (int l : w.u) b.prefix.push_back(alphabet.at(l));
  for (int l : w.v) b.cycle.push_back(alphabet.at(l));
  return b;
}

bool is_branch(const CyclicPreproof& p, const LassoBranch& b) {
  if (b.cycle.empty() || !p.nodes.count(p.root)) return false;
  std::string cur = p.root;
  auto step = [&](const ProofEdge& e) {
    if (e.source != cur) return false;
    auto it = p.nodes.find(cur);
    if (it == p.nodes.end() || e.index >= it->second.children.size()) return false;
    cur = it->second.children[e.index].id;
    return p.nodes.count(cur) > 0;
  };
  for (const auto& e : b.prefix)
    if (!step(e)) return false;
  const std::string entry = cur;
  for (const auto& e : b.cycle)
    if (!step(e)) return false;
  return cur == entry;
}

bool oracle_trace_check(const CyclicPreproof& p, const LassoBranch& b) {
  if (!is_branch(p, b)) throw std::invalid_argument("not a branch of the proof");
  const std::string& entry = b.cycle.front().source;
  const std::vector<Term> start = tracked_terms(p, entry);
  // rel[i]: terms reachable from start[i] at the current position, with a progress flag.
  std::vector<std::map<Term, bool>> rel(start.size());
  for (std::size_t i = 0; i < start.size(); ++i) rel[i][start[i]] = false;
  for (const auto& e : b.cycle) {
    for (auto& r : rel) {
      std::map<Term, bool> nxt;
      for (const auto& [t, flag] : r)
        for (const auto& [t2, prog] : trace_successors(p, e, t)) {
          bool f = flag || prog;
          auto [it, fresh] = nxt.emplace(t2, f);
          if (!fresh) it->second = it->second || f;
        }
      r = std::move(nxt);
    }
  }
  // Graph on start terms; look for a cycle through a progressing edge.
  const std::size_t n = start.size();
  std::vector<std::vector<std::pair<std::size_t, bool>>> g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [t, flag] : rel[i]) {
      auto it = std::lower_bound(start.begin(), start.end(), t);
      if (it != start.end() && *it == t) g[i].emplace_back(it - start.begin(), flag);
    }
  auto reaches = [&](std::size_t from, std::size_t to) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> todo{from};
    seen[from] = 1;
    while (!todo.empty()) {
      std::size_t x = todo.back();
      todo.pop_back();
      if (x == to) return true;
      for (auto [y, f] : g[x])
        if (!seen[y]) {
          seen[y] = 1;
          todo.push_back(y);
        }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (auto [j, f] : g[i])
      if (f && reaches(j, i)) return true;
  return false;
}

namespace {

/// Same omega-word, shorter lasso: primitive loop, prefix folded into the loop.
LassoWord shorten(LassoWord w) {
  const std::size_t m = w.v.size();
  for (std::size_t d = 1; d <= m; ++d) {
    if (m % d) continue;
    bool periodic = true;
    for (std::size_t i = d; i < m && periodic; ++i) periodic = w.v[i] == w.v[i - d];
    if (periodic) {
      w.v.resize(d);
      break;
    }
  }
  while (!w.u.empty() && w.u.back() == w.v.back()) {
    w.u.pop_back();
    std::rotate(w.v.rbegin(), w.v.rbegin() + 1, w.v.rend());
  }
  return w;
}

}  // namespace

Verdict check(const CyclicPreproof& p) {
  Verdict v;
  v.local_errors = check_local(p);
  if (!v.local_errors.empty()) return v;
  BranchAutomaton ba = branch_automaton(p);
  TraceAutomaton ta = trace_automaton(p);
  v.branch_states = ba.dba.num_states();
  v.trace_states = ta.nba.num_states();
  InclusionResult inc = includes(ba.dba, ta.nba);
  v.explored = inc.explored;
  if (inc.holds) {
    v.valid = true;
    return v;
  }
  LassoWord w = shorten(*inc.counterexample);
  LassoBranch b = to_lasso_branch(ba.edges, w);
  if (!dba_accepts_lasso(ba.dba, w) || nba_accepts_lasso(ta.nba, w) || !is_branch(p, b) ||
      oracle_trace_check(p, b))
    throw InvariantError("cyclic proof counterexample failed certification");
  v.counterexample = std::move(b);
  return v;
}

}  // namespace carith
