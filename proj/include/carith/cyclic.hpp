#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "carith/automata.hpp"
#include "carith/calculus.hpp"

namespace carith {

/// A premiss reference: an ordinary child, or a bud pointing back to a companion below it.
/// A bud may record the sequent it expects, which must equal the companion's.
struct ChildRef {
  std::string id;
  bool bud = false;
  std::optional<Sequent> sequent;

  static ChildRef child(std::string id) { return {std::move(id), false, std::nullopt}; }
  static ChildRef to(std::string id, std::optional<Sequent> s = std::nullopt) {
    return {std::move(id), true, std::move(s)};
  }
};

struct CyclicNode {
  Sequent sequent;
  RuleInstance rule;
  std::vector<ChildRef> children;
  /// Extra terms a trace may follow through this node, as if t = t were in the antecedent.
  std::vector<Term> registered;
};

/// Finite proof graph in cycle normal form: a tree plus bud edges.
struct CyclicPreproof {
  std::map<std::string, CyclicNode> nodes;
  std::string root;
  Theory theory;

  const Sequent& conclusion() const { return nodes.at(root).sequent; }
  std::size_t num_buds() const;
  /// Companions of all bud edges, one entry per bud.
  std::vector<std::string> bud_targets() const;
};

struct ProofEdge {
  std::string source;
  std::size_t index = 0;
  friend auto operator<=>(const ProofEdge&, const ProofEdge&) = default;
};

std::string to_string(const ProofEdge& e);

struct LassoBranch {
  std::vector<ProofEdge> prefix, cycle;
  friend bool operator==(const LassoBranch&, const LassoBranch&) = default;
};

enum class LocalErrorKind {
  step,
  bud_mismatch,
  bad_reference,
  not_a_tree,
  induction_forbidden,
  assumption_forbidden,
};

std::string to_string(LocalErrorKind k);

struct LocalError {
  std::string node;
  LocalErrorKind kind;
  std::string message;
};

/// Local correctness of every node, with bud premisses read off their companions.
std::vector<LocalError> check_local(const CyclicPreproof& p, bool allow_assumptions = false);

/// Target node of an edge: the child, or the companion for a bud.
const std::string& resolve(const CyclicPreproof& p, const ProofEdge& e);
/// Every edge of the proof graph, in node order.
std::vector<ProofEdge> proof_edges(const CyclicPreproof& p);

/// Free subterms of the node's sequent plus its registered terms, sorted.
std::vector<Term> tracked_terms(const CyclicPreproof& p, const std::string& node);

/// Terms t' at the premiss of e that t at the conclusion may continue to.
std::vector<Term> precursors(const CyclicPreproof& p, const ProofEdge& e, const Term& t);
/// Trace continuations of t across e, flagged when the trace progresses there.
std::vector<std::pair<Term, bool>> trace_successors(const CyclicPreproof& p, const ProofEdge& e,
                                                    const Term& t);

/// Automaton over the alphabet of proof edges. Letter i is edges[i], spelled "node:index".
struct BranchAutomaton {
  DBA dba;
  std::vector<ProofEdge> edges;
};

struct TraceAutomaton {
  NBA nba;
  std::vector<ProofEdge> edges;
};

BranchAutomaton branch_automaton(const CyclicPreproof& p);
TraceAutomaton trace_automaton(const CyclicPreproof& p);

LassoWord to_lasso_word(const std::vector<ProofEdge>& alphabet, const LassoBranch& b);
LassoBranch to_lasso_branch(const std::vector<ProofEdge>& alphabet, const LassoWord& w);

/// Whether the lasso follows edges of the proof graph from the root and its cycle closes.
bool is_branch(const CyclicPreproof& p, const LassoBranch& b);

/// Independent check for an infinitely progressing trace along the branch, by composing the
/// trace relation once around the cycle. Throws std::invalid_argument if b is not a branch.
bool oracle_trace_check(const CyclicPreproof& p, const LassoBranch& b);

struct Verdict {
  bool valid = false;
  std::vector<LocalError> local_errors;
  std::optional<LassoBranch> counterexample;
  std::size_t branch_states = 0, trace_states = 0, explored = 0;
};

/// Local check, then L(branch automaton) inclusion in L(trace automaton). Counterexamples are
/// shortened and certified by both automata and by oracle_trace_check.
Verdict check(const CyclicPreproof& p);

}  // namespace carith
