#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "carith/calculus.hpp"
#include "carith/cyclic.hpp"

namespace carith {

struct DNode;
/// In-memory derivation tree. Bud leaves point back to an ancestor carrying the same label.
using Deriv = std::shared_ptr<DNode>;

struct DNode {
  Sequent seq;
  RuleInstance rule;
  std::vector<Deriv> kids;
  /// Companion label, or -1.
  int label = -1;
  /// Label of the companion when this node is a bud leaf, or -1.
  int bud = -1;
  std::vector<Term> registered;
  /// For assumption leaves: the formula the assumption stands for.
  std::optional<Formula> key;
};

/// Hands out variable names that clash with nothing reserved so far.
class NameSupply {
 public:
  void reserve(const std::string& x) { used_.insert(x); }
  void reserve(const Term& t);
  void reserve(const Formula& f);
  void reserve(const Sequent& s);
  void reserve(const RuleInstance& r);
  void reserve(const Deriv& d);
  /// base', base'', ... ; the result is reserved.
  std::string fresh(const std::string& base);

 private:
  std::set<std::string> used_;
};

int new_label();

Deriv leaf(Sequent s, RuleInstance r);
Deriv make_step(Sequent s, RuleInstance r, std::vector<Deriv> kids);
Deriv bud_leaf(Sequent s, int label);
Deriv assume(Sequent s, std::optional<Formula> key = std::nullopt);
/// d itself when it already concludes `target`, else a wk step. Throws ConstructionError
/// unless d's conclusion is contained in target.
Deriv weaken(const Sequent& target, Deriv d);
/// Cut on f; both premisses are weakened into place.
Deriv cut(const Sequent& s, const Formula& f, Deriv left, Deriv right);
Deriv substitute(const Sequent& target, Substitution theta, Deriv d);

RuleInstance rule_of(RuleTag t);
RuleInstance rule_q(int k);
RuleInstance rule_eigen(RuleTag t, const std::string& a, const Formula& principal);
RuleInstance rule_witness(RuleTag t, const Term& w, const Formula& principal);
RuleInstance rule_index(RuleTag t, int i, const Formula& principal);

/// Deep copy with fresh companion labels.
Deriv copy(const Deriv& d);
/// Copy that adds the formulas of `extra` to every sequent.
Deriv extend_all(const Deriv& d, const Sequent& extra);
/// Apply theta to every sequent and rule annotation.
Deriv subst_tree(const Deriv& d, const Substitution& theta);
void register_all(const Deriv& d, const Term& t);
std::size_t size(const Deriv& d);
std::vector<Deriv> assumption_leaves(const Deriv& d);
/// Replace every assumption leaf keyed by `key` with make(leaf sequent).
template <class F>
Deriv plug(const Deriv& d, const Formula& key, F&& make);

/// Preorder ids prefix0, prefix1, ...; buds become bud references carrying their sequent.
CyclicPreproof flatten(const Deriv& d, const Theory& th, const std::string& prefix = "n");
/// Throws ConstructionError if d contains buds.
FiniteProof flatten_finite(const Deriv& d, const Theory& th, const std::string& prefix = "n");
Deriv unflatten(const CyclicPreproof& p);
Deriv unflatten(const FiniteProof& p);

/// Derivation of `target` from d by cuts that trade a formula for its dual on the other side,
/// closed by neg-left/neg-right, and a final weakening.
Deriv bridge(const Sequent& target, Deriv d);

/// {a = b} => b = a
Deriv symmetry(const Term& a, const Term& b);
/// {l = r} => u[l/x] = u[r/x]
Deriv term_congruence(const Term& u, const std::string& x, const Term& l, const Term& r);
/// {l = r, psi[l/x]} => psi[r/x]. Bound variables of psi must avoid l, r and x.
Deriv congruence(const Formula& psi, const std::string& x, const Term& l, const Term& r,
                 NameSupply& names);
/// {l = r, psi[r/x]} => psi[l/x]
Deriv congruence_reverse(const Formula& psi, const std::string& x, const Term& l, const Term& r,
                         NameSupply& names);

// ---------------------------------------------------------------- template definitions

template <class F>
Deriv plug(const Deriv& d, const Formula& key, F&& make) {
  if (d->rule.tag == RuleTag::assumption && d->bud < 0 && d->key && *d->key == key)
    return make(d->seq);
  bool changed = false;
  std::vector<Deriv> kids;
  kids.reserve(d->kids.size());
  for (const auto& k : d->kids) {
    kids.push_back(plug(k, key, make));
    changed = changed || kids.back() != k;
  }
  if (!changed) return d;
  auto n = std::make_shared<DNode>(*d);
  n->kids = std::move(kids);
  return n;
}

}  // namespace carith
