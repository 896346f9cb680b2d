#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "carith/logic.hpp"

namespace carith {

/// Sorted, duplicate-free list of formulas.
using Cedent = std::vector<Formula>;

Cedent make_cedent(std::vector<Formula> fs);
bool cedent_contains(const Cedent& c, const Formula& f);
bool cedent_subset(const Cedent& a, const Cedent& b);
Cedent cedent_union(const Cedent& a, const Cedent& b);
Cedent cedent_minus(const Cedent& a, const Cedent& b);

/// Gamma => Delta with set semantics.
struct Sequent {
  Cedent ant, suc;

  Sequent() = default;
  Sequent(std::vector<Formula> a, std::vector<Formula> s);

  std::vector<std::string> free_vars() const;
  bool has_free_var(const std::string& x) const;
  /// Terms occurring in the sequent, including subterms.
  std::vector<Term> terms() const;
  friend bool operator==(const Sequent&, const Sequent&) = default;
};

Sequent apply_subst(const Substitution& theta, const Sequent& s);
/// Gamma', s, Delta': prepend/append formulas to the two cedents.
Sequent extend(const Sequent& s, const std::vector<Formula>& ant, const std::vector<Formula>& suc);
std::string to_string(const Sequent& s);

enum class RuleTag {
  id, eq1, eq2, eq3, neg_left, neg_right,
  or_left, or_right, and_left, and_right,
  ex_left, ex_right, all_left, all_right,
  bex_left, bex_right, ball_left, ball_right,
  sub, cut, wk, ind, q_axiom, assumption, axiom
};

std::string to_string(RuleTag t);
std::optional<RuleTag> rule_tag_from_string(const std::string& s);
/// Number of premisses; ind and cut have two, axioms and assumptions none.
int rule_arity(RuleTag t);
bool is_initial_rule(RuleTag t);

/// An annotated inference step. Which fields matter depends on the tag.
struct RuleInstance {
  RuleTag tag = RuleTag::assumption;
  /// i for or-right/and-left, axiom number for q-axiom.
  int index = 0;
  /// Principal formula of logical rules.
  Formula principal;
  /// Eigenvariable of ex-left, all-right, bex-left, ball-right and ind.
  std::string eigen;
  /// Witness of ex-right, all-left, bex-right, ball-left; term of ind.
  Term witness;
  Substitution theta;
  /// Cut formula; the induction formula with hole variable `hole`.
  Formula formula;
  std::string hole;
  /// Name of a declared theory axiom.
  std::string axiom;

  static RuleInstance make(RuleTag t) {
    RuleInstance r;
    r.tag = t;
    return r;
  }
  /// Variables this step binds: eigenvariable or the support of a substitution.
  std::vector<std::string> eigenvariables() const;
  friend bool operator==(const RuleInstance&, const RuleInstance&);
};

std::string to_string(const RuleInstance& r);

/// Signature plus named non-logical axioms, given as schematic sequents whose
/// free variables may be instantiated.
struct Theory {
  Signature sig;
  std::map<std::string, Sequent> axioms;
};

enum class StepErrorKind {
  missing_principal,
  eigenvariable_not_fresh,
  substitution_mismatch,
  arity,
  bound_mismatch,
  context_mismatch,
  not_an_axiom,
};

std::string to_string(StepErrorKind k);

struct StepError {
  StepErrorKind kind;
  std::string message;
};

/// nullopt when the step instantiates its schema.
std::optional<StepError> check_step(const Sequent& conclusion, const RuleInstance& rule,
                                    const std::vector<Sequent>& premisses,
                                    const Theory* theory = nullptr);

/// Q1-Q8 in bounded form, the equality initial sequents, id and the negation axioms.
bool is_q_axiom(const Sequent& s);
/// Q axiom number k (1..8), allowing side formulas.
bool matches_q_axiom(const Sequent& s, int k);
bool matches_theory_axiom(const Sequent& s, const Sequent& axiom);

/// Q axiom k as a sequent with the given terms for its variables (x, y). For k = 8
/// `converse` selects the right-to-left direction of the equivalence.
Sequent q_axiom_instance(int k, const Term& x, const Term& y = Term::zero(), bool converse = false);

struct ProofNode {
  Sequent sequent;
  RuleInstance rule;
  std::vector<std::string> children;
};

struct FiniteProof {
  std::map<std::string, ProofNode> nodes;
  std::string root;
  Theory theory;

  const Sequent& conclusion() const { return nodes.at(root).sequent; }
};

struct NodeError {
  std::string node;
  std::string message;
};

struct ProofReport {
  bool ok = true;
  Sequent conclusion;
  std::vector<std::pair<std::string, Sequent>> assumptions;
  std::vector<NodeError> errors;
};

ProofReport check_proof(const FiniteProof& p);

enum class FragmentMode { all_pi, all_sigma, lift_conclusion };

struct FragmentError {
  std::string node;
  Formula formula;
  std::string message;
};

/// nullopt when every checked formula lies in the requested class.
std::optional<FragmentError> validate_fragment(const FiniteProof& p, unsigned n, FragmentMode mode);
std::optional<FragmentError> validate_fragment(
    const std::vector<std::pair<std::string, Sequent>>& sequents, unsigned n, FragmentMode mode);
/// The lift-conclusion shape check on a single sequent.
std::optional<std::string> check_lift_shape(const Sequent& s, unsigned n);

}  // namespace carith
