#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "carith/calculus.hpp"
#include "carith/cyclic.hpp"

namespace carith {

/// Precondition or shape violation of a proof transformation. `code` is a stable tag such
/// as "free-cut-precondition" or "unsupported-rule".
struct TranslationError : std::runtime_error {
  TranslationError(std::string code, std::string node, const std::string& msg);
  std::string code, node;
};

struct GadgetOptions {
  /// Build the broken variant of each induction cycle: the hypothesis is taken at the
  /// successor instead of the predecessor, so the cycle never descends.
  bool drop_descent = false;
};

struct LiftResult {
  /// Cyclic derivation, possibly with assumption leaves.
  CyclicPreproof derivation;
  /// Distinct assumption sequents, each of the form Gamma => Delta, phi_i.
  std::vector<Sequent> assumptions;
};

/// p, Gamma => Delta  to  p, dual(Delta) => dual(Gamma), with p the literals of the antecedent.
Sequent dual_sequent(const Sequent& s);

/// Replace every sequent by its dual and repair rule shapes with cuts against neg axioms.
CyclicPreproof dualize(const CyclicPreproof& p, unsigned n);

struct InductionSpec {
  Cedent gamma, delta;
  Formula formula;
  std::string hole;
  Term term;
  /// Eigenvariable of the step proof.
  std::string eigen;
  /// Concludes Gamma => phi(0), Delta.
  CyclicPreproof base;
  /// Concludes Gamma, phi(a) => phi(s a), Delta.
  CyclicPreproof step;
};

/// The premisses of a finite proof whose root is an ind step.
InductionSpec induction_spec(const FiniteProof& p);

/// Cyclic derivation of Gamma => phi(t), Delta from the base and step proofs.
CyclicPreproof simulate_induction(const InductionSpec& spec, const GadgetOptions& opt = {});

LiftResult lift(const FiniteProof& p, unsigned n, const GadgetOptions& opt = {});

/// lift followed by universal closure of the opened conclusion.
CyclicPreproof translate(const FiniteProof& p, unsigned n, const GadgetOptions& opt = {});

/// Every sequent is Sigma_n, except the final chain of all-right steps that rebuilds the
/// universal closure of the conclusion.
std::optional<FragmentError> validate_translation(const CyclicPreproof& p, unsigned n);

/// Nodes that bind a variable (eigenvariables and substitution supports), paired with it.
std::vector<std::pair<std::string, std::string>> bound_variables(const CyclicPreproof& p);

}  // namespace carith
