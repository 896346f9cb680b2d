#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "carith/cyclic.hpp"

namespace carith {

/// Missing variable or symbol, or a value past the interpretation's bound.
struct SemanticsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Value = std::uint64_t;
using Assignment = std::map<std::string, Value>;

/// Meaning of the declared symbols. The arithmetic symbols are built in.
struct Interpretation {
  struct Function {
    int arity = 0;
    std::function<Value(const std::vector<Value>&)> eval;
  };
  struct Predicate {
    int arity = 0;
    std::function<bool(const std::vector<Value>&)> eval;
  };
  std::map<std::string, Function> functions;
  std::map<std::string, Predicate> predicates;
  /// Evaluation fails once a term value exceeds this.
  Value value_bound = Value{1} << 40;
};

enum class Truth { False, True, Unknown };
std::string to_string(Truth t);

Value eval_term(const Assignment& rho, const Interpretation& in, const Term& t);

/// Bounded quantifiers are decided by enumeration; unbounded ones search 0..fuel and
/// answer Unknown when the search is inconclusive.
Truth models(const Assignment& rho, const Interpretation& in, const Formula& f, Value fuel);
/// Not all of the antecedent, or some of the succedent.
Truth models_sequent(const Assignment& rho, const Interpretation& in, const Sequent& s, Value fuel);

struct BranchStep {
  std::string node;
  /// Restricted to the free variables of the node's sequent.
  Assignment rho;
  /// Premiss followed from here, or -1 at the last step.
  int premiss = -1;
};

struct Branch {
  std::vector<BranchStep> steps;
  /// When the last step repeats an earlier (node, assignment) pair: the index of that pair.
  /// The branch is then steps[0..loop_start) followed by steps[loop_start..end-1) forever.
  std::optional<std::size_t> loop_start;
  /// Why the walk stopped without a repeat.
  std::string stuck;
};

/// Walk down from the root, always into the leftmost premiss the current assignment
/// falsifies. Throws std::invalid_argument unless the conclusion is falsified by rho0.
Branch generate_branch(const CyclicPreproof& p, const Assignment& rho0, const Interpretation& in,
                       std::size_t steps, Value fuel);

/// The lasso of proof edges a looping branch describes.
LassoBranch branch_lasso(const Branch& b);

std::string to_string(const Assignment& rho);

}  // namespace carith
