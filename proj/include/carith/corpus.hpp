#pragma once

#include <string>
#include <vector>

#include "carith/calculus.hpp"
#include "carith/cyclic.hpp"
#include "carith/semantics.hpp"

namespace carith {

/// Directory of the bundled corpus files, as configured at build time.
std::string corpus_dir();

namespace corpus {

/// => 0 + x = x, with an induction step at the root.
FiniteProof zero_add_induction();
/// => ex z. x + z = x + y, with an induction step at the root.
FiniteProof le_add_induction();
/// => all x. 0 + x = x
FiniteProof zero_add_closed();
/// => all y. all x. ex z. x + z = x + y, by induction on a universal formula.
FiniteProof le_add_closed();

/// Cyclic proof that no map from a larger set into a smaller one is injective, with
/// cardinality, removal and membership as declared symbols governed by declared axioms.
CyclicPreproof php();
/// php with the cardinality descent replaced by a weaker axiom: no trace progresses.
CyclicPreproof php_broken();
/// php with one bud pointing to a node whose sequent differs from the bud's.
CyclicPreproof php_retarget();
/// Node id of the companion of php.
std::string php_companion();

/// A locally correct but globally invalid preproof of => s 0 = 0.
CyclicPreproof unsound();
/// Terms of a trace along the branch generate_branch takes through unsound(), one per step.
std::vector<Term> unsound_trace();

}  // namespace corpus

enum class CorpusKind { simulate, translate, check };
std::string to_string(CorpusKind k);

struct CorpusEntry {
  std::string name;
  /// File name inside corpus_dir().
  std::string file;
  CorpusKind kind;
  unsigned level = 0;
  /// Mutants expect an invalid verdict.
  bool expect_valid = true;
};

std::vector<CorpusEntry> corpus_entries();

/// Every file of the bundled corpus with its contents, generated from the builders above.
std::vector<std::pair<std::string, std::string>> corpus_files();

}  // namespace carith
