#pragma once

#include <string>
#include <variant>

#include "carith/automata.hpp"
#include "carith/calculus.hpp"
#include "carith/cyclic.hpp"
#include "carith/semantics.hpp"
#include "carith/sexpr.hpp"

namespace carith {

/// Unreadable file or a document of the wrong kind.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Term parse_term(const SExpr& e);
Formula parse_formula(const SExpr& e);
Sequent parse_sequent(const SExpr& e);
RuleInstance parse_rule(const SExpr& e);
Term parse_term(const std::string& text);
Formula parse_formula(const std::string& text);
Sequent parse_sequent(const std::string& text);

using ProofDocument = std::variant<FiniteProof, CyclicPreproof>;

/// A `(finite-proof ...)` or `(cyclic-proof ...)` document.
ProofDocument parse_proof(const std::string& text);
/// Finite proofs are accepted and read as bud-free preproofs.
CyclicPreproof parse_cyclic_proof(const std::string& text);
FiniteProof parse_finite_proof(const std::string& text);
CyclicPreproof to_cyclic(const FiniteProof& p);

std::string print_proof(const FiniteProof& p);
std::string print_proof(const CyclicPreproof& p);
std::string print_proof(const ProofDocument& p);

using Automaton = std::variant<NBA, DBA, DRA>;
Automaton parse_automaton(const std::string& text);
std::string print_automaton(const NBA& a);
std::string print_automaton(const DBA& a);
std::string print_automaton(const DRA& a);
std::string print_automaton(const Automaton& a);
const std::vector<std::string>& alphabet_of(const Automaton& a);

/// `(lasso (a b) (b))`, or the short form `a b;b` (letters separated by spaces or commas).
LassoWord parse_lasso(const std::string& text, const std::vector<std::string>& alphabet);
std::string print_lasso(const LassoWord& w, const std::vector<std::string>& alphabet);

/// `(assign (x 3) (y 0))`
Assignment parse_assignment(const std::string& text);

/// `(interp (fn f (x) <term>) (fn g 1 (table (0 1) (1 0)) (default 0)) (pred le (x y) <formula>)
/// (pred r 2 (table (0 1) (2 3))) (bound 1000))`. Rule bodies range over their parameters and may
/// use symbols defined earlier in the same document. A function table row lists the arguments
/// and then the value; a predicate table lists the tuples that hold.
Interpretation parse_interpretation(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace carith
