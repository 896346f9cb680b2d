#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace carith {

struct SignatureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TermKind { var, zero, succ, plus, times, apply };

/// Immutable first-order term over 0, succ, +, * and declared function symbols.
class Term {
 public:
  Term() = default;

  static Term var(std::string name);
  static Term zero();
  static Term succ(Term t);
  static Term plus(Term a, Term b);
  static Term times(Term a, Term b);
  static Term apply(std::string fn, std::vector<Term> args);
  /// succ^n(0)
  static Term numeral(unsigned n);

  bool valid() const { return p_ != nullptr; }
  TermKind kind() const;
  /// Variable name or applied function symbol.
  const std::string& name() const;
  const std::vector<Term>& args() const;
  const Term& arg(std::size_t i) const { return args()[i]; }
  std::size_t hash() const;
  /// Sorted, duplicate free.
  const std::vector<std::string>& free_vars() const;
  bool has_var(const std::string& x) const;
  std::size_t size() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

  struct Node;

 private:
  explicit Term(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
  std::shared_ptr<const Node> p_;
};

enum class FormulaKind { atom, neg_atom, conj, disj, ex, all, bex, ball };

/// Immutable formula in De Morgan normal form: negation only on atoms.
class Formula {
 public:
  Formula() = default;

  static Formula atom(std::string pred, std::vector<Term> args);
  static Formula neg_atom(std::string pred, std::vector<Term> args);
  static Formula eq(Term a, Term b) { return atom("=", {std::move(a), std::move(b)}); }
  static Formula lt(Term a, Term b) { return atom("<", {std::move(a), std::move(b)}); }
  static Formula neq(Term a, Term b) { return neg_atom("=", {std::move(a), std::move(b)}); }
  static Formula nlt(Term a, Term b) { return neg_atom("<", {std::move(a), std::move(b)}); }
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula ex(std::string x, Formula body);
  static Formula all(std::string x, Formula body);
  /// Throws ConstructionError when the bound mentions x.
  static Formula bex(std::string x, Term bound, Formula body);
  static Formula ball(std::string x, Term bound, Formula body);

  bool valid() const { return p_ != nullptr; }
  FormulaKind kind() const;
  bool is_atomic() const { return kind() == FormulaKind::atom || kind() == FormulaKind::neg_atom; }
  bool is_quantifier() const { return kind() >= FormulaKind::ex; }
  bool is_bounded_quantifier() const { return kind() == FormulaKind::bex || kind() == FormulaKind::ball; }
  /// Predicate symbol of an atom, bound variable of a quantifier.
  const std::string& name() const;
  const std::string& pred() const { return name(); }
  const std::string& var() const { return name(); }
  const std::vector<Term>& args() const;
  const Term& bound() const;
  const Formula& left() const;
  const Formula& right() const;
  const Formula& body() const;
  std::size_t hash() const;
  const std::vector<std::string>& free_vars() const;
  bool has_free_var(const std::string& x) const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
  std::shared_ptr<const Node> p_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};
struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Function and predicate symbols with arities. The arithmetic symbols are always present.
class Signature {
 public:
  Signature();

  void declare_function(const std::string& name, int arity);
  void declare_predicate(const std::string& name, int arity);
  std::optional<int> function_arity(const std::string& name) const;
  std::optional<int> predicate_arity(const std::string& name) const;
  bool is_base_function(const std::string& name) const;
  bool is_base_predicate(const std::string& name) const;
  const std::map<std::string, int>& functions() const { return functions_; }
  const std::map<std::string, int>& predicates() const { return predicates_; }
  /// Declared (non-base) symbols only.
  std::map<std::string, int> declared_functions() const;
  std::map<std::string, int> declared_predicates() const;

  /// Throws SignatureError on an unknown symbol or an arity mismatch.
  void check(const Term& t) const;
  void check(const Formula& f) const;
  Term make_apply(const std::string& fn, std::vector<Term> args) const;
  Formula make_atom(const std::string& pred, std::vector<Term> args, bool negated = false) const;

 private:
  std::map<std::string, int> functions_;
  std::map<std::string, int> predicates_;
};

enum class LevelKind { delta0, sigma, pi, none };

/// A class of the arithmetical hierarchy. `none` marks formulas outside every class,
/// e.g. a conjunction with an unbounded quantifier inside.
struct HierarchyLevel {
  LevelKind kind = LevelKind::delta0;
  unsigned level = 0;

  static HierarchyLevel delta0() { return {LevelKind::delta0, 0}; }
  static HierarchyLevel sigma(unsigned n) { return n == 0 ? delta0() : HierarchyLevel{LevelKind::sigma, n}; }
  static HierarchyLevel pi(unsigned n) { return n == 0 ? delta0() : HierarchyLevel{LevelKind::pi, n}; }
  static HierarchyLevel none() { return {LevelKind::none, 0}; }
  friend bool operator==(const HierarchyLevel&, const HierarchyLevel&) = default;
};

std::string to_string(const HierarchyLevel& l);

using Substitution = std::map<std::string, Term>;

Formula dual(const Formula& f);

HierarchyLevel classify(const Formula& f);
bool is_in_level(const Formula& f, const HierarchyLevel& l);
bool is_delta0(const Formula& f);
/// Least n with f in Sigma_n, or nullopt.
std::optional<unsigned> sigma_rank(const Formula& f);
std::optional<unsigned> pi_rank(const Formula& f);

Term apply_subst(const Substitution& theta, const Term& t);
Formula apply_subst(const Substitution& theta, const Formula& f);
/// Terms only: replace every occurrence of `from` by `to`.
Term replace_term(const Term& t, const Term& from, const Term& to);

/// Instantiate the bound variable of a quantified formula: body[t/x].
Formula instantiate(const Formula& quantified, const Term& t);

std::vector<std::string> free_vars(const Term& t);
std::vector<std::string> free_vars(const Formula& f);

/// x, x', x'', ... the first not contained in `avoid`.
std::string fresh_name(const std::string& base, const std::vector<std::string>& avoid);

/// Strip the maximal outer forall block: returns the binders and the body.
std::pair<std::vector<std::string>, Formula> forall_block(const Formula& f);
Formula close_forall(const std::vector<std::string>& xs, Formula body);
std::pair<std::vector<std::string>, Formula> exists_block(const Formula& f);

/// forall xs.A, forall ys.B  to  forall xs,ys.(A and B), renaming clashing binders.
Formula merge_forall_block(const Formula& f1, const Formula& f2);

/// Every subterm of t, t included.
void collect_subterms(const Term& t, std::vector<Term>& out);
/// Subterms of atom arguments that mention no variable bound at their position.
std::vector<Term> free_subterms(const Formula& f);

/// Canonical s-expression text.
std::string to_string(const Term& t);
std::string to_string(const Formula& f);

}  // namespace carith
