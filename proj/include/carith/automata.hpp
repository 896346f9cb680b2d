#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace carith {

/// Malformed automata, alphabet mismatches, nondeterministic input to DBA operations.
struct AutomatonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A broken internal invariant, e.g. a counterexample that fails certification.
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

/// u v^omega over letter indices.
struct LassoWord {
  std::vector<int> u, v;
  friend bool operator==(const LassoWord&, const LassoWord&) = default;
};

/// Nondeterministic Buchi automaton. States and letters are dense indices; names are kept
/// for printing.
struct NBA {
  std::vector<std::string> alphabet;
  std::vector<std::string> states;
  int initial = 0;
  std::vector<char> final;
  /// delta[q][a]: sorted successor states.
  std::vector<std::vector<std::vector<int>>> delta;

  NBA() = default;
  explicit NBA(std::vector<std::string> alphabet) : alphabet(std::move(alphabet)) {}

  std::size_t num_states() const { return states.size(); }
  std::size_t num_letters() const { return alphabet.size(); }
  std::size_t num_transitions() const;
  int add_state(std::string name, bool is_final = false);
  void add_transition(int from, int letter, int to);
  /// -1 when absent.
  int letter_index(const std::string& a) const;
  int state_index(const std::string& q) const;
  const std::vector<int>& successors(int q, int a) const { return delta[q][a]; }
};

/// Deterministic, total Buchi automaton.
struct DBA {
  std::vector<std::string> alphabet;
  std::vector<std::string> states;
  int initial = 0;
  std::vector<char> final;
  /// next[q][a]
  std::vector<std::vector<int>> next;

  std::size_t num_states() const { return states.size(); }
  /// Throws AutomatonError unless every (q, a) has exactly one successor.
  static DBA from_nba(const NBA& a);
  NBA to_nba() const;
};

/// Deterministic parity automaton: accepts when the least colour seen infinitely often is even.
struct DRA {
  std::vector<std::string> alphabet;
  std::vector<std::string> states;
  int initial = 0;
  std::vector<unsigned> colour;
  std::vector<std::vector<int>> next;

  std::size_t num_states() const { return states.size(); }
};

void check_lasso(const LassoWord& w, std::size_t num_letters);

bool nba_accepts_lasso(const NBA& a, const LassoWord& w);
bool dba_accepts_lasso(const DBA& a, const LassoWord& w);
bool dra_accepts_lasso(const DRA& a, const LassoWord& w);
/// The negative formulation on the eventual cycle: no state q on it is odd with every colour
/// on the cycle at least c(q).
bool dra_accepts_lasso_negative(const DRA& a, const LassoWord& w);

/// Fresh non-final initial state copying both initial states' transitions.
NBA nba_union(const NBA& a1, const NBA& a2);
/// States (q,0) for all q and (q,1) for non-final q; finals are the (q,1).
NBA dba_complement(const DBA& a);

// ---------------------------------------------------------------- transition matrices

/// Entries take values 0, 1 and infinity (stored as 2).
enum : std::uint8_t { kZero = 0, kOne = 1, kInf = 2 };

/// Q x Q matrix over {0, 1, inf}, stored as sorted sparse rows.
class TransitionMatrix {
 public:
  using Row = std::vector<std::pair<std::uint32_t, std::uint8_t>>;

  TransitionMatrix() = default;
  explicit TransitionMatrix(std::size_t n) : rows_(n) {}
  static TransitionMatrix identity(std::size_t n);

  std::size_t size() const { return rows_.size(); }
  std::uint8_t at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, std::uint8_t v);
  const Row& row(std::size_t i) const { return rows_[i]; }
  Row& row(std::size_t i) { return rows_[i]; }
  std::size_t nonzeros() const;
  std::size_t hash() const;
  std::string to_string() const;

  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

 private:
  std::vector<Row> rows_;
};

struct MatrixHash {
  std::size_t operator()(const TransitionMatrix& m) const { return m.hash(); }
};

TransitionMatrix letter_matrix(const NBA& a, int letter);
TransitionMatrix matrix_product(const TransitionMatrix& m1, const TransitionMatrix& m2);
TransitionMatrix transition_matrix(const NBA& a, const std::vector<int>& word);

/// Distinct images of nonempty words, each with a shortest witness word.
struct Semigroup {
  std::vector<TransitionMatrix> elements;
  std::vector<std::vector<int>> witness;
  /// right[i][a] = index of elements[i] * letter_matrix(a).
  std::vector<std::vector<int>> right;
  std::vector<int> letter;
  std::unordered_map<TransitionMatrix, int, MatrixHash> index;

  std::size_t size() const { return elements.size(); }
  int find(const TransitionMatrix& m) const;
};

/// Saturation from the letter matrices. Throws AutomatonError beyond `limit` elements.
Semigroup semigroup_closure(const NBA& a, std::size_t limit = 2000000);

bool is_rejecting_pair(const NBA& a, const TransitionMatrix& beta, const TransitionMatrix& gamma);

/// The Ramsey-based complement, restricted to states reachable from the initial state.
/// State names describe their matrix components by semigroup index.
NBA nba_complement(const NBA& a, std::size_t state_limit = 5000000);

struct RamseyFactorization {
  TransitionMatrix beta, gamma;
  std::size_t i0 = 0, stride = 0;
  /// Least k >= 1 with delta(v)^k idempotent.
  std::size_t k = 0;
};

RamseyFactorization ramsey_factorize_lasso(const NBA& a, const LassoWord& w);

struct EmptinessResult {
  bool empty = true;
  std::optional<LassoWord> witness;
};

EmptinessResult nba_empty(const NBA& a);

struct InclusionResult {
  bool holds = true;
  std::optional<LassoWord> counterexample;
  /// Size of the explored part of the semigroup of the union automaton.
  std::size_t explored = 0;
};

/// L(a1) subseteq L(a2), decided as emptiness of the Ramsey complement of
/// dba_complement(a1) united with a2. Only the part of the semigroup readable along live
/// runs of a1 is explored. Counterexamples are certified before returning.
InclusionResult includes(const DBA& a1, const NBA& a2);

/// Some finite run ends at a final state and extends to runs with unboundedly many finals.
bool ar_acc_lasso(const NBA& a, const LassoWord& w);

/// Every simple loop about a reachable odd state q has an even colour below c(q).
bool dra_universal(const DRA& a);

}  // namespace carith
