#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "carith/automata.hpp"
#include "carith/semantics.hpp"

namespace carith {

struct RunConfig {
  Value fuel = 64;
  unsigned max_spoke = 3;
  unsigned max_loop = 4;
  unsigned level = 1;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned parallelism = 0;
  std::uint64_t seed = 1;
  std::string corpus;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

constexpr int kNumCriteria = 11;
CriterionResult run_criterion(int id, const RunConfig& cfg);

/// Reference implementations written without the library's algorithms, for cross-checking.
namespace oracle {

/// Some state reachable on the loop part of the word lies on a cycle entered at a final state.
bool nba_accepts(const NBA& a, const LassoWord& w);
bool dba_accepts(const DBA& a, const LassoWord& w);
bool dra_accepts(const DRA& a, const LassoWord& w);
/// Entry (p, q): 2 if some run p -> q on w enters a final state, 1 if only other runs exist.
std::vector<std::vector<int>> word_matrix(const NBA& a, const std::vector<int>& w);
/// Truth of a Delta_0 formula by substituting numerals and evaluating the closed result.
bool delta0_truth(const Formula& f, const Assignment& rho);

/// Every lasso with |u| <= max_u and 1 <= |v| <= max_v.
std::vector<LassoWord> all_lassos(std::size_t letters, std::size_t max_u, std::size_t max_v);

}  // namespace oracle

namespace random_gen {

using Rng = std::mt19937_64;
NBA nba(Rng& rng, std::size_t max_states, std::size_t letters, double density = 0.35);
DBA dba(Rng& rng, std::size_t max_states, std::size_t letters);
DRA dra(Rng& rng, std::size_t max_states, std::size_t letters, unsigned colours = 4);
LassoWord lasso(Rng& rng, std::size_t letters, std::size_t max_u, std::size_t max_v);
std::vector<int> word(Rng& rng, std::size_t letters, std::size_t max_len);
/// Delta_0 formula over the given free variables.
Formula delta0(Rng& rng, const std::vector<std::string>& vars, int depth);
Term term(Rng& rng, const std::vector<std::string>& vars, int depth);

}  // namespace random_gen

}  // namespace carith
