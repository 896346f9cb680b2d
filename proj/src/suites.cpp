#include "carith/suites.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "carith/corpus.hpp"
#include "carith/format.hpp"
#include "carith/sexpr.hpp"
#include "carith/translator.hpp"

namespace carith {

// ---------------------------------------------------------------- oracles

namespace oracle {

namespace {

int letter_at(const LassoWord& w, std::size_t i) {
  if (i < w.u.size()) return w.u[i];
  return w.v[(i - w.u.size()) % w.v.size()];
}

}  // namespace

bool nba_accepts(const NBA& a, const LassoWord& w) {
  // Nodes (q, i): state q about to read position i of the folded word.
  const std::size_t len = w.u.size() + w.v.size();
  const std::size_t n = a.num_states();
  auto id = [&](std::size_t q, std::size_t i) { return q * len + i; };
  auto step = [&](std::size_t i) { return i + 1 == len ? w.u.size() : i + 1; };
  auto succ = [&](std::size_t node) {
    std::size_t q = node / len, i = node % len;
    std::vector<std::size_t> out;
    for (int r : a.delta[q][letter_at(w, i)]) out.push_back(id(r, step(i)));
    return out;
  };
  auto reach = [&](std::vector<std::size_t> from) {
    std::vector<char> seen(n * len, 0);
    while (!from.empty()) {
      std::size_t x = from.back();
      from.pop_back();
      for (std::size_t y : succ(x))
        if (!seen[y]) {
          seen[y] = 1;
          from.push_back(y);
        }
    }
    return seen;
  };
  std::vector<char> reachable = reach({id(a.initial, 0)});
  for (std::size_t q = 0; q < n; ++q) {
    if (!a.final[q]) continue;
    for (std::size_t i = w.u.size(); i < len; ++i) {
      if (!reachable[id(q, i)]) continue;
      if (reach({id(q, i)})[id(q, i)]) return true;
    }
  }
  return false;
}

bool dba_accepts(const DBA& a, const LassoWord& w) {
  int q = a.initial;
  for (int l : w.u) q = a.next[q][l];
  // Iterate whole passes over v until the state at the start of a pass repeats.
  std::vector<int> starts;
  while (std::find(starts.begin(), starts.end(), q) == starts.end()) {
    starts.push_back(q);
    for (int l : w.v) q = a.next[q][l];
  }
  int r = q;
  do {
    for (int l : w.v) {
      r = a.next[r][l];
      if (a.final[r]) return true;
    }
  } while (r != q);
  return false;
}

bool dra_accepts(const DRA& a, const LassoWord& w) {
  int q = a.initial;
  for (int l : w.u) q = a.next[q][l];
  std::vector<int> starts;
  while (std::find(starts.begin(), starts.end(), q) == starts.end()) {
    starts.push_back(q);
    for (int l : w.v) q = a.next[q][l];
  }
  unsigned least = ~0u;
  int r = q;
  do {
    for (int l : w.v) {
      r = a.next[r][l];
      least = std::min(least, a.colour[r]);
    }
  } while (r != q);
  return least % 2 == 0;
}

std::vector<std::vector<int>> word_matrix(const NBA& a, const std::vector<int>& w) {
  const std::size_t n = a.num_states();
  std::vector<std::vector<int>> out(n, std::vector<int>(n, 0));
  for (std::size_t p = 0; p < n; ++p) {
    // cur[q][f]: some run from p reaches q, f = whether a final state was entered on the way.
    std::vector<std::array<char, 2>> cur(n, {0, 0});
    cur[p][0] = 1;
    for (int l : w) {
      std::vector<std::array<char, 2>> nxt(n, {0, 0});
      for (std::size_t q = 0; q < n; ++q)
        for (int f = 0; f < 2; ++f) {
          if (!cur[q][f]) continue;
          for (int r : a.delta[q][l]) nxt[r][f || a.final[r]] = 1;
        }
      cur = std::move(nxt);
    }
    for (std::size_t q = 0; q < n; ++q) out[p][q] = cur[q][1] ? 2 : cur[q][0] ? 1 : 0;
  }
  return out;
}

namespace {

Value closed_value(const Term& t) {
  switch (t.kind()) {
    case TermKind::zero: return 0;
    case TermKind::succ: return closed_value(t.arg(0)) + 1;
    case TermKind::plus: return closed_value(t.arg(0)) + closed_value(t.arg(1));
    case TermKind::times: return closed_value(t.arg(0)) * closed_value(t.arg(1));
    default: throw std::invalid_argument("not a closed arithmetic term: " + to_string(t));
  }
}

bool closed_truth(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::atom:
    case FormulaKind::neg_atom: {
      Value a = closed_value(f.args()[0]), b = closed_value(f.args()[1]);
      bool t = f.pred() == "=" ? a == b : a < b;
      return f.kind() == FormulaKind::atom ? t : !t;
    }
    case FormulaKind::conj: return closed_truth(f.left()) && closed_truth(f.right());
    case FormulaKind::disj: return closed_truth(f.left()) || closed_truth(f.right());
    case FormulaKind::bex:
    case FormulaKind::ball: {
      Value n = closed_value(f.bound());
      bool ex = f.kind() == FormulaKind::bex;
      for (Value k = 0; k < n; ++k)
        if (closed_truth(instantiate(f, Term::numeral(static_cast<unsigned>(k)))) == ex) return ex;
      return !ex;
    }
    default: throw std::invalid_argument("unbounded quantifier in " + to_string(f));
  }
}

}  // namespace

bool delta0_truth(const Formula& f, const Assignment& rho) {
  Substitution theta;
  for (const auto& [x, v] : rho) theta[x] = Term::numeral(static_cast<unsigned>(v));
  Formula g = apply_subst(theta, f);
  if (!g.free_vars().empty()) throw std::invalid_argument("unassigned variables in " + to_string(f));
  return closed_truth(g);
}

std::vector<LassoWord> all_lassos(std::size_t letters, std::size_t max_u, std::size_t max_v) {
  std::vector<std::vector<int>> words{{}};
  for (std::size_t len = 1, start = 0; len <= std::max(max_u, max_v); ++len) {
    std::size_t end = words.size();
    for (std::size_t i = start; i < end; ++i)
      for (std::size_t l = 0; l < letters; ++l) {
        auto w = words[i];
        w.push_back(static_cast<int>(l));
        words.push_back(std::move(w));
      }
    start = end;
  }
  std::vector<LassoWord> out;
  for (const auto& u : words) {
    if (u.size() > max_u) continue;
    for (const auto& v : words)
      if (!v.empty() && v.size() <= max_v) out.push_back({u, v});
  }
  return out;
}

}  // namespace oracle

// ---------------------------------------------------------------- random instances

namespace random_gen {

namespace {

std::vector<std::string> letters_named(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

NBA nba(Rng& rng, std::size_t max_states, std::size_t letters, double density) {
  NBA a(letters_named(letters));
  std::size_t n = pick(rng, 1, max_states);
  for (std::size_t q = 0; q < n; ++q) a.add_state("q" + std::to_string(q), coin(rng, 0.4));
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t l = 0; l < letters; ++l)
      for (std::size_t r = 0; r < n; ++r)
        if (coin(rng, density)) a.add_transition(static_cast<int>(q), static_cast<int>(l), static_cast<int>(r));
  return a;
}

DBA dba(Rng& rng, std::size_t max_states, std::size_t letters) {
  DBA a;
  a.alphabet = letters_named(letters);
  std::size_t n = pick(rng, 1, max_states);
  for (std::size_t q = 0; q < n; ++q) {
    a.states.push_back("q" + std::to_string(q));
    a.final.push_back(coin(rng, 0.4));
    std::vector<int> row;
    for (std::size_t l = 0; l < letters; ++l) row.push_back(static_cast<int>(pick(rng, 0, n - 1)));
    a.next.push_back(std::move(row));
  }
  return a;
}

DRA dra(Rng& rng, std::size_t max_states, std::size_t letters, unsigned colours) {
  DRA a;
  a.alphabet = letters_named(letters);
  std::size_t n = pick(rng, 1, max_states);
  for (std::size_t q = 0; q < n; ++q) {
    a.states.push_back("q" + std::to_string(q));
    // Bias towards even colours so that universal automata are not rare.
    unsigned c = static_cast<unsigned>(pick(rng, 0, colours - 1));
    if (c % 2 == 1 && coin(rng, 0.5)) c -= 1;
    a.colour.push_back(c);
    std::vector<int> row;
    for (std::size_t l = 0; l < letters; ++l) row.push_back(static_cast<int>(pick(rng, 0, n - 1)));
    a.next.push_back(std::move(row));
  }
  return a;
}

std::vector<int> word(Rng& rng, std::size_t letters, std::size_t max_len) {
  std::vector<int> w(pick(rng, 0, max_len));
  for (auto& l : w) l = static_cast<int>(pick(rng, 0, letters - 1));
  return w;
}

LassoWord lasso(Rng& rng, std::size_t letters, std::size_t max_u, std::size_t max_v) {
  LassoWord w{word(rng, letters, max_u), {}};
  while (w.v.empty()) w.v = word(rng, letters, max_v);
  return w;
}

Term term(Rng& rng, const std::vector<std::string>& vars, int depth) {
  std::size_t choice = pick(rng, 0, depth <= 0 ? 1 : 4);
  switch (choice) {
    case 0: return Term::var(vars[pick(rng, 0, vars.size() - 1)]);
    case 1: return Term::numeral(static_cast<unsigned>(pick(rng, 0, 2)));
    case 2: return Term::succ(term(rng, vars, depth - 1));
    case 3: return Term::plus(term(rng, vars, depth - 1), term(rng, vars, depth - 1));
    default: return Term::times(term(rng, vars, depth - 1), term(rng, vars, depth - 1));
  }
}

Formula delta0(Rng& rng, const std::vector<std::string>& vars, int depth) {
  std::size_t choice = pick(rng, 0, depth <= 0 ? 1 : 5);
  switch (choice) {
    case 0:
    case 1: {
      Term a = term(rng, vars, 2), b = term(rng, vars, 2);
      bool eq = coin(rng, 0.5), neg = coin(rng, 0.3);
      if (eq) return neg ? Formula::neq(a, b) : Formula::eq(a, b);
      return neg ? Formula::nlt(a, b) : Formula::lt(a, b);
    }
    case 2: return Formula::conj(delta0(rng, vars, depth - 1), delta0(rng, vars, depth - 1));
    case 3: return Formula::disj(delta0(rng, vars, depth - 1), delta0(rng, vars, depth - 1));
    default: {
      std::string x = "b" + std::to_string(depth) + "_" + std::to_string(vars.size());
      Term bound = coin(rng, 0.5) ? Term::var(vars[pick(rng, 0, vars.size() - 1)])
                                  : Term::numeral(static_cast<unsigned>(pick(rng, 0, 4)));
      auto inner = vars;
      inner.push_back(x);
      Formula body = delta0(rng, inner, depth - 1);
      return choice == 4 ? Formula::bex(x, bound, body) : Formula::ball(x, bound, body);
    }
  }
}

}  // namespace random_gen

// ---------------------------------------------------------------- criteria

namespace {

using Clock = std::chrono::steady_clock;
using random_gen::Rng;

/// Collects the first failure reported by any worker.
class Failures {
 public:
  void add(std::string msg) {
    std::lock_guard<std::mutex> g(m_);
    if (count_++ == 0) first_ = std::move(msg);
  }
  bool empty() const { return count_ == 0; }
  std::string summary() const {
    return std::to_string(count_) + " failure(s); first: " + first_;
  }

 private:
  mutable std::mutex m_;
  std::size_t count_ = 0;
  std::string first_;
};

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex em;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(em);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

Rng rng_for(const RunConfig& cfg, int id, std::size_t i) {
  std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(id),
                    static_cast<std::uint64_t>(i)};
  return Rng(seq);
}

std::string show(const NBA& a, const LassoWord& w) {
  return "automaton\n" + print_automaton(a) + "lasso " + print_lasso(w, a.alphabet);
}

bool same_matrix(const TransitionMatrix& m, const std::vector<std::vector<int>>& o) {
  for (std::size_t i = 0; i < o.size(); ++i)
    for (std::size_t j = 0; j < o.size(); ++j)
      if (m.at(i, j) != o[i][j]) return false;
  return true;
}

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<int> power(const std::vector<int>& w, std::size_t k) {
  std::vector<int> out;
  for (std::size_t i = 0; i < k; ++i) out = concat(out, w);
  return out;
}

std::string corpus_path(const RunConfig& cfg, const std::string& file) {
  return (cfg.corpus.empty() ? corpus_dir() : cfg.corpus) + "/" + file;
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome complement_nba(const RunConfig& cfg) {
  const std::size_t count = 300;
  const auto lassos = oracle::all_lassos(2, cfg.max_spoke, cfg.max_loop);
  Failures fails;
  std::atomic<std::size_t> biggest{0};
  parallel_for(count, cfg.parallelism, [&](std::size_t i) {
    Rng rng = rng_for(cfg, 1, i);
    NBA a = random_gen::nba(rng, 4, 2);
    NBA c = nba_complement(a);
    std::size_t s = c.num_states();
    for (std::size_t b = biggest.load(); s > b && !biggest.compare_exchange_weak(b, s);) {}
    for (const auto& w : lassos)
      if (nba_accepts_lasso(c, w) == oracle::nba_accepts(a, w)) {
        fails.add("complement membership is not the negation on " + show(a, w));
        return;
      }
  });
  if (!fails.empty()) return {false, fails.summary()};
  return {true, std::to_string(count) + " automata x " + std::to_string(lassos.size()) +
                    " lassos; largest complement " + std::to_string(biggest.load()) + " states"};
}

Outcome complement_dba(const RunConfig& cfg) {
  const std::size_t count = 300;
  const auto lassos = oracle::all_lassos(2, cfg.max_spoke, cfg.max_loop);
  Failures fails;
  parallel_for(count, cfg.parallelism, [&](std::size_t i) {
    Rng rng = rng_for(cfg, 2, i);
    DBA a = random_gen::dba(rng, 6, 2);
    NBA c = dba_complement(a);
    std::size_t finals = static_cast<std::size_t>(std::count(a.final.begin(), a.final.end(), 1));
    if (c.num_states() != 2 * a.num_states() - finals) {
      fails.add("complement has " + std::to_string(c.num_states()) + " states for\n" + print_automaton(a));
      return;
    }
    for (const auto& w : lassos)
      if (nba_accepts_lasso(c, w) == oracle::dba_accepts(a, w)) {
        fails.add("complement membership is not the negation on " + show(a.to_nba(), w));
        return;
      }
  });
  if (!fails.empty()) return {false, fails.summary()};
  return {true, std::to_string(count) + " automata x " + std::to_string(lassos.size()) + " lassos"};
}

Outcome homomorphism(const RunConfig& cfg) {
  const std::size_t automata = 20, pairs = 1000;
  Failures fails;
  parallel_for(automata, cfg.parallelism, [&](std::size_t i) {
    Rng rng = rng_for(cfg, 3, i);
    NBA a = random_gen::nba(rng, 4, 2);
    for (std::size_t j = 0; j < pairs; ++j) {
      auto s = random_gen::word(rng, 2, 6), t = random_gen::word(rng, 2, 6);
      TransitionMatrix st = transition_matrix(a, concat(s, t));
      TransitionMatrix prod = matrix_product(transition_matrix(a, s), transition_matrix(a, t));
      if (!(st == prod) || !same_matrix(st, oracle::word_matrix(a, concat(s, t)))) {
        fails.add("matrix of a concatenation differs on\n" + print_automaton(a));
        return;
      }
    }
  });
  if (!fails.empty()) return {false, fails.summary()};
  return {true, std::to_string(automata) + " automata x " + std::to_string(pairs) + " word pairs"};
}

Outcome factorization(const RunConfig& cfg) {
  const std::size_t count = 500;
  Failures fails;
  std::atomic<std::size_t> accepted{0};
  parallel_for(count, cfg.parallelism, [&](std::size_t i) {
    Rng rng = rng_for(cfg, 4, i);
    NBA a = random_gen::nba(rng, 4, 2);
    LassoWord w = random_gen::lasso(rng, 2, cfg.max_spoke, cfg.max_loop);
    auto r = ramsey_factorize_lasso(a, w);
    auto fail = [&](const std::string& what) { fails.add(what + " on " + show(a, w)); };
    if (!(matrix_product(r.beta, r.gamma) == r.beta)) return fail("beta gamma != beta");
    if (!(matrix_product(r.gamma, r.gamma) == r.gamma)) return fail("gamma gamma != gamma");
    // The factor boundaries must cut the word into u v^k followed by blocks v^k.
    auto vk = power(w.v, r.k);
    if (r.stride != vk.size() || r.i0 != w.u.size() + vk.size()) return fail("bad boundaries");
    if (!same_matrix(r.gamma, oracle::word_matrix(a, vk))) return fail("gamma is not the block matrix");
    if (!same_matrix(r.beta, oracle::word_matrix(a, concat(w.u, vk)))) return fail("beta is not the prefix matrix");
    for (std::size_t j = 1; j < r.k; ++j)
      if (same_matrix(matrix_product(transition_matrix(a, power(w.v, j)), transition_matrix(a, power(w.v, j))),
                      oracle::word_matrix(a, power(w.v, j))))
        return fail("a smaller power is idempotent");
    if (!same_matrix(r.beta, oracle::word_matrix(a, concat(concat(w.u, vk), vk))))
      return fail("beta does not absorb another block");
    bool acc = oracle::nba_accepts(a, w);
    if (acc) ++accepted;
    if (is_rejecting_pair(a, r.beta, r.gamma) == acc) return fail("rejecting pair disagrees with membership");
  });
  if (!fails.empty()) return {false, fails.summary()};
  return {true, std::to_string(count) + " pairs, " + std::to_string(accepted.load()) + " accepted"};
}

Outcome boolean_ops(const RunConfig& cfg) {
  Failures fails;
  const auto small = oracle::all_lassos(2, 3, 3);
  std::atomic<std::size_t> nonempty{0}, excluded{0};
  parallel_for(200, cfg.parallelism, [&](std::size_t i) {
    Rng rng = rng_for(cfg, 5, i);
    NBA a1 = random_gen::nba(rng, 3, 2), a2 = random_gen::nba(rng, 3, 2);
    NBA u = nba_union(a1, a2);
    for (const auto& w : small)
      if (nba_accepts_lasso(u, w) != (oracle::nba_accepts(a1, w) || oracle::nba_accepts(a2, w)))
        return fails.add("union is not the disjunction on " + show(u, w));
    auto e = nba_empty(a1);
    if (!e.empty) {
      ++nonempty;
      if (!e.witness || !oracle::nba_accepts(a1, *e.witness)) return fails.add("witness rejected by\n" + print_automaton(a1));
    } else {
      for (const auto& w : small)
        if (oracle::nba_accepts(a1, w)) return fails.add("claimed empty but accepts " + show(a1, w));
    }
    DBA d = random_gen::dba(rng, 3, 2);
    auto inc = includes(d, a2);
    if (!inc.holds) {
      ++excluded;
      if (!inc.counterexample) return fails.add("exclusion without a counterexample");
      const auto& w = *inc.counterexample;
      if (!dba_accepts_lasso(d, w) || nba_accepts_lasso(a2, w) || !oracle::dba_accepts(d, w) ||
          oracle::nba_accepts(a2, w))
        return fails.add("counterexample not confirmed: " + show(a2, w));
    } else {
      for (const auto& w : small)
        if (oracle::dba_accepts(d, w) && !oracle::nba_accepts(a2, w))
          return fails.add("inclusion claimed but " + print_lasso(w, d.alphabet) + " separates");
    }
  });
  parallel_for(100, cfg.parallelism, [&](std::size_t i) {
    Rng rng = rng_for(cfg, 50, i);
    DBA d = random_gen::dba(rng, 6, 2);
    if (!includes(d, d.to_nba()).holds) fails.add("inclusion is not reflexive on\n" + print_automaton(d));
  });
  if (!fails.empty()) return {false, fails.summary()};
  return {true, "200 instances (" + std::to_string(nonempty.load()) + " nonempty, " +
                    std::to_string(excluded.load()) + " non-inclusions); 100 reflexive"};
}

Outcome certified_invalid(const CyclicPreproof& p, const std::string& name) {
  Verdict v = check(p);
  if (v.valid) return {false, name + " was accepted"};
  if (!v.local_errors.empty()) return {false, name + " has local errors: " + v.local_errors[0].message};
  if (!v.counterexample) return {false, name + " has no counterexample"};
  if (!is_branch(p, *v.counterexample)) return {false, name + " counterexample is not a branch"};
  if (oracle_trace_check(p, *v.counterexample))
    return {false, name + " counterexample carries a progressing trace"};
  return {true, ""};
}

Outcome simulations(const RunConfig& cfg) {
  std::ostringstream det;
  for (const auto& e : corpus_entries()) {
    bool mutant = e.name.ends_with("-broken");
    if (!e.name.starts_with("sim-") && !e.name.starts_with("tr-")) continue;
    if (e.kind == CorpusKind::check && !mutant) continue;
    auto t0 = Clock::now();
    std::string text = read_file(corpus_path(cfg, e.file));
    Outcome o{true, ""};
    if (e.expect_valid) {
      FiniteProof fp = parse_finite_proof(text);
      for (bool broken : {false, true}) {
        GadgetOptions opt{broken};
        CyclicPreproof p = e.kind == CorpusKind::simulate ? simulate_induction(induction_spec(fp), opt)
                                                          : translate(fp, e.level, opt);
        if (broken) {
          o = certified_invalid(p, e.name + " (regenerated mutant)");
          if (!o.pass) break;
          continue;
        }
        Verdict v = check(p);
        if (!v.valid) {
          o = {false, e.name + " is not valid"};
          break;
        }
        if (auto err = validate_translation(p, e.level)) {
          o = {false, e.name + " leaves the fragment at " + err->node};
          break;
        }
      }
    } else {
      o = certified_invalid(parse_cyclic_proof(text), e.name);
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!o.pass) return o;
    if (secs >= 60) return {false, e.name + " took " + std::to_string(secs) + " s"};
    det << e.name << " ok; ";
  }
  return {true, det.str()};
}

Outcome pigeonhole(const RunConfig& cfg) {
  CyclicPreproof p = parse_cyclic_proof(read_file(corpus_path(cfg, "php.cyc")));
  Verdict v = check(p);
  if (!v.valid) return {false, "php is not valid"};
  const std::string comp = corpus::php_companion();
  auto targets = p.bud_targets();
  if (!p.nodes.count(comp)) return {false, "companion missing"};
  const Sequent& s = p.nodes.at(comp).sequent;
  std::size_t marked = 1;
  for (const auto& [id, n] : p.nodes)
    for (const auto& c : n.children)
      if (c.bud && c.id == comp && (!c.sequent || *c.sequent == s)) ++marked;
  if (targets.size() != 2 || std::count(targets.begin(), targets.end(), comp) != 2 || marked != 3)
    return {false, std::to_string(targets.size()) + " buds, " + std::to_string(marked) + " companion marks"};
  auto broken = certified_invalid(parse_cyclic_proof(read_file(corpus_path(cfg, "php-broken.cyc"))), "php-broken");
  if (!broken.pass) return broken;
  return {true, std::to_string(p.nodes.size()) + " nodes; 2 buds to " + comp + ", 3 occurrences of its sequent"};
}

Outcome tarski(const RunConfig& cfg) {
  Failures fails;
  const Interpretation in;
  const std::vector<std::string> vars{"x", "y"};
  parallel_for(2000, cfg.parallelism, [&](std::size_t i) {
    Rng rng = rng_for(cfg, 8, i);
    Formula f = random_gen::delta0(rng, vars, 3);
    Assignment rho{{"x", rng() % 5}, {"y", rng() % 5}};
    Truth t = models(rho, in, f, cfg.fuel);
    bool want = oracle::delta0_truth(f, rho);
    if (t != (want ? Truth::True : Truth::False))
      return fails.add(to_string(f) + " under " + to_string(rho) + " gave " + to_string(t));
    if (models(rho, in, dual(f), cfg.fuel) != (want ? Truth::False : Truth::True))
      return fails.add("negation of " + to_string(f) + " is not flipped");
    // Sigma_1 instance: ex z. phi(z) against the witnesses below the fuel.
    Formula g = random_gen::delta0(rng, {"x", "z"}, 2);
    Formula ex = Formula::ex("z", g);
    // Bounds may mention z, so keep the search short.
    const Value fuel = std::min<Value>(cfg.fuel, 16);
    Truth te = models(rho, in, ex, fuel);
    bool found = false;
    for (Value k = 0; k <= fuel && !found; ++k) {
      Assignment r = rho;
      r["z"] = k;
      found = oracle::delta0_truth(g, r);
    }
    if (te == Truth::False || (te == Truth::True) != found)
      return fails.add(to_string(ex) + " gave " + to_string(te));
    Truth ta = models(rho, in, Formula::all("z", dual(g)), fuel);
    if (ta != (te == Truth::True ? Truth::False : Truth::Unknown))
      return fails.add("dual of " + to_string(ex) + " gave " + to_string(ta));
    Truth tc = models(rho, in, Formula::conj(f, ex), fuel);
    Truth td = models(rho, in, Formula::disj(f, ex), fuel);
    Truth want_c = !want ? Truth::False : te, want_d = want ? Truth::True : te;
    if (tc != want_c || td != want_d) return fails.add("connectives disagree on " + to_string(ex));
  });
  if (!fails.empty()) return {false, fails.summary()};
  return {true, "2000 Delta_0 instances and 2000 Sigma_1 decompositions"};
}

Outcome ar_acc(const RunConfig& cfg) {
  const std::size_t want = 500;
  std::size_t accepted = 0, sampled = 0;
  for (std::size_t i = 0; accepted < want && i < 100000; ++i) {
    Rng rng = rng_for(cfg, 9, i);
    NBA a = random_gen::nba(rng, 4, 2);
    LassoWord w = random_gen::lasso(rng, 2, cfg.max_spoke, cfg.max_loop);
    bool acc = oracle::nba_accepts(a, w);
    ++sampled;
    if (acc) ++accepted;
    if (ar_acc_lasso(a, w) != acc) return {false, "ar_acc differs from acceptance on " + show(a, w)};
  }
  if (accepted < want) return {false, "only " + std::to_string(accepted) + " accepted lassos found"};
  return {true, std::to_string(accepted) + " accepted among " + std::to_string(sampled) + " sampled pairs"};
}

Outcome universality(const RunConfig& cfg) {
  Failures fails;
  std::atomic<std::size_t> universal{0};
  parallel_for(200, cfg.parallelism, [&](std::size_t i) {
    Rng rng = rng_for(cfg, 10, i);
    DRA a = random_gen::dra(rng, 5, 2);
    std::size_t n = a.num_states();
    bool all = true;
    for (const auto& w : oracle::all_lassos(2, n, n))
      if (!oracle::dra_accepts(a, w)) {
        all = false;
        break;
      }
    if (all) ++universal;
    if (dra_universal(a) != all) fails.add("universality disagrees on\n" + print_automaton(a));
  });
  if (!fails.empty()) return {false, fails.summary()};
  return {true, "200 automata, " + std::to_string(universal.load()) + " universal"};
}

Outcome unsound_branch(const RunConfig& cfg) {
  CyclicPreproof p = parse_cyclic_proof(read_file(corpus_path(cfg, "unsound.cyc")));
  Assignment rho0 = parse_assignment(read_file(corpus_path(cfg, "unsound.assign")));
  Interpretation in;
  Branch b = generate_branch(p, rho0, in, 1000, cfg.fuel);
  if (!b.loop_start) return {false, "branch is not lasso-shaped: " + b.stuck};
  LassoBranch lb = branch_lasso(b);
  if (!is_branch(p, lb)) return {false, "generated lasso is not a branch"};
  for (const auto& st : b.steps) {
    const Sequent& s = p.nodes.at(st.node).sequent;
    bool d0 = std::all_of(s.ant.begin(), s.ant.end(), is_delta0) && std::all_of(s.suc.begin(), s.suc.end(), is_delta0);
    if (d0 && models_sequent(st.rho, in, s, cfg.fuel) != Truth::False)
      return {false, "sequent at " + st.node + " is not falsified"};
  }
  std::vector<Term> trace;
  {
    SExpr e = parse_sexpr(read_file(corpus_path(cfg, "unsound.trace")));
    for (std::size_t i = 1; i < e.items.size(); ++i) trace.push_back(parse_term(e.items[i]));
  }
  if (trace.size() != b.steps.size()) return {false, "trace length does not match the branch"};
  if (!(trace.back() == trace[*b.loop_start])) return {false, "trace does not close the cycle"};
  std::size_t drops = 0;
  for (std::size_t i = 0; i + 1 < b.steps.size(); ++i) {
    ProofEdge e{b.steps[i].node, static_cast<std::size_t>(b.steps[i].premiss)};
    auto succ = trace_successors(p, e, trace[i]);
    auto it = std::find_if(succ.begin(), succ.end(), [&](const auto& s) { return s.first == trace[i + 1]; });
    if (it == succ.end()) return {false, "trace breaks at " + to_string(e)};
    Value now = eval_term(b.steps[i].rho, in, trace[i]);
    Value next = eval_term(b.steps[i + 1].rho, in, trace[i + 1]);
    if (next > now) return {false, "trace value increases at " + to_string(e)};
    if ((next < now) != it->second) return {false, "drop and progress disagree at " + to_string(e)};
    drops += next < now;
  }
  return {true, std::to_string(b.steps.size()) + " steps, loop from step " + std::to_string(*b.loop_start) +
                    ", " + std::to_string(drops) + " progress point(s)"};
}

struct Criterion {
  const char* title;
  Outcome (*run)(const RunConfig&);
  /// Wall-clock limit in seconds, 0 for none.
  double limit;
};

const Criterion kCriteria[kNumCriteria] = {
    {"NBA complement is exact on small lassos", complement_nba, 300},
    {"DBA complement is exact with 2|Q|-|F| states", complement_dba, 0},
    {"transition matrices are a homomorphism", homomorphism, 0},
    {"Ramsey factorisation of lassos", factorization, 0},
    {"union, emptiness and inclusion", boolean_ops, 0},
    {"induction simulation and translation", simulations, 0},
    {"pigeonhole proof", pigeonhole, 60},
    {"truth of bounded and Sigma_1 formulas", tarski, 0},
    {"ArAcc agrees with acceptance", ar_acc, 0},
    {"DRA universality", universality, 0},
    {"countermodel branch of the unsound proof", unsound_branch, 0},
};

}  // namespace

CriterionResult run_criterion(int id, const RunConfig& cfg) {
  if (id < 1 || id > kNumCriteria) throw std::out_of_range("no criterion " + std::to_string(id));
  const Criterion& c = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = c.title;
  auto t0 = Clock::now();
  try {
    Outcome o = c.run(cfg);
    r.pass = o.pass;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (r.pass && c.limit > 0 && r.seconds >= c.limit) {
    r.pass = false;
    r.detail += "; exceeded " + std::to_string(c.limit) + " s";
  }
  return r;
}

}  // namespace carith
