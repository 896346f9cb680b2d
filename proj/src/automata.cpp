#include "carith/automata.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace carith {

// ---------------------------------------------------------------- basic structure

std::size_t NBA::num_transitions() const {
  std::size_t n = 0;
  for (const auto& row : delta)
    for (const auto& succ : row) n += succ.size();
  return n;
}

int NBA::add_state(std::string name, bool is_final) {
  states.push_back(std::move(name));
  final.push_back(is_final ? 1 : 0);
  delta.emplace_back(alphabet.size());
  return static_cast<int>(states.size()) - 1;
}

void NBA::add_transition(int from, int letter, int to) {
  auto& succ = delta.at(from).at(letter);
  auto it = std::lower_bound(succ.begin(), succ.end(), to);
  if (it == succ.end() || *it != to) succ.insert(it, to);
}

int NBA::letter_index(const std::string& a) const {
  auto it = std::find(alphabet.begin(), alphabet.end(), a);
  return it == alphabet.end() ? -1 : static_cast<int>(it - alphabet.begin());
}

int NBA::state_index(const std::string& q) const {
  auto it = std::find(states.begin(), states.end(), q);
  return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

DBA DBA::from_nba(const NBA& a) {
  DBA d;
  d.alphabet = a.alphabet;
  d.states = a.states;
  d.initial = a.initial;
  d.final = a.final;
  d.next.assign(a.num_states(), std::vector<int>(a.num_letters(), -1));
  for (std::size_t q = 0; q < a.num_states(); ++q)
    for (std::size_t l = 0; l < a.num_letters(); ++l) {
      const auto& s = a.delta[q][l];
      if (s.size() != 1)
        throw AutomatonError("state " + a.states[q] + " has " + std::to_string(s.size()) +
                             " successors on " + a.alphabet[l] + "; a DBA needs exactly one");
      d.next[q][l] = s[0];
    }
  return d;
}

NBA DBA::to_nba() const {
  NBA a(alphabet);
  for (std::size_t q = 0; q < states.size(); ++q) a.add_state(states[q], final[q]);
  a.initial = initial;
  for (std::size_t q = 0; q < states.size(); ++q)
    for (std::size_t l = 0; l < alphabet.size(); ++l) a.add_transition(q, l, next[q][l]);
  return a;
}

void check_lasso(const LassoWord& w, std::size_t num_letters) {
  if (w.v.empty()) throw AutomatonError("lasso loop must be nonempty");
  for (const auto* part : {&w.u, &w.v})
    for (int a : *part)
      if (a < 0 || static_cast<std::size_t>(a) >= num_letters)
        throw AutomatonError("lasso letter outside the automaton's alphabet");
}

// ---------------------------------------------------------------- lasso membership

namespace {

/// Iterative Tarjan over an implicit graph on [0, n).
std::vector<int> scc_ids(std::size_t n, const std::vector<char>& active,
                         const std::function<void(int, std::vector<int>&)>& succ, int& count) {
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int next_index = 0;
  count = 0;
  struct Frame {
    int v;
    std::vector<int> succ;
    std::size_t i;
  };
  for (std::size_t s = 0; s < n; ++s) {
    if (!active[s] || index[s] != -1) continue;
    std::vector<Frame> call;
    auto push = [&](int v) {
      index[v] = low[v] = next_index++;
      stack.push_back(v);
      on_stack[v] = 1;
      Frame f{v, {}, 0};
      succ(v, f.succ);
      call.push_back(std::move(f));
    };
    push(static_cast<int>(s));
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.i < f.succ.size()) {
        int w = f.succ[f.i++];
        if (!active[w]) continue;
        if (index[w] == -1) {
          push(w);
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      int v = f.v;
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }
  return comp;
}

/// Configurations (q, p) of a lasso: state q about to read v[p].
struct LassoGraph {
  const NBA& a;
  const LassoWord& w;
  std::size_t m;

  LassoGraph(const NBA& a, const LassoWord& w) : a(a), w(w), m(w.v.size()) {}
  std::size_t size() const { return a.num_states() * m; }
  int id(int q, std::size_t p) const { return static_cast<int>(q * m + p); }
  void succ(int c, std::vector<int>& out) const {
    int q = c / static_cast<int>(m);
    std::size_t p = c % m;
    for (int r : a.delta[q][w.v[p]]) out.push_back(id(r, (p + 1) % m));
  }
  std::vector<int> start() const {
    std::vector<int> cur{a.initial};
    for (int l : w.u) {
      std::set<int> nxt;
      for (int q : cur) nxt.insert(a.delta[q][l].begin(), a.delta[q][l].end());
      cur.assign(nxt.begin(), nxt.end());
    }
    std::vector<int> out;
    for (int q : cur) out.push_back(id(q, 0));
    return out;
  }
  std::vector<char> reachable() const {
    std::vector<char> seen(size(), 0);
    std::vector<int> todo = start();
    for (int c : todo) seen[c] = 1;
    std::vector<int> buf;
    while (!todo.empty()) {
      int c = todo.back();
      todo.pop_back();
      buf.clear();
      succ(c, buf);
      for (int d : buf)
        if (!seen[d]) {
          seen[d] = 1;
          todo.push_back(d);
        }
    }
    return seen;
  }
};

}  // namespace

bool nba_accepts_lasso(const NBA& a, const LassoWord& w) {
  check_lasso(w, a.num_letters());
  LassoGraph g(a, w);
  std::vector<char> reach = g.reachable();
  int count = 0;
  auto succ = [&](int c, std::vector<int>& out) { g.succ(c, out); };
  std::vector<int> comp = scc_ids(g.size(), reach, succ, count);
  std::vector<int> comp_size(count, 0);
  for (std::size_t c = 0; c < g.size(); ++c)
    if (reach[c]) ++comp_size[comp[c]];
  std::vector<int> buf;
  for (std::size_t c = 0; c < g.size(); ++c) {
    if (!reach[c] || !a.final[c / g.m]) continue;
    if (comp_size[comp[c]] > 1) return true;
    buf.clear();
    g.succ(static_cast<int>(c), buf);
    if (std::find(buf.begin(), buf.end(), static_cast<int>(c)) != buf.end()) return true;
  }
  return false;
}

namespace {

/// Runs a deterministic automaton on a lasso and returns the states of the eventual cycle.
std::vector<int> deterministic_cycle(const std::vector<std::vector<int>>& next, int init,
                                     const LassoWord& w) {
  int q = init;
  for (int l : w.u) q = next[q][l];
  const std::size_t m = w.v.size();
  std::map<std::pair<int, std::size_t>, std::size_t> seen;
  std::vector<int> trace;
  std::size_t p = 0;
  while (true) {
    auto key = std::make_pair(q, p);
    auto it = seen.find(key);
    if (it != seen.end()) return {trace.begin() + it->second, trace.end()};
    seen.emplace(key, trace.size());
    trace.push_back(q);
    q = next[q][w.v[p]];
    p = (p + 1) % m;
  }
}

}  // namespace

bool dba_accepts_lasso(const DBA& a, const LassoWord& w) {
  check_lasso(w, a.alphabet.size());
  for (int q : deterministic_cycle(a.next, a.initial, w))
    if (a.final[q]) return true;
  return false;
}

bool dra_accepts_lasso(const DRA& a, const LassoWord& w) {
  check_lasso(w, a.alphabet.size());
  unsigned best = ~0u;
  for (int q : deterministic_cycle(a.next, a.initial, w)) best = std::min(best, a.colour[q]);
  return best % 2 == 0;
}

bool dra_accepts_lasso_negative(const DRA& a, const LassoWord& w) {
  check_lasso(w, a.alphabet.size());
  std::vector<int> cyc = deterministic_cycle(a.next, a.initial, w);
  for (int q : cyc) {
    if (a.colour[q] % 2 == 0) continue;
    bool all_above = true;
    for (int r : cyc)
      if (a.colour[r] < a.colour[q]) all_above = false;
    if (all_above) return false;
  }
  return true;
}

// ---------------------------------------------------------------- union and DBA complement

NBA nba_union(const NBA& a1, const NBA& a2) {
  if (a1.alphabet != a2.alphabet) throw AutomatonError("union: alphabets differ");
  NBA u(a1.alphabet);
  u.initial = u.add_state("init");
  const int off1 = 1;
  for (std::size_t q = 0; q < a1.num_states(); ++q) u.add_state("1." + a1.states[q], a1.final[q]);
  const int off2 = static_cast<int>(u.num_states());
  for (std::size_t q = 0; q < a2.num_states(); ++q) u.add_state("2." + a2.states[q], a2.final[q]);
  for (std::size_t l = 0; l < u.num_letters(); ++l) {
    for (std::size_t q = 0; q < a1.num_states(); ++q)
      for (int r : a1.delta[q][l]) u.add_transition(off1 + q, l, off1 + r);
    for (std::size_t q = 0; q < a2.num_states(); ++q)
      for (int r : a2.delta[q][l]) u.add_transition(off2 + q, l, off2 + r);
    for (int r : a1.delta[a1.initial][l]) u.add_transition(u.initial, l, off1 + r);
    for (int r : a2.delta[a2.initial][l]) u.add_transition(u.initial, l, off2 + r);
  }
  return u;
}

NBA dba_complement(const DBA& a) {
  const std::size_t n = a.num_states();
  for (const auto& row : a.next) {
    if (row.size() != a.alphabet.size()) throw AutomatonError("DBA transition table is not total");
    for (int r : row)
      if (r < 0 || static_cast<std::size_t>(r) >= n) throw AutomatonError("DBA transition out of range");
  }
  NBA c(a.alphabet);
  std::vector<int> zero(n), one(n, -1);
  for (std::size_t q = 0; q < n; ++q) zero[q] = c.add_state(a.states[q] + ".0");
  for (std::size_t q = 0; q < n; ++q)
    if (!a.final[q]) one[q] = c.add_state(a.states[q] + ".1", true);
  c.initial = zero[a.initial];
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t l = 0; l < a.alphabet.size(); ++l) {
      int r = a.next[q][l];
      c.add_transition(zero[q], l, zero[r]);
      if (!a.final[r]) {
        c.add_transition(zero[q], l, one[r]);
        if (one[q] >= 0) c.add_transition(one[q], l, one[r]);
      }
    }
  return c;
}

// ---------------------------------------------------------------- transition matrices

TransitionMatrix TransitionMatrix::identity(std::size_t n) {
  TransitionMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(static_cast<std::uint32_t>(i), kOne);
  return m;
}

std::uint8_t TransitionMatrix::at(std::size_t i, std::size_t j) const {
  const Row& r = rows_[i];
  auto it = std::lower_bound(r.begin(), r.end(), std::make_pair(static_cast<std::uint32_t>(j), std::uint8_t{0}));
  return it != r.end() && it->first == j ? it->second : std::uint8_t{kZero};
}

void TransitionMatrix::set(std::size_t i, std::size_t j, std::uint8_t v) {
  Row& r = rows_[i];
  auto key = static_cast<std::uint32_t>(j);
  auto it = std::lower_bound(r.begin(), r.end(), std::make_pair(key, std::uint8_t{0}));
  if (it != r.end() && it->first == key) {
    if (v == kZero)
      r.erase(it);
    else
      it->second = v;
  } else if (v != kZero) {
    r.insert(it, {key, v});
  }
}

std::size_t TransitionMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

std::size_t TransitionMatrix::hash() const {
  std::size_t h = rows_.size();
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [j, v] : rows_[i]) {
      std::size_t x = (i * 1000003u) ^ (static_cast<std::size_t>(j) << 2) ^ v;
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
  return h;
}

std::string TransitionMatrix::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) s += "/";
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      std::uint8_t v = at(i, j);
      s += v == kZero ? '0' : v == kOne ? '1' : 'w';
    }
  }
  return s;
}

TransitionMatrix letter_matrix(const NBA& a, int letter) {
  TransitionMatrix m(a.num_states());
  for (std::size_t q = 0; q < a.num_states(); ++q)
    for (int r : a.delta[q][letter]) m.row(q).emplace_back(r, a.final[r] ? kInf : kOne);
  return m;
}

TransitionMatrix matrix_product(const TransitionMatrix& m1, const TransitionMatrix& m2) {
  const std::size_t n = m1.size();
  if (m2.size() != n) throw AutomatonError("matrix dimensions differ");
  TransitionMatrix out(n);
  std::vector<std::uint8_t> acc(n, kZero);
  std::vector<std::uint32_t> touched;
  for (std::size_t i = 0; i < n; ++i) {
    touched.clear();
    for (const auto& [p, v1] : m1.row(i))
      for (const auto& [j, v2] : m2.row(p)) {
        std::uint8_t v = (v1 == kInf || v2 == kInf) ? kInf : kOne;
        if (acc[j] == kZero) touched.push_back(j);
        acc[j] = std::max(acc[j], v);
      }
    std::sort(touched.begin(), touched.end());
    auto& row = out.row(i);
    row.reserve(touched.size());
    for (auto j : touched) {
      row.emplace_back(j, acc[j]);
      acc[j] = kZero;
    }
  }
  return out;
}

TransitionMatrix transition_matrix(const NBA& a, const std::vector<int>& word) {
  TransitionMatrix m = TransitionMatrix::identity(a.num_states());
  for (int l : word) m = matrix_product(m, letter_matrix(a, l));
  return m;
}

int Semigroup::find(const TransitionMatrix& m) const {
  auto it = index.find(m);
  return it == index.end() ? -1 : it->second;
}

namespace {

/// Breadth-first saturation under right multiplication by letters. `keep` filters elements
/// (and thereby the words explored); it must be prefix-closed on witness words.
Semigroup saturate(const NBA& a, std::size_t limit,
                   const std::function<bool(const std::vector<int>&)>& keep) {
  Semigroup s;
  const std::size_t k = a.num_letters();
  std::vector<TransitionMatrix> letters;
  for (std::size_t l = 0; l < k; ++l) letters.push_back(letter_matrix(a, l));
  s.letter.assign(k, -1);
  auto add = [&](TransitionMatrix m, std::vector<int> w) -> int {
    auto it = s.index.find(m);
    if (it != s.index.end()) return it->second;
    if (s.elements.size() >= limit)
      throw AutomatonError("semigroup exceeds " + std::to_string(limit) + " elements");
    int id = static_cast<int>(s.elements.size());
    s.index.emplace(m, id);
    s.elements.push_back(std::move(m));
    s.witness.push_back(std::move(w));
    s.right.emplace_back(k, -1);
    return id;
  };
  for (std::size_t l = 0; l < k; ++l) {
    std::vector<int> w{static_cast<int>(l)};
    if (keep(w)) s.letter[l] = add(letters[l], w);
  }
  for (std::size_t i = 0; i < s.elements.size(); ++i)
    for (std::size_t l = 0; l < k; ++l) {
      std::vector<int> w = s.witness[i];
      w.push_back(static_cast<int>(l));
      if (!keep(w)) continue;
      TransitionMatrix m = matrix_product(s.elements[i], letters[l]);
      int j = add(std::move(m), std::move(w));
      s.right[i][l] = j;
    }
  return s;
}

/// Index reached from element i by multiplying with the letters of w; -1 if it leaves the set.
int follow(const Semigroup& s, int i, const std::vector<int>& w) {
  for (int l : w) {
    if (i < 0) return -1;
    i = s.right[i][l];
  }
  return i;
}

struct PairFacts {
  std::vector<char> idempotent;
  /// States q with gamma(q,q) = inf.
  std::vector<std::vector<std::uint32_t>> hot;
};

PairFacts pair_facts(const Semigroup& s) {
  PairFacts f;
  f.idempotent.assign(s.size(), 0);
  f.hot.resize(s.size());
  for (std::size_t g = 0; g < s.size(); ++g) {
    f.idempotent[g] = follow(s, static_cast<int>(g), s.witness[g]) == static_cast<int>(g);
    const auto& m = s.elements[g];
    for (std::size_t q = 0; q < m.size(); ++q)
      if (m.at(q, q) == kInf) f.hot[g].push_back(static_cast<std::uint32_t>(q));
  }
  return f;
}

bool clause3(const TransitionMatrix& beta, int q0, const std::vector<std::uint32_t>& hot) {
  for (auto q : hot)
    if (beta.at(q0, q) != kZero) return false;
  return true;
}

/// All rejecting pairs (beta, gamma) of elements of s.
std::vector<std::pair<int, int>> rejecting_pairs(const NBA& a, const Semigroup& s,
                                                 const PairFacts& f, bool first_only) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t g = 0; g < s.size(); ++g) {
    if (!f.idempotent[g]) continue;
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (!clause3(s.elements[b], a.initial, f.hot[g])) continue;
      if (follow(s, static_cast<int>(b), s.witness[g]) != static_cast<int>(b)) continue;
      out.emplace_back(static_cast<int>(b), static_cast<int>(g));
      if (first_only) return out;
    }
  }
  return out;
}

}  // namespace

Semigroup semigroup_closure(const NBA& a, std::size_t limit) {
  return saturate(a, limit, [](const std::vector<int>&) { return true; });
}

bool is_rejecting_pair(const NBA& a, const TransitionMatrix& beta, const TransitionMatrix& gamma) {
  if (beta.size() != a.num_states() || gamma.size() != a.num_states())
    throw AutomatonError("matrix size does not match the automaton");
  if (!(matrix_product(gamma, gamma) == gamma)) return false;
  if (!(matrix_product(beta, gamma) == beta)) return false;
  for (std::size_t q = 0; q < a.num_states(); ++q)
    if (beta.at(a.initial, q) != kZero && gamma.at(q, q) == kInf) return false;
  return true;
}

NBA nba_complement(const NBA& a, std::size_t state_limit) {
  Semigroup s = semigroup_closure(a);
  PairFacts f = pair_facts(s);
  auto pairs = rejecting_pairs(a, s, f, false);

  NBA c(a.alphabet);
  // Keys: (-1,-1,-1) initial, (b,g,z) triple, (-1,g,-1) single, (-1,g,z) pair.
  using Key = std::tuple<int, int, int>;
  std::map<Key, int> ids;
  std::deque<Key> todo;
  auto name = [](const Key& k) {
    auto [b, g, z] = k;
    std::string s = "g" + std::to_string(g);
    if (z >= 0) s += ".z" + std::to_string(z);
    if (b >= 0) s = "b" + std::to_string(b) + "." + s;
    return s;
  };
  auto state = [&](const Key& k) {
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    if (ids.size() >= state_limit)
      throw AutomatonError("complement exceeds " + std::to_string(state_limit) + " states");
    bool single = std::get<0>(k) < 0 && std::get<2>(k) < 0;
    int id = c.add_state(name(k), single);
    ids.emplace(k, id);
    todo.push_back(k);
    return id;
  };
  c.initial = c.add_state("q0");
  const std::size_t k = a.num_letters();
  for (std::size_t l = 0; l < k; ++l)
    for (auto [b, g] : pairs) c.add_transition(c.initial, l, state({b, g, s.letter[l]}));
  while (!todo.empty()) {
    Key key = todo.front();
    todo.pop_front();
    auto [b, g, z] = key;
    int from = ids.at(key);
    for (std::size_t l = 0; l < k; ++l) {
      int dl = s.letter[l];
      if (b >= 0) {
        int zl = s.right[z][l];
        c.add_transition(from, l, state({b, g, zl}));
        if (zl == b) c.add_transition(from, l, state({-1, g, -1}));
      } else if (z >= 0) {
        int zl = s.right[z][l];
        c.add_transition(from, l, state({-1, g, zl}));
        if (zl == g) c.add_transition(from, l, state({-1, g, -1}));
      } else {
        c.add_transition(from, l, state({-1, g, dl}));
        if (dl == g) c.add_transition(from, l, from);
      }
    }
  }
  return c;
}

RamseyFactorization ramsey_factorize_lasso(const NBA& a, const LassoWord& w) {
  check_lasso(w, a.num_letters());
  RamseyFactorization r;
  TransitionMatrix m = transition_matrix(a, w.v);
  TransitionMatrix p = m;
  std::size_t k = 1;
  // The powers of m are eventually periodic; some power within the closure size is idempotent.
  while (!(matrix_product(p, p) == p)) {
    p = matrix_product(p, m);
    ++k;
    if (k > 100000) throw InvariantError("no idempotent power found");
  }
  r.k = k;
  r.gamma = p;
  r.beta = matrix_product(transition_matrix(a, w.u), r.gamma);
  r.stride = k * w.v.size();
  r.i0 = w.u.size() + r.stride;
  return r;
}

// ---------------------------------------------------------------- emptiness and inclusion

namespace {

/// Shortest path (as a word) from `from` to `to` in at least one step, via BFS.
std::optional<std::vector<int>> shortest_word(const NBA& a, int from, int to, bool nonempty) {
  if (!nonempty && from == to) return std::vector<int>{};
  const std::size_t n = a.num_states();
  std::vector<int> parent(n, -1), via(n, -1);
  std::vector<char> seen(n, 0);
  std::deque<int> q;
  auto expand = [&](int p) -> bool {
    for (std::size_t l = 0; l < a.num_letters(); ++l)
      for (int r : a.delta[p][l]) {
        if (seen[r]) continue;
        seen[r] = 1;
        parent[r] = p;
        via[r] = static_cast<int>(l);
        if (r == to) return true;
        q.push_back(r);
      }
    return false;
  };
  bool found = expand(from);
  while (!found && !q.empty()) {
    int p = q.front();
    q.pop_front();
    found = expand(p);
  }
  if (!found) return std::nullopt;
  std::vector<int> w;
  int cur = to;
  do {
    w.push_back(via[cur]);
    cur = parent[cur];
  } while (cur != from);
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace

EmptinessResult nba_empty(const NBA& a) {
  const std::size_t n = a.num_states();
  std::vector<char> reach(n, 0);
  std::vector<int> todo{a.initial};
  reach[a.initial] = 1;
  while (!todo.empty()) {
    int q = todo.back();
    todo.pop_back();
    for (const auto& succ : a.delta[q])
      for (int r : succ)
        if (!reach[r]) {
          reach[r] = 1;
          todo.push_back(r);
        }
  }
  int count = 0;
  auto succ = [&](int q, std::vector<int>& out) {
    for (const auto& s : a.delta[q]) out.insert(out.end(), s.begin(), s.end());
  };
  std::vector<int> comp = scc_ids(n, reach, succ, count);
  std::vector<int> comp_size(count, 0);
  for (std::size_t q = 0; q < n; ++q)
    if (reach[q]) ++comp_size[comp[q]];
  for (std::size_t q = 0; q < n; ++q) {
    if (!reach[q] || !a.final[q]) continue;
    bool cyclic = comp_size[comp[q]] > 1;
    if (!cyclic)
      for (const auto& s : a.delta[q])
        if (std::binary_search(s.begin(), s.end(), static_cast<int>(q))) cyclic = true;
    if (!cyclic) continue;
    LassoWord w;
    w.u = *shortest_word(a, a.initial, static_cast<int>(q), false);
    w.v = *shortest_word(a, static_cast<int>(q), static_cast<int>(q), true);
    EmptinessResult r;
    r.empty = false;
    r.witness = std::move(w);
    return r;
  }
  return {};
}

namespace {

/// States of a DBA from which a final state on a cycle is reachable.
std::vector<char> live_states(const DBA& d) {
  NBA a = d.to_nba();
  const std::size_t n = a.num_states();
  std::vector<char> all(n, 1);
  int count = 0;
  auto succ = [&](int q, std::vector<int>& out) {
    for (const auto& s : a.delta[q]) out.insert(out.end(), s.begin(), s.end());
  };
  std::vector<int> comp = scc_ids(n, all, succ, count);
  std::vector<int> comp_size(count, 0);
  for (std::size_t q = 0; q < n; ++q) ++comp_size[comp[q]];
  std::vector<char> live(n, 0);
  for (std::size_t q = 0; q < n; ++q) {
    if (!a.final[q]) continue;
    bool cyclic = comp_size[comp[q]] > 1;
    for (int r : d.next[q])
      if (r == static_cast<int>(q)) cyclic = true;
    live[q] = cyclic;
  }
  // Backward closure.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (live[q]) continue;
      for (int r : d.next[q])
        if (live[r]) {
          live[q] = 1;
          changed = true;
          break;
        }
    }
  }
  return live;
}

}  // namespace

InclusionResult includes(const DBA& a1, const NBA& a2) {
  if (a1.alphabet != a2.alphabet) throw AutomatonError("includes: alphabets differ");
  NBA u = nba_union(dba_complement(a1), a2);
  std::vector<char> live = live_states(a1);
  // A word is explored when some live state of a1 reads it into a live state.
  auto keep = [&](const std::vector<int>& w) {
    for (std::size_t q = 0; q < a1.num_states(); ++q) {
      if (!live[q]) continue;
      int r = static_cast<int>(q);
      for (int l : w) r = a1.next[r][l];
      if (live[r]) return true;
    }
    return false;
  };
  Semigroup s = saturate(u, 2000000, keep);
  PairFacts f = pair_facts(s);
  auto pairs = rejecting_pairs(u, s, f, true);
  InclusionResult r;
  r.explored = s.size();
  if (pairs.empty()) return r;
  auto [b, g] = pairs.front();
  LassoWord w{s.witness[b], s.witness[g]};
  if (!dba_accepts_lasso(a1, w) || nba_accepts_lasso(a2, w))
    throw InvariantError("inclusion counterexample failed certification");
  r.holds = false;
  r.counterexample = std::move(w);
  return r;
}

bool ar_acc_lasso(const NBA& a, const LassoWord& w) {
  check_lasso(w, a.num_letters());
  // Unrolled configurations (q, pos): pos < |u| reads u[pos], otherwise v[pos - |u|].
  const std::size_t lu = w.u.size(), lv = w.v.size(), len = lu + lv, n = a.num_states();
  auto id = [&](std::size_t q, std::size_t pos) { return q * len + pos; };
  auto letter = [&](std::size_t pos) { return pos < lu ? w.u[pos] : w.v[pos - lu]; };
  auto next_pos = [&](std::size_t pos) { return pos + 1 < len ? pos + 1 : lu; };
  const std::size_t total = n * len;
  std::vector<std::vector<std::size_t>> succ(total);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t pos = 0; pos < len; ++pos)
      for (int r : a.delta[q][letter(pos)]) succ[id(q, pos)].push_back(id(r, next_pos(pos)));
  auto is_final = [&](std::size_t c) { return a.final[c / len] != 0; };

  // Configurations where finite runs of the word may end.
  std::vector<char> reach(total, 0);
  std::vector<std::size_t> todo{id(a.initial, 0)};
  reach[todo[0]] = 1;
  while (!todo.empty()) {
    std::size_t c = todo.back();
    todo.pop_back();
    for (std::size_t d : succ[c])
      if (!reach[d]) {
        reach[d] = 1;
        todo.push_back(d);
      }
  }
  // more[y][c]: from c some extension hits at least y further final states. The sets shrink
  // with y and stabilise after at most `total` rounds; the limit is "for every y".
  std::vector<char> more(total, 1);
  for (std::size_t round = 0; round <= total; ++round) {
    std::vector<char> hit(total, 0);
    // c can reach, in one or more steps, a final configuration in `more`.
    std::vector<char> target(total, 0);
    for (std::size_t c = 0; c < total; ++c) target[c] = is_final(c) && more[c];
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t c = 0; c < total; ++c) {
        if (hit[c]) continue;
        for (std::size_t d : succ[c])
          if (target[d] || hit[d]) {
            hit[c] = 1;
            changed = true;
            break;
          }
      }
    }
    if (hit == more) break;
    more = std::move(hit);
  }
  for (std::size_t c = 0; c < total; ++c)
    if (reach[c] && is_final(c) && more[c]) return true;
  return false;
}

bool dra_universal(const DRA& a) {
  const std::size_t n = a.num_states();
  std::vector<char> reach(n, 0);
  std::vector<int> todo{a.initial};
  reach[a.initial] = 1;
  while (!todo.empty()) {
    int q = todo.back();
    todo.pop_back();
    for (int r : a.next[q])
      if (!reach[r]) {
        reach[r] = 1;
        todo.push_back(r);
      }
  }
  std::vector<std::vector<int>> succ(n);
  for (std::size_t q = 0; q < n; ++q) {
    succ[q] = a.next[q];
    std::sort(succ[q].begin(), succ[q].end());
    succ[q].erase(std::unique(succ[q].begin(), succ[q].end()), succ[q].end());
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (!reach[q] || a.colour[q] % 2 == 0) continue;
    const unsigned cq = a.colour[q];
    // Depth-first enumeration of simple paths from q; a loop closes on an edge back to q.
    std::vector<char> on_path(n, 0);
    bool bad = false;
    std::function<void(int, bool)> dfs = [&](int p, bool has_good) {
      if (bad) return;
      for (int r : succ[p]) {
        if (r == static_cast<int>(q)) {
          if (!has_good) bad = true;
          continue;
        }
        if (on_path[r]) continue;
        on_path[r] = 1;
        dfs(r, has_good || (a.colour[r] % 2 == 0 && a.colour[r] < cq));
        on_path[r] = 0;
      }
    };
    on_path[q] = 1;
    dfs(static_cast<int>(q), false);
    if (bad) return false;
  }
  return true;
}

}  // namespace carith
