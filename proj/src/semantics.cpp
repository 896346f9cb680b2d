#include "carith/semantics.hpp"

#include <limits>

namespace carith {

std::string to_string(Truth t) {
  switch (t) {
    case Truth::False: return "false";
    case Truth::True: return "true";
    case Truth::Unknown: return "unknown";
  }
  return "?";
}

std::string to_string(const Assignment& rho) {
  std::string s = "(assign";
  for (const auto& [x, v] : rho) s += " (" + x + " " + std::to_string(v) + ")";
  return s + ")";
}

namespace {

Value checked(const Interpretation& in, Value v) {
  if (v > in.value_bound)
    throw SemanticsError("value " + std::to_string(v) + " exceeds the bound " +
                         std::to_string(in.value_bound));
  return v;
}

Truth t_and(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::True && b == Truth::True) return Truth::True;
  return Truth::Unknown;
}

Truth t_or(Truth a, Truth b) {
  if (a == Truth::True || b == Truth::True) return Truth::True;
  if (a == Truth::False && b == Truth::False) return Truth::False;
  return Truth::Unknown;
}

Truth t_not(Truth a) {
  if (a == Truth::Unknown) return a;
  return a == Truth::True ? Truth::False : Truth::True;
}

class Evaluator {
 public:
  Evaluator(Assignment rho, const Interpretation& in, Value fuel)
      : rho_(std::move(rho)), in_(in), fuel_(fuel) {}

  Truth eval(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::atom: return atom(f);
      case FormulaKind::neg_atom: return t_not(atom(f));
      case FormulaKind::conj: {
        Truth a = eval(f.left());
        if (a == Truth::False) return a;
        return t_and(a, eval(f.right()));
      }
      case FormulaKind::disj: {
        Truth a = eval(f.left());
        if (a == Truth::True) return a;
        return t_or(a, eval(f.right()));
      }
      case FormulaKind::bex:
      case FormulaKind::ball: {
        Value n = eval_term(rho_, in_, f.bound());
        bool ex = f.kind() == FormulaKind::bex;
        return quantify(f, n, ex, ex ? Truth::False : Truth::True);
      }
      case FormulaKind::ex:
        return quantify(f, fuel_ + 1, true, Truth::Unknown);
      case FormulaKind::all:
        return quantify(f, fuel_ + 1, false, Truth::Unknown);
    }
    return Truth::Unknown;
  }

 private:
  Truth atom(const Formula& f) {
    std::vector<Value> args;
    for (const auto& a : f.args()) args.push_back(eval_term(rho_, in_, a));
    if (f.pred() == "=") return args[0] == args[1] ? Truth::True : Truth::False;
    if (f.pred() == "<") return args[0] < args[1] ? Truth::True : Truth::False;
    auto it = in_.predicates.find(f.pred());
    if (it == in_.predicates.end()) throw SemanticsError("uninterpreted predicate " + f.pred());
    if (it->second.arity != static_cast<int>(args.size()))
      throw SemanticsError("arity mismatch for predicate " + f.pred());
    return it->second.eval(args) ? Truth::True : Truth::False;
  }

  /// Search values 0..n-1 for a decisive instance; `exhausted` when none is found.
  Truth quantify(const Formula& f, Value n, bool existential, Truth exhausted) {
    const std::string& x = f.var();
    std::optional<Value> saved;
    if (auto it = rho_.find(x); it != rho_.end()) saved = it->second;
    Truth out = exhausted;
    bool unknown = false;
    for (Value k = 0; k < n; ++k) {
      rho_[x] = k;
      Truth t = eval(f.body());
      if (t == (existential ? Truth::True : Truth::False)) {
        out = t;
        unknown = false;
        break;
      }
      if (t == Truth::Unknown) unknown = true;
    }
    if (unknown) out = Truth::Unknown;
    if (saved) rho_[x] = *saved;
    else rho_.erase(x);
    return out;
  }

  Assignment rho_;
  const Interpretation& in_;
  Value fuel_;
};

}  // namespace

Value eval_term(const Assignment& rho, const Interpretation& in, const Term& t) {
  constexpr Value kMax = std::numeric_limits<Value>::max();
  switch (t.kind()) {
    case TermKind::var: {
      auto it = rho.find(t.name());
      if (it == rho.end()) throw SemanticsError("unassigned variable " + t.name());
      return it->second;
    }
    case TermKind::zero:
      return 0;
    case TermKind::succ:
      return checked(in, eval_term(rho, in, t.arg(0)) + 1);
    case TermKind::plus: {
      Value a = eval_term(rho, in, t.arg(0)), b = eval_term(rho, in, t.arg(1));
      if (a > kMax - b) throw SemanticsError("overflow in " + to_string(t));
      return checked(in, a + b);
    }
    case TermKind::times: {
      Value a = eval_term(rho, in, t.arg(0)), b = eval_term(rho, in, t.arg(1));
      if (a != 0 && b > kMax / a) throw SemanticsError("overflow in " + to_string(t));
      return checked(in, a * b);
    }
    case TermKind::apply: {
      auto it = in.functions.find(t.name());
      if (it == in.functions.end()) throw SemanticsError("uninterpreted function " + t.name());
      if (it->second.arity != static_cast<int>(t.args().size()))
        throw SemanticsError("arity mismatch for function " + t.name());
      std::vector<Value> args;
      for (const auto& a : t.args()) args.push_back(eval_term(rho, in, a));
      return checked(in, it->second.eval(args));
    }
  }
  throw SemanticsError("bad term");
}

Truth models(const Assignment& rho, const Interpretation& in, const Formula& f, Value fuel) {
  for (const auto& x : f.free_vars())
    if (!rho.count(x)) throw SemanticsError("unassigned variable " + x);
  return Evaluator(rho, in, fuel).eval(f);
}

Truth models_sequent(const Assignment& rho, const Interpretation& in, const Sequent& s, Value fuel) {
  Truth out = Truth::False;
  for (const auto& f : s.ant) {
    out = t_or(out, t_not(models(rho, in, f, fuel)));
    if (out == Truth::True) return out;
  }
  for (const auto& f : s.suc) {
    out = t_or(out, models(rho, in, f, fuel));
    if (out == Truth::True) return out;
  }
  return out;
}

namespace {

Assignment restrict(const Assignment& rho, const Sequent& s) {
  Assignment out;
  for (const auto& x : s.free_vars())
    if (auto it = rho.find(x); it != rho.end()) out[x] = it->second;
  return out;
}

/// Least extension of rho on `open` (lexicographic, values below `limit`) that falsifies s.
std::optional<Assignment> least_falsifying(Assignment rho, const std::vector<std::string>& open,
                                           std::size_t i, const Interpretation& in,
                                           const Sequent& s, Value limit, Value fuel,
                                           std::size_t& budget) {
  if (i == open.size()) {
    if (budget == 0) return std::nullopt;
    --budget;
    if (models_sequent(rho, in, s, fuel) == Truth::False) return rho;
    return std::nullopt;
  }
  for (Value k = 0; k < limit; ++k) {
    rho[open[i]] = k;
    if (auto r = least_falsifying(rho, open, i + 1, in, s, limit, fuel, budget)) return r;
    if (budget == 0) break;
  }
  return std::nullopt;
}

}  // namespace

Branch generate_branch(const CyclicPreproof& p, const Assignment& rho0, const Interpretation& in,
                       std::size_t steps, Value fuel) {
  const Sequent& root = p.conclusion();
  if (models_sequent(rho0, in, root, fuel) != Truth::False)
    throw std::invalid_argument("the assignment does not falsify the conclusion");
  Branch b;
  std::map<std::pair<std::string, Assignment>, std::size_t> seen;
  std::string node = p.root;
  Assignment rho = restrict(rho0, root);
  for (std::size_t n = 0; n < steps; ++n) {
    const CyclicNode& cn = p.nodes.at(node);
    rho = restrict(rho, cn.sequent);
    auto key = std::make_pair(node, rho);
    b.steps.push_back({node, rho, -1});
    if (auto it = seen.find(key); it != seen.end()) {
      b.loop_start = it->second;
      return b;
    }
    seen.emplace(key, b.steps.size() - 1);
    if (cn.children.empty()) {
      b.stuck = "reached the leaf rule " + to_string(cn.rule.tag) + " with a falsified sequent";
      return b;
    }
    const RuleInstance& r = cn.rule;
    bool moved = false;
    for (std::size_t i = 0; i < cn.children.size() && !moved; ++i) {
      const std::string& next = cn.children[i].id;
      const Sequent& ps = p.nodes.at(next).sequent;
      Assignment base = rho;
      if (r.tag == RuleTag::sub) {
        for (const auto& [x, t] : r.theta) base[x] = eval_term(rho, in, t);
      }
      Value limit = fuel + 1;
      if ((r.tag == RuleTag::bex_left || r.tag == RuleTag::ball_right) && r.principal.valid())
        limit = eval_term(rho, in, r.principal.bound());
      std::vector<std::string> open;
      for (const auto& x : ps.free_vars()) {
        bool bound_here = !r.eigen.empty() && x == r.eigen;
        if (bound_here || !base.count(x)) {
          base.erase(x);
          open.push_back(x);
        }
      }
      std::size_t budget = 200000;
      Value lim = open.size() == 1 && !r.eigen.empty() && open[0] == r.eigen ? limit : fuel + 1;
      if (auto found = least_falsifying(base, open, 0, in, ps, lim, fuel, budget)) {
        b.steps.back().premiss = static_cast<int>(i);
        rho = *found;
        node = next;
        moved = true;
      }
    }
    if (!moved) {
      b.stuck = "no premiss is falsified within the fuel";
      return b;
    }
  }
  b.stuck = "step limit reached";
  return b;
}

LassoBranch branch_lasso(const Branch& b) {
  if (!b.loop_start) throw std::invalid_argument("the branch has no loop");
  LassoBranch out;
  for (std::size_t i = 0; i + 1 < b.steps.size(); ++i) {
    ProofEdge e{b.steps[i].node, static_cast<std::size_t>(b.steps[i].premiss)};
    (i < *b.loop_start ? out.prefix : out.cycle).push_back(e);
  }
  return out;
}

}  // namespace carith
