#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

#include "carith/corpus.hpp"
#include "carith/format.hpp"
#include "carith/suites.hpp"
#include "carith/translator.hpp"

namespace py = pybind11;
using namespace carith;

namespace {

NBA as_nba(const Automaton& a) {
  if (auto* n = std::get_if<NBA>(&a)) return *n;
  if (auto* d = std::get_if<DBA>(&a)) return d->to_nba();
  throw InputError("expected a Buchi automaton");
}

py::list edge_list(const std::vector<ProofEdge>& es) {
  py::list out;
  for (const auto& e : es) out.append(to_string(e));
  return out;
}

py::dict check_text(const std::string& text) {
  ProofDocument d = parse_proof(text);
  py::dict r;
  if (auto* f = std::get_if<FiniteProof>(&d)) {
    ProofReport rep = check_proof(*f);
    r["kind"] = "finite";
    r["valid"] = rep.ok;
    py::list errs;
    for (const auto& e : rep.errors) errs.append(py::make_tuple(e.node, e.message));
    r["errors"] = errs;
    return r;
  }
  const auto& p = std::get<CyclicPreproof>(d);
  Verdict v;
  {
    py::gil_scoped_release nogil;
    v = check(p);
  }
  r["kind"] = "cyclic";
  r["valid"] = v.valid;
  py::list errs;
  for (const auto& e : v.local_errors) errs.append(py::make_tuple(e.node, to_string(e.kind), e.message));
  r["errors"] = errs;
  r["buds"] = p.num_buds();
  if (v.counterexample) {
    py::dict cx;
    cx["prefix"] = edge_list(v.counterexample->prefix);
    cx["cycle"] = edge_list(v.counterexample->cycle);
    r["counterexample"] = cx;
  } else {
    r["counterexample"] = py::none();
  }
  return r;
}

CyclicPreproof cyclic_of(const std::string& text) {
  ProofDocument d = parse_proof(text);
  if (auto* f = std::get_if<FiniteProof>(&d)) return to_cyclic(*f);
  return std::get<CyclicPreproof>(std::move(d));
}

py::object lasso_or_none(const std::optional<LassoWord>& w, const std::vector<std::string>& alphabet) {
  if (!w) return py::none();
  return py::str(print_lasso(*w, alphabet));
}

}  // namespace

PYBIND11_MODULE(_carith, m) {
  m.doc() = "Cyclic proofs in arithmetic and Buchi automata on lasso words";

  static py::exception<InvariantError> invariant(m, "InvariantError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvariantError& e) {
      PyErr_SetString(invariant.ptr(), e.what());
    } catch (const std::invalid_argument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const std::runtime_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("check", &check_text, py::arg("proof"), "Verdict for a proof given as text.");
  m.def("normalize", [](const std::string& text) { return print_proof(parse_proof(text)); }, py::arg("proof"));
  m.def(
      "translate",
      [](const std::string& text, unsigned level, bool broken) {
        return print_proof(translate(parse_finite_proof(text), level, GadgetOptions{broken}));
      },
      py::arg("proof"), py::arg("level"), py::arg("broken") = false);
  m.def(
      "simulate_induction",
      [](const std::string& text, bool broken) {
        return print_proof(simulate_induction(induction_spec(parse_finite_proof(text)), GadgetOptions{broken}));
      },
      py::arg("proof"), py::arg("broken") = false);
  m.def(
      "dualize", [](const std::string& text, unsigned level) { return print_proof(dualize(cyclic_of(text), level)); },
      py::arg("proof"), py::arg("level"));

  m.def(
      "complement",
      [](const std::string& text) {
        Automaton a = parse_automaton(text);
        if (auto* d = std::get_if<DBA>(&a)) return print_automaton(dba_complement(*d));
        return print_automaton(nba_complement(as_nba(a)));
      },
      py::arg("automaton"));
  m.def(
      "union",
      [](const std::string& a, const std::string& b) {
        return print_automaton(nba_union(as_nba(parse_automaton(a)), as_nba(parse_automaton(b))));
      },
      py::arg("first"), py::arg("second"));
  m.def(
      "is_empty",
      [](const std::string& text) {
        NBA a = as_nba(parse_automaton(text));
        auto r = nba_empty(a);
        return py::make_tuple(r.empty, lasso_or_none(r.witness, a.alphabet));
      },
      py::arg("automaton"), "(empty, witness lasso or None)");
  m.def(
      "includes",
      [](const std::string& dba, const std::string& nba) {
        Automaton a1 = parse_automaton(dba);
        auto* d = std::get_if<DBA>(&a1);
        if (!d) throw InputError("the first automaton must be a dba");
        auto r = includes(*d, as_nba(parse_automaton(nba)));
        return py::make_tuple(r.holds, lasso_or_none(r.counterexample, d->alphabet));
      },
      py::arg("dba"), py::arg("nba"), "(holds, counterexample lasso or None)");
  m.def(
      "accepts",
      [](const std::string& text, const std::string& lasso) {
        Automaton a = parse_automaton(text);
        LassoWord w = parse_lasso(lasso, alphabet_of(a));
        if (auto* n = std::get_if<NBA>(&a)) return nba_accepts_lasso(*n, w);
        if (auto* d = std::get_if<DBA>(&a)) return dba_accepts_lasso(*d, w);
        return dra_accepts_lasso(std::get<DRA>(a), w);
      },
      py::arg("automaton"), py::arg("lasso"));
  m.def(
      "factorize",
      [](const std::string& text, const std::string& lasso) {
        NBA a = as_nba(parse_automaton(text));
        LassoWord w = parse_lasso(lasso, a.alphabet);
        auto r = ramsey_factorize_lasso(a, w);
        py::dict d;
        d["k"] = r.k;
        d["i0"] = r.i0;
        d["stride"] = r.stride;
        d["beta"] = r.beta.to_string();
        d["gamma"] = r.gamma.to_string();
        d["rejecting"] = is_rejecting_pair(a, r.beta, r.gamma);
        return d;
      },
      py::arg("automaton"), py::arg("lasso"));
  m.def(
      "universal",
      [](const std::string& text) {
        Automaton a = parse_automaton(text);
        auto* d = std::get_if<DRA>(&a);
        if (!d) throw InputError("expected a dra");
        return dra_universal(*d);
      },
      py::arg("dra"));

  m.def(
      "models",
      [](const std::string& formula, const Assignment& rho, Value fuel) {
        return to_string(models(rho, Interpretation{}, parse_formula(formula), fuel));
      },
      py::arg("formula"), py::arg("assignment"), py::arg("fuel") = 64, "\"true\", \"false\" or \"unknown\"");
  m.def("classify", [](const std::string& formula) { return to_string(classify(parse_formula(formula))); },
        py::arg("formula"));
  m.def(
      "generate_branch",
      [](const std::string& proof, const Assignment& rho, std::size_t steps, Value fuel) {
        Branch b = generate_branch(cyclic_of(proof), rho, Interpretation{}, steps, fuel);
        py::list st;
        for (const auto& s : b.steps) st.append(py::make_tuple(s.node, s.rho, s.premiss));
        py::dict d;
        d["steps"] = st;
        d["loop_start"] = b.loop_start ? py::object(py::int_(*b.loop_start)) : py::object(py::none());
        d["stuck"] = b.stuck;
        return d;
      },
      py::arg("proof"), py::arg("assignment"), py::arg("steps") = 1000, py::arg("fuel") = 64);

  m.def("corpus_files", [] {
    py::dict d;
    for (const auto& [name, text] : corpus_files()) d[py::str(name)] = text;
    return d;
  });
  m.def(
      "run_criterion",
      [](int id, std::uint64_t seed, unsigned parallelism, const std::string& corpus) {
        RunConfig cfg;
        cfg.seed = seed;
        cfg.parallelism = parallelism;
        cfg.corpus = corpus;
        CriterionResult r;
        {
          py::gil_scoped_release nogil;
          r = run_criterion(id, cfg);
        }
        py::dict d;
        d["id"] = r.id;
        d["title"] = r.title;
        d["pass"] = r.pass;
        d["detail"] = r.detail;
        return d;
      },
      py::arg("id"), py::arg("seed") = 1, py::arg("parallelism") = 0, py::arg("corpus") = "");
}
