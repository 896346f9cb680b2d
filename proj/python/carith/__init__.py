"""Python bindings for the carith proof checker and automata toolkit."""

from ._carith import (
    InvariantError,
    accepts,
    check,
    classify,
    complement,
    corpus_files,
    dualize,
    factorize,
    generate_branch,
    includes,
    is_empty,
    models,
    normalize,
    run_criterion,
    simulate_induction,
    translate,
    union,
    universal,
)

__all__ = [
    "InvariantError",
    "accepts",
    "check",
    "classify",
    "complement",
    "corpus_files",
    "dualize",
    "factorize",
    "generate_branch",
    "includes",
    "is_empty",
    "models",
    "normalize",
    "run_criterion",
    "simulate_induction",
    "translate",
    "union",
    "universal",
]
