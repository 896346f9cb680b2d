import pytest

import carith

DBA = "(dba (alphabet a b) (states p q) (init p) (finals q) (trans (p a q) (p b p) (q a q) (q b p)))"
NBA = "(nba (alphabet a b) (states s t) (init s) (finals t) (trans (s a s) (s b s) (s a t) (t a t) (t b s)))"


@pytest.fixture(scope="module")
def corpus():
    return carith.corpus_files()


def test_pigeonhole_is_valid(corpus):
    r = carith.check(corpus["php.cyc"])
    assert r["valid"]
    assert r["buds"] == 2
    assert r["counterexample"] is None


def test_broken_pigeonhole_has_a_counterexample(corpus):
    r = carith.check(corpus["php-broken.cyc"])
    assert not r["valid"]
    assert r["counterexample"]["cycle"]


def test_translation_round_trip(corpus):
    out = carith.translate(corpus["tr-le-add.prf"], 1)
    assert carith.check(out)["valid"]
    assert carith.normalize(out) == out
    assert not carith.check(carith.translate(corpus["tr-le-add.prf"], 1, broken=True))["valid"]


def test_simulation(corpus):
    assert carith.check(carith.simulate_induction(corpus["sim-zero-add.prf"]))["valid"]


def test_complement_and_membership():
    c = carith.complement(DBA)
    for lasso in ["a;b", ";a", "b;a b", ";b"]:
        assert carith.accepts(c, lasso) != carith.accepts(DBA, lasso)
    assert carith.includes(DBA, NBA) == (True, None)
    empty, witness = carith.is_empty(carith.complement(NBA))
    assert not empty
    assert not carith.accepts(NBA, witness)


def test_factorisation():
    f = carith.factorize(NBA, ";b")
    assert f["rejecting"]
    assert f["i0"] == f["stride"]


def test_truth():
    assert carith.models("(ex x (eq (v x) (s z)))", {}, 10) == "true"
    assert carith.models("(all x (ex y (lt (v x) (v y))))", {}, 5) == "unknown"
    assert carith.classify("(all y (ex x (eq (v x) (v y))))") == "pi-2"


def test_branch(corpus):
    b = carith.generate_branch(corpus["unsound.cyc"], {})
    assert b["loop_start"] is not None
    assert b["steps"][0][0] == "u0"


def test_input_errors():
    with pytest.raises(ValueError):
        carith.check("(cyclic-proof (root n0))")
    with pytest.raises(ValueError):
        carith.universal(DBA)


def test_criterion():
    r = carith.run_criterion(3)
    assert r["pass"], r["detail"]
