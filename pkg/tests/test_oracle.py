import random
import warnings
from fractions import Fraction as F

import pytest

from poctl.checker import sat
from poctl.formula import TRUE, Always, Atom, BoundedUntil, Next, Not, Until
from poctl.model import Lasso, lasso_possibility, rebase_initial
from poctl.oracle import (
    InexactOracleWarning,
    OracleBudget,
    iter_lassos,
    iter_prefixes,
    lasso_satisfies,
    oracle_check,
    oracle_po,
    oracle_repeated,
    oracle_sat,
)
from poctl.parser import parse_poctl

from .corpus import random_model, random_poctl

EVERY = frozenset({"poor", "fair", "excellent"})


def resolver(model):
    def resolve(f):
        return sat(model, f).sat

    return resolve


def test_treatment_values(treatment):
    r = resolver(treatment)
    exc, poor = Atom("excellent"), Atom("poor")
    assert oracle_po(treatment, "poor", Until(TRUE, exc), r) == 1
    assert oracle_po(treatment, "poor", Always(Not(exc)), r) == F(1, 2)
    assert oracle_po(treatment, "poor", Always(Not(poor)), r) == 0
    assert oracle_po(treatment, "poor", Next(exc), r) == 1
    assert oracle_po(treatment, "excellent", Next(exc), r) == F(1, 2)


def test_repeated(treatment):
    assert oracle_repeated(treatment, "poor", {"excellent"}, "GF") == 1
    for mode in ("GF", "FG"):
        assert oracle_repeated(treatment, "fair", EVERY, mode) == 1
    assert oracle_repeated(treatment, "poor", set(), "GF") == 0
    assert oracle_repeated(treatment, "poor", {"poor"}, "FG") == F(1, 5)
    with pytest.raises(ValueError):
        oracle_repeated(treatment, "poor", EVERY, "GG")


def test_oracle_sat_examples(treatment):
    assert oracle_sat(treatment, TRUE) == EVERY
    assert "poor" in oracle_sat(treatment, parse_poctl('Po=1 [ "poor" U<=7 "excellent" ]'))


def test_budget_validation():
    with pytest.raises(ValueError):
        OracleBudget(max_stem=0)
    assert OracleBudget().resolve(4) == (4, 4, 4)
    assert OracleBudget(2, 3, 5).resolve(4) == (2, 3, 5)


def test_small_budget_is_flagged(treatment):
    r = resolver(treatment)
    with pytest.warns(InexactOracleWarning):
        oracle_po(treatment, "poor", Always(Not(Atom("excellent"))), r, OracleBudget(max_cycle=1))
    with pytest.warns(InexactOracleWarning):
        oracle_po(treatment, "poor", Until(TRUE, Atom("excellent")), r, OracleBudget(max_prefix=1))
    with warnings.catch_warnings():
        warnings.simplefilter("error", InexactOracleWarning)
        oracle_po(treatment, "poor", BoundedUntil(TRUE, Atom("excellent"), 2), r, OracleBudget(max_prefix=2))


def test_lower_budget_gives_lower_bound(treatment):
    r = resolver(treatment)
    path = Always(Not(Atom("excellent")))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InexactOracleWarning)
        # the only 0.5 lasso needs fair's self-loop, a cycle of length one
        assert oracle_po(treatment, "poor", path, r, OracleBudget(max_stem=1, max_cycle=1)) == F(1, 2)


def test_raising_budgets_finds_nothing_better():
    rng = random.Random(51)
    big = OracleBudget(6, 6, 6, loop_free=False)
    for _ in range(40):
        m = random_model(rng, rng.randint(2, 3))
        a = frozenset(m.states_with("a"))
        b = frozenset(m.states_with("b"))
        resolve = {Atom("A"): a, Atom("B"): b, TRUE: frozenset(m.states)}.__getitem__
        for s in m.states:
            for path in (Always(Atom("A")), Until(TRUE, Atom("A")), Until(Atom("A"), Atom("B"))):
                assert oracle_po(m, s, path, resolve) == oracle_po(m, s, path, resolve, big)
            for mode in ("GF", "FG"):
                assert oracle_repeated(m, s, a, mode) == oracle_repeated(m, s, a, mode, big)


def test_factorised_matches_literal_enumeration():
    rng = random.Random(52)
    for _ in range(60):
        m = random_model(rng, rng.randint(2, 4))
        b = frozenset(m.states_with("a"))
        for s in m.states:
            lassos = list(iter_lassos(m, s))
            ms = rebase_initial(m, s)
            for lasso, value in lassos:
                assert lasso.start == s
                assert lasso_possibility(ms, lasso) == value
            gf = max((v for l, v in lassos if set(l.cycle) & b), default=F(0))
            fg = max((v for l, v in lassos if set(l.cycle) <= b), default=F(0))
            assert oracle_repeated(m, s, b, "GF") == gf
            assert oracle_repeated(m, s, b, "FG") == fg


def test_iter_prefixes_values(treatment):
    paths = dict(iter_prefixes(treatment, "poor", EVERY, 2))
    assert paths[("poor",)] == 1
    assert paths[("poor", "fair", "excellent")] == 1
    assert ("poor", "poor") not in paths  # loop-free by default
    with_loops = dict(iter_prefixes(treatment, "poor", EVERY, 2, loop_free=False))
    assert with_loops[("poor", "poor", "fair")] == F(1, 5)


def test_lasso_satisfies():
    lasso = Lasso(("x",), ("y", "z"))
    sets = {Atom("Y"): {"y"}, Atom("Z"): {"z"}, Atom("XY"): {"x", "y"}, TRUE: {"x", "y", "z"}}
    resolve = sets.__getitem__
    assert lasso_satisfies(lasso, Next(Atom("Y")), resolve)
    assert lasso_satisfies(lasso, Until(Atom("XY"), Atom("Z")), resolve)
    assert not lasso_satisfies(lasso, Always(Atom("XY")), resolve)
    assert lasso_satisfies(lasso, BoundedUntil(Atom("XY"), Atom("Z"), 2), resolve)
    assert not lasso_satisfies(lasso, BoundedUntil(Atom("XY"), Atom("Z"), 1), resolve)


def test_oracle_check_records_vectors():
    rng = random.Random(53)
    for _ in range(30):
        m = random_model(rng)
        f = random_poctl(rng, 2)
        assert oracle_check(m, f).po_values == sat(m, f).po_values
