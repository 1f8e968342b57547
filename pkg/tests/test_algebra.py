"""Max-min matrix algebra against direct brute-force definitions."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poctl.algebra import (
    DimensionError,
    FuzzyMatrix,
    PossibilityVector,
    apply,
    bounded_closure,
    compose,
    format_possibility,
    join,
    possibility,
    power,
    reflexive_transitive_closure,
    transitive_closure,
)

TREATMENT_P = [["0.2", "1", "1"], ["0.2", "0.5", "1"], ["0.5", "1", "0.5"]]


# --- independent oracles -----------------------------------------------------


def brute_compose(a, b):
    n = len(a)
    return [[max(min(a[i][k], b[k][j]) for k in range(n)) for j in range(n)] for i in range(n)]


def brute_join(a, b):
    return [[max(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def eye(n):
    return [[F(int(i == j)) for j in range(n)] for i in range(n)]


def fixpoint_closure(a):
    """Least X with X = A ∨ (A∘X), iterated from X = A."""
    x = a
    while True:
        nxt = brute_join(a, brute_compose(a, x))
        if nxt == x:
            return x
        x = nxt


def accumulated_star(a):
    """I ∨ A ∨ … ∨ A^N by explicit powers."""
    n = len(a)
    acc, p = eye(n), eye(n)
    for _ in range(n):
        p = brute_compose(p, a)
        acc = brute_join(acc, p)
    return acc


def rand_rows(rng, n, values=(F(0), F(3, 10), F(7, 10), F(1))):
    return [[rng.choice(values) for _ in range(n)] for _ in range(n)]


LEVELS = st.sampled_from([F(0), F(1, 5), F(1, 2), F(7, 10), F(1)])


@st.composite
def matrices(draw, n=None):
    n = n or draw(st.integers(1, 6))
    return FuzzyMatrix([[draw(LEVELS) for _ in range(n)] for _ in range(n)])


@st.composite
def same_dim(draw, count):
    n = draw(st.integers(1, 6))
    return [draw(matrices(n)) for _ in range(count)]


# --- examples ----------------------------------------------------------------


def test_possibility_parsing():
    assert possibility("0.2") == F(1, 5)
    assert possibility(0.5) == F(1, 2)
    assert possibility(1) == 1
    for bad in ("1.5", -0.1, True):
        with pytest.raises((ValueError, TypeError)):
            possibility(bad)


def test_compose_treatment_square_row():
    p = FuzzyMatrix(TREATMENT_P)
    assert compose(p, p).row(0) == [F(1, 2), F(1), F(1)]


def test_compose_identity_is_neutral():
    p = FuzzyMatrix(TREATMENT_P)
    assert compose(FuzzyMatrix.identity(3), p) == p
    assert compose(p, FuzzyMatrix.identity(3)) == p


def test_compose_matches_triple_loop():
    rng = random.Random(11)
    for _ in range(50):
        a, b = rand_rows(rng, 3), rand_rows(rng, 3)
        assert compose(FuzzyMatrix(a), FuzzyMatrix(b)).tolist() == brute_compose(a, b)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        compose(FuzzyMatrix.identity(2), FuzzyMatrix.identity(3))
    with pytest.raises(DimensionError):
        join(FuzzyMatrix.identity(2), FuzzyMatrix.identity(3))
    with pytest.raises(DimensionError):
        apply(FuzzyMatrix.identity(2), PossibilityVector.zeros(3))
    with pytest.raises(ValueError):
        FuzzyMatrix([[1, 0], [1]])


def test_apply_examples():
    p = FuzzyMatrix(TREATMENT_P)
    chi_e = PossibilityVector.indicator(3, [2])
    assert list(apply(p, chi_e)) == [1, 1, F(1, 2)]
    assert apply(p, PossibilityVector.zeros(3)) == PossibilityVector.zeros(3)
    v = PossibilityVector(["0.3", "1", "0"])
    assert apply(FuzzyMatrix.identity(3), v) == v


def test_join_examples():
    p = FuzzyMatrix(TREATMENT_P)
    assert join(p, p) == p
    assert join(p, FuzzyMatrix.zeros(3)) == p
    assert join(p, compose(p, p)).row(0) == [F(1, 2), 1, 1]


def test_transitive_closure_treatment():
    plus = transitive_closure(FuzzyMatrix(TREATMENT_P))
    assert plus.tolist() == [[F(1, 2), F(1), F(1)]] * 3


def test_closure_of_zero():
    z = FuzzyMatrix.zeros(4)
    assert transitive_closure(z) == z
    assert reflexive_transitive_closure(z) == FuzzyMatrix.identity(4)


def test_transitive_closure_matches_fixpoint():
    rng = random.Random(5)
    for _ in range(40):
        a = rand_rows(rng, 4)
        assert transitive_closure(FuzzyMatrix(a)).tolist() == fixpoint_closure(a)


def test_star_of_restricted_treatment_matrix():
    # only the (poor, poor) entry survives the restriction
    q = FuzzyMatrix([["0.2", 0, 0], [0, 0, 0], [0, 0, 0]])
    assert reflexive_transitive_closure(q) == FuzzyMatrix.identity(3)


def test_star_matches_power_accumulation():
    rng = random.Random(9)
    for _ in range(40):
        a = rand_rows(rng, 5)
        assert reflexive_transitive_closure(FuzzyMatrix(a)).tolist() == accumulated_star(a)


def test_bounded_closure_small_n():
    rng = random.Random(2)
    for _ in range(20):
        a = FuzzyMatrix(rand_rows(rng, 4))
        assert bounded_closure(a, 0) == FuzzyMatrix.identity(4)
        assert bounded_closure(a, 1) == join(FuzzyMatrix.identity(4), a)
        assert bounded_closure(a, 4) == reflexive_transitive_closure(a)


def test_power():
    p = FuzzyMatrix(TREATMENT_P)
    assert power(p, 0) == FuzzyMatrix.identity(3)
    assert power(p, 1) == p
    assert power(p, 3) == compose(p, compose(p, p))


def test_format_possibility():
    assert format_possibility(F(1, 2)) == "0.5"
    assert format_possibility(F(1)) == "1"
    assert format_possibility(F(0)) == "0"
    assert format_possibility(F(1, 3)) == "1/3"


# --- properties --------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(same_dim(3))
def test_compose_associative(ms):
    a, b, c = ms
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@settings(max_examples=60, deadline=None)
@given(same_dim(3))
def test_compose_distributes_over_join(ms):
    a, b, c = ms
    assert compose(a, join(b, c)) == join(compose(a, b), compose(a, c))


@settings(max_examples=60, deadline=None)
@given(same_dim(3))
def test_monotonicity(ms):
    a, b, c = ms
    lo = FuzzyMatrix([[min(a[i, j], b[i, j]) for j in range(a.dim)] for i in range(a.dim)])
    assert lo <= a
    assert compose(lo, c) <= compose(a, c)
    assert transitive_closure(lo) <= transitive_closure(a)
    assert reflexive_transitive_closure(lo) <= reflexive_transitive_closure(a)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_closure_idempotence(a):
    plus = transitive_closure(a)
    assert transitive_closure(plus) == plus
    star = reflexive_transitive_closure(a)
    assert compose(star, star) == star


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_bounded_closure_monotone_and_stable(a):
    prev = bounded_closure(a, 0)
    for n in range(1, a.dim + 3):
        cur = bounded_closure(a, n)
        assert prev <= cur
        prev = cur
    assert bounded_closure(a, a.dim) == bounded_closure(a, a.dim + 2) == reflexive_transitive_closure(a)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_values_come_from_inputs(a):
    allowed = a.values() | {F(0), F(1)}
    for out in (transitive_closure(a), reflexive_transitive_closure(a), bounded_closure(a, 2), compose(a, a)):
        assert out.values() <= allowed


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_squaring_equals_naive(a):
    assert transitive_closure(a) == transitive_closure(a, method="naive")
