import random
from fractions import Fraction as F

import pytest

from poctl.formula import (
    TRUE,
    Always,
    And,
    Atom,
    BoundedUntil,
    Exists,
    Forall,
    Interval,
    Next,
    Not,
    Po,
    Until,
    WellFormednessError,
    check_well_formed,
    formula_size,
    lor,
    implies,
    to_text,
)
from poctl.parser import FormulaSyntaxError, parse_ctl, parse_formula, parse_poctl

from .corpus import random_ctl, random_poctl

a, b, c = Atom("a"), Atom("b"), Atom("c")


def test_poctl_examples():
    assert parse_poctl('Po=1 [ F "excellent" ]') == Po(Interval.eq(1), Until(TRUE, Atom("excellent")))
    assert parse_poctl('Po>0 [ "poor" U<=7 "excellent" ]') == Po(
        Interval.gt(0), BoundedUntil(Atom("poor"), Atom("excellent"), 7)
    )


def test_ctl_examples():
    assert parse_ctl('A [ F "excellent" ]') == Forall(Until(TRUE, Atom("excellent")))
    assert parse_ctl('E [ G "a" ]') == Exists(Always(a))


@pytest.mark.parametrize(
    "text, bound",
    [
        ("Po>=0.5", Interval.ge(F(1, 2))),
        ("Po>0.5", Interval.gt(F(1, 2))),
        ("Po<=0.5", Interval.le(F(1, 2))),
        ("Po<0.5", Interval.lt(F(1, 2))),
        ("Po=0.5", Interval.eq(F(1, 2))),
        ("Po in [0.2,0.5]", Interval(F(1, 5), F(1, 2))),
        ("Po in (0.2,0.5)", Interval(F(1, 5), F(1, 2), False, False)),
        ("Po in [0.2,0.5)", Interval(F(1, 5), F(1, 2), True, False)),
        ("Po>=1/3", Interval.ge(F(1, 3))),
    ],
)
def test_bounds(text, bound):
    f = parse_poctl(f"{text} [ X a ]")
    assert f == Po(bound, Next(a))


def test_sugar_and_precedence():
    assert parse_formula("false") == Not(TRUE)
    assert parse_formula("a | b & c") == lor(a, And(b, c))
    assert parse_formula("a -> b | c") == implies(a, lor(b, c))
    assert parse_formula("!a & b") == And(Not(a), b)
    assert parse_formula("a & b & c") == And(And(a, b), c)
    assert parse_formula("(a & b)") == And(a, b)
    assert parse_formula("a -> b -> c") == implies(implies(a, b), c)


def test_bare_and_quoted_atoms():
    assert parse_formula('"with space" & x_1') == And(Atom("with space"), Atom("x_1"))


def test_path_operands_are_state_formulae():
    f = parse_poctl('Po>0 [ !"b" U !"a" & !"b" ]')
    assert f == Po(Interval.gt(0), Until(Not(b), And(Not(a), Not(b))))
    assert parse_poctl("Po=1 [ G Po=1 [ F a ] ]") == Po(
        Interval.eq(1), Always(Po(Interval.eq(1), Until(TRUE, a)))
    )


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("a &", 1, 4),
        ("Po>=2 [ X a ]", 1, 5),
        ("Po [ X a ]", 1, 4),
        ("a\n  & & b", 2, 5),
        ("E [ X a", 1, 8),
        ("a b", 1, 3),
        ("Po>0 [ a U<=x b ]", 1, 13),
        ('"open', 1, 1),
    ],
)
def test_syntax_errors_have_positions(text, line, column):
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_mixed_trees_rejected():
    with pytest.raises(WellFormednessError):
        parse_formula("Po>0 [ X E [ X a ] ]")
    with pytest.raises(WellFormednessError):
        parse_formula("E [ a U<=3 b ]")
    with pytest.raises(WellFormednessError):
        parse_ctl("Po>0 [ X a ]")
    with pytest.raises(WellFormednessError):
        parse_poctl("E [ X a ]")
    with pytest.raises(WellFormednessError):
        check_well_formed(And(Po(Interval.gt(0), Next(a)), Exists(Next(a))))


def test_round_trip_poctl():
    rng = random.Random(1)
    for _ in range(1000):
        f = random_poctl(rng, 4)
        assert parse_formula(to_text(f)) == f


def test_round_trip_ctl():
    rng = random.Random(2)
    for _ in range(1000):
        f = random_ctl(rng, 4)
        assert parse_formula(to_text(f)) == f


def test_round_trip_odd_bounds():
    for bound in (Interval(F(1, 3), F(2, 3), False, True), Interval(F(0), F(0), True, False), Interval.ge(F(1, 7))):
        f = Po(bound, Next(a))
        assert parse_formula(to_text(f)) == f


def test_formula_size():
    assert formula_size(a) == 1
    assert formula_size(parse_poctl("Po=1 [ F a ]")) == 4
    assert formula_size(parse_ctl("A [ a U b ]")) == 4
    rng = random.Random(3)
    for _ in range(200):
        f = random_poctl(rng, 3)
        assert formula_size(Not(f)) == formula_size(f) + 1
        assert formula_size(And(f, f)) == 2 * formula_size(f) + 1
