"""Abstract syntax for PoCTL and CTL formulae.

State formulae: :class:`TrueF`, :class:`Atom`, :class:`Not`, :class:`And`,
:class:`Po`, :class:`Exists`, :class:`Forall`.  Path formulae:
:class:`Next`, :class:`Until`, :class:`BoundedUntil`, :class:`Always`.
``false``, ``|``, ``->`` and ``F`` are sugar and have no node of their own;
the helper constructors below build their desugared forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .algebra import ONE, ZERO, format_possibility, possibility


class WellFormednessError(ValueError):
    """A formula mixes PoCTL and CTL constructs, or uses one out of place."""


@dataclass(frozen=True)
class Interval:
    """A possibility bound ``J ⊆ [0, 1]`` with rational endpoints.

    ``lower == upper`` with an open end denotes the empty bound that ``Po<0``
    and ``Po>1`` produce.
    """

    lower: Fraction
    upper: Fraction
    lower_closed: bool = True
    upper_closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lower", possibility(self.lower))
        object.__setattr__(self, "upper", possibility(self.upper))
        if self.lower > self.upper:
            raise ValueError(f"empty interval bounds {self.lower} > {self.upper}")

    def __contains__(self, x) -> bool:
        above = self.lower <= x if self.lower_closed else self.lower < x
        below = x <= self.upper if self.upper_closed else x < self.upper
        return above and below

    @property
    def is_empty(self) -> bool:
        return self.lower == self.upper and not (self.lower_closed and self.upper_closed)

    def complement(self) -> "Interval | None":
        """``[0,1] ∖ J`` when that is a single interval, else None."""
        if self.is_empty:
            return Interval(ZERO, ONE)
        if self.upper == ONE and self.upper_closed:
            if self.lower == ZERO and self.lower_closed:
                return Interval(ZERO, ZERO, True, False)
            return Interval(ZERO, self.lower, True, not self.lower_closed)
        if self.lower == ZERO and self.lower_closed:
            return Interval(self.upper, ONE, not self.upper_closed, True)
        return None

    # shorthands
    @classmethod
    def ge(cls, p) -> "Interval":
        return cls(p, ONE)

    @classmethod
    def gt(cls, p) -> "Interval":
        return cls(p, ONE, False, True)

    @classmethod
    def le(cls, p) -> "Interval":
        return cls(ZERO, p)

    @classmethod
    def lt(cls, p) -> "Interval":
        return cls(ZERO, p, True, False)

    @classmethod
    def eq(cls, p) -> "Interval":
        return cls(p, p)

    def __str__(self):
        lo, hi = format_possibility(self.lower), format_possibility(self.upper)
        if self.lower == self.upper and self.lower_closed and self.upper_closed:
            return f"={lo}"
        if self.upper == ONE and self.upper_closed:
            return f">={lo}" if self.lower_closed else f">{lo}"
        if self.lower == ZERO and self.lower_closed:
            return f"<={hi}" if self.upper_closed else f"<{hi}"
        left = "[" if self.lower_closed else "("
        right = "]" if self.upper_closed else ")"
        return f" in {left}{lo},{hi}{right}"


# --- state formulae ----------------------------------------------------------


@dataclass(frozen=True)
class TrueF:
    pass


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "StateFormula"


@dataclass(frozen=True)
class And:
    left: "StateFormula"
    right: "StateFormula"


@dataclass(frozen=True)
class Po:
    bound: Interval
    path: "PathFormula"


@dataclass(frozen=True)
class Exists:
    path: "PathFormula"


@dataclass(frozen=True)
class Forall:
    path: "PathFormula"


# --- path formulae -----------------------------------------------------------


@dataclass(frozen=True)
class Next:
    arg: "StateFormula"


@dataclass(frozen=True)
class Until:
    left: "StateFormula"
    right: "StateFormula"


@dataclass(frozen=True)
class BoundedUntil:
    left: "StateFormula"
    right: "StateFormula"
    bound: int

    def __post_init__(self):
        if isinstance(self.bound, bool) or not isinstance(self.bound, int) or self.bound < 0:
            raise ValueError("until bound must be a nonnegative integer")


@dataclass(frozen=True)
class Always:
    arg: "StateFormula"


StateFormula = Union[TrueF, Atom, Not, And, Po, Exists, Forall]
PathFormula = Union[Next, Until, BoundedUntil, Always]

TRUE = TrueF()
STATE_TYPES = (TrueF, Atom, Not, And, Po, Exists, Forall)
PATH_TYPES = (Next, Until, BoundedUntil, Always)


# --- sugar -------------------------------------------------------------------


def false() -> StateFormula:
    return Not(TRUE)


def neg(f: StateFormula) -> StateFormula:
    """Negation that cancels a leading double negation."""
    return f.arg if isinstance(f, Not) else Not(f)


def lor(a: StateFormula, b: StateFormula) -> StateFormula:
    return Not(And(Not(a), Not(b)))


def implies(a: StateFormula, b: StateFormula) -> StateFormula:
    return Not(And(a, Not(b)))


def eventually(f: StateFormula) -> Until:
    return Until(TRUE, f)


# --- traversal ---------------------------------------------------------------


def children(f) -> tuple:
    if isinstance(f, (TrueF, Atom)):
        return ()
    if isinstance(f, (Not, Next, Always)):
        return (f.arg,)
    if isinstance(f, (And, Until, BoundedUntil)):
        return (f.left, f.right)
    if isinstance(f, (Po, Exists, Forall)):
        return (f.path,)
    raise TypeError(f"not a formula: {f!r}")


def subformulae(f) -> Iterator:
    """Pre-order walk over every node, state and path alike."""
    yield f
    for c in children(f):
        yield from subformulae(c)


def formula_size(f) -> int:
    """Number of AST nodes; state and path nodes each count once."""
    return 1 + sum(formula_size(c) for c in children(f))


def atoms_of(f) -> frozenset[str]:
    return frozenset(n.name for n in subformulae(f) if isinstance(n, Atom))


def is_poctl(f) -> bool:
    return not any(isinstance(n, (Exists, Forall)) for n in subformulae(f))


def is_ctl(f) -> bool:
    return not any(isinstance(n, (Po, BoundedUntil)) for n in subformulae(f))


def require_poctl(f) -> None:
    if not is_poctl(f):
        raise WellFormednessError("expected a PoCTL formula; found a CTL path quantifier")


def require_ctl(f) -> None:
    if any(isinstance(n, Po) for n in subformulae(f)):
        raise WellFormednessError("expected a CTL formula; found a Po operator")
    if any(isinstance(n, BoundedUntil) for n in subformulae(f)):
        raise WellFormednessError("bounded until is not part of CTL")


def check_well_formed(f) -> None:
    """Reject trees that mix the two logics."""
    if not (is_poctl(f) or is_ctl(f)):
        raise WellFormednessError("formula mixes Po operators with E/A path quantifiers")


# --- printing ----------------------------------------------------------------


def _quote(name: str) -> str:
    return f'"{name}"'


def _primary(f: StateFormula) -> str:
    text = to_text(f)
    return f"({text})" if isinstance(f, And) else text


def to_text(f) -> str:
    """Concrete syntax accepted by the parser; parsing it gives ``f`` back."""
    if isinstance(f, TrueF):
        return "true"
    if isinstance(f, Atom):
        return _quote(f.name)
    if isinstance(f, Not):
        return "!" + _primary(f.arg)
    if isinstance(f, And):
        return f"{to_text(f.left)} & {_primary(f.right)}"
    if isinstance(f, Po):
        return f"Po{f.bound} [ {to_text(f.path)} ]"
    if isinstance(f, Exists):
        return f"E [ {to_text(f.path)} ]"
    if isinstance(f, Forall):
        return f"A [ {to_text(f.path)} ]"
    if isinstance(f, Next):
        return f"X {_primary(f.arg)}"
    if isinstance(f, Always):
        return f"G {_primary(f.arg)}"
    if isinstance(f, Until):
        if isinstance(f.left, TrueF):
            return f"F {_primary(f.right)}"
        return f"{_primary(f.left)} U {_primary(f.right)}"
    if isinstance(f, BoundedUntil):
        return f"{_primary(f.left)} U<={f.bound} {_primary(f.right)}"
    raise TypeError(f"not a formula: {f!r}")
