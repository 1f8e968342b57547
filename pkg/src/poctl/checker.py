"""Satisfaction sets for PoCTL over possibilistic Kripke structures.

Path operators are evaluated with max-min matrix algebra:

* ``◯Ψ``       ``P ∘ χ_B``
* ``C U B``      1 on B, 0 outside ``C ∪ B``, and ``P?* ∘ P ∘ χ_B`` on ``C ∖ B``,
                 where ``P?`` is ``P`` restricted to ``C ∖ B``
* ``C U≤n B``    as above with ``P?^{≤ n-1}`` in place of ``P?*``
* ``□B``         ``Q* ∘ diag(Q⁺)`` with ``Q`` the restriction of ``P`` to B

A plain CTL checker over crisp transition systems lives here too, for
cross-checking the embeddings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import (
    ONE,
    ZERO,
    PossibilityVector,
    apply,
    bounded_closure,
    reflexive_transitive_closure,
    transitive_closure,
)
from .formula import (
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
    TrueF,
    Until,
    require_poctl,
)
from .model import PossibilisticKripkeStructure, TransitionSystem
from .translate import to_enf


class UnknownAtomError(KeyError):
    pass


@dataclass(frozen=True)
class UntilPartition:
    s_eq1: frozenset[str]
    s_eq0: frozenset[str]
    s_q: frozenset[str]


@dataclass
class CheckResult:
    """Satisfying states plus the possibility vector of every ``Po`` node."""

    states: tuple[str, ...]
    sat: frozenset[str]
    po_values: dict[Po, PossibilityVector] = field(default_factory=dict)

    def value(self, node: Po, state: str) -> Fraction:
        return self.po_values[node][self.states.index(state)]


def _indices(model: PossibilisticKripkeStructure, states: Iterable[str]) -> list[int]:
    return sorted({model.index(s) for s in states})


def _scatter(n: int, parts: Mapping[int, Fraction]) -> PossibilityVector:
    out = [ZERO] * n
    for i, v in parts.items():
        out[i] = v
    return PossibilityVector(out)


def po_next(model: PossibilisticKripkeStructure, target: Iterable[str]) -> PossibilityVector:
    """``Po(s ⊨ ◯B)`` for every state: the best single step into B."""
    chi = PossibilityVector.indicator(model.size, _indices(model, target))
    return apply(model.transitions, chi)


def default_partition(model: PossibilisticKripkeStructure, c: Iterable[str], b: Iterable[str]) -> UntilPartition:
    c, b = frozenset(c), frozenset(b)
    for s in c | b:
        model.index(s)
    everything = frozenset(model.states)
    return UntilPartition(s_eq1=b, s_eq0=everything - (c | b), s_q=c - b)


def _until(model, c, b, steps: int | None, partition: UntilPartition | None) -> PossibilityVector:
    part = partition or default_partition(model, c, b)
    n = model.size
    values = {model.index(s): ONE for s in part.s_eq1}
    q = _indices(model, part.s_q)
    if q and (steps is None or steps > 0):
        into_b = po_next(model, b).take(q)
        local = model.transitions.submatrix(q)
        if steps is None:
            reach = reflexive_transitive_closure(local)
        else:
            # witnesses spend at most steps-1 moves inside S? before the final step into B
            reach = bounded_closure(local, steps - 1)
        for i, v in zip(q, apply(reach, into_b)):
            values[i] = v
    return _scatter(n, values)


def po_until(
    model: PossibilisticKripkeStructure,
    c: Iterable[str],
    b: Iterable[str],
    partition: UntilPartition | None = None,
) -> PossibilityVector:
    """``Po(s ⊨ C U B)`` for every state.

    ``partition`` may replace the default one with any legal enlargement of
    ``s_eq0`` (states that cannot reach B through C).
    """
    return _until(model, frozenset(c), frozenset(b), None, partition)


def po_bounded_until(
    model: PossibilisticKripkeStructure,
    c: Iterable[str],
    b: Iterable[str],
    n: int,
    partition: UntilPartition | None = None,
) -> PossibilityVector:
    """``Po(s ⊨ C U≤n B)``: B must be reached within ``n`` steps."""
    if n < 0:
        raise ValueError("step bound must be nonnegative")
    return _until(model, frozenset(c), frozenset(b), n, partition)


def po_always(model: PossibilisticKripkeStructure, b: Iterable[str]) -> PossibilityVector:
    """``Po(s ⊨ □B)``: best lasso that never leaves B.

    A path confined to B revisits some state t forever, so its value is
    bounded by the best route from s to t inside B and the best cycle
    through t inside B; the lasso built from those two attains the bound.
    """
    idx = _indices(model, b)
    if not idx:
        return PossibilityVector.zeros(model.size)
    local = model.transitions.submatrix(idx)
    stems = reflexive_transitive_closure(local)
    cycles = transitive_closure(local).diagonal()
    return _scatter(model.size, dict(zip(idx, apply(stems, cycles))))


def check_bound(v: PossibilityVector, bound: Interval, states: Sequence[str] | None = None) -> frozenset:
    """Entries of ``v`` inside ``bound``: names when ``states`` is given, else indices."""
    hits = [i for i, x in enumerate(v) if x in bound]
    if states is None:
        return frozenset(hits)
    return frozenset(states[i] for i in hits)


def path_vector(model: PossibilisticKripkeStructure, path, resolve) -> PossibilityVector:
    """Possibility vector of a path formula; ``resolve`` maps state formulae to state sets."""
    if isinstance(path, Next):
        return po_next(model, resolve(path.arg))
    if isinstance(path, Until):
        return po_until(model, resolve(path.left), resolve(path.right))
    if isinstance(path, BoundedUntil):
        return po_bounded_until(model, resolve(path.left), resolve(path.right), path.bound)
    if isinstance(path, Always):
        return po_always(model, resolve(path.arg))
    raise TypeError(f"not a path formula: {path!r}")


class _Checker:
    def __init__(self, model: PossibilisticKripkeStructure):
        self.model = model
        self.everything = frozenset(model.states)
        self.memo: dict = {}
        self.po_values: dict[Po, PossibilityVector] = {}

    def sat(self, f) -> frozenset[str]:
        hit = self.memo.get(f)
        if hit is None:
            hit = self.memo[f] = self._sat(f)
        return hit

    def _sat(self, f) -> frozenset[str]:
        m = self.model
        if isinstance(f, TrueF):
            return self.everything
        if isinstance(f, Atom):
            if f.name not in m.atoms:
                raise UnknownAtomError(f.name)
            return m.states_with(f.name)
        if isinstance(f, Not):
            return self.everything - self.sat(f.arg)
        if isinstance(f, And):
            return self.sat(f.left) & self.sat(f.right)
        if isinstance(f, Po):
            vec = path_vector(m, f.path, self.sat)
            self.po_values[f] = vec
            return check_bound(vec, f.bound, m.states)
        raise TypeError(f"unsupported state formula {f!r}")


def sat(model: PossibilisticKripkeStructure, formula) -> CheckResult:
    """Compute ``Sat(formula)`` bottom-up, sharing work between equal subformulae."""
    require_poctl(formula)
    checker = _Checker(model)
    result = checker.sat(formula)
    return CheckResult(model.states, result, checker.po_values)


# --- classical CTL -----------------------------------------------------------


class _CtlChecker:
    def __init__(self, ts: TransitionSystem):
        self.ts = ts
        self.everything = frozenset(ts.states)
        self.pred: dict[str, set[str]] = {s: set() for s in ts.states}
        for s, t in ts.edges:
            self.pred[t].add(s)
        # states with at least one infinite path
        self.live = self._eg(self.everything)
        self.memo: dict = {}

    def pre(self, targets: Iterable[str]) -> set[str]:
        out: set[str] = set()
        for t in targets:
            out |= self.pred[t]
        return out

    def _eg(self, allowed: frozenset[str]) -> frozenset[str]:
        z = set(allowed)
        while True:
            keep = z & self.pre(z)
            if keep == z:
                return frozenset(z)
            z = keep

    def _eu(self, c: frozenset[str], b: frozenset[str]) -> frozenset[str]:
        reached = set(b & self.live)
        frontier = list(reached)
        while frontier:
            t = frontier.pop()
            for s in self.pred[t]:
                if s in c and s not in reached:
                    reached.add(s)
                    frontier.append(s)
        return frozenset(reached)

    def sat(self, f) -> frozenset[str]:
        hit = self.memo.get(f)
        if hit is None:
            hit = self.memo[f] = self._sat(f)
        return hit

    def _sat(self, f) -> frozenset[str]:
        if isinstance(f, TrueF):
            return self.everything
        if isinstance(f, Atom):
            if f.name not in self.ts.atoms:
                raise UnknownAtomError(f.name)
            return self.ts.states_with(f.name)
        if isinstance(f, Not):
            return self.everything - self.sat(f.arg)
        if isinstance(f, And):
            return self.sat(f.left) & self.sat(f.right)
        if isinstance(f, Exists):
            p = f.path
            if isinstance(p, Next):
                return frozenset(self.pre(self.sat(p.arg) & self.live))
            if isinstance(p, Until):
                return self._eu(self.sat(p.left), self.sat(p.right))
            if isinstance(p, Always):
                return self._eg(self.sat(p.arg))
        raise TypeError(f"not an ENF formula: {f!r}")


def ctl_sat(ts: TransitionSystem, formula) -> frozenset[str]:
    """Classical CTL satisfaction set, by fixpoints over the ENF.

    Only infinite paths count, so a state without any infinite path satisfies
    no ``∃`` formula and every ``∀`` formula.
    """
    return _CtlChecker(ts).sat(to_enf(formula))
