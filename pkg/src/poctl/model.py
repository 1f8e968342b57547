"""Possibilistic Kripke structures and the crisp structures derived from them."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import (
    ONE,
    ZERO,
    FuzzyMatrix,
    PossibilityVector,
    possibility,
    transitive_closure,
)


class ModelError(ValueError):
    """A structure is malformed or violates normality."""

    def __init__(self, message: str, violations: Sequence[str] = ()):
        super().__init__(message)
        self.violations = list(violations)


class UnknownStateError(KeyError):
    pass


class TerminalStateWarning(UserWarning):
    """A derived transition system has states without successors."""


@dataclass(frozen=True)
class PossibilisticKripkeStructure:
    """``(S, P, I, AP, L)`` over a finite, ordered state list.

    ``labels[i]`` is the label set of ``states[i]``; matrices and vectors are
    indexed in the same order.  Normality is not enforced on construction so
    that :func:`validate` can report every violation; use :func:`make_model`
    with ``check=True`` (the default) to reject invalid input.
    """

    states: tuple[str, ...]
    transitions: FuzzyMatrix
    initial: PossibilityVector
    atoms: frozenset[str]
    labels: tuple[frozenset[str], ...]
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self.states:
            raise ModelError("a structure needs at least one state")
        if len(set(self.states)) != len(self.states):
            raise ModelError("duplicate state names")
        n = len(self.states)
        if self.transitions.dim != n or self.initial.dim != n or len(self.labels) != n:
            raise ModelError("transition matrix, initial vector and labels must match the state count")
        for s, lab in zip(self.states, self.labels):
            extra = lab - self.atoms
            if extra:
                raise ModelError(f"state {s} labelled with unknown atoms {sorted(extra)}")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.states)})

    @property
    def size(self) -> int:
        return len(self.states)

    def index(self, state: str) -> int:
        try:
            return self._index[state]
        except KeyError:
            raise UnknownStateError(state) from None

    def P(self, s: str, t: str) -> Fraction:
        return self.transitions[self.index(s), self.index(t)]

    def I(self, s: str) -> Fraction:
        return self.initial[self.index(s)]

    def label(self, s: str) -> frozenset[str]:
        return self.labels[self.index(s)]

    def successors(self, s: str) -> list[str]:
        """States reachable in one step with positive possibility."""
        row = self.transitions.row(self.index(s))
        return [t for t, v in zip(self.states, row) if v > 0]

    def states_with(self, atom: str) -> frozenset[str]:
        return frozenset(s for s, lab in zip(self.states, self.labels) if atom in lab)


def make_model(
    states: Sequence[str],
    transitions,
    initial,
    labels: Mapping[str, Iterable[str]] | None = None,
    atoms: Iterable[str] | None = None,
    check: bool = True,
) -> PossibilisticKripkeStructure:
    """Build a structure from friendly inputs.

    ``transitions`` is either a square row list or a mapping ``(s, t) -> value``
    (missing pairs are 0); ``initial`` is a list or a mapping ``s -> value``.
    """
    states = tuple(states)
    index = {s: i for i, s in enumerate(states)}
    n = len(states)
    if isinstance(transitions, Mapping):
        rows = [[ZERO] * n for _ in range(n)]
        for (s, t), v in transitions.items():
            if s not in index or t not in index:
                raise UnknownStateError(s if s not in index else t)
            rows[index[s]][index[t]] = possibility(v)
        transitions = rows
    if not isinstance(transitions, FuzzyMatrix):
        transitions = FuzzyMatrix(transitions)
    if isinstance(initial, Mapping):
        vec = [ZERO] * n
        for s, v in initial.items():
            if s not in index:
                raise UnknownStateError(s)
            vec[index[s]] = possibility(v)
        initial = vec
    if not isinstance(initial, PossibilityVector):
        initial = PossibilityVector(initial)
    labels = labels or {}
    for s in labels:
        if s not in index:
            raise UnknownStateError(s)
    label_sets = tuple(frozenset(labels.get(s, ())) for s in states)
    atom_set = frozenset(atoms) if atoms is not None else frozenset().union(*label_sets)
    model = PossibilisticKripkeStructure(states, transitions, initial, atom_set, label_sets)
    if check:
        problems = validate(model)
        if problems:
            raise ModelError("; ".join(problems), problems)
    return model


def validate(model: PossibilisticKripkeStructure) -> list[str]:
    """Normality and labelling violations; an empty list means the model is valid."""
    problems = []
    for i, s in enumerate(model.states):
        top = max(model.transitions.row(i))
        if top != ONE:
            problems.append(f"row normality at state {s} (max {top} < 1)")
    top = max(model.initial)
    if top != ONE:
        problems.append(f"initial normality (max {top} < 1)")
    for s, lab in zip(model.states, model.labels):
        if not lab <= model.atoms:
            problems.append(f"labelling at state {s} uses atoms outside AP")
    return problems


def rebase_initial(model: PossibilisticKripkeStructure, state: str) -> PossibilisticKripkeStructure:
    """``M_s``: the same structure with ``state`` as its unique initial state."""
    i = model.index(state)
    return replace(model, initial=PossibilityVector.indicator(model.size, [i]))


def plus_structure(model: PossibilisticKripkeStructure) -> PossibilisticKripkeStructure:
    """``M⁺``: transitions replaced by their max-min transitive closure."""
    return replace(model, transitions=transitive_closure(model.transitions))


# --- crisp transition systems ------------------------------------------------


@dataclass(frozen=True)
class TransitionSystem:
    states: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    initial: frozenset[str]
    atoms: frozenset[str]
    labels: tuple[frozenset[str], ...]

    def successors(self, s: str) -> list[str]:
        return [t for t in self.states if (s, t) in self.edges]

    def terminal_states(self) -> frozenset[str]:
        sources = {s for s, _ in self.edges}
        return frozenset(s for s in self.states if s not in sources)

    def states_with(self, atom: str) -> frozenset[str]:
        return frozenset(s for s, lab in zip(self.states, self.labels) if atom in lab)


def _threshold_ts(model: PossibilisticKripkeStructure, keep) -> TransitionSystem:
    edges = frozenset(
        (s, t)
        for i, s in enumerate(model.states)
        for j, t in enumerate(model.states)
        if keep(model.transitions[i, j])
    )
    initial = frozenset(s for s, v in zip(model.states, model.initial) if keep(v))
    return TransitionSystem(model.states, edges, initial, model.atoms, model.labels)


def underlying_ts(model: PossibilisticKripkeStructure) -> TransitionSystem:
    """``TS(M)``: an edge wherever the transition possibility is positive."""
    return _threshold_ts(model, lambda v: v > 0)


def alpha_cut_ts(model: PossibilisticKripkeStructure, alpha) -> TransitionSystem:
    """``TS_α(M)``: keep transitions and initial states with possibility ≥ α.

    Terminal states in the cut are reported with a :class:`TerminalStateWarning`.
    A normal structure never produces one, since each row holds a 1.
    """
    alpha = possibility(alpha)
    if alpha <= 0:
        raise ValueError("alpha must lie in (0, 1]")
    ts = _threshold_ts(model, lambda v: v >= alpha)
    dead = ts.terminal_states()
    if dead:
        warnings.warn(f"alpha-cut at {alpha} has terminal states {sorted(dead)}", TerminalStateWarning, stacklevel=2)
    return ts


# --- path possibilities ------------------------------------------------------


@dataclass(frozen=True)
class Lasso:
    """The ultimately periodic path ``stem · cycle^ω``."""

    stem: tuple[str, ...]
    cycle: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "stem", tuple(self.stem))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not self.cycle:
            raise ModelError("a lasso needs a nonempty cycle")

    @property
    def start(self) -> str:
        return self.stem[0] if self.stem else self.cycle[0]

    def steps(self) -> list[tuple[str, str]]:
        """Every distinct transition the infinite path takes."""
        seq = self.stem + self.cycle
        out = list(zip(seq, seq[1:]))
        out.append((self.cycle[-1], self.cycle[0]))
        return out

    def prefix(self, length: int) -> tuple[str, ...]:
        """The first ``length`` states of the infinite path."""
        out = list(self.stem)
        while len(out) < length:
            out.extend(self.cycle)
        return tuple(out[:length])


def cylinder_possibility(model: PossibilisticKripkeStructure, path: Sequence[str]) -> Fraction:
    """``Po(Cyl(s₀…sₙ)) = I(s₀) ∧ ⋀ P(sᵢ, sᵢ₊₁)``."""
    if not path:
        raise ValueError("a cylinder needs at least one state")
    value = model.I(path[0])
    for s, t in zip(path, path[1:]):
        value = min(value, model.P(s, t))
    return value


def lasso_possibility(model: PossibilisticKripkeStructure, lasso: Lasso) -> Fraction:
    """Possibility of the single infinite path denoted by ``lasso``."""
    value = model.I(lasso.start)
    for s, t in lasso.steps():
        p = model.P(s, t)
        if p <= 0:
            raise ModelError(f"lasso uses the impossible transition {s} -> {t}")
        value = min(value, p)
    return value


def possibility_one_lasso(model: PossibilisticKripkeStructure) -> Lasso:
    """A path of possibility 1, found greedily.

    Starts at the alphabetically first state with ``I = 1`` and keeps taking
    the alphabetically first successor with ``P = 1`` until a state repeats.
    Normality guarantees each step exists.
    """
    start = min(s for s in model.states if model.I(s) == ONE)
    seen: dict[str, int] = {}
    walk = []
    s = start
    while s not in seen:
        seen[s] = len(walk)
        walk.append(s)
        s = min(t for t in model.states if model.P(s, t) == ONE)
    k = seen[s]
    return Lasso(tuple(walk[:k]), tuple(walk[k:]))
