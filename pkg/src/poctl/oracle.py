"""Brute-force possibility values by enumerating path prefixes and lassos.

Nothing here touches the matrix algebra.  Values are maxima over explicit
witnesses under ``M_s`` (the start state has initial possibility 1):

* until-type events: loop-free prefixes through C ending in B; cutting a
  loop out of a witness never lowers its minimum;
* ``□``, ``□◇`` and ``◇□``: lassos ``stem · cycle^ω`` with a loop-free stem
  and a simple cycle; any infinite path has a recurring state, and the
  stem to it plus a simple cycle through it reuse only transitions of the
  path.

Both enumerations are exponential and meant for models of a handful of states.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .algebra import ONE, ZERO, FuzzyMatrix, PossibilityVector
from .checker import CheckResult, UnknownAtomError
from .formula import (
    Always,
    And,
    Atom,
    BoundedUntil,
    Exists,
    Forall,
    Next,
    Not,
    Po,
    TrueF,
    Until,
    require_ctl,
    require_poctl,
)
from .model import Lasso, PossibilisticKripkeStructure, TransitionSystem


class InexactOracleWarning(UserWarning):
    """The enumeration budget is too small to guarantee the exact supremum."""


@dataclass(frozen=True)
class OracleBudget:
    """Enumeration limits; ``None`` means the state count.

    ``loop_free=False`` switches to unrestricted walk enumeration, which is
    only useful for checking that larger budgets find nothing better.
    """

    max_stem: int | None = None
    max_cycle: int | None = None
    max_prefix: int | None = None
    loop_free: bool = True

    def __post_init__(self):
        for name in ("max_stem", "max_cycle", "max_prefix"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be at least 1")

    def resolve(self, n: int) -> tuple[int, int, int]:
        return (
            n if self.max_stem is None else self.max_stem,
            n if self.max_cycle is None else self.max_cycle,
            n if self.max_prefix is None else self.max_prefix,
        )


DEFAULT_BUDGET = OracleBudget()


def _flag(message: str) -> None:
    warnings.warn(message, InexactOracleWarning, stacklevel=3)


def _succ(model: PossibilisticKripkeStructure) -> dict[str, list[tuple[str, Fraction]]]:
    out = {}
    for i, s in enumerate(model.states):
        row = model.transitions.row(i)
        out[s] = [(t, v) for t, v in zip(model.states, row) if v > 0]
    return out


# --- enumeration -------------------------------------------------------------


def iter_prefixes(model, start: str, allowed: frozenset[str], max_len: int, loop_free: bool = True):
    """Finite paths from ``start`` with at most ``max_len`` steps.

    Every state but the last lies in ``allowed``.  Yields ``(path, value)``
    with ``value`` the cylinder possibility under ``M_start``.
    """
    succ = _succ(model)

    def walk(path, value):
        yield tuple(path), value
        if len(path) - 1 >= max_len or path[-1] not in allowed:
            return
        for t, p in succ[path[-1]]:
            if loop_free and t in path:
                continue
            path.append(t)
            yield from walk(path, min(value, p))
            path.pop()

    yield from walk([start], ONE)


def _closed_walks(succ, start: str, allowed: frozenset[str], max_len: int, loop_free: bool):
    """Cycles ``start … x`` with an edge ``x → start``; yields ``(cycle, value)``."""

    def walk(path, value):
        last = path[-1]
        for t, p in succ[last]:
            if t == start:
                yield tuple(path), min(value, p)
        if len(path) >= max_len:
            return
        for t, p in succ[last]:
            if t not in allowed or (loop_free and t in path):
                continue
            path.append(t)
            yield from walk(path, min(value, p))
            path.pop()

    if start in allowed:
        yield from walk([start], ONE)


def iter_lassos(
    model: PossibilisticKripkeStructure,
    start: str,
    stem_allowed: Iterable[str] | None = None,
    cycle_allowed: Iterable[str] | None = None,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> Iterator[tuple[Lasso, Fraction]]:
    """Every lasso from ``start`` within the budget, with its possibility under ``M_start``."""
    everything = frozenset(model.states)
    stem_ok = everything if stem_allowed is None else frozenset(stem_allowed)
    cycle_ok = everything if cycle_allowed is None else frozenset(cycle_allowed)
    max_stem, max_cycle, _ = budget.resolve(model.size)
    succ = _succ(model)
    for path, stem_value in iter_prefixes(model, start, stem_ok, max_stem, budget.loop_free):
        if any(s not in stem_ok for s in path):
            continue
        junction = path[-1]
        for cycle, cycle_value in _closed_walks(succ, junction, cycle_ok, max_cycle, budget.loop_free):
            yield Lasso(path[:-1], cycle), min(stem_value, cycle_value)


def _best_lasso(model, start, stem_ok, cycle_ok, cycle_filter, budget) -> Fraction:
    """Max over lassos, factorised at the junction state.

    A lasso's value is the min of its stem part and its cycle part, and
    stems and cycles combine freely at a shared junction, so the maximum over
    all pairs is max over junctions of min(best stem, best cycle).
    """
    n = model.size
    max_stem, max_cycle, _ = budget.resolve(n)
    if max_stem < n - 1 or max_cycle < n:
        _flag(f"lasso budget ({max_stem}, {max_cycle}) below exactness threshold ({n - 1}, {n})")
    succ = _succ(model)
    best_stem: dict[str, Fraction] = {}
    for path, value in iter_prefixes(model, start, stem_ok, max_stem, budget.loop_free):
        if all(s in stem_ok for s in path):
            t = path[-1]
            best_stem[t] = max(best_stem.get(t, ZERO), value)
    best = ZERO
    for t, stem_value in best_stem.items():
        if stem_value <= best:
            continue
        for cycle, cycle_value in _closed_walks(succ, t, cycle_ok, max_cycle, budget.loop_free):
            if cycle_filter(cycle):
                best = max(best, min(stem_value, cycle_value))
    return best


# --- possibility of path events ---------------------------------------------


def _until_value(model, start, c, b, max_len, budget) -> Fraction:
    best = ZERO
    for path, value in iter_prefixes(model, start, c - b, max_len, budget.loop_free):
        if path[-1] in b:
            best = max(best, value)
            if best == ONE:
                break
    return best


def oracle_po(
    model: PossibilisticKripkeStructure,
    start: str,
    path,
    resolve: Callable[[object], frozenset[str]],
    budget: OracleBudget = DEFAULT_BUDGET,
) -> Fraction:
    """``Po(start ⊨ path)`` by explicit witnesses; ``resolve`` gives state-formula sets."""
    n = model.size
    model.index(start)
    _, _, max_prefix = budget.resolve(n)
    if isinstance(path, Next):
        target = resolve(path.arg)
        return max((p for t, p in _succ(model)[start] if t in target), default=ZERO)
    if isinstance(path, (Until, BoundedUntil)):
        c, b = frozenset(resolve(path.left)), frozenset(resolve(path.right))
        if isinstance(path, BoundedUntil):
            needed = min(path.bound, n)
            limit = min(path.bound, max_prefix)
        else:
            needed = n
            limit = max_prefix
        if limit < needed:
            _flag(f"prefix budget {max_prefix} below exactness threshold {needed}")
        return _until_value(model, start, c, b, limit, budget)
    if isinstance(path, Always):
        b = frozenset(resolve(path.arg))
        if start not in b:
            return ZERO
        return _best_lasso(model, start, b, b, lambda cycle: True, budget)
    raise TypeError(f"not a path formula: {path!r}")


def oracle_repeated(
    model: PossibilisticKripkeStructure,
    start: str,
    targets: Iterable[str],
    mode: str,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> Fraction:
    """``Po(start ⊨ □◇B)`` (``mode="GF"``) or ``Po(start ⊨ ◇□B)`` (``mode="FG"``)."""
    b = frozenset(targets)
    everything = frozenset(model.states)
    model.index(start)
    if mode == "GF":
        keep = lambda cycle: any(s in b for s in cycle)  # noqa: E731
    elif mode == "FG":
        keep = lambda cycle: all(s in b for s in cycle)  # noqa: E731
    else:
        raise ValueError("mode must be 'GF' (□◇) or 'FG' (◇□)")
    return _best_lasso(model, start, everything, everything, keep, budget)


# --- recursive satisfaction --------------------------------------------------


def oracle_check(
    model: PossibilisticKripkeStructure, formula, budget: OracleBudget = DEFAULT_BUDGET
) -> CheckResult:
    """Satisfaction set with every ``Po`` node resolved state by state."""
    require_poctl(formula)
    everything = frozenset(model.states)
    memo: dict = {}
    po_values: dict = {}

    def resolve(f) -> frozenset[str]:
        if f in memo:
            return memo[f]
        if isinstance(f, TrueF):
            out = everything
        elif isinstance(f, Atom):
            if f.name not in model.atoms:
                raise UnknownAtomError(f.name)
            out = model.states_with(f.name)
        elif isinstance(f, Not):
            out = everything - resolve(f.arg)
        elif isinstance(f, And):
            out = resolve(f.left) & resolve(f.right)
        elif isinstance(f, Po):
            values = [oracle_po(model, s, f.path, resolve, budget) for s in model.states]
            po_values[f] = PossibilityVector(values)
            out = frozenset(s for s, v in zip(model.states, values) if v in f.bound)
        else:
            raise TypeError(f"unsupported state formula {f!r}")
        memo[f] = out
        return out

    return CheckResult(model.states, resolve(formula), po_values)


def oracle_sat(model: PossibilisticKripkeStructure, formula, budget: OracleBudget = DEFAULT_BUDGET) -> frozenset[str]:
    return oracle_check(model, formula, budget).sat


# --- CTL by lasso enumeration -------------------------------------------------


def lasso_satisfies(lasso: Lasso, path, resolve) -> bool:
    """Evaluate a path formula on the infinite word ``stem · cycle^ω``."""
    word = lasso.stem + lasso.cycle
    loop_at = len(lasso.stem)

    def nxt(i):
        return i + 1 if i + 1 < len(word) else loop_at

    if isinstance(path, Next):
        return word[nxt(0)] in resolve(path.arg)
    if isinstance(path, Always):
        return all(s in resolve(path.arg) for s in word)
    if isinstance(path, (Until, BoundedUntil)):
        c, b = resolve(path.left), resolve(path.right)
        horizon = path.bound + 1 if isinstance(path, BoundedUntil) else len(word)
        i = 0
        for _ in range(horizon):
            if word[i] in b:
                return True
            if word[i] not in c:
                return False
            i = nxt(i)
        return False
    raise TypeError(f"not a path formula: {path!r}")


def _ts_as_model(ts: TransitionSystem) -> PossibilisticKripkeStructure:
    # edges become possibility-1 transitions; only the graph matters for CTL
    n = len(ts.states)
    rows = [[ONE if (s, t) in ts.edges else ZERO for t in ts.states] for s in ts.states]
    return PossibilisticKripkeStructure(
        ts.states, FuzzyMatrix(rows), PossibilityVector([ONE] * n), ts.atoms, ts.labels
    )


def oracle_ctl_sat(ts: TransitionSystem, formula) -> frozenset[str]:
    """CTL semantics read directly off lassos: ∃ needs one, ∀ needs all.

    Lassos suffice as witnesses and counterexamples for every supported path
    operator, since each satisfying or violating infinite path can be
    replaced by a lasso over its own transitions.
    """
    require_ctl(formula)
    graph = _ts_as_model(ts)
    everything = frozenset(ts.states)
    lassos = {s: [l for l, _ in iter_lassos(graph, s)] for s in ts.states}
    memo: dict = {}

    def resolve(f) -> frozenset[str]:
        if f in memo:
            return memo[f]
        if isinstance(f, TrueF):
            out = everything
        elif isinstance(f, Atom):
            out = ts.states_with(f.name)
        elif isinstance(f, Not):
            out = everything - resolve(f.arg)
        elif isinstance(f, And):
            out = resolve(f.left) & resolve(f.right)
        elif isinstance(f, Exists):
            out = frozenset(s for s in ts.states if any(lasso_satisfies(l, f.path, resolve) for l in lassos[s]))
        elif isinstance(f, Forall):
            out = frozenset(s for s in ts.states if all(lasso_satisfies(l, f.path, resolve) for l in lassos[s]))
        else:
            raise TypeError(f"unsupported CTL formula {f!r}")
        memo[f] = out
        return out

    return resolve(formula)
