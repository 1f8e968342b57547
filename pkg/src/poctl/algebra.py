"""Exact max-min (fuzzy) matrix and vector algebra.

Max-min composition never creates a value that was not already present in
its operands, so every matrix and vector here is stored as an integer rank
array over a sorted table of exact :class:`~fractions.Fraction` values.  All
arithmetic happens on the ranks (an order isomorphism), which keeps the
results exact while letting numpy do the heavy lifting.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

Possibility = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

# Upper bound on the size of the temporary (rows x dim x dim) block in compose.
_BLOCK_ELEMENTS = 1 << 22


class DimensionError(ValueError):
    """Operands of a matrix/vector operation have incompatible shapes."""


def possibility(value) -> Fraction:
    """Coerce ``value`` to an exact possibility degree in [0, 1].

    Strings are parsed exactly (``"0.7"`` is 7/10); floats go through their
    shortest repr so that ``0.7`` also becomes 7/10.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not possibility values")
    if isinstance(value, Fraction):
        v = value
    elif isinstance(value, float):
        v = Fraction(repr(value))
    elif isinstance(value, str):
        v = Fraction(value.strip())
    else:
        v = Fraction(value)
    if not 0 <= v <= 1:
        raise ValueError(f"possibility value {value!r} outside [0, 1]")
    return v


@lru_cache(maxsize=256)
def _index_of(scale: tuple[Fraction, ...]) -> dict[Fraction, int]:
    return {v: i for i, v in enumerate(scale)}


def _make_scale(values: Iterable[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sorted(set(values) | {ZERO, ONE}))


def _merge(*objs: "_RankArray") -> tuple[tuple[Fraction, ...], list[np.ndarray]]:
    """Bring operands onto a common value table."""
    first = objs[0]._scale
    if all(o._scale is first or o._scale == first for o in objs[1:]):
        return first, [o._ranks for o in objs]
    scale = _make_scale(v for o in objs for v in o._scale)
    index = _index_of(scale)
    out = []
    for o in objs:
        remap = np.array([index[v] for v in o._scale], dtype=np.int32)
        out.append(remap[o._ranks])
    return scale, out


class _RankArray:
    __slots__ = ("_scale", "_ranks")

    _scale: tuple[Fraction, ...]
    _ranks: np.ndarray

    @classmethod
    def _wrap(cls, scale, ranks):
        obj = cls.__new__(cls)
        ranks = np.ascontiguousarray(ranks, dtype=np.int32)
        ranks.setflags(write=False)
        obj._scale = scale
        obj._ranks = ranks
        return obj

    @property
    def dim(self) -> int:
        return self._ranks.shape[0]

    def tolist(self):
        table = np.array(self._scale, dtype=object)
        return table[self._ranks].tolist()

    def values(self) -> frozenset[Fraction]:
        """The set of distinct entries."""
        return frozenset(self._scale[i] for i in np.unique(self._ranks))

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if self._ranks.shape != other._ranks.shape:
            return False
        scale, (a, b) = _merge(self, other)
        return bool(np.array_equal(a, b))

    def __hash__(self):
        flat = tuple(self._scale[r] for r in self._ranks.ravel())
        return hash((type(self).__name__, self._ranks.shape, flat))

    def __le__(self, other) -> bool:
        """Entrywise order."""
        if type(other) is not type(self):
            return NotImplemented
        _check_same_shape(self, other)
        _, (a, b) = _merge(self, other)
        return bool(np.all(a <= b))


def _check_same_shape(a: _RankArray, b: _RankArray) -> None:
    if a._ranks.shape != b._ranks.shape:
        raise DimensionError(f"shape mismatch: {a._ranks.shape} vs {b._ranks.shape}")


class FuzzyMatrix(_RankArray):
    """Square matrix of possibility degrees."""

    __slots__ = ()

    def __init__(self, rows: Sequence[Sequence]):
        entries = [[possibility(x) for x in row] for row in rows]
        n = len(entries)
        if n == 0:
            raise DimensionError("a fuzzy matrix needs at least one row")
        if any(len(row) != n for row in entries):
            raise DimensionError("fuzzy matrix must be square")
        scale = _make_scale(v for row in entries for v in row)
        index = _index_of(scale)
        ranks = np.array([[index[v] for v in row] for row in entries], dtype=np.int32)
        wrapped = self._wrap(scale, ranks)
        self._scale = wrapped._scale
        self._ranks = wrapped._ranks

    @classmethod
    def identity(cls, n: int) -> "FuzzyMatrix":
        scale = (ZERO, ONE)
        return cls._wrap(scale, np.eye(n, dtype=np.int32))

    @classmethod
    def zeros(cls, n: int) -> "FuzzyMatrix":
        return cls._wrap((ZERO, ONE), np.zeros((n, n), dtype=np.int32))

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._scale[self._ranks[i, j]]

    def row(self, i: int) -> list[Fraction]:
        return [self._scale[r] for r in self._ranks[i]]

    def diagonal(self) -> "PossibilityVector":
        return PossibilityVector._wrap(self._scale, np.diagonal(self._ranks))

    def submatrix(self, index: Sequence[int]) -> "FuzzyMatrix":
        """Principal submatrix on the given row/column indices."""
        idx = np.asarray(index, dtype=np.intp)
        return FuzzyMatrix._wrap(self._scale, self._ranks[np.ix_(idx, idx)])

    def __repr__(self):
        rows = "; ".join(" ".join(_fmt(v) for v in row) for row in self.tolist())
        return f"FuzzyMatrix([{rows}])"


class PossibilityVector(_RankArray):
    """State-indexed vector of possibility degrees."""

    __slots__ = ()

    def __init__(self, entries: Sequence):
        values = [possibility(x) for x in entries]
        if not values:
            raise DimensionError("a possibility vector needs at least one entry")
        scale = _make_scale(values)
        index = _index_of(scale)
        wrapped = self._wrap(scale, np.array([index[v] for v in values], dtype=np.int32))
        self._scale = wrapped._scale
        self._ranks = wrapped._ranks

    @classmethod
    def zeros(cls, n: int) -> "PossibilityVector":
        return cls._wrap((ZERO, ONE), np.zeros(n, dtype=np.int32))

    @classmethod
    def indicator(cls, n: int, members: Iterable[int]) -> "PossibilityVector":
        """Characteristic vector of an index set."""
        ranks = np.zeros(n, dtype=np.int32)
        ranks[list(members)] = 1
        return cls._wrap((ZERO, ONE), ranks)

    def __getitem__(self, i: int) -> Fraction:
        return self._scale[self._ranks[i]]

    def __iter__(self):
        return (self._scale[r] for r in self._ranks)

    def __len__(self):
        return self.dim

    def take(self, index: Sequence[int]) -> "PossibilityVector":
        return PossibilityVector._wrap(self._scale, self._ranks[np.asarray(index, dtype=np.intp)])

    def __repr__(self):
        return "PossibilityVector([" + ", ".join(_fmt(v) for v in self) + "])"


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# --- rank kernels -----------------------------------------------------------


def _compose_ranks(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, m = a.shape[0], b.shape[1]
    if n == 0 or m == 0 or a.shape[1] == 0:
        return np.zeros((n, m), dtype=np.int32)
    step = max(1, _BLOCK_ELEMENTS // (a.shape[1] * m))
    out = np.empty((n, m), dtype=np.int32)
    for lo in range(0, n, step):
        block = np.minimum(a[lo : lo + step, :, None], b[None, :, :])
        out[lo : lo + step] = block.max(axis=1)
    return out


def _apply_ranks(a: np.ndarray, v: np.ndarray) -> np.ndarray:
    if a.shape[1] == 0:
        return np.zeros(a.shape[0], dtype=np.int32)
    return np.minimum(a, v[None, :]).max(axis=1)


def _eye_ranks(n: int, top: int) -> np.ndarray:
    return np.eye(n, dtype=np.int32) * top


def _star_ranks(a: np.ndarray, top: int) -> np.ndarray:
    """Identity joined with all powers of ``a`` by repeated squaring."""
    n = a.shape[0]
    r = np.maximum(_eye_ranks(n, top), a)
    reach = 1
    while reach < n:
        r = _compose_ranks(r, r)
        reach *= 2
    return r


# --- public operations ------------------------------------------------------


def compose(a: FuzzyMatrix, b: FuzzyMatrix) -> FuzzyMatrix:
    """Max-min composition ``a ∘ b``."""
    _check_same_shape(a, b)
    scale, (ra, rb) = _merge(a, b)
    return FuzzyMatrix._wrap(scale, _compose_ranks(ra, rb))


def apply(a: FuzzyMatrix, v: PossibilityVector) -> PossibilityVector:
    """Max-min matrix-vector product ``a ∘ v``."""
    if a.dim != v.dim:
        raise DimensionError(f"matrix of dim {a.dim} applied to vector of dim {v.dim}")
    scale, (ra, rv) = _merge(a, v)
    return PossibilityVector._wrap(scale, _apply_ranks(ra, rv))


def join(a: FuzzyMatrix, b: FuzzyMatrix) -> FuzzyMatrix:
    """Entrywise maximum."""
    _check_same_shape(a, b)
    scale, (ra, rb) = _merge(a, b)
    return FuzzyMatrix._wrap(scale, np.maximum(ra, rb))


def power(a: FuzzyMatrix, k: int) -> FuzzyMatrix:
    """``a`` composed with itself ``k`` times; ``power(a, 0)`` is the identity."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    result = FuzzyMatrix.identity(a.dim)
    for _ in range(k):
        result = compose(result, a)
    return result


def transitive_closure(a: FuzzyMatrix, method: str = "squaring") -> FuzzyMatrix:
    """``a ∨ a² ∨ … ∨ aᴺ`` with N the dimension.

    ``method="squaring"`` squares ``I ∨ a`` about log2(N) times and finishes
    with one composition by ``a``; ``method="naive"`` accumulates the N powers
    one at a time.  Both give identical results.
    """
    if method == "naive":
        acc = a
        p = a
        for _ in range(a.dim - 1):
            p = compose(p, a)
            acc = join(acc, p)
        return acc
    if method != "squaring":
        raise ValueError(f"unknown closure method {method!r}")
    top = len(a._scale) - 1
    star = _star_ranks(a._ranks, top)
    return FuzzyMatrix._wrap(a._scale, _compose_ranks(a._ranks, star))


def reflexive_transitive_closure(a: FuzzyMatrix) -> FuzzyMatrix:
    """``I ∨ a⁺``."""
    top = len(a._scale) - 1
    return FuzzyMatrix._wrap(a._scale, _star_ranks(a._ranks, top))


def bounded_closure(a: FuzzyMatrix, n: int) -> FuzzyMatrix:
    """``⋁_{k=0}^{n} aᵏ`` (``a⁰`` is the identity)."""
    if n < 0:
        raise ValueError("bound must be nonnegative")
    top = len(a._scale) - 1
    eye = _eye_ranks(a.dim, top)
    r = eye
    # powers beyond dim - 1 add nothing
    for _ in range(min(n, a.dim)):
        r = np.maximum(eye, _compose_ranks(a._ranks, r))
    return FuzzyMatrix._wrap(a._scale, r)


def format_possibility(v: Fraction) -> str:
    """Exact decimal text for ``v`` when it terminates, otherwise ``n/d``."""
    d = v.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{v.numerator}/{v.denominator}"
    digits = max(twos, fives)
    if digits == 0:
        return str(v.numerator)
    scaled = v.numerator * 10**digits // v.denominator
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"
