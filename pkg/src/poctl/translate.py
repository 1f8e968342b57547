"""CTL to existential normal form, and CTL to PoCTL embeddings."""

from __future__ import annotations

from .algebra import possibility
from .formula import (
    TRUE,
    Always,
    And,
    Atom,
    Exists,
    Forall,
    Interval,
    Next,
    Not,
    Po,
    TrueF,
    Until,
    neg,
    require_ctl,
)


def to_enf(f):
    """Rewrite a CTL formula using only ``∃◯``, ``∃U`` and ``∃□`` quantifiers."""
    require_ctl(f)
    return _enf(f)


def _enf(f):
    if isinstance(f, (TrueF, Atom)):
        return f
    if isinstance(f, Not):
        return Not(_enf(f.arg))
    if isinstance(f, And):
        return And(_enf(f.left), _enf(f.right))
    if isinstance(f, Exists):
        p = f.path
        if isinstance(p, Next):
            return Exists(Next(_enf(p.arg)))
        if isinstance(p, Until):
            return Exists(Until(_enf(p.left), _enf(p.right)))
        if isinstance(p, Always):
            return Exists(Always(_enf(p.arg)))
    if isinstance(f, Forall):
        p = f.path
        if isinstance(p, Next):
            # ∀◯Φ ≡ ¬∃◯¬Φ
            return Not(Exists(Next(neg(_enf(p.arg)))))
        if isinstance(p, Always):
            # ∀□Φ ≡ ¬∃◇¬Φ
            return Not(Exists(Until(TRUE, neg(_enf(p.arg)))))
        if isinstance(p, Until):
            phi, psi = _enf(p.left), _enf(p.right)
            if isinstance(phi, TrueF):
                # ∀◇Ψ ≡ ¬∃□¬Ψ
                return Not(Exists(Always(neg(psi))))
            # ∀(Φ U Ψ) ≡ ¬∃(¬Ψ U (¬Φ ∧ ¬Ψ)) ∧ ¬∃□¬Ψ
            return And(
                Not(Exists(Until(neg(psi), And(neg(phi), neg(psi))))),
                Not(Exists(Always(neg(psi)))),
            )
    raise TypeError(f"not a CTL formula: {f!r}")


def _replace_exists(f, bound: Interval):
    """Swap every ``∃ψ`` for ``Po_bound(ψ)``; fold ``¬Po_J`` into ``Po`` of the complement."""
    if isinstance(f, (TrueF, Atom)):
        return f
    if isinstance(f, Not):
        inner = _replace_exists(f.arg, bound)
        if isinstance(inner, Po):
            flipped = inner.bound.complement()
            if flipped is not None:
                return Po(flipped, inner.path)
        return Not(inner)
    if isinstance(f, And):
        return And(_replace_exists(f.left, bound), _replace_exists(f.right, bound))
    if isinstance(f, Exists):
        p = f.path
        if isinstance(p, Until):
            path = Until(_replace_exists(p.left, bound), _replace_exists(p.right, bound))
        else:
            path = type(p)(_replace_exists(p.arg, bound))
        return Po(bound, path)
    raise TypeError(f"not an ENF formula: {f!r}")


def embed_ctl(f):
    """An equivalent qualitative PoCTL formula: ``∃ψ ↦ Po>0(ψ)`` on the ENF."""
    return _replace_exists(to_enf(f), Interval.gt(0))


def embed_ctl_alpha(f, alpha):
    """The α-equivalent PoCTL formula: ``∃ψ ↦ Po>=α(ψ)`` on the ENF."""
    alpha = possibility(alpha)
    if alpha <= 0:
        raise ValueError("alpha must lie in (0, 1]")
    return _replace_exists(to_enf(f), Interval.ge(alpha))
