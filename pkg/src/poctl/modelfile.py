"""Line-oriented text format for possibilistic Kripke structures.

::

    # comments start with '#'
    states: poor fair excellent
    init: poor=1
    label: poor = {poor}
    label: fair = {fair}
    label: excellent = {excellent}
    trans: poor -> fair = 1
    ...

``init`` entries and ``trans`` entries that are omitted are 0.  Values are
decimal literals with at most nine fractional digits, read exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .algebra import ZERO, format_possibility
from .model import ModelError, PossibilisticKripkeStructure, make_model

_VALUE = re.compile(r"\d+(?:\.\d{1,9})?|\.\d{1,9}")
_NAME = re.compile(r"[^\s=,{}#]+")
_INIT_ITEM = re.compile(rf"\s*({_NAME.pattern})\s*=\s*(\S+)\s*")
_LABEL = re.compile(rf"\s*({_NAME.pattern})\s*=\s*\{{(.*)\}}\s*")
_TRANS = re.compile(rf"\s*({_NAME.pattern})\s*->\s*({_NAME.pattern})\s*=\s*(\S+)\s*")


class ModelSyntaxError(ModelError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _value(text: str, line: int) -> Fraction:
    if not _VALUE.fullmatch(text):
        raise ModelSyntaxError(f"bad possibility literal {text!r}", line)
    v = Fraction(text)
    if v > 1:
        raise ModelSyntaxError(f"possibility {text} exceeds 1", line)
    return v


def parse_model(text: str, check: bool = True) -> PossibilisticKripkeStructure:
    """Read a structure; with ``check`` normality violations raise :class:`ModelError`."""
    states: list[str] | None = None
    init: dict[str, Fraction] = {}
    labels: dict[str, list[str]] = {}
    trans: dict[tuple[str, str], Fraction] = {}
    seen_init = False

    def known(name: str, line: int) -> str:
        if name not in states:
            raise ModelSyntaxError(f"unknown state {name!r}", line)
        return name

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise ModelSyntaxError(f"expected 'keyword: ...', got {line!r}", lineno)
        if states is None and key != "states":
            raise ModelSyntaxError("the first entry must be 'states:'", lineno)
        if key == "states":
            if states is not None:
                raise ModelSyntaxError("'states:' given twice", lineno)
            names = rest.split()
            if not names or not all(_NAME.fullmatch(n) for n in names):
                raise ModelSyntaxError("'states:' needs one or more state names", lineno)
            if len(set(names)) != len(names):
                raise ModelSyntaxError("duplicate state name", lineno)
            states = names
        elif key == "init":
            if seen_init:
                raise ModelSyntaxError("'init:' given twice", lineno)
            seen_init = True
            for item in rest.split():
                m = _INIT_ITEM.fullmatch(item)
                if not m:
                    raise ModelSyntaxError(f"bad init entry {item!r}", lineno)
                s = known(m.group(1), lineno)
                if s in init:
                    raise ModelSyntaxError(f"initial value of {s} given twice", lineno)
                init[s] = _value(m.group(2), lineno)
        elif key == "label":
            m = _LABEL.fullmatch(rest)
            if not m:
                raise ModelSyntaxError("expected 'label: s = {a, b, ...}'", lineno)
            s = known(m.group(1), lineno)
            if s in labels:
                raise ModelSyntaxError(f"labels of {s} given twice", lineno)
            body = m.group(2).strip()
            atoms = [a.strip() for a in body.split(",")] if body else []
            if not all(_NAME.fullmatch(a) for a in atoms):
                raise ModelSyntaxError("bad atomic proposition name", lineno)
            labels[s] = atoms
        elif key == "trans":
            m = _TRANS.fullmatch(rest)
            if not m:
                raise ModelSyntaxError("expected 'trans: s -> t = value'", lineno)
            s, t = known(m.group(1), lineno), known(m.group(2), lineno)
            if (s, t) in trans:
                raise ModelSyntaxError(f"transition {s} -> {t} given twice", lineno)
            trans[s, t] = _value(m.group(3), lineno)
        else:
            raise ModelSyntaxError(f"unknown keyword {key!r}", lineno)

    if states is None:
        raise ModelSyntaxError("missing 'states:'", 1)
    return make_model(states, trans, init, labels, check=check)


def load_model(path, check: bool = True) -> PossibilisticKripkeStructure:
    return parse_model(Path(path).read_text(encoding="utf-8"), check=check)


def format_model(model: PossibilisticKripkeStructure) -> str:
    """Inverse of :func:`parse_model` for values with terminating decimals."""

    def lit(v: Fraction) -> str:
        text = format_possibility(v)
        if "/" in text or ("." in text and len(text.split(".")[1]) > 9):
            raise ModelError(f"value {v} has no decimal literal with at most 9 digits")
        return text

    lines = ["states: " + " ".join(model.states)]
    lines.append("init: " + " ".join(f"{s}={lit(v)}" for s, v in zip(model.states, model.initial) if v != ZERO))
    for s, lab in zip(model.states, model.labels):
        lines.append(f"label: {s} = {{{', '.join(sorted(lab))}}}")
    for i, s in enumerate(model.states):
        for j, t in enumerate(model.states):
            v = model.transitions[i, j]
            if v != ZERO:
                lines.append(f"trans: {s} -> {t} = {lit(v)}")
    return "\n".join(lines) + "\n"
