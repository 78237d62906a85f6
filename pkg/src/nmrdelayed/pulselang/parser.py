"""Line-oriented pulse-file grammar.

One event per line, ``#`` starts a comment, mnemonics are case-insensitive::

    rot     <A|C|H|S> <x|y|z|-x|-y> <angle-degrees>
    jevolve <k>/2J          # k a positive integer, or (p/q)
    grad    z
    refocus <A|C|H|S>       # pi pulse about +x

``H`` is an alias of ``A`` (ancilla) and ``C`` of ``S`` (system).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from ..numcore import ValidationError
from .events import Axis, GradientZ, JEvolution, PulseSequence, RefocusPiX, Rotation, Spin

__all__ = ["ParseError", "parse_sequence", "render", "load_sequence"]

_SPINS = {"A": Spin.A, "H": Spin.A, "S": Spin.S, "C": Spin.S}
_AXES = {a.value: a for a in Axis}
_TOKEN = re.compile(r"\S+")
_DURATION = re.compile(r"^(?:(\d+)|\((\d+)/(\d+)\))/2J$", re.IGNORECASE)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{message} at line {line}, column {column}")


def _tokens(text: str):
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(text)]


def _arity(toks, n, lineno, usage):
    if len(toks) != n:
        col = toks[n][1] if len(toks) > n else toks[-1][1] + len(toks[-1][0])
        raise ParseError(f"expected '{usage}'", lineno, col)


def _spin(tok, lineno):
    word, col = tok
    try:
        return _SPINS[word.upper()]
    except KeyError:
        raise ParseError(f"unknown spin label '{word}'", lineno, col) from None


def _parse_line(toks, lineno):
    word, col = toks[0]
    op = word.lower()
    if op == "rot":
        _arity(toks, 4, lineno, "rot <spin> <axis> <angle>")
        spin = _spin(toks[1], lineno)
        axis = _AXES.get(toks[2][0].lower())
        if axis is None:
            raise ParseError(f"unknown axis '{toks[2][0]}'", lineno, toks[2][1])
        try:
            angle = float(toks[3][0])
        except ValueError:
            raise ParseError(f"malformed angle '{toks[3][0]}'", lineno, toks[3][1]) from None
        if not math.isfinite(angle):
            raise ParseError(f"malformed angle '{toks[3][0]}'", lineno, toks[3][1])
        try:
            return Rotation(spin, axis, angle)
        except ValidationError as exc:
            raise ParseError(str(exc), lineno, toks[3][1]) from None
    if op == "jevolve":
        _arity(toks, 2, lineno, "jevolve <k>/2J")
        m = _DURATION.match(toks[1][0])
        if m is None:
            raise ParseError(f"malformed duration '{toks[1][0]}'", lineno, toks[1][1])
        num, den = (int(m[1]), 1) if m[1] else (int(m[2]), int(m[3]))
        if num == 0 or den == 0:
            raise ParseError(f"duration must be positive, got '{toks[1][0]}'", lineno, toks[1][1])
        return JEvolution(Fraction(num, den))
    if op == "grad":
        _arity(toks, 2, lineno, "grad z")
        if toks[1][0].lower() != "z":
            raise ParseError(f"only z gradients are supported, got '{toks[1][0]}'", lineno, toks[1][1])
        return GradientZ()
    if op == "refocus":
        _arity(toks, 2, lineno, "refocus <spin>")
        return RefocusPiX(_spin(toks[1], lineno))
    raise ParseError(f"unknown mnemonic '{word}'", lineno, col)


def parse_sequence(text: str, name: str = "") -> PulseSequence:
    events = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw.split("#", 1)[0])
        if toks:
            events.append(_parse_line(toks, lineno))
    return PulseSequence(tuple(events), name)


def load_sequence(path) -> PulseSequence:
    from pathlib import Path

    path = Path(path)
    return parse_sequence(path.read_text(), name=path.stem)


def _fmt_angle(a: float) -> str:
    return str(int(a)) if a == int(a) else repr(a)


def _render_event(e) -> str:
    if isinstance(e, Rotation):
        return f"rot {e.target.nucleus} {e.axis.value} {_fmt_angle(e.angle)}"
    if isinstance(e, JEvolution):
        k = e.duration
        return f"jevolve {k.numerator}/2J" if k.denominator == 1 else f"jevolve ({k.numerator}/{k.denominator})/2J"
    if isinstance(e, GradientZ):
        return "grad z"
    if isinstance(e, RefocusPiX):
        return f"refocus {e.target.nucleus}"
    raise TypeError(f"not a pulse event: {e!r}")


def render(seq: PulseSequence) -> str:
    head = [f"# {seq.name}"] if seq.name else []
    return "\n".join(head + [_render_event(e) for e in seq]) + "\n"
