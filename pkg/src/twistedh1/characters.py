"""Positive multiplicative characters of a finitely presented group.

A character rho assigns a positive scalar to each generator and extends
multiplicatively to words; it descends to the group exactly when every
relator evaluates to 1, which is the admissibility test used by the
cohomology routines.

Character files are one significant line (``#`` comments and blank lines
are ignored), with or without the ``char:`` prefix::

    char: u=1 v=1 t=3/2+1/2*sqrt(5)

Generators not mentioned default to 1.  The numeric mode is inferred from
the literals unless one is supplied: any sqrt(d) literal selects exact
quadratic arithmetic over that d, any decimal float selects approx mode,
otherwise everything is exact rational.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator

from .scalars import (
    ApproxMode,
    DEFAULT_EPS,
    Mode,
    QuadraticElement,
    QuadraticMode,
    RationalMode,
    ScalarModeError,
    parse_scalar_literal,
)
from .words import Presentation, Word


class CharacterParseError(ValueError):
    """A character description does not match the grammar."""


class InadmissibleCharacterError(ValueError):
    """The character does not vanish on some relator, so it does not
    descend to the presented group."""


class Character:
    """A map from generators to positive scalars of one mode."""

    __slots__ = ("mode", "names", "values")

    def __init__(self, mode: Mode, names, values):
        self.mode = mode
        self.names = tuple(names)
        vals = tuple(mode.coerce(v) for v in values)
        if len(vals) != len(self.names):
            raise ValueError(
                f"{len(self.names)} generators but {len(vals)} character values")
        for name, v in zip(self.names, vals):
            if mode.sign(v) <= 0:
                raise ValueError(
                    f"character value for {name!r} must be positive, got {mode.format(v)}")
        self.values = vals

    @classmethod
    def trivial(cls, mode: Mode, names) -> "Character":
        names = tuple(names)
        return cls(mode, names, [mode.one()] * len(names))

    def value(self, name: str):
        try:
            return self.values[self.names.index(name)]
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def items(self) -> Iterator[tuple[str, object]]:
        return zip(self.names, self.values)

    def evaluate(self, word: Word):
        """The product of generator values along a word, rho(w)."""
        out = self.mode.one()
        for gen, exp in word.letters:
            out = out * self.values[gen] ** exp
        return out

    def is_trivial(self) -> bool:
        one = self.mode.one()
        return all(self.mode.eq(v, one) for v in self.values)

    def admissible_for(self, presentation: Presentation) -> bool:
        """True when every relator evaluates to 1."""
        one = self.mode.one()
        return all(self.mode.eq(self.evaluate(rel), one)
                   for rel in presentation.relators)

    def require_admissible(self, presentation: Presentation) -> None:
        one = self.mode.one()
        for i, rel in enumerate(presentation.relators):
            val = self.evaluate(rel)
            if not self.mode.eq(val, one):
                raise InadmissibleCharacterError(
                    f"character evaluates to {self.mode.format(val)} != 1 on "
                    f"relator {i + 1} ({presentation.format_word(rel)})")

    def format(self) -> str:
        return " ".join(f"{n}={self.mode.format(v)}" for n, v in self.items())

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return (self.mode == other.mode and self.names == other.names
                and self.values == other.values)

    def __repr__(self):
        return f"Character({self.format()})"


def _significant_line(text: str) -> str:
    lines = []
    for raw in text.splitlines():
        cut = raw.find("#")
        line = (raw if cut < 0 else raw[:cut]).strip()
        if line:
            lines.append(line)
    if not lines:
        raise CharacterParseError("no assignments found")
    if len(lines) > 1:
        raise CharacterParseError("assignment files hold a single line")
    line = lines[0]
    for prefix in ("char:", "cocycle:"):
        if line.startswith(prefix):
            line = line[len(prefix):].strip()
            break
    return line


def parse_assignments(text: str, generators) -> dict[str, object]:
    """Raw parsed literals from one line of ``name=literal`` tokens.

    Accepts an optional ``char:`` or ``cocycle:`` prefix, comments and
    blank lines; every name must be a known generator and appear at most
    once.
    """
    generators = tuple(generators)
    line = _significant_line(text)
    raw: dict[str, object] = {}
    for token in line.split():
        name, sep, literal = token.partition("=")
        if not sep or not name or not literal:
            raise CharacterParseError(f"expected name=value, got {token!r}")
        if name not in generators:
            raise CharacterParseError(f"unknown generator {name!r}")
        if name in raw:
            raise CharacterParseError(f"generator {name!r} assigned twice")
        try:
            raw[name] = parse_scalar_literal(literal)
        except ValueError as exc:
            raise CharacterParseError(f"bad value for {name!r}: {exc}") from None
    return raw


def parse_character(text: str, generators, mode: Mode | None = None,
                    eps: float = DEFAULT_EPS) -> Character:
    """Parse assignments ``name=literal``; unmentioned generators get 1.

    With ``mode=None`` the mode is inferred from the literals (sqrt
    selects quadratic, a decimal float selects approx with the given eps,
    else rational).  An explicit mode must be able to hold every literal
    or :class:`ScalarModeError` is raised.
    """
    generators = tuple(generators)
    raw = parse_assignments(text, generators)

    if mode is None:
        radicands = {v[2] for v in raw.values() if isinstance(v, tuple) and v[1] != 0}
        if len(radicands) > 1:
            raise ScalarModeError(
                "character mixes radicands "
                + " and ".join(f"sqrt({d})" for d in sorted(radicands))
                + "; exact quadratic arithmetic needs a single d")
        if radicands:
            mode = QuadraticMode(radicands.pop())
        elif any(isinstance(v, float) for v in raw.values()):
            mode = ApproxMode(eps)
        else:
            mode = RationalMode()

    values = [literal_into_mode(mode, raw[name]) if name in raw else mode.one()
              for name in generators]
    return Character(mode, generators, values)


def literal_into_mode(mode: Mode, raw):
    """Place a parsed literal (Fraction, float, or (a, b, d)) into a mode."""
    if isinstance(raw, Fraction):
        return mode.coerce(raw)
    if isinstance(raw, float):
        if not isinstance(mode, ApproxMode):
            raise ScalarModeError(
                f"decimal floats are only accepted in approx mode: {raw!r}")
        return raw
    a, b, d = raw
    if b == 0:
        return mode.coerce(a)
    if isinstance(mode, QuadraticMode):
        return mode.coerce(QuadraticElement(a, b, d))
    if isinstance(mode, ApproxMode):
        return float(a) + float(b) * math.sqrt(d)
    raise ScalarModeError(f"sqrt({d}) literals need quadratic or approx mode")
