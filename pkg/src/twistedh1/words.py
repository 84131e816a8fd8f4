"""Free-group words, finite presentations, and their text format.

A word is stored as a tuple of ``(generator_index, exponent)`` syllables
with non-zero exponents and no two adjacent syllables sharing an index;
construction performs free reduction, so words compare equal exactly when
they name the same element of the free group.

Presentation files are UTF-8 text, one declaration per line (``#`` starts
a comment)::

    gens: u v t
    rel: [u, v]
    rel: t u t^-1 v^-1 u^-2
    rel: t v t^-1 v^-1 u^-1

The first significant line names the generators.  Each ``rel:`` line is a
relator word: a whitespace-separated sequence of letters ``name`` or
``name^k`` (``k`` a non-zero signed integer, ``^-`` shorthand for ``^-1``)
and commutator groups ``[w1,w2]``, which expand to ``w1 w2 w1^-1 w2^-1``
and may nest or carry an exponent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator


class PresentationSyntaxError(ValueError):
    """Presentation or word text that does not match the grammar."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class Word:
    """A reduced word in the free group on indexed generators."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple[int, int]] = ()):
        stack: list[list[int]] = []
        for gen, exp in letters:
            if exp == 0:
                continue
            if stack and stack[-1][0] == gen:
                stack[-1][1] += exp
                if stack[-1][1] == 0:
                    stack.pop()
            else:
                stack.append([gen, exp])
        self.letters = tuple((g, e) for g, e in stack)

    @classmethod
    def identity(cls) -> "Word":
        return cls()

    @classmethod
    def letter(cls, gen: int, exp: int = 1) -> "Word":
        return cls(((gen, exp),))

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word((g, -e) for g, e in reversed(self.letters))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, n: int) -> "Word":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = Word()
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other):
        if isinstance(other, Word):
            return self.letters == other.letters
        return NotImplemented

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"Word({self.letters!r})"

    def __len__(self) -> int:
        """Reduced word length, counting letters with multiplicity."""
        return sum(abs(e) for _, e in self.letters)

    def single_letters(self) -> Iterator[tuple[int, int]]:
        """Yield (generator, +1 or -1) letter by letter, left to right."""
        for gen, exp in self.letters:
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield gen, step

    def generators_used(self) -> frozenset[int]:
        return frozenset(g for g, _ in self.letters)

    def exponent_sums(self, num_generators: int) -> list[int]:
        """Image in Z^n under abelianization."""
        sums = [0] * num_generators
        for gen, exp in self.letters:
            sums[gen] += exp
        return sums


def commutator(x: Word, y: Word) -> Word:
    """The commutator x y x^-1 y^-1."""
    return x * y * x.inverse() * y.inverse()


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: generator names plus relator words."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        seen = set()
        for name in self.generators:
            if not _NAME_RE.fullmatch(name):
                raise ValueError(f"bad generator name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate generator name {name!r}")
            seen.add(name)
        n = len(self.generators)
        for rel in self.relators:
            if not isinstance(rel, Word):
                raise TypeError(f"relator is not a Word: {rel!r}")
            for g, _ in rel.letters:
                if not 0 <= g < n:
                    raise ValueError(f"relator uses generator index {g} out of range")

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def generator_index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def format_word(self, word: Word) -> str:
        parts = []
        for gen, exp in word.letters:
            name = self.generators[gen]
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return " ".join(parts)

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.generators)]
        for rel in self.relators:
            lines.append(("rel: " + self.format_word(rel)).rstrip())
        return "\n".join(lines) + "\n"

    def abelianized_exponent_matrix(self) -> list[list[int]]:
        """One row of generator exponent sums per relator."""
        return [rel.exponent_sums(self.num_generators) for rel in self.relators]


_TOKEN_RE = re.compile(
    r"(?P<space>\s+)"
    r"|(?P<name>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<caret>\^(?:-(?=\s|[\],]|$)|[+-]?\d+))"
    r"|(?P<lbrack>\[)"
    r"|(?P<comma>,)"
    r"|(?P<rbrack>\])")


def _tokenize(text: str, line: int, col_offset: int) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PresentationSyntaxError(
                f"unexpected character {text[pos]!r}", line, col_offset + pos + 1)
        col = col_offset + pos + 1
        if m.lastgroup == "name":
            tokens.append(("name", m.group(), col))
        elif m.lastgroup == "caret":
            body = m.group()[1:]
            exp = -1 if body == "-" else int(body)
            if exp == 0:
                raise PresentationSyntaxError("zero exponent", line, col)
            tokens.append(("caret", exp, col))
        elif m.lastgroup == "lbrack":
            tokens.append(("[", None, col))
        elif m.lastgroup == "comma":
            tokens.append((",", None, col))
        elif m.lastgroup == "rbrack":
            tokens.append(("]", None, col))
        pos = m.end()
    return tokens


class _WordParser:
    def __init__(self, tokens, names: dict[str, int], line: int):
        self.tokens = tokens
        self.names = names
        self.line = line
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take_exponent(self, default: int = 1) -> int:
        tok = self.peek()
        if tok is not None and tok[0] == "caret":
            self.pos += 1
            return tok[1]
        return default

    def parse(self, closing: str | None = None) -> Word:
        out = Word()
        while True:
            tok = self.peek()
            if tok is None:
                if closing is not None:
                    raise PresentationSyntaxError(
                        f"expected {closing!r} before end of line", self.line)
                return out
            kind, value, col = tok
            if kind == closing:
                return out
            if kind == "name":
                self.pos += 1
                try:
                    idx = self.names[value]
                except KeyError:
                    raise PresentationSyntaxError(
                        f"unknown generator {value!r}", self.line, col) from None
                out = out * Word.letter(idx, self._take_exponent())
            elif kind == "[":
                self.pos += 1
                first = self.parse(closing=",")
                self.pos += 1  # consume the comma
                second = self.parse(closing="]")
                self.pos += 1  # consume the bracket
                out = out * commutator(first, second) ** self._take_exponent()
            elif kind == "caret":
                raise PresentationSyntaxError(
                    "exponent must follow a generator or ']'", self.line, col)
            else:
                raise PresentationSyntaxError(
                    f"unbalanced {kind!r}", self.line, col)


def parse_word(text: str, names: dict[str, int],
               line: int = 1, col_offset: int = 0) -> Word:
    """Parse one word in the relator grammar against a name -> index map."""
    tokens = _tokenize(text, line, col_offset)
    return _WordParser(tokens, names, line).parse()


def parse_presentation(text: str) -> Presentation:
    """Parse the gens:/rel: file format; see the module docstring."""
    generators: tuple[str, ...] | None = None
    names: dict[str, int] = {}
    relators: list[Word] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        cut = raw.find("#")
        line = raw if cut < 0 else raw[:cut]
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        if stripped.startswith("gens:"):
            if generators is not None:
                raise PresentationSyntaxError("second 'gens:' line", line_no, indent + 1)
            found = []
            for m in re.finditer(r"\S+", stripped[5:]):
                name, col = m.group(), indent + 5 + m.start() + 1
                if not _NAME_RE.fullmatch(name):
                    raise PresentationSyntaxError(
                        f"bad generator name {name!r}", line_no, col)
                if name in names:
                    raise PresentationSyntaxError(
                        f"duplicate generator {name!r}", line_no, col)
                names[name] = len(found)
                found.append(name)
            generators = tuple(found)
        elif stripped.startswith("rel:"):
            if generators is None:
                raise PresentationSyntaxError(
                    "'rel:' before 'gens:' line", line_no, indent + 1)
            relators.append(parse_word(stripped[4:], names, line_no, indent + 4))
        else:
            raise PresentationSyntaxError(
                "expected a 'gens:' or 'rel:' line", line_no, indent + 1)
    if generators is None:
        raise PresentationSyntaxError("no 'gens:' line found")
    return Presentation(generators, tuple(relators))
