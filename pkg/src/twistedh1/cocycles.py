"""Twisted cocycles and the first cohomology dimension.

Fix a character rho.  A twisted cocycle is a map mu from the group to
scalars obeying

    mu(g h) = mu(h) + rho(h) mu(g),

so mu(1) = 0 and mu(g^-1) = -mu(g) / rho(g).  Equivalently the matrices

    xi(g) = [[1, mu(g)], [0, rho(g)]]

multiply as xi(g h) = xi(g) xi(h).  A cocycle is determined by its values
on the generators, and those values are admissible exactly when mu
vanishes on every relator; mu(r) is linear in the generator values, so
the cocycle space Z^1 is the kernel of one constraint row per relator.

Coboundaries are the multiples of the vector (rho(a_j) - 1)_j, a line
when rho is non-trivial and zero when it is trivial; the reported
dimension is h^1 = dim Z^1 - dim B^1.  For the trivial character this
recovers the first Betti number of the presented group.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .characters import Character, literal_into_mode, parse_assignments
from .linalg import Matrix, kernel_basis, rank_over_rationals
from .scalars import ApproxMode, Mode
from .words import Presentation, Word


class Cocycle:
    """Generator values of a twisted cocycle for a fixed character."""

    __slots__ = ("character", "values")

    def __init__(self, character: Character, values):
        self.character = character
        mode = character.mode
        vals = tuple(mode.coerce(v) for v in values)
        if len(vals) != len(character.names):
            raise ValueError(
                f"{len(character.names)} generators but {len(vals)} cocycle values")
        self.values = vals

    @property
    def mode(self) -> Mode:
        return self.character.mode

    @property
    def names(self) -> tuple[str, ...]:
        return self.character.names

    def value(self, name: str):
        try:
            return self.values[self.names.index(name)]
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def items(self):
        return zip(self.names, self.values)

    def evaluate(self, word: Word):
        """mu(w), accumulated right to left via mu(g h) = mu(h) + rho(h) mu(g).

        The running factor `suffix` is rho of the part of the word already
        consumed (the suffix to the right of the current letter).
        """
        mode = self.mode
        rho = self.character.values
        total = mode.zero()
        suffix = mode.one()
        for gen, sgn in reversed(list(word.single_letters())):
            if sgn > 0:
                step = rho[gen]
                letter_mu = self.values[gen]
            else:
                step = mode.one() / rho[gen]
                letter_mu = -self.values[gen] * step
            total = total + suffix * letter_mu
            suffix = suffix * step
        return total

    def is_zero(self) -> bool:
        return all(self.mode.is_zero(v) for v in self.values)

    def format(self) -> str:
        mode = self.mode
        return " ".join(f"{n}={mode.format(v)}" for n, v in self.items())

    def __eq__(self, other):
        if not isinstance(other, Cocycle):
            return NotImplemented
        return self.character == other.character and self.values == other.values

    def __repr__(self):
        return f"Cocycle({self.format()})"


def parse_cocycle(text: str, rho: Character) -> Cocycle:
    """Parse ``name=literal`` generator values in the character's mode;
    unmentioned generators get 0."""
    raw = parse_assignments(text, rho.names)
    mode = rho.mode
    values = [literal_into_mode(mode, raw[n]) if n in raw else mode.zero()
              for n in rho.names]
    return Cocycle(rho, values)


def coboundary_cocycle(rho: Character, c) -> Cocycle:
    """The coboundary mu(g) = c (rho(g) - 1)."""
    cc = rho.mode.coerce(c)
    one = rho.mode.one()
    return Cocycle(rho, [cc * (v - one) for v in rho.values])


def coboundary_vector(rho: Character) -> tuple:
    """Generator values (rho(a_j) - 1)_j spanning B^1 for non-trivial rho."""
    one = rho.mode.one()
    return tuple(v - one for v in rho.values)


def relator_constraint_row(presentation: Presentation, rho: Character,
                           relator: Word) -> tuple:
    """Coefficients c_j with mu(relator) = sum_j c_j mu(a_j).

    The linearity follows by expanding the cocycle law letter by letter.
    The character must be admissible for the presentation.
    """
    rho.require_admissible(presentation)
    return _constraint_row(presentation.num_generators, rho, relator)


def _constraint_row(n: int, rho: Character, relator: Word) -> tuple:
    mode = rho.mode
    coeffs = [mode.zero()] * n
    suffix = mode.one()
    for gen, sgn in reversed(list(relator.single_letters())):
        if sgn > 0:
            coeffs[gen] = coeffs[gen] + suffix
            step = rho.values[gen]
        else:
            step = mode.one() / rho.values[gen]
            coeffs[gen] = coeffs[gen] - suffix * step
        suffix = suffix * step
    return tuple(coeffs)


def constraint_matrix(presentation: Presentation, rho: Character) -> Matrix:
    """One row per relator, one column per generator."""
    rho.require_admissible(presentation)
    n = presentation.num_generators
    rows = [_constraint_row(n, rho, rel) for rel in presentation.relators]
    return Matrix(rho.mode, rows, cols=n)


def cocycle_space(presentation: Presentation, rho: Character) -> list[Cocycle]:
    """A basis of Z^1, read off the kernel of the constraint matrix."""
    basis = kernel_basis(constraint_matrix(presentation, rho))
    return [Cocycle(rho, vec) for vec in basis]


@dataclass
class CohomologyReport:
    """Dimensions and witnesses from one twisted cohomology computation."""

    z1_dim: int
    b1_dim: int
    h1_dim: int
    z1_basis: list[Cocycle]
    coboundary: tuple | None
    warnings: list[str] = field(default_factory=list)

    @property
    def nonvanishing(self) -> bool:
        return self.h1_dim > 0


def twisted_h1_dimension(presentation: Presentation, rho: Character) -> CohomologyReport:
    """Dimensions of Z^1, B^1 and H^1 for an admissible character."""
    rho.require_admissible(presentation)
    notes: list[str] = []
    if presentation.num_generators == 0:
        return CohomologyReport(0, 0, 0, [], None, notes)
    basis = cocycle_space(presentation, rho)
    trivial = rho.is_trivial()
    if trivial:
        b1 = 0
        cob = None
    else:
        b1 = 1
        cob = coboundary_vector(rho)
        mode = rho.mode
        if isinstance(mode, ApproxMode) and all(
                abs(v - 1.0) <= 1000 * mode.eps for v in rho.values):
            notes.append(
                "character is within 1000x of the zero tolerance of being "
                "trivial; the reported b1 may be unstable")
    h1 = len(basis) - b1
    if h1 < 0:
        # only reachable through tolerance decisions in approx mode: the
        # coboundary is always a cocycle, so exact kernels have z1 >= b1
        notes.append("computed z1 < b1; treating h1 as 0 (tolerance artifact)")
        h1 = 0
    return CohomologyReport(len(basis), b1, h1, basis, cob, notes)


def betti_one(presentation: Presentation) -> int:
    """First Betti number: generators minus rational rank of the
    abelianized relator matrix."""
    n = presentation.num_generators
    rows = presentation.abelianized_exponent_matrix()
    return n - rank_over_rationals(rows, cols=n)
