"""Enumerating characters with non-vanishing twisted cohomology.

Suppose the commutator subgroup is generated by c_1, ..., c_k and outer
generators a_1, ..., a_m act on it by conjugation with integer matrices
N_1, ..., N_m on the abelianization: a_j c a_j^-1 has exponent vector
N_j x when c has exponent vector x.  A character rho is trivial on the
commutator subgroup, and a non-vanishing class forces each rho(a_j) to be
a positive real eigenvalue of N_j.  Each N_j contributes at most k such
eigenvalues, so at most k^m candidate characters exist; the enumeration
walks that Cartesian product and keeps the candidates whose twisted
cohomology is actually non-zero.

Conjugation data files mirror that structure::

    outer: 1        # m, number of outer generators
    comm: 2         # k, rank of the abelianized commutator subgroup
    N_1:
    2 1
    1 1

with one ``N_j:`` block per outer generator, each holding k rows of k
integers.
"""

from __future__ import annotations

import itertools

from .characters import Character
from .cocycles import CohomologyReport, twisted_h1_dimension
from .linalg import positive_real_eigenvalues
from .scalars import (
    ApproxMode,
    DEFAULT_EPS,
    Mode,
    QuadraticElement,
    QuadraticMode,
    RationalMode,
)
from .words import Presentation


class ConjugationDataError(ValueError):
    """A conjugation data file does not match the grammar."""


class ConjugationData:
    """Sizes and integer conjugation matrices for the outer generators."""

    __slots__ = ("outer", "comm", "matrices")

    def __init__(self, outer: int, comm: int, matrices):
        if not isinstance(outer, int) or outer < 1:
            raise ValueError(f"need at least one outer generator, got {outer!r}")
        if not isinstance(comm, int) or comm < 1:
            raise ValueError(f"commutator rank must be positive, got {comm!r}")
        mats = tuple(tuple(tuple(row) for row in m) for m in matrices)
        if len(mats) != outer:
            raise ValueError(f"expected {outer} matrices, got {len(mats)}")
        for m in mats:
            if len(m) != comm or any(len(row) != comm for row in m):
                raise ValueError(f"every matrix must be {comm}x{comm}")
            if not all(isinstance(x, int) for row in m for x in row):
                raise ValueError("matrix entries must be integers")
        self.outer = outer
        self.comm = comm
        self.matrices = mats

    @property
    def candidate_bound(self) -> int:
        """k^m, the cap on the number of candidate characters."""
        return self.comm ** self.outer

    def __eq__(self, other):
        if not isinstance(other, ConjugationData):
            return NotImplemented
        return (self.outer, self.comm, self.matrices) == \
               (other.outer, other.comm, other.matrices)

    def __repr__(self):
        return f"ConjugationData(outer={self.outer}, comm={self.comm})"


def parse_conjugation_data(text: str) -> ConjugationData:
    """Parse the outer:/comm:/N_j: file format."""
    outer = comm = None
    matrices: list[list[tuple[int, ...]]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        cut = raw.find("#")
        line = (raw if cut < 0 else raw[:cut]).strip()
        if not line:
            continue
        if line.startswith("outer:"):
            if outer is not None:
                raise ConjugationDataError(f"line {line_no}: second 'outer:' line")
            outer = _parse_size(line[6:], "outer", line_no)
        elif line.startswith("comm:"):
            if comm is not None:
                raise ConjugationDataError(f"line {line_no}: second 'comm:' line")
            comm = _parse_size(line[5:], "comm", line_no)
        elif line.startswith("N_") and line.endswith(":"):
            if outer is None or comm is None:
                raise ConjugationDataError(
                    f"line {line_no}: matrix block before 'outer:'/'comm:' sizes")
            expected = f"N_{len(matrices) + 1}:"
            if line != expected:
                raise ConjugationDataError(
                    f"line {line_no}: expected {expected!r}, got {line!r}")
            matrices.append([])
        else:
            if not matrices:
                raise ConjugationDataError(
                    f"line {line_no}: expected 'outer:', 'comm:' or 'N_1:'")
            try:
                row = tuple(int(x) for x in line.split())
            except ValueError:
                raise ConjugationDataError(
                    f"line {line_no}: matrix rows hold integers, got {line!r}") from None
            if len(row) != comm:
                raise ConjugationDataError(
                    f"line {line_no}: expected {comm} entries, got {len(row)}")
            if len(matrices[-1]) >= comm:
                raise ConjugationDataError(
                    f"line {line_no}: matrix block N_{len(matrices)} already has "
                    f"{comm} rows")
            matrices[-1].append(row)
    if outer is None or comm is None:
        raise ConjugationDataError("missing 'outer:' or 'comm:' line")
    try:
        return ConjugationData(outer, comm, matrices)
    except ValueError as exc:
        raise ConjugationDataError(str(exc)) from None


def _parse_size(text: str, key: str, line_no: int) -> int:
    try:
        n = int(text.strip())
    except ValueError:
        raise ConjugationDataError(
            f"line {line_no}: '{key}:' takes one integer") from None
    if n < 1:
        raise ConjugationDataError(f"line {line_no}: '{key}:' must be positive")
    return n


def candidate_characters(data: ConjugationData, eps: float = DEFAULT_EPS) -> list[tuple]:
    """All tuples of candidate values (rho(a_1), ..., rho(a_m)).

    Per-generator values are the positive real eigenvalues of N_j in
    increasing order, and tuples come out in lexicographic order, so the
    enumeration is deterministic.  The list length is at most k^m.
    """
    per_generator = [positive_real_eigenvalues([list(r) for r in m], eps=eps)
                     for m in data.matrices]
    return [tuple(t) for t in itertools.product(*per_generator)]


def unify_candidate(values, eps: float = DEFAULT_EPS) -> tuple[Mode, tuple]:
    """Find one mode holding every value of a candidate tuple.

    Rational values stay exact; a single radicand keeps exact quadratic
    arithmetic; mixing distinct radicands, or any float, falls back to
    approx mode at the given eps.
    """
    values = tuple(values)
    radicands = {v.d for v in values if isinstance(v, QuadraticElement) and not v.is_rational}
    if any(isinstance(v, float) for v in values) or len(radicands) > 1:
        mode: Mode = ApproxMode(eps)
    elif radicands:
        mode = QuadraticMode(radicands.pop())
    else:
        mode = RationalMode()
    return mode, tuple(mode.coerce(v) for v in values)


def enumerate_nonvanishing(presentation: Presentation, data: ConjugationData,
                           outer_names, eps: float = DEFAULT_EPS
                           ) -> list[tuple[Character, CohomologyReport]]:
    """Characters among the candidates with h^1 != 0, with their reports.

    ``outer_names`` lists the presentation generators playing the role of
    a_1, ..., a_m; all other generators (the commutator-subgroup ones) get
    value 1.  Inadmissible candidates and the trivial character are
    skipped.  Results keep the deterministic candidate order.
    """
    outer_names = tuple(outer_names)
    if len(outer_names) != data.outer:
        raise ValueError(
            f"conjugation data has {data.outer} outer generators, "
            f"got {len(outer_names)} names")
    if len(set(outer_names)) != len(outer_names):
        raise ValueError("outer generator names must be distinct")
    indices = [presentation.generator_index(n) for n in outer_names]

    results = []
    for tup in candidate_characters(data, eps=eps):
        mode, values = unify_candidate(tup, eps=eps)
        assignment = [mode.one()] * presentation.num_generators
        for idx, v in zip(indices, values):
            assignment[idx] = v
        rho = Character(mode, presentation.generators, assignment)
        if rho.is_trivial():
            continue
        if not rho.admissible_for(presentation):
            continue
        report = twisted_h1_dimension(presentation, rho)
        if report.h1_dim > 0:
            results.append((rho, report))
    return results
