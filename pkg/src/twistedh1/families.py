"""Builders and closed-form answers for the standard example families.

Mapping tori of the 2-torus: for A = [[a11, a12], [a21, a22]] in SL2(Z)
the semidirect product Z^2 x|_A Z has presentation

    gens: u v t
    rel: [u, v]
    rel: t u t^-1 u^-a11 v^-a21
    rel: t v t^-1 u^-a12 v^-a22

so conjugation by t sends the column vector of (u, v)-exponents through
A.  Weight characters rho_y fix u and v and send t to y > 0; they are
always admissible, and the twisted cohomology is non-zero exactly when y
is an eigenvalue of A, that is when y + 1/y = tr(A).  In that case a
witness cocycle vanishes on t and takes a 1/y-eigenvector of the
transpose of A as its (u, v) values.

Orientable surface groups of genus g have 2g generators and the single
relator [x1, x2] ... [x_{2g-1}, x_{2g}]; every positive character is
admissible, Z^1 has dimension 2g - 1 for non-trivial rho (2g for the
trivial one), and h^1 = 2g - 2 (resp. 2g).

Free groups, free abelian groups and the integer Heisenberg group round
out the test bed as control cases.
"""

from __future__ import annotations

from .characters import Character
from .cocycles import Cocycle, twisted_h1_dimension
from .certificates import build_representation, is_decomposable
from .linalg import Matrix, kernel_basis, positive_real_eigenvalues
from .scalars import DEFAULT_EPS, Mode, natural_mode
from .words import Presentation, Word, commutator

MAPPING_TORUS_GENERATORS = ("u", "v", "t")


def _check_sl2(matrix) -> tuple[tuple[int, int], tuple[int, int]]:
    rows = tuple(tuple(row) for row in matrix)
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise ValueError("mapping torus monodromy must be a 2x2 matrix")
    if not all(isinstance(x, int) for r in rows for x in r):
        raise ValueError("mapping torus monodromy must have integer entries")
    det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if det != 1:
        raise ValueError(f"mapping torus monodromy must have determinant 1, got {det}")
    return rows


def mapping_torus_presentation(matrix) -> Presentation:
    """The three-generator presentation of Z^2 x|_A Z for A in SL2(Z)."""
    (a11, a12), (a21, a22) = _check_sl2(matrix)
    u, v, t = Word.letter(0), Word.letter(1), Word.letter(2)
    relators = (
        commutator(u, v),
        t * u * ~t * Word.letter(0, -a11) * Word.letter(1, -a21),
        t * v * ~t * Word.letter(0, -a12) * Word.letter(1, -a22),
    )
    return Presentation(MAPPING_TORUS_GENERATORS, relators)


def mapping_torus_character(matrix, y, mode: Mode | None = None,
                            eps: float = DEFAULT_EPS) -> Character:
    """The weight character u, v -> 1, t -> y; admissible for every y > 0."""
    _check_sl2(matrix)
    if mode is None:
        mode = natural_mode(y, eps)
    one = mode.one()
    return Character(mode, MAPPING_TORUS_GENERATORS, [one, one, mode.coerce(y)])


def mapping_torus_h1_nonzero(matrix, y, mode: Mode | None = None,
                             eps: float = DEFAULT_EPS) -> bool:
    """Closed form: h^1 != 0 iff y + 1/y = tr(A) (and then it is 1)."""
    rows = _check_sl2(matrix)
    if mode is None:
        mode = natural_mode(y, eps)
    yy = mode.coerce(y)
    if mode.sign(yy) <= 0:
        raise ValueError("weight must be positive")
    tr = mode.from_int(rows[0][0] + rows[1][1])
    return mode.is_zero(yy + mode.one() / yy - tr)


def mapping_torus_cocycle(matrix, y, mode: Mode | None = None,
                          eps: float = DEFAULT_EPS) -> Cocycle:
    """A witness cocycle for an eigenvalue weight y != 1.

    mu(t) = 0 and (mu(u), mu(v)) spans the 1/y-eigenline of the transpose
    of A, scaled so its first non-zero entry is 1.
    """
    rows = _check_sl2(matrix)
    if mode is None:
        mode = natural_mode(y, eps)
    yy = mode.coerce(y)
    if mode.eq(yy, mode.one()):
        raise ValueError("weight 1 gives the trivial character; no witness there")
    if not mapping_torus_h1_nonzero(rows, yy, mode):
        raise ValueError("weight is not an eigenvalue of the monodromy; h1 = 0")
    inv_y = mode.one() / yy
    system = Matrix(mode, [
        [mode.from_int(rows[0][0]) - inv_y, mode.from_int(rows[1][0])],
        [mode.from_int(rows[0][1]), mode.from_int(rows[1][1]) - inv_y],
    ])
    basis = kernel_basis(system)
    if len(basis) != 1:
        raise AssertionError("eigenline of the transpose must be 1-dimensional")
    vec = basis[0]
    scale = next(x for x in vec if not mode.is_zero(x))
    lam = [x / scale for x in vec]
    rho = mapping_torus_character(rows, yy, mode)
    return Cocycle(rho, [lam[0], lam[1], mode.zero()])


def mapping_torus_eigenvalues(matrix) -> list:
    """Positive real eigenvalues of the monodromy, exactly."""
    rows = _check_sl2(matrix)
    return positive_real_eigenvalues([list(r) for r in rows])


def surface_presentation(genus: int) -> Presentation:
    """Genus g orientable surface group: 2g generators, one relator."""
    if not isinstance(genus, int) or genus < 1:
        raise ValueError(f"genus must be a positive integer, got {genus!r}")
    names = tuple(f"x{i + 1}" for i in range(2 * genus))
    rel = Word()
    for j in range(genus):
        rel = rel * commutator(Word.letter(2 * j), Word.letter(2 * j + 1))
    return Presentation(names, (rel,))


def surface_solve(genus: int, values, mode: Mode | None = None,
                  eps: float = DEFAULT_EPS) -> Cocycle | None:
    """A cocycle whose class is non-zero for the given character values,
    or None when h^1 = 0 or no basis vector escapes the coboundaries.

    For genus >= 2 the cocycle space is too big to sit inside the
    coboundary line, so a witness always exists.
    """
    presentation = surface_presentation(genus)
    values = list(values)
    if len(values) != 2 * genus:
        raise ValueError(f"genus {genus} needs {2 * genus} character values")
    if mode is None:
        mode = natural_mode(values[0], eps)
    rho = Character(mode, presentation.generators, values)
    report = twisted_h1_dimension(presentation, rho)
    if report.h1_dim == 0:
        return None
    for mu in report.z1_basis:
        cert = build_representation(presentation, rho, mu)
        if is_decomposable(cert) is None:
            return mu
    return None


def free_group(m: int) -> Presentation:
    if not isinstance(m, int) or m < 0:
        raise ValueError(f"rank must be a non-negative integer, got {m!r}")
    return Presentation(tuple(f"x{i + 1}" for i in range(m)), ())


def free_abelian(n: int) -> Presentation:
    """Z^n presented with all pairwise commutators."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"rank must be a non-negative integer, got {n!r}")
    names = tuple(f"a{i + 1}" for i in range(n))
    relators = tuple(commutator(Word.letter(i), Word.letter(j))
                     for i in range(n) for j in range(i + 1, n))
    return Presentation(names, relators)


def heisenberg() -> Presentation:
    """The integer Heisenberg group <x, y, z | [x,y] = z, z central>."""
    x, y, z = Word.letter(0), Word.letter(1), Word.letter(2)
    relators = (
        commutator(x, y) * ~z,
        commutator(x, z),
        commutator(y, z),
    )
    return Presentation(("x", "y", "z"), relators)
