"""Explicit 2x2 representation certificates and their verification.

A certificate packages, for each generator a_j, the matrix

    xi(a_j) = [[1, mu(a_j)], [0, rho(a_j)]],

together with the presentation, the character and the cocycle it came
from.  Checking that the assignment extends to the group needs nothing
but 2x2 matrix products: multiply the matrices along every relator and
compare with the identity.  That check is implemented here from scratch,
with no use of the elimination machinery in :mod:`twistedh1.linalg`, so a
verified certificate is evidence independent of the solver.

A certificate is decomposable when one scalar c has mu(a_j) =
c (rho(a_j) - 1) for every generator; then xi is conjugate to the
diagonal representation by [[1, c], [0, 1]] and the underlying cocycle is
a coboundary.  Indecomposable certificates witness a non-vanishing class.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .characters import Character, parse_character
from .cocycles import Cocycle
from .scalars import Mode, mode_from_json, mode_to_json
from .words import Presentation, Word, parse_presentation


class CocycleConstraintError(ValueError):
    """Generator values that fail a relator constraint; they define no
    cocycle on the presented group."""


class VerificationError(RuntimeError):
    """A certificate failed its independent verification."""


class CertificateFormatError(ValueError):
    """A serialized certificate is structurally malformed."""


Mat2 = tuple[tuple[object, object], tuple[object, object]]


def mat_mul(x: Mat2, y: Mat2) -> Mat2:
    return (
        (x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
        (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]),
    )


def mat_inv(mode: Mode, x: Mat2) -> Mat2:
    det = x[0][0] * x[1][1] - x[0][1] * x[1][0]
    if mode.is_zero(det):
        raise ZeroDivisionError("singular matrix in certificate")
    return (
        (x[1][1] / det, -x[0][1] / det),
        (-x[1][0] / det, x[0][0] / det),
    )


def mat_identity(mode: Mode) -> Mat2:
    one, zero = mode.one(), mode.zero()
    return ((one, zero), (zero, one))


def mat_is_identity(mode: Mode, x: Mat2) -> bool:
    one = mode.one()
    return (mode.eq(x[0][0], one) and mode.is_zero(x[0][1])
            and mode.is_zero(x[1][0]) and mode.eq(x[1][1], one))


@dataclass
class RepCertificate:
    """A per-generator 2x2 matrix assignment with its provenance data.

    The verification flags start unset; :func:`attach_verification` fills
    them in from the independent checks.
    """

    presentation: Presentation
    character: Character
    cocycle: Cocycle
    matrices: tuple[Mat2, ...]
    verified: bool | None = None
    decomposable: bool | None = None
    fixed_line: object = None

    @property
    def mode(self) -> Mode:
        return self.character.mode

    def matrix_for(self, name: str) -> Mat2:
        return self.matrices[self.presentation.generator_index(name)]

    def word_matrix(self, word: Word) -> Mat2:
        """The product of generator matrices along a word."""
        mode = self.mode
        out = mat_identity(mode)
        inverses: dict[int, Mat2] = {}
        for gen, sgn in word.single_letters():
            if sgn > 0:
                step = self.matrices[gen]
            else:
                if gen not in inverses:
                    inverses[gen] = mat_inv(mode, self.matrices[gen])
                step = inverses[gen]
            out = mat_mul(out, step)
        return out


def build_representation(presentation: Presentation, rho: Character,
                         mu: Cocycle) -> RepCertificate:
    """Assemble the certificate for an admissible character and cocycle.

    The generator values of mu must satisfy every relator constraint;
    otherwise :class:`CocycleConstraintError` is raised.
    """
    rho.require_admissible(presentation)
    mode = rho.mode
    for i, rel in enumerate(presentation.relators):
        val = mu.evaluate(rel)
        if not mode.is_zero(val):
            raise CocycleConstraintError(
                f"generator values give mu = {mode.format(val)} != 0 on relator "
                f"{i + 1} ({presentation.format_word(rel)}); not a cocycle")
    one, zero = mode.one(), mode.zero()
    matrices = tuple(
        ((one, mu.values[j]), (zero, rho.values[j]))
        for j in range(presentation.num_generators))
    return RepCertificate(presentation, rho, mu, matrices)


def verify_homomorphism(cert: RepCertificate,
                        presentation: Presentation | None = None) -> bool:
    """Multiply the stored matrices along every relator and compare with
    the identity; also checks the upper-triangular shape.  Uses only the
    local 2x2 arithmetic above."""
    p = presentation if presentation is not None else cert.presentation
    mode = cert.mode
    if len(cert.matrices) != p.num_generators:
        return False
    one = mode.one()
    for m in cert.matrices:
        if not (mode.eq(m[0][0], one) and mode.is_zero(m[1][0])):
            return False
        if mode.sign(m[1][1]) <= 0:
            return False
    try:
        return all(mat_is_identity(mode, cert.word_matrix(rel))
                   for rel in p.relators)
    except ZeroDivisionError:
        return False


def matrices_match_data(cert: RepCertificate) -> bool:
    """The stored matrices agree entrywise with the stored character and
    cocycle values."""
    mode = cert.mode
    for j, m in enumerate(cert.matrices):
        if not mode.eq(m[0][1], cert.cocycle.values[j]):
            return False
        if not mode.eq(m[1][1], cert.character.values[j]):
            return False
    return True


def is_decomposable(cert: RepCertificate):
    """The conjugating scalar c with mu(a_j) = c (rho(a_j) - 1) for all j,
    or None when no such c exists.

    Reads only the matrix entries, so it applies to untrusted
    certificates.  When every rho(a_j) = 1 the certificate is
    decomposable exactly when mu vanishes (then c = 0).
    """
    mode = cert.mode
    one = mode.one()
    mus = [m[0][1] for m in cert.matrices]
    rhos = [m[1][1] for m in cert.matrices]
    pivot = next((j for j, r in enumerate(rhos) if not mode.eq(r, one)), None)
    if pivot is None:
        if all(mode.is_zero(v) for v in mus):
            return mode.zero()
        return None
    c = mus[pivot] / (rhos[pivot] - one)
    for v, r in zip(mus, rhos):
        if not mode.eq(v, c * (r - one)):
            return None
    return c


def attach_verification(cert: RepCertificate) -> RepCertificate:
    """Run the independent checks and record their outcome on the
    certificate.  Raises :class:`VerificationError` when the relator
    products do not close up."""
    ok = verify_homomorphism(cert) and matrices_match_data(cert)
    cert.verified = ok
    c = is_decomposable(cert)
    cert.decomposable = c is not None
    cert.fixed_line = c
    if not ok:
        raise VerificationError("certificate failed independent verification")
    return cert


CERTIFICATE_FORMAT = "twisted-h1-certificate/1"


def certificate_to_json(cert: RepCertificate) -> dict:
    """A JSON-ready dict; exact scalars round-trip through their literals."""
    mode = cert.mode
    p = cert.presentation
    return {
        "format": CERTIFICATE_FORMAT,
        "mode": mode_to_json(mode),
        "presentation": {
            "generators": list(p.generators),
            "relators": [p.format_word(r) for r in p.relators],
        },
        "character": {n: mode.format(v) for n, v in cert.character.items()},
        "cocycle": {n: mode.format(v) for n, v in cert.cocycle.items()},
        "matrices": {
            n: [[mode.format(x) for x in row] for row in m]
            for n, m in zip(p.generators, cert.matrices)
        },
        "verified": cert.verified,
        "decomposable": cert.decomposable,
        "fixed_line_c": None if cert.fixed_line is None else mode.format(cert.fixed_line),
    }


def certificate_from_json(obj) -> RepCertificate:
    """Rebuild a certificate from its JSON dict without trusting it; the
    verification flags are left unset for re-checking."""
    try:
        if obj.get("format") != CERTIFICATE_FORMAT:
            raise CertificateFormatError(
                f"unknown certificate format {obj.get('format')!r}")
        mode = mode_from_json(obj["mode"])
        gens = obj["presentation"]["generators"]
        text = "gens: " + " ".join(gens) + "\n" + "".join(
            f"rel: {r}\n" for r in obj["presentation"]["relators"])
        presentation = parse_presentation(text)
        rho = parse_character(
            " ".join(f"{n}={v}" for n, v in obj["character"].items()),
            presentation.generators, mode=mode)
        mu_values = [mode.parse(obj["cocycle"][n]) for n in presentation.generators]
        mu = Cocycle(rho, mu_values)
        matrices = tuple(
            tuple(tuple(mode.parse(x) for x in row) for row in obj["matrices"][n])
            for n in presentation.generators)
        for m in matrices:
            if len(m) != 2 or any(len(row) != 2 for row in m):
                raise CertificateFormatError("matrices must be 2x2")
    except CertificateFormatError:
        raise
    except Exception as exc:
        raise CertificateFormatError(f"malformed certificate: {exc}") from exc
    return RepCertificate(presentation, rho, mu, matrices)


def load_certificate(path) -> RepCertificate:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CertificateFormatError(f"certificate is not valid JSON: {exc}") from exc
    return certificate_from_json(obj)
