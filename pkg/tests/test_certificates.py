import json
import random
from fractions import Fraction

import pytest

from twistedh1.characters import Character
from twistedh1.cocycles import Cocycle, coboundary_cocycle
from twistedh1.certificates import (
    CertificateFormatError,
    CocycleConstraintError,
    VerificationError,
    attach_verification,
    build_representation,
    certificate_from_json,
    certificate_to_json,
    is_decomposable,
    load_certificate,
    mat_inv,
    mat_mul,
    matrices_match_data,
    verify_homomorphism,
)
from twistedh1.scalars import QuadraticElement, QuadraticMode, RationalMode
from twistedh1.words import Presentation, Word, parse_presentation

RAT = RationalMode()
Q5 = QuadraticMode(5)
FREE2 = Presentation(("a", "b"))


def _example_certificate():
    from twistedh1.families import (
        mapping_torus_character,
        mapping_torus_cocycle,
        mapping_torus_presentation,
    )
    a = ((2, 1), (1, 1))
    p = mapping_torus_presentation(a)
    y = QuadraticElement(Fraction(3, 2), Fraction(1, 2), 5)
    rho = mapping_torus_character(a, y, Q5)
    mu = mapping_torus_cocycle(a, y, Q5)
    return p, rho, mu, build_representation(p, rho, mu)


def test_build_matrices():
    p, rho, mu, cert = _example_certificate()
    m_u = cert.matrix_for("u")
    assert m_u[0][0] == 1 and m_u[1][0] == 0
    assert m_u[0][1] == mu.value("u")
    assert m_u[1][1] == rho.value("u")
    m_t = cert.matrix_for("t")
    assert m_t[0][1] == 0
    assert m_t[1][1] == rho.value("t")


def test_build_diagonal_for_zero_cocycle():
    rho = Character(RAT, ("a", "b"), [2, 3])
    mu = Cocycle(rho, [0, 0])
    cert = build_representation(FREE2, rho, mu)
    assert cert.matrices == (
        ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(2))),
        ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(3))),
    )
    assert verify_homomorphism(cert)
    assert is_decomposable(cert) == 0


def test_build_rejects_non_cocycle():
    p = parse_presentation("gens: a b\nrel: [a,b]\n")
    rho = Character(RAT, ("a", "b"), [2, 3])
    with pytest.raises(CocycleConstraintError):
        build_representation(p, rho, Cocycle(rho, [1, 0]))


def test_verify_example_certificate():
    p, rho, mu, cert = _example_certificate()
    assert verify_homomorphism(cert)
    assert matrices_match_data(cert)
    assert is_decomposable(cert) is None
    attach_verification(cert)
    assert cert.verified is True
    assert cert.decomposable is False


def test_verify_catches_corruption():
    p, rho, mu, cert = _example_certificate()
    bad = list(list(row) for row in cert.matrices[0])
    bad[0] = [bad[0][0], bad[0][1] + 1]
    matrices = (tuple(tuple(r) for r in bad),) + cert.matrices[1:]
    cert.matrices = matrices
    assert not verify_homomorphism(cert)
    with pytest.raises(VerificationError):
        attach_verification(cert)


def test_verify_free_group_accepts_anything():
    rho = Character(RAT, ("a", "b"), [2, 3])
    mu = Cocycle(rho, [Fraction(17), Fraction(-4, 3)])
    cert = build_representation(FREE2, rho, mu)
    assert verify_homomorphism(cert)


def test_word_matrix_is_multiplicative():
    p, rho, mu, cert = _example_certificate()
    rng = random.Random(8)
    for _ in range(60):
        w1 = Word([(rng.randrange(3), rng.choice([-1, 1]))
                   for _ in range(rng.randint(0, 4))])
        w2 = Word([(rng.randrange(3), rng.choice([-1, 1]))
                   for _ in range(rng.randint(0, 4))])
        lhs = cert.word_matrix(w1 * w2)
        rhs = mat_mul(cert.word_matrix(w1), cert.word_matrix(w2))
        assert lhs == rhs


def test_word_matrix_determinant_is_character():
    p, rho, mu, cert = _example_certificate()
    rng = random.Random(12)
    for _ in range(40):
        w = Word([(rng.randrange(3), rng.choice([-1, 1]))
                  for _ in range(rng.randint(0, 5))])
        m = cert.word_matrix(w)
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        assert det == rho.evaluate(w)
        assert m[0][1] == mu.evaluate(w)


def test_mat_inv():
    m = ((Fraction(1), Fraction(3)), (Fraction(0), Fraction(2)))
    inv = mat_inv(RAT, m)
    assert mat_mul(m, inv) == ((1, 0), (0, 1))
    with pytest.raises(ZeroDivisionError):
        mat_inv(RAT, ((Fraction(1), Fraction(1)), (Fraction(2), Fraction(2))))


def test_decomposable_coboundary():
    p, rho, _, _ = _example_certificate()
    c = Q5.coerce(Fraction(4, 7))
    mu = coboundary_cocycle(rho, c)
    cert = build_representation(p, rho, mu)
    assert is_decomposable(cert) == c
    attach_verification(cert)
    assert cert.decomposable is True
    assert cert.fixed_line == c


def test_decomposable_trivial_character():
    rho = Character.trivial(RAT, ("a", "b"))
    zero = build_representation(FREE2, rho, Cocycle(rho, [0, 0]))
    assert is_decomposable(zero) == 0
    nonzero = build_representation(FREE2, rho, Cocycle(rho, [1, 0]))
    assert is_decomposable(nonzero) is None


def test_json_round_trip(tmp_path):
    p, rho, mu, cert = _example_certificate()
    attach_verification(cert)
    obj = certificate_to_json(cert)
    again = certificate_from_json(json.loads(json.dumps(obj)))
    assert again.presentation == cert.presentation
    assert again.character == cert.character
    assert again.cocycle == cert.cocycle
    assert again.matrices == cert.matrices
    assert again.verified is None  # flags are not trusted from disk

    path = tmp_path / "cert.json"
    path.write_text(json.dumps(obj), encoding="utf-8")
    loaded = load_certificate(path)
    assert verify_homomorphism(loaded)
    assert matrices_match_data(loaded)


def test_json_exactness_of_literals():
    p, rho, mu, cert = _example_certificate()
    obj = certificate_to_json(cert)
    assert obj["character"]["t"] == "3/2+1/2*sqrt(5)"
    assert obj["cocycle"]["v"] == "-1/2-1/2*sqrt(5)"
    assert obj["mode"] == {"kind": "quadratic", "d": 5}


def test_malformed_certificates_rejected(tmp_path):
    with pytest.raises(CertificateFormatError):
        certificate_from_json({"format": "something-else"})
    with pytest.raises(CertificateFormatError):
        certificate_from_json({"format": "twisted-h1-certificate/1"})
    p, rho, mu, cert = _example_certificate()
    obj = certificate_to_json(cert)
    del obj["matrices"]["u"]
    with pytest.raises(CertificateFormatError):
        certificate_from_json(obj)
    path = tmp_path / "cert.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(CertificateFormatError):
        load_certificate(path)


def test_certificates_module_does_not_touch_linalg():
    import ast
    import twistedh1.certificates as certs
    tree = ast.parse(open(certs.__file__, encoding="utf-8").read())
    imported = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.Import):
            imported.update(alias.name for alias in node.names)
        elif isinstance(node, ast.ImportFrom):
            imported.add(node.module or "")
    assert not any("linalg" in name for name in imported)
