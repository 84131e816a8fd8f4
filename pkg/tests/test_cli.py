import json

import pytest

from twistedh1.cli import main
from twistedh1.families import mapping_torus_presentation
from twistedh1.words import parse_presentation

MT_PRES = """\
gens: u v t
rel: u v u^-1 v^-1
rel: t u t^-1 u^-2 v^-1
rel: t v t^-1 u^-1 v^-1
"""

HEIS_PRES = """\
gens: x y z
rel: [x,y] z^-1
rel: [x,z]
rel: [y,z]
"""

CONJ_DATA = """\
outer: 1
comm: 2
N_1:
2 1
1 1
"""

Y_LIT = "3/2+1/2*sqrt(5)"


@pytest.fixture
def mt_pres(tmp_path):
    path = tmp_path / "mt.pres"
    path.write_text(MT_PRES)
    return str(path)


@pytest.fixture
def heis_pres(tmp_path):
    path = tmp_path / "heis.pres"
    path.write_text(HEIS_PRES)
    return str(path)


def test_h1_text_output(mt_pres, capsys):
    assert main(["h1", mt_pres, "--char", f"t={Y_LIT}"]) == 0
    out = capsys.readouterr().out
    assert out == (
        "z1_dim: 2\n"
        "b1_dim: 1\n"
        "h1_dim: 1\n"
        "nonvanishing: true\n"
        "basis[1]: u=1/2-1/2*sqrt(5) v=1 t=0\n"
        "basis[2]: u=0 v=0 t=1\n"
    )


def test_h1_json_output(mt_pres, capsys):
    assert main(["h1", mt_pres, "--char", "t=2", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert list(obj) == ["z1_dim", "b1_dim", "h1_dim", "basis",
                         "certificate", "warnings"]
    assert (obj["z1_dim"], obj["b1_dim"], obj["h1_dim"]) == (1, 1, 0)
    assert obj["basis"] == [{"u": "0", "v": "0", "t": "1"}]
    assert obj["certificate"] is None
    assert obj["warnings"] == []


def test_h1_json_carries_witness_certificate(mt_pres, capsys):
    assert main(["h1", mt_pres, "--char", f"t={Y_LIT}",
                 "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["h1_dim"] == 1
    cert = obj["certificate"]
    assert cert["format"] == "twisted-h1-certificate/1"
    assert cert["verified"] is True
    assert cert["decomposable"] is False
    assert cert["matrices"]["t"] == [["1", "0"], ["0", Y_LIT]]


def test_h1_char_file_and_output_file(mt_pres, tmp_path, capsys):
    char = tmp_path / "mt.char"
    char.write_text(f"char: u=1 v=1 t={Y_LIT}\n")
    out = tmp_path / "report.txt"
    assert main(["h1", mt_pres, "--char-file", str(char),
                 "-o", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert out.read_text().startswith("z1_dim: 2\n")


def test_certificate_and_verify_round_trip(mt_pres, tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    assert main(["certificate", mt_pres, "--char", f"t={Y_LIT}",
                 "-o", str(cert_path)]) == 0
    obj = json.loads(cert_path.read_text())
    assert obj["verified"] is True and obj["decomposable"] is False
    assert obj["cocycle"] == {"u": "1/2-1/2*sqrt(5)", "v": "1", "t": "0"}

    assert main(["verify", str(cert_path)]) == 0
    out = capsys.readouterr().out
    assert "verified: true" in out
    assert "indecomposable: true" in out


def test_certificate_explicit_cocycle_decomposable(mt_pres, tmp_path, capsys):
    cert_path = tmp_path / "cob.json"
    assert main(["certificate", mt_pres, "--char", "t=2",
                 "--cocycle", "t=1", "-o", str(cert_path)]) == 0
    obj = json.loads(cert_path.read_text())
    assert obj["decomposable"] is True
    assert obj["fixed_line_c"] == "1"

    assert main(["verify", str(cert_path)]) == 0
    out = capsys.readouterr().out
    assert "indecomposable: false" in out
    assert "fixed_line_c: 1" in out


def test_certificate_cocycle_file(mt_pres, tmp_path):
    coc = tmp_path / "mu.coc"
    coc.write_text("cocycle: t=1\n")
    cert_path = tmp_path / "cert.json"
    assert main(["certificate", mt_pres, "--char", "t=2",
                 "--cocycle-file", str(coc), "-o", str(cert_path)]) == 0
    assert json.loads(cert_path.read_text())["cocycle"]["t"] == "1"


def test_certificate_rejects_non_cocycle(mt_pres, capsys):
    # mu(u)=1 alone with the eigencharacter violates the conjugation relators
    rc = main(["certificate", mt_pres, "--char", f"t={Y_LIT}",
               "--cocycle", "u=1"])
    assert rc == 5
    assert "error:" in capsys.readouterr().err


def test_verify_rejects_tampered_cocycle(mt_pres, tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    main(["certificate", mt_pres, "--char", f"t={Y_LIT}",
          "-o", str(cert_path)])
    obj = json.loads(cert_path.read_text())
    obj["cocycle"]["u"] = "7"
    cert_path.write_text(json.dumps(obj))

    assert main(["verify", str(cert_path)]) == 5
    out = capsys.readouterr().out
    assert "verified: false" in out
    assert "matrices_match_data: false" in out


def test_verify_rejects_tampered_matrix(mt_pres, tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    main(["certificate", mt_pres, "--char", f"t={Y_LIT}",
          "-o", str(cert_path)])
    obj = json.loads(cert_path.read_text())
    obj["matrices"]["u"][0][1] = "7"
    cert_path.write_text(json.dumps(obj))

    assert main(["verify", str(cert_path)]) == 5
    assert "verified: false" in capsys.readouterr().out


def test_verify_rejects_bad_files(tmp_path, capsys):
    not_json = tmp_path / "junk.json"
    not_json.write_text("not json at all {")
    assert main(["verify", str(not_json)]) == 5

    wrong_tag = tmp_path / "tag.json"
    wrong_tag.write_text(json.dumps({"format": "something-else/9"}))
    assert main(["verify", str(wrong_tag)]) == 5
    capsys.readouterr()


def test_exit_code_missing_file(capsys):
    assert main(["h1", "no-such-file.pres", "--char", "t=2"]) == 2
    assert "error:" in capsys.readouterr().err


def test_exit_code_presentation_syntax(tmp_path, capsys):
    bad = tmp_path / "bad.pres"
    bad.write_text("gens: a b\nrel: a c\n")
    assert main(["h1", str(bad), "--char", "a=2"]) == 2
    assert "line 2" in capsys.readouterr().err


def test_exit_code_character_parse(mt_pres, capsys):
    assert main(["h1", mt_pres, "--char", "t=2/0"]) == 2
    capsys.readouterr()


def test_exit_code_inadmissible(heis_pres, capsys):
    assert main(["h1", heis_pres, "--char", "z=2"]) == 3
    assert "inadmissible" in capsys.readouterr().err


def test_exit_code_mode_mismatch(heis_pres, capsys):
    assert main(["h1", heis_pres, "--char", "x=2",
                 "--mode", "rational", "--eps", "1e-6"]) == 4
    assert main(["h1", heis_pres, "--char", "x=2", "--mode", "quadratic"]) == 4
    assert main(["h1", heis_pres, "--char", "x=2",
                 "--mode", "rational", "--radicand", "5"]) == 4
    capsys.readouterr()


def test_char_and_char_file_are_exclusive(mt_pres, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["h1", mt_pres, "--char", "t=2", "--char-file", "x"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_eps_selects_approx_mode(mt_pres, capsys):
    assert main(["h1", mt_pres, "--char", "t=2.0", "--eps", "1e-6"]) == 0
    assert main(["h1", mt_pres, "--char", "t=2", "--eps", "-1.0"]) == 2
    capsys.readouterr()


def test_family_mapping_torus(tmp_path, capsys):
    assert main(["family", "mapping-torus", "2", "1", "1", "1",
                 "-o", str(tmp_path)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == [str(tmp_path / "mapping-torus_2_1_1_1.pres"),
                   str(tmp_path / "mapping-torus_2_1_1_1.char")]
    pres = parse_presentation((tmp_path / "mapping-torus_2_1_1_1.pres").read_text())
    assert pres == mapping_torus_presentation(((2, 1), (1, 1)))
    char_text = (tmp_path / "mapping-torus_2_1_1_1.char").read_text()
    assert char_text == f"char: u=1 v=1 t={Y_LIT}\n"

    # the emitted pair feeds straight back into h1
    assert main(["h1", str(tmp_path / "mapping-torus_2_1_1_1.pres"),
                 "--char-file", str(tmp_path / "mapping-torus_2_1_1_1.char")]) == 0
    assert "h1_dim: 1" in capsys.readouterr().out


def test_family_other_names(tmp_path, capsys):
    for argv, stem in [
        (["family", "surface", "2"], "surface_2"),
        (["family", "free", "3"], "free_3"),
        (["family", "free-abelian", "2"], "free-abelian_2"),
        (["family", "heisenberg"], "heisenberg"),
    ]:
        assert main(argv + ["-o", str(tmp_path)]) == 0
        assert (tmp_path / f"{stem}.pres").exists()
        assert (tmp_path / f"{stem}.char").exists()
    capsys.readouterr()


def test_family_bad_parameters(tmp_path, capsys):
    assert main(["family", "surface", "0", "-o", str(tmp_path)]) == 2
    assert main(["family", "surface", "-o", str(tmp_path)]) == 2
    assert main(["family", "mapping-torus", "2", "1", "-o", str(tmp_path)]) == 2
    assert main(["family", "heisenberg", "3", "-o", str(tmp_path)]) == 2
    capsys.readouterr()


def test_enumerate_text(mt_pres, tmp_path, capsys):
    conj = tmp_path / "conj.dat"
    conj.write_text(CONJ_DATA)
    assert main(["enumerate", mt_pres, str(conj), "--map", "t"]) == 0
    out = capsys.readouterr().out
    assert out == (
        "candidate_bound: 2\n"
        "candidates_considered: 2\n"
        "nonvanishing_count: 2\n"
        "nonvanishing[1]: u=1 v=1 t=3/2-1/2*sqrt(5) (z1=2 b1=1 h1=1)\n"
        "nonvanishing[2]: u=1 v=1 t=3/2+1/2*sqrt(5) (z1=2 b1=1 h1=1)\n"
    )


def test_enumerate_json_is_deterministic(mt_pres, tmp_path, capsys):
    conj = tmp_path / "conj.dat"
    conj.write_text(CONJ_DATA)
    argv = ["enumerate", mt_pres, str(conj), "--map", "t", "--format", "json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first

    obj = json.loads(first)
    assert obj["candidate_bound"] == 2
    assert obj["candidates_considered"] == 2
    assert [c["character"]["t"] for c in obj["nonvanishing"]] == \
        ["3/2-1/2*sqrt(5)", Y_LIT]
    assert all(c["h1_dim"] == 1 for c in obj["nonvanishing"])
    assert all(c["mode"] == {"kind": "quadratic", "d": 5}
               for c in obj["nonvanishing"])


def test_enumerate_unknown_map_name(mt_pres, tmp_path, capsys):
    conj = tmp_path / "conj.dat"
    conj.write_text(CONJ_DATA)
    assert main(["enumerate", mt_pres, str(conj), "--map", "w"]) == 2
    assert "unknown generator" in capsys.readouterr().err


def test_enumerate_bad_conjugation_file(mt_pres, tmp_path, capsys):
    conj = tmp_path / "conj.dat"
    conj.write_text("outer: 1\ncomm: 2\n")
    assert main(["enumerate", mt_pres, str(conj), "--map", "t"]) == 2
    capsys.readouterr()
