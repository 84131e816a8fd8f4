"""Command line interface.

Subcommands::

    h1           dimensions of Z^1, B^1 and H^1 for a presentation + character
    certificate  emit a verified 2x2 representation certificate as JSON
    verify       independently re-check a certificate file
    family       write presentation/character files for the example families
    enumerate    walk the finitely many candidate characters of conjugation data

Exit codes: 0 success, 2 parse errors (presentations, characters,
conjugation data, bad parameters), 3 inadmissible character, 4 numeric
mode mismatch, 5 verification failure or corrupted certificate.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from .characters import (
    Character,
    CharacterParseError,
    InadmissibleCharacterError,
    parse_character,
)
from .certificates import (
    CertificateFormatError,
    CocycleConstraintError,
    RepCertificate,
    VerificationError,
    attach_verification,
    build_representation,
    certificate_to_json,
    is_decomposable,
    load_certificate,
    matrices_match_data,
    verify_homomorphism,
)
from .cocycles import (
    Cocycle,
    CohomologyReport,
    parse_cocycle,
    twisted_h1_dimension,
)
from .families import (
    free_abelian,
    free_group,
    heisenberg,
    mapping_torus_character,
    mapping_torus_eigenvalues,
    mapping_torus_presentation,
    surface_presentation,
)
from .finiteness import (
    ConjugationDataError,
    candidate_characters,
    enumerate_nonvanishing,
    parse_conjugation_data,
)
from .linalg import ConditioningWarning
from .scalars import (
    ApproxMode,
    DEFAULT_EPS,
    QuadraticMode,
    RationalMode,
    ScalarModeError,
    ScalarParseError,
    mode_to_json,
    natural_mode,
)
from .words import Presentation, PresentationSyntaxError, parse_presentation

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INADMISSIBLE = 3
EXIT_MODE = 4
EXIT_VERIFY = 5


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_presentation(path: str) -> Presentation:
    return parse_presentation(_read(path))


def _add_mode_options(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--mode", choices=["auto", "rational", "quadratic", "approx"],
                    default="auto",
                    help="numeric mode (default: inferred from the literals)")
    sp.add_argument("--radicand", type=int, metavar="D",
                    help="squarefree d > 1 for quadratic mode")
    sp.add_argument("--eps", type=float, metavar="E",
                    help="zero tolerance; approx mode only (default 1e-9)")


def _add_char_options(sp: argparse.ArgumentParser) -> None:
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--char", metavar="TEXT",
                     help="inline character assignments, e.g. 'a=2 b=3/2'")
    grp.add_argument("--char-file", metavar="PATH",
                     help="character file (one 'char:' line)")
    _add_mode_options(sp)


def _add_output_options(sp: argparse.ArgumentParser, formats=("text", "json")) -> None:
    if formats:
        sp.add_argument("--format", choices=list(formats), default=formats[0])
    sp.add_argument("-o", "--output", metavar="PATH",
                    help="write to a file instead of stdout")


def _load_character(args, presentation: Presentation) -> Character:
    text = args.char if args.char is not None else _read(args.char_file)
    if args.eps is not None and args.mode in ("rational", "quadratic"):
        raise ScalarModeError(f"--eps is only legal in approx mode, not {args.mode}")
    if args.eps is not None and not args.eps > 0:
        raise ValueError("--eps must be positive")
    if args.radicand is not None and args.mode in ("rational", "approx"):
        raise ScalarModeError(f"--radicand is only legal in quadratic mode, not {args.mode}")
    eps = args.eps if args.eps is not None else DEFAULT_EPS
    explicit = None
    if args.mode == "rational":
        explicit = RationalMode()
    elif args.mode == "approx":
        explicit = ApproxMode(eps)
    elif args.radicand is not None:
        explicit = QuadraticMode(args.radicand)
    elif args.mode == "auto" and args.eps is not None:
        explicit = ApproxMode(eps)
    rho = parse_character(text, presentation.generators, mode=explicit, eps=eps)
    if args.mode == "quadratic" and not isinstance(rho.mode, QuadraticMode):
        raise ScalarModeError(
            "the literals do not determine a radicand; pass --radicand D")
    return rho


def _emit(args, text_lines: list[str], json_obj) -> None:
    if getattr(args, "format", "json") == "json":
        payload = json.dumps(json_obj, indent=2) + "\n"
    else:
        payload = "\n".join(text_lines) + "\n"
    if args.output:
        Path(args.output).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)


def _solve(presentation: Presentation, rho: Character):
    """Run the solver, capturing conditioning warnings as report notes."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ConditioningWarning)
        report = twisted_h1_dimension(presentation, rho)
    report.warnings.extend(str(w.message) for w in caught
                           if issubclass(w.category, ConditioningWarning))
    return report


def _witness_certificate(presentation: Presentation, rho: Character,
                         report: CohomologyReport) -> RepCertificate | None:
    """A verified certificate for the first indecomposable basis cocycle."""
    for mu in report.z1_basis:
        cert = build_representation(presentation, rho, mu)
        if is_decomposable(cert) is None:
            return attach_verification(cert)
    return None


def _report_json(rho: Character, report: CohomologyReport,
                 cert: RepCertificate | None) -> dict:
    mode = rho.mode
    return {
        "z1_dim": report.z1_dim,
        "b1_dim": report.b1_dim,
        "h1_dim": report.h1_dim,
        "basis": [{n: mode.format(v) for n, v in mu.items()}
                  for mu in report.z1_basis],
        "certificate": None if cert is None else certificate_to_json(cert),
        "warnings": list(report.warnings),
    }


def cmd_h1(args) -> int:
    presentation = _load_presentation(args.presentation)
    rho = _load_character(args, presentation)
    report = _solve(presentation, rho)
    cert = (_witness_certificate(presentation, rho, report)
            if report.h1_dim > 0 else None)
    lines = [
        f"z1_dim: {report.z1_dim}",
        f"b1_dim: {report.b1_dim}",
        f"h1_dim: {report.h1_dim}",
        f"nonvanishing: {'true' if report.nonvanishing else 'false'}",
    ]
    for i, mu in enumerate(report.z1_basis, start=1):
        lines.append(f"basis[{i}]: {mu.format()}")
    for note in report.warnings:
        lines.append(f"warning: {note}")
    _emit(args, lines, _report_json(rho, report, cert))
    return EXIT_OK


def cmd_certificate(args) -> int:
    presentation = _load_presentation(args.presentation)
    rho = _load_character(args, presentation)
    if args.cocycle is not None or args.cocycle_file is not None:
        text = args.cocycle if args.cocycle is not None else _read(args.cocycle_file)
        mu = parse_cocycle(text, rho)
        cert = build_representation(presentation, rho, mu)
        attach_verification(cert)
    else:
        report = _solve(presentation, rho)
        cert = _witness_certificate(presentation, rho, report)
        if cert is None:
            if report.z1_basis:
                mu = report.z1_basis[0]
            else:
                mu = Cocycle(rho, [rho.mode.zero()] * presentation.num_generators)
            cert = attach_verification(build_representation(presentation, rho, mu))
    _emit(args, [], certificate_to_json(cert))
    return EXIT_OK


def cmd_verify(args) -> int:
    cert = load_certificate(args.certificate)
    hom_ok = verify_homomorphism(cert)
    data_ok = matrices_match_data(cert)
    admissible = cert.character.admissible_for(cert.presentation)
    ok = hom_ok and data_ok and admissible
    c = is_decomposable(cert)
    mode = cert.mode
    lines = [
        f"verified: {'true' if ok else 'false'}",
        f"homomorphism: {'true' if hom_ok else 'false'}",
        f"matrices_match_data: {'true' if data_ok else 'false'}",
        f"admissible_character: {'true' if admissible else 'false'}",
        f"indecomposable: {'true' if c is None else 'false'}",
    ]
    obj = {
        "verified": ok,
        "homomorphism": hom_ok,
        "matrices_match_data": data_ok,
        "admissible_character": admissible,
        "indecomposable": c is None,
        "fixed_line_c": None if c is None else mode.format(c),
    }
    if c is not None:
        lines.append(f"fixed_line_c: {mode.format(c)}")
    _emit(args, lines, obj)
    if not ok:
        raise VerificationError("certificate failed verification")
    return EXIT_OK


def _family_files(args) -> tuple[str, Presentation, Character]:
    name = args.family
    params = args.params
    if name == "mapping-torus":
        if len(params) != 4:
            raise ValueError("mapping-torus takes 4 integer entries: a11 a12 a21 a22")
        a11, a12, a21, a22 = (int(x) for x in params)
        matrix = ((a11, a12), (a21, a22))
        presentation = mapping_torus_presentation(matrix)
        eigen = mapping_torus_eigenvalues(matrix)
        y = eigen[-1] if eigen else 2
        rho = mapping_torus_character(matrix, y, natural_mode(y))
        slug = "mapping-torus_" + "_".join(str(x) for x in (a11, a12, a21, a22))
    elif name == "surface":
        if len(params) != 1:
            raise ValueError("surface takes one parameter: the genus")
        genus = int(params[0])
        presentation = surface_presentation(genus)
        mode = RationalMode()
        values = [mode.from_int(2)] + [mode.one()] * (2 * genus - 1)
        rho = Character(mode, presentation.generators, values)
        slug = f"surface_{genus}"
    elif name in ("free", "free-abelian"):
        if len(params) != 1:
            raise ValueError(f"{name} takes one parameter: the rank")
        n = int(params[0])
        presentation = free_group(n) if name == "free" else free_abelian(n)
        mode = RationalMode()
        values = [mode.from_int(2)] + [mode.one()] * (n - 1) if n else []
        rho = Character(mode, presentation.generators, values)
        slug = f"{name}_{n}"
    elif name == "heisenberg":
        if params:
            raise ValueError("heisenberg takes no parameters")
        presentation = heisenberg()
        mode = RationalMode()
        rho = Character(mode, presentation.generators,
                        [mode.from_int(2), mode.one(), mode.one()])
        slug = "heisenberg"
    else:  # unreachable behind argparse choices
        raise ValueError(f"unknown family {name!r}")
    return slug, presentation, rho


def cmd_family(args) -> int:
    slug, presentation, rho = _family_files(args)
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    pres_path = out_dir / f"{slug}.pres"
    char_path = out_dir / f"{slug}.char"
    pres_path.write_text(presentation.to_text(), encoding="utf-8")
    char_path.write_text(f"char: {rho.format()}\n", encoding="utf-8")
    print(pres_path)
    print(char_path)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    presentation = _load_presentation(args.presentation)
    data = parse_conjugation_data(_read(args.conjugation))
    eps = args.eps if args.eps is not None else DEFAULT_EPS
    if not eps > 0:
        raise ValueError("--eps must be positive")
    candidates = candidate_characters(data, eps=eps)
    results = enumerate_nonvanishing(presentation, data, args.map, eps=eps)
    lines = [
        f"candidate_bound: {data.candidate_bound}",
        f"candidates_considered: {len(candidates)}",
        f"nonvanishing_count: {len(results)}",
    ]
    payload = []
    for i, (rho, report) in enumerate(results, start=1):
        lines.append(
            f"nonvanishing[{i}]: {rho.format()} "
            f"(z1={report.z1_dim} b1={report.b1_dim} h1={report.h1_dim})")
        payload.append({
            "mode": mode_to_json(rho.mode),
            "character": {n: rho.mode.format(v) for n, v in rho.items()},
            "z1_dim": report.z1_dim,
            "b1_dim": report.b1_dim,
            "h1_dim": report.h1_dim,
        })
    obj = {
        "candidate_bound": data.candidate_bound,
        "candidates_considered": len(candidates),
        "nonvanishing": payload,
    }
    _emit(args, lines, obj)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistedh1",
        description="First twisted cohomology of a character of a finitely "
                    "presented group, with verifiable 2x2 certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("h1", help="compute dim Z^1, dim B^1, dim H^1")
    sp.add_argument("presentation", help="presentation file (gens:/rel: lines)")
    _add_char_options(sp)
    _add_output_options(sp)
    sp.set_defaults(func=cmd_h1)

    sp = sub.add_parser("certificate",
                        help="emit a verified representation certificate (JSON)")
    sp.add_argument("presentation")
    _add_char_options(sp)
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--cocycle", metavar="TEXT",
                     help="generator values, e.g. 'u=1 v=-2'; default: solve")
    grp.add_argument("--cocycle-file", metavar="PATH")
    _add_output_options(sp, formats=())
    sp.set_defaults(func=cmd_certificate)

    sp = sub.add_parser("verify", help="re-check a certificate file from scratch")
    sp.add_argument("certificate", help="certificate JSON path")
    _add_output_options(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("family", help="write example presentation/character files")
    sp.add_argument("family", choices=["mapping-torus", "surface", "free",
                                       "free-abelian", "heisenberg"])
    sp.add_argument("params", nargs="*", help="family parameters")
    sp.add_argument("-o", "--output-dir", default=".", metavar="DIR")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("enumerate",
                        help="test the finitely many candidate characters")
    sp.add_argument("presentation")
    sp.add_argument("conjugation", help="conjugation data file (outer:/comm:/N_j:)")
    sp.add_argument("--map", nargs="+", required=True, metavar="NAME",
                    help="presentation generators acting as the outer generators")
    sp.add_argument("--eps", type=float, metavar="E",
                    help="tolerance for numeric eigenvalues (default 1e-9)")
    _add_output_options(sp)
    sp.set_defaults(func=cmd_enumerate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PresentationSyntaxError, CharacterParseError, ConjugationDataError,
            ScalarParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InadmissibleCharacterError as exc:
        print(f"error: inadmissible character: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except ScalarModeError as exc:
        print(f"error: mode mismatch: {exc}", file=sys.stderr)
        return EXIT_MODE
    except (VerificationError, CertificateFormatError, CocycleConstraintError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except KeyError as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
