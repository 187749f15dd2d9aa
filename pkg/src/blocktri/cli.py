"""Command-line front end.

Subcommands: embed-check, recover, verify, diagonalize, gallery. Reports go
to stdout as canonical JSON (or short text), diagnostics to stderr. Exit
codes are a stable contract: 0 success, 2 input error, 3 no embedding,
4 not a Jordan embedding, 5 repeated eigenvalues, 6 not in algebra.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import (
    Embedding,
    block_algebra,
    jordan_iso_class,
    membership,
    parse_composition,
    project,
    embeds,
)
from .canonical import diagonalize_in_algebra
from .documents import (
    canonical_json,
    load_json,
    map_from_document,
    matrix_from_document,
    matrix_to_document,
)
from .errors import (
    BlockTriError,
    Degenerate,
    InvalidDocument,
    MismatchedDimension,
    NotJordanEmbedding,
    RepeatedEigenvalues,
    WrongAlgebra,
)
from .gallery import GALLERY, run_gallery_suite
from .linalg import frobenius
from .maps import apply, evaluate_form, recover_form
from .preservers import full_report

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_EMBEDDING = 3
EXIT_NOT_JORDAN = 4
EXIT_REPEATED_EIGENVALUES = 5
EXIT_NOT_IN_ALGEBRA = 6


def _fail(code: int, message: str) -> int:
    print(message, file=sys.stderr)
    return code


def _cmd_embed_check(args) -> int:
    try:
        a = block_algebra(parse_composition(args.a))
        b = block_algebra(parse_composition(args.b))
        verdict = embeds(a, b)
        iso = jordan_iso_class(a, b)
    except (ValueError, MismatchedDimension) as exc:
        return _fail(EXIT_INPUT, f"embed-check: {exc}")
    if args.json:
        sys.stdout.write(
            canonical_json({"embedding": verdict.value, "jordan_isomorphism": iso.value})
        )
    else:
        print(verdict.value)
        print(iso.value)
    return EXIT_OK if verdict is not Embedding.NONE else EXIT_NO_EMBEDDING


def _cmd_recover(args) -> int:
    try:
        m = map_from_document(load_json(args.map_file))
    except InvalidDocument as exc:
        return _fail(EXIT_INPUT, f"recover: {exc}")
    try:
        form = recover_form(m, seed=args.seed)
    except (NotJordanEmbedding, Degenerate) as exc:
        return _fail(EXIT_NOT_JORDAN, f"recover: not a Jordan embedding: {exc}")
    worst = 0.0
    from .algebra import random_element  # local import keeps module load light

    import numpy as np

    rng = np.random.default_rng(args.seed)
    for _ in range(20):
        x = random_element(m.domain, rng)
        worst = max(
            worst,
            frobenius(apply(m, x) - evaluate_form(form, x)) / max(1.0, frobenius(x)),
        )
    sys.stdout.write(
        canonical_json(
            {
                "orientation": form.orientation.value,
                "T": matrix_to_document(form.t)["entries"],
                "residual": worst,
            }
        )
    )
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        m = map_from_document(load_json(args.map_file))
    except InvalidDocument as exc:
        return _fail(EXIT_INPUT, f"verify: {exc}")
    report = full_report(m, budget=args.budget, seed=args.seed, tol=args.tol)
    sys.stdout.write(
        canonical_json(
            {
                "spectrum_preserving": report.spectrum_preserving,
                "spectrum_shrinking": report.spectrum_shrinking,
                "commutativity_preserving": report.commutativity_preserving,
                "samples_used": report.samples_used,
                "worst_violation": report.worst_violation,
                "witnesses": report.witnesses,
            }
        )
    )
    return EXIT_OK


def _cmd_diagonalize(args) -> int:
    try:
        algebra = block_algebra(parse_composition(args.algebra))
        matrix = matrix_from_document(load_json(args.matrix_file))
    except (ValueError, InvalidDocument) as exc:
        return _fail(EXIT_INPUT, f"diagonalize: {exc}")
    try:
        if matrix.shape != (algebra.n, algebra.n) or not membership(
            algebra, matrix, tol=1e-12
        ):
            return _fail(EXIT_NOT_IN_ALGEBRA, "diagonalize: matrix is not in the algebra")
    except MismatchedDimension as exc:
        return _fail(EXIT_NOT_IN_ALGEBRA, f"diagonalize: {exc}")
    try:
        result = diagonalize_in_algebra(algebra, project(algebra, matrix), args.constraint)
    except RepeatedEigenvalues as exc:
        return _fail(EXIT_REPEATED_EIGENVALUES, f"diagonalize: {exc}")
    except WrongAlgebra as exc:
        return _fail(EXIT_NOT_IN_ALGEBRA, f"diagonalize: {exc}")
    except BlockTriError as exc:
        return _fail(EXIT_INPUT, f"diagonalize: {exc}")
    sys.stdout.write(
        canonical_json(
            {
                "T": matrix_to_document(result.similarity)["entries"],
                "diagonal": list(result.diagonal),
            }
        )
    )
    return EXIT_OK


def _cmd_gallery(args) -> int:
    if args.name not in GALLERY:
        return _fail(EXIT_INPUT, f"gallery: unknown name {args.name!r}")
    report = run_gallery_suite(args.name, budget=args.budget, seed=args.seed)
    sys.stdout.write(canonical_json(report))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blocktri",
        description="Block upper-triangular algebra toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed-check", help="classify how one composition embeds in another")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_embed_check)

    p = sub.add_parser("recover", help="recover the similarity behind a linear map document")
    p.add_argument("map_file")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_recover)

    p = sub.add_parser("verify", help="run the preserver-property report on a map document")
    p.add_argument("map_file")
    p.add_argument("--budget", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("diagonalize", help="diagonalize a matrix within its block algebra")
    p.add_argument("algebra")
    p.add_argument("matrix_file")
    p.add_argument("--constraint", type=int, default=None, help="0-based diagonal index")
    p.set_defaults(fn=_cmd_diagonalize)

    p = sub.add_parser("gallery", help="run one counterexample's certified property suite")
    p.add_argument("name")
    p.add_argument("--budget", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_gallery)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed a diagnostic; normalize its exit code
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
