"""Command-line front end.

Every subcommand prints one JSON report to stdout: a deterministic envelope
with the command echo, sha256 digests of the input files, a version tag and
the structured result.  Rationals are serialized as exact "p/q" strings;
there is no floating point anywhere.  Exit codes: 0 on success, 1 on domain
errors (reported as a JSON error object), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .alexpipe import alexander_bipencil, conjectural_alexander
from .arrangement import (
    Arrangement,
    BiPencil,
    IntersectionLattice,
    parse_input,
)
from .cubical import CubicalDiagram, check_theorem2
from .errors import InputError, LinarrError
from .gradedalg import graded_quotient_dim, parse_poly
from .multinet import search_multinets
from .resonance import aomoto_complex
from .spectrum import MonodromyTable, spectrum_to_table, steenbrink_spectrum


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv, namespace=_EchoNamespace())
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result, digests = args.handler(args)
    except (LinarrError, OSError) as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 1
    _emit(
        {
            "command": [args.command] + args.echo,
            "inputs": digests,
            "version": __version__,
            "result": result,
        }
    )
    return 0


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _read(path: str) -> tuple[str, dict]:
    data = Path(path).read_bytes()
    return data.decode("utf-8"), {path: "sha256:" + hashlib.sha256(data).hexdigest()}


def _load_json_file(path: str) -> tuple[dict, dict]:
    text, digest = _read(path)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    return obj, digest


def _frac(x: Fraction) -> str:
    return str(x)


# ----------------------------------------------------------------------
# subcommand handlers


def _cmd_lattice(args) -> tuple[dict, dict]:
    text, digests = _read(args.file)
    data = parse_input(text)
    if isinstance(data, BiPencil):
        data = data.to_arrangement()
    if isinstance(data, Arrangement):
        points = [
            {
                "point": [_frac(x) for x in fp.point],
                "incident": sorted(fp.incident),
                "multiplicity": fp.multiplicity,
            }
            for fp in data.intersection_points()
        ]
        lat = data.lattice()
    else:
        lat = data
        points = [
            {"incident": sorted(inc), "multiplicity": len(inc)} for inc in lat.points
        ]
    counts = {str(mult): cnt for mult, cnt in sorted(lat.multiplicities().items())}
    return {"n": lat.n, "points": points, "counts_by_multiplicity": counts}, digests


def _cmd_multinet(args) -> tuple[dict, dict]:
    text, digests = _read(args.file)
    data = parse_input(text)
    if isinstance(data, BiPencil):
        data = data.to_arrangement()
    found = search_multinets(data, args.k, args.mmax)
    out = []
    for cand, verdict in found:
        out.append(
            {
                "classes": [sorted(cls) for cls in cand.classes],
                "multiplicities": list(cand.m),
                "base_locus": sorted(sorted(pt) for pt in cand.base_locus),
                "level": verdict.level,
                "d": verdict.d,
            }
        )
    return {"k": args.k, "mmax": args.mmax, "found": out, "count": len(out)}, digests


def _cmd_betti(args) -> tuple[dict, dict]:
    text, digests = _read(args.file)
    data = parse_input(text)
    if isinstance(data, BiPencil):
        data = data.to_arrangement()
    sl = aomoto_complex(data, args.p)
    return {
        "p": args.p,
        "dim1": sl.dim1,
        "dim2": sl.dim2,
        "rank": sl.rank,
        "betti": sl.betti,
    }, digests


def _cmd_milnor(args) -> tuple[dict, dict]:
    variables = [v.strip() for v in args.vars.split(",") if v.strip()]
    f = parse_poly(args.poly, variables)
    report = graded_quotient_dim(f, args.degree)
    return report.to_json(), {}


def _cmd_spectrum(args) -> tuple[dict, dict]:
    variables = [v.strip() for v in args.vars.split(",") if v.strip()]
    weights = [int(w) for w in args.weights.split(",") if w.strip()]
    f = parse_poly(args.poly, variables)
    d = f.weighted_degree(weights)
    if d is None:
        raise InputError("polynomial is not weighted-homogeneous for these weights")
    entries = steenbrink_spectrum(f, d, weights)
    table = spectrum_to_table(entries, len(variables) - 1)
    return {
        "degree": d,
        "weights": weights,
        "spectrum": [
            {"alpha": _frac(e.alpha), "nu": e.nu} for e in entries
        ],
        "table": table.to_json(),
    }, {}


def _cmd_join(args) -> tuple[dict, dict]:
    obj_a, dig_a = _load_json_file(args.table_a)
    obj_b, dig_b = _load_json_file(args.table_b)
    table_a = _table_from(obj_a)
    table_b = _table_from(obj_b)
    from .spectrum import thom_sebastiani_join

    joined = thom_sebastiani_join(table_a, table_b)
    return {"table": joined.to_json()}, {**dig_a, **dig_b}


def _table_from(obj: dict) -> MonodromyTable:
    if "table" in obj:
        obj = obj["table"]
    if "result" in obj:  # allow feeding a previous report back in
        return _table_from(obj["result"])
    return MonodromyTable.from_json(obj)


def _cmd_alexander(args) -> tuple[dict, dict]:
    text, digests = _read(args.file)
    data = parse_input(text)
    if isinstance(data, IntersectionLattice):
        raise InputError("the alexander pipeline needs line or bi-pencil input")
    report = alexander_bipencil(data)
    conjecture = conjectural_alexander(
        data.to_arrangement() if isinstance(data, BiPencil) else data
    )
    payload = report.to_json()
    payload["conjecture"] = conjecture.to_json()
    payload["agreement"] = report.polynomial == conjecture.polynomial
    return payload, digests


def _cmd_cube(args) -> tuple[dict, dict]:
    digests: dict = {}
    cubes = {}
    for name in ("dx", "dy", "sx", "sy"):
        obj, digest = _load_json_file(getattr(args, name))
        digests.update(digest)
        cubes[name] = CubicalDiagram.from_json(obj)
    embed_obj, digest = _load_json_file(args.embed)
    digests.update(digest)
    embeddings = {
        side: {
            key: {comp: (entry[0], int(entry[1])) for comp, entry in record.items()}
            for key, record in embed_obj.get(side, {}).items()
        }
        for side in ("d", "sigma")
    }
    dim_y = embed_obj.get("dim_y", args.dim_y)
    dim_sigma_x = embed_obj.get("dim_sigma_x", args.dim_sigma_x)
    if dim_y is None or dim_sigma_x is None:
        raise InputError("dim_y and dim_sigma_x must come from flags or the embed file")
    verdict = check_theorem2(
        cubes["dx"], cubes["dy"], cubes["sx"], cubes["sy"], embeddings, int(dim_y), int(dim_sigma_x)
    )
    return verdict.to_json(), digests


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linarr",
        description="Exact invariants of projective line arrangements.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", help="intersection points and multiplicities")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_lattice, echo_fields=("file",))

    p = sub.add_parser("multinet", help="exhaustive multinet search")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("file")
    p.set_defaults(handler=_cmd_multinet, echo_fields=("k", "mmax", "file"))

    p = sub.add_parser("betti", help="modular Aomoto-Betti number")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("file")
    p.set_defaults(handler=_cmd_betti, echo_fields=("p", "file"))

    p = sub.add_parser("milnor", help="graded piece of the Jacobian quotient")
    p.add_argument("--poly", required=True)
    p.add_argument("--vars", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(handler=_cmd_milnor, echo_fields=("poly", "vars", "degree"))

    p = sub.add_parser("spectrum", help="Steenbrink spectrum and eigenvalue table")
    p.add_argument("--poly", required=True)
    p.add_argument("--vars", required=True)
    p.add_argument("--weights", required=True)
    p.set_defaults(handler=_cmd_spectrum, echo_fields=("poly", "vars", "weights"))

    p = sub.add_parser("join", help="Thom-Sebastiani join of two tables")
    p.add_argument("table_a")
    p.add_argument("table_b")
    p.set_defaults(handler=_cmd_join, echo_fields=("table_a", "table_b"))

    p = sub.add_parser("alexander", help="Alexander polynomial of a two-point cover")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_alexander, echo_fields=("file",))

    cube = sub.add_parser("cube", help="cubical diagram utilities")
    cube_sub = cube.add_subparsers(dest="cube_command", required=True)
    p = cube_sub.add_parser("check", help="verify the Gysin hypotheses on fixtures")
    p.add_argument("--dx", required=True)
    p.add_argument("--dy", required=True)
    p.add_argument("--sx", required=True)
    p.add_argument("--sy", required=True)
    p.add_argument("--embed", required=True)
    p.add_argument("--dim-y", type=int, default=None, dest="dim_y")
    p.add_argument("--dim-sigma-x", type=int, default=None, dest="dim_sigma_x")
    p.set_defaults(
        handler=_cmd_cube,
        echo_fields=("cube_command", "dx", "dy", "sx", "sy", "embed"),
    )

    return parser


class _EchoNamespace(argparse.Namespace):
    @property
    def echo(self) -> list[str]:
        return [
            f"{field}={getattr(self, field)}"
            for field in getattr(self, "echo_fields", ())
        ]


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
