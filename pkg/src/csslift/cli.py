"""Command-line interface: validation, parameters, products, lifts, covers.

Every command prints a human-readable report, or the same data as JSON with
``--json``.  Outputs are byte-identical across runs; only explicitly seeded
strategies consume a seed.  Exit codes: 0 ok, 2 validation failure, 3 budget
exceeded, 4 parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import _kernels
from .checkgraph import betti_components, multigraph_z, pair_edges
from .cover import VoltageAssignment, cover_components, enumerate_covers, lift_code
from .css import DEFAULT_DISTANCE_BUDGET, distance, new_css, parameters
from .errors import (
    BudgetExceededError,
    CssLiftError,
    ParseError,
)
from .formats import (
    SCHEMA_VERSION,
    load_manifest,
    load_presentation,
    load_voltages,
    parse_matrix,
    presentation_to_json,
    save_json,
    voltage_to_json,
    write_manifest,
    write_matrix,
)
from .hgp import hgp_presentation, hpc_naive_zlift, hypergraph_product
from .presentation import cone_presentation
from .zlift import refute_support_preserving, support_preserving_witness

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_PARSE = 4


def _apply_thread_env() -> None:
    value = os.environ.get("CSSLIFT_THREADS")
    if not value:
        return
    try:
        count = max(1, int(value))
    except ValueError:
        raise ParseError(f"CSSLIFT_THREADS must be an integer, got {value!r}")
    if _kernels.USE_NUMBA:
        import numba

        numba.set_num_threads(min(count, numba.config.NUMBA_NUM_THREADS))


def _emit(report: dict, args) -> None:
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    for line in report["lines"]:
        print(line)


def _report(command: str, lines, **data) -> dict:
    payload = {"schema_version": SCHEMA_VERSION, "command": command, "lines": lines}
    payload.update(data)
    return payload


def _manifest_presentation(manifest, code):
    if manifest.presentation_path is not None:
        return load_presentation(manifest.presentation_path)
    return cone_presentation(code)


def _params_dict(params):
    return {"n": params.n, "k": params.k, "d": params.d}


def cmd_check(args) -> dict:
    manifest = load_manifest(args.manifest)
    code = manifest.code()
    lines = [
        f"CSS code valid: n={code.n}, |X|={code.num_x}, |Z|={code.num_z}",
    ]
    data = {"n": code.n, "num_x": code.num_x, "num_z": code.num_z, "zlift": None}
    lift = manifest.zlift()
    if lift is not None:
        lines.append(
            "integer lift valid, support_preserving="
            f"{str(lift.support_preserving).lower()}"
        )
        data["zlift"] = {"support_preserving": lift.support_preserving}
    return _report("check", lines, **data)


def cmd_params(args) -> dict:
    manifest = load_manifest(args.manifest)
    code = manifest.code()
    params = parameters(code)
    d_field = None
    if args.distance:
        d_value = distance(code, budget=args.budget)
        d_field = d_value
        params = type(params)(n=params.n, k=params.k, d=d_value)
    if params.k == 0 and args.distance:
        label = f"[[{params.n},{params.k},undefined]]"
    else:
        label = params.label()
    return _report(
        "params",
        [f"parameters {label}"],
        parameters=_params_dict(params),
        distance_computed=bool(args.distance),
        distance_undefined=bool(args.distance and params.k == 0),
        budget=args.budget if args.distance else None,
        d=d_field,
    )


def cmd_hgp(args) -> dict:
    h1 = parse_matrix(args.h1, args.format)
    h2 = parse_matrix(args.h2, args.format)
    code = hypergraph_product(h1, h2)
    lift = hpc_naive_zlift(h1, h2)
    pres = hgp_presentation(h1, h2)
    os.makedirs(args.output, exist_ok=True)

    def path(name):
        return os.path.join(args.output, name)

    write_matrix(path("hx.alist"), code.hx, "alist")
    write_matrix(path("hz.alist"), code.hz, "alist")
    write_matrix(path("hx_tilde.txt"), lift.hx_tilde, "dense-int-text")
    write_matrix(path("hz_tilde.txt"), lift.hz_tilde, "dense-int-text")
    save_json(path("presentation.json"), presentation_to_json(pres))
    write_manifest(
        path("manifest.json"),
        {
            "hx": {"path": "hx.alist", "format": "alist"},
            "hz": {"path": "hz.alist", "format": "alist"},
            "hx_tilde": {"path": "hx_tilde.txt", "format": "dense-int-text"},
            "hz_tilde": {"path": "hz_tilde.txt", "format": "dense-int-text"},
            "presentation": "presentation.json",
        },
    )
    params = parameters(code)
    return _report(
        "hgp",
        [
            f"product code n={code.n}, |X|={code.num_x}, |Z|={code.num_z}, k={params.k}",
            f"artifacts written to {args.output}",
        ],
        parameters=_params_dict(params),
        output=args.output,
    )


def cmd_zlift_refute(args) -> dict:
    manifest = load_manifest(args.manifest)
    code = manifest.code()
    result = refute_support_preserving(code, k_max=args.kmax, node_budget=args.budget)
    data = {
        "refuted": result.refuted,
        "modulus_exponent": result.modulus_exponent,
        "checked_up_to": result.checked_up_to,
    }
    return _report("zlift-refute", [result.verdict()], **data)


def cmd_zlift_witness(args) -> dict:
    manifest = load_manifest(args.manifest)
    code = manifest.code()
    witness = support_preserving_witness(
        code, entry_bound=args.bound, node_budget=args.budget
    )
    if witness is None:
        return _report(
            "zlift-witness",
            [f"none found within entry bound {args.bound}"],
            found=False,
            bound=args.bound,
        )
    lines = ["support-preserving integer lift found"]
    if args.output:
        os.makedirs(args.output, exist_ok=True)
        write_matrix(
            os.path.join(args.output, "hx_tilde.txt"), witness.hx_tilde, "dense-int-text"
        )
        write_matrix(
            os.path.join(args.output, "hz_tilde.txt"), witness.hz_tilde, "dense-int-text"
        )
        lines.append(f"artifacts written to {args.output}")
    return _report(
        "zlift-witness",
        lines,
        found=True,
        bound=args.bound,
        hx_tilde=witness.hx_tilde.to_dense().tolist(),
        hz_tilde=witness.hz_tilde.to_dense().tolist(),
    )


def cmd_gz(args) -> dict:
    manifest = load_manifest(args.manifest)
    lift = manifest.zlift()
    if lift is None:
        raise CssLiftError("manifest does not provide an integer lift (hx_tilde/hz_tilde)")
    graph = multigraph_z(lift, args.z)
    if args.seed is None:
        paired = pair_edges(graph, strategy="lexicographic")
    else:
        paired = pair_edges(graph, strategy="seeded", seed=args.seed)
    descriptor = betti_components(paired)
    lines = [
        f"Z-check {args.z}: {len(graph.q_copies)} qubit copies, "
        f"{len(paired.x_copies)} check copies, {len(paired.edges)} edges",
        "components: " + (", ".join(descriptor.labels) or "(empty)"),
    ]
    data = {
        "z": args.z,
        "q_copies": [list(qc) for qc in paired.q_copies],
        "x_copies": [list(xc) for xc in paired.x_copies],
        "edges": [
            {"q_copy": list(u), "x_copy": list(v)} for u, v in paired.edges
        ],
        "betti_numbers": list(descriptor.components),
        "descriptors": list(descriptor.labels),
        "seed": args.seed,
    }
    return _report("gz", lines, **data)


def cmd_lift(args) -> dict:
    manifest = load_manifest(args.manifest)
    code = manifest.code()
    zlift = manifest.zlift()
    if zlift is None:
        raise CssLiftError("manifest does not provide an integer lift (hx_tilde/hz_tilde)")
    pres = _manifest_presentation(manifest, code)
    voltages_path = args.voltages or manifest.voltages_path
    if voltages_path is None:
        raise CssLiftError("no voltage file given (--voltages or manifest)")
    voltages = load_voltages(pres, voltages_path)
    lifted = lift_code(code, zlift, pres, voltages)
    params = parameters(lifted.zlifted.base)
    d_value = None
    if args.distance:
        d_value = distance(lifted.zlifted.base, budget=args.budget)
        params = type(params)(n=params.n, k=params.k, d=d_value)
    lines = [f"lifted code parameters {params.label()}"]
    if args.output:
        os.makedirs(args.output, exist_ok=True)

        def path(name):
            return os.path.join(args.output, name)

        write_matrix(path("hx_tilde.txt"), lifted.zlifted.hx_tilde, "dense-int-text")
        write_matrix(path("hz_tilde.txt"), lifted.zlifted.hz_tilde, "dense-int-text")
        write_matrix(path("hx.alist"), lifted.zlifted.base.hx, "alist")
        write_matrix(path("hz.alist"), lifted.zlifted.base.hz, "alist")
        save_json(
            path("params.json"),
            {
                "schema_version": SCHEMA_VERSION,
                "parameters": _params_dict(params),
            },
        )
        write_manifest(
            path("manifest.json"),
            {
                "hx": {"path": "hx.alist", "format": "alist"},
                "hz": {"path": "hz.alist", "format": "alist"},
                "hx_tilde": {"path": "hx_tilde.txt", "format": "dense-int-text"},
                "hz_tilde": {"path": "hz_tilde.txt", "format": "dense-int-text"},
            },
        )
        lines.append(f"artifacts written to {args.output}")
    return _report(
        "lift",
        lines,
        parameters=_params_dict(params),
        degree=voltages.degree,
        orbits=[list(o) for o in cover_components(voltages, pres)],
    )


def cmd_covers(args) -> dict:
    manifest = load_manifest(args.manifest)
    code = manifest.code()
    pres = _manifest_presentation(manifest, code)
    classes = enumerate_covers(
        pres,
        args.degree,
        connected_only=args.connected,
        node_budget=args.budget,
    )
    lines = [
        f"degree-{args.degree} cover classes"
        + (" (connected only)" if args.connected else "")
        + f": {len(classes)}"
    ]
    voltage_objs = [voltage_to_json(pres, v) for v in classes]
    if args.output:
        os.makedirs(args.output, exist_ok=True)
        for i, obj in enumerate(voltage_objs):
            save_json(os.path.join(args.output, f"voltage_{i:03d}.json"), obj)
        lines.append(f"voltage files written to {args.output}")
    return _report(
        "covers",
        lines,
        degree=args.degree,
        connected_only=bool(args.connected),
        count=len(classes),
        classes=voltage_objs,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csslift",
        description="Exact toolkit for CSS codes, integer lifts, and covers",
    )
    parser.add_argument("--json", action="store_true", help="emit the report as JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="validate a manifest's code and lift")
    p_check.add_argument("manifest")
    p_check.set_defaults(func=cmd_check)

    p_params = sub.add_parser("params", help="compute [[n, k, d]]")
    p_params.add_argument("manifest")
    p_params.add_argument("--distance", action="store_true")
    p_params.add_argument("--budget", type=int, default=DEFAULT_DISTANCE_BUDGET)
    p_params.set_defaults(func=cmd_params)

    p_hgp = sub.add_parser("hgp", help="build a hypergraph product")
    p_hgp.add_argument("h1")
    p_hgp.add_argument("h2")
    p_hgp.add_argument("--format", default="alist", choices=["alist", "dense-text"])
    p_hgp.add_argument("-o", "--output", required=True)
    p_hgp.set_defaults(func=cmd_hgp)

    p_zlift = sub.add_parser("zlift", help="integer-lift searches")
    zsub = p_zlift.add_subparsers(dest="zlift_command", required=True)
    p_refute = zsub.add_parser("refute", help="modular refutation ladder")
    p_refute.add_argument("manifest")
    p_refute.add_argument("--kmax", type=int, default=8)
    p_refute.add_argument("--budget", type=int, default=10_000_000)
    p_refute.set_defaults(func=cmd_zlift_refute)
    p_witness = zsub.add_parser("witness", help="bounded witness search")
    p_witness.add_argument("manifest")
    p_witness.add_argument("--bound", type=int, default=3)
    p_witness.add_argument("--budget", type=int, default=10_000_000)
    p_witness.add_argument("-o", "--output")
    p_witness.set_defaults(func=cmd_zlift_witness)

    p_gz = sub.add_parser("gz", help="per-check paired graph and Betti data")
    p_gz.add_argument("manifest")
    p_gz.add_argument("--z", type=int, required=True)
    p_gz.add_argument("--seed", type=int)
    p_gz.set_defaults(func=cmd_gz)

    p_lift = sub.add_parser("lift", help="lift a code along a voltage file")
    p_lift.add_argument("manifest")
    p_lift.add_argument("--voltages")
    p_lift.add_argument("--distance", action="store_true")
    p_lift.add_argument("--budget", type=int, default=DEFAULT_DISTANCE_BUDGET)
    p_lift.add_argument("-o", "--output")
    p_lift.set_defaults(func=cmd_lift)

    p_covers = sub.add_parser("covers", help="enumerate cover classes")
    p_covers.add_argument("manifest")
    p_covers.add_argument("--degree", type=int, required=True)
    p_covers.add_argument("--connected", action="store_true")
    p_covers.add_argument("--budget", type=int, default=2_000_000)
    p_covers.add_argument("-o", "--output")
    p_covers.set_defaults(func=cmd_covers)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_thread_env()
        report = args.func(args)
    except ParseError as err:
        _fail("parse", err, args)
        return EXIT_PARSE
    except BudgetExceededError as err:
        _fail("budget", err, args)
        return EXIT_BUDGET
    except CssLiftError as err:
        _fail("validation", err, args)
        return EXIT_VALIDATION
    _emit(report, args)
    return EXIT_OK


def _fail(category: str, err: Exception, args) -> None:
    payload = {"error": {"category": category, "message": str(err)}}
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
