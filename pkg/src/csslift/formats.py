"""File formats: alist and dense matrix text, manifests, voltage/presentation JSON.

The alist format is the standard sparse LDPC interchange: a "cols rows"
header, maximum column/row degrees, both degree lists, then 1-based index
blocks per column and per row (zero padding tolerated on input, not
written).  Dense text is a "rows cols" header followed by row-major entries:
0/1 for binary matrices, signed integers for lifts.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from .css import CssCode, new_css
from .errors import ParseError
from .gf2 import BitMatrix
from .intmat import IntMatrix
from .presentation import LiftPresentation, SkeletonEdge
from .cover import VoltageAssignment, identity_perm, invert
from .zlift import ZLiftedCode, validate_zlift

SCHEMA_VERSION = 1

BINARY_FORMATS = ("alist", "dense-text")
INTEGER_FORMATS = ("dense-int-text",)


def _tokens(path: str):
    try:
        with open(path, "r", encoding="ascii") as fh:
            lines = fh.read().splitlines()
    except OSError as err:
        raise ParseError(str(err), path=path)
    return lines


def _ints(line: str, path: str, lineno: int):
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(f"non-integer token in {line!r}", path=path, line=lineno)


def _parse_alist(path: str) -> BitMatrix:
    lines = _tokens(path)

    def need(idx):
        if idx >= len(lines):
            raise ParseError("file truncated", path=path, line=len(lines) + 1)
        return lines[idx]

    header = _ints(need(0), path, 1)
    if len(header) != 2:
        raise ParseError("header must be 'cols rows'", path=path, line=1)
    cols, rows = header
    if cols < 0 or rows < 0:
        raise ParseError("negative dimension", path=path, line=1)
    maxdeg = _ints(need(1), path, 2)
    if len(maxdeg) != 2:
        raise ParseError("expected 'max-col-degree max-row-degree'", path=path, line=2)
    col_deg = _ints(need(2), path, 3)
    row_deg = _ints(need(3), path, 4)
    if len(col_deg) != cols:
        raise ParseError(f"expected {cols} column degrees", path=path, line=3)
    if len(row_deg) != rows:
        raise ParseError(f"expected {rows} row degrees", path=path, line=4)
    dense = np.zeros((rows, cols), dtype=np.uint8)
    for c in range(cols):
        lineno = 5 + c
        entries = [v for v in _ints(need(lineno - 1), path, lineno) if v != 0]
        if len(entries) != col_deg[c]:
            raise ParseError(
                f"column {c} lists {len(entries)} entries, degree says {col_deg[c]}",
                path=path,
                line=lineno,
            )
        for r in entries:
            if not (1 <= r <= rows):
                raise ParseError(
                    f"row index {r} out of range 1..{rows}", path=path, line=lineno
                )
            dense[r - 1, c] = 1
    for r in range(rows):
        lineno = 5 + cols + r
        entries = [v for v in _ints(need(lineno - 1), path, lineno) if v != 0]
        if len(entries) != row_deg[r]:
            raise ParseError(
                f"row {r} lists {len(entries)} entries, degree says {row_deg[r]}",
                path=path,
                line=lineno,
            )
        for c in entries:
            if not (1 <= c <= cols):
                raise ParseError(
                    f"column index {c} out of range 1..{cols}", path=path, line=lineno
                )
            if not dense[r, c - 1]:
                raise ParseError(
                    f"row block disagrees with column blocks at ({r},{c - 1})",
                    path=path,
                    line=lineno,
                )
        if int(dense[r].sum()) != row_deg[r]:
            raise ParseError(
                f"row {r} has {int(dense[r].sum())} entries from column blocks, "
                f"degree says {row_deg[r]}",
                path=path,
                line=lineno,
            )
    return BitMatrix.from_dense(dense)


def _write_alist(path: str, m: BitMatrix) -> None:
    dense = m.to_dense()
    rows, cols = dense.shape
    col_lists = [list(np.nonzero(dense[:, c])[0] + 1) for c in range(cols)]
    row_lists = [list(np.nonzero(dense[r])[0] + 1) for r in range(rows)]
    out = [
        f"{cols} {rows}",
        f"{max((len(x) for x in col_lists), default=0)} "
        f"{max((len(x) for x in row_lists), default=0)}",
        " ".join(str(len(x)) for x in col_lists),
        " ".join(str(len(x)) for x in row_lists),
    ]
    out += [" ".join(str(v) for v in lst) for lst in col_lists]
    out += [" ".join(str(v) for v in lst) for lst in row_lists]
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(out) + "\n")


def _parse_dense(path: str, signed: bool):
    lines = _tokens(path)
    if not lines:
        raise ParseError("empty file", path=path, line=1)
    header = _ints(lines[0], path, 1)
    if len(header) != 2 or header[0] < 0 or header[1] < 0:
        raise ParseError("header must be 'rows cols'", path=path, line=1)
    rows, cols = header
    entries = []
    for i, line in enumerate(lines[1:], start=2):
        entries.extend((v, i) for v in _ints(line, path, i))
    if len(entries) != rows * cols:
        raise ParseError(
            f"expected {rows * cols} entries, found {len(entries)}",
            path=path,
            line=len(lines),
        )
    values = [v for v, _ in entries]
    if not signed:
        bad = next(((v, ln) for (v, ln) in entries if v not in (0, 1)), None)
        if bad is not None:
            raise ParseError(f"binary matrix contains {bad[0]}", path=path, line=bad[1])
    dense = np.array(values, dtype=np.int64).reshape(rows, cols)
    if signed:
        return IntMatrix.from_dense(dense)
    return BitMatrix.from_dense(dense.astype(np.uint8))


def _write_dense(path: str, dense: np.ndarray) -> None:
    rows, cols = dense.shape
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{rows} {cols}\n")
        for r in range(rows):
            fh.write(" ".join(str(int(v)) for v in dense[r]) + "\n")


def parse_matrix(path: str, format: str):
    """Read a matrix; binary formats give BitMatrix, integer ones IntMatrix."""
    if format == "alist":
        return _parse_alist(path)
    if format == "dense-text":
        return _parse_dense(path, signed=False)
    if format == "dense-int-text":
        return _parse_dense(path, signed=True)
    raise ParseError(f"unknown matrix format {format!r}", path=path)


def write_matrix(path: str, matrix, format: str) -> None:
    if format == "alist":
        _write_alist(path, matrix)
    elif format == "dense-text":
        _write_dense(path, matrix.to_dense())
    elif format == "dense-int-text":
        _write_dense(path, matrix.to_dense())
    else:
        raise ParseError(f"unknown matrix format {format!r}", path=path)


# ---------------------------------------------------------------------------
# Manifests.


@dataclass(frozen=True)
class CodeManifest:
    hx: BitMatrix
    hz: BitMatrix
    hx_tilde: IntMatrix | None
    hz_tilde: IntMatrix | None
    presentation_path: str | None
    voltages_path: str | None

    def code(self) -> CssCode:
        return new_css(self.hx, self.hz)

    def zlift(self) -> ZLiftedCode | None:
        if self.hx_tilde is None or self.hz_tilde is None:
            return None
        return validate_zlift(self.code(), self.hx_tilde, self.hz_tilde)


def _matrix_ref(obj, key, base_dir, path, signed=False):
    ref = obj.get(key)
    if ref is None:
        return None
    if not isinstance(ref, dict) or "path" not in ref or "format" not in ref:
        raise ParseError(f"{key} must be {{path, format}}", path=path)
    fmt = ref["format"]
    allowed = INTEGER_FORMATS if signed else BINARY_FORMATS
    if fmt not in allowed:
        raise ParseError(f"{key} format must be one of {allowed}", path=path)
    return parse_matrix(os.path.join(base_dir, ref["path"]), fmt)


def load_manifest(path: str) -> CodeManifest:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as err:
        raise ParseError(str(err), path=path)
    except json.JSONDecodeError as err:
        raise ParseError(f"malformed JSON: {err}", path=path, line=err.lineno)
    base_dir = os.path.dirname(os.path.abspath(path))
    hx = _matrix_ref(obj, "hx", base_dir, path)
    hz = _matrix_ref(obj, "hz", base_dir, path)
    if hx is None or hz is None:
        raise ParseError("manifest needs both hx and hz", path=path)
    hx_tilde = _matrix_ref(obj, "hx_tilde", base_dir, path, signed=True)
    hz_tilde = _matrix_ref(obj, "hz_tilde", base_dir, path, signed=True)
    if (hx_tilde is None) != (hz_tilde is None):
        raise ParseError("hx_tilde and hz_tilde must come together", path=path)
    def opt_path(key):
        val = obj.get(key)
        if val is None:
            return None
        return os.path.join(base_dir, val)

    return CodeManifest(
        hx=hx,
        hz=hz,
        hx_tilde=hx_tilde,
        hz_tilde=hz_tilde,
        presentation_path=opt_path("presentation"),
        voltages_path=opt_path("voltages"),
    )


def write_manifest(path: str, entries: dict) -> None:
    payload = {"schema_version": SCHEMA_VERSION}
    payload.update(entries)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# Voltage files.


def voltage_to_json(p: LiftPresentation, v: VoltageAssignment) -> dict:
    ident = identity_perm(v.degree)
    edges = []
    for eid in sorted(v.perms):
        perm = tuple(v.perms[eid])
        if perm == ident:
            continue
        e = p.edges[eid]
        edges.append(
            {"from": e.u, "to": e.v, "parallel": e.parallel, "perm": list(perm)}
        )
    return {"schema_version": SCHEMA_VERSION, "degree": v.degree, "edges": edges}


def voltage_from_json(p: LiftPresentation, obj: dict, path: str | None = None) -> VoltageAssignment:
    if "degree" not in obj:
        raise ParseError("voltage file lacks 'degree'", path=path)
    degree = obj["degree"]
    if not isinstance(degree, int) or degree < 1:
        raise ParseError(f"bad degree {degree!r}", path=path)
    lookup = {}
    for eid, e in enumerate(p.edges):
        lookup[(e.u, e.v, e.parallel)] = eid
    perms = {}
    for i, entry in enumerate(obj.get("edges", [])):
        try:
            u, v_, parallel = entry["from"], entry["to"], entry.get("parallel", 0)
            perm = tuple(int(x) for x in entry["perm"])
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"malformed voltage edge entry {i}", path=path)
        if (u, v_, parallel) in lookup:
            eid = lookup[(u, v_, parallel)]
        elif (v_, u, parallel) in lookup:
            eid = lookup[(v_, u, parallel)]
            perm = invert(perm)
        else:
            raise ParseError(
                f"voltage entry {i} references unknown edge ({u},{v_},{parallel})",
                path=path,
            )
        if len(perm) != degree:
            raise ParseError(
                f"voltage entry {i} has length {len(perm)}, degree is {degree}",
                path=path,
            )
        perms[eid] = perm
    return VoltageAssignment(degree=degree, perms=perms)


def load_voltages(p: LiftPresentation, path: str) -> VoltageAssignment:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as err:
        raise ParseError(str(err), path=path)
    except json.JSONDecodeError as err:
        raise ParseError(f"malformed JSON: {err}", path=path, line=err.lineno)
    return voltage_from_json(p, obj, path=path)


# ---------------------------------------------------------------------------
# Presentation files.


def presentation_to_json(p: LiftPresentation) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": p.kind,
        "num_x": p.num_x,
        "num_q": p.num_q,
        "num_apex": p.num_apex,
        "edges": [
            {
                "from": e.u,
                "to": e.v,
                "kind": e.kind,
                "parallel": e.parallel,
                "x": e.x,
                "q": e.q,
                "z": e.z,
            }
            for e in p.edges
        ],
        "tree_edges": sorted(p.tree_edges),
        "relators": {
            str(z): [[[eid, d] for eid, d in relator] for relator in relators]
            for z, relators in sorted(p.relators.items())
        },
        "z_basepoint": {str(z): bp for z, bp in sorted(p.z_basepoint.items())},
        "z_tree": {str(z): sorted(ids) for z, ids in sorted(p.z_tree.items())},
        "meta": {k: list(v) if isinstance(v, tuple) else v for k, v in p.meta.items()},
    }


def presentation_from_json(obj: dict, path: str | None = None) -> LiftPresentation:
    try:
        edges = tuple(
            SkeletonEdge(
                u=e["from"],
                v=e["to"],
                kind=e["kind"],
                parallel=e["parallel"],
                x=e.get("x"),
                q=e.get("q"),
                z=e.get("z"),
            )
            for e in obj["edges"]
        )
        relators = {
            int(z): tuple(tuple((eid, d) for eid, d in relator) for relator in rels)
            for z, rels in obj["relators"].items()
        }
        meta = {
            k: tuple(v) if isinstance(v, list) else v
            for k, v in obj.get("meta", {}).items()
        }
        return LiftPresentation(
            kind=obj["kind"],
            num_x=obj["num_x"],
            num_q=obj["num_q"],
            num_apex=obj["num_apex"],
            edges=edges,
            tree_edges=frozenset(obj["tree_edges"]),
            generators=tuple(
                eid for eid in range(len(edges)) if eid not in set(obj["tree_edges"])
            ),
            relators=relators,
            z_basepoint={int(z): bp for z, bp in obj["z_basepoint"].items()},
            z_tree={int(z): frozenset(ids) for z, ids in obj["z_tree"].items()},
            meta=meta,
        )
    except (KeyError, TypeError, ValueError) as err:
        raise ParseError(f"malformed presentation: {err}", path=path)


def load_presentation(path: str) -> LiftPresentation:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as err:
        raise ParseError(str(err), path=path)
    except json.JSONDecodeError as err:
        raise ParseError(f"malformed JSON: {err}", path=path, line=err.lineno)
    return presentation_from_json(obj, path=path)


def save_json(path: str, obj: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
