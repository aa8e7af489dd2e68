"""Text formats for systems, loops, factor systems, operators and reports.

System file: first line ``v b``, then b lines of three 0-based point labels,
each line ascending, lines in lexicographic order. Lines starting with ``#``
are comments and are ignored on read.

Loop and block files use the element labels ``W`` (identity) and the point
labels 0..v-1 for the rest, matching the carrier convention point i <->
element i+1.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .design_core import SteinerLoop, TripleSystem
from .errors import FormatError
from .schreier import ClassificationReport, FactorSystem
from .steiner_operator import LatinSquare, SteinerOperator


def _data_lines(text: str):
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            yield line


def _label(e: int) -> str:
    return "W" if e == 0 else str(e - 1)


def _unlabel(tok: str, n: int) -> int:
    if tok == "W":
        return 0
    try:
        e = int(tok) + 1
    except ValueError as exc:
        raise FormatError(f"bad element label {tok!r}") from exc
    if not 1 <= e < n:
        raise FormatError(f"element label {tok!r} out of range")
    return e


# -- systems -----------------------------------------------------------------


def render_system(s: TripleSystem, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{s.v} {s.b}")
    lines.extend(" ".join(str(x) for x in t) for t in s.triples)
    return "\n".join(lines) + "\n"


def parse_system(text: str) -> TripleSystem:
    lines = list(_data_lines(text))
    if not lines:
        raise FormatError("empty system file")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError("first line must be 'v b'")
    try:
        v, b = int(head[0]), int(head[1])
    except ValueError as exc:
        raise FormatError("first line must be 'v b'") from exc
    if len(lines) - 1 != b:
        raise FormatError(f"expected {b} triple lines, found {len(lines) - 1}")
    triples = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"triple line needs three labels: {line!r}")
        try:
            triples.append(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise FormatError(f"bad point label in {line!r}") from exc
    return TripleSystem(v, triples)


def write_system(s: TripleSystem, path, comments=()):
    Path(path).write_text(render_system(s, comments))


def read_system(path) -> TripleSystem:
    return parse_system(Path(path).read_text())


# -- loops --------------------------------------------------------------------


def render_loop_csv(loop: SteinerLoop) -> str:
    table = loop.require_table()
    labels = [_label(e) for e in range(loop.n)]
    lines = ["," + ",".join(labels)]
    for x in range(loop.n):
        lines.append(labels[x] + "," + ",".join(_label(int(e)) for e in table[x]))
    return "\n".join(lines) + "\n"


def parse_loop_csv(text: str) -> SteinerLoop:
    lines = list(_data_lines(text))
    if not lines:
        raise FormatError("empty loop file")
    header = lines[0].split(",")
    n = len(header) - 1
    if n < 2 or header[0] != "" or len(lines) != n + 1:
        raise FormatError("loop file must be an (n+1) x (n+1) labeled table")
    table = np.empty((n, n), dtype=np.int32)
    for x, line in enumerate(lines[1:]):
        parts = line.split(",")
        if len(parts) != n + 1:
            raise FormatError(f"row {x} has {len(parts) - 1} entries, expected {n}")
        if _unlabel(parts[0], n) != x:
            raise FormatError(f"row label {parts[0]!r} out of order")
        table[x] = [_unlabel(tok, n) for tok in parts[1:]]
    return SteinerLoop(table)


def write_loop_csv(loop: SteinerLoop, path):
    Path(path).write_text(render_loop_csv(loop))


def read_loop_csv(path) -> SteinerLoop:
    return parse_loop_csv(Path(path).read_text())


# -- factor systems -------------------------------------------------------------


def render_factor_system(f: FactorSystem) -> str:
    lines = [f"{f.q_system.v} {f.t}"]
    for tri, val in zip(f.q_system.triples, f.values):
        bits = "".join(str((val >> c) & 1) for c in range(f.t))
        lines.append(f"{tri[0]} {tri[1]} {tri[2]} {bits}".rstrip())
    return "\n".join(lines) + "\n"


def parse_factor_system(text: str, q: SteinerLoop) -> FactorSystem:
    lines = list(_data_lines(text))
    if not lines:
        raise FormatError("empty factor-system file")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError("first line must be 'w t'")
    w, t = int(head[0]), int(head[1])
    qs = q.system()
    if w != qs.v:
        raise FormatError(f"file order {w} does not match the quotient order {qs.v}")
    if len(lines) - 1 != qs.b:
        raise FormatError(f"expected {qs.b} value lines, found {len(lines) - 1}")
    values = []
    for idx, line in enumerate(lines[1:]):
        parts = line.split()
        if len(parts) != (4 if t else 3):
            raise FormatError(f"bad value line {line!r}")
        tri = tuple(int(p) for p in parts[:3])
        if tri != qs.triples[idx]:
            raise FormatError(
                f"line {idx + 2}: triple {tri} out of canonical order ({qs.triples[idx]})"
            )
        bits = parts[3] if t else ""
        if len(bits) != t or any(c not in "01" for c in bits):
            raise FormatError(f"bad value bits {bits!r}")
        values.append(sum((bits[c] == "1") << c for c in range(t)))
    return FactorSystem(q, t, values)


def write_factor_system(f: FactorSystem, path):
    Path(path).write_text(render_factor_system(f))


def read_factor_system(path, q: SteinerLoop) -> FactorSystem:
    return parse_factor_system(Path(path).read_text(), q)


# -- latin squares and operators -------------------------------------------------


def render_square(square) -> str:
    entries = square.entries if isinstance(square, LatinSquare) else np.asarray(square)
    return "\n".join(" ".join(_label(int(e)) for e in row) for row in entries) + "\n"


def parse_square(text: str) -> LatinSquare:
    rows = []
    for line in _data_lines(text):
        rows.append(line.split())
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise FormatError("square file must hold an n x n table")
    return LatinSquare([[_unlabel(tok, n) for tok in row] for row in rows])


def write_square(square, path):
    Path(path).write_text(render_square(square))


def read_square(path) -> LatinSquare:
    return parse_square(Path(path).read_text())


def render_operator(op: SteinerOperator) -> str:
    m, k = op.q.n, op.n_loop.n
    lines = [f"{m} {k}"]
    for p in range(m):
        for r in range(m):
            lines.append(f"# block {p} {r}")
            for x in range(k):
                lines.append(" ".join(_label(int(e)) for e in op.blocks[p, r, x]))
    return "\n".join(lines) + "\n"


def parse_operator(text: str, q: SteinerLoop, n_loop: SteinerLoop) -> SteinerOperator:
    lines = list(_data_lines(text))
    if not lines:
        raise FormatError("empty operator file")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError("first line must be 'm n'")
    m, k = int(head[0]), int(head[1])
    if m != q.n or k != n_loop.n:
        raise FormatError("operator header does not match the given loops")
    body = lines[1:]
    if len(body) != m * m * k:
        raise FormatError(f"expected {m * m * k} block rows, found {len(body)}")
    blocks = np.empty((m, m, k, k), dtype=np.int32)
    pos = 0
    for p in range(m):
        for r in range(m):
            for x in range(k):
                parts = body[pos].split()
                pos += 1
                if len(parts) != k:
                    raise FormatError(f"block ({p},{r}) row {x} needs {k} labels")
                blocks[p, r, x] = [_unlabel(tok, k) for tok in parts]
    return SteinerOperator(q, n_loop, blocks)


def write_operator(op: SteinerOperator, path):
    Path(path).write_text(render_operator(op))


def read_operator(path, q: SteinerLoop, n_loop: SteinerLoop) -> SteinerOperator:
    return parse_operator(Path(path).read_text(), q, n_loop)


# -- classification reports -------------------------------------------------------


def report_to_dict(rep: ClassificationReport) -> dict:
    classes = []
    for i, vals in enumerate(rep.class_reps):
        alpha, beta = rep.witnesses[i]
        classes.append(
            {
                "rep": list(vals),
                "orbit": rep.orbit_of_class[i],
                "witness": {"alpha": list(alpha), "beta": list(beta)},
            }
        )
    return {
        "schema": 1,
        "t": rep.t,
        "q_order": rep.q_order,
        "b": rep.b,
        "total": rep.total,
        "hom_count": rep.hom_count,
        "b2_count": rep.b2_count,
        "equivalence_class_count": rep.equivalence_class_count,
        "isomorphism_class_count": rep.isomorphism_class_count,
        "classes": classes,
        "orbit_reps": [list(v) for v in rep.orbit_reps],
    }


def render_report_json(rep: ClassificationReport) -> str:
    return json.dumps(report_to_dict(rep), sort_keys=True, indent=2) + "\n"
