"""Line-based problem files and structured reports.

A problem file is hand-authorable text: a ``kind`` header plus payload
lines of rational entries (``p/q`` or integers), e.g.::

    kind subspace          kind doublecone        kind sum
    n 1                    n 2                    n 1
    basis 1 1              skew 1 0 0 0           m 1
                           gen 0 1 1 1            mrow 1 1
                                                  nrow 1 1
                                                  arow 1

Rows are vectors of length 2n (primal half then dual half); ``arow`` rows
form the m x n linear map of a sum composition.  Writing a parsed file back
out reproduces canonical files byte-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .exact import Mat, q, qstr, vec
from .doublecone import FinGenDoubleCone
from .linsub import ClassificationReport, FitzValue, Verdict
from .pairing import Point, Subspace

KINDS = ("subspace", "doublecone", "sum")


class ProblemFormatError(ValueError):
    """Malformed problem file or point/sequence literal."""


@dataclass(frozen=True)
class ProblemFile:
    kind: str
    n: int
    m: int = 0
    rows: tuple = ()  # subspace basis rows
    skew_rows: tuple = ()
    gen_rows: tuple = ()
    m_rows: tuple = ()
    n_rows: tuple = ()
    a_rows: tuple = ()

    def subspace(self) -> Subspace:
        return Subspace.from_vectors(self.n, self.rows)

    def cone(self) -> FinGenDoubleCone:
        gens = [Point.from_vec(v) for v in self.gen_rows]
        return FinGenDoubleCone.of(self.n, self.skew_rows, gens)

    def sum_parts(self) -> tuple:
        m_space = Subspace.from_vectors(self.n, self.m_rows)
        n_space = Subspace.from_vectors(self.m, self.n_rows)
        a = Mat.from_rows(self.a_rows, ncols=self.n)
        return m_space, n_space, a


def _parse_rationals(parts: Sequence[str], where: str) -> tuple:
    try:
        return vec(parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise ProblemFormatError(f"bad rational in {where}: {exc}") from exc


def parse_problem_text(text: str) -> ProblemFile:
    kind = None
    n = None
    m = None
    rows, skew_rows, gen_rows, m_rows, n_rows, a_rows = [], [], [], [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *rest = line.split()
        where = f"line {lineno}"
        if tag == "kind":
            if len(rest) != 1 or rest[0] not in KINDS:
                raise ProblemFormatError(f"{where}: kind must be one of {KINDS}")
            kind = rest[0]
        elif tag == "n":
            n = _parse_count(rest, where)
        elif tag == "m":
            m = _parse_count(rest, where)
        elif tag == "basis":
            rows.append(_parse_rationals(rest, where))
        elif tag == "skew":
            skew_rows.append(_parse_rationals(rest, where))
        elif tag == "gen":
            gen_rows.append(_parse_rationals(rest, where))
        elif tag == "mrow":
            m_rows.append(_parse_rationals(rest, where))
        elif tag == "nrow":
            n_rows.append(_parse_rationals(rest, where))
        elif tag == "arow":
            a_rows.append(_parse_rationals(rest, where))
        else:
            raise ProblemFormatError(f"{where}: unknown tag {tag!r}")
    if kind is None:
        raise ProblemFormatError("missing 'kind' header")
    if n is None or n < 1:
        raise ProblemFormatError("missing or non-positive 'n'")
    expected = 2 * n
    if kind == "subspace":
        _check_widths(rows, expected, "basis")
        if skew_rows or gen_rows or m_rows or n_rows or a_rows:
            raise ProblemFormatError("subspace files take only 'basis' rows")
    elif kind == "doublecone":
        _check_widths(skew_rows, expected, "skew")
        _check_widths(gen_rows, expected, "gen")
        if rows or m_rows or n_rows or a_rows:
            raise ProblemFormatError("doublecone files take 'skew'/'gen' rows")
    else:
        if m is None or m < 1:
            raise ProblemFormatError("sum files need a positive 'm'")
        _check_widths(m_rows, 2 * n, "mrow")
        _check_widths(n_rows, 2 * m, "nrow")
        _check_widths(a_rows, n, "arow")
        if len(a_rows) != m:
            raise ProblemFormatError(f"need exactly m = {m} 'arow' rows")
        if rows or skew_rows or gen_rows:
            raise ProblemFormatError("sum files take 'mrow'/'nrow'/'arow' rows")
    return ProblemFile(
        kind=kind,
        n=n,
        m=m or 0,
        rows=tuple(rows),
        skew_rows=tuple(skew_rows),
        gen_rows=tuple(gen_rows),
        m_rows=tuple(m_rows),
        n_rows=tuple(n_rows),
        a_rows=tuple(a_rows),
    )


def _parse_count(rest: Sequence[str], where: str) -> int:
    if len(rest) != 1 or not rest[0].lstrip("-").isdigit():
        raise ProblemFormatError(f"{where}: expected a single integer")
    return int(rest[0])


def _check_widths(rows, width: int, tag: str) -> None:
    for r in rows:
        if len(r) != width:
            raise ProblemFormatError(
                f"'{tag}' rows must have {width} entries, got {len(r)}"
            )


def parse_problem_file(path: str) -> ProblemFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_problem_text(fh.read())


def _fmt_row(tag: str, row) -> str:
    return tag + " " + " ".join(qstr(e) for e in row)


def write_problem_text(pf: ProblemFile) -> str:
    lines = [f"kind {pf.kind}", f"n {pf.n}"]
    if pf.kind == "subspace":
        lines += [_fmt_row("basis", r) for r in pf.rows]
    elif pf.kind == "doublecone":
        lines += [_fmt_row("skew", r) for r in pf.skew_rows]
        lines += [_fmt_row("gen", r) for r in pf.gen_rows]
    else:
        lines.insert(2, f"m {pf.m}")
        lines += [_fmt_row("mrow", r) for r in pf.m_rows]
        lines += [_fmt_row("nrow", r) for r in pf.n_rows]
        lines += [_fmt_row("arow", r) for r in pf.a_rows]
    return "\n".join(lines) + "\n"


def subspace_problem(sub: Subspace) -> ProblemFile:
    return ProblemFile(kind="subspace", n=sub.n, rows=sub.rows)


# --------------------------------------------------------------------------
# Point / sequence literals


def parse_point(literal: str, n: int) -> Point:
    parts = [p for p in literal.replace(",", " ").split() if p]
    if len(parts) != 2 * n:
        raise ProblemFormatError(
            f"point needs {2 * n} entries (primal then dual), got {len(parts)}"
        )
    v = _parse_rationals(parts, "point literal")
    return Point.from_vec(v)


def parse_seq(pairs: Sequence[str]):
    from .gossez import FinSeq

    out = []
    for item in pairs:
        for chunk in item.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            if ":" not in chunk:
                raise ProblemFormatError(f"sequence entry {chunk!r} is not index:value")
            idx, val = chunk.split(":", 1)
            try:
                out.append((int(idx), q(val)))
            except (ValueError, ZeroDivisionError) as exc:
                raise ProblemFormatError(f"bad sequence entry {chunk!r}: {exc}") from exc
    return FinSeq.of(out)


# --------------------------------------------------------------------------
# Report serialization


def _witness_json(w) -> Optional[object]:
    if w is None:
        return None
    if isinstance(w, Point):
        return {"x": [qstr(e) for e in w.x], "y": [qstr(e) for e in w.y]}
    if isinstance(w, tuple):
        return [_witness_json(e) for e in w]
    return str(w)


def verdict_json(v: Verdict) -> dict:
    return {
        "value": v.value,
        "tier": v.tier,
        "criterion": v.criterion,
        "witness": _witness_json(v.witness),
    }


def classification_json(rep: ClassificationReport) -> dict:
    return {name: verdict_json(v) for name, v in rep.flags().items()}


def fitz_json(v: FitzValue) -> str:
    return "inf" if not v.is_finite else qstr(v.value)


def render_report(doc: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return _render_text(doc) + "\n"


def _render_text(doc: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for key in doc:
        val = doc[key]
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_render_text(val, indent + 1))
        elif isinstance(val, list):
            lines.append(f"{pad}{key}: {json.dumps(val)}")
        else:
            lines.append(f"{pad}{key}: {val}")
    return "\n".join(lines)
