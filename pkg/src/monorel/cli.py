"""Command-line front door.

Subcommands: classify, eval, extend, mrt (membership in the monotonically
related set), sum (sum composition), gossez, oracle.  Exit codes: 0 on
success, 1 on malformed input, 2 on an internal invariant breach.
Reports are deterministic given identical inputs and seeds.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .exact import q, qstr
from .doublecone import (
    EmptyPositivePartError,
    SkewBasisError,
    dc_classify,
    dc_fitz_eval,
    dc_in_plus,
    dc_is_monotone,
    dc_lin_hull,
    dc_sigma_sq,
)
from .gossez import check_identities, gossez_apply
from .linsub import (
    InternalInvariantError,
    NotMonotoneError,
    classify,
    extend_maximal,
    fitz_eval,
    in_plus,
    is_monotone,
    penot_eval,
    sum_composition,
)
from .oracle import (
    InfeasibleError,
    OracleError,
    ProbeConfig,
    oracle_maximal_probe,
    oracle_monotone_pairs,
    oracle_penot_cone,
    sample_in_span,
    sample_scalar,
)
from .pairing import DimensionMismatchError, cval
from .problems import (
    ProblemFormatError,
    classification_json,
    fitz_json,
    parse_point,
    parse_problem_file,
    parse_seq,
    render_report,
)

INPUT_ERRORS = (
    ProblemFormatError,
    DimensionMismatchError,
    NotMonotoneError,
    SkewBasisError,
    EmptyPositivePartError,
    InfeasibleError,
    FileNotFoundError,
    IsADirectoryError,
    PermissionError,
)


def _cfg(args, default_samples: int = 1000) -> ProbeConfig:
    return ProbeConfig(
        seed=args.seed,
        samples=args.samples if args.samples is not None else default_samples,
        grid_radius=q(args.grid_radius),
    )


def _rows_json(rows) -> list:
    return [[qstr(e) for e in r] for r in rows]


def cmd_classify(args) -> dict:
    pf = parse_problem_file(args.file)
    if pf.kind == "subspace":
        sub = pf.subspace()
        rep = classify(sub)
        doc = {
            "kind": "subspace",
            "n": pf.n,
            "dim": sub.dim,
            "basis": _rows_json(sub.rows),
            "flags": classification_json(rep),
        }
    elif pf.kind == "doublecone":
        cone = pf.cone()
        rep = dc_classify(
            cone,
            seed=args.seed,
            samples=args.samples if args.samples is not None else 10000,
        )
        hull = dc_lin_hull(cone)
        doc = {
            "kind": "doublecone",
            "n": pf.n,
            "generators": len(cone.pos) + len(cone.zero) + len(cone.neg),
            "skew_dim": cone.skew.dim,
            "hull_dim": hull.dim,
            "hull_monotone": is_monotone(hull),
            "flags": classification_json(rep),
        }
        if not is_monotone(hull):
            from .linsub import negative_witness
            from .problems import _witness_json

            doc["hull_witness"] = _witness_json(negative_witness(hull))
    else:
        raise ProblemFormatError("classify takes a subspace or doublecone file")
    return doc


def cmd_eval(args) -> dict:
    pf = parse_problem_file(args.file)
    z = parse_point(args.point, pf.n)
    doc = {
        "kind": pf.kind,
        "which": args.which,
        "point": [qstr(e) for e in z.vec()],
        "cval": qstr(cval(z)),
    }
    if pf.kind == "subspace":
        sub = pf.subspace()
        if args.which == "fitz":
            v = fitz_eval(sub, z)
        elif args.which == "penot":
            v = penot_eval(sub, z)
        else:
            v = fitz_eval(sub, z)
            if v.is_finite:
                from .linsub import FitzValue

                v = FitzValue.finite(4 * v.value)
        doc["value"] = fitz_json(v)
        doc["in_domain"] = v.is_finite
        doc["in_set"] = sub.contains(z)
    elif pf.kind == "doublecone":
        cone = pf.cone()
        if args.which == "fitz":
            v = dc_fitz_eval(cone, z)
            doc["value"] = fitz_json(v)
            doc["in_domain"] = v.is_finite
        elif args.which == "sigma":
            v = dc_sigma_sq(cone, z)
            doc["value"] = fitz_json(v)
            doc["in_domain"] = v.is_finite
        else:
            shaped = cone.point_set_is_subspace()
            if shaped is not None:
                v = penot_eval(shaped, z)
                doc["value"] = fitz_json(v)
                doc["exact"] = True
            else:
                try:
                    approx = oracle_penot_cone(cone, z, _cfg(args))
                    doc["value"] = repr(approx)
                except InfeasibleError:
                    doc["value"] = "inf"
                doc["exact"] = False
                doc["note"] = "gauge-squared value approximated by linear programming"
        doc["in_set"] = cone.contains(z)
    else:
        raise ProblemFormatError("eval takes a subspace or doublecone file")
    return doc


def cmd_extend(args) -> dict:
    pf = parse_problem_file(args.file)
    if pf.kind != "subspace":
        raise ProblemFormatError("extend takes a subspace file")
    sub = pf.subspace()
    if not is_monotone(sub):
        raise NotMonotoneError("input subspace is not monotone")
    ext = extend_maximal(sub)
    rep = classify(ext)
    if not rep.maximal.value:
        raise InternalInvariantError("extension failed the maximality check")
    return {
        "kind": "subspace",
        "n": pf.n,
        "input_dim": sub.dim,
        "basis": _rows_json(ext.rows),
        "dim": ext.dim,
        "contains_input": ext.contains_subspace(sub),
        "flags": classification_json(rep),
    }


def cmd_mrt(args) -> dict:
    pf = parse_problem_file(args.file)
    z = parse_point(args.point, pf.n)
    doc = {
        "kind": pf.kind,
        "point": [qstr(e) for e in z.vec()],
        "cval": qstr(cval(z)),
    }
    if pf.kind == "subspace":
        sub = pf.subspace()
        doc["in_plus"] = in_plus(sub, z)
        doc["fitz"] = fitz_json(fitz_eval(sub, z))
    elif pf.kind == "doublecone":
        cone = pf.cone()
        doc["in_plus"] = dc_in_plus(cone, z)
        doc["fitz"] = fitz_json(dc_fitz_eval(cone, z))
    else:
        raise ProblemFormatError("mrt takes a subspace or doublecone file")
    return doc


def cmd_sum(args) -> dict:
    pf = parse_problem_file(args.file)
    if pf.kind != "sum":
        raise ProblemFormatError("sum takes a 'kind sum' file")
    m_space, n_space, a = pf.sum_parts()
    composed = sum_composition(m_space, n_space, a)
    rep = classify(composed)
    return {
        "kind": "sum",
        "n": pf.n,
        "m": pf.m,
        "basis": _rows_json(composed.rows),
        "dim": composed.dim,
        "flags": classification_json(rep),
        "note": (
            "for subspaces the domain qualification holds automatically in "
            "finite dimension, so maximality and uniqueness of the "
            "composition are equivalent"
        ),
    }


def cmd_gossez(args) -> dict:
    if args.action == "apply":
        x = parse_seq(args.pairs)
        y = gossez_apply(x)
        return {
            "action": "apply",
            "input": [f"{i}:{qstr(v)}" for i, v in x.support],
            "head": [qstr(h) for h in y.head],
            "tail": qstr(y.tail),
        }
    x = parse_seq(args.x or [])
    v = parse_seq(args.v or [])
    checks = check_identities(x, v)
    return {
        "action": "identities",
        "x": [f"{i}:{qstr(c)}" for i, c in x.support],
        "v": [f"{i}:{qstr(c)}" for i, c in v.support],
        "checks": {
            ch.name: {
                "residual": None if ch.residual is None else qstr(ch.residual),
                "holds": ch.holds,
                "note": ch.note,
            }
            for ch in checks
        },
        "all_hold": all(ch.holds for ch in checks),
    }


def cmd_oracle(args) -> dict:
    pf = parse_problem_file(args.file)
    cfg = _cfg(args)
    doc = {"kind": pf.kind, "seed": cfg.seed, "samples": cfg.samples}
    if pf.kind == "subspace":
        sub = pf.subspace()

        def source(rng):
            return sample_in_span(rng, sub, cfg)

        pr = oracle_monotone_pairs(source, cfg)
        doc["monotone_pairs"] = _probe_json(pr)
        doc["monotone_exact"] = is_monotone(sub)
        if is_monotone(sub):
            mx = oracle_maximal_probe(sub, cfg)
            doc["maximal_probe"] = _probe_json(mx)
    elif pf.kind == "doublecone":
        cone = pf.cone()
        members = cone.members()

        def source(rng):
            pick = rng.randrange(len(members) + 1) if members else 0
            if members and pick < len(members):
                return members[pick].scale(sample_scalar(rng, cfg))
            return sample_in_span(rng, cone.skew, cfg)

        pr = oracle_monotone_pairs(source, cfg)
        doc["monotone_pairs"] = _probe_json(pr)
        doc["monotone_exact"] = dc_is_monotone(cone)
    else:
        raise ProblemFormatError("oracle takes a subspace or doublecone file")
    return doc


def _probe_json(pr) -> dict:
    from .problems import _witness_json

    return {
        "passed": pr.passed,
        "checked": pr.checked,
        "witness": _witness_json(pr.witness),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monorel",
        description=(
            "Exact classification of linear monotone subspaces and finitely "
            "generated monotone double-cones"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--seed", type=int, default=0, help="probe seed")
        p.add_argument("--samples", type=int, default=None, help="probe sample count")
        p.add_argument(
            "--grid-radius",
            default="4",
            help="rational coordinate bound for probe grids (p/q)",
        )

    p = sub.add_parser("classify", help="seven-flag classification report")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("eval", help="evaluate fitz / penot / sigma^2 at a point")
    p.add_argument("file")
    p.add_argument("point", help="2n comma- or space-separated rationals")
    p.add_argument("--which", choices=("fitz", "penot", "sigma"), default="fitz")
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("extend", help="maximal monotone linear extension")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("mrt", help="membership in the monotonically related set")
    p.add_argument("file")
    p.add_argument("point")
    common(p)
    p.set_defaults(func=cmd_mrt)

    p = sub.add_parser("sum", help="sum composition M + A^T N A")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("gossez", help="sequence-operator identities")
    gsub = p.add_subparsers(dest="action", required=True)
    ga = gsub.add_parser("apply", help="apply the operator to index:value pairs")
    ga.add_argument("pairs", nargs="*", help="entries like 1:1 2:-1/2")
    common(ga)
    ga.set_defaults(func=cmd_gossez, action="apply")
    gi = gsub.add_parser("identities", help="check the defining identities")
    gi.add_argument("--x", nargs="*", help="entries of x")
    gi.add_argument("--v", nargs="*", help="entries of v")
    common(gi)
    gi.set_defaults(func=cmd_gossez, action="identities")

    p = sub.add_parser("oracle", help="brute-force probes for a problem file")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InternalInvariantError, OracleError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render_report(doc, args.json))
    return 0


if __name__ == "__main__":
    sys.exit(main())
