"""Command-line surface.

Subcommands wrap the library operations one-to-one: ``length``,
``sequence``, ``fit``, ``genfun``, ``limit``, ``finite``, ``graph-check``,
``volume``, and ``report`` (which renders matplotlib figures next to the
delimited output).  All numeric output is exact: fractions are serialized
as "p/q" strings, never floats, except the explicitly approximate growth
trend, printed with 12 significant digits.

Exit codes: 0 success, 1 usage/parse, 2 resource caps, 3 internal
consistency failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import asymptotics, dsl, graphs, takayama
from .errors import (
    CertificateError,
    CohomlenError,
    ConsistencyError,
    ParseError,
    ResourceLimitError,
)
from .homology import FieldSpec
from .ideals import (
    IdealFamily,
    integral_closure_family,
    powers_family,
    saturated_powers_family,
)
from .polyhedra import newton_polyhedron, nc_membership, strictly_inside
from .takayama import INFINITE


class _UsageError(CohomlenError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _read_source(value: str, kind: str) -> str:
    if ";" in value:
        return value
    path = Path(value)
    if not path.exists():
        raise _UsageError(f"{kind} source {value!r} is neither inline DSL nor a file")
    return path.read_text()


def _load_ideal(args):
    if not args.ideal:
        raise _UsageError("this command needs --ideal")
    return dsl.parse_ideal(_read_source(args.ideal, "ideal"))


def _load_graph(args):
    if not args.graph:
        raise _UsageError("this command needs --graph")
    return dsl.parse_graph(_read_source(args.graph, "graph"))


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise _UsageError(f"bad n range {text!r}")
    return lo, hi


def _family(args, ideal) -> IdealFamily:
    kind = getattr(args, "family", "powers")
    if kind == "powers":
        return powers_family(ideal)
    if kind == "sat":
        return saturated_powers_family(ideal)
    if kind == "intclosure":
        return integral_closure_family(ideal)
    raise _UsageError(f"unknown family {kind!r}")


def _frac(x) -> str:
    return str(Fraction(x))


def _entry_jsonable(n: int, result: takayama.LengthResult) -> dict:
    out: dict = {"n": n}
    if result.is_finite:
        out["length"] = result.value
        out["support"] = [[list(deg), dim] for deg, dim in (result.support or ())]
    else:
        out["length"] = "infinite"
        out["support"] = None
    return out


def _emit(args, payload: dict, csv_rows: list[str] | None = None) -> None:
    if args.format == "csv":
        if csv_rows is None:
            raise _UsageError("this command has no CSV form; use --format json")
        text = "\n".join(csv_rows) + "\n"
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _sequence(args, ideal):
    lo, hi = _parse_range(args.n)
    if lo != 1:
        raise _UsageError("sequences start at n = 1; use --n 1..N")
    fam = _family(args, ideal)
    return asymptotics.length_sequence(
        fam, args.i, hi, FieldSpec(args.char), threads=args.threads
    )


def cmd_length(args):
    ideal = _load_ideal(args)
    lo, hi = _parse_range(args.n)
    if lo != hi:
        raise _UsageError("length takes a single --n value")
    fam = _family(args, ideal)
    member = None
    from .ideals import family_member

    member = family_member(fam, lo)
    result = takayama.total_length(member, args.i, FieldSpec(args.char))
    payload = {"command": "length", "i": args.i, **_entry_jsonable(lo, result)}
    rows = [f"{lo},{'infinite' if not result.is_finite else result.value}"]
    _emit(args, payload, rows)
    return 0


def cmd_sequence(args):
    ideal = _load_ideal(args)
    seq = _sequence(args, ideal)
    payload = {
        "command": "sequence",
        "i": args.i,
        "family": args.family,
        "entries": [_entry_jsonable(n, r) for n, r in seq.entries],
    }
    rows = [
        f"{n},{'infinite' if not r.is_finite else r.value}" for n, r in seq.entries
    ]
    _emit(args, payload, rows)
    return 0


def _fit(args, seq):
    max_degree = args.max_degree if args.max_degree is not None else seq.dim
    return asymptotics.fit_quasipolynomial(
        seq, max_degree=max_degree, max_period=args.max_period
    )


def cmd_fit(args):
    ideal = _load_ideal(args)
    seq = _sequence(args, ideal)
    qp = _fit(args, seq)
    payload = {"command": "fit", "i": args.i, **qp.to_jsonable()}
    rows = [
        f"{r},{','.join(str(c) for c in poly)}" for r, poly in enumerate(qp.polys)
    ]
    _emit(args, payload, rows)
    return 0


def cmd_genfun(args):
    ideal = _load_ideal(args)
    seq = _sequence(args, ideal)
    qp = _fit(args, seq)
    prefix = [0] + [r.value for _, r in seq.entries][: max(qp.valid_from - 1, 0)]
    gf = asymptotics.to_generating_function(qp, prefix)
    series = gf.series(seq.n_max + 1)
    if series != [0] + [r.value for _, r in seq.entries]:
        raise ConsistencyError("generating function does not reproduce the sequence")
    payload = {"command": "genfun", "i": args.i, **gf.to_jsonable()}
    _emit(args, payload)
    return 0


def cmd_limit(args):
    ideal = _load_ideal(args)
    value = asymptotics.limit_via_volume(ideal, args.i, FieldSpec(args.char))
    payload = {"command": "limit", "i": args.i, "limit": _frac(value)}
    _emit(args, payload, [_frac(value)])
    return 0


def cmd_finite(args):
    ideal = _load_ideal(args)
    lo, hi = _parse_range(args.n)
    if lo != hi:
        raise _UsageError("finite takes a single --n value")
    fam = _family(args, ideal)
    from .ideals import family_member

    verdict = takayama.finiteness_oracle(
        family_member(fam, lo), args.i, FieldSpec(args.char)
    )
    payload = {"command": "finite", "i": args.i, "n": lo, "finite": verdict}
    _emit(args, payload, [str(verdict).lower()])
    return 0


def cmd_graph_check(args):
    graph = _load_graph(args)
    report = graphs.prop_finiteness_criterion(graph)
    payload = {
        "command": "graph-check",
        "finite": report.finite,
        "witnesses": {str(v): w for v, w in report.witnesses},
        "locally_bipartite": graphs.locally_bipartite(graph),
        "height": graphs.height_edge_ideal(graph),
    }
    rows = [f"{v},{w}" for v, w in report.witnesses]
    _emit(args, payload, rows)
    return 0


def cmd_volume(args):
    ideal = _load_ideal(args)
    poly = newton_polyhedron(ideal)
    payload = {
        "command": "volume",
        "dim": poly.dim,
        "facets": [
            {"normal": list(hs.normal), "offset": _frac(hs.offset)}
            for hs in poly.halfspaces
        ],
        "vertices": [list(v) for v in poly.vertices],
    }
    if args.point:
        point = tuple(int(x) for x in args.point.split(","))
        lo, hi = _parse_range(args.n) if args.n else (1, 1)
        payload["point"] = list(point)
        payload["member"] = nc_membership(poly, lo, point)
        payload["interior"] = strictly_inside(poly, point)
    rows = [
        f"{','.join(str(c) for c in hs.normal)},{_frac(hs.offset)}"
        for hs in poly.halfspaces
    ]
    _emit(args, payload, rows)
    return 0


def cmd_report(args):
    from . import plotting

    ideal = _load_ideal(args)
    if not args.out:
        raise _UsageError("report needs --out <directory>")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    seq = _sequence(args, ideal)

    rows = [
        f"{n},{'infinite' if not r.is_finite else r.value}" for n, r in seq.entries
    ]
    (outdir / "sequence.csv").write_text("\n".join(rows) + "\n")

    qp = None
    gf = None
    if not seq.has_infinite():
        try:
            qp = _fit(args, seq)
            prefix = [0] + [r.value for _, r in seq.entries][: max(qp.valid_from - 1, 0)]
            gf = asymptotics.to_generating_function(qp, prefix)
        except CohomlenError:
            pass
    limit = None
    if args.family == "intclosure":
        try:
            limit = asymptotics.limit_via_volume(ideal, args.i, FieldSpec(args.char))
        except CohomlenError:
            pass

    figures = []
    plotting.sequence_figure(seq, qp, outdir / "fig_sequence.png")
    figures.append("fig_sequence.png")
    if seq.finite_values():
        plotting.trend_figure(seq, limit, outdir / "fig_trend.png")
        figures.append("fig_trend.png")
    if ideal.dim == 2:
        plotting.newton_figure(ideal, outdir / "fig_newton.png")
        figures.append("fig_newton.png")

    summary: dict = {
        "command": "report",
        "i": args.i,
        "family": args.family,
        "entries": [_entry_jsonable(n, r) for n, r in seq.entries],
        "figures": figures,
    }
    if qp is not None:
        summary["quasi_polynomial"] = qp.to_jsonable()
    if gf is not None:
        summary["generating_function"] = gf.to_jsonable()
    if limit is not None:
        summary["limit"] = _frac(limit)
    try:
        est = asymptotics.growth_estimate(seq)
        summary["growth"] = {
            "limsup_est": f"{est.limsup_est:.12g}",
            "liminf_est": f"{est.liminf_est:.12g}",
            "fitted_degree": est.fitted_degree,
            "certified": False,
        }
    except CohomlenError:
        pass
    (outdir / "report.json").write_text(json.dumps(summary, indent=2) + "\n")
    sys.stdout.write(json.dumps({"written": str(outdir), "figures": figures}) + "\n")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="cohomlen", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_i=True):
        p.add_argument("--ideal", help="ideal DSL, inline or a file path")
        p.add_argument("--graph", help="graph DSL, inline or a file path")
        if need_i:
            p.add_argument("--i", type=int, required=True, help="cohomological index")
        p.add_argument("--n", help="single n or range a..b")
        p.add_argument(
            "--family",
            choices=["powers", "sat", "intclosure"],
            default="powers",
        )
        p.add_argument("--char", type=int, default=0, help="field characteristic")
        p.add_argument(
            "--threads",
            type=int,
            default=int(os.environ.get("COHOMLEN_THREADS", "1")),
        )
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", help="output path (directory for report)")
        p.add_argument("--max-period", type=int, default=4)
        p.add_argument("--max-degree", type=int, default=None)

    for name, fn, need_i in [
        ("length", cmd_length, True),
        ("sequence", cmd_sequence, True),
        ("fit", cmd_fit, True),
        ("genfun", cmd_genfun, True),
        ("limit", cmd_limit, True),
        ("finite", cmd_finite, True),
        ("graph-check", cmd_graph_check, False),
        ("volume", cmd_volume, False),
        ("report", cmd_report, True),
    ]:
        p = sub.add_parser(name)
        common(p, need_i)
        if name == "volume":
            p.add_argument("--point", help="comma-separated exponent vector")
        p.set_defaults(fn=fn)
    return parser


def _error_payload(code: str, exc: Exception) -> str:
    payload = {"code": code, "message": str(exc)}
    if isinstance(exc, ParseError):
        payload["location"] = {"line": exc.line, "column": exc.column}
    return json.dumps(payload) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except (_UsageError, ParseError) as exc:
        sys.stderr.write(_error_payload("usage" if isinstance(exc, _UsageError) else "parse", exc))
        return 1
    except (ResourceLimitError, CertificateError) as exc:
        sys.stderr.write(_error_payload("resource", exc))
        return 2
    except ConsistencyError as exc:
        sys.stderr.write(_error_payload("consistency", exc))
        return 3
    except CohomlenError as exc:
        sys.stderr.write(_error_payload("domain", exc))
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
