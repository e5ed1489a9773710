"""Command-line interface.

    herringbone poly 2 1 2
    herringbone matrix 221122
    herringbone lattice 221122 --dot lattice.dot
    herringbone verify "2 2 1 1 2 2" --json
    herringbone sweep --max-crossings 12 --jobs 4

Exit status: 0 on success, 1 when a verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .alexander import build_matrix, extract_delta, link_polynomial, reduce, render_matrix
from .analysis import sweep, verify
from .bipoly import evaluate, normalize_unit, to_coeff_matrix
from .clocklattice import (
    DEFAULT_STATE_BUDGET,
    bottom_row_states,
    enumerate_lattice,
    state_sum,
)
from .conway import parse_conway, predict_components
from .diagram import build_diagram
from .errors import ConwayInputError, HerringboneError, NotATwoComponentLink

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _diagram(args):
    seq = parse_conway(" ".join(args.conway))
    return build_diagram(seq)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_poly(args) -> int:
    d = _diagram(args)
    raw = link_polynomial(d)
    delta = extract_delta(raw)
    cm = to_coeff_matrix(delta)
    payload = {
        "conway": d.seq.canonical(),
        "link_polynomial": raw.to_json(),
        "delta": delta.to_json(),
        "delta_text": str(delta),
        "coefficient_matrix": cm.to_json(),
        "delta_at_minus1_0": evaluate(delta, -1, 0),
    }
    text = "\n".join([
        f"conway:         {d.seq.canonical()}",
        f"det (reduced):  {raw}",
        f"Delta(x,y):     {delta}",
        f"Delta(-1,0):    {evaluate(delta, -1, 0)}",
        "coefficient matrix:",
        cm.render(),
    ])
    _emit(args, payload, text)
    return EXIT_OK


def cmd_matrix(args) -> int:
    d = _diagram(args)
    m = build_matrix(d)
    red = reduce(m)
    rows = [f"c{k}" for k in range(1, d.n + 1)]
    cols = [f"r{k}" + ("*" if k in d.starred else "") for k in range(d.n + 2)]
    kept = [c for k, c in enumerate(cols) if k not in d.starred]
    payload = {
        "conway": d.seq.canonical(),
        "alexander_matrix": m.to_json(),
        "reduced_matrix": [[str(e) for e in row] for row in red],
    }
    text = "\n".join([
        "Alexander matrix (starred columns marked *):",
        render_matrix(m.entries, rows, cols),
        "",
        "reduced matrix:",
        render_matrix(red, rows, kept),
    ])
    _emit(args, payload, text)
    return EXIT_OK


def cmd_lattice(args) -> int:
    d = _diagram(args)
    lat = enumerate_lattice(d, args.budget)
    bottom = bottom_row_states(d, args.budget)
    ssum = state_sum(d, lat)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(lat.to_dot(d.seq.canonical()))
    payload = {
        "conway": d.seq.canonical(),
        "state_count": len(lat),
        "move_count": len(lat.moves),
        "sources": lat.sources(),
        "sinks": lat.sinks(),
        "clocked_term": lat.states[0].to_json()["term"],
        "state_sum": ssum.to_json(),
        "bottom_row_count": len(bottom),
        "bottom_row_x_exponents": bottom.x_exponents(),
        "states": [s.to_json() for s in lat.states] if args.states else None,
    }
    text = "\n".join([
        f"conway:          {d.seq.canonical()}",
        f"states:          {len(lat)}",
        f"clock moves:     {len(lat.moves)}",
        f"sources/sinks:   {len(lat.sources())}/{len(lat.sinks())}",
        f"clocked term:    {lat.states[0].term_text()}",
        f"state sum:       {ssum}",
        f"y-free states:   {len(bottom)}  x-exponents {bottom.x_exponents()}",
    ])
    _emit(args, payload, text)
    return EXIT_OK


def cmd_diagram(args) -> int:
    d = _diagram(args)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(d.to_dot())
    print(d.to_json_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    seq = parse_conway(" ".join(args.conway))
    report = verify(seq, args.budget)
    if args.json:
        print(report.to_json(args.timing))
    else:
        lines = [
            f"conway:            {report.conway}" + ("  (fewer than 3 sites)" if report.degenerate else ""),
            f"crossings:         {report.n}",
            f"monochromatic:     m={report.m}  sites={report.mono_sites}",
            f"Delta(x,y):        {report.delta_text}",
            f"Delta(-1,0):       {report.delta_at_minus1_0}",
            f"prod(q+1):         {report.predicted_product}",
            f"theorem:           {'pass' if report.theorem_pass else 'FAIL'}",
            f"clock states:      {report.state_count}  (y-free: {report.bottom_row_count})",
            f"state sum = det:   {'yes' if report.oracle_match else 'NO'}",
        ]
        failed = report.failed_checks()
        lines.append(f"structural checks: {len(report.lemma_checks) - len(failed)}/{len(report.lemma_checks)} pass")
        lines.extend(f"  FAILED {name}" for name in failed)
        if args.timing:
            lines.append("timing: " + ", ".join(f"{k}={v:.4f}s" for k, v in sorted(report.timing.items())))
        print("\n".join(lines))
    return EXIT_OK if report.overall_pass else EXIT_FAIL


def cmd_sweep(args) -> int:
    if args.max_crossings < 2:
        raise ConwayInputError("--max-crossings must be at least 2")
    result = sweep(args.max_crossings, jobs=args.jobs, budget=args.budget)
    if args.json:
        print(json.dumps(result.to_dict(args.timing), indent=2, sort_keys=True))
    else:
        s = result.summary(include_timing=True)
        lines = [
            f"{'conway':<22} {'n':>3} {'m':>2} {'D(-1,0)':>8} {'prod':>6} {'states':>7}  status",
        ]
        for r in result.reports:
            status = "pass" if r.overall_pass else "FAIL " + (r.error or ",".join(r.failed_checks()))
            lines.append(
                f"{r.conway:<22} {r.n:>3} {r.m:>2} {str(r.delta_at_minus1_0):>8} "
                f"{str(r.predicted_product):>6} {str(r.state_count):>7}  {status}"
            )
        lines.append(f"cases {s['cases']}, passed {s['passed']}, failed {s['failed']}")
        if args.timing:
            lines.append("slowest: " + ", ".join(f"{x['conway']} ({x['seconds']}s)" for x in s["slowest"]))
        print("\n".join(lines))
    return EXIT_OK if not result.failures else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="herringbone",
        description="Two-variable Alexander polynomials of rational links in herringbone form.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, conway=True):
        p = sub.add_parser(name, help=help_text)
        if conway:
            p.add_argument("conway", nargs="+", help='Conway notation, e.g. "2 1 2" or 221122')
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    add("poly", cmd_poly, "print Delta(x,y) and its coefficient matrix")
    add("matrix", cmd_matrix, "print the full and reduced Alexander matrices")
    p = add("lattice", cmd_lattice, "enumerate the clock-state lattice")
    p.add_argument("--dot", metavar="FILE", help="write the lattice as a Graphviz DOT file")
    p.add_argument("--states", action="store_true", help="include every state in --json output")
    p.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET, help="maximum number of states")
    p = add("diagram", cmd_diagram, "dump the diagram as JSON")
    p.add_argument("--dot", metavar="FILE", help="also write the diagram graph as DOT")
    p = add("verify", cmd_verify, "check the Delta(-1,0) product formula and all structural lemmas")
    p.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)
    p.add_argument("--timing", action="store_true", help="report stage timings")
    p = add("sweep", cmd_sweep, "verify every 2-component sequence up to a crossing bound", conway=False)
    p.add_argument("--max-crossings", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)
    p.add_argument("--timing", action="store_true", help="include timings (output no longer byte-stable)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotATwoComponentLink:
        seq = parse_conway(" ".join(args.conway))
        kind = predict_components(seq)
        print(f"error: {seq.canonical()} closes to a {kind.value}; "
              "these invariants need a 2-component link", file=sys.stderr)
        return EXIT_INPUT
    except ConwayInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HerringboneError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
