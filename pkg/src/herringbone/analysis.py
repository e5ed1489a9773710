"""Theorem verification and exhaustive sweeps.

:func:`verify` runs both routes to the polynomial (determinant and clock
state sum), counts the y-free states, and evaluates a battery of structural
checks on the diagram and its lattice.  :func:`sweep` does that for every
2-component sequence up to a crossing bound.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .alexander import build_matrix, extract_delta, link_polynomial, reduce
from .bipoly import BiPoly, equal_up_to_unit, evaluate, normalize_unit, to_coeff_matrix
from .clocklattice import (
    DEFAULT_STATE_BUDGET,
    Lattice,
    MoveKind,
    apply_move,
    available_moves,
    bottom_row_states,
    clocked_state,
    enumerate_lattice,
    enumerate_matchings,
    state_sum,
)
from .conway import ClosureKind, TwistSequence, enumerate_sequences, parse_conway
from .diagram import QUADRANTS, LinkDiagram, build_diagram
from .errors import HerringboneError

__all__ = [
    "VerificationReport",
    "SweepResult",
    "DIAGRAM_CHECKS",
    "verify",
    "sweep",
]

MATCHING_ORACLE_MAX_N = 10


# -- diagram-level checks -----------------------------------------------


def check_no_spinners(d: LinkDiagram) -> bool:
    return all(
        any(c.quadrant_region[q] in d.starred for q in QUADRANTS) for c in d.crossings
    )


def check_region_count(d: LinkDiagram) -> bool:
    return len(d.regions) == d.n + 2 and sum(r.starred for r in d.regions) == 2


def check_special_edge(d: LinkDiagram) -> bool:
    e = d.special_edge
    return (
        e.component == "y"
        and not e.active
        and {e.left_region, e.right_region} == set(d.starred)
        and {e.tail[0], e.head[0]} == set(d.special_vertices)
    )


def check_y_unknotted(d: LinkDiagram) -> bool:
    return not any(c.over_component == c.under_component == "y" for c in d.crossings)


def check_first_last_dichromatic(d: LinkDiagram) -> bool:
    colors = d.coloring.colors
    return colors[0] == "xy" and colors[-1] == "xy"


def check_no_consecutive_monochromatic(d: LinkDiagram) -> bool:
    colors = d.coloring.colors
    return not any(a != "xy" and b != "xy" for a, b in zip(colors, colors[1:]))


def check_monochromatic_sites_x(d: LinkDiagram) -> bool:
    return all(c in ("x", "xy") for c in d.coloring.colors)


def _passages(d: LinkDiagram, comp: str) -> list[tuple[int, int, int]]:
    """(edge in, crossing, edge out) for every pass of a component through a crossing."""
    walk = d.component_walks[comp]
    out = []
    for k, eid in enumerate(walk):
        nxt = walk[(k + 1) % len(walk)]
        out.append((eid, d.edge(eid).head[0], nxt))
    return out


def check_y_alternates(d: LinkDiagram) -> bool:
    return all(d.edge(a).active != d.edge(b).active for a, _, b in _passages(d, "y"))


def check_x_alternates_except_special(d: LinkDiagram) -> bool:
    special = set(d.special_vertices)
    for a, v, b in _passages(d, "x"):
        ea, eb = d.edge(a), d.edge(b)
        both_inactive = not ea.active and not eb.active
        if v in special:
            if not both_inactive:
                return False
        elif ea.active == eb.active:
            return False
    return True


def check_uppers_downers_alternate(d: LinkDiagram) -> bool:
    return all(
        d.edge(a).upper != d.edge(b).upper
        for comp in ("x", "y")
        for a, _, b in _passages(d, comp)
    )


def check_active_y_uppers(d: LinkDiagram) -> bool:
    return all(e.upper for e in d.edges if e.active and e.component == "y")


def check_red_hv_iff_one_monochromatic(d: LinkDiagram) -> bool:
    col = d.coloring
    for e in d.hv_connectors():
        k = min(d.crossing(e.tail[0]).site_index, d.crossing(e.head[0]).site_index)
        one_mono = col.is_monochromatic(k) != col.is_monochromatic(k + 1)
        if (e.component == "x") != one_mono:
            return False
    return True


def check_column_signs(d: LinkDiagram) -> bool:
    m = build_matrix(d)
    for r in range(d.n + 2):
        signs = {c > 0 for e in m.column(r) for c in e.terms.values()}
        if len(signs) > 1:
            return False
    return True


def check_clocked_diagonal(d: LinkDiagram) -> bool:
    red = reduce(build_matrix(d))
    return all(red[k][k] for k in range(d.n))


def check_single_label_per_row(d: LinkDiagram) -> bool:
    # no region touches two corners of the same crossing
    return all(len(set(c.quadrant_region.values())) == 4 for c in d.crossings)


DIAGRAM_CHECKS: dict[str, Callable[[LinkDiagram], bool]] = {
    "no_spinners": check_no_spinners,
    "region_count": check_region_count,
    "special_edge_on_y": check_special_edge,
    "y_unknotted": check_y_unknotted,
    "first_last_dichromatic": check_first_last_dichromatic,
    "no_consecutive_monochromatic": check_no_consecutive_monochromatic,
    "monochromatic_sites_x": check_monochromatic_sites_x,
    "y_edges_alternate": check_y_alternates,
    "x_edges_alternate_except_special": check_x_alternates_except_special,
    "uppers_downers_alternate": check_uppers_downers_alternate,
    "active_y_edges_upper": check_active_y_uppers,
    "red_hv_iff_one_monochromatic": check_red_hv_iff_one_monochromatic,
    "column_signs_uniform": check_column_signs,
    "clocked_diagonal_nonzero": check_clocked_diagonal,
    "distinct_regions_per_crossing": check_single_label_per_row,
}


# -- lattice-level checks -----------------------------------------------


def check_move_steps(d: LinkDiagram, lat: Lattice) -> bool:
    """Each clock move shifts one exponent by one: up on Uppers, down on Downers."""
    for s, t, eid in lat.moves:
        a, b = lat.states[s], lat.states[t]
        e = d.edge(eid)
        dx, dy = b.x_degree - a.x_degree, b.y_degree - a.y_degree
        step = 1 if e.upper else -1
        want = (step, 0) if e.component == "x" else (0, step)
        if (dx, dy) != want or a.sign == b.sign:
            return False
    return True


def check_y_monotone(lat: Lattice) -> bool:
    return all(lat.states[t].y_degree >= lat.states[s].y_degree for s, t, _ in lat.moves)


def check_involution(d: LinkDiagram, lat: Lattice) -> bool:
    for s, t, eid in lat.moves:
        back = apply_move(d, lat.states[t], eid, MoveKind.COUNTERCLOCK)
        if back != lat.states[s]:
            return False
    return True


def check_diamonds(d: LinkDiagram, lat: Lattice) -> bool:
    """Two moves available together stay available and commute."""
    for s in lat.states:
        clocks = [e for e, k in available_moves(d, s) if k is MoveKind.CLOCK]
        for i, e1 in enumerate(clocks):
            for e2 in clocks[i + 1:]:
                a = apply_move(d, s, e1, MoveKind.CLOCK)
                b = apply_move(d, s, e2, MoveKind.CLOCK)
                if (e2, MoveKind.CLOCK) not in available_moves(d, a):
                    return False
                if (e1, MoveKind.CLOCK) not in available_moves(d, b):
                    return False
                if apply_move(d, a, e2, MoveKind.CLOCK) != apply_move(d, b, e1, MoveKind.CLOCK):
                    return False
    return True


def lattice_checks(d: LinkDiagram, lat: Lattice, link_poly: BiPoly) -> dict[str, bool]:
    clocked = lat.states[0]
    clocked_moves = available_moves(d, clocked)
    sinks = lat.sinks()
    sink_ok = len(sinks) == 1 and all(
        k is MoveKind.COUNTERCLOCK for _, k in available_moves(d, lat.states[sinks[0]])
    )
    available_clock = {e for e, k in clocked_moves if k is MoveKind.CLOCK}
    abs_sum = sum(abs(c) for c in link_poly.terms.values())
    return {
        "clocked_term_y_free": clocked.y_degree == 0,
        "clocked_only_clock_moves": all(k is MoveKind.CLOCK for _, k in clocked_moves),
        "hv_connectors_available": all(e.id in available_clock for e in d.hv_connectors()),
        "lattice_unique_source": lat.sources() == [0],
        "lattice_unique_sink": sink_ok,
        "lattice_acyclic": lat.is_acyclic(),
        "lattice_weakly_connected": lat.is_weakly_connected(),
        "move_exponent_steps": check_move_steps(d, lat),
        "y_degree_monotone": check_y_monotone(lat),
        "clock_counterclock_involution": check_involution(d, lat),
        "diamond_commutation": check_diamonds(d, lat),
        "state_count_equals_abs_coefficients": len(lat) == abs_sum,
    }


# -- reports -------------------------------------------------------------


@dataclass
class VerificationReport:
    conway: str
    n: int
    component_count: int
    degenerate: bool = False
    m: int = 0
    mono_sites: list[tuple[int, int]] = field(default_factory=list)
    delta: dict | None = None
    delta_text: str = ""
    link_polynomial_text: str = ""
    delta_at_minus1_0: int | None = None
    predicted_product: int | None = None
    theorem_pass: bool = False
    state_count: int | None = None
    bottom_row_count: int | None = None
    bottom_row_x_exponents: list[int] = field(default_factory=list)
    oracle_match: bool = False
    delta_at_minus1_minus1: int | None = None
    link_polynomial_at_minus1_minus1: int | None = None
    lemma_checks: dict[str, bool] = field(default_factory=dict)
    error: str | None = None
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def overall_pass(self) -> bool:
        return (
            self.error is None
            and self.theorem_pass
            and self.oracle_match
            and all(self.lemma_checks.values())
        )

    def failed_checks(self) -> list[str]:
        return sorted(k for k, v in self.lemma_checks.items() if not v)

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "conway": self.conway,
            "n": self.n,
            "component_count": self.component_count,
            "degenerate": self.degenerate,
            "m": self.m,
            "mono_sites": [list(p) for p in self.mono_sites],
            "delta": self.delta,
            "delta_text": self.delta_text,
            "link_polynomial_text": self.link_polynomial_text,
            "delta_at_minus1_0": self.delta_at_minus1_0,
            "predicted_product": self.predicted_product,
            "theorem_pass": self.theorem_pass,
            "state_count": self.state_count,
            "bottom_row_count": self.bottom_row_count,
            "bottom_row_x_exponents": self.bottom_row_x_exponents,
            "oracle_match": self.oracle_match,
            "delta_at_minus1_minus1": self.delta_at_minus1_minus1,
            "link_polynomial_at_minus1_minus1": self.link_polynomial_at_minus1_minus1,
            "lemma_checks": dict(sorted(self.lemma_checks.items())),
            "error": self.error,
            "overall_pass": self.overall_pass,
        }
        if include_timing:
            out["timing"] = dict(sorted(self.timing.items()))
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True)


def verify(
    seq: TwistSequence | str,
    budget: int = DEFAULT_STATE_BUDGET,
    matching_oracle_max_n: int = MATCHING_ORACLE_MAX_N,
) -> VerificationReport:
    """Full pipeline for one sequence; raises NotATwoComponentLink for knots."""
    if isinstance(seq, str):
        seq = parse_conway(seq)
    timing: dict[str, float] = {}
    t0 = time.perf_counter()
    d = build_diagram(seq)
    timing["diagram"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    raw = link_polynomial(d)
    delta = extract_delta(raw)
    timing["determinant"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    lat = enumerate_lattice(d, budget)
    ssum = state_sum(d, lat)
    bottom = bottom_row_states(d, budget)
    timing["lattice"] = time.perf_counter() - t0

    col = d.coloring
    predicted = col.predicted_product()
    at_m10 = evaluate(delta, -1, 0)
    norm_raw = normalize_unit(raw)

    t0 = time.perf_counter()
    checks = {name: fn(d) for name, fn in DIAGRAM_CHECKS.items()}
    checks["determinant_vanishes_at_1_1"] = evaluate(raw, 1, 1) == 0
    checks.update(lattice_checks(d, lat, norm_raw))
    checks["bottom_row_count_matches_product"] = len(bottom) == predicted
    checks["bottom_row_coordinates_box"] = (
        bottom.consistent and set(bottom.coordinates) == bottom.coordinate_box()
    )
    if seq.n <= matching_oracle_max_n:
        matchings = enumerate_matchings(d)
        checks["lattice_reaches_all_matchings"] = matchings == sorted(
            s.regions for s in lat.states
        )
    timing["checks"] = time.perf_counter() - t0

    return VerificationReport(
        conway=seq.canonical(),
        n=seq.n,
        component_count=d.component_count,
        degenerate=seq.is_degenerate,
        m=col.m,
        mono_sites=[(k + 1, q) for k, q in col.mono_sites],
        delta=to_coeff_matrix(delta).to_json(),
        delta_text=str(delta),
        link_polynomial_text=str(raw),
        delta_at_minus1_0=at_m10,
        predicted_product=predicted,
        theorem_pass=at_m10 == predicted,
        state_count=len(lat),
        bottom_row_count=len(bottom),
        bottom_row_x_exponents=bottom.x_exponents(),
        oracle_match=equal_up_to_unit(ssum, raw),
        delta_at_minus1_minus1=evaluate(delta, -1, -1),
        link_polynomial_at_minus1_minus1=evaluate(norm_raw, -1, -1),
        lemma_checks=checks,
        timing=timing,
    )


def _verify_safely(args: tuple[tuple[int, ...], int, int]) -> VerificationReport:
    sites, budget, oracle_n = args
    seq = TwistSequence(sites)
    t0 = time.perf_counter()
    try:
        report = verify(seq, budget, oracle_n)
    except HerringboneError as exc:
        report = VerificationReport(
            conway=seq.canonical(),
            n=seq.n,
            component_count=0,
            degenerate=seq.is_degenerate,
            error=f"{type(exc).__name__}: {exc}",
        )
    report.timing["total"] = time.perf_counter() - t0
    return report


@dataclass
class SweepResult:
    max_crossings: int
    reports: list[VerificationReport]

    @property
    def failures(self) -> list[VerificationReport]:
        return [r for r in self.reports if not r.overall_pass]

    def slowest(self, k: int = 5) -> list[VerificationReport]:
        return sorted(self.reports, key=lambda r: -r.timing.get("total", 0.0))[:k]

    def summary(self, include_timing: bool = False) -> dict:
        out = {
            "max_crossings": self.max_crossings,
            "cases": len(self.reports),
            "passed": len(self.reports) - len(self.failures),
            "failed": len(self.failures),
            "failures": [
                {"conway": r.conway, "error": r.error, "failed_checks": r.failed_checks(),
                 "theorem_pass": r.theorem_pass, "oracle_match": r.oracle_match}
                for r in self.failures
            ],
            "by_m": _count_by(self.reports, lambda r: r.m),
        }
        if include_timing:
            out["slowest"] = [
                {"conway": r.conway, "seconds": round(r.timing.get("total", 0.0), 4)}
                for r in self.slowest()
            ]
        return out

    def to_dict(self, include_timing: bool = False) -> dict:
        return {
            "summary": self.summary(include_timing),
            "reports": [r.to_dict(include_timing) for r in self.reports],
        }


def _count_by(reports, key) -> dict[str, int]:
    out: dict[str, int] = {}
    for r in reports:
        k = str(key(r))
        out[k] = out.get(k, 0) + 1
    return dict(sorted(out.items(), key=lambda kv: int(kv[0])))


def sweep(
    max_crossings: int,
    jobs: int = 1,
    budget: int = DEFAULT_STATE_BUDGET,
    matching_oracle_max_n: int = MATCHING_ORACLE_MAX_N,
) -> SweepResult:
    """Verify every 2-component sequence with at most ``max_crossings`` crossings."""
    seqs = enumerate_sequences(max_crossings, ClosureKind.TWO_COMPONENT_LINK)
    work = [(s.sites, budget, matching_oracle_max_n) for s in seqs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_verify_safely, work, chunksize=8))
    else:
        reports = [_verify_safely(w) for w in work]
    reports.sort(key=lambda r: r.conway)
    return SweepResult(max_crossings, reports)
