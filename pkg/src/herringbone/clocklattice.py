"""Kauffman clock states, clock moves and the lattice they generate.

A state puts one marker at every crossing, in one of its four quadrants, so
that the marked regions are exactly the unstarred regions, each once.  The
state's term is ``(-1)**(i+j) x**i y**j`` where ``i`` and ``j`` count the x-
and y-dots under markers.

A clock move on an active edge rotates the markers at both of its endpoints
90 degrees clockwise, each across the edge; a counterclock move undoes it.
"""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass, field
from itertools import product

from .bipoly import BiPoly
from .diagram import (
    CCW_SIDE,
    CW_SIDE,
    QUADRANTS,
    ConnectorClass,
    LinkDiagram,
)
from .errors import HerringboneError, MoveNotAvailable, StateBudgetExceeded

__all__ = [
    "MoveKind",
    "ClockState",
    "Lattice",
    "BottomRow",
    "DEFAULT_STATE_BUDGET",
    "make_state",
    "clocked_state",
    "available_moves",
    "apply_move",
    "enumerate_lattice",
    "state_sum",
    "bottom_row_states",
    "enumerate_matchings",
]

DEFAULT_STATE_BUDGET = 10**6


class MoveKind(str, enum.Enum):
    CLOCK = "clock"
    COUNTERCLOCK = "counterclock"


@dataclass(frozen=True)
class ClockState:
    """Markers indexed by crossing (position 0 is c1)."""

    regions: tuple[int, ...]
    quadrants: tuple[str, ...] = field(compare=False)
    x_degree: int = field(compare=False)
    y_degree: int = field(compare=False)

    @property
    def sign(self) -> int:
        return -1 if (self.x_degree + self.y_degree) % 2 else 1

    @property
    def term(self) -> BiPoly:
        return BiPoly.monomial(self.sign, self.x_degree, self.y_degree)

    def marker(self, cid: int) -> tuple[int, str]:
        return self.regions[cid - 1], self.quadrants[cid - 1]

    def term_text(self) -> str:
        return str(self.term)

    def to_json(self) -> dict:
        return {
            "regions": list(self.regions),
            "quadrants": list(self.quadrants),
            "term": [self.sign, self.x_degree, self.y_degree],
        }


def make_state(diagram: LinkDiagram, quadrants) -> ClockState:
    quadrants = tuple(quadrants)
    regions = []
    xs = ys = 0
    for c, q in zip(diagram.crossings, quadrants):
        regions.append(c.quadrant_region[q])
        dot = c.dots.get(q)
        if dot == "x":
            xs += 1
        elif dot == "y":
            ys += 1
    return ClockState(tuple(regions), quadrants, xs, ys)


def is_valid_state(diagram: LinkDiagram, s: ClockState) -> bool:
    unstarred = set(range(1, diagram.n + 1))
    return len(s.regions) == diagram.n and set(s.regions) == unstarred


def clocked_state(diagram: LinkDiagram) -> ClockState:
    return make_state(diagram, (c.clocked_quadrant for c in diagram.crossings))


def _active_geometry(diagram: LinkDiagram) -> list[tuple[int, int, str, int, str]]:
    return [
        (e.id, e.tail[0], e.tail[1], e.head[0], e.head[1]) for e in diagram.edges if e.active
    ]


def available_moves(diagram: LinkDiagram, s: ClockState) -> list[tuple[int, MoveKind]]:
    """Moves available in ``s``, sorted by edge id (clock before counterclock)."""
    out = []
    q = s.quadrants
    for eid, u, a, v, b in _active_geometry(diagram):
        qu, qv = q[u - 1], q[v - 1]
        if qu == CCW_SIDE[a] and qv == CCW_SIDE[b]:
            out.append((eid, MoveKind.CLOCK))
        elif qu == CW_SIDE[a] and qv == CW_SIDE[b]:
            out.append((eid, MoveKind.COUNTERCLOCK))
    return out


def apply_move(diagram: LinkDiagram, s: ClockState, edge: int, kind: MoveKind) -> ClockState:
    e = diagram.edge(edge)
    kind = MoveKind(kind)
    if not e.active:
        raise MoveNotAvailable(f"edge {edge} is inactive")
    (u, a), (v, b) = e.tail, e.head
    before, after = (CCW_SIDE, CW_SIDE) if kind is MoveKind.CLOCK else (CW_SIDE, CCW_SIDE)
    q = list(s.quadrants)
    if q[u - 1] != before[a] or q[v - 1] != before[b]:
        raise MoveNotAvailable(f"{kind.value} move on edge {edge} is not available")
    q[u - 1], q[v - 1] = after[a], after[b]
    return make_state(diagram, q)


@dataclass
class Lattice:
    states: list[ClockState]
    moves: list[tuple[int, int, int]]  # (source index, target index, edge id)
    index: dict[tuple[int, ...], int] = field(repr=False)

    @property
    def source(self) -> int:
        return 0

    def __len__(self) -> int:
        return len(self.states)

    def out_degree(self) -> list[int]:
        deg = [0] * len(self.states)
        for s, _, _ in self.moves:
            deg[s] += 1
        return deg

    def in_degree(self) -> list[int]:
        deg = [0] * len(self.states)
        for _, t, _ in self.moves:
            deg[t] += 1
        return deg

    def sources(self) -> list[int]:
        return [k for k, d in enumerate(self.in_degree()) if d == 0]

    def sinks(self) -> list[int]:
        return [k for k, d in enumerate(self.out_degree()) if d == 0]

    @property
    def sink(self) -> int:
        sinks = self.sinks()
        if len(sinks) != 1:
            raise HerringboneError(f"lattice has {len(sinks)} sinks")
        return sinks[0]

    def is_acyclic(self) -> bool:
        indeg = self.in_degree()
        succ: list[list[int]] = [[] for _ in self.states]
        for s, t, _ in self.moves:
            succ[s].append(t)
        queue = deque(k for k, d in enumerate(indeg) if d == 0)
        seen = 0
        while queue:
            k = queue.popleft()
            seen += 1
            for t in succ[k]:
                indeg[t] -= 1
                if indeg[t] == 0:
                    queue.append(t)
        return seen == len(self.states)

    def is_weakly_connected(self) -> bool:
        if not self.states:
            return True
        adj: list[list[int]] = [[] for _ in self.states]
        for s, t, _ in self.moves:
            adj[s].append(t)
            adj[t].append(s)
        seen = {0}
        stack = [0]
        while stack:
            for t in adj[stack.pop()]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return len(seen) == len(self.states)

    def to_dot(self, name: str = "lattice") -> str:
        lines = [f'digraph "{name}" {{', "  rankdir=TB;"]
        for k, s in enumerate(self.states):
            lines.append(f'  s{k} [label="{s.term_text()}"];')
        for s, t, e in self.moves:
            lines.append(f'  s{s} -> s{t} [label="e{e}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "states": [s.to_json() for s in self.states],
            "moves": [list(m) for m in self.moves],
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def enumerate_lattice(diagram: LinkDiagram, budget: int = DEFAULT_STATE_BUDGET) -> Lattice:
    """Breadth-first closure of clock moves from the clocked state."""
    start = clocked_state(diagram)
    states = [start]
    index = {start.regions: 0}
    moves = []
    queue = deque([0])
    while queue:
        k = queue.popleft()
        s = states[k]
        for eid, kind in available_moves(diagram, s):
            if kind is not MoveKind.CLOCK:
                continue
            t = apply_move(diagram, s, eid, kind)
            j = index.get(t.regions)
            if j is None:
                if len(states) >= budget:
                    raise StateBudgetExceeded(
                        f"{diagram.seq}: more than {budget} clock states"
                    )
                j = len(states)
                index[t.regions] = j
                states.append(t)
                queue.append(j)
            moves.append((k, j, eid))
    return Lattice(states, moves, index)


def state_sum(diagram: LinkDiagram, lattice: Lattice) -> BiPoly:
    acc: dict[tuple[int, int], int] = {}
    for s in lattice.states:
        key = (s.x_degree, s.y_degree)
        acc[key] = acc.get(key, 0) + s.sign
    return BiPoly(acc)


@dataclass
class BottomRow:
    """States of y-degree zero, with per-monochromatic-site move counts."""

    states: list[ClockState]
    coordinates: list[tuple[int, ...]]  # aligned with ``states``
    mono_sites: list[tuple[int, int]]
    consistent: bool  # every move raises exactly one coordinate by one

    def __len__(self) -> int:
        return len(self.states)

    def coordinate_box(self) -> set[tuple[int, ...]]:
        return set(product(*(range(q + 1) for _, q in self.mono_sites)))

    def x_exponents(self) -> list[int]:
        return sorted(s.x_degree for s in self.states)


def _site_groups(diagram: LinkDiagram, mono_sites) -> dict[int, int]:
    """Map active edge id to the coordinate of the monochromatic site it touches."""
    site_to_coord = {k: idx for idx, (k, _) in enumerate(mono_sites)}
    groups = {}
    for e in diagram.edges:
        if not e.active:
            continue
        if e.connector_class in (ConnectorClass.SPECIAL_EDGE, ConnectorClass.CLOSURE_ARC):
            continue
        touched = {
            site_to_coord[k]
            for k in (diagram.crossing(e.tail[0]).site_index, diagram.crossing(e.head[0]).site_index)
            if k in site_to_coord
        }
        if len(touched) == 1:
            groups[e.id] = touched.pop()
    return groups


def bottom_row_states(diagram: LinkDiagram, budget: int = DEFAULT_STATE_BUDGET) -> BottomRow:
    """Clock-move closure of the clocked state restricted to y-degree zero.

    Because y-degree never drops along clock moves, every y-free state is
    reached this way.  Coordinates count the moves made on edges of each
    monochromatic site (its HV connector included).
    """
    mono = diagram.coloring.mono_sites
    groups = _site_groups(diagram, mono)
    start = clocked_state(diagram)
    if start.y_degree != 0:
        return BottomRow([], [], mono, False)
    states = [start]
    coords = [tuple(0 for _ in mono)]
    index = {start.regions: 0}
    consistent = True
    queue = deque([0])
    while queue:
        k = queue.popleft()
        s = states[k]
        for eid, kind in available_moves(diagram, s):
            if kind is not MoveKind.CLOCK:
                continue
            t = apply_move(diagram, s, eid, kind)
            if t.y_degree:
                continue
            step = list(coords[k])
            g = groups.get(eid)
            if g is None:
                consistent = False
            else:
                step[g] += 1
            j = index.get(t.regions)
            if j is None:
                if len(states) >= budget:
                    raise StateBudgetExceeded(f"{diagram.seq}: bottom row exceeds {budget}")
                j = len(states)
                index[t.regions] = j
                states.append(t)
                coords.append(tuple(step))
                queue.append(j)
            elif coords[j] != tuple(step):
                consistent = False
    return BottomRow(states, coords, mono, consistent)


def enumerate_matchings(diagram: LinkDiagram) -> list[tuple[int, ...]]:
    """Every crossing-to-unstarred-region bijection through incident corners.

    Plain backtracking over the incidence pattern (a permanent count); it
    does not use clock moves, so it checks the lattice independently.
    """
    n = diagram.n
    starred = set(diagram.starred)
    options = [
        sorted({c.quadrant_region[q] for q in QUADRANTS} - starred) for c in diagram.crossings
    ]
    found: list[tuple[int, ...]] = []
    chosen: list[int] = []
    used: set[int] = set()

    def extend(k: int) -> None:
        if k == n:
            found.append(tuple(chosen))
            return
        for r in options[k]:
            if r not in used:
                used.add(r)
                chosen.append(r)
                extend(k + 1)
                chosen.pop()
                used.discard(r)

    extend(0)
    return sorted(found)
