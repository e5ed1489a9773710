"""Standard-form herringbone diagrams of rational links.

Every crossing is drawn in the same frame: the over-strand runs SW to NE
(positive slope), the under-strand NW to SE.  The four arms of a crossing are
named by compass direction and sit counterclockwise in the order NE, NW, SW,
SE; the four corners (quadrants) between them are N, W, S, E.  Gluing arms
together gives a rotation system, and the regions of the diagram are the
faces it traces out.

The tangle is assembled the herringbone way: a horizontal twist adds a
crossing to the right, between the NE and SE posts; a vertical twist adds one
below, between the SE and SW posts.  The numerator closure then joins NW to
NE and SW to SE.
"""

from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .conway import ClosureKind, Orientation, TwistSequence
from .errors import HerringboneError, NotATwoComponentLink

__all__ = [
    "ARMS",
    "QUADRANTS",
    "CCW_SIDE",
    "CW_SIDE",
    "OPPOSITE",
    "Dart",
    "PlanarMap",
    "ConnectorClass",
    "Crossing",
    "Edge",
    "Region",
    "SiteColoring",
    "LinkDiagram",
    "herringbone_map",
    "trace_components",
    "build_diagram",
    "site_coloring",
]

ARMS = ("NE", "NW", "SW", "SE")  # counterclockwise
QUADRANTS = ("N", "E", "S", "W")  # clockwise
OPPOSITE = {"NE": "SW", "SW": "NE", "NW": "SE", "SE": "NW"}
OVER_ARMS = frozenset({"NE", "SW"})
# the corner swept when a marker rotates clockwise across an arm starts on
# the arm's counterclockwise side and ends on its clockwise side
CCW_SIDE = {"NE": "N", "NW": "W", "SW": "S", "SE": "E"}
CW_SIDE = {"NE": "E", "NW": "N", "SW": "W", "SE": "S"}
CW_NEXT_ARM = {"NE": "SE", "SE": "SW", "SW": "NW", "NW": "NE"}
CW_NEXT_QUADRANT = {"N": "E", "E": "S", "S": "W", "W": "N"}
CCW_NEXT_QUADRANT = {v: k for k, v in CW_NEXT_QUADRANT.items()}

Dart = tuple[int, str]  # (crossing id, arm)


# -- raw planar map -----------------------------------------------------


@dataclass(frozen=True)
class PlanarMap:
    """Crossings glued arm to arm, before any labels or orientations."""

    seq: TwistSequence
    link: dict[Dart, Dart]
    edges: tuple[tuple[Dart, Dart], ...]
    site: tuple[int, ...]  # 0-based site per crossing; index 0 unused
    index_in_site: tuple[int, ...]
    special_arc: int  # edge index of the NW-NE closure arc
    lower_arc: int  # edge index of the SW-SE closure arc

    @property
    def n(self) -> int:
        return self.seq.n

    def strand_walk(self, start: Dart) -> list[tuple[Dart, Dart]]:
        """Edges met walking straight through crossings, leaving via ``start``."""
        walk = []
        out = start
        while True:
            into = self.link[out]
            walk.append((out, into))
            out = (into[0], OPPOSITE[into[1]])
            if out == start:
                return walk

    def faces(self) -> list[list[tuple[int, str]]]:
        """Faces as lists of corners ``(crossing, quadrant)``.

        Arriving at a crossing through arm ``a``, the face on the left fills
        the corner clockwise of ``a`` and the walk leaves by the next arm
        clockwise.
        """
        seen: set[Dart] = set()
        faces = []
        for v in range(1, self.n + 1):
            for a in ARMS:
                if (v, a) in seen:
                    continue
                corners = []
                cur = (v, a)
                while cur not in seen:
                    seen.add(cur)
                    corners.append((cur[0], CW_SIDE[cur[1]]))
                    cur = self.link[(cur[0], CW_NEXT_ARM[cur[1]])]
                faces.append(corners)
        return faces


def herringbone_map(seq: TwistSequence) -> PlanarMap:
    """Glue crossings according to the herringbone recursion and close up."""
    link: dict[Dart, Dart] = {}
    edges: list[tuple[Dart, Dart]] = []
    site = [-1]
    index_in_site = [-1]

    def join(a: Dart, b: Dart) -> int:
        link[a] = b
        link[b] = a
        edges.append((a, b))
        return len(edges) - 1

    posts: dict[str, Dart] = {}
    c = 0
    for k, (q, orient) in enumerate(zip(seq.sites, seq.orientations)):
        for idx in range(q):
            c += 1
            site.append(k)
            index_in_site.append(idx)
            if c == 1:
                posts = {"NW": (1, "NW"), "NE": (1, "NE"), "SE": (1, "SE"), "SW": (1, "SW")}
            elif orient is Orientation.HORIZONTAL:
                join(posts["NE"], (c, "NW"))
                join(posts["SE"], (c, "SW"))
                posts["NE"], posts["SE"] = (c, "NE"), (c, "SE")
            else:
                join(posts["SW"], (c, "NW"))
                join(posts["SE"], (c, "NE"))
                posts["SW"], posts["SE"] = (c, "SW"), (c, "SE")
    special = join(posts["NW"], posts["NE"])
    lower = join(posts["SW"], posts["SE"])
    return PlanarMap(seq, link, tuple(edges), tuple(site), tuple(index_in_site), special, lower)


def count_components(pmap: PlanarMap) -> int:
    seen: set[Dart] = set()
    count = 0
    for v in range(1, pmap.n + 1):
        for a in ARMS:
            if (v, a) in seen:
                continue
            count += 1
            for out, into in pmap.strand_walk((v, a)):
                seen.update((out, into, (out[0], OPPOSITE[out[1]]), (into[0], OPPOSITE[into[1]])))
    return count


# -- labelled diagram ---------------------------------------------------


class ConnectorClass(str, enum.Enum):
    IN_SITE = "InSite"
    HV = "HV"
    VH = "VH"
    BYPASS = "Bypass"  # joins two sites that are not consecutive
    CLOSURE_ARC = "ClosureArc"
    SPECIAL_EDGE = "SpecialEdge"


@dataclass(frozen=True)
class Region:
    id: int
    starred: bool
    corners: tuple[tuple[int, str], ...]


@dataclass(frozen=True)
class Crossing:
    id: int
    site_index: int
    index_in_site: int
    orientation: Orientation
    quadrant_region: dict[str, int]
    over_component: str
    under_component: str
    under_in: str  # arm the under-strand arrives through
    under_out: str
    over_in: str
    over_out: str
    dots: dict[str, str]  # dotted quadrant -> under-strand label
    labels: dict[str, tuple[int, str | None]]  # quadrant -> (sign, variable or None)
    clocked_quadrant: str
    arm_edge: dict[str, int]

    @property
    def monochromatic(self) -> bool:
        return self.over_component == self.under_component

    def label_text(self, quadrant: str) -> str:
        sign, var = self.labels[quadrant]
        body = var or "1"
        return body if sign > 0 else "-" + body


@dataclass(frozen=True)
class Edge:
    id: int
    tail: Dart
    head: Dart
    component: str
    left_region: int
    right_region: int
    active: bool
    upper: bool
    connector_class: ConnectorClass

    @property
    def direction_class(self) -> str:
        return "Upper" if self.upper else "Downer"

    @property
    def endpoints(self) -> tuple[Dart, Dart]:
        return (self.tail, self.head)


@dataclass(frozen=True)
class SiteColoring:
    colors: tuple[str, ...]  # per site: "x", "y" (monochromatic) or "xy"
    orientations: tuple[Orientation, ...]
    sites: tuple[int, ...]

    @property
    def mono_sites(self) -> list[tuple[int, int]]:
        """(0-based site index, crossing count) for each monochromatic site."""
        return [(k, q) for k, (q, c) in enumerate(zip(self.sites, self.colors)) if c != "xy"]

    @property
    def m(self) -> int:
        return len(self.mono_sites)

    @property
    def q_hat(self) -> list[int]:
        return [q for _, q in self.mono_sites]

    def is_monochromatic(self, k: int) -> bool:
        return self.colors[k] != "xy"

    def predicted_product(self) -> int:
        out = 1
        for q in self.q_hat:
            out *= q + 1
        return out


@dataclass(frozen=True)
class LinkDiagram:
    seq: TwistSequence
    pmap: PlanarMap = field(repr=False)
    crossings: tuple[Crossing, ...]  # crossings[0] is c1
    regions: tuple[Region, ...]  # regions[k].id == k
    edges: tuple[Edge, ...]  # edges[k].id == k + 1
    component_walks: dict[str, tuple[int, ...]] = field(repr=False)
    coloring: SiteColoring
    component_count: int = 2

    @property
    def n(self) -> int:
        return self.seq.n

    @property
    def starred(self) -> tuple[int, int]:
        return (0, self.n + 1)

    @property
    def standard_form(self) -> bool:
        return self.special_edge.component == "y"

    def crossing(self, cid: int) -> Crossing:
        return self.crossings[cid - 1]

    def edge(self, eid: int) -> Edge:
        return self.edges[eid - 1]

    def edge_at(self, dart: Dart) -> Edge:
        return self.edge(self.crossing(dart[0]).arm_edge[dart[1]])

    @property
    def special_edge(self) -> Edge:
        return next(e for e in self.edges if e.connector_class is ConnectorClass.SPECIAL_EDGE)

    @property
    def special_vertices(self) -> tuple[int, int]:
        return (1, self.n)

    def active_edges(self) -> list[Edge]:
        return [e for e in self.edges if e.active]

    def hv_connectors(self) -> list[Edge]:
        return [e for e in self.edges if e.active and e.connector_class is ConnectorClass.HV]

    def region_of(self, cid: int, quadrant: str) -> int:
        return self.crossing(cid).quadrant_region[quadrant]

    def to_json(self) -> dict:
        return {
            "conway": self.seq.canonical(),
            "n": self.n,
            "orientations": [o.value for o in self.seq.orientations],
            "starred_regions": list(self.starred),
            "crossings": [
                {
                    "id": c.id,
                    "site": c.site_index + 1,
                    "index_in_site": c.index_in_site + 1,
                    "orientation": c.orientation.value,
                    "quadrant_region": {q: c.quadrant_region[q] for q in QUADRANTS},
                    "over": {"component": c.over_component, "in": c.over_in, "out": c.over_out},
                    "under": {"component": c.under_component, "in": c.under_in, "out": c.under_out},
                    "dots": {q: c.dots[q] for q in QUADRANTS if q in c.dots},
                    "labels": {q: c.label_text(q) for q in QUADRANTS},
                    "clocked_quadrant": c.clocked_quadrant,
                }
                for c in self.crossings
            ],
            "edges": [
                {
                    "id": e.id,
                    "tail": [e.tail[0], e.tail[1]],
                    "head": [e.head[0], e.head[1]],
                    "component": e.component,
                    "left_region": e.left_region,
                    "right_region": e.right_region,
                    "active": e.active,
                    "direction_class": e.direction_class,
                    "connector_class": e.connector_class.value,
                }
                for e in self.edges
            ],
            "coloring": {
                "sites": list(self.coloring.sites),
                "colors": list(self.coloring.colors),
                "m": self.coloring.m,
                "q_hat": self.coloring.q_hat,
            },
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_dot(self) -> str:
        lines = [f'graph "{self.seq.canonical()}" {{', "  node [shape=circle];"]
        for c in self.crossings:
            lines.append(f'  c{c.id} [label="c{c.id}\\n{c.orientation.value}{c.site_index + 1}"];')
        for e in self.edges:
            style = "solid" if e.active else "dashed"
            color = "red" if e.component == "x" else "darkgreen"
            lines.append(
                f'  c{e.tail[0]} -- c{e.head[0]} [label="e{e.id}", color={color}, style={style}];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"


def trace_components(pmap: PlanarMap) -> tuple[int, dict[str, list[tuple[Dart, Dart]]]]:
    """Split the diagram into components and orient them.

    The component leaving c1 through its NW arm is ``y``; at c1 it points NW.
    The other component is ``x`` and leaves c1 through NE.  Returns the
    component count and, for a link, each component's oriented edge walk.
    """
    count = count_components(pmap)
    if count != 2:
        return count, {}
    y_walk = pmap.strand_walk((1, "NW"))
    y_darts = {d for pair in y_walk for d in pair}
    if (1, "NE") in y_darts or (1, "SW") in y_darts:
        raise HerringboneError("c1 is not a crossing between the two components")
    x_walk = pmap.strand_walk((1, "NE"))
    return count, {"y": y_walk, "x": x_walk}


def _clocked_quadrant(starred: set[str]) -> str:
    """Quadrant clockwise of the starred corner (or of the adjacent starred pair)."""
    if len(starred) == 1:
        return CW_NEXT_QUADRANT[next(iter(starred))]
    if len(starred) == 2:
        for q in starred:
            if CW_NEXT_QUADRANT[q] in starred:
                return CW_NEXT_QUADRANT[CW_NEXT_QUADRANT[q]]
    raise HerringboneError(f"cannot place a clocked marker next to starred corners {sorted(starred)}")


def build_diagram(seq: TwistSequence) -> LinkDiagram:
    """Standard-form herringbone diagram with numbering, dots and edge classes."""
    pmap = herringbone_map(seq)
    n = seq.n
    count, walks = trace_components(pmap)
    if count != 2:
        raise NotATwoComponentLink(
            f"{seq.canonical()} closes to a {ClosureKind.KNOT.value}, not a 2-component link"
        )

    faces = pmap.faces()
    face_of: dict[tuple[int, str], int] = {}
    for f, corners in enumerate(faces):
        for corner in corners:
            face_of[corner] = f
    if len(faces) != n + 2:
        raise HerringboneError(f"expected {n + 2} regions, traced {len(faces)}")
    outer, inner = face_of[(n, "E")], face_of[(n, "N")]
    starred_faces = {outer, inner}

    # clocked markers fix the numbering of the unstarred regions
    clocked: dict[int, str] = {}
    face_to_region = {outer: 0, inner: n + 1}
    for v in range(1, n + 1):
        stars = {q for q in QUADRANTS if face_of[(v, q)] in starred_faces}
        if not stars:
            raise HerringboneError(f"crossing c{v} is a spinner")
        q = _clocked_quadrant(stars)
        clocked[v] = q
        f = face_of[(v, q)]
        if f in face_to_region:
            raise HerringboneError("clocked markers do not form a matching")
        face_to_region[f] = v
    region_of = {corner: face_to_region[f] for corner, f in face_of.items()}

    # orientation and component of each arm
    strand: dict[Dart, tuple[str, str]] = {}  # dart -> (component, "in" | "out")
    for comp, walk in walks.items():
        for out, into in walk:
            strand[out] = (comp, "out")
            strand[into] = (comp, "in")

    edge_ids = {}
    for k, (a, b) in enumerate(pmap.edges):
        edge_ids[a] = edge_ids[b] = k + 1

    crossings = []
    for v in range(1, n + 1):
        arms_in = {a for a in ARMS if strand[(v, a)][1] == "in"}
        under_in = next(a for a in ("NW", "SE") if a in arms_in)
        over_in = next(a for a in ("NE", "SW") if a in arms_in)
        under_out, over_out = OPPOSITE[under_in], OPPOSITE[over_in]
        t = strand[(v, under_in)][0]
        labels = {
            CCW_SIDE[under_out]: (1, t),  # left, after the crossing
            CW_SIDE[under_in]: (-1, t),  # left, before
            CCW_SIDE[under_in]: (1, None),  # right, before
            CW_SIDE[under_out]: (-1, None),  # right, after
        }
        k = pmap.site[v]
        crossings.append(
            Crossing(
                id=v,
                site_index=k,
                index_in_site=pmap.index_in_site[v],
                orientation=seq.orientations[k],
                quadrant_region={q: region_of[(v, q)] for q in QUADRANTS},
                over_component=strand[(v, over_in)][0],
                under_component=t,
                under_in=under_in,
                under_out=under_out,
                over_in=over_in,
                over_out=over_out,
                dots={CCW_SIDE[under_out]: t, CW_SIDE[under_in]: t},
                labels=labels,
                clocked_quadrant=clocked[v],
                arm_edge={a: edge_ids[(v, a)] for a in ARMS},
            )
        )

    regions = []
    corners_by_region: dict[int, list[tuple[int, str]]] = {r: [] for r in range(n + 2)}
    for corner, r in sorted(region_of.items()):
        corners_by_region[r].append(corner)
    for r in range(n + 2):
        regions.append(Region(r, r in (0, n + 1), tuple(corners_by_region[r])))

    starred_ids = {0, n + 1}
    edges = []
    for k, (a, b) in enumerate(pmap.edges):
        tail, head = (a, b) if strand[a][1] == "out" else (b, a)
        comp = strand[tail][0]
        left = region_of[(tail[0], CCW_SIDE[tail[1]])]
        right = region_of[(tail[0], CW_SIDE[tail[1]])]
        active = left not in starred_ids and right not in starred_ids
        upper = tail[1] in OVER_ARMS and head[1] not in OVER_ARMS
        if k == pmap.special_arc:
            cls = ConnectorClass.SPECIAL_EDGE
        elif k == pmap.lower_arc:
            cls = ConnectorClass.CLOSURE_ARC
        else:
            s1, s2 = sorted((pmap.site[a[0]], pmap.site[b[0]]))
            if s1 == s2:
                cls = ConnectorClass.IN_SITE
            elif s2 == s1 + 1:
                h = seq.orientations[s1] is Orientation.HORIZONTAL
                cls = ConnectorClass.HV if h else ConnectorClass.VH
            else:
                cls = ConnectorClass.BYPASS
        edges.append(Edge(k + 1, tail, head, comp, left, right, active, upper, cls))

    walk_ids = {comp: tuple(edge_ids[out] for out, _ in walk) for comp, walk in walks.items()}
    crossings_t = tuple(crossings)
    return LinkDiagram(
        seq=seq,
        pmap=pmap,
        crossings=crossings_t,
        regions=tuple(regions),
        edges=tuple(edges),
        component_walks=walk_ids,
        coloring=_coloring(seq, crossings_t),
        component_count=count,
    )


def _coloring(seq: TwistSequence, crossings: Iterable[Crossing]) -> SiteColoring:
    per_site: dict[int, set[str]] = {}
    for c in crossings:
        label = c.over_component if c.monochromatic else "xy"
        per_site.setdefault(c.site_index, set()).add(label)
    colors = []
    for k in range(len(seq.sites)):
        labels = per_site[k]
        if len(labels) != 1:
            raise HerringboneError(f"twist site {k + 1} mixes crossing types {sorted(labels)}")
        colors.append(labels.pop())
    return SiteColoring(tuple(colors), seq.orientations, seq.sites)


def site_coloring(diagram: LinkDiagram) -> SiteColoring:
    return diagram.coloring


def dotted_counts(diagram: LinkDiagram, quadrants: dict[int, str]) -> Counter:
    """Number of x- and y-dots in the given marker quadrants, by label."""
    got: Counter = Counter()
    for cid, q in quadrants.items():
        label = diagram.crossing(cid).dots.get(q)
        if label:
            got[label] += 1
    return got
