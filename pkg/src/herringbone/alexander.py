"""Alexander matrix of a dotted diagram and the polynomial it determines."""

from __future__ import annotations

from dataclasses import dataclass

from .bipoly import ONE, X, Y, ZERO, BiPoly, det, divide_exact, normalize_unit
from .diagram import QUADRANTS, LinkDiagram
from .errors import NotDivisible, ZeroDeterminant

__all__ = [
    "AlexanderMatrix",
    "build_matrix",
    "reduce",
    "link_polynomial",
    "extract_delta",
    "alexander_polynomial",
    "render_matrix",
]

_VARS = {None: ONE, "x": X, "y": Y}
ONE_MINUS_Y = ONE - Y


@dataclass(frozen=True)
class AlexanderMatrix:
    """n x (n+2) matrix; row k is crossing c_(k+1), column r is region r_r."""

    entries: tuple[tuple[BiPoly, ...], ...]
    starred: tuple[int, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def column(self, r: int) -> list[BiPoly]:
        return [row[r] for row in self.entries]

    def to_json(self) -> dict:
        return {
            "rows": [[str(e) for e in row] for row in self.entries],
            "starred_columns": list(self.starred),
        }


def build_matrix(diagram: LinkDiagram) -> AlexanderMatrix:
    n = diagram.n
    rows = []
    for c in diagram.crossings:
        row = [ZERO] * (n + 2)
        for q in QUADRANTS:
            sign, var = c.labels[q]
            r = c.quadrant_region[q]
            # a region touching two corners of one crossing gets both labels
            row[r] = row[r] + (_VARS[var] if sign > 0 else -_VARS[var])
        rows.append(tuple(row))
    return AlexanderMatrix(tuple(rows), diagram.starred)


def reduce(matrix: AlexanderMatrix) -> list[list[BiPoly]]:
    """Strike out the starred columns, keeping the rest in order."""
    keep = [r for r in range(matrix.shape[1]) if r not in matrix.starred]
    return [[row[r] for r in keep] for row in matrix.entries]


def link_polynomial(diagram: LinkDiagram) -> BiPoly:
    """Determinant of the reduced matrix: ``(1 - y) * Delta`` up to a unit."""
    p = det(reduce(build_matrix(diagram)))
    if p.is_zero():
        raise ZeroDeterminant(f"reduced Alexander matrix of {diagram.seq} is singular")
    return p


def extract_delta(p: BiPoly) -> BiPoly:
    """Strip the ``(1 - y)`` factor and return Delta in canonical normalization.

    Units are invertible in the Laurent ring, so dividing ``p`` directly
    succeeds whenever ``(1 - y)`` divides it at all.
    """
    try:
        q = divide_exact(p, ONE_MINUS_Y)
    except NotDivisible as exc:
        raise NotDivisible(f"{p} has no (1 - y) factor") from exc
    return normalize_unit(q)


def alexander_polynomial(diagram: LinkDiagram) -> BiPoly:
    return extract_delta(link_polynomial(diagram))


def render_matrix(rows, row_labels=None, col_labels=None) -> str:
    """Aligned text table of monomial cells."""
    cells = [[str(e) for e in row] for row in rows]
    width = max([len(s) for row in cells for s in row] + [len(s) for s in (col_labels or [])])
    lines = []
    lead = max((len(s) for s in row_labels), default=0) if row_labels else 0
    if col_labels:
        lines.append(" " * (lead + 1 if row_labels else 0) + " ".join(s.rjust(width) for s in col_labels))
    for k, row in enumerate(cells):
        prefix = row_labels[k].ljust(lead) + " " if row_labels else ""
        lines.append(prefix + " ".join(s.rjust(width) for s in row))
    return "\n".join(lines)
