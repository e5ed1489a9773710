"""Conway notation for rational tangles drawn in herringbone form.

A sequence ``p q1 ... qk r`` lists the crossing count of each twist site from
the NW corner of the tangle to the SE corner.  Sites alternate between
horizontal and vertical and the last one is horizontal, so the orientation of
every site follows from the length of the sequence alone.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field

from .errors import EmptyInput, FirstOrLastSiteTooSmall, NonPositiveSite, ParseError

__all__ = [
    "Orientation",
    "ClosureKind",
    "TwistSequence",
    "parse_conway",
    "predict_components",
    "enumerate_sequences",
]


class Orientation(str, enum.Enum):
    HORIZONTAL = "H"
    VERTICAL = "V"


class ClosureKind(str, enum.Enum):
    KNOT = "knot"
    TWO_COMPONENT_LINK = "link"


@dataclass(frozen=True)
class TwistSequence:
    sites: tuple[int, ...]
    orientations: tuple[Orientation, ...] = field(init=False, compare=False)

    def __post_init__(self):
        sites = tuple(int(s) for s in self.sites)
        object.__setattr__(self, "sites", sites)
        if not sites:
            raise EmptyInput("a Conway sequence needs at least one twist site")
        bad = [s for s in sites if s < 1]
        if bad:
            raise NonPositiveSite(f"twist sites must be positive, got {bad[0]}")
        if len(sites) >= 2 and (sites[0] < 2 or sites[-1] < 2):
            raise FirstOrLastSiteTooSmall(
                f"first and last twist sites need at least two crossings: {self.canonical()}"
            )
        last = len(sites) - 1
        orients = tuple(
            Orientation.HORIZONTAL if (last - i) % 2 == 0 else Orientation.VERTICAL
            for i in range(len(sites))
        )
        object.__setattr__(self, "orientations", orients)

    @property
    def n(self) -> int:
        return sum(self.sites)

    def __len__(self) -> int:
        return len(self.sites)

    def canonical(self) -> str:
        return " ".join(str(s) for s in self.sites)

    def __str__(self) -> str:
        return self.canonical()

    @property
    def is_degenerate(self) -> bool:
        """Fewer than three sites: outside the range the herringbone rules were stated for."""
        return len(self.sites) < 3

    def site_of_crossing(self) -> list[int]:
        """0-based site index for each crossing, in crossing-number order."""
        return [k for k, q in enumerate(self.sites) for _ in range(q)]


_SEPARATORS = re.compile(r"[\s,]+")


def parse_conway(text: str) -> TwistSequence:
    """Parse ``"2 1 2"``, ``"2,1,2"`` or the compact digit form ``"212"``.

    A single token made only of the digits 1-9 is read one digit per site.
    A token containing ``0`` (``"10"``) is one site; to write a single site
    such as eleven, add a separator: ``"11,"``.
    """
    if text is None:
        raise EmptyInput("no Conway notation given")
    stripped = text.strip()
    if not stripped:
        raise EmptyInput("no Conway notation given")
    tokens = [t for t in _SEPARATORS.split(stripped) if t]
    if not tokens:
        raise EmptyInput("no Conway notation given")
    has_separator = bool(_SEPARATORS.search(stripped))
    sites: list[int] = []
    if not has_separator and len(tokens) == 1 and re.fullmatch(r"[1-9]{2,}", tokens[0]):
        sites = [int(ch) for ch in tokens[0]]
    else:
        for tok in tokens:
            if not re.fullmatch(r"[+-]?\d+", tok):
                raise ParseError(f"not an integer twist count: {tok!r}")
            sites.append(int(tok))
    return TwistSequence(tuple(sites))


# Posts are indexed NW=0, NE=1, SE=2, SW=3; a tangle's strands pair them up.
_NW, _NE, _SE, _SW = range(4)


def _post_pairing(seq: TwistSequence) -> frozenset[frozenset[int]]:
    # a single crossing joins NW-SE (under) and NE-SW (over)
    partner = {_NW: _SE, _SE: _NW, _NE: _SW, _SW: _NE}
    first = True
    for q, orient in zip(seq.sites, seq.orientations):
        a, b = (_NE, _SE) if orient is Orientation.HORIZONTAL else (_SE, _SW)
        for _ in range(q):
            if first:
                first = False
                continue
            # one more half twist exchanges the strand ends at posts a and b
            pa, pb = partner[a], partner[b]
            if pa == b:
                continue
            partner[pa], partner[pb] = b, a
            partner[a], partner[b] = pb, pa
    return frozenset(frozenset((p, partner[p])) for p in range(4))


def predict_components(seq: TwistSequence) -> ClosureKind:
    """Closure kind of the numerator closure, from post bookkeeping alone."""
    pairing = _post_pairing(seq)
    if frozenset((_NW, _NE)) in pairing:
        return ClosureKind.TWO_COMPONENT_LINK
    return ClosureKind.KNOT


def enumerate_sequences(max_crossings: int, kind: ClosureKind) -> list[TwistSequence]:
    """Every valid sequence with at most ``max_crossings`` crossings of the given kind.

    Ordered lexicographically by site tuple.
    """
    if max_crossings < 2:
        raise ValueError("max_crossings must be at least 2")
    kind = ClosureKind(kind)
    found: list[tuple[int, ...]] = []
    for n in range(1, max_crossings + 1):
        # compositions of n via cut positions
        for cuts in itertools.product((False, True), repeat=n - 1):
            sites, run = [], 1
            for cut in cuts:
                if cut:
                    sites.append(run)
                    run = 1
                else:
                    run += 1
            sites.append(run)
            if len(sites) >= 2 and (sites[0] < 2 or sites[-1] < 2):
                continue
            found.append(tuple(sites))
    found.sort()
    out = []
    for s in found:
        seq = TwistSequence(s)
        if predict_components(seq) is kind:
            out.append(seq)
    return out
