from collections import Counter
from itertools import permutations

import pytest

from herringbone.alexander import build_matrix, link_polynomial, reduce
from herringbone.bipoly import X, Y, equal_up_to_unit
from herringbone.clocklattice import (
    MoveKind,
    apply_move,
    available_moves,
    bottom_row_states,
    clocked_state,
    enumerate_lattice,
    enumerate_matchings,
    is_valid_state,
    state_sum,
)
from herringbone.conway import ClosureKind, TwistSequence, enumerate_sequences, parse_conway
from herringbone.diagram import ConnectorClass, build_diagram
from herringbone.errors import MoveNotAvailable, StateBudgetExceeded

CLOCK, COUNTER = MoveKind.CLOCK, MoveKind.COUNTERCLOCK
LINKS_10 = enumerate_sequences(10, ClosureKind.TWO_COMPONENT_LINK)


def pattern_permanent(diagram):
    """Count nonzero diagonals of the reduced matrix by trying every permutation."""
    red = reduce(build_matrix(diagram))
    n = len(red)
    return sum(all(red[i][p[i]] for i in range(n)) for p in permutations(range(n)))


@pytest.fixture(scope="module")
def whitehead():
    return build_diagram(parse_conway("2 1 2"))


@pytest.fixture(scope="module")
def ex221122():
    return build_diagram(parse_conway("221122"))


def test_clocked_whitehead(whitehead):
    s = clocked_state(whitehead)
    assert s.quadrants == ("E", "E", "N", "E", "S")
    assert s.regions == (1, 2, 3, 4, 5)
    assert s.term == X**2


def test_clocked_221122(ex221122):
    s = clocked_state(ex221122)
    assert (s.x_degree, s.y_degree) == (3, 0)


def test_clocked_term_y_free_everywhere():
    for seq in LINKS_10:
        assert clocked_state(build_diagram(seq)).y_degree == 0


def test_221122_clocked_moves(ex221122):
    moves = available_moves(ex221122, clocked_state(ex221122))
    assert len(moves) == 4 and all(k is CLOCK for _, k in moves)
    edges = [ex221122.edge(e) for e, _ in moves]
    assert sorted(e.component for e in edges) == ["x", "x", "y", "y"]
    reds = [e for e in edges if e.component == "x"]
    assert all(e.connector_class is ConnectorClass.HV for e in reds)
    # one red HV move raises the x-degree, the other lowers it
    terms = {str(apply_move(ex221122, clocked_state(ex221122), e.id, CLOCK).term) for e in reds}
    assert terms == {str(X**4), str(X**2)}


def test_clocked_has_no_counterclock_moves():
    for seq in LINKS_10:
        d = build_diagram(seq)
        assert all(k is CLOCK for _, k in available_moves(d, clocked_state(d)))


def test_hv_connectors_available_in_clocked():
    for seq in LINKS_10:
        d = build_diagram(seq)
        available = {e for e, _ in available_moves(d, clocked_state(d))}
        assert {e.id for e in d.hv_connectors()} <= available


def test_apply_move_involution(whitehead):
    s = clocked_state(whitehead)
    for eid, kind in available_moves(whitehead, s):
        t = apply_move(whitehead, s, eid, kind)
        assert is_valid_state(whitehead, t)
        assert apply_move(whitehead, t, eid, COUNTER) == s
        assert t.sign == -s.sign


def test_move_not_available(whitehead):
    s = clocked_state(whitehead)
    inactive = next(e for e in whitehead.edges if not e.active)
    with pytest.raises(MoveNotAvailable):
        apply_move(whitehead, s, inactive.id, CLOCK)
    eid = available_moves(whitehead, s)[0][0]
    with pytest.raises(MoveNotAvailable):
        apply_move(whitehead, s, eid, COUNTER)


def test_lattice_sizes(whitehead):
    assert pattern_permanent(whitehead) == 8
    assert len(enumerate_lattice(whitehead)) == 8
    hopf = build_diagram(TwistSequence((2,)))
    assert pattern_permanent(hopf) == 2
    assert len(enumerate_lattice(hopf)) == 2


def test_lattice_covers_every_matching():
    for seq in LINKS_10[:40]:
        d = build_diagram(seq)
        lat = enumerate_lattice(d)
        assert sorted(s.regions for s in lat.states) == enumerate_matchings(d)
        if d.n <= 7:
            assert pattern_permanent(d) == len(lat)


def test_lattice_source_and_sink():
    for seq in LINKS_10:
        d = build_diagram(seq)
        lat = enumerate_lattice(d)
        assert lat.sources() == [0]
        sink = lat.states[lat.sink]
        moves = available_moves(d, sink)
        assert moves and all(k is COUNTER for _, k in moves)
        assert lat.is_acyclic() and lat.is_weakly_connected()


def test_diamond(ex221122):
    s = clocked_state(ex221122)
    (e1, _), (e2, _) = available_moves(ex221122, s)[:2]
    a = apply_move(ex221122, apply_move(ex221122, s, e1, CLOCK), e2, CLOCK)
    b = apply_move(ex221122, apply_move(ex221122, s, e2, CLOCK), e1, CLOCK)
    assert a == b


def test_state_sum_whitehead(whitehead):
    lat = enumerate_lattice(whitehead)
    ssum = state_sum(whitehead, lat)
    assert equal_up_to_unit(ssum, (1 - X - 2 * Y + 2 * X * Y + Y**2 - X * Y**2))
    assert sum(abs(c) for c in ssum.terms.values()) == len(lat)


def test_state_sum_matches_determinant():
    for seq in LINKS_10:
        d = build_diagram(seq)
        assert equal_up_to_unit(state_sum(d, enumerate_lattice(d)), link_polynomial(d)), seq


def test_221122_y_free_slice(ex221122):
    ssum = state_sum(ex221122, enumerate_lattice(ex221122))
    assert {i: c for (i, j), c in ssum.terms.items() if j == 0} == {2: 2, 3: -5, 4: 2}


def test_bottom_row_221122(ex221122):
    br = bottom_row_states(ex221122)
    assert len(br) == 9
    assert set(br.coordinates) == {(a, b) for a in range(3) for b in range(3)}
    assert br.consistent
    assert Counter(br.x_exponents()) == {2: 2, 3: 5, 4: 2}


def test_bottom_row_single_state_when_no_monochromatic_site():
    d = build_diagram(TwistSequence((4,)))
    assert d.coloring.m == 0
    br = bottom_row_states(d)
    assert len(br) == 1 and br.states[0] == clocked_state(d)


def test_bottom_row_whitehead(whitehead):
    br = bottom_row_states(whitehead)
    assert len(br) == 2
    ssum = state_sum(whitehead, enumerate_lattice(whitehead))
    assert sum(abs(c) for (i, j), c in ssum.terms.items() if j == 0) == 2


def test_budget_guard(ex221122):
    with pytest.raises(StateBudgetExceeded):
        enumerate_lattice(ex221122, budget=10)


def test_dot_is_reproducible(ex221122):
    a = enumerate_lattice(ex221122).to_dot("221122")
    b = enumerate_lattice(build_diagram(parse_conway("2 2 1 1 2 2"))).to_dot("221122")
    assert a == b
    assert a.count("->") == len(enumerate_lattice(ex221122).moves)


def test_state_json(whitehead):
    doc = enumerate_lattice(whitehead).to_json()
    assert doc["states"][0] == {"regions": [1, 2, 3, 4, 5], "quadrants": ["E", "E", "N", "E", "S"], "term": [1, 2, 0]}
