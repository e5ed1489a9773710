import json

import pytest

from herringbone.analysis import DIAGRAM_CHECKS
from herringbone.conway import ClosureKind, Orientation, TwistSequence, enumerate_sequences, parse_conway
from herringbone.diagram import (
    CCW_SIDE,
    CW_SIDE,
    QUADRANTS,
    ConnectorClass,
    build_diagram,
    herringbone_map,
    site_coloring,
    trace_components,
)
from herringbone.errors import NotATwoComponentLink

LINKS_12 = enumerate_sequences(12, ClosureKind.TWO_COMPONENT_LINK)


@pytest.fixture(scope="module")
def whitehead():
    return build_diagram(parse_conway("2 1 2"))


@pytest.fixture(scope="module")
def ex221122():
    return build_diagram(parse_conway("221122"))


def test_whitehead_counts(whitehead):
    assert len(whitehead.crossings) == 5
    assert len(whitehead.regions) == 7
    assert len(whitehead.edges) == 10
    assert whitehead.special_vertices == (1, 5)
    special = whitehead.special_edge
    assert {special.tail[0], special.head[0]} == {1, 5}


def test_hopf_counts():
    d = build_diagram(TwistSequence((2,)))
    assert len(d.crossings) == 2 and len(d.regions) == 4
    assert d.special_vertices == (1, 2)
    assert d.special_edge.component == "y"


def test_221122_counts(ex221122):
    assert ex221122.n == 10 and len(ex221122.regions) == 12


def test_knot_rejected():
    with pytest.raises(NotATwoComponentLink):
        build_diagram(TwistSequence((3,)))
    with pytest.raises(NotATwoComponentLink):
        build_diagram(TwistSequence((2, 2)))


def test_whitehead_components(whitehead):
    y_sites = {whitehead.crossing(e.head[0]).site_index for e in map(whitehead.edge, whitehead.component_walks["y"])}
    assert y_sites == {0, 2}
    site2 = [c for c in whitehead.crossings if c.site_index == 1]
    assert all(c.over_component == c.under_component == "x" for c in site2)
    assert not any(c.over_component == c.under_component == "y" for c in whitehead.crossings)


def test_hopf_dichromatic():
    d = build_diagram(TwistSequence((2,)))
    assert all({c.over_component, c.under_component} == {"x", "y"} for c in d.crossings)


def test_221122_coloring(ex221122):
    col = site_coloring(ex221122)
    assert col.colors == ("xy", "x", "xy", "xy", "x", "xy")
    assert col.m == 2 and col.q_hat == [2, 2]


def test_site_coloring_examples(whitehead):
    assert whitehead.coloring.m == 1 and whitehead.coloring.q_hat == [1]
    assert build_diagram(TwistSequence((2,))).coloring.m == 0


def test_orientation_at_c1(whitehead):
    c1 = whitehead.crossing(1)
    assert c1.under_component == "y" and c1.under_out == "NW"
    assert c1.over_component == "x" and c1.over_out == "NE"


def test_trace_components_on_raw_map():
    count, walks = trace_components(herringbone_map(TwistSequence((2, 1, 2))))
    assert count == 2 and set(walks) == {"x", "y"}
    count, walks = trace_components(herringbone_map(TwistSequence((3,))))
    assert count == 1 and walks == {}


def test_dots_left_of_understrand():
    for seq in LINKS_12[:80]:
        d = build_diagram(seq)
        for c in d.crossings:
            dotted = set(c.dots)
            assert dotted == {CCW_SIDE[c.under_out], CW_SIDE[c.under_in]}
            a, b = sorted(dotted, key=QUADRANTS.index)
            assert (QUADRANTS.index(b) - QUADRANTS.index(a)) % 4 in (1, 3)
            assert set(c.dots.values()) == {c.under_component}


def test_whitehead_first_row_labels(whitehead):
    c1 = whitehead.crossing(1)
    row = ["0"] * 7
    for q in QUADRANTS:
        row[c1.quadrant_region[q]] = c1.label_text(q)
    assert row == ["y", "1", "0", "-y", "0", "0", "-1"]


def test_221122_active_edges(ex221122):
    assert len(ex221122.active_edges()) == 9


def test_whitehead_y_alternation(whitehead):
    walk = [whitehead.edge(e) for e in whitehead.component_walks["y"]]
    assert walk[0].connector_class is ConnectorClass.SPECIAL_EDGE
    assert [e.active for e in walk] == [k % 2 == 1 for k in range(len(walk))]
    assert all(e.upper for e in walk if e.active)


def test_clocked_marker_positions():
    for seq in LINKS_12:
        d = build_diagram(seq)
        n = d.n
        for c in d.crossings:
            if c.id == 1:
                want = "E"
            elif c.id == n:
                want = "S"
            else:
                want = "E" if c.orientation is Orientation.HORIZONTAL else "N"
            assert c.clocked_quadrant == want, (seq, c.id)
            # clocked state is the identity matching c_i -> r_i
            assert c.quadrant_region[c.clocked_quadrant] == c.id


def test_sites_touch_their_starred_region():
    for seq in LINKS_12:
        d = build_diagram(seq)
        for c in d.crossings:
            regs = set(c.quadrant_region.values())
            if c.orientation is Orientation.HORIZONTAL:
                assert d.n + 1 in regs
            else:
                assert 0 in regs


def test_euler_characteristic():
    for seq in LINKS_12:
        d = build_diagram(seq)
        assert d.n - len(d.edges) + len(d.regions) == 2


@pytest.mark.parametrize("name", sorted(DIAGRAM_CHECKS))
def test_diagram_lemmas_exhaustive(name):
    check = DIAGRAM_CHECKS[name]
    bad = [seq.canonical() for seq in LINKS_12 if not check(build_diagram(seq))]
    assert bad == []


def test_red_hv_connectors_in_221122(ex221122):
    hv = ex221122.hv_connectors()
    red = [e for e in hv if e.component == "x"]
    assert len(red) == 2


def test_json_export_is_stable(whitehead):
    text = whitehead.to_json_text()
    assert text == build_diagram(parse_conway("2 1 2")).to_json_text()
    doc = json.loads(text)
    assert doc["conway"] == "2 1 2"
    assert doc["starred_regions"] == [0, 6]
    assert doc["crossings"][0]["quadrant_region"] == {"N": 6, "E": 1, "S": 3, "W": 0}
    assert doc["crossings"][0]["clocked_quadrant"] == "E"
    assert {e["connector_class"] for e in doc["edges"]} >= {"SpecialEdge", "ClosureArc", "InSite"}


def test_dot_export(whitehead):
    dot = whitehead.to_dot()
    assert dot.startswith('graph "2 1 2"') and dot.count(" -- ") == 10
