import random

import pytest

from boxlab.core import (
    NEG_INF,
    POS_INF,
    Box,
    BoxRepresentation,
    ExtInt,
    Graph,
    Interval,
    Poset,
    Realizer,
    bipartite_supergraph,
    comparability_graph,
    complete_graph,
    extend_full,
    full_box,
    intersection_graph,
    local_supergraph,
    order_from_sequence,
    order_sequence,
    product_compose,
    relabel_rep,
    verify_box_rep,
    verify_fk_realizer,
    verify_realizer,
)
from boxlab.errors import StructuralError


def test_extint_ordering():
    assert NEG_INF < ExtInt(-10**9) < ExtInt(0) < ExtInt(10**9) < POS_INF
    assert not NEG_INF < NEG_INF
    assert ExtInt(3) == ExtInt(3)
    assert ExtInt(3) <= ExtInt(3)


def test_extint_json_roundtrip():
    for x in (NEG_INF, POS_INF, ExtInt(-7), ExtInt(0), ExtInt(42)):
        assert ExtInt.from_json(x.to_json()) == x
    with pytest.raises(StructuralError):
        ExtInt.from_json("oops")
    with pytest.raises(StructuralError):
        ExtInt.from_json(True)


def test_interval_intersection():
    a = Interval(ExtInt(0), ExtInt(5))
    b = Interval(ExtInt(5), ExtInt(9))
    c = Interval(ExtInt(6), ExtInt(9))
    assert a.intersects(b)
    assert not a.intersects(c)
    full = Interval(NEG_INF, POS_INF)
    assert full.intersects(a) and full.intersects(c)


def test_interval_rejects_empty():
    with pytest.raises(StructuralError):
        Interval(ExtInt(3), ExtInt(2))


def test_box_intersection_is_dimensionwise():
    a = Box([Interval(ExtInt(0), ExtInt(2)), Interval(ExtInt(0), ExtInt(2))])
    b = Box([Interval(ExtInt(1), ExtInt(3)), Interval(ExtInt(3), ExtInt(4))])
    assert not a.intersects(b)
    c = Box([Interval(ExtInt(2), ExtInt(3)), Interval(ExtInt(2), ExtInt(4))])
    assert a.intersects(c)


def test_graph_basics():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.neighbors(1) == frozenset({0, 2})
    assert g.max_degree() == 2
    assert not g.is_complete()
    assert complete_graph(3).is_complete()
    assert set(g.non_edges()) == {(0, 2), (0, 3), (1, 3)}


def test_graph_rejects_bad_edges():
    with pytest.raises(StructuralError):
        Graph(3, [(0, 3)])
    with pytest.raises(StructuralError):
        Graph(3, [(1, 1)])


def test_graph_induced_and_complement():
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    sub, old = g.induced([1, 2, 4])
    assert sub.n == 3
    assert old == [1, 2, 4]
    assert set(sub.edges) == {(0, 1)}
    comp = g.complement()
    assert set(comp.edges) & set(g.edges) == set()
    assert len(comp.edges) + len(g.edges) == 10


def test_degeneracy_ordering_on_tree():
    g = Graph(5, [(0, 1), (0, 2), (0, 3), (3, 4)])
    order, degen = g.degeneracy_ordering()
    assert sorted(order) == list(range(5))
    assert degen == 1


def test_verify_box_rep_positive_and_negative():
    g = Graph(3, [(0, 1), (1, 2)])
    good = BoxRepresentation(1, {
        0: Box([Interval(ExtInt(0), ExtInt(1))]),
        1: Box([Interval(ExtInt(1), ExtInt(2))]),
        2: Box([Interval(ExtInt(2), ExtInt(3))]),
    })
    assert verify_box_rep(g, good).ok
    bad = BoxRepresentation(1, {
        0: Box([Interval(ExtInt(0), ExtInt(3))]),
        1: Box([Interval(ExtInt(1), ExtInt(2))]),
        2: Box([Interval(ExtInt(2), ExtInt(3))]),
    })
    report = verify_box_rep(g, bad)
    assert not report.ok
    assert ("spurious_intersection", 0, 2) in report.violations


def test_verify_box_rep_requires_every_vertex():
    g = Graph(2, [])
    rep = BoxRepresentation(1, {0: full_box(1)})
    with pytest.raises(StructuralError):
        verify_box_rep(g, rep)


def test_product_compose_intersects_graphs():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)])
    h = Graph(3, [(0, 1)])
    rep_g = BoxRepresentation(1, {v: full_box(1) for v in range(3)})
    rep_h = BoxRepresentation(1, {
        0: Box([Interval(ExtInt(0), ExtInt(1))]),
        1: Box([Interval(ExtInt(1), ExtInt(2))]),
        2: Box([Interval(ExtInt(5), ExtInt(6))]),
    })
    combined = product_compose([rep_g, rep_h])
    assert combined.d == 2
    assert verify_box_rep(h, combined).ok


def test_extend_full_covers_missing_vertices():
    g = Graph(4, [(0, 1)])
    rep = BoxRepresentation(1, {
        0: Box([Interval(ExtInt(0), ExtInt(1))]),
        1: Box([Interval(ExtInt(1), ExtInt(2))]),
    })
    ext = extend_full(rep, [2, 3])
    assert set(ext.boxes) == {0, 1, 2, 3}
    assert ext.boxes[2] == full_box(1)


def test_local_and_bipartite_supergraphs():
    g = Graph(4, [(0, 1), (2, 3)])
    loc = local_supergraph(g, [0, 1])
    # pairs touching {2,3} are completed
    assert (2, 3) in loc.edges and (0, 2) in loc.edges
    assert (0, 1) in loc.edges
    bip = bipartite_supergraph(g, [0, 1], [2, 3])
    # only cross non-edges survive; (0,1) inside A is completed
    assert (0, 2) not in bip.edges
    assert (0, 1) in bip.edges
    assert (2, 3) in bip.edges


def test_intersection_graph_matches_manual_check():
    rng = random.Random(7)
    n = 12
    boxes = {}
    for v in range(n):
        lo1, lo2 = rng.randint(0, 8), rng.randint(0, 8)
        boxes[v] = Box([
            Interval(ExtInt(lo1), ExtInt(lo1 + rng.randint(0, 4))),
            Interval(ExtInt(lo2), ExtInt(lo2 + rng.randint(0, 4))),
        ])
    rep = BoxRepresentation(2, boxes)
    g = intersection_graph(rep)
    for u in range(n):
        for v in range(u + 1, n):
            expect = boxes[u].intersects(boxes[v])
            assert g.has_edge(u, v) == expect
    assert verify_box_rep(g, rep).ok


def test_relabel_rep():
    rep = BoxRepresentation(1, {
        0: Box([Interval(ExtInt(0), ExtInt(1))]),
        1: Box([Interval(ExtInt(2), ExtInt(3))]),
    })
    out = relabel_rep(rep, {0: 5, 1: 9})
    assert set(out.boxes) == {5, 9}
    assert out.boxes[5] == rep.boxes[0]


def test_poset_closure_and_cycle_detection():
    p = Poset.from_relations(3, [(0, 1), (1, 2)])
    assert p.less(0, 2)
    assert (0, 2) in p.lt
    with pytest.raises(StructuralError):
        Poset.from_relations(2, [(0, 1), (1, 0)])


def test_poset_up_set_and_incomparable_pairs():
    p = Poset.from_relations(4, [(0, 1), (0, 2)])
    assert p.up_set(0) == frozenset({0, 1, 2})
    inc = p.incomparable_pairs()
    assert (1, 2) in inc and (2, 1) in inc
    assert (0, 1) not in inc


def test_comparability_graph():
    p = Poset.from_relations(3, [(0, 1), (1, 2)])
    g = comparability_graph(p)
    assert set(g.edges) == {(0, 1), (0, 2), (1, 2)}


def test_order_sequence_roundtrip():
    seq = (2, 0, 3, 1)
    order = order_from_sequence(seq)
    assert tuple(order_sequence(order)) == seq
    assert order[2] == 1  # element 2 sits first


def test_verify_realizer_positive_negative():
    p = Poset.from_relations(2, [])
    good = Realizer(2, [order_from_sequence((0, 1)), order_from_sequence((1, 0))])
    assert verify_realizer(p, good).ok
    bad = Realizer(2, [order_from_sequence((0, 1))])
    report = verify_realizer(p, bad)
    assert not report.ok
    assert report.violations[0][0] == "extra_relation"


def test_verify_realizer_catches_non_extension():
    p = Poset.from_relations(2, [(0, 1)])
    rev = Realizer(2, [order_from_sequence((1, 0))])
    report = verify_realizer(p, rev)
    assert not report.ok


def test_verify_fk_realizer():
    # chain: one order suffices and is its own witness
    p = Poset.from_relations(3, [(0, 1), (1, 2)])
    orders = [order_from_sequence((0, 1, 2))]
    assert verify_fk_realizer(p, orders).ok
    # antichain of 2: a single order cannot witness both directions
    q = Poset.from_relations(2, [])
    assert not verify_fk_realizer(q, [order_from_sequence((0, 1))]).ok
    both = [order_from_sequence((0, 1)), order_from_sequence((1, 0))]
    assert verify_fk_realizer(q, both).ok
