import itertools
import random

import pytest

from boxlab.builders import (
    SpanGadgetSpec,
    TreeDecomposition,
    bipartite_suitable_rep,
    caught_permutation_rep,
    degenerate_rep,
    min_degree_decomposition,
    pair_elimination_rep,
    span_gadget,
    treewidth_rep,
    validate_tree_decomposition,
    vertex_deletion_lift,
)
from boxlab.core import (
    Graph,
    bipartite_supergraph,
    complete_graph,
    verify_box_rep,
)
from boxlab.errors import ParameterError, StructuralError, VerificationError
from boxlab.exact import exact_boxicity
from boxlab.generators import bipartite_graph, comatching_graph, gnp_graph, grid_graph


def random_graph(rng, n, p):
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph(n, edges)


# --- span gadget -----------------------------------------------------------


def test_span_gadget_geometry():
    # order over B = (10, 11, 12); A vertices 0..2 with different spans
    spec = SpanGadgetSpec(
        order=(10, 11, 12),
        spans={0: (1, 2), 1: (3, 3), 2: None},
    )
    rep = span_gadget(spec, vertices=[0, 1, 2, 4, 10, 11, 12])
    assert rep.d == 2
    def meets(u, v):
        return rep.boxes[u].intersects(rep.boxes[v])
    # A vertex 0 spans positions 1..2: meets exactly those B vertices
    assert meets(0, 10) and meets(0, 11) and not meets(0, 12)
    # A vertex 1 spans only position 3
    assert not meets(1, 10) and not meets(1, 11) and meets(1, 12)
    # A vertex with no span meets no B vertex
    assert not any(meets(2, w) for w in (10, 11, 12))
    # A side is pairwise intersecting, B side too, outsiders meet everyone
    assert meets(0, 1) and meets(0, 2) and meets(1, 2)
    assert meets(10, 11) and meets(10, 12) and meets(11, 12)
    for other in (0, 1, 2, 10, 11, 12):
        assert meets(4, other)


def test_span_gadget_validates_input():
    with pytest.raises(StructuralError):
        span_gadget(SpanGadgetSpec(order=(1, 1), spans={}), vertices=range(3))
    with pytest.raises(StructuralError):
        span_gadget(SpanGadgetSpec(order=(1,), spans={1: (1, 1)}), vertices=range(3))
    with pytest.raises(StructuralError):
        span_gadget(SpanGadgetSpec(order=(1, 2), spans={0: (2, 1)}), vertices=range(3))
    with pytest.raises(StructuralError):
        span_gadget(SpanGadgetSpec(order=(1, 2), spans={0: (0, 1)}), vertices=range(3))


# --- pair elimination ------------------------------------------------------


def test_pair_elimination_small_graphs_meet_half_n():
    rng = random.Random(31)
    for _ in range(200):
        n = rng.randint(1, 7)
        g = random_graph(rng, n, rng.choice((0.1, 0.3, 0.5, 0.8)))
        rep = pair_elimination_rep(g)
        assert verify_box_rep(g, rep).ok
        assert rep.d <= max(1, n // 2)


def test_pair_elimination_cycle4():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    rep = pair_elimination_rep(g)
    assert rep.d == 2
    assert verify_box_rep(g, rep).ok


def test_pair_elimination_comatching_matches_oracle():
    for n in (4, 6):
        g = comatching_graph(n)
        rep = pair_elimination_rep(g)
        exact, _ = exact_boxicity(g)
        assert rep.d == n // 2 == exact


def test_pair_elimination_complete_graph_single_dim():
    rep = pair_elimination_rep(complete_graph(5))
    assert rep.d == 1
    assert verify_box_rep(complete_graph(5), rep).ok


# --- caught permutations ----------------------------------------------------


def test_caught_permutation_rep_bipartite():
    g = bipartite_graph(12, 40, 0.3, 5, cap_a=6)
    a = list(range(12))
    b = list(range(12, 52))
    rep = caught_permutation_rep(g, a, b, k=6, seed=3)
    target = bipartite_supergraph(g, a, b)
    assert verify_box_rep(target, rep).ok


def test_caught_permutation_rep_rejects_high_degree():
    g = bipartite_graph(5, 10, 0.9, 1)
    with pytest.raises(ParameterError):
        caught_permutation_rep(g, list(range(5)), list(range(5, 15)), k=1, seed=0)


def test_caught_permutation_rep_no_cross_non_edges():
    # complete bipartite pattern: single constant dimension suffices
    g = Graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    rep = caught_permutation_rep(g, [0, 1], [2, 3], k=2, seed=0)
    assert rep.d == 1


# --- degenerate graphs ------------------------------------------------------


def test_degenerate_rep_on_trees():
    rng = random.Random(17)
    for trial in range(5):
        n = rng.randint(10, 60)
        edges = [(i, rng.randrange(i)) for i in range(1, n)]
        g = Graph(n, edges)
        rep = degenerate_rep(g, k=1, seed=trial)
        assert verify_box_rep(g, rep).ok


def test_degenerate_rep_complete_graph_short_circuit():
    g = complete_graph(4)
    rep = degenerate_rep(g, k=3, seed=0)
    assert rep.d == 1
    assert verify_box_rep(g, rep).ok


def test_degenerate_rep_subdivided_k5():
    # subdividing every edge of K5 once yields a 2-degenerate graph
    base = list(itertools.combinations(range(5), 2))
    edges = []
    nxt = 5
    for u, v in base:
        edges.append((u, nxt))
        edges.append((nxt, v))
        nxt += 1
    g = Graph(nxt, edges)
    assert g.degeneracy_ordering()[1] == 2
    rep = degenerate_rep(g, k=2, seed=1)
    assert verify_box_rep(g, rep).ok


def test_degenerate_rep_rejects_wrong_k():
    g = complete_graph(5)  # 4-degenerate
    with pytest.raises(ParameterError):
        degenerate_rep(g, k=2, seed=0)


def test_degenerate_rep_deterministic():
    g = gnp_graph(40, 0.1, 5)
    k = g.degeneracy_ordering()[1]
    a = degenerate_rep(g, k=k, seed=8)
    b = degenerate_rep(g, k=k, seed=8)
    assert a == b


# --- bipartite suitable -----------------------------------------------------


def test_bipartite_suitable_rep_verifies():
    g = bipartite_graph(30, 80, 0.25, 9, cap_a=16, cap_b=64)
    a = list(range(30))
    b = list(range(30, 110))
    rep = bipartite_suitable_rep(g, a, b, d=16, delta=64, seed=2)
    target = bipartite_supergraph(g, a, b)
    assert verify_box_rep(target, rep).ok


def test_bipartite_suitable_rep_rejects_bad_degrees():
    g = bipartite_graph(10, 10, 0.9, 4)
    with pytest.raises(ParameterError):
        bipartite_suitable_rep(g, list(range(10)), list(range(10, 20)),
                               d=2, delta=3, seed=0)


# --- tree decompositions ----------------------------------------------------


def path_decomposition_of_grid(rows, cols):
    # bag c = columns c and c+1, a path decomposition of width 2*rows-1
    bags = {}
    for c in range(cols - 1):
        verts = [r * cols + c for r in range(rows)]
        verts += [r * cols + c + 1 for r in range(rows)]
        bags[c + 1] = frozenset(verts)
    edges = tuple((c, c + 1) for c in range(1, cols - 1))
    return TreeDecomposition(bags, edges)


def test_validate_tree_decomposition_accepts_grid_path():
    g = grid_graph(3, 5)
    td = path_decomposition_of_grid(3, 5)
    width = validate_tree_decomposition(g, td)
    assert width == 5


def test_validate_tree_decomposition_negatives():
    g = Graph(3, [(0, 1), (1, 2)])
    # missing edge coverage
    td = TreeDecomposition({1: frozenset({0, 1}), 2: frozenset({2})}, ((1, 2),))
    with pytest.raises(StructuralError):
        validate_tree_decomposition(g, td)
    # vertex 0 appears in two non-adjacent bags
    td = TreeDecomposition(
        {1: frozenset({0, 1}), 2: frozenset({1, 2}), 3: frozenset({0})},
        ((1, 2), (2, 3)),
    )
    with pytest.raises(StructuralError):
        validate_tree_decomposition(g, td)
    # not a tree: edge count off
    td = TreeDecomposition({1: frozenset({0, 1}), 2: frozenset({1, 2})}, ())
    with pytest.raises(StructuralError):
        validate_tree_decomposition(g, td)


def test_min_degree_decomposition_is_valid():
    rng = random.Random(41)
    for trial in range(5):
        g = random_graph(rng, rng.randint(2, 25), 0.3)
        td = min_degree_decomposition(g)
        validate_tree_decomposition(g, td)


def test_treewidth_rep_on_grids():
    for rows, cols in ((2, 4), (3, 5)):
        g = grid_graph(rows, cols)
        td = path_decomposition_of_grid(rows, cols)
        rep = treewidth_rep(g, td)
        assert verify_box_rep(g, rep).ok


def test_treewidth_rep_cycle4_two_dims():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    td = TreeDecomposition(
        {1: frozenset({0, 1, 3}), 2: frozenset({1, 2, 3})}, ((1, 2),)
    )
    rep = treewidth_rep(g, td)
    assert verify_box_rep(g, rep).ok
    assert rep.d == 2


def test_treewidth_rep_complete_graph():
    g = complete_graph(6)
    td = TreeDecomposition({1: frozenset(range(6))}, ())
    rep = treewidth_rep(g, td)
    assert rep.d == 1
    assert verify_box_rep(g, rep).ok


# --- vertex deletion lift ---------------------------------------------------


def test_vertex_deletion_lift_roundtrip():
    rng = random.Random(53)
    for trial in range(10):
        n = rng.randint(2, 50)
        g = random_graph(rng, n, rng.choice((0.2, 0.5)))
        v = rng.randrange(n)
        rest = [u for u in range(n) if u != v]
        sub, old = g.induced(rest)
        base = pair_elimination_rep(sub)
        from boxlab.core import relabel_rep
        lifted = vertex_deletion_lift(
            relabel_rep(base, dict(enumerate(old))), g, v)
        assert lifted.d == base.d + 1
        assert verify_box_rep(g, lifted).ok


def test_vertex_deletion_lift_rejects_bad_input():
    g = Graph(3, [(0, 1), (1, 2)])
    # a rep of the wrong graph on {0, 1}: boxes that miss the (0,1) edge
    from boxlab.core import Box, BoxRepresentation, Interval
    bad = BoxRepresentation(1, {
        0: Box([Interval(0, 1)]),
        1: Box([Interval(5, 6)]),
    })
    with pytest.raises(VerificationError):
        vertex_deletion_lift(bad, g, 2)
    good = BoxRepresentation(1, {
        0: Box([Interval(0, 1)]),
        1: Box([Interval(1, 2)]),
    })
    with pytest.raises(ParameterError):
        vertex_deletion_lift(good, g, 1)  # vertex already present
