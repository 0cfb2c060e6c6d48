"""End-to-end constructions that package their output as certificates.

A certificate couples the finished box representation with every parameter
and witness needed to re-check it without re-running the build: the verifier
replays the box/graph comparison and recomputes each derived parameter from
the recorded inputs, bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .builders import (
    TreeDecomposition,
    _bipartite_suitable_with_witness,
    _caught_with_witness,
    _degenerate_with_witness,
    _pair_elimination_with_witness,
    _treewidth_with_witness,
    SpanGadgetSpec,
    span_gadget,
    validate_tree_decomposition,
    vertex_deletion_lift,
)
from .core import (
    Box,
    BoxRepresentation,
    Graph,
    Interval,
    NEG_INF,
    POS_INF,
    extend_full,
    product_compose,
    relabel_rep,
    verify_box_rep,
    VerifyReport,
    _make_report,
)
from .errors import ParameterError, StructuralError, VerificationError
from .formulas import (
    auto_partition_params,
    bipartite_params,
    caught_t,
    genus_split_k,
    ltw_target,
)
from .resampling import partition_bounded_mono
from .seeds import derive_seed
from .suitable import build_suitable


# ---------------------------------------------------------------------------
# layerings


@dataclass(frozen=True)
class Layering:
    """Layer index per vertex; valid when every edge spans at most one step."""

    layers_of: Tuple[int, ...]

    @property
    def count(self) -> int:
        return max(self.layers_of) + 1 if self.layers_of else 0

    def layer(self, i: int) -> List[int]:
        return [v for v, l in enumerate(self.layers_of) if l == i]


def validate_layering(g: Graph, layering: Layering) -> int:
    """Checks shape and edge locality; returns the number of layers."""
    if len(layering.layers_of) != g.n:
        raise StructuralError(
            f"layering covers {len(layering.layers_of)} vertices, graph has {g.n}"
        )
    for v, l in enumerate(layering.layers_of):
        if l < 0:
            raise StructuralError(f"vertex {v} has negative layer {l}")
    for u, v in g.edges:
        if abs(layering.layers_of[u] - layering.layers_of[v]) > 1:
            raise StructuralError(
                f"edge ({u},{v}) spans layers "
                f"{layering.layers_of[u]} and {layering.layers_of[v]}"
            )
    return layering.count


def bfs_layering(g: Graph, roots: Optional[Sequence[int]] = None) -> Layering:
    """Breadth-first layers; new components restart from their lowest vertex."""
    dist = [-1] * g.n
    queue: List[int] = []
    if roots:
        for r in roots:
            if dist[r] < 0:
                dist[r] = 0
                queue.append(r)
    for start in range(g.n):
        if dist[start] < 0 and not queue:
            dist[start] = 0
            queue.append(start)
        while queue:
            nxt: List[int] = []
            for u in queue:
                for w in sorted(g.neighbors(u)):
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            queue = nxt
    return Layering(tuple(dist))


# ---------------------------------------------------------------------------
# certificates


CERT_FORMAT = "boxlab-certificate"


@dataclass(frozen=True)
class Certificate:
    """A finished construction: representation plus reproduction data."""

    construction: str
    params: dict
    seed: int
    d: int
    target_d: int
    fallback: bool
    rep: BoxRepresentation
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "format": CERT_FORMAT,
            "construction": self.construction,
            "params": self.params,
            "seed": self.seed,
            "d": self.d,
            "target_d": self.target_d,
            "fallback": self.fallback,
            "witnesses": self.witnesses,
            "boxes": self.rep.to_json(),
        }

    @staticmethod
    def from_json(obj: dict) -> "Certificate":
        if not isinstance(obj, dict) or obj.get("format") != CERT_FORMAT:
            raise StructuralError("not a certificate object")
        for key in ("construction", "params", "seed", "d", "target_d", "fallback", "boxes"):
            if key not in obj:
                raise StructuralError(f"certificate is missing '{key}'")
        rep = BoxRepresentation.from_json(int(obj["d"]), obj["boxes"])
        return Certificate(
            construction=str(obj["construction"]),
            params=dict(obj["params"]),
            seed=int(obj["seed"]),
            d=int(obj["d"]),
            target_d=int(obj["target_d"]),
            fallback=bool(obj["fallback"]),
            rep=rep,
            witnesses=dict(obj.get("witnesses", {})),
        )


def bound_formula(construction: str, params: dict) -> int:
    """The dimension bound a certificate of this construction promises,
    recomputed from its recorded parameters alone."""
    if construction == "degree":
        return sum(p["inner_d"] + p["cross_d"] for p in params["pieces"])
    if construction == "genus":
        if params["method"] == "deletion":
            return params["rep_d"] + params["cut_size"]
        return sum(p["d"] for p in params["pieces"])
    if construction == "ltw":
        return ltw_target(params["ltw"])
    raise ParameterError(f"unknown construction '{construction}'")


def check_certificate(g: Graph, cert: Certificate, cap: int = 100) -> VerifyReport:
    """Replay the box verifier and recompute every derived parameter."""
    violations: List[Tuple] = []
    total = 0

    def flag(*item) -> None:
        nonlocal total
        total += 1
        if len(violations) < cap:
            violations.append(item)

    try:
        rep_report = verify_box_rep(g, cert.rep, cap=cap)
        total += rep_report.total
        violations.extend(rep_report.violations[: max(0, cap - len(violations))])
    except StructuralError as exc:
        flag("malformed_boxes", str(exc))
    if cert.rep.d != cert.d:
        flag("d_mismatch", cert.d, cert.rep.d)
    p = cert.params
    try:
        expect_target = bound_formula(cert.construction, p)
        if expect_target != cert.target_d:
            flag("target_mismatch", cert.target_d, expect_target)
    except (ParameterError, KeyError, TypeError) as exc:
        flag("bad_params", str(exc))
        return _make_report(violations, total, cap)
    if cert.construction == "degree":
        if p.get("route") != "matching":
            delta, d, k = p["delta"], p["d"], p["k"]
            if p.get("auto"):
                want = auto_partition_params(delta)
                if (d, k) != tuple(want):
                    flag("partition_params_mismatch", (d, k), want)
            if len(p["pieces"]) != k:
                flag("piece_count_mismatch", len(p["pieces"]), k)
            if "r" in p:
                want_rlt = bipartite_params(d, delta)
                got = (p["r"], p["ell"], p["t"])
                if got != want_rlt:
                    flag("bipartite_params_mismatch", got, want_rlt)
                bound = 4 * p["t"] * p["ell"] * p["p_max"]
                for piece in p["pieces"]:
                    if piece["cross_d"] > max(bound, 1):
                        flag("cross_bound_exceeded", piece["class"], piece["cross_d"], bound)
        if not cert.fallback and cert.d > cert.target_d:
            flag("target_not_met", cert.d, cert.target_d)
    elif cert.construction == "genus":
        if p["method"] == "suitable":
            want_k = genus_split_k(p["genus"])
            if p["k"] != want_k:
                flag("split_k_mismatch", p["k"], want_k)
            if p.get("n_h", 0) >= 2 and p.get("t_caught") is not None:
                want_t = caught_t(p["k"], p["n_h"])
                if p["t_caught"] != want_t:
                    flag("caught_t_mismatch", p["t_caught"], want_t)
        if cert.d != cert.target_d:
            flag("target_not_met", cert.d, cert.target_d)
    elif cert.construction == "ltw":
        if cert.d != 3 * p["d_sub"] + 1:
            flag("layered_shape_mismatch", cert.d, 3 * p["d_sub"] + 1)
        if not cert.fallback and cert.d > cert.target_d:
            flag("target_not_met", cert.d, cert.target_d)
    return _make_report(violations, total, cap)


# ---------------------------------------------------------------------------
# bounded maximum degree


def _matching_rep(g: Graph) -> BoxRepresentation:
    comp_of: Dict[int, int] = {}
    nxt = 0
    for v in range(g.n):
        if v in comp_of:
            continue
        comp_of[v] = nxt
        for w in g.neighbors(v):
            comp_of[w] = nxt
        nxt += 1
    boxes = {v: Box([Interval(3 * c, 3 * c + 1)]) for v, c in comp_of.items()}
    return BoxRepresentation(1, boxes)


def bounded_degree_rep(
    g: Graph,
    seed: int,
    d: Optional[int] = None,
    k: Optional[int] = None,
    unsafe: bool = False,
) -> Certificate:
    """Partition-based representation for graphs of bounded maximum degree.

    Splits the vertices into k classes with at most d same-class neighbours
    each, then realizes every class twice: the inside non-edges through the
    degenerate builder on the induced subgraph, the cross non-edges through
    the colouring-and-suitable-family bipartite builder.  With both d and k
    omitted they default to d = ceil(100 ln Delta), k = ceil(3 Delta / d)
    (clamped to one class for small Delta).  The recorded target equals the
    sum of the piece dimensions.
    """
    delta = g.max_degree()
    if (d is None) != (k is None):
        raise ParameterError("give both d and k, or neither")
    if delta <= 1:
        rep = _matching_rep(g) if g.n else BoxRepresentation(1, {})
        report = verify_box_rep(g, rep)
        if not report.ok:
            raise StructuralError(f"matching route failed: {report.summary()}")
        params = {
            "delta": delta,
            "route": "matching",
            "auto": d is None,
            "pieces": [{"class": 1, "inner_d": rep.d, "cross_d": 0}],
        }
        return Certificate("degree", params, seed, rep.d, rep.d, False, rep, {})
    auto = d is None
    if auto:
        d, k = auto_partition_params(delta)
    if d < 1 or k < 1:
        raise ParameterError("need d >= 1 and k >= 1")
    part = partition_bounded_mono(g, d, k, seed, unsafe=unsafe)
    pieces = []
    dims: List[BoxRepresentation] = []
    class_wit = []
    fallback = False
    cross_meta: Optional[Tuple[int, int, int]] = None
    p_max = 0
    for i in range(1, k + 1):
        members = part.classes()[i - 1]
        wit_entry: dict = {"class": i, "vertices": members}
        inner_d = 0
        cross_d = 0
        if members:
            sub, old_ids = g.induced(members)
            inner, wit = _degenerate_with_witness(
                sub, d, derive_seed(seed, "class", i, "inner")
            )
            back = {j: u for j, u in enumerate(old_ids)}
            inner = extend_full(
                relabel_rep(inner, back), set(range(g.n)) - set(members)
            )
            dims.append(inner)
            inner_d = inner.d
            fallback = fallback or wit.get("fallback", False)
            wit_entry["inner"] = wit
            outside = sorted(set(range(g.n)) - set(members))
            if outside:
                cross, cwit = _bipartite_suitable_with_witness(
                    g, outside, members, d, delta,
                    derive_seed(seed, "class", i, "cross"),
                )
                dims.append(cross)
                cross_d = cross.d
                cross_meta = (cwit["r"], cwit["ell"], cwit["t"])
                p_max = max(p_max, cwit["p_max"])
                wit_entry["cross"] = cwit
        class_wit.append(wit_entry)
        pieces.append({"class": i, "inner_d": inner_d, "cross_d": cross_d})
    rep = product_compose(dims)
    report = verify_box_rep(g, rep)
    if not report.ok:
        raise StructuralError(f"degree pipeline failed: {report.summary()}")
    params = {
        "delta": delta,
        "d": d,
        "k": k,
        "auto": auto,
        "pieces": pieces,
    }
    if cross_meta is not None:
        params["r"], params["ell"], params["t"] = cross_meta
        params["p_max"] = p_max
    target = bound_formula("degree", params)
    witnesses = {"partition": part.to_json(), "classes": class_wit}
    return Certificate("degree", params, seed, rep.d, target, fallback, rep, witnesses)


# ---------------------------------------------------------------------------
# bounded genus over a vertex cut


def _to_original(rep: BoxRepresentation, ids: Sequence[int], g: Graph) -> BoxRepresentation:
    back = {j: u for j, u in enumerate(ids)}
    lifted = relabel_rep(rep, back)
    return extend_full(lifted, set(range(g.n)) - set(ids))


def genus_rep(
    g: Graph,
    genus: int,
    cut,
    rep_gx: BoxRepresentation,
    seed: int,
    deletion_threshold: int = 10_000,
) -> Certificate:
    """Extend a representation of g minus a cut set to all of g.

    With a cut below deletion_threshold each cut vertex is lifted back one
    at a time, growing the dimension by exactly the cut size.  For larger
    cuts the cut is handled structurally: vertices with one or two cut
    neighbours go through a 3-suitable family of cut orders, and the high
    degree rest splits along a min-degree elimination ordering into a
    degenerate part, a pair-eliminated part, and a caught-permutation
    bridge between them.
    """
    if genus < 0:
        raise ParameterError("genus must be non-negative")
    x = sorted(set(int(v) for v in cut))
    for v in x:
        if not (0 <= v < g.n):
            raise ParameterError(f"cut vertex {v} outside the graph")
    x_set = set(x)
    present = sorted(set(range(g.n)) - x_set)
    if sorted(rep_gx.vertices()) != present:
        raise VerificationError(
            "supplied representation does not cover exactly the non-cut vertices"
        )
    sub, sub_ids = g.induced(present)
    to_new = {u: j for j, u in enumerate(sub_ids)}
    report = verify_box_rep(sub, relabel_rep(rep_gx, to_new))
    if not report.ok:
        raise VerificationError(
            f"supplied representation is wrong for the graph minus the cut: "
            f"{report.summary()}",
            report,
        )
    oversized = genus >= 0 and len(x) > 60 * genus
    params: dict = {
        "genus": genus,
        "cut_size": len(x),
        "rep_d": rep_gx.d,
        "oversized_cut": oversized,
    }
    if len(x) < deletion_threshold:
        rep = rep_gx
        for v in x:
            rep = vertex_deletion_lift(rep, g, v)
        params["method"] = "deletion"
        target = bound_formula("genus", params)
        report = verify_box_rep(g, rep)
        if not report.ok:
            raise StructuralError(f"genus deletion failed: {report.summary()}")
        return Certificate(
            "genus", params, seed, rep.d, target, False, rep, {"order": x}
        )
    # structural route
    dims: List[BoxRepresentation] = [extend_full(rep_gx, x)]
    pieces = [{"name": "outside", "d": rep_gx.d}]
    witnesses: dict = {}
    deg_x = {v: len(g.neighbors(v) & x_set) for v in present}
    y_side = [v for v in present if 1 <= deg_x[v] <= 2]
    w0_side = [v for v in present if deg_x[v] == 0]
    z_side = [v for v in present if deg_x[v] >= 3]
    witnesses["classification"] = {"Y": y_side, "W0": w0_side, "Z": z_side}
    fallback = False
    if x:
        if len(x) == 1:
            perms = [(1,)]
        else:
            fam = build_suitable(len(x), 3, derive_seed(seed, "cut-suitable"))
            perms = list(fam.perms)
        gadget_dims = []
        for pa in perms:
            seq = [x[i] for i in sorted(range(len(x)), key=lambda i: pa[i])]
            pos = {w: p for p, w in enumerate(seq, start=1)}
            spans: Dict[int, Optional[Tuple[int, int]]] = {}
            for v in y_side:
                ps = [pos[w] for w in g.neighbors(v) & x_set]
                spans[v] = (min(ps), max(ps))
            for v in w0_side:
                spans[v] = None
            gadget_dims.append(span_gadget(SpanGadgetSpec(tuple(seq), spans), range(g.n)))
        if gadget_dims:
            low_cut = product_compose(gadget_dims)
            dims.append(low_cut)
            pieces.append({"name": "low_cut", "d": low_cut.d})
            witnesses["cut_perms"] = [list(pa) for pa in perms]
    k_split = genus_split_k(genus)
    params["k"] = k_split
    h_vertices = sorted(x_set | set(z_side))
    params["n_h"] = len(h_vertices)
    params["t_caught"] = None
    if h_vertices:
        h_sub, h_ids = g.induced(h_vertices)
        work = {v: set(h_sub.neighbors(v)) for v in range(h_sub.n)}
        a_h: List[int] = []
        while work:
            v = min(work, key=lambda u: (len(work[u]), u))
            if len(work[v]) >= k_split:
                break
            a_h.append(v)
            for u in work[v]:
                work[u].discard(v)
            del work[v]
        b_h = sorted(work)
        witnesses["split"] = {
            "A": [h_ids[v] for v in a_h],
            "B": [h_ids[v] for v in b_h],
        }
        if a_h:
            ha, ha_ids = h_sub.induced(sorted(a_h))
            rep_a, wit_a = _degenerate_with_witness(
                ha, k_split, derive_seed(seed, "high-cut-a")
            )
            fallback = fallback or wit_a.get("fallback", False)
            rep_a = _to_original(rep_a, [h_ids[v] for v in ha_ids], g)
            dims.append(rep_a)
            pieces.append({"name": "high_a", "d": rep_a.d})
            witnesses["high_a"] = wit_a
        if b_h:
            hb, hb_ids = h_sub.induced(b_h)
            rep_b, wit_b = _pair_elimination_with_witness(hb)
            rep_b = _to_original(rep_b, [h_ids[v] for v in hb_ids], g)
            dims.append(rep_b)
            pieces.append({"name": "high_b", "d": rep_b.d})
            witnesses["high_b"] = wit_b
        if a_h and b_h:
            rep_ab, wit_ab = _caught_with_witness(
                h_sub, sorted(a_h), b_h, k_split, derive_seed(seed, "high-cut-ab")
            )
            params["t_caught"] = wit_ab["t"]
            rep_ab = _to_original(rep_ab, h_ids, g)
            dims.append(rep_ab)
            pieces.append({"name": "high_ab", "d": rep_ab.d})
            witnesses["high_ab"] = wit_ab
    params["method"] = "suitable"
    params["pieces"] = pieces
    rep = product_compose(dims)
    report = verify_box_rep(g, rep)
    if not report.ok:
        raise StructuralError(f"genus pipeline failed: {report.summary()}")
    target = bound_formula("genus", params)
    return Certificate("genus", params, seed, rep.d, target, fallback, rep, witnesses)


# ---------------------------------------------------------------------------
# layered treewidth


def _segment_decomposition(
    td: TreeDecomposition, verts: set, to_new: Dict[int, int]
) -> TreeDecomposition:
    """Restrict bags to one segment, prune empties, re-link components."""
    bags: Dict[int, frozenset] = {}
    for bid in sorted(td.bags):
        cut = frozenset(to_new[v] for v in td.bags[bid] if v in verts)
        if cut:
            bags[bid] = cut
    edges = [
        (i, j) for i, j in td.tree_edges if i in bags and j in bags
    ]
    neigh: Dict[int, List[int]] = {b: [] for b in bags}
    for i, j in edges:
        neigh[i].append(j)
        neigh[j].append(i)
    comp_rep: List[int] = []
    seen: set = set()
    for b in sorted(bags):
        if b in seen:
            continue
        comp_rep.append(b)
        stack = [b]
        seen.add(b)
        while stack:
            u = stack.pop()
            for w in neigh[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    for a, b in zip(comp_rep, comp_rep[1:]):
        edges.append((a, b))
    return TreeDecomposition(bags, tuple(edges))


def layered_tw_rep(
    g: Graph, td: TreeDecomposition, layering: Layering, seed: int = 0
) -> Certificate:
    """Representation from a tree decomposition plus a BFS-style layering.

    Three vertex groups each drop every third layer, splitting into
    segments of at most two consecutive layers with no edges between
    segments.  Every segment gets its own representation from the
    restriction of the decomposition; segments share the group's
    dimensions because one final dimension keyed on the layer index
    separates everything two or more layers apart.  The dimension is
    exactly 3 max-segment-dimension + 1 against a target of 6 ltw + 4.
    """
    if g.n == 0:
        raise ParameterError("layered construction needs at least one vertex")
    width = validate_tree_decomposition(g, td)
    n_layers = validate_layering(g, layering)
    lof = layering.layers_of
    ltw = 0
    for bag in td.bags.values():
        per: Dict[int, int] = {}
        for v in bag:
            per[lof[v]] = per.get(lof[v], 0) + 1
        if per:
            ltw = max(ltw, max(per.values()))
    ltw = max(ltw, 1)
    target = ltw_target(ltw)
    group_dims: List[List[Dict[int, Interval]]] = []
    group_wit = []
    d_sub = 1
    seg_reps_all = []
    for i in range(3):
        dropped = (i + 2) % 3
        kept = [j for j in range(n_layers) if j % 3 != dropped]
        runs: List[List[int]] = []
        for j in kept:
            if runs and runs[-1][-1] == j - 1:
                runs[-1].append(j)
            else:
                runs.append([j])
        segments = []
        seg_reps = []
        for run in runs:
            verts = sorted(v for v in range(g.n) if lof[v] in set(run))
            if not verts:
                continue
            vset = set(verts)
            sub, sub_ids = g.induced(verts)
            to_new = {u: j for j, u in enumerate(sub_ids)}
            seg_td = _segment_decomposition(td, vset, to_new)
            rep_seg, wit_seg = _treewidth_with_witness(sub, seg_td)
            seg_reps.append((verts, sub_ids, rep_seg))
            segments.append(
                {
                    "layers": [run[0], run[-1]],
                    "vertices": verts,
                    "d": rep_seg.d,
                    "orders": wit_seg["orders"],
                    "point_sets": wit_seg["point_sets"],
                }
            )
            d_sub = max(d_sub, rep_seg.d)
        group_wit.append({"group": i, "segments": segments})
        seg_reps_all.append(seg_reps)
    for i in range(3):
        for u, v in g.edges:
            lu, lv = lof[u], lof[v]
            dropped = (i + 2) % 3
            if lu % 3 != dropped and lv % 3 != dropped:
                if abs(lu - lv) > 1:
                    raise StructuralError(
                        f"edge ({u},{v}) crosses segments of group {i}"
                    )
    columns: List[Dict[int, Interval]] = []
    full = Interval(NEG_INF, POS_INF)
    for seg_reps in seg_reps_all:
        for t in range(d_sub):
            col = {v: full for v in range(g.n)}
            for verts, sub_ids, rep_seg in seg_reps:
                if t < rep_seg.d:
                    for j, u in enumerate(sub_ids):
                        col[u] = rep_seg.boxes[j].intervals[t]
            columns.append(col)
    columns.append({v: Interval(2 * lof[v], 2 * lof[v] + 2) for v in range(g.n)})
    boxes = {v: Box([col[v] for col in columns]) for v in range(g.n)}
    rep = BoxRepresentation(len(columns), boxes)
    report = verify_box_rep(g, rep)
    if not report.ok:
        raise StructuralError(f"layered pipeline failed: {report.summary()}")
    d = rep.d
    params = {
        "ltw": ltw,
        "width": width,
        "d_sub": d_sub,
        "n_layers": n_layers,
    }
    witnesses = {"groups": group_wit, "layers_of": list(lof)}
    return Certificate(
        "ltw", params, seed, d, target, d > target, rep, witnesses
    )
