"""Shared fixtures: the standard graphs, random generators, and brute-force
oracles kept independent of the library code paths they check."""

from fractions import Fraction

import pytest

from leavitt import examples
from leavitt.algebra import AlgebraElement
from leavitt.exprs import Diff, EdgeSym, GhostSym, Lit, Neg, Prod, Sum, VertexSym, evaluate
from leavitt.graph import Graph


@pytest.fixture
def toeplitz():
    return examples.toeplitz()


@pytest.fixture
def double_emitter():
    return examples.double_emitter()


@pytest.fixture
def loop_with_two_exits():
    return examples.loop_with_two_exits()


@pytest.fixture
def cycle_with_side_loop():
    return examples.cycle_with_side_loop()


@pytest.fixture
def chained_loops():
    return examples.chained_loops()


@pytest.fixture
def bundle_inflow():
    return examples.bundle_inflow()


FIXTURE_NAMES = [
    "toeplitz",
    "double_emitter",
    "loop_with_two_exits",
    "cycle_with_side_loop",
    "chained_loops",
]


@pytest.fixture(params=FIXTURE_NAMES)
def any_graph(request):
    return examples.ALL[request.param]()


# brute-force oracles

def brute_reaching(g: Graph, target: str) -> frozenset:
    """M(target) by naive closure: iterate one-step predecessor expansion."""
    succ = {}
    for v in g.vertices:
        nxt = {e.dst for e in g.edges.values() if e.src == v}
        nxt |= {b.dst for b in g.bundles.values() if b.src == v}
        succ[v] = nxt
    result = {target}
    while True:
        grown = set(result)
        for v in g.vertices:
            if succ[v] & result:
                grown.add(v)
        if grown == result:
            return frozenset(result)
        result = grown


def brute_hs_closure(g: Graph, seed) -> frozenset:
    """Smallest hereditary saturated superset, by scanning all subsets."""
    from itertools import combinations

    seed = frozenset(seed)
    best = None
    verts = list(g.vertices)
    for r in range(len(verts) + 1):
        for combo in combinations(verts, r):
            H = frozenset(combo)
            if not seed <= H:
                continue
            if _is_hs(g, H) and (best is None or len(H) < len(best)):
                best = H
    return best


def _is_hs(g: Graph, H: frozenset) -> bool:
    for v in H:
        for e in g.edges.values():
            if e.src == v and e.dst not in H:
                return False
        for b in g.bundles.values():
            if b.src == v and b.dst not in H:
                return False
    for v in g.vertices:
        if v in H or g.vertex_kind(v) != "regular":
            continue
        outs = [e.dst for e in g.edges.values() if e.src == v]
        if outs and all(d in H for d in outs):
            return False
    return True


def brute_cycles(g: Graph):
    """All cycles by exhaustive edge-sequence search, rotations deduplicated.

    Returns a set of frozensets of edge names (each cycle has distinct
    sources, so its edge set determines it).
    """
    from itertools import product

    found = set()
    names = list(g.edges)
    for length in range(1, len(g.vertices) + 1):
        for seq in product(names, repeat=length):
            srcs = [g.edges[n].src for n in seq]
            ok = all(g.edges[seq[i]].dst == srcs[i + 1] for i in range(length - 1))
            if not ok or g.edges[seq[-1]].dst != srcs[0]:
                continue
            if len(set(srcs)) != length:
                continue
            found.add(frozenset(seq))
    return found


# random generators (seeded by the tests that use them)

def random_expr_tree(rng, g: Graph, depth: int):
    if depth <= 0:
        kind = rng.randrange(4)
        if kind == 0:
            return Lit(Fraction(rng.randint(-3, 3)))
        if kind == 1:
            return VertexSym(rng.choice(g.vertices))
        name = rng.choice(sorted(g.edges)) if g.edges else None
        if name is None:
            return VertexSym(rng.choice(g.vertices))
        return EdgeSym(name) if kind == 2 else GhostSym(name)
    kind = rng.randrange(4)
    left = random_expr_tree(rng, g, depth - 1)
    right = random_expr_tree(rng, g, depth - 1)
    if kind == 0:
        return Sum(left, right)
    if kind == 1:
        return Diff(left, right)
    if kind == 2:
        return Prod(left, right)
    return Neg(left)


def random_element(rng, g: Graph, depth: int = 3) -> AlgebraElement:
    return evaluate(g, random_expr_tree(rng, g, depth))


def relation_elements(g: Graph, field=None):
    """Every defining relation instance over explicit edges, as elements
    that must all normalize to zero."""
    from leavitt.scalars import QQ

    field = field or QQ
    out = []
    vert = {v: AlgebraElement.vertex(g, v, field) for v in g.vertices}
    edge = {e: AlgebraElement.edge(g, e, field) for e in g.edges}
    ghost = {e: AlgebraElement.ghost(g, e, field) for e in g.edges}
    for v in g.vertices:
        for w in g.vertices:
            prod = vert[v] * vert[w]
            expected = vert[v] if v == w else AlgebraElement.zero(g, field)
            out.append((f"V[{v},{w}]", prod - expected))
    for name, e in g.edges.items():
        out.append((f"E1a[{name}]", vert[e.src] * edge[name] - edge[name]))
        out.append((f"E1b[{name}]", edge[name] * vert[e.dst] - edge[name]))
        out.append((f"E2a[{name}]", vert[e.dst] * ghost[name] - ghost[name]))
        out.append((f"E2b[{name}]", ghost[name] * vert[e.src] - ghost[name]))
    for e1 in g.edges:
        for e2 in g.edges:
            prod = ghost[e1] * edge[e2]
            expected = (
                vert[g.edges[e1].dst] if e1 == e2 else AlgebraElement.zero(g, field)
            )
            out.append((f"CK1[{e1},{e2}]", prod - expected))
    for v in g.vertices:
        if not g.is_regular(v):
            continue
        acc = vert[v]
        for name in g.out_edges(v):
            acc = acc - edge[name] * ghost[name]
        out.append((f"CK2[{v}]", acc))
    return out
