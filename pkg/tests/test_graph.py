import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_cycles, brute_hs_closure, brute_reaching
from leavitt import examples
from leavitt.errors import (
    BundleLoopError,
    DanglingEndpointError,
    DuplicateNameError,
    GraphError,
    NotAdmissibleError,
    NotHereditarySaturatedError,
    SchemaError,
    UnknownVertexError,
)
from leavitt.graph import Graph, graph_from_json, graph_to_json, parse_graph, quotient_graph


def test_vertex_kinds(toeplitz, double_emitter):
    assert toeplitz.kinds() == {"u": "regular", "v": "sink"}
    assert double_emitter.kinds() == {
        "v": "infinite_emitter",
        "w": "infinite_emitter",
        "u": "sink",
    }


def test_unknown_vertex(toeplitz):
    with pytest.raises(UnknownVertexError):
        toeplitz.vertex_kind("zz")


def test_construction_rejections():
    with pytest.raises(DuplicateNameError):
        Graph(["u", "u"])
    with pytest.raises(DuplicateNameError):
        Graph(["u", "e"], [("e", "u", "u")])
    with pytest.raises(DanglingEndpointError):
        Graph(["u"], [("e", "u", "zz")])
    with pytest.raises(BundleLoopError):
        Graph(["u"], [], [("b", "u", "u")])
    with pytest.raises(GraphError):
        Graph([])


def test_reaching_examples(toeplitz, double_emitter, loop_with_two_exits):
    assert toeplitz.reaching("v") == {"u", "v"}
    assert double_emitter.reaching("w") == {"v", "w"}
    assert loop_with_two_exits.reaching("w") == {"u", "w"}


def test_reaching_matches_oracle(any_graph):
    for v in any_graph.vertices:
        assert any_graph.reaching(v) == brute_reaching(any_graph, v)


def test_reaching_path_target(toeplitz):
    p = toeplitz.path("u", ["f"])
    assert toeplitz.reaching(p) == {"u", "v"}


def test_reaching_properties(any_graph):
    g = any_graph
    for v in g.vertices:
        acc = g.reaching(v)
        assert v in acc
        for u in acc:
            assert g.reaching(u) <= acc


def test_hs_closure_examples(toeplitz):
    assert toeplitz.hereditary_saturated_closure(["v"]) == {"v"}
    assert toeplitz.hereditary_saturated_closure(["u"]) == {"u", "v"}
    assert toeplitz.hereditary_saturated_closure([]) == frozenset()


def test_hs_closure_matches_minimal_superset(any_graph):
    rng = random.Random(5)
    verts = list(any_graph.vertices)
    for _ in range(20):
        seed = rng.sample(verts, rng.randint(0, len(verts)))
        closure = any_graph.hereditary_saturated_closure(seed)
        assert closure == brute_hs_closure(any_graph, seed)


def test_hs_closure_idempotent_and_monotone(any_graph):
    rng = random.Random(11)
    verts = list(any_graph.vertices)
    for _ in range(25):
        small = set(rng.sample(verts, rng.randint(0, len(verts))))
        big = small | set(rng.sample(verts, rng.randint(0, len(verts))))
        c_small = any_graph.hereditary_saturated_closure(small)
        c_big = any_graph.hereditary_saturated_closure(big)
        assert any_graph.hereditary_saturated_closure(c_small) == c_small
        assert c_small <= c_big


def test_breaking_vertices(double_emitter, loop_with_two_exits, toeplitz):
    assert double_emitter.breaking_vertices({"u"}) == {"v", "w"}
    assert loop_with_two_exits.breaking_vertices({"w"}) == frozenset()
    assert toeplitz.breaking_vertices({"v"}) == frozenset()
    with pytest.raises(NotHereditarySaturatedError):
        double_emitter.breaking_vertices({"v"})


def test_breaking_vertices_property(any_graph):
    g = any_graph
    rng = random.Random(3)
    for _ in range(15):
        H = g.hereditary_saturated_closure(rng.sample(list(g.vertices), rng.randint(0, len(g.vertices))))
        for w in g.breaking_vertices(H):
            assert w not in H
            assert g.vertex_kind(w) == "infinite_emitter"


def test_cycle_report_toeplitz(toeplitz):
    report = toeplitz.cycle_report()
    assert len(report.cycles) == 1
    (c,) = report.cycles
    assert c.rep.edges == ("e",)
    assert c.exits == ("f",)
    assert report.condition_l


def test_cycle_report_chained_loops(chained_loops):
    report = chained_loops.cycle_report()
    by_edges = {c.rep.edges: c for c in report.cycles}
    assert set(by_edges) == {("e",), ("e'",)}
    assert by_edges[("e",)].exclusive and by_edges[("e'",)].exclusive
    assert "f" in by_edges[("e",)].exits
    assert "g" in by_edges[("e'",)].exits
    assert report.condition_l


def test_cycle_report_single_loop():
    g = Graph(["v"], [("e", "v", "v")])
    report = g.cycle_report()
    assert not report.condition_l
    assert not report.cycles[0].has_exit


def test_cycles_match_bruteforce(any_graph):
    report = any_graph.cycle_report()
    assert {frozenset(c.rep.edges) for c in report.cycles} == brute_cycles(any_graph)
    # distinct sources, one representative per rotation class
    reps = [c.rep.edges for c in report.cycles]
    assert len(set(map(frozenset, reps))) == len(reps)
    for c in report.cycles:
        sources = [any_graph.edges[e].src for e in c.rep.edges]
        assert len(set(sources)) == len(sources)


def test_parallel_edges_make_two_cycles():
    g = Graph(["u", "v"], [("a", "u", "v"), ("b", "v", "u"), ("c", "v", "u")])
    report = g.cycle_report()
    assert {frozenset(c.rep.edges) for c in report.cycles} == {
        frozenset({"a", "b"}),
        frozenset({"a", "c"}),
    }
    assert all(not c.exclusive for c in report.cycles)


def test_mt3(toeplitz, loop_with_two_exits):
    assert toeplitz.satisfies_mt3({"u", "v"})
    assert loop_with_two_exits.satisfies_mt3({"u", "v"})
    two = Graph(["a", "b"])
    assert not two.satisfies_mt3({"a", "b"})
    assert two.satisfies_mt3(set())


def test_quotient_loop_with_two_exits(loop_with_two_exits):
    q = quotient_graph(loop_with_two_exits, {"w"}, set())
    assert set(q.vertices) == {"u", "v"}
    assert {(e.name, e.src, e.dst) for e in q.edges.values()} == {
        ("e", "u", "u"),
        ("f", "u", "v"),
    }


def test_quotient_double_emitter(double_emitter):
    q = quotient_graph(double_emitter, {"u"}, {"v"})
    assert set(q.vertices) == {"v", "w", "w'"}
    assert {(e.name, e.src, e.dst) for e in q.edges.values()} == {
        ("h", "v", "v"),
        ("a", "v", "w"),
        ("f", "w", "w"),
        ("a'", "v", "w'"),
        ("f'", "w", "w'"),
    }
    assert not q.bundles


def test_quotient_identity(any_graph):
    q = quotient_graph(any_graph, set(), set())
    assert q == any_graph


def test_quotient_not_admissible(toeplitz, double_emitter):
    with pytest.raises(NotAdmissibleError):
        quotient_graph(toeplitz, {"u"}, set())  # not hereditary
    with pytest.raises(NotAdmissibleError):
        quotient_graph(double_emitter, {"u"}, {"u"})  # S not inside B_H


def test_quotient_clones_bundles_into_breaking_vertices():
    g = Graph(
        ["x", "w", "u", "z"],
        [("k", "w", "z")],
        [("bw", "w", "u"), ("bx", "x", "w")],
    )
    # H = {u}: w is breaking (bundle into H, explicit escape k); bundle bx
    # lands on the breaking vertex w, so it is retained and cloned.
    q = quotient_graph(g, {"u"}, set())
    assert set(q.vertices) == {"x", "w", "z", "w'"}
    assert {(b.name, b.src, b.dst) for b in q.bundles.values()} == {
        ("bx", "x", "w"),
        ("bx'", "x", "w'"),
    }


def test_minting():
    g = examples.double_emitter()
    g2, minted = g.with_minted("bv", 2)
    assert [e.name for e in minted] == ["bv#0", "bv#1"]
    assert all(e.src == "v" and e.dst == "u" for e in minted)
    assert g2.vertex_kind("v") == "infinite_emitter"
    g3, minted2 = g2.with_minted("bv", 1)
    assert minted2[0].name == "bv#2"


# JSON schema

def test_json_roundtrip(any_graph):
    assert graph_from_json(graph_to_json(any_graph)) == any_graph
    assert parse_graph(json.dumps(graph_to_json(any_graph))) == any_graph


def test_json_schema_rejections():
    with pytest.raises(SchemaError):
        parse_graph(b"not json {")
    with pytest.raises(SchemaError):
        graph_from_json({"vertices": []})
    with pytest.raises(SchemaError):
        graph_from_json({"vertices": ["u"], "stray": 1})
    with pytest.raises(SchemaError):
        graph_from_json({"vertices": ["u"], "edges": [{"name": "e", "src": "u"}]})
    with pytest.raises(SchemaError):
        graph_from_json({"vertices": ["u"], "edges": [{"name": "e", "src": "u", "dst": "u", "x": 1}]})
    with pytest.raises(SchemaError):
        graph_from_json({"vertices": ["u"], "edges": "nope"})
    with pytest.raises(DanglingEndpointError):
        graph_from_json({"vertices": ["u"], "edges": [{"name": "e", "src": "u", "dst": "zz"}]})


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.data())
def test_hs_closure_random_graphs(n_extra, data):
    verts = [f"v{i}" for i in range(2 + n_extra)]
    n_edges = data.draw(st.integers(0, 6))
    edges = []
    for i in range(n_edges):
        src = data.draw(st.sampled_from(verts))
        dst = data.draw(st.sampled_from(verts))
        edges.append((f"e{i}", src, dst))
    g = Graph(verts, edges)
    seed = data.draw(st.lists(st.sampled_from(verts), max_size=3))
    closure = g.hereditary_saturated_closure(seed)
    assert g.is_hereditary_saturated(closure)
    assert closure == brute_hs_closure(g, set(seed))
