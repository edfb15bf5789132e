"""Small standard graphs used in tests and documentation."""

from .graph import Graph


def toeplitz() -> Graph:
    """Loop e at u plus an exit f into the sink v (the Toeplitz algebra)."""
    return Graph(["u", "v"], [("e", "u", "u"), ("f", "u", "v")])


def double_emitter() -> Graph:
    """Two infinite emitters v, w feeding a sink u through bundles; loops at
    v and w, and a connecting edge a: v -> w.  Both v and w break {u}."""
    return Graph(
        ["v", "w", "u"],
        [("h", "v", "v"), ("a", "v", "w"), ("f", "w", "w")],
        [("bv", "v", "u"), ("bw", "w", "u")],
    )


def loop_with_two_exits() -> Graph:
    """Loop e at u with exits f: u -> v and g: u -> w into two sinks."""
    return Graph(["u", "v", "w"], [("e", "u", "u"), ("f", "u", "v"), ("g", "u", "w")])


def cycle_with_side_loop() -> Graph:
    """A 4-cycle v1 -> v2 -> v3 -> v4 -> v1 with a second loop g at v3 and
    an escape edge f: v1 -> u into a sink."""
    return Graph(
        ["v1", "v2", "v3", "v4", "u"],
        [
            ("e1", "v1", "v2"),
            ("e2", "v2", "v3"),
            ("e3", "v3", "v4"),
            ("e4", "v4", "v1"),
            ("g", "v3", "v3"),
            ("f", "v1", "u"),
        ],
    )


def chained_loops() -> Graph:
    """Two loop vertices u' -> u chained by g, with a sink v hanging off u
    and a feeder vertex v'; both loops are exclusive cycles."""
    return Graph(
        ["v'", "v", "u'", "u"],
        [
            ("f", "u", "v"),
            ("f'", "v'", "u'"),
            ("g", "u'", "u"),
            ("e", "u", "u"),
            ("e'", "u'", "u'"),
        ],
    )


def bundle_inflow() -> Graph:
    """A breaking vertex w whose only inflow is a bundle, forcing the
    discovery pipeline to mint a representative edge."""
    return Graph(
        ["u", "w", "v"],
        [("k", "w", "v")],
        [("bw", "w", "u"), ("bv", "v", "w")],
    )


ALL = {
    "toeplitz": toeplitz,
    "double_emitter": double_emitter,
    "loop_with_two_exits": loop_with_two_exits,
    "cycle_with_side_loop": cycle_with_side_loop,
    "chained_loops": chained_loops,
    "bundle_inflow": bundle_inflow,
}
