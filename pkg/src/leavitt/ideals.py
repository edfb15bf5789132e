"""Graded ideals, the quotient epimorphism, and primitive-ideal classification.

An admissible pair (H, S) is a hereditary saturated vertex set H together
with a subset S of its breaking vertices; it generates the graded ideal
I(H, S), and the quotient algebra is the Leavitt path algebra of the
quotient graph.  The epimorphism phi onto the quotient sends

    v  ->  v + v'   if v is a breaking vertex outside S,
    v  ->  v        if v survives unprimed,
    v  ->  0        if v lies in H,

and edges (and their ghosts) follow their range vertex the same way.
Membership in I(H, S) is exactly phi(a) = 0, which is decidable because the
quotient algebra has canonical normal forms.

Primitive ideals come in three types:

    I    I(H, B_H \\ {w}) with M(w) the whole complement of H,
    II   I(H, B_H) with the complement MT-3, countably separated (vacuous
         for a finite vertex set), and the quotient satisfying condition (L),
    III  I(H, B_H, f(c)) for an exclusive cycle c whose base vertex sees the
         whole complement, and an irreducible Laurent polynomial f.

``classify`` reproduces this trichotomy with a full condition transcript.
Membership for type III ideals is out of scope (f(c) lies outside the graded
kernel); only construction of f(c) and classification are provided.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .algebra import AlgebraElement, PathMonomial
from .errors import (
    DegreeZeroError,
    NotACycleError,
    NotAdmissibleError,
    NotBreakingVertexError,
    ReduciblePolynomialError,
    TooLargeError,
    TypeIIIMembershipUnsupportedError,
    ZeroConstantTermError,
)
from .graph import Graph, Path, quotient_graph
from .scalars import QQ, ExtensionField, LaurentPoly

DEFAULT_CYCLE_POLY = LaurentPoly.parse("1 + x + x^2")

TYPE_I = "typeI"
TYPE_II = "typeII"
TYPE_III = "typeIII"
NOT_PRIMITIVE = "not_primitive"


class AdmissiblePair:
    """(H, S) with H hereditary saturated and S inside the breaking vertices."""

    def __init__(self, graph: Graph, H, S=()):
        self.graph = graph
        self.H = frozenset(graph.require_vertex(v) for v in H)
        self.S = frozenset(graph.require_vertex(v) for v in S)
        if not graph.is_hereditary_saturated(self.H):
            raise NotAdmissibleError(f"H={sorted(self.H)} is not hereditary and saturated")
        self.breaking = graph.breaking_vertices(self.H)
        if not self.S <= self.breaking:
            raise NotAdmissibleError(
                f"S={sorted(self.S)} is not a subset of the breaking vertices {sorted(self.breaking)}"
            )
        self._quotient: Graph | None = None

    @property
    def complement(self) -> frozenset[str]:
        return frozenset(self.graph.vertices) - self.H

    @property
    def unresolved(self) -> frozenset[str]:
        """Breaking vertices outside S; these acquire primed clones."""
        return self.breaking - self.S

    def quotient_graph(self) -> Graph:
        if self._quotient is None:
            self._quotient = quotient_graph(self.graph, self.H, self.S)
        return self._quotient

    def phi(self, a: AlgebraElement) -> AlgebraElement:
        """Apply the quotient epimorphism and normalize over the quotient."""
        if a.graph is not self.graph and a.graph != self.graph:
            raise NotAdmissibleError("element does not live over this pair's graph")
        if not self.complement:
            raise NotAdmissibleError(
                "H is the whole vertex set: the quotient is the zero ring, "
                "which is not a unital path algebra"
            )
        q = self.quotient_graph()
        field = a.field
        cloned = self.unresolved

        def vertex_image(v: str) -> AlgebraElement:
            if v in self.H:
                return AlgebraElement.zero(q, field)
            img = AlgebraElement.vertex(q, v, field)
            if v in cloned:
                img = img + AlgebraElement.vertex(q, f"{v}'", field)
            return img

        def edge_image(name: str, ghost: bool) -> AlgebraElement:
            dst = self.graph.edges[name].dst
            if dst in self.H:
                return AlgebraElement.zero(q, field)
            make = AlgebraElement.ghost if ghost else AlgebraElement.edge
            img = make(q, name, field)
            if dst in cloned:
                img = img + make(q, f"{name}'", field)
            return img

        def path_image(p: Path, ghost: bool) -> AlgebraElement:
            if p.is_vertex:
                return vertex_image(p.source)
            factors = [edge_image(name, ghost) for name in p.edges]
            if ghost:
                factors.reverse()
            result = factors[0]
            for f in factors[1:]:
                result = result * f
            return result

        total = AlgebraElement.zero(q, field)
        for mono, coeff in a.terms.items():
            img = path_image(mono.gamma, ghost=False)
            if mono.lam.edges or mono.gamma.is_vertex:
                img = img * path_image(mono.lam, ghost=True)
            total = total + img.scale(coeff)
        return total

    def contains(self, a: AlgebraElement) -> bool:
        """Graded-ideal membership: a lies in I(H, S) iff phi(a) = 0."""
        if not self.complement:
            return True  # the improper ideal is everything
        return self.phi(a).is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, AdmissiblePair)
            and self.graph == other.graph
            and self.H == other.H
            and self.S == other.S
        )

    def __repr__(self):
        return f"AdmissiblePair(H={sorted(self.H)}, S={sorted(self.S)})"

    def to_json(self) -> dict:
        return {"H": sorted(self.H), "S": sorted(self.S)}

    @classmethod
    def from_json(cls, graph: Graph, data: dict) -> "AdmissiblePair":
        return cls(graph, data.get("H", []), data.get("S", []))


def breaking_vertex_element(g: Graph, H, w: str, field=QQ) -> AlgebraElement:
    """The element w^H = w - sum of e e* over explicit edges escaping H."""
    Hs = frozenset(g.require_vertex(v) for v in H)
    if w not in g.breaking_vertices(Hs):
        raise NotBreakingVertexError(f"{w!r} is not a breaking vertex of {sorted(Hs)}")
    result = AlgebraElement.vertex(g, w, field)
    for name in g.out_edges(w):
        if g.edges[name].dst in Hs:
            continue
        e = AlgebraElement.edge(g, name, field)
        result = result - e * e.star()
    return result


def poly_at_cycle(g: Graph, cycle: Path, poly: LaurentPoly, field=QQ) -> AlgebraElement:
    """Substitute a cycle for x in a Laurent polynomial.

    x^n becomes the n-fold cycle power, x^-n its ghost, and the constant
    term multiplies the base vertex.
    """
    if not g.is_cycle(cycle):
        raise NotACycleError(f"{cycle} is not a cycle")
    if not poly.constant_term:
        raise ZeroConstantTermError(f"{poly} has zero constant term")
    base = cycle.source
    total = AlgebraElement.zero(g, field)
    for exp, coeff in poly.items():
        if exp == 0:
            term = AlgebraElement.vertex(g, base, field)
        elif exp > 0:
            term = AlgebraElement.from_terms(g, [(_cycle_mono(g, cycle, exp), field.one)], field)
        else:
            term = AlgebraElement.from_terms(
                g, [(_cycle_mono(g, cycle, -exp).star(), field.one)], field
            )
        total = total + term.scale(coeff)
    return total


def _cycle_mono(g: Graph, cycle: Path, power: int) -> PathMonomial:
    path = Path(cycle.source, cycle.edges * power, cycle.source)
    return PathMonomial(path, g.trivial_path(cycle.source))


@dataclass
class IdealDescriptor:
    """A graded ideal I(H, S), or a type III ideal I(H, B_H, f(c))."""

    pair: AdmissiblePair
    cycle: Path | None = None
    poly: LaurentPoly | None = None

    @property
    def kind(self) -> str:
        return "typeIII" if self.cycle is not None else "graded"

    def contains(self, a: AlgebraElement) -> bool:
        if self.kind != "graded":
            raise TypeIIIMembershipUnsupportedError(
                "membership is only decidable for graded ideals here"
            )
        return self.pair.contains(a)


@dataclass
class ClassificationResult:
    verdict: str
    witness_vertex: str | None = None
    transcript: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "transcript": list(self.transcript)}
        if self.witness_vertex is not None:
            out["witness"] = self.witness_vertex
        return out


def classify(desc: IdealDescriptor) -> ClassificationResult:
    """Decide primitivity and type, with a complete condition transcript."""
    pair = desc.pair
    g = pair.graph
    transcript: list[dict] = []

    def record(condition: str, outcome: bool, note: str | None = None) -> bool:
        entry = {"condition": condition, "outcome": bool(outcome)}
        if note:
            entry["note"] = note
        transcript.append(entry)
        return bool(outcome)

    comp = pair.complement
    if not record("complement of H nonempty (proper ideal)", bool(comp)):
        return ClassificationResult(NOT_PRIMITIVE, transcript=transcript)

    if desc.kind == "typeIII":
        ok = record("S equals the full breaking-vertex set", pair.S == pair.breaking)
        cycle = desc.cycle
        if not g.is_cycle(cycle):
            raise NotACycleError(f"{cycle} is not a cycle of the graph")
        base = cycle.source
        ok &= record("cycle base lies outside H", base in comp)
        report = g.cycle_report()
        cyc_edges = frozenset(cycle.edges)
        match = next((c for c in report.cycles if frozenset(c.rep.edges) == cyc_edges), None)
        ok &= record("cycle is exclusive", match is not None and match.exclusive)
        ok &= record("M(base of cycle) is the whole complement of H", g.reaching(base) == comp)
        accepted, note = _poly_accepted(desc.poly)
        ok &= record("polynomial accepted as irreducible", accepted, note)
        if ok:
            return ClassificationResult(TYPE_III, transcript=transcript)
        return ClassificationResult(NOT_PRIMITIVE, transcript=transcript)

    leftover = pair.unresolved
    if len(leftover) == 1:
        (w,) = leftover
        record("S = B_H minus the single vertex w", True, f"w = {w}")
        if record("M(w) is the whole complement of H", g.reaching(w) == comp):
            return ClassificationResult(TYPE_I, witness_vertex=w, transcript=transcript)
        return ClassificationResult(NOT_PRIMITIVE, transcript=transcript)

    if not record("S equals the full breaking-vertex set", not leftover):
        return ClassificationResult(NOT_PRIMITIVE, transcript=transcript)
    ok = record("complement of H satisfies MT-3", g.satisfies_mt3(comp))
    ok &= record(
        "complement of H has the countable separation property",
        True,
        "finite vertex set: holds automatically",
    )
    ok &= record(
        "quotient graph satisfies condition (L)",
        pair.quotient_graph().cycle_report().condition_l,
    )
    if ok:
        return ClassificationResult(TYPE_II, transcript=transcript)
    return ClassificationResult(NOT_PRIMITIVE, transcript=transcript)


def _poly_accepted(poly: LaurentPoly | None) -> tuple[bool, str]:
    if poly is None:
        return False, "no polynomial supplied"
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            field = ExtensionField(poly)
    except ReduciblePolynomialError:
        return False, "rational root found"
    except ZeroConstantTermError:
        return False, "zero constant term"
    except DegreeZeroError:
        return False, "constant modulus"
    if field.irreducible_verified:
        return True, "verified by rational root test"
    return True, "degree > 3: trusted without verification"


def enumerate_admissible(g: Graph, max_vertices: int = 16) -> list[AdmissiblePair]:
    """All admissible pairs, ordered by (|H|, H, |S|, S)."""
    if len(g.vertices) > max_vertices:
        raise TooLargeError(
            f"{len(g.vertices)} vertices exceeds the enumeration bound {max_vertices}"
        )
    verts = sorted(g.vertices)
    pairs = []
    for r in range(len(verts) + 1):
        for combo in combinations(verts, r):
            H = frozenset(combo)
            if not g.is_hereditary_saturated(H):
                continue
            B = sorted(g.breaking_vertices(H))
            for k in range(len(B) + 1):
                for sub in combinations(B, k):
                    pairs.append(AdmissiblePair(g, H, frozenset(sub)))
    pairs.sort(key=lambda p: (len(p.H), sorted(p.H), len(p.S), sorted(p.S)))
    return pairs
