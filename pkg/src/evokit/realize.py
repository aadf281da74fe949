"""Evolution algebras built from graphs with a distinguished vertex set.

Given a simple graph and a set ``V`` of distinguished vertices, the algebra
has one basis vector per vertex and per edge:

* ``b_v**2 = b_v`` for ``v`` in ``V``;
* ``b_u**2 = b_u + sum(b_w for w in V)`` for every other vertex;
* ``b_e**2 = b_e + b_a + b_b`` for an edge ``e = {a, b}``.

When ``V`` is invariant under the graph's automorphisms, the algebra's
automorphism group is the graph's, and its action on idempotent natural
elements is the graph action restricted to ``V``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import EvolutionAlgebra, idempotent_natural_elements
from .autgroup import automorphism_group, rho_tilde
from .errors import EvokitError, ParseError
from .field import FieldSpec
from .permgroup import Perm, PermGroup, are_isomorphic_small, equivalence_of_representations


@dataclass(frozen=True)
class LabeledGraph:
    """Simple undirected graph on vertices ``0..n-1`` with distinguished set ``V``."""

    n: int
    edges: tuple[tuple[int, int], ...]
    V: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ParseError(f"vertex count must be a positive integer, got {self.n!r}")
        edges = []
        for e in self.edges:
            a, b = sorted(e)
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ParseError(f"edge {e} has a vertex out of range")
            if a == b:
                raise ParseError(f"loop at vertex {a + 1}")
            edges.append((a, b))
        if len(set(edges)) != len(edges):
            raise ParseError("duplicate edge")
        V = tuple(sorted(set(self.V)))
        if not V:
            raise ParseError("the distinguished set V must be nonempty")
        if not all(0 <= v < self.n for v in V):
            raise ParseError("V has a vertex out of range")
        object.__setattr__(self, "edges", tuple(sorted(edges)))
        object.__setattr__(self, "V", V)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def neighbours(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def check_min_degree(self) -> None:
        low = [v + 1 for v, d in enumerate(self.degrees()) if d < 2]
        if low:
            raise EvokitError(f"vertices {low} have degree < 2")

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[a + 1, b + 1] for a, b in self.edges], "V": [v + 1 for v in self.V]}

    @classmethod
    def from_json(cls, data: dict) -> "LabeledGraph":
        try:
            n, edges, V = data["n"], data["edges"], data["V"]
            return cls(n, tuple((a - 1, b - 1) for a, b in edges), tuple(v - 1 for v in V))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad graph file: {exc}") from None


def build_algebra_from_graph(g: LabeledGraph, f: FieldSpec) -> EvolutionAlgebra:
    """Basis ordered vertices first (labels ``v{i}``), then edges (``e{a}-{b}``)."""
    g.check_min_degree()
    n, m = g.n, len(g.edges)
    dim = n + m
    rows = [[0] * dim for _ in range(dim)]
    in_V = set(g.V)
    for v in range(n):
        rows[v][v] = 1
        if v not in in_V:
            for w in g.V:
                rows[v][w] = 1
    for k, (a, b) in enumerate(g.edges):
        r = rows[n + k]
        r[n + k] = r[a] = r[b] = 1
    labels = [f"v{v + 1}" for v in range(n)] + [f"e{a + 1}-{b + 1}" for a, b in g.edges]
    return EvolutionAlgebra.from_rows(f, rows, labels)


def _automorphisms(g: LabeledGraph, keep_V: bool) -> list[Perm]:
    n = g.n
    adj = g.neighbours()
    deg = g.degrees()
    in_V = set(g.V)
    # vertex invariant: own degree plus sorted neighbour degrees
    inv = [(deg[v], tuple(sorted(deg[w] for w in adj[v])), keep_V and v in in_V) for v in range(n)]
    sigma = [-1] * n
    used = [False] * n
    found = []

    def extend(k):
        if k == n:
            found.append(tuple(sigma))
            return
        for v in range(n):
            if used[v] or inv[v] != inv[k]:
                continue
            if any((j in adj[k]) != (sigma[j] in adj[v]) for j in range(k)):
                continue
            sigma[k], used[v] = v, True
            extend(k + 1)
            sigma[k], used[v] = -1, False

    extend(0)
    return found


def graph_automorphisms(g: LabeledGraph, preserve_V: bool = True) -> PermGroup:
    """Adjacency-preserving vertex bijections (mapping V onto V unless told otherwise)."""
    autos = _automorphisms(g, preserve_V)
    return PermGroup(g.n, PermGroup(g.n, autos).reduced_generators())


def restrict_to(G: PermGroup, points: tuple[int, ...]) -> PermGroup:
    """Action of a group on an invariant point set, renumbered ``0..len(points)-1``."""
    index = {p: k for k, p in enumerate(points)}
    gens = [tuple(index[g[p]] for p in points) for g in G.generators]
    return PermGroup(len(points), gens)


@dataclass(frozen=True)
class RealizationReport:
    graph_aut_order: int
    algebra_aut_order: int
    isomorphic: bool
    representation_equivalent: bool
    idempotent_count: int
    v_invariant: bool
    v_size: int

    @property
    def success(self) -> bool:
        return (
            self.isomorphic
            and self.representation_equivalent
            and self.v_invariant
            and self.idempotent_count == self.v_size
        )

    def to_json(self) -> dict:
        return {
            "graph_aut_order": self.graph_aut_order,
            "algebra_aut_order": self.algebra_aut_order,
            "isomorphic": self.isomorphic,
            "representation_equivalent": self.representation_equivalent,
            "idempotent_count": self.idempotent_count,
            "v_invariant": self.v_invariant,
            "success": self.success,
        }


def verify_realization(g: LabeledGraph, f: FieldSpec) -> RealizationReport:
    """Build the algebra of ``g`` and check every claimed property of it."""
    X = build_algebra_from_graph(g, f)
    A = automorphism_group(X)
    G = graph_automorphisms(g)
    full = graph_automorphisms(g, preserve_V=False)
    v_invariant = full.order() == G.order()
    isomorphic = are_isomorphic_small(A.as_permgroup(), G)
    m = idempotent_natural_elements(X).m
    equivalent = False
    if v_invariant:
        action = restrict_to(G, g.V)
        equivalent = equivalence_of_representations(rho_tilde(X), action) is not None
    return RealizationReport(
        graph_aut_order=G.order(),
        algebra_aut_order=A.order,
        isomorphic=isomorphic,
        representation_equivalent=equivalent,
        idempotent_count=m,
        v_invariant=v_invariant,
        v_size=len(g.V),
    )


def builtin_graph(family: str, n: int, V: tuple[int, ...] | None = None) -> LabeledGraph:
    """Fixture graphs: ``cycle``, ``complete`` (V = all) and ``cycle_with_tags``.

    ``V`` is 0-based.  Whether V is automorphism-invariant is not checked
    here; :func:`verify_realization` reports it.
    """
    if family == "cycle":
        if n < 3:
            raise EvokitError("cycle needs n >= 3")
        return LabeledGraph(n, tuple((i, (i + 1) % n) for i in range(n)), tuple(range(n)))
    if family == "complete":
        if n < 3:
            raise EvokitError("complete graph needs n >= 3")
        return LabeledGraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)), tuple(range(n)))
    if family == "cycle_with_tags":
        if n < 3:
            raise EvokitError("cycle needs n >= 3")
        if not V:
            raise EvokitError("cycle_with_tags needs a nonempty V")
        return LabeledGraph(n, tuple((i, (i + 1) % n) for i in range(n)), tuple(V))
    raise EvokitError(f"unknown graph family {family!r}")
