import json
import random
from itertools import permutations

import pytest

from evokit.algebra import idempotent_natural_elements
from evokit.autgroup import automorphism_group, rho_tilde
from evokit.errors import EvokitError, ParseError
from evokit.realize import (
    LabeledGraph,
    build_algebra_from_graph,
    builtin_graph,
    graph_automorphisms,
    verify_realization,
)

from conftest import FIXTURE_DIR, GF5, GF7, Q


def load_graph(name):
    return LabeledGraph.from_json(json.loads((FIXTURE_DIR / name).read_text()))


def brute_graph_automorphisms(g, preserve_V=True):
    edges = {frozenset(e) for e in g.edges}
    out = []
    for p in permutations(range(g.n)):
        if {frozenset((p[a], p[b])) for a, b in g.edges} != edges:
            continue
        if preserve_V and {p[v] for v in g.V} != set(g.V):
            continue
        out.append(p)
    return out


def random_graph(rng):
    """A cycle plus random chords, so every vertex has degree >= 2."""
    n = rng.randint(3, 5)
    edges = {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
    for _ in range(rng.randint(0, 2)):
        a, b = rng.sample(range(n), 2)
        edges.add(tuple(sorted((a, b))))
    V = tuple(sorted(rng.sample(range(n), rng.randint(1, n))))
    return LabeledGraph(n, tuple(sorted(edges)), V)


def test_c3_algebra_rows():
    X = build_algebra_from_graph(builtin_graph("cycle", 3), Q)
    assert X.dim == 6
    assert X.labels == ("v1", "v2", "v3", "e1-2", "e1-3", "e2-3")
    rows = [[int(x) for x in r] for r in X.matrix]
    assert rows == [
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [1, 1, 0, 1, 0, 0],
        [1, 0, 1, 0, 1, 0],
        [0, 1, 1, 0, 0, 1],
    ]


def test_vertices_outside_V_square_to_themselves_plus_V():
    g = LabeledGraph(4, ((0, 1), (1, 2), (2, 3), (0, 3)), (0, 2))
    X = build_algebra_from_graph(g, Q)
    assert [int(x) for x in X.matrix[1][:4]] == [1, 1, 1, 0]
    assert [int(x) for x in X.matrix[0][:4]] == [1, 0, 0, 0]


def test_c5_has_five_idempotents():
    X = build_algebra_from_graph(builtin_graph("cycle", 5), Q)
    assert X.dim == 10
    assert idempotent_natural_elements(X).m == 5


@pytest.mark.parametrize("seed", range(25))
def test_built_algebra_invariants(seed):
    g = random_graph(random.Random(seed))
    for f in (Q, GF7):
        X = build_algebra_from_graph(g, f)
        assert X.dim == g.n + len(g.edges)
        assert all(X.matrix[i][i] == 1 for i in range(X.dim))
        assert X.determinant in (f(1), f(-1))
        assert all(x in (0, 1) for row in X.matrix for x in row)
        assert idempotent_natural_elements(X).m == len(g.V)
    A = automorphism_group(build_algebra_from_graph(g, Q))
    assert all(x == 1 for a in A.elements for x in a.lam)


@pytest.mark.parametrize("name, order", [("c3.json", 6), ("c5.json", 10), ("k4.json", 24)])
@pytest.mark.parametrize("f", [Q, GF7], ids=str)
def test_shipped_graphs_realize(name, order, f):
    rep = verify_realization(load_graph(name), f)
    assert rep.success
    assert rep.graph_aut_order == rep.algebra_aut_order == order


def test_two_distinguished_vertices():
    g = load_graph("c4_chord.json")
    assert len(g.V) == 2
    rep = verify_realization(g, Q)
    assert rep.success and rep.idempotent_count == 2
    assert rep.graph_aut_order == len(brute_graph_automorphisms(g))


def test_single_distinguished_vertex():
    g = load_graph("bowtie.json")
    assert len(g.V) == 1
    rep = verify_realization(g, Q)
    assert rep.success and rep.idempotent_count == 1
    assert rep.graph_aut_order == len(brute_graph_automorphisms(g)) == 8


@pytest.mark.parametrize("seed", range(15))
def test_random_graphs_realize_when_V_invariant(seed):
    g = random_graph(random.Random(100 + seed))
    rep = verify_realization(g, GF7)
    full = brute_graph_automorphisms(g, preserve_V=False)
    keep = brute_graph_automorphisms(g)
    assert rep.v_invariant == (len(full) == len(keep))
    assert rep.graph_aut_order == len(keep)
    if rep.v_invariant:
        assert rep.success
        assert rep.algebra_aut_order == len(keep)


def test_rho_tilde_matches_graph_action_on_c3():
    X = build_algebra_from_graph(builtin_graph("cycle", 3), GF5)
    assert rho_tilde(X).order() == 6


def test_graph_automorphism_examples():
    assert graph_automorphisms(builtin_graph("cycle", 3)).order() == 6
    assert graph_automorphisms(builtin_graph("cycle", 5)).order() == 10
    p3 = LabeledGraph(3, ((0, 1), (1, 2)), (0, 2))
    G = graph_automorphisms(p3)
    assert G.order() == 2 == len(brute_graph_automorphisms(p3))


def test_V_not_invariant_is_flagged():
    g = builtin_graph("cycle_with_tags", 5, (0,))
    assert g.V == (0,)
    rep = verify_realization(g, Q)
    assert not rep.v_invariant
    assert not rep.representation_equivalent
    assert not rep.success
    assert rep.to_json()["success"] is False


def test_builtin_graph_families():
    g = builtin_graph("cycle", 3)
    assert g.V == (0, 1, 2) and len(g.edges) == 3
    g = builtin_graph("complete", 4)
    assert g.V == (0, 1, 2, 3) and len(g.edges) == 6
    with pytest.raises(EvokitError):
        builtin_graph("petersen", 10)
    with pytest.raises(EvokitError):
        builtin_graph("cycle", 2)


def test_degree_one_rejected():
    g = LabeledGraph(2, ((0, 1),), (0,))
    with pytest.raises(EvokitError):
        build_algebra_from_graph(g, Q)
    with pytest.raises(EvokitError):
        verify_realization(g, Q)


@pytest.mark.parametrize(
    "data",
    [
        {"n": 3, "edges": [[1, 2], [2, 3], [1, 3]], "V": []},
        {"n": 3, "edges": [[1, 1], [2, 3], [1, 3]], "V": [1]},
        {"n": 3, "edges": [[1, 2], [2, 1], [2, 3], [1, 3]], "V": [1]},
        {"n": 3, "edges": [[1, 2], [2, 4]], "V": [1]},
        {"n": 3, "edges": [[1, 2]]},
        {"n": 3, "edges": [[1, 2, 3]], "V": [1]},
    ],
)
def test_bad_graph_files(data):
    with pytest.raises(ParseError):
        LabeledGraph.from_json(data)


def test_graph_json_round_trip():
    g = load_graph("c4_chord.json")
    assert LabeledGraph.from_json(g.to_json()) == g
