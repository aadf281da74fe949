"""Automorphism groups of idempotent evolution algebras.

For an idempotent algebra every automorphism is a weighted permutation of
the natural basis, ``phi(b_i) = lam_i * b_sigma(i)``, and such a pair is an
automorphism exactly when

    lam_j * mu_ij == lam_i**2 * mu_{sigma(i) sigma(j)}   for all i, j.

The search enumerates candidate permutations by backtracking and then
solves that system for the scalars exactly.
"""

from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import factorial
from typing import Sequence

from .algebra import EvolutionAlgebra, idempotent_natural_elements
from .errors import InvariantViolation
from .field import FieldSpec, Scalar
from .permgroup import Perm, PermGroup, check_perm, compose, identity, inverse

#: Reports list individual automorphisms only up to this group order.
ELEMENT_LIST_CAP = 10000


@dataclass(frozen=True)
class WeightedAutomorphism:
    """``b_i -> lam[i] * b_{sigma[i]}``."""

    sigma: Perm
    lam: tuple

    @classmethod
    def checked(cls, X: EvolutionAlgebra, sigma: Sequence[int], lam: Sequence) -> "WeightedAutomorphism":
        lam = tuple(X.field(x) for x in lam)
        if not check_automorphism(X, sigma, lam):
            raise ValueError("(sigma, lambda) does not satisfy the automorphism equations")
        return cls(tuple(sigma), lam)

    def compose(self, other: "WeightedAutomorphism") -> "WeightedAutomorphism":
        """``self`` after ``other``."""
        lam = tuple(other.lam[i] * self.lam[other.sigma[i]] for i in range(len(self.sigma)))
        return WeightedAutomorphism(compose(self.sigma, other.sigma), lam)

    def inverse(self) -> "WeightedAutomorphism":
        inv = inverse(self.sigma)
        return WeightedAutomorphism(inv, tuple(1 / self.lam[inv[j]] for j in range(len(inv))))

    def is_identity(self) -> bool:
        return all(i == s for i, s in enumerate(self.sigma)) and all(x == 1 for x in self.lam)

    def sort_key(self, f: FieldSpec):
        return (self.sigma, tuple(f.sort_key(x) for x in self.lam))

    def to_json(self, f: FieldSpec) -> dict:
        return {"sigma": [s + 1 for s in self.sigma], "lambda": [f.format_scalar(x) for x in self.lam]}


def check_automorphism(X: EvolutionAlgebra, sigma: Sequence[int], lam: Sequence) -> bool:
    n = X.dim
    sigma = check_perm(sigma)
    if len(sigma) != n or len(lam) != n:
        raise ValueError(f"dimension mismatch: algebra has dim {n}")
    lam = [X.field(x) for x in lam]
    if any(x == 0 for x in lam):
        raise ValueError("lambda entries must be nonzero")
    M = X.matrix
    for i in range(n):
        sq = lam[i] * lam[i]
        row, img = M[i], M[sigma[i]]
        for j in range(n):
            if lam[j] * row[j] != sq * img[sigma[j]]:
                return False
    return True


def lambda_from_diagonal(X: EvolutionAlgebra, sigma: Sequence[int]) -> tuple:
    """``lam_i = mu_ii / mu_{sigma(i) sigma(i)}``; necessary, not sufficient."""
    M = X.matrix
    if any(M[i][i] == 0 for i in range(X.dim)):
        raise ValueError("every diagonal entry must be nonzero")
    return tuple(M[i][i] / M[s][s] for i, s in enumerate(sigma))


def lambda_B(X: EvolutionAlgebra, i: int, j: int, k: int, sigma: Sequence[int]) -> Scalar:
    """Closed form for ``lam_i`` from three distinct indices and off-diagonal entries."""
    if X.dim < 3:
        raise ValueError("needs dimension >= 3")
    if len({i, j, k}) != 3:
        raise ValueError(f"indices must be pairwise distinct, got {(i, j, k)}")
    M, s = X.matrix, sigma
    factors = [(M[i][k], M[s[i]][s[k]]), (M[s[j]][s[k]], M[j][k]), (M[j][i], M[s[j]][s[i]])]
    if any(den == 0 for _, den in factors):
        raise ValueError("a denominator entry of the closed form is zero")
    out = X.field.one
    for num, den in factors:
        out = out * num / den
    return out


def _pattern_compatible(X: EvolutionAlgebra, sigma: Perm) -> bool:
    M = X.matrix
    return all(
        (M[i][j] == 0) == (M[sigma[i]][sigma[j]] == 0) for i in range(X.dim) for j in range(X.dim)
    )


def _components(n: int, arcs: list[tuple[int, int]]) -> list[list[int]]:
    adj = [set() for _ in range(n)]
    for a, b in arcs:
        adj[a].add(b)
        adj[b].add(a)
    seen, comps = set(), []
    for v in range(n):
        if v in seen:
            continue
        comp, queue = [], deque([v])
        seen.add(v)
        while queue:
            u = queue.popleft()
            comp.append(u)
            for w in sorted(adj[u]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def _solve_component(X: EvolutionAlgebra, sigma: Perm, comp: list[int], arcs: list[tuple[int, int]]) -> list[dict]:
    """All solutions on one weakly connected component, as dicts vertex -> lambda.

    Along a spanning tree every vertex gets ``lam_v = a_v * t**(2**level_v)``
    in the root value ``t``: a forward arc squares, a backward arc takes a
    square root (branching over the field's square roots).  The root is a
    vertex of minimal level so all levels are >= 0.  Every arc then closes
    into a condition ``t**E == C``.
    """
    f = X.field
    M = X.matrix
    ratio = {(u, v): M[sigma[u]][sigma[v]] / M[u][v] for (u, v) in arcs}
    members = set(comp)
    out_arcs = {v: [] for v in comp}
    in_arcs = {v: [] for v in comp}
    comp_arcs = [(u, v) for (u, v) in arcs if u in members]
    for u, v in comp_arcs:
        if u != v:
            out_arcs[u].append(v)
            in_arcs[v].append(u)

    # spanning tree; level goes up by one along each arc's direction
    level = {comp[0]: 0}
    parent: dict[int, int] = {}
    queue = deque([comp[0]])
    while queue:
        u = queue.popleft()
        for v, fwd in [(w, True) for w in sorted(out_arcs[u])] + [(w, False) for w in sorted(in_arcs[u])]:
            if v not in level:
                level[v] = level[u] + (1 if fwd else -1)
                parent[v] = u
                queue.append(v)
    assert set(level) == members

    root = min(comp, key=lambda v: (level[v], v))
    base = level[root]
    level = {v: level[v] - base for v in comp}
    adj: dict[int, list[int]] = {v: [] for v in comp}
    for child, up in parent.items():
        adj[child].append(up)
        adj[up].append(child)

    # states: partial coefficient maps a_v, branching on square roots
    states = [{root: f.one}]
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in sorted(adj[u]):
            if v in seen:
                continue
            seen.add(v)
            queue.append(v)
            new_states = []
            for a in states:
                if level[v] == level[u] + 1:  # arc u -> v: lam_v = c * lam_u**2
                    a2 = dict(a)
                    a2[v] = ratio[(u, v)] * a[u] * a[u]
                    new_states.append(a2)
                else:  # arc v -> u: lam_v**2 = lam_u / c
                    for r in f.nth_roots(a[u] / ratio[(v, u)], 2):
                        a2 = dict(a)
                        a2[v] = r
                        new_states.append(a2)
            states = new_states

    solutions = []
    for a in states:
        conditions = []
        dead = False
        for u, v in comp_arcs:
            e = 2 ** (level[u] + 1) - 2 ** level[v]
            c = a[v] / (ratio[(u, v)] * a[u] * a[u])
            if e == 0:
                if c != 1:
                    dead = True
                    break
            elif e > 0:
                conditions.append((e, c))
            else:
                conditions.append((-e, 1 / c))
        if dead:
            continue
        if not conditions:
            raise InvariantViolation(
                "root scalar left unconstrained; the automorphism group would be infinite"
            )
        e0, c0 = min(conditions, key=lambda ec: ec[0])
        for t in f.nth_roots(c0, e0):
            if all(t**e == c for e, c in conditions):
                solutions.append({v: a[v] * t ** (2 ** level[v]) for v in comp})
    return solutions


def solve_lambda(X: EvolutionAlgebra, sigma: Sequence[int], fast_paths: bool = True) -> list[tuple]:
    """Every ``lam`` making ``(sigma, lam)`` an automorphism, sorted.

    With ``fast_paths`` the closed forms (all diagonal entries nonzero, or
    dimension >= 3 with all off-diagonal entries nonzero) give the unique
    candidate directly; it is still re-validated.
    """
    n = X.dim
    sigma = check_perm(sigma, n)
    if not _pattern_compatible(X, sigma):
        return []
    M = X.matrix
    candidates: list[tuple] | None = None
    if fast_paths:
        if all(M[i][i] != 0 for i in range(n)):
            candidates = [lambda_from_diagonal(X, sigma)]
        elif n >= 3 and all(M[i][j] != 0 for i in range(n) for j in range(n) if i != j):
            candidates = [tuple(lambda_B(X, i, (i + 1) % n, (i + 2) % n, sigma) for i in range(n))]
    if candidates is None:
        arcs = [(i, j) for i in range(n) for j in range(n) if M[i][j] != 0]
        per_comp = [_solve_component(X, sigma, comp, arcs) for comp in _components(n, arcs)]
        candidates = []
        for combo in product(*per_comp):
            lam = [None] * n
            for part in combo:
                for v, x in part.items():
                    lam[v] = x
            candidates.append(tuple(lam))
    f = X.field
    found = {lam for lam in candidates if check_automorphism(X, sigma, lam)}
    return sorted(found, key=lambda lam: tuple(f.sort_key(x) for x in lam))


def candidate_permutations(X: EvolutionAlgebra, first: int | None = None):
    """Permutations respecting row signatures and the zero pattern, in lexicographic order.

    ``first`` pins the image of index 0 (used to split the search).
    """
    n = X.dim
    nz = [[x != 0 for x in row] for row in X.matrix]
    sig = [(sum(row), not row[i]) for i, row in enumerate(nz)]
    sigma = [-1] * n
    used = [False] * n

    def extend(k):
        if k == n:
            yield tuple(sigma)
            return
        choices = range(n) if (k or first is None) else [first]
        for v in choices:
            if used[v] or sig[v] != sig[k] or nz[k][k] != nz[v][v]:
                continue
            if any(nz[i][k] != nz[sigma[i]][v] or nz[k][i] != nz[v][sigma[i]] for i in range(k)):
                continue
            sigma[k], used[v] = v, True
            yield from extend(k + 1)
            sigma[k], used[v] = -1, False

    yield from extend(0)


def _search(X: EvolutionAlgebra, first: int | None = None) -> list[WeightedAutomorphism]:
    return [
        WeightedAutomorphism(sigma, lam)
        for sigma in candidate_permutations(X, first)
        for lam in solve_lambda(X, sigma)
    ]


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("EVOKIT_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class AutomorphismGroup:
    algebra: EvolutionAlgebra
    elements: tuple[WeightedAutomorphism, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def kernel_elements(self) -> tuple[WeightedAutomorphism, ...]:
        ident = identity(self.algebra.dim)
        return tuple(a for a in self.elements if a.sigma == ident)

    @cached_property
    def image(self) -> PermGroup:
        sigmas = sorted({a.sigma for a in self.elements})
        return PermGroup(self.algebra.dim, PermGroup(self.algebra.dim, sigmas).reduced_generators())

    @property
    def faithful(self) -> bool:
        return len(self.kernel_elements) == 1

    @property
    def full(self) -> bool:
        return self.image.order() == factorial(self.algebra.dim)

    def as_permgroup(self) -> PermGroup:
        """Faithful permutation action on the orbits of the basis vectors.

        A point ``(j, c)`` stands for the vector ``c * b_j``; the group acts by
        ``phi(c * b_j) = c * lam_j * b_{sigma(j)}``.
        """
        f = self.algebra.field
        pts = {(a.sigma[i], a.lam[i]) for a in self.elements for i in range(self.algebra.dim)}
        pts = sorted(pts, key=lambda p: (p[0], f.sort_key(p[1])))
        index = {p: k for k, p in enumerate(pts)}
        gens = [
            tuple(index[(a.sigma[j], c * a.lam[j])] for (j, c) in pts) for a in self.elements
        ]
        return PermGroup(len(pts), PermGroup(len(pts), gens).reduced_generators())

    def report(self, element_cap: int = ELEMENT_LIST_CAP) -> dict:
        f = self.algebra.field
        out = {
            "field": str(f),
            "dim": self.algebra.dim,
            "order": self.order,
            "kernel_order": len(self.kernel_elements),
            "image_order": self.image.order(),
            "image_generators": [[s + 1 for s in g] for g in self.image.generators],
            "faithful": self.faithful,
            "full": self.full,
        }
        if self.order <= element_cap:
            out["elements"] = [a.to_json(f) for a in self.elements]
        else:
            out["elements_omitted"] = True
        return out


def automorphism_group(X: EvolutionAlgebra, workers: int | None = None) -> AutomorphismGroup:
    """All automorphisms of an idempotent algebra, sorted by (sigma, lambda).

    ``workers > 1`` splits the search on the image of index 0 across
    processes; the merged result is sorted, so it does not depend on
    scheduling.  The default comes from ``EVOKIT_THREADS``.
    """
    X.require_idempotent()
    workers = _default_workers() if workers is None else workers
    if workers > 1 and X.dim > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_search, [X] * X.dim, range(X.dim))
            found = [a for part in parts for a in part]
    else:
        found = _search(X)
    f = X.field
    found.sort(key=lambda a: a.sort_key(f))
    return AutomorphismGroup(X, tuple(found))


def kernel(X: EvolutionAlgebra) -> list[WeightedAutomorphism]:
    """Diagonal automorphisms (sigma = identity)."""
    X.require_idempotent()
    ident = identity(X.dim)
    return [WeightedAutomorphism(ident, lam) for lam in solve_lambda(X, ident)]


def rho(X: EvolutionAlgebra) -> tuple[PermGroup, bool]:
    """Image of the action on basis indices, and whether that action is faithful."""
    A = automorphism_group(X)
    return A.image, A.faithful


def rho_tilde(X: EvolutionAlgebra) -> PermGroup:
    """Action on the idempotent natural elements, numbered 0..m-1.

    The algebra is first normalized so those elements come first; every
    automorphism maps that block onto itself.
    """
    norm = idempotent_natural_elements(X)
    m = norm.m
    A = automorphism_group(norm.algebra)
    restricted = set()
    for a in A.elements:
        part = a.sigma[:m]
        if sorted(part) != list(range(m)):
            raise InvariantViolation("an automorphism moved an idempotent natural element off the block")
        restricted.add(part)
    return PermGroup(m, PermGroup(m, sorted(restricted)).reduced_generators())
