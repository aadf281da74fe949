"""Permutation groups on ``range(n)``.

A permutation is a tuple ``p`` with ``p[i]`` the image of ``i``.  Products
act on indices right to left: ``compose(p, q)[i] == p[q[i]]``.  Group files
and the CLI use 1-based image arrays instead.
"""

from __future__ import annotations

import re
import threading
from collections import Counter, deque
from functools import reduce
from itertools import product
from math import factorial, lcm, perm as falling_factorial
from typing import Iterable, Iterator, Sequence

from .errors import CapExceededError, ParseError

Perm = tuple[int, ...]

#: k-tuple orbits are enumerated directly, so both n and k are capped.
MAX_TUPLE_DEGREE = 16
MAX_TUPLE_K = 6
#: Largest group order accepted by :func:`are_isomorphic_small`.
ISOMORPHISM_ORDER_CAP = 5040


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """``p`` after ``q``."""
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def is_identity(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


def conjugate(g: Perm, tau: Perm) -> Perm:
    """``tau**-1 * g * tau``."""
    return compose(inverse(tau), compose(g, tau))


def check_perm(p: Sequence[int], n: int | None = None) -> Perm:
    p = tuple(p)
    if (n is not None and len(p) != n) or sorted(p) != list(range(len(p))):
        raise ValueError(f"{p!r} is not a permutation" + (f" of degree {n}" if n is not None else ""))
    return p


def cycles(p: Perm) -> list[tuple[int, ...]]:
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        c = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            c.append(j)
            seen.add(j)
            j = p[j]
        out.append(tuple(c))
    return out


def element_order(p: Perm) -> int:
    return reduce(lcm, (len(c) for c in cycles(p)), 1)


def from_cycles(n: int, text: str) -> Perm:
    """Parse 1-based cycle notation such as ``"(1 2 3)(4 5)"``."""
    img = list(range(n))
    for body in re.findall(r"\(([^()]*)\)", text):
        pts = [int(t) - 1 for t in re.split(r"[\s,]+", body.strip()) if t]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return check_perm(img, n)


def cycle_string(p: Perm) -> str:
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cs)


def _first_moved(p: Perm) -> int:
    return next(i for i, x in enumerate(p) if i != x)


def _transversal(base_point: int, gens: list[Perm], n: int) -> dict[int, Perm]:
    trans = {base_point: identity(n)}
    queue = deque([base_point])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = s[x]
            if y not in trans:
                trans[y] = compose(s, trans[x])
                queue.append(y)
    return trans


class StabilizerChain:
    """Base and transversals built by deterministic Schreier-Sims."""

    def __init__(self, n: int, gens: Iterable[Perm]):
        self.n = n
        strong: list[Perm] = []
        for g in gens:
            if not is_identity(g) and g not in strong:
                strong.append(g)
        base: list[int] = []
        for g in strong:
            if all(g[b] == b for b in base):
                base.append(_first_moved(g))
        self.base = base
        self.strong = strong
        self.transversals = [_transversal(b, self._gens_at(i), n) for i, b in enumerate(base)]
        i = len(base) - 1
        while i >= 0:
            j = self._schreier_step(i)
            i = i - 1 if j is None else j

    def _gens_at(self, i: int) -> list[Perm]:
        prefix = self.base[:i]
        return [s for s in self.strong if all(s[b] == b for b in prefix)]

    def _schreier_step(self, i: int) -> int | None:
        """Test every Schreier generator at level i; on failure extend and return the new level."""
        trans = self.transversals[i]
        for x, ux in list(trans.items()):
            for s in self._gens_at(i):
                h = compose(inverse(trans[s[x]]), compose(s, ux))
                residue, j = self.sift(h, i + 1)
                if j == len(self.base) and is_identity(residue):
                    continue
                self.strong.append(residue)
                if j == len(self.base):
                    self.base.append(_first_moved(residue))
                    self.transversals.append({})
                for level in range(i + 1, j + 1):
                    self.transversals[level] = _transversal(self.base[level], self._gens_at(level), self.n)
                return j
        return None

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for level in range(start, len(self.base)):
            x = g[self.base[level]]
            u = self.transversals[level].get(x)
            if u is None:
                return g, level
            g = compose(inverse(u), g)
        return g, len(self.base)

    def order(self) -> int:
        out = 1
        for t in self.transversals:
            out *= len(t)
        return out

    def contains(self, g: Perm) -> bool:
        residue, level = self.sift(g)
        return level == len(self.base) and is_identity(residue)

    def elements(self) -> Iterator[Perm]:
        reps = [list(t.values()) for t in self.transversals]
        for combo in product(*reps):
            yield reduce(compose, combo, identity(self.n))


class PermGroup:
    """Group generated by permutations of ``range(degree)``.

    The stabilizer chain is built lazily, once, under a lock; afterwards
    read-only queries may run concurrently.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = ()):
        self.degree = degree
        self.generators = tuple(check_perm(g, degree) for g in generators)
        self._chain: StabilizerChain | None = None
        self._lock = threading.Lock()

    def __repr__(self):
        gens = ", ".join(cycle_string(g) for g in self.generators)
        return f"PermGroup({self.degree}, <{gens}>)"

    def __getstate__(self):
        return {"degree": self.degree, "generators": self.generators}

    def __setstate__(self, state):
        self.__init__(state["degree"], state["generators"])

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = StabilizerChain(self.degree, self.generators)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def contains(self, g: Sequence[int]) -> bool:
        return self.chain.contains(check_perm(g, self.degree))

    __contains__ = contains

    def elements(self) -> Iterator[Perm]:
        return self.chain.elements()

    def orbit(self, point: int) -> set[int]:
        return set(_transversal(point, list(self.generators), self.degree))

    def orbits(self) -> list[list[int]]:
        seen, out = set(), []
        for i in range(self.degree):
            if i not in seen:
                orb = sorted(self.orbit(i))
                seen.update(orb)
                out.append(orb)
        return out

    def conjugate(self, tau: Sequence[int]) -> "PermGroup":
        """The group ``tau**-1 * G * tau``."""
        tau = check_perm(tau, self.degree)
        return PermGroup(self.degree, [conjugate(g, tau) for g in self.generators])

    def is_symmetric(self) -> bool:
        return self.order() == factorial(self.degree)

    def reduced_generators(self) -> list[Perm]:
        """Drop generators already in the span of earlier ones (order preserved)."""
        kept: list[Perm] = []
        sub = StabilizerChain(self.degree, [])
        for g in self.generators:
            if not sub.contains(g):
                kept.append(g)
                sub = StabilizerChain(self.degree, kept)
        return kept

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [[x + 1 for x in g] for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> "PermGroup":
        try:
            n = data["degree"]
            gens = data["generators"]
        except (KeyError, TypeError):
            raise ParseError("group file needs 'degree' and 'generators'") from None
        if not isinstance(n, int) or n < 0:
            raise ParseError(f"bad degree {n!r}")
        try:
            return cls(n, [[x - 1 for x in g] for g in gens])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad generator: {exc}") from None


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup(n)
    gens = [from_cycles(n, "(1 2)")]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return PermGroup(n, gens)


def alternating_group(n: int) -> PermGroup:
    return PermGroup(n, [from_cycles(n, f"(1 2 {i})") for i in range(3, n + 1)])


def cyclic_group(n: int) -> PermGroup:
    return PermGroup(n, [tuple(list(range(1, n)) + [0])] if n > 1 else [])


def order(G: PermGroup) -> int:
    return G.order()


def _tuple_orbit_size(G: PermGroup, k: int) -> int:
    start = tuple(range(k))
    seen = {start}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for g in G.generators:
            u = tuple(g[x] for x in t)
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen)


def is_k_transitive(G: PermGroup, k: int) -> bool:
    """Does G act transitively on ordered k-tuples of distinct points?"""
    n = G.degree
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    target = falling_factorial(n, k)
    # orbit size never exceeds |G|; |G| == n! means G is all of S_n
    order_ = G.order()
    if order_ < target:
        return False
    if order_ == factorial(n):
        return True
    if n > MAX_TUPLE_DEGREE or k > MAX_TUPLE_K:
        raise CapExceededError(f"{k}-tuple orbit on {n} points exceeds caps (n<={MAX_TUPLE_DEGREE}, k<={MAX_TUPLE_K})")
    return _tuple_orbit_size(G, k) == target


def transitivity_degree(G: PermGroup) -> int:
    """Largest k with G k-transitive, or 0 if G is not transitive."""
    k = 0
    while k < G.degree and is_k_transitive(G, k + 1):
        k += 1
    return k


def _orbital_colors(G: PermGroup) -> list[list[int]]:
    n = G.degree
    color = [[-1] * n for _ in range(n)]
    c = 0
    for i in range(n):
        for j in range(n):
            if color[i][j] >= 0:
                continue
            color[i][j] = c
            queue = deque([(i, j)])
            while queue:
                a, b = queue.popleft()
                for g in G.generators:
                    x, y = g[a], g[b]
                    if color[x][y] < 0:
                        color[x][y] = c
                        queue.append((x, y))
            c += 1
    return color


def equivalence_of_representations(G1: PermGroup, G2: PermGroup) -> Perm | None:
    """Find ``tau`` with ``tau**-1 * G1 * tau == G2``, or None.

    ``tau`` carries points of G2 to points of G1, so it must send every
    orbital (orbit on ordered pairs) of G2 onto an orbital of G1.  The search
    assigns ``tau(0), tau(1), ...`` in lexicographic order under that
    constraint and confirms each complete candidate by membership tests.
    """
    if G1.degree != G2.degree or G1.order() != G2.order():
        return None
    n = G1.degree
    c1, c2 = _orbital_colors(G1), _orbital_colors(G2)
    size1, size2 = Counter(x for row in c1 for x in row), Counter(x for row in c2 for x in row)
    tau = [-1] * n
    used = [False] * n
    fwd: dict[int, int] = {}
    back: dict[int, int] = {}

    def bind(a: int, b: int, added: list) -> bool:
        if a in fwd:
            return fwd[a] == b
        if b in back or size1[b] != size2[a]:
            return False
        fwd[a], back[b] = b, a
        added.append((a, b))
        return True

    def works() -> bool:
        inv = inverse(tuple(tau))
        return all(G1.chain.contains(compose(tuple(tau), compose(h, inv))) for h in G2.generators)

    def search(i: int) -> bool:
        if i == n:
            return works()
        for v in range(n):
            if used[v]:
                continue
            added: list = []
            ok = bind(c2[i][i], c1[v][v], added)
            for j in range(i):
                if not ok:
                    break
                ok = bind(c2[j][i], c1[tau[j]][v], added) and bind(c2[i][j], c1[v][tau[j]], added)
            if ok:
                tau[i], used[v] = v, True
                if search(i + 1):
                    return True
                tau[i], used[v] = -1, False
            for a, b in added:
                del fwd[a], back[b]
        return False

    return tuple(tau) if search(0) else None


def _extend_homomorphism(gens: list[Perm], images: list[Perm], n_g: int, n_h: int) -> dict | None:
    """Walk the Cayley graph of <gens>; None if gens -> images is not a homomorphism."""
    phi = {identity(n_g): identity(n_h)}
    queue = deque(phi)
    while queue:
        g = queue.popleft()
        for s, t in zip(gens, images):
            gs = compose(g, s)
            ht = compose(phi[g], t)
            known = phi.get(gs)
            if known is None:
                phi[gs] = ht
                queue.append(gs)
            elif known != ht:
                return None
    return phi


def are_isomorphic_small(G: PermGroup, H: PermGroup, cap: int = ISOMORPHISM_ORDER_CAP) -> bool:
    """Abstract isomorphism of two small permutation groups.

    Cheap invariants first (order, multiset of element orders), then a
    backtracking search over images of a reduced generating set of G.
    """
    og, oh = G.order(), H.order()
    if og > cap or oh > cap:
        raise CapExceededError(f"group order {max(og, oh)} exceeds isomorphism cap {cap}")
    if og != oh:
        return False
    elems_h = list(H.elements())
    orders_g = Counter(element_order(g) for g in G.elements())
    orders_h = Counter(element_order(h) for h in elems_h)
    if orders_g != orders_h:
        return False
    gens = G.reduced_generators()
    if not gens:
        return True
    by_order: dict[int, list[Perm]] = {}
    for h in elems_h:
        by_order.setdefault(element_order(h), []).append(h)
    candidates = [by_order[element_order(g)] for g in gens]

    def search(images: list[Perm]) -> bool:
        t = len(images)
        if t and _extend_homomorphism(gens[:t], images, G.degree, H.degree) is None:
            return False
        if t == len(gens):
            phi = _extend_homomorphism(gens, images, G.degree, H.degree)
            return len(set(phi.values())) == og
        return any(search(images + [h]) for h in candidates[t])

    return search([])
