"""Brute-force automorphism enumeration over small prime fields.

Every permutation is paired with every vector of units and the defining
equations are checked for all index pairs at once with numpy.  Nothing
here shares code with the backtracking search, which is the point: it is
the reference the search is compared against.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .algebra import EvolutionAlgebra
from .autgroup import WeightedAutomorphism, automorphism_group
from .errors import CapExceededError, EvokitError
from .field import ModP

MAX_DIM = 5
MAX_PRIME = 11


def brute_force_automorphisms(
    X: EvolutionAlgebra, max_dim: int = MAX_DIM, max_prime: int = MAX_PRIME
) -> list[WeightedAutomorphism]:
    f = X.field
    if not f.is_prime_field:
        raise EvokitError("the oracle only runs over GF(p)")
    n, p = X.dim, f.modulus
    if n > max_dim or p > max_prime:
        raise CapExceededError(f"oracle caps are dim <= {max_dim}, p <= {max_prime}")
    X.require_idempotent()
    M = np.array([[x.value for x in row] for row in X.matrix], dtype=np.int64)
    # all unit vectors, lexicographic in residues
    grids = np.meshgrid(*[np.arange(1, p)] * n, indexing="ij")
    L = np.stack([g.ravel() for g in grids], axis=1)
    lhs = (L[:, None, :] * M[None, :, :]) % p  # lam_j * mu_ij
    sq = (L * L) % p
    found = []
    for sigma in permutations(range(n)):
        s = np.array(sigma)
        Ms = M[np.ix_(s, s)]  # mu_{sigma(i) sigma(j)}
        rhs = (sq[:, :, None] * Ms[None, :, :]) % p
        ok = np.all(lhs == rhs, axis=(1, 2))
        for row in L[ok]:
            found.append(WeightedAutomorphism(tuple(sigma), tuple(ModP(int(v), p) for v in row)))
    return found


def cross_check(X: EvolutionAlgebra, max_dim: int = MAX_DIM, max_prime: int = MAX_PRIME) -> bool:
    """Does the backtracking search return exactly the brute-force set (same order)?"""
    brute = brute_force_automorphisms(X, max_dim, max_prime)
    return list(automorphism_group(X).elements) == brute
