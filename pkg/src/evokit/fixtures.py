"""Reproducible input families: shipped fixtures and seeded random algebras."""

from __future__ import annotations

import random
from typing import Iterator

from .algebra import EvolutionAlgebra
from .field import FieldSpec
from .realize import build_algebra_from_graph, builtin_graph

DEFAULT_SEED = 20240611


def identity(n: int, f: FieldSpec) -> EvolutionAlgebra:
    return EvolutionAlgebra.from_rows(f, [[int(i == j) for j in range(n)] for i in range(n)])


def const(n: int, a, b, f: FieldSpec) -> EvolutionAlgebra:
    """Diagonal ``a``, every off-diagonal entry ``b``."""
    a, b = f(a), f(b)
    return EvolutionAlgebra.from_rows(f, [[a if i == j else b for j in range(n)] for i in range(n)])


def swap2(f: FieldSpec) -> EvolutionAlgebra:
    """``b1**2 = b2`` and ``b2**2 = b1``."""
    return EvolutionAlgebra.from_rows(f, [[0, 1], [1, 0]])


def cycle_algebra(n: int, f: FieldSpec) -> EvolutionAlgebra:
    return build_algebra_from_graph(builtin_graph("cycle", n), f)


def complete_algebra(n: int, f: FieldSpec) -> EvolutionAlgebra:
    return build_algebra_from_graph(builtin_graph("complete", n), f)


def random_regular(rng: random.Random, n: int, f: FieldSpec, zero_prob: float = 0.5) -> EvolutionAlgebra:
    """Rejection-sample a regular matrix over GF(p); each entry is 0 with ``zero_prob``."""
    p = f.modulus
    while True:
        rows = [[0 if rng.random() < zero_prob else rng.randrange(1, p) for _ in range(n)] for _ in range(n)]
        X = EvolutionAlgebra.from_rows(f, rows)
        if X.is_idempotent:
            return X


def random_corpus(
    count: int, dims: tuple[int, ...], primes: tuple[int, ...], seed: int = DEFAULT_SEED
) -> Iterator[EvolutionAlgebra]:
    """``count`` random regular algebras cycling over the given dims and primes.

    Zero density varies per sample so both sparse and dense patterns occur.
    """
    rng = random.Random(seed)
    fields = [FieldSpec.prime(p) for p in primes]
    for k in range(count):
        n = dims[k % len(dims)]
        f = fields[(k // len(dims)) % len(fields)]
        yield random_regular(rng, n, f, zero_prob=rng.choice((0.0, 0.3, 0.5, 0.7)))


def shipped_fixtures() -> dict[str, EvolutionAlgebra]:
    """Named matrix fixtures used by the property and acceptance suites."""
    Q = FieldSpec.rationals()
    out: dict[str, EvolutionAlgebra] = {}
    for field_name, f in [("Q", Q), ("GF5", FieldSpec.prime(5)), ("GF7", FieldSpec.prime(7)), ("GF11", FieldSpec.prime(11))]:
        for n in (2, 3, 4, 5):
            out[f"identity{n}_{field_name}"] = identity(n, f)
        out[f"swap2_{field_name}"] = swap2(f)
        for n in (3, 4, 5):
            out[f"const{n}_2_1_{field_name}"] = const(n, 2, 1, f)
            out[f"const{n}_0_1_{field_name}"] = const(n, 0, 1, f)
        out[f"const5_3_1_{field_name}"] = const(5, 3, 1, f)
    out = {k: X for k, X in out.items() if X.is_idempotent}
    for field_name, f in [("Q", Q), ("GF7", FieldSpec.prime(7))]:
        out[f"cycle3_{field_name}"] = cycle_algebra(3, f)
        out[f"cycle5_{field_name}"] = cycle_algebra(5, f)
        out[f"complete4_{field_name}"] = complete_algebra(4, f)
    return out
