"""Evolution algebras stored by their structure matrix.

Row ``i`` of the matrix holds the coefficients of ``b_i**2`` in the natural
basis, so ``b_i**2 = sum_j matrix[i][j] * b_j``.  Some authors use the
transpose; files written by this package always use rows.

Indices are 0-based throughout the Python API.  The JSON file formats and
the CLI use 1-based positions where permutations appear.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import NamedTuple, Sequence

from .errors import NotIdempotentError, ParseError
from .field import FieldSpec, Scalar


@dataclass(frozen=True)
class EvolutionAlgebra:
    field: FieldSpec
    matrix: tuple[tuple[Scalar, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        rows = tuple(tuple(self.field(x) for x in row) for row in self.matrix)
        n = len(rows)
        if n < 1:
            raise ParseError("an evolution algebra needs dimension >= 1")
        if any(len(row) != n for row in rows):
            raise ParseError("structure matrix must be square")
        labels = tuple(self.labels) or tuple(f"b{i + 1}" for i in range(n))
        if len(labels) != n:
            raise ParseError(f"expected {n} labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise ParseError("basis labels must be distinct")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_rows(cls, f: FieldSpec, rows: Sequence[Sequence], labels: Sequence[str] = ()) -> "EvolutionAlgebra":
        return cls(f, tuple(tuple(r) for r in rows), tuple(labels))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @cached_property
    def determinant(self) -> Scalar:
        return determinant(self.matrix, self.field)

    @cached_property
    def is_idempotent(self) -> bool:
        return self.determinant != 0

    def require_idempotent(self) -> None:
        if not self.is_idempotent:
            raise NotIdempotentError("structure matrix is singular (algebra is not idempotent)")

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.matrix[i][j]

    # -- file format ---------------------------------------------------
    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "dim": self.dim,
            "matrix": [[self.field.format_scalar(x) for x in row] for row in self.matrix],
            "labels": list(self.labels),
        }

    @classmethod
    def from_json(cls, data: dict, field_override: FieldSpec | None = None) -> "EvolutionAlgebra":
        if not isinstance(data, dict):
            raise ParseError("algebra file must hold a JSON object")
        try:
            f = field_override or FieldSpec.parse(data["field"])
            matrix = data["matrix"]
        except KeyError as exc:
            raise ParseError(f"algebra file is missing {exc}") from None
        if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
            raise ParseError("'matrix' must be a list of rows")
        if "dim" in data and data["dim"] != len(matrix):
            raise ParseError(f"'dim' is {data['dim']} but the matrix has {len(matrix)} rows")
        for row in matrix:
            for x in row:
                if not isinstance(x, (str, int)) or isinstance(x, bool):
                    raise ParseError(f"scalar entries must be strings, got {x!r}")
        return cls.from_rows(f, matrix, data.get("labels") or ())


class ZeroPatternDigraph(NamedTuple):
    """Arc ``i -> j`` exactly when ``matrix[i][j] != 0``."""

    n: int
    arcs: frozenset[tuple[int, int]]

    def successors(self, i: int) -> list[int]:
        return sorted(j for (a, j) in self.arcs if a == i)

    def loops(self) -> list[int]:
        return sorted(i for (i, j) in self.arcs if i == j)


def zero_pattern_digraph(X: EvolutionAlgebra) -> ZeroPatternDigraph:
    arcs = frozenset((i, j) for i, row in enumerate(X.matrix) for j, x in enumerate(row) if x != 0)
    return ZeroPatternDigraph(X.dim, arcs)


def _bareiss(a: list[list[int]]) -> int:
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinant(matrix: Sequence[Sequence[Scalar]], f: FieldSpec) -> Scalar:
    """Exact determinant.

    Over Q each row is cleared of denominators and the integer matrix goes
    through fraction-free (Bareiss) elimination.  Over GF(p) ordinary
    Gaussian elimination is exact already.
    """
    n = len(matrix)
    if f.is_prime_field:
        p = f.modulus
        a = [[int(x) for x in row] for row in matrix]
        det = 1
        for k in range(n):
            pivot = next((r for r in range(k, n) if a[r][k] % p), None)
            if pivot is None:
                return f.zero
            if pivot != k:
                a[k], a[pivot] = a[pivot], a[k]
                det = -det
            det = det * a[k][k] % p
            inv = pow(a[k][k], -1, p)
            for r in range(k + 1, n):
                factor = a[r][k] * inv % p
                if factor:
                    a[r] = [(x - factor * y) % p for x, y in zip(a[r], a[k])]
        return f(det)
    scale = Fraction(1)
    rows = []
    for row in matrix:
        d = lcm(*(Fraction(x).denominator for x in row))
        scale *= d
        rows.append([int(Fraction(x) * d) for x in row])
    return Fraction(_bareiss(rows)) / scale


def is_idempotent(X: EvolutionAlgebra) -> bool:
    """True iff the structure matrix is regular (X**2 == X)."""
    return X.is_idempotent


def rescale_basis(X: EvolutionAlgebra, lam: Sequence) -> EvolutionAlgebra:
    """Structure matrix in the basis ``b'_i = lam_i * b_i``.

    The new constants are ``lam_i**2 * lam_j**-1 * mu_ij``.
    """
    f = X.field
    lam = [f(x) for x in lam]
    if len(lam) != X.dim:
        raise ValueError(f"need {X.dim} scalars, got {len(lam)}")
    if any(x == 0 for x in lam):
        raise ValueError("rescaling factors must be nonzero")
    inv = [1 / x for x in lam]
    rows = [[lam[i] * lam[i] * inv[j] * X.matrix[i][j] for j in range(X.dim)] for i in range(X.dim)]
    return EvolutionAlgebra.from_rows(f, rows, X.labels)


def _check_permutation(tau: Sequence[int], n: int) -> tuple[int, ...]:
    tau = tuple(tau)
    if len(tau) != n or sorted(tau) != list(range(n)):
        raise ValueError(f"{tau!r} is not a permutation of range({n})")
    return tau


def permute_basis(X: EvolutionAlgebra, tau: Sequence[int]) -> EvolutionAlgebra:
    """Relabel basis vector ``i`` as position ``tau[i]``; labels travel along."""
    n = X.dim
    tau = _check_permutation(tau, n)
    rows = [[None] * n for _ in range(n)]
    labels = [""] * n
    for i in range(n):
        labels[tau[i]] = X.labels[i]
        for j in range(n):
            rows[tau[i]][tau[j]] = X.matrix[i][j]
    return EvolutionAlgebra.from_rows(X.field, rows, labels)


class IdempotentNormalization(NamedTuple):
    algebra: EvolutionAlgebra
    m: int
    scale: tuple  # factor applied to each original b_i
    order: tuple[int, ...]  # order[i] = new position of original index i
    idempotent_indices: tuple[int, ...]  # original indices, ascending


def idempotent_rows(X: EvolutionAlgebra) -> list[int]:
    """Indices whose row is ``mu_ii * e_i`` with ``mu_ii != 0``."""
    return [
        i
        for i, row in enumerate(X.matrix)
        if row[i] != 0 and all(x == 0 for j, x in enumerate(row) if j != i)
    ]


def idempotent_natural_elements(X: EvolutionAlgebra) -> IdempotentNormalization:
    """Move the idempotent natural elements to the front and make them idempotent.

    Each ``b_i`` with ``b_i**2 = mu_ii * b_i`` is rescaled by ``1/mu_ii``.
    The reordering is stable inside both blocks.
    """
    X.require_idempotent()
    f = X.field
    idem = idempotent_rows(X)
    idem_set = set(idem)
    scale = tuple(1 / X.matrix[i][i] if i in idem_set else f.one for i in range(X.dim))
    rest = [i for i in range(X.dim) if i not in idem_set]
    order = [0] * X.dim
    for pos, i in enumerate(idem + rest):
        order[i] = pos
    Y = permute_basis(rescale_basis(X, scale), order)
    return IdempotentNormalization(Y, len(idem), scale, tuple(order), tuple(idem))
