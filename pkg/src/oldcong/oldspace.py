"""Degeneracy maps on truncated q-expansions and the old-space spanning matrix."""

from __future__ import annotations

from dataclasses import dataclass

from .arith import prime_divisors, sturm_bound
from .linalg import IntMatrix, hnf, saturate
from .modsym import integral_basis


def degeneracy_image(v, d: int, B: int) -> list[int]:
    """Coefficients of g(q^d) given those of g: w_i = v_{i/d} when d | i."""
    if d < 1:
        raise ValueError("degeneracy index must be >= 1")
    return [v[i // d - 1] if i % d == 0 and i // d <= len(v) else 0 for i in range(1, B + 1)]


@dataclass(frozen=True)
class OldspaceMatrix:
    level: int
    precision: int
    matrix: IntMatrix
    provenance: tuple[tuple[int, int], ...]  # (source level, degeneracy index) per row

    @property
    def is_saturated(self) -> bool:
        return saturate(self.matrix) == hnf(self.matrix)


def oldspace_matrix(N: int, B: int | None = None) -> OldspaceMatrix:
    """Rows beta_1(g), beta_p(g) for g in an integral basis at level N/p, all p | N."""
    if B is None:
        B = sturm_bound(N)
    rows, prov = [], []
    for p in prime_divisors(N):
        M = N // p
        basis = integral_basis(M, max(B, sturm_bound(M)))
        for g in basis.rows:
            g = g[:B]
            for d in (1, p):
                rows.append(degeneracy_image(g, d, B))
                prov.append((M, d))
    return OldspaceMatrix(N, B, IntMatrix.from_rows(rows, B), tuple(prov))
