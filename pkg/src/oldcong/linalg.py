"""Exact integer and prime-field linear algebra.

Matrices are dense, row-major, with Python ints as entries.  Row-style
Hermite normal form is the canonical output everywhere: zero rows dropped,
pivots positive, entries above a pivot reduced into ``[0, pivot)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError(f"row of length {len(r)} in matrix with {self.ncols} columns")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> IntMatrix:
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(rows, ncols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def transpose(self) -> IntMatrix:
        return IntMatrix(tuple(zip(*self.rows)) if self.rows else (), self.nrows) \
            if self.ncols else IntMatrix((), self.nrows)

    def stack(self, other: IntMatrix) -> IntMatrix:
        if other.ncols != self.ncols:
            raise ValueError("column count mismatch")
        return IntMatrix(self.rows + other.rows, self.ncols)

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r}, ncols={self.ncols})"


def _as_matrix(A) -> IntMatrix:
    if isinstance(A, IntMatrix):
        return A
    return IntMatrix.from_rows(A)


# ---------------------------------------------------------------- Hermite form

def _hnf_rows(rows: list[list[int]], npiv: int) -> tuple[list[list[int]], int]:
    """In-place row HNF on the first ``npiv`` columns of ``rows``.

    Extra columns (an augmented identity, say) ride along under the same
    unimodular row operations.  Returns the rows, permuted so the pivot rows
    come first, and the rank.
    """
    m = len(rows)
    r = 0
    for j in range(npiv):
        if r == m:
            break
        # gcd elimination on column j among rows r..m-1
        while True:
            best = None
            for i in range(r, m):
                x = rows[i][j]
                if x and (best is None or abs(x) < abs(rows[best][j])):
                    best = i
            if best is None:
                break
            rows[r], rows[best] = rows[best], rows[r]
            piv = rows[r]
            a = piv[j]
            done = True
            for i in range(r + 1, m):
                b = rows[i][j]
                if b:
                    q = b // a
                    row = rows[i]
                    for k in range(j, len(row)):
                        row[k] -= q * piv[k]
                    if row[j]:
                        done = False
            if done:
                break
        if rows[r][j] == 0:
            continue
        piv = rows[r]
        if piv[j] < 0:
            for k in range(len(piv)):
                piv[k] = -piv[k]
        a = piv[j]
        for i in range(r):
            b = rows[i][j]
            q = b // a
            if q:
                row = rows[i]
                for k in range(j, len(row)):
                    row[k] -= q * piv[k]
        r += 1
    return rows, r


def hnf(A) -> IntMatrix:
    """Row-style Hermite normal form; zero rows are dropped."""
    A = _as_matrix(A)
    rows, r = _hnf_rows([list(x) for x in A.rows], A.ncols)
    return IntMatrix.from_rows(rows[:r], A.ncols)


def hnf_with_transform(A) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(H, U, K)`` with ``U`` unimodular and ``U @ A`` equal to ``H``
    stacked over zeros; ``K`` (the bottom rows of ``U``) is a Z-basis of the
    left kernel of ``A``."""
    A = _as_matrix(A)
    m, n = A.nrows, A.ncols
    aug = [list(A.rows[i]) + [int(i == k) for k in range(m)] for i in range(m)]
    rows, r = _hnf_rows(aug, n)
    H = IntMatrix.from_rows((row[:n] for row in rows[:r]), n)
    U = IntMatrix.from_rows((row[n:] for row in rows), m)
    K = IntMatrix.from_rows((row[n:] for row in rows[r:]), m)
    return H, U, K


def left_kernel(A) -> IntMatrix:
    """Z-basis (in HNF) of ``{x in Z^m : x A = 0}``."""
    return hnf(hnf_with_transform(A)[2])


def in_lattice(H, v: Sequence[int]) -> bool:
    """Membership of ``v`` in the Z-row-span of a matrix already in HNF."""
    H = _as_matrix(H)
    v = list(v)
    for row in H.rows:
        j = next(k for k, x in enumerate(row) if x)
        if any(v[:j]):
            return False
        q, rem = divmod(v[j], row[j])
        if rem:
            return False
        if q:
            for k in range(j, len(v)):
                v[k] -= q * row[k]
    return not any(v)


# ------------------------------------------------------------ rational helpers

def rational_echelon(rows: Iterable[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns nonzero rows and pivot columns."""
    mat = [[Fraction(x) for x in r] for r in rows]
    if not mat:
        return [], []
    n = len(mat[0])
    pivots: list[int] = []
    r = 0
    for j in range(n):
        p = next((i for i in range(r, len(mat)) if mat[i][j]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][j]
        piv = [x * inv for x in mat[r]]
        mat[r] = piv
        for i in range(len(mat)):
            if i != r and mat[i][j]:
                c = mat[i][j]
                mat[i] = [x - c * y for x, y in zip(mat[i], piv)]
        pivots.append(j)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(A) -> int:
    A = _as_matrix(A)
    return _hnf_rows([list(x) for x in A.rows], A.ncols)[1]


def clear_denominators(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in row]


# ------------------------------------------------------------- Smith and saturation

def snf(A) -> tuple[int, ...]:
    """Smith invariants d1 | d2 | ... | dr of ``A`` (empty for the zero matrix)."""
    H = hnf(A)
    if H.nrows == 0:
        return ()
    # H has full row rank; diagonalize with row and column operations.
    M = [list(r) for r in H.rows]
    m, n = len(M), H.ncols
    diag = []
    for k in range(m):
        while True:
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                        best = (i, j)
            i0, j0 = best
            M[k], M[i0] = M[i0], M[k]
            for row in M:
                row[k], row[j0] = row[j0], row[k]
            a = M[k][k]
            clean = True
            for i in range(k + 1, m):
                q = M[i][k] // a
                if q:
                    Mi, Mk = M[i], M[k]
                    for j in range(k, n):
                        Mi[j] -= q * Mk[j]
                if M[i][k]:
                    clean = False
            for j in range(k + 1, n):
                q = M[k][j] // a
                if q:
                    for i in range(k, m):
                        M[i][j] -= q * M[i][k]
                if M[k][j]:
                    clean = False
            if clean:
                # make a divide the rest of the block, else fold a row in
                bad = next(((i, j) for i in range(k + 1, m) for j in range(k + 1, n)
                            if M[i][j] % a), None)
                if bad is None:
                    break
                Mk, Mi = M[k], M[bad[0]]
                for j in range(k, n):
                    Mk[j] += Mi[j]
        diag.append(abs(M[k][k]))
    return tuple(diag)


def saturation_index(A) -> int:
    """[sat(L) : L] for L the row lattice of ``A``; 1 for the zero lattice."""
    return prod(snf(A))


def saturation_index_by_determinant(A) -> int:
    """Index via HNF of A, then HNF of its transpose, then the determinant."""
    H = hnf(A)
    if H.nrows == 0:
        return 1
    M = hnf(H.transpose())
    return prod(M.rows[i][i] for i in range(M.nrows))


def rational_kernel(A) -> IntMatrix:
    """Integer rows spanning the right kernel of ``A`` over Q (not saturated)."""
    A = _as_matrix(A)
    n = A.ncols
    ech, pivots = rational_echelon(A.rows)
    free = [j for j in range(n) if j not in set(pivots)]
    out = []
    for f in free:
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for row, pj in zip(ech, pivots):
            vec[pj] = -row[f]
        out.append(clear_denominators(vec))
    return IntMatrix.from_rows(out, n)


def saturate(A) -> IntMatrix:
    """HNF basis of (Q L) ∩ Z^n, where L is the row lattice of ``A``."""
    A = _as_matrix(A)
    n = A.ncols
    H = hnf(A)
    if H.nrows == 0:
        return H
    if H.nrows == n:
        return IntMatrix.identity(n)
    # sat(L) = {y in Z^n : K y = 0} for any rational basis K of ker(A)
    K = rational_kernel(H)
    return left_kernel(K.transpose())


def is_saturated(A) -> bool:
    return saturation_index(A) == 1


# ------------------------------------------------------------ prime fields

def _echelon_mod_p(rows: Sequence[Sequence[int]], p: int):
    """Echelon basis mod p, each row tagged with its combination of inputs."""
    m = len(rows)
    basis: list[tuple[int, list[int], list[int]]] = []  # (pivot col, row, combo)
    for i, row in enumerate(rows):
        vec = [x % p for x in row]
        combo = [0] * m
        combo[i] = 1
        vec, combo = _reduce_mod_p(vec, combo, basis, p)
        j = next((k for k, x in enumerate(vec) if x), None)
        if j is None:
            continue
        inv = pow(vec[j], -1, p)
        vec = [x * inv % p for x in vec]
        combo = [c * inv % p for c in combo]
        basis.append((j, vec, combo))
    return basis


def _reduce_mod_p(vec, combo, basis, p):
    for j, brow, bcombo in basis:
        c = vec[j]
        if c:
            vec = [(x - c * y) % p for x, y in zip(vec, brow)]
            combo = [(x - c * y) % p for x, y in zip(combo, bcombo)]
    return vec, combo


def rank_mod_p(A, p: int) -> int:
    A = _as_matrix(A)
    return len(_echelon_mod_p(A.rows, p))


def in_rowspace_mod_p(A, v: Sequence[int], p: int) -> tuple[bool, list[int] | None]:
    """Whether ``v`` mod p lies in the row span of ``A`` mod p.

    On success also returns ``c`` with ``c @ A ≡ v (mod p)``, entries in [0, p).
    """
    A = _as_matrix(A)
    if len(v) != A.ncols:
        raise ValueError(f"vector of length {len(v)} against matrix with {A.ncols} columns")
    basis = _echelon_mod_p(A.rows, p)
    m = A.nrows
    # express v = sum c_k basis_k by reducing, then track the negated combo
    vec, combo = _reduce_mod_p([x % p for x in v], [0] * m, basis, p)
    if any(vec):
        return False, None
    return True, [(-c) % p for c in combo]


def brute_force_membership(A, v: Sequence[int], p: int) -> bool:
    """Enumerate every coefficient vector; test oracle for small inputs only."""
    A = _as_matrix(A)
    if A.nrows > 4 or p > 7:
        raise ValueError("brute force is limited to at most 4 rows and p <= 7")
    if len(v) != A.ncols:
        raise ValueError("dimension mismatch")
    target = [x % p for x in v]
    for c in itertools.product(range(p), repeat=A.nrows):
        w = [sum(ci * row[j] for ci, row in zip(c, A.rows)) % p for j in range(A.ncols)]
        if w == target:
            return True
    return False
