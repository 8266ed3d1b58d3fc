"""Weight-2 modular symbols for Gamma0(N) via Manin symbols.

Everything here is exact over Q.  Integrality is recovered only at the very
end, by saturating the truncated q-expansion lattice in Z^B.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import factorize, genus_x0, sturm_bound
from .errors import InvalidSymbolError, PrecisionError
from .linalg import IntMatrix, clear_denominators, rational_echelon, saturate

Vec = dict[int, Fraction]  # sparse rational vector


# ------------------------------------------------------------------ P^1(Z/N)

def _units(N: int) -> list[int]:
    return [u for u in range(N) if gcd(u, N) == 1] if N > 1 else [0]


def p1_normalize(c: int, d: int, N: int) -> tuple[int, int]:
    """Canonical representative of (c : d): least c, then least d, over unit scalings."""
    if N == 1:
        return (0, 0)
    if gcd(gcd(c, d), N) != 1:
        raise InvalidSymbolError(f"({c}:{d}) is not in P^1(Z/{N})")
    return min(((u * c) % N, (u * d) % N) for u in _units(N))


class P1List:
    """Ordered list of canonical representatives with an O(1) index lookup."""

    def __init__(self, N: int):
        self.N = N
        if N == 1:
            self.elements = [(0, 0)]
            self._index = [0]
            return
        units = _units(N)
        index = [-1] * (N * N)
        elements = []
        for c in range(N):
            for d in range(N):
                if index[c * N + d] != -1 or gcd(gcd(c, d), N) != 1:
                    continue
                k = len(elements)
                elements.append((c, d))
                for u in units:
                    index[(u * c) % N * N + (u * d) % N] = k
        self.elements = elements
        self._index = index

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, c: int, d: int) -> int:
        """Index of (c : d), or -1 when gcd(c, d, N) > 1."""
        N = self.N
        if N == 1:
            return 0
        return self._index[(c % N) * N + d % N]


def p1_list(N: int) -> list[tuple[int, int]]:
    return list(_p1(N).elements)


@lru_cache(maxsize=None)
def _p1(N: int) -> P1List:
    return P1List(N)


# ------------------------------------------------------------------ Heilbronn

def _round_half_away(a: int, b: int) -> int:
    q = (2 * abs(a) + abs(b)) // (2 * abs(b))
    return -q if (a < 0) != (b < 0) else q


def heilbronn_matrices(p: int) -> list[tuple[int, int, int, int]]:
    """Cremona's Heilbronn matrices of determinant p, as (a, b, c, d)."""
    if p == 2:
        return [(1, 0, 0, 2), (2, 0, 0, 1), (2, 1, 0, 1), (1, 0, 1, 2)]
    out = [(1, 0, 0, p)]
    for r in range(-(p // 2), p // 2 + 1):
        x1, x2, y1, y2 = p, -r, 0, 1
        a, b = -p, r
        out.append((x1, x2, y1, y2))
        while b:
            q = _round_half_away(a, b)
            a, b = -b, a - b * q
            x1, x2 = x2, q * x2 - x1
            y1, y2 = y2, q * y2 - y1
            out.append((x1, x2, y1, y2))
    return out


def heilbronn_merel(p: int) -> list[tuple[int, int, int, int]]:
    """Merel's set: det p, a > b >= 0, d > c >= 0.  Used as an independent check."""
    out = []
    for a in range(1, p + 1):
        for d in range(1, p + 1):
            for b in range(a):
                for c in range(d):
                    if a * d - b * c == p:
                        out.append((a, b, c, d))
    return out


# ------------------------------------------------------------------ cusps

def _lift_to_sl2z(c: int, d: int, N: int) -> tuple[int, int, int, int]:
    if N == 1:
        return (1, 0, 0, 1)
    if c == 0:
        c = N
    d = d if d else N
    while gcd(c, d) != 1:
        d += N
    g, x, y = _xgcd(d, c)  # x d + y c = 1
    a, b = x, -y
    assert a * d - b * c == 1
    return (a, b, c, d)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _cusp(a: int, c: int) -> tuple[int, int]:
    """Reduced (a : c) with c >= 0; infinity is (1 : 0)."""
    g = gcd(a, c)
    a, c = a // g, c // g
    if c < 0 or (c == 0 and a < 0):
        a, c = -a, -c
    return (a, c)


def cusps_equivalent(x: tuple[int, int], y: tuple[int, int], N: int) -> bool:
    (a1, c1), (a2, c2) = x, y
    s1 = pow(a1, -1, c1) if c1 > 1 else (0 if c1 == 1 else 1)
    s2 = pow(a2, -1, c2) if c2 > 1 else (0 if c2 == 1 else 1)
    m = gcd(c1 * c2, N)
    return (s1 * c2 - s2 * c1) % m == 0


# ------------------------------------------------------------------ subspaces

@dataclass
class Subspace:
    """Rational subspace in RREF, coordinates read off at the pivots."""

    rows: list[list[Fraction]]
    pivots: list[int]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def spanned_by(cls, rows) -> Subspace:
        ech, piv = rational_echelon(rows)
        return cls(ech, piv)


def _add(acc: Vec, v: Vec, c) -> None:
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


def _matmul(A, B):
    if not A:
        return []
    cols = list(zip(*B))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in A]


def _identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


# ------------------------------------------------------------------ the space

@dataclass
class ModSymSpace:
    level: int
    generators: list[tuple[int, int]]
    basis_gens: list[int]  # generator indices forming a basis of the quotient
    gen_images: list[Vec]  # each generator in quotient coordinates
    cusp_reps: list[tuple[int, int]] = field(default_factory=list)
    boundary: list[list[int]] = field(default_factory=list)  # dim x #cusps
    cuspidal: Subspace | None = None
    plus: Subspace | None = None
    star_images: list[Vec] = field(default_factory=list)
    hecke_cache: dict = field(default_factory=dict)
    _prime_images: dict = field(default_factory=dict, repr=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis_gens)

    def subspace(self, which: str) -> Subspace:
        if which == "cuspidal":
            return self.cuspidal
        if which == "plus":
            return self.plus
        if which == "full":
            return Subspace(_identity(self.dim), list(range(self.dim)))
        raise ValueError(f"unknown subspace {which!r}")

    def restrict(self, images: list[Vec], which: str) -> list[list[Fraction]]:
        """Matrix (row convention) of an operator given on basis generators."""
        W = self.subspace(which)
        out = []
        for w in W.rows:
            acc: Vec = {}
            for k, x in enumerate(w):
                if x:
                    _add(acc, images[k], x)
            out.append([acc.get(j, Fraction(0)) for j in W.pivots])
        return out

    def star_matrix(self, which: str = "cuspidal"):
        return self.restrict(self.star_images, which)


def _quotient(P1: P1List):
    """Manin-relation quotient: basis generator indices and generator images."""
    n = len(P1)
    els = P1.elements
    # two-term relations x + xS = 0
    # (representative, sign); (-1, 0) unassigned, (-2, 0) killed by 2x = 0
    rep: list[tuple[int, int]] = [(-1, 0)] * n
    for i, (c, d) in enumerate(els):
        if rep[i][0] != -1 or rep[i] == (-2, 0):
            continue
        j = P1.index(d, -c)
        if j == i:
            rep[i] = (-2, 0)
        else:
            rep[i] = (i, 1)
            rep[j] = (i, -1)
    reps = sorted({r for r, _ in rep if r >= 0})

    def as_vec(i) -> Vec:
        r, s = rep[i]
        return {} if r < 0 else {r: Fraction(s)}

    # three-term relations x + xT + xT^2 = 0, solved with full reduction
    pivot_rows: dict[int, Vec] = {}
    for i, (c, d) in enumerate(els):
        rel: Vec = {}
        for k in (i, P1.index(d, -c - d), P1.index(-c - d, c)):
            _add(rel, as_vec(k), 1)
        for col in [k for k in rel if k in pivot_rows]:
            if col in rel:
                _add(rel, pivot_rows[col], -rel[col])
        if not rel:
            continue
        col = max(rel)
        inv = 1 / rel[col]
        rel = {k: x * inv for k, x in rel.items()}
        for row in pivot_rows.values():
            if col in row:
                _add(row, rel, -row[col])
        pivot_rows[col] = rel
    free = [r for r in reps if r not in pivot_rows]
    pos = {r: k for k, r in enumerate(free)}
    free_images: dict[int, Vec] = {r: {pos[r]: Fraction(1)} for r in free}
    for col, row in pivot_rows.items():
        free_images[col] = {pos[k]: -x for k, x in row.items() if k != col}
    gen_images = []
    for i in range(n):
        r, s = rep[i]
        if r < 0:
            gen_images.append({})
        else:
            gen_images.append({k: s * x for k, x in free_images[r].items()})
    return free, gen_images


@lru_cache(maxsize=None)
def build_space(N: int) -> ModSymSpace:
    """Full Manin-symbol space at level N with cuspidal and plus subspaces filled in."""
    if N < 1:
        raise ValueError("level must be >= 1")
    P1 = _p1(N)
    basis_gens, gen_images = _quotient(P1)
    space = ModSymSpace(N, P1.elements, basis_gens, gen_images)
    boundary_and_cuspidal(space)
    star = []
    for g in basis_gens:
        c, d = P1.elements[g]
        star.append({k: -x for k, x in gen_images[P1.index(-c, d)].items()})
    space.star_images = star
    C = space.cuspidal
    if C.dim:
        S = space.restrict(star, "cuspidal")  # in cuspidal coordinates
        fixed = rational_echelon(
            [[S[j][i] - int(i == j) for j in range(C.dim)] for i in range(C.dim)]
        )
        # kernel of (S - I) acting on row coordinates
        kern = _right_kernel_from_echelon(*fixed, C.dim)
        plus_rows = [
            [sum(y[i] * C.rows[i][k] for i in range(C.dim)) for k in range(space.dim)]
            for y in kern
        ]
        space.plus = Subspace.spanned_by(plus_rows)
    else:
        space.plus = Subspace([], [])
    return space


def _right_kernel_from_echelon(ech, pivots, n):
    free = [j for j in range(n) if j not in set(pivots)]
    out = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pj in zip(ech, pivots):
            v[pj] = -row[f]
        out.append(v)
    return out


def boundary_and_cuspidal(space: ModSymSpace):
    """Fill in cusp classes, the boundary matrix, and the cuspidal subspace."""
    N = space.level
    reps: list[tuple[int, int]] = []

    def cls(x):
        for k, r in enumerate(reps):
            if cusps_equivalent(x, r, N):
                return k
        reps.append(x)
        return len(reps) - 1

    rows = []
    for g in space.basis_gens:
        c, d = space.generators[g]
        a, b, c, d = _lift_to_sl2z(c, d, N)
        i, j = cls(_cusp(a, c)), cls(_cusp(b, d))
        rows.append((i, j))
    boundary = [[0] * len(reps) for _ in rows]
    for row, (i, j) in zip(boundary, rows):
        row[i] += 1
        row[j] -= 1
    space.cusp_reps = reps
    space.boundary = boundary
    # cuspidal = {x : x . boundary = 0}
    cols = [[boundary[r][k] for r in range(space.dim)] for k in range(len(reps))]
    ech, piv = rational_echelon(cols) if cols else ([], [])
    space.cuspidal = Subspace.spanned_by(_right_kernel_from_echelon(ech, piv, space.dim))
    return boundary, space.cuspidal


# ------------------------------------------------------------------ Hecke

def _prime_images(space: ModSymSpace, p: int) -> list[Vec]:
    """T_p on each basis generator, in quotient coordinates."""
    with space._lock:
        if p in space._prime_images:
            return space._prime_images[p]
        P1 = _p1(space.level)
        images = []
        H = heilbronn_matrices(p)
        for g in space.basis_gens:
            u, v = P1.elements[g]
            acc: Vec = {}
            for a, b, c, d in H:
                k = P1.index(u * a + v * c, u * b + v * d)
                if k >= 0:
                    _add(acc, space.gen_images[k], 1)
            images.append(acc)
        space._prime_images[p] = images
        return images


def hecke_matrix(space: ModSymSpace, n: int, which: str = "cuspidal"):
    """Matrix of T_n on the chosen subspace ("cuspidal", "plus" or "full")."""
    if n < 1:
        raise ValueError("n must be >= 1")
    key = (which, n)
    with space._lock:
        if key in space.hecke_cache:
            return space.hecke_cache[key]
        W = space.subspace(which)
        if n == 1:
            T = _identity(W.dim)
        else:
            fac = factorize(n)
            if len(fac) > 1:
                p, e = fac[0]
                T = _matmul(hecke_matrix(space, p**e, which), hecke_matrix(space, n // p**e, which))
            else:
                p, e = fac[0]
                if e == 1:
                    T = space.restrict(_prime_images(space, p), which)
                elif space.level % p == 0:
                    T = _matmul(hecke_matrix(space, p ** (e - 1), which), hecke_matrix(space, p, which))
                else:
                    A = _matmul(hecke_matrix(space, p ** (e - 1), which), hecke_matrix(space, p, which))
                    C = hecke_matrix(space, p ** (e - 2), which)
                    T = [[x - p * y for x, y in zip(ra, rc)] for ra, rc in zip(A, C)]
        space.hecke_cache[key] = T
        return T


# ------------------------------------------------------------------ q-expansions

@lru_cache(maxsize=None)
def integral_basis(N: int, B: int) -> IntMatrix:
    """HNF Z-basis of the first-B-coefficient vectors of integral forms in S2(Gamma0(N))."""
    if B < sturm_bound(N):
        raise PrecisionError(f"precision {B} is below the Sturm bound {sturm_bound(N)} at level {N}")
    g = genus_x0(N)
    if g == 0 or B == 0:
        return IntMatrix((), B)
    space = build_space(N)
    Ts = [hecke_matrix(space, n, "plus") for n in range(1, B + 1)]
    dim = space.plus.dim
    picked = []
    ech: list = []
    for i in range(dim):
        for j in range(dim):
            vec = [T[i][j] for T in Ts]
            if not any(vec):
                continue
            cand, _ = rational_echelon(ech + [vec])
            if len(cand) > len(ech):
                ech = cand
                picked.append(vec)
            if len(ech) == g:
                break
        if len(ech) == g:
            break
    rows = [clear_denominators(v) for v in picked]
    return saturate(IntMatrix.from_rows(rows, B))


def cuspidal_dimension(N: int) -> int:
    return build_space(N).cuspidal.dim


__all__ = [
    "P1List", "p1_list", "p1_normalize", "heilbronn_matrices", "heilbronn_merel",
    "ModSymSpace", "build_space", "boundary_and_cuspidal", "hecke_matrix",
    "integral_basis", "cusps_equivalent",
]
