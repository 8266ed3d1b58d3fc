"""Newform coefficients from the attached elliptic curve, by point counting."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import factorize, is_prime
from .errors import SingularCurveError, UsageError


@dataclass(frozen=True)
class CurveRecord:
    level: int
    ainvs: tuple[int, int, int, int, int]
    label: str | None = None
    modular_degree: int | None = None
    tamagawa: dict[int, int] | None = field(default=None, hash=False)
    torsion_order: int | None = None

    def __post_init__(self):
        if len(self.ainvs) != 5:
            raise UsageError("ainvs must have five entries")
        if self.level < 1:
            raise UsageError("level must be positive")
        if discriminant(self.ainvs) == 0:
            raise SingularCurveError(f"curve {list(self.ainvs)} has zero discriminant")
        if self.tamagawa is not None:
            bad = {p for p, _ in factorize(self.level)}
            if set(self.tamagawa) != bad:
                raise UsageError(
                    f"tamagawa primes {sorted(self.tamagawa)} differ from the primes "
                    f"dividing the level {sorted(bad)}"
                )


def b_invariants(ainvs):
    a1, a2, a3, a4, a6 = ainvs
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def discriminant(ainvs) -> int:
    b2, b4, b6, b8 = b_invariants(ainvs)
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def _affine_points_exhaustive(ainvs, p):
    a1, a2, a3, a4, a6 = ainvs
    return [
        (x, y)
        for x in range(p)
        for y in range(p)
        if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p == 0
    ]


def count_points(ainvs, p: int) -> int:
    """#E(F_p) of the reduced (possibly singular) cubic, point at infinity included."""
    if p in (2, 3):
        return 1 + len(_affine_points_exhaustive(ainvs, p))
    a1, a2, a3, a4, a6 = ainvs
    # y^2 + h(x) y = f(x)  <=>  (2y + h)^2 = h^2 + 4 f
    chi = [-1] * p
    chi[0] = 0
    for y in range(1, (p + 1) // 2):
        chi[y * y % p] = 1
    total = 1
    for x in range(p):
        h = a1 * x + a3
        f = ((x + a2) * x + a4) * x + a6
        total += 1 + chi[(h * h + 4 * f) % p]
    return total


def _singular_points(ainvs, p):
    a1, a2, a3, a4, a6 = ainvs
    out = []
    for x, y in _affine_points_exhaustive(ainvs, p) if p < 50 else _affine_candidates(ainvs, p):
        dx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % p
        dy = (2 * y + a1 * x + a3) % p
        if dx == 0 and dy == 0:
            out.append((x, y))
    return out


def _affine_candidates(ainvs, p):
    # a singular point has 2y + a1 x + a3 = 0, so y is determined by x for odd p
    a1, a2, a3, a4, a6 = ainvs
    inv2 = pow(2, -1, p)
    for x in range(p):
        y = (-(a1 * x + a3) * inv2) % p
        if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p == 0:
            yield x, y


def ap_good(curve: CurveRecord, p: int) -> int:
    if curve.level % p == 0:
        raise UsageError(f"{p} divides the level {curve.level}; use ap_bad")
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    ap = p + 1 - count_points(curve.ainvs, p)
    assert ap * ap <= 4 * p, f"Hasse bound violated: a_{p} = {ap}"
    return ap


def ap_bad(curve: CurveRecord, p: int) -> int:
    """p - #E_ns(F_p): +1 split, -1 nonsplit multiplicative, 0 additive."""
    if curve.level % p:
        raise UsageError(f"{p} does not divide the level {curve.level}")
    sing = _singular_points(curve.ainvs, p)
    if len(sing) != 1:
        raise UsageError(
            f"model has {len(sing)} singular points mod {p}; expected bad reduction "
            "with a minimal model"
        )
    ns = count_points(curve.ainvs, p) - 1
    ap = p - ns
    assert ap in (-1, 0, 1), ap
    return ap


def ap(curve: CurveRecord, p: int) -> int:
    return ap_bad(curve, p) if curve.level % p == 0 else ap_good(curve, p)


def coefficient_vector(curve: CurveRecord, B: int) -> list[int]:
    """(a_1, ..., a_B) of the newform attached to ``curve``."""
    if B < 1:
        raise UsageError("precision must be >= 1")
    a = [0] * (B + 1)
    a[1] = 1
    for n in range(2, B + 1):
        (p, e), *rest = factorize(n)
        if rest:
            pe = p**e
            a[n] = a[pe] * a[n // pe]
        elif e == 1:
            a[n] = ap(curve, p)
        elif curve.level % p == 0:
            a[n] = a[p] * a[n // p]
        else:
            a[n] = a[p] * a[n // p] - p * a[n // (p * p)]
    return a[1:]


def hasse_ok(curve: CurveRecord, v) -> bool:
    return all(
        v[p - 1] ** 2 <= 4 * p
        for p in range(2, len(v) + 1)
        if is_prime(p) and curve.level % p
    )


__all__ = [
    "CurveRecord", "discriminant", "count_points", "ap_good", "ap_bad",
    "coefficient_vector",
]
