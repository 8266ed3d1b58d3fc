"""Integer utilities: factorization, divisors, the index of Gamma0(N), Sturm bound, genus."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, prod


def factorize(n: int) -> list[tuple[int, int]]:
    """Factor ``n`` by trial division, primes ascending."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def psi_index(N: int) -> int:
    """Index of Gamma0(N) in SL2(Z): N * prod_{p | N} (1 + 1/p)."""
    if N < 1:
        raise ValueError(f"level must be >= 1, got {N}")
    return prod(p ** (e - 1) * (p + 1) for p, e in factorize(N))


def sturm_bound(N: int) -> int:
    """floor(psi/6 - (psi - 1)/N), evaluated exactly with one final floor.

    The expression is negative for N in {2, 3, 4}; those levels get 0.
    """
    psi = psi_index(N)
    return max(0, (Fraction(psi, 6) - Fraction(psi - 1, N)).__floor__())


def _kronecker_minus(p: int, D: int) -> int:
    # Legendre symbol (D/p) for D in {-1, -3}; 0 when p ramifies.
    if D == -1:
        if p == 2:
            return 0
        return 1 if p % 4 == 1 else -1
    if p == 3:
        return 0
    if p == 2:
        return -1
    return 1 if p % 3 == 1 else -1


def num_elliptic_points(N: int, order: int) -> int:
    """Number of elliptic points of order 2 or 3 for Gamma0(N)."""
    D, sq = {2: (-1, 4), 3: (-3, 9)}[order]
    if N % sq == 0:
        return 0
    return prod(1 + _kronecker_minus(p, D) for p in prime_divisors(N))


def num_cusps(N: int) -> int:
    return sum(euler_phi(gcd(d, N // d)) for d in divisors(N))


def genus_x0(N: int) -> int:
    g = (
        1
        + Fraction(psi_index(N), 12)
        - Fraction(num_elliptic_points(N, 2), 4)
        - Fraction(num_elliptic_points(N, 3), 3)
        - Fraction(num_cusps(N), 2)
    )
    assert g.denominator == 1 and g >= 0, (N, g)
    return int(g)
