"""Congruence primes between a newform with integer coefficients and the old space.

Two independent routes are available:

``theorem3``
    Candidates are the primes dividing the (externally supplied) modular
    degree together with the primes whose square divides the level; each is
    then tested by mod-p row-space membership of v(f) against the old-space
    matrix.
``smith``
    Stack v(f) on top of the saturated old-space lattice and take the primes
    dividing the saturation index.  With the old lattice saturated and v(f)
    primitive these are exactly the congruence primes, so this route needs
    no external data.  Each prime is still confirmed by membership, which
    also yields a witness.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .arith import genus_x0, prime_divisors, sturm_bound
from .curves import CurveRecord, coefficient_vector
from .errors import (
    MathematicalRejection,
    MissingDataError,
    NotANewformError,
    RouteDisagreement,
    UsageError,
)
from .linalg import IntMatrix, in_rowspace_mod_p, rank, saturate, saturation_index
from .oldspace import OldspaceMatrix, oldspace_matrix

METHODS = ("theorem3", "smith", "both")

THEOREM3_NOTE = (
    "theorem3 candidates bound congruences with the full orthogonal complement "
    "of f, which contains the old space since f is new"
)


@dataclass
class Candidate:
    p: int
    provenance: list[str]


@dataclass
class Conjecture1Verdict:
    ell: int
    verdict: str  # "consistent" | "counterexample"
    reason: str


@dataclass
class CongruenceReport:
    level: int
    sturm_bound: int
    method: str
    candidates: list[Candidate]
    congruence_primes: list[int]
    witnesses: dict[int, list[int]]
    congruence_exponent: int | None = None
    conjecture1: list[Conjecture1Verdict] | None = None
    oldspace_saturated: bool = True
    membership_matrix: IntMatrix | None = None
    notes: list[str] = field(default_factory=list)


def thread_count() -> int:
    """Worker cap from OLDCONG_THREADS (default 1)."""
    raw = os.environ.get("OLDCONG_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"OLDCONG_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"OLDCONG_THREADS must be a positive integer, got {raw!r}")
    return n


def _matrix(M) -> IntMatrix:
    return M.matrix if isinstance(M, OldspaceMatrix) else M


def is_congruence_prime(vf, M, p: int) -> tuple[bool, list[int] | None]:
    """Is v(f) in the row space of M modulo p?"""
    A = _matrix(M)
    if len(vf) != A.ncols:
        raise UsageError(f"v(f) has precision {len(vf)} but the old-space matrix has {A.ncols}")
    return in_rowspace_mod_p(A, vf, p)


def candidate_primes_theorem3(modular_degree: int, N: int) -> list[Candidate]:
    if modular_degree < 1:
        raise UsageError("modular degree must be positive")
    found: dict[int, list[str]] = {}
    for p in prime_divisors(modular_degree):
        found.setdefault(p, []).append("divides-modular-degree")
    for p in prime_divisors(N):
        if N % (p * p) == 0:
            found.setdefault(p, []).append("p2-divides-N")
    return [Candidate(p, found[p]) for p in sorted(found)]


def candidate_primes_smith(vf, M) -> tuple[list[int], int]:
    """Primes dividing [sat(L) : L] for L = Z v(f) + sat(M), and the index."""
    A = _matrix(M)
    if len(vf) != A.ncols:
        raise UsageError("precision mismatch between v(f) and the old-space matrix")
    S = saturate(A)
    stacked = S.stack(IntMatrix.from_rows([vf], A.ncols))
    if rank(stacked) != S.nrows + 1:
        raise NotANewformError("v(f) lies in the rational span of the old space")
    idx = saturation_index(stacked)
    return prime_divisors(idx), idx


def congruence_primes(curve: CurveRecord, method: str = "smith") -> CongruenceReport:
    if method not in METHODS:
        raise UsageError(f"unknown method {method!r}; choose from {METHODS}")
    N = curve.level
    B = sturm_bound(N)
    if B == 0 or genus_x0(N) == 0:
        raise MathematicalRejection(
            f"S2(Gamma0({N})) is zero (Sturm bound {B}, genus {genus_x0(N)}); no newform exists"
        )
    if method in ("theorem3", "both") and curve.modular_degree is None:
        raise MissingDataError("method theorem3 needs the modular degree of the curve")

    old = oldspace_matrix(N, B)
    vf = coefficient_vector(curve, B)
    notes = []
    membership = old.matrix
    saturated = old.is_saturated
    if not saturated:
        membership = saturate(old.matrix)
        notes.append(
            "old-space spanning rows are not saturated in Z^B; membership is tested "
            "against their saturation and witnesses refer to its rows"
        )

    found: dict[int, list[str]] = {}
    smith_primes = None
    exponent = None
    if method in ("smith", "both"):
        smith_primes, exponent = candidate_primes_smith(vf, old.matrix)
        for p in smith_primes:
            found.setdefault(p, []).append("divides-saturation-index")
    if method in ("theorem3", "both"):
        if rank(old.matrix.stack(IntMatrix.from_rows([vf], B))) != rank(old.matrix) + 1:
            raise NotANewformError("v(f) lies in the rational span of the old space")
        for c in candidate_primes_theorem3(curve.modular_degree, N):
            found.setdefault(c.p, [])[:0] = c.provenance
        notes.append(THEOREM3_NOTE)
    candidates = [Candidate(p, found[p]) for p in sorted(found)]

    primes, witnesses = [], {}
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        results = list(pool.map(lambda c: is_congruence_prime(vf, membership, c.p), candidates))
    for c, (ok, w) in zip(candidates, results):
        if ok:
            primes.append(c.p)
            witnesses[c.p] = w

    if method == "both":
        t3 = [p for p in primes if any(s != "divides-saturation-index" for s in found[p])]
        if t3 != smith_primes or primes != smith_primes:
            raise RouteDisagreement(
                f"theorem3 route gives {t3}, smith route gives {smith_primes} at level {N}"
            )
    elif method == "smith" and primes != smith_primes:
        raise RouteDisagreement(
            f"saturation index primes {smith_primes} fail membership: only {primes} confirmed"
        )

    return CongruenceReport(
        level=N,
        sturm_bound=B,
        method=method,
        candidates=candidates,
        congruence_primes=primes,
        witnesses=witnesses,
        congruence_exponent=exponent,
        oldspace_saturated=saturated,
        membership_matrix=membership,
        notes=notes,
    )


def check_conjecture1(report: CongruenceReport, curve: CurveRecord) -> list[Conjecture1Verdict]:
    """Every odd prime dividing the Tamagawa product should divide the torsion
    order or be a congruence prime."""
    if curve.tamagawa is None or curve.torsion_order is None:
        raise MissingDataError("conjecture check needs tamagawa numbers and torsion order")
    tam = 1
    for c in curve.tamagawa.values():
        tam *= c
    out = []
    for ell in prime_divisors(tam):
        if ell == 2:
            continue
        if curve.torsion_order % ell == 0:
            out.append(Conjecture1Verdict(ell, "consistent", "divides-torsion"))
        elif ell in report.congruence_primes:
            out.append(Conjecture1Verdict(ell, "consistent", "congruence-prime"))
        else:
            out.append(Conjecture1Verdict(ell, "counterexample", "neither"))
    report.conjecture1 = out
    return out
