import itertools
import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from oldcong.linalg import (
    IntMatrix, brute_force_membership, hnf, hnf_with_transform, in_lattice, in_rowspace_mod_p,
    rank, rank_mod_p, saturate, saturation_index, saturation_index_by_determinant, snf,
)


def det(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    n = len(rows)
    d = Fraction(1)
    for j in range(n):
        p = next((i for i in range(j, n) if rows[i][j]), None)
        if p is None:
            return 0
        if p != j:
            rows[j], rows[p] = rows[p], rows[j]
            d = -d
        d *= rows[j][j]
        for i in range(j + 1, n):
            c = rows[i][j] / rows[j][j]
            rows[i] = [x - c * y for x, y in zip(rows[i], rows[j])]
    return int(d)


def determinantal_divisors(rows, ncols):
    """gcd of all k x k minors, k = 1..rank, by enumeration."""
    out = []
    for k in range(1, min(len(rows), ncols) + 1):
        g = 0
        for ri in itertools.combinations(range(len(rows)), k):
            for ci in itertools.combinations(range(ncols), k):
                g = gcd(g, det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        out.append(g)
    return out


def is_hnf(H):
    last = -1
    for i, row in enumerate(H.rows):
        j = next(k for k, x in enumerate(row) if x)
        assert j > last and row[j] > 0
        for above in H.rows[:i]:
            assert 0 <= above[j] < row[j]
        last = j
    return True


def random_matrix(rng, max_rows=3, max_cols=4, lo=-5, hi=5):
    m = rng.randint(0, max_rows)
    n = rng.randint(1, max_cols)
    return IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)], n)


def test_hnf_examples():
    assert hnf([[2, 4], [6, 8]]).tolist() == [[2, 0], [0, 4]]
    assert hnf(IntMatrix.identity(3)) == IntMatrix.identity(3)
    Z = hnf(IntMatrix.zero(2, 2))
    assert Z.nrows == 0 and Z.ncols == 2


def test_snf_examples():
    assert snf([[2, 4], [6, 8]]) == (2, 4)
    assert snf([[3, 0], [0, 5]]) == (1, 15)
    assert snf(IntMatrix.zero(3, 2)) == ()


def test_saturate_examples():
    assert saturate([[2, 0], [0, 3]]).tolist() == [[1, 0], [0, 1]]
    assert saturate([[2, 4]]).tolist() == [[1, 2]]
    assert saturate([[2, 4], [4, 8]]).tolist() == [[1, 2]]


def test_saturation_index_examples():
    assert saturation_index([[2, 0], [0, 3]]) == 6
    assert saturation_index([[1, 0]]) == 1
    assert saturation_index([[2, 4], [6, 8]]) == 8
    assert saturation_index(IntMatrix((), 4)) == 1


def test_rank_mod_p_examples():
    assert rank_mod_p(IntMatrix.identity(2), 5) == 2
    assert rank_mod_p([[2, 4], [6, 8]], 2) == 0
    assert rank_mod_p([[2, 4], [6, 8]], 3) == 2


def test_membership_examples():
    v = [1, -2, -1, 2]
    for p in (2, 3, 5, 7):
        assert in_rowspace_mod_p(IntMatrix((), 4), v, p) == (False, None)
    A = IntMatrix.from_rows([[1, 0], [0, 2]])
    assert in_rowspace_mod_p(A, [1, 1], 2) == (False, None)
    assert in_rowspace_mod_p(A, [1, 1], 3) == (True, [1, 2])
    assert brute_force_membership(A, [1, 1], 3)
    assert not brute_force_membership(A, [1, 1], 2)
    B = IntMatrix.from_rows([[3, 1, 4], [1, 5, 9]])
    ok, w = in_rowspace_mod_p(B, [1, 5, 9], 7)
    assert ok and w == [0, 1]


def test_membership_dimension_mismatch():
    with pytest.raises(ValueError):
        in_rowspace_mod_p([[1, 2]], [1, 2, 3], 5)
    with pytest.raises(ValueError):
        brute_force_membership(IntMatrix.identity(5), [0] * 5, 2)


def check_hnf(A):
    H, U, K = hnf_with_transform(A)
    assert hnf(A) == H
    assert is_hnf(H)
    # certificate: U integral, unimodular, U A = [H; 0]
    prodUA = [[sum(u * A.rows[k][j] for k, u in enumerate(urow)) for j in range(A.ncols)]
              for urow in U.rows]
    assert prodUA == [list(r) for r in H.rows] + [[0] * A.ncols] * (A.nrows - H.nrows)
    if A.nrows:
        assert abs(det(U.rows)) == 1
    for row in A.rows:
        assert in_lattice(H, row)


def check_snf(A):
    d = snf(A)
    dd = determinantal_divisors(A.rows, A.ncols)
    assert len(d) == len(dd) == rank(A)
    running = 1
    for k, di in enumerate(d):
        running *= di
        assert running == dd[k]
    for a, b in zip(d, d[1:]):
        assert b % a == 0


def check_saturate(A):
    S = saturate(A)
    assert is_hnf(S)
    assert S.nrows == rank(A)
    for row in A.rows:
        assert in_lattice(S, row)
    if S.nrows:
        assert determinantal_divisors(S.rows, S.ncols)[-1] == 1
    assert saturation_index(A) == saturation_index_by_determinant(A)


def test_oracle_suite_200_random():
    rng = random.Random(20240611)
    for _ in range(200):
        A = random_matrix(rng)
        check_hnf(A)
        check_snf(A)
        check_saturate(A)
        for p in (2, 3, 5):
            v = [rng.randint(-5, 5) for _ in range(A.ncols)]
            ok, w = in_rowspace_mod_p(A, v, p)
            assert ok == brute_force_membership(A, v, p)
            if ok:
                assert [sum(c * r[j] for c, r in zip(w, A.rows)) % p for j in range(A.ncols)] \
                    == [x % p for x in v]


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), max_size=5)
    .map(lambda rows: IntMatrix.from_rows(rows, n))
)


@given(matrices)
def test_hnf_idempotent(A):
    assert hnf(hnf(A)) == hnf(A)


@given(matrices)
def test_saturate_idempotent(A):
    S = saturate(A)
    assert saturate(S) == S
    assert saturation_index(S) == 1


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_snf_product_is_abs_det(rows):
    d = det(rows)
    if d:
        prod = 1
        for x in snf(rows):
            prod *= x
        assert prod == abs(d)


@given(matrices)
def test_rank_mod_p_generic(A):
    idx = saturation_index(A)
    for p in (2, 3, 5, 7, 11, 13):
        if idx % p:
            assert rank_mod_p(A, p) == rank(A)
        else:
            assert rank_mod_p(A, p) < rank(A)


@settings(max_examples=200)
@given(
    st.integers(1, 4).flatmap(lambda n: st.tuples(
        st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), max_size=4),
        st.lists(st.integers(-5, 5), min_size=n, max_size=n),
        st.sampled_from([2, 3, 5, 7]),
        st.just(n),
    ))
)
def test_membership_matches_brute_force(args):
    rows, v, p, n = args
    A = IntMatrix.from_rows(rows, n)
    assert in_rowspace_mod_p(A, v, p)[0] == brute_force_membership(A, v, p)


def test_large_entries_stay_exact():
    big = 10**40
    A = IntMatrix.from_rows([[big, 3 * big + 1], [2, 7]])
    H = hnf(A)
    assert H.rows[0][0] * H.rows[1][1] == abs(big * 7 - 2 * (3 * big + 1))
