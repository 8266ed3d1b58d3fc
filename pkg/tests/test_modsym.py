from math import gcd

import pytest

from oldcong.arith import genus_x0, num_cusps, sturm_bound
from oldcong.errors import InvalidSymbolError, PrecisionError
from oldcong.linalg import hnf, saturate
from oldcong.modsym import (
    _matmul, build_space, heilbronn_matrices, heilbronn_merel, hecke_matrix, integral_basis,
    p1_list, p1_normalize,
)


def trace(M):
    return sum(M[i][i] for i in range(len(M)))


def test_p1_small():
    assert p1_list(1) == [(0, 0)]
    assert set(p1_list(2)) == {(0, 1), (1, 0), (1, 1)}
    assert len(p1_list(11)) == 12


def test_p1_normalize_examples():
    assert p1_normalize(0, 5, 11) == (0, 1)
    for N in (2, 7, 12, 30):
        assert p1_normalize(1, 0, N) == (1, 0)


def test_p1_normalize_unit_orbits():
    N = 11
    target = p1_normalize(7, 3, N)
    for u in range(1, N):
        assert p1_normalize(7 * u, 3 * u, N) == target
    assert p1_normalize(7, 4, N) != target


def test_p1_normalize_brute_force_classes():
    for N in (6, 12, 25):
        units = [u for u in range(N) if gcd(u, N) == 1]
        for c in range(N):
            for d in range(N):
                if gcd(gcd(c, d), N) != 1:
                    continue
                orbit = {((u * c) % N, (u * d) % N) for u in units}
                assert p1_normalize(c, d, N) == min(orbit)


def test_p1_normalize_rejects_non_points():
    with pytest.raises(InvalidSymbolError):
        p1_normalize(2, 4, 6)


@pytest.mark.parametrize("N, dim", [(11, 3), (22, 7), (2, 1)])
def test_space_dimension_examples(N, dim):
    assert build_space(N).dim == dim


@pytest.mark.parametrize("N, cusps, cusp_dim", [(11, 2, 2), (22, 4, 4), (4, 3, 0)])
def test_boundary_examples(N, cusps, cusp_dim):
    S = build_space(N)
    assert len(S.cusp_reps) == cusps
    assert S.cuspidal.dim == cusp_dim


def test_dimension_formulas_up_to_100():
    for N in range(1, 101):
        S = build_space(N)
        g = genus_x0(N)
        if N > 2:
            assert S.dim == 2 * g + num_cusps(N) - 1, N
        if N > 1:
            assert len(S.cusp_reps) == num_cusps(N), N
        assert S.cuspidal.dim == 2 * g, N
        assert S.plus.dim == g, N


def test_heilbronn_p2():
    H = heilbronn_matrices(2)
    assert (1, 0, 0, 2) in H and (2, 0, 0, 1) in H


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_heilbronn_determinants(p):
    assert all(a * d - b * c == p for a, b, c, d in heilbronn_matrices(p))
    assert all(a * d - b * c == p for a, b, c, d in heilbronn_merel(p))


def test_t2_trace_level_11():
    S = build_space(11)
    assert trace(hecke_matrix(S, 2, "plus")) == -2
    assert trace(hecke_matrix(S, 2, "cuspidal")) == -4


def test_t1_identity_and_t6():
    S = build_space(35)
    T1 = hecke_matrix(S, 1)
    assert T1 == [[int(i == j) for j in range(len(T1))] for i in range(len(T1))]
    assert hecke_matrix(S, 6) == _matmul(hecke_matrix(S, 2), hecke_matrix(S, 3))


def test_hecke_cache_reused():
    S = build_space(23)
    T = hecke_matrix(S, 5)
    assert hecke_matrix(S, 5) is T
    assert ("cuspidal", 5) in S.hecke_cache


def test_merel_and_cremona_agree():
    from oldcong import modsym

    for N in (11, 26, 33, 45):
        S = build_space(N)
        P1 = modsym._p1(N)
        for p in (2, 3, 5, 7):
            images = []
            for g in S.basis_gens:
                u, v = P1.elements[g]
                acc = {}
                for a, b, c, d in heilbronn_merel(p):
                    k = P1.index(u * a + v * c, u * b + v * d)
                    if k >= 0:
                        modsym._add(acc, S.gen_images[k], 1)
                images.append(acc)
            assert S.restrict(images, "cuspidal") == hecke_matrix(S, p), (N, p)


def test_hecke_commutativity_and_star():
    for N in range(11, 61):
        S = build_space(N)
        if not S.cuspidal.dim:
            continue
        Ts = {n: hecke_matrix(S, n) for n in range(1, 13)}
        for m in range(2, 13):
            for n in range(m + 1, 13):
                assert _matmul(Ts[m], Ts[n]) == _matmul(Ts[n], Ts[m]), (N, m, n)
        star = S.star_matrix()
        for n in range(2, 13):
            if gcd(n, N) == 1:
                assert _matmul(star, Ts[n]) == _matmul(Ts[n], star), (N, n)


def test_star_is_involution():
    S = build_space(37)
    star = S.star_matrix()
    assert _matmul(star, star) == [[int(i == j) for j in range(len(star))] for i in range(len(star))]


def test_integral_basis_examples():
    for N in range(1, 11):
        assert integral_basis(N, max(1, sturm_bound(N))).nrows == 0
    assert integral_basis(11, 4).tolist() == [[1, -2, -1, 2]]
    assert integral_basis(22, 4) == hnf([[1, -2, -1, 2], [0, 1, 0, -2]])
    assert integral_basis(22, 4).tolist() == [[1, 0, -1, -2], [0, 1, 0, -2]]


def test_integral_basis_precision_check():
    with pytest.raises(PrecisionError):
        integral_basis(42, 12)


def test_integral_basis_saturated_and_rank():
    for N in (23, 37, 42, 50, 64):
        b = integral_basis(N, sturm_bound(N))
        assert saturate(b) == b
        assert b.nrows == genus_x0(N)


def test_integral_basis_extends_consistently():
    # a longer precision truncates back to the same lattice
    for N in (26, 37, 43):
        B = sturm_bound(N)
        longer = integral_basis(N, B + 10)
        assert hnf([r[:B] for r in longer.rows]) == integral_basis(N, B)
