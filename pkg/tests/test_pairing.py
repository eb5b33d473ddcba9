import random

import oracles
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floppy.curve import nonsingular_curve
from floppy.diagram import PLUS, RegionProfile, region_profiles, shared_corners
from floppy.pairing import (
    PairingError,
    build_matrix,
    det_power_square,
    determinant,
    inertia,
    integer_kernel,
    odd_kernel_exists,
)


def sym_matrices(max_n=6, lo=-6, hi=6):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        vals = draw(st.lists(st.integers(lo, hi), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2))
        a = [[0] * n for _ in range(n)]
        it = iter(vals)
        for i in range(n):
            for j in range(i, n):
                a[i][j] = a[j][i] = next(it)
        return a
    return build()


def test_inertia_small_cases():
    assert tuple(inertia([[-4]]).__dict__.values()) == (0, 1, 0)
    assert tuple(inertia([[0]]).__dict__.values()) == (0, 0, 1)
    assert tuple(inertia([[0, 1], [1, 0]]).__dict__.values()) == (1, 1, 0)
    assert tuple(inertia([[0, 0, 1], [0, 0, 0], [1, 0, 0]]).__dict__.values()) == (1, 1, 1)
    assert tuple(inertia([]).__dict__.values()) == (0, 0, 0)


@settings(max_examples=300)
@given(sym_matrices())
def test_inertia_matches_sturm(a):
    r = inertia(a)
    assert (r.sigma_plus, r.sigma_minus, r.eta) == oracles.sturm_inertia(a)


@given(sym_matrices(5, -3, 3), st.randoms(use_true_random=False))
def test_inertia_is_congruence_invariant(a, rng):
    n = len(a)
    # random unimodular P: product of elementary column operations
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(6):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            f = rng.randint(-2, 2)
            for r in P:
                r[j] += f * r[i]
    B = [[sum(P[k][i] * a[k][l] * P[l][j] for k in range(n) for l in range(n)) for j in range(n)]
         for i in range(n)]
    assert inertia(B) == inertia(a)


@given(sym_matrices(5))
def test_determinant_matches_fraction_elimination(a):
    assert determinant(a) == oracles._det(a)


@given(sym_matrices(5, -2, 2))
def test_integer_kernel_basis(a):
    basis = integer_kernel(a)
    assert len(basis) == inertia(a).eta
    for v in basis:
        assert all(sum(r[j] * v[j] for j in range(len(v))) == 0 for r in a)
    if basis:
        assert oracles.is_saturated(basis)


def test_odd_kernel_examples():
    assert odd_kernel_exists([[0]]) == (True, [1])
    assert odd_kernel_exists([[1, -1], [-1, 1]])[0]
    assert odd_kernel_exists([[1, 0], [0, 0]]) == (False, None)
    # kernel spanned by (2, 1): no vector with both entries odd
    assert not odd_kernel_exists([[1, -2], [-2, 4]])[0]
    ok, w = odd_kernel_exists([[1, 1, -2], [1, 1, -2], [-2, -2, 4]])
    assert ok and all(x % 2 for x in w)


def test_odd_kernel_against_brute_force():
    rng = random.Random(7)
    seen = 0
    while seen < 200:
        n = rng.randint(1, 4)
        dim = rng.randint(0, min(n, 2))
        K = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(dim)]
        if dim and not oracles.is_saturated(K):
            continue
        m = oracles.matrix_with_kernel(rng, n, K)
        got, w = odd_kernel_exists(m)
        ref = oracles.brute_odd_kernel(m, max(1, 3 * dim))
        assert got == (ref is not None), (m, K)
        if got:
            assert all(x % 2 for x in w)
            assert all(sum(r[j] * w[j] for j in range(n)) == 0 for r in m)
        seen += 1


def test_det_power_square():
    assert det_power_square([[-4]], 2)
    assert not det_power_square([[-4]], 1)
    assert det_power_square([[-8]], 1)
    assert not det_power_square([[3]], 0)
    assert det_power_square([[0]], 5)


def test_conic_matrices():
    d = nonsingular_curve("1", 2).diagram
    prof = region_profiles(d, 1)
    sc = shared_corners(d)
    assert build_matrix(prof, sc, 1, PLUS).entries2 == ((-4,),)
    assert build_matrix(prof, sc, 1, "-").entries2 == ((0,),)


def test_even_k_needs_w_flags():
    profs = [RegionProfile("f1", 1, 1, 0, 0, 0, 0, True, PLUS, True),
             RegionProfile("f2", 1, 1, 0, 0, 0, 0, True, PLUS, True)]
    with pytest.raises(PairingError):
        build_matrix(profs, {("f1", "f2"): (1, None), ("f2", "f1"): (1, None)}, 2, PLUS)
    m = build_matrix(profs, {("f1", "f2"): (1, 0), ("f2", "f1"): (1, 0)}, 2, PLUS)
    assert m.entries2 == ((-3, 1), (1, -3))
    m_odd = build_matrix(profs, {("f1", "f2"): (1, 1), ("f2", "f1"): (1, 1)}, 3, PLUS)
    assert m_odd.entries2[0][1] == 2
    m_even = build_matrix(profs, {("f1", "f2"): (1, 1), ("f2", "f1"): (1, 1)}, 2, PLUS)
    assert m_even.entries2[0][1] == 0
