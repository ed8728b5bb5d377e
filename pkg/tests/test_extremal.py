import numpy as np
import pytest
import sympy

from frameuncertainty import (
    CapacityError,
    FrameSystem,
    MeasureSpace,
    PreconditionError,
    Vector,
    analyze,
    coherence,
    dft_pair,
    dirac_comb,
    identity_system,
    min_support_product,
    pattern_feasible,
    random_reconstructing,
    reweighted,
)
from frameuncertainty.extremal import coset_patterns
from frameuncertainty.uncertainty import G_OF_TAU

from oracles import dft_direct, l0, ternary_min_product_identity_dft

T1 = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
T2 = [[2, 1, 0], [1, 1, 1], [0, 1, 3]]
T3 = [[1, 2, 0, 1], [0, 1, 1, 0], [1, 0, 1, 1], [2, 1, 0, 3]]
T4 = [[1, 0, 0, 1], [1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 2]]
I3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def from_synthesis(T, weights=None):
    T = np.array(T, dtype=float)
    s = FrameSystem(MeasureSpace.finite(len(T)), "1", "real", "dense", np.linalg.inv(T), T)
    return s if weights is None else reweighted(s, weights)


def test_pattern_identity_singleton():
    I = identity_system(3)
    cert = pattern_feasible(I, I, {0}, {0})
    assert cert.feasible and cert.nullspace_dim == 1
    assert np.allclose(np.abs(cert.witness.to_array()), [1, 0, 0])


def test_pattern_dirac_vs_dft_infeasible():
    I, F = dft_pair(4)
    cert = pattern_feasible(I, F, {0}, {1})
    assert not cert.feasible and cert.witness is None and cert.nullspace_dim == 0


def test_pattern_comb_feasible():
    I, F = dft_pair(4)
    cert = pattern_feasible(I, F, {0, 2}, {0, 2})
    assert cert.feasible
    w = cert.witness.to_array()
    assert np.allclose(np.abs(w), np.array([1, 0, 1, 0]) / np.sqrt(2))
    assert cert.support_f == (0, 2) and cert.support_g == (0, 2)


def test_pattern_capacity():
    I = identity_system(17)
    with pytest.raises(CapacityError):
        pattern_feasible(I, I, {0}, {0})


def test_min_identity():
    I = identity_system(3)
    res = min_support_product(I, I)
    assert res.minimum == 1 and res.ratio == 1.0
    assert res.certificate.support_f == (0,)


@pytest.mark.parametrize("n, expected", [(4, 4), (5, 5)])
def test_min_identity_dft(n, expected):
    assert ternary_min_product_identity_dft(n) == expected
    I, F = dft_pair(n)
    res = min_support_product(I, F)
    assert res.minimum == expected
    assert res.bound == pytest.approx(n)


@pytest.mark.parametrize("Tf, Tg, wf, wg, expected, bound", [
    (T1, T2, None, None, 3, sympy.Rational(1, 10)),
    (T3, T4, None, None, 1, sympy.Rational(1, 2)),
    (T3, T4, [1, 2, 1, 0.5], [3, 1, 1, 1], 1, sympy.Rational(1, 2)),
    (I3, T1, None, None, 2, 2),
])
def test_min_matches_exact_rational_oracle(Tf, Tg, wf, wg, expected, bound):
    # expected values frozen from oracles.exact_min_support_product
    f, g = from_synthesis(Tf, wf), from_synthesis(Tg, wg)
    res = min_support_product(f, g)
    assert res.minimum == pytest.approx(float(expected), abs=1e-12)
    if wf is None:
        assert res.bound == pytest.approx(float(bound), rel=1e-12)
    assert res.minimum >= res.bound - 1e-12


def test_exact_oracle_reproduces_frozen_value():
    from oracles import exact_min_support_product
    assert exact_min_support_product(T1, T2) == 3
    assert exact_min_support_product(I3, T1) == 2


def test_oracle_dominance_and_certificate_soundness():
    for seed in range(30):
        n = 3 + seed % 4
        f = random_reconstructing(n, seed=seed)
        g = random_reconstructing(n, seed=777 + seed)
        res = min_support_product(f, g)
        bound = 1 / (coherence(f, g) * coherence(f, g, G_OF_TAU))
        assert res.minimum >= bound - 1e-12
        w = res.certificate.witness
        sf, sg = tuple(analyze(f, w).values), tuple(analyze(g, w).values)
        assert sf == res.certificate.support_f and sg == res.certificate.support_g
        assert len(sf) * len(sg) == res.minimum
        assert set(sf) <= set(res.certificate.S) and set(sg) <= set(res.certificate.T)


@pytest.mark.parametrize("n", [9, 16])
def test_comb_optimal_on_coset_patterns(n):
    I, F = dft_pair(n)
    res = min_support_product(I, F, patterns="cosets")
    assert res.minimum == n and res.ratio == pytest.approx(1.0)
    s = int(n ** 0.5)
    comb = dirac_comb(n)
    assert l0(comb.to_array()) * l0(dft_direct(list(comb.to_array()))) == n
    assert res.certificate.support_f in {tuple(range(a, n, s)) for a in range(s)} | {(k,) for k in range(n)}


def test_comb_optimal_full_n4():
    I, F = dft_pair(4)
    res = min_support_product(I, F)
    assert res.minimum == 4
    assert res.certificate.support_f == (0, 2)


def test_enumeration_cap():
    I, F = dft_pair(9)
    with pytest.raises(CapacityError):
        min_support_product(I, F)
    with pytest.raises(CapacityError):
        min_support_product(*dft_pair(4), patterns="all", max_dim=3)


def test_coset_patterns():
    assert coset_patterns(4) == [(0, 1, 2, 3), (0, 2), (1, 3), (0,), (1,), (2,), (3,)]


def test_dirac_comb():
    assert dirac_comb(4) == Vector.from_array([1, 0, 1, 0])
    c16 = dirac_comb(16)
    assert c16.support == (0, 4, 8, 12)
    assert l0(dft_direct(list(c16.to_array()))) == 4
    c9 = dirac_comb(9)
    assert l0(c9.to_array()) * l0(dft_direct(list(c9.to_array()))) == 9
    with pytest.raises(PreconditionError):
        dirac_comb(8)
