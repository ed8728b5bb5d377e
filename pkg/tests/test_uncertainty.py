import math

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings, strategies as st

from frameuncertainty import (
    DomainError,
    FrameSystem,
    MeasureSpace,
    PreconditionError,
    UnsupportedRepresentationError,
    Vector,
    analyze,
    batch_bounds,
    check_hilbert_chain,
    check_mixed_norm_bound,
    check_one_sided_bounds,
    check_product_bound,
    check_transfer_inequalities,
    coherence,
    cross_gram,
    diagonal_system,
    dft_pair,
    dirac_comb,
    identity_system,
    lp_norm,
    random_parseval,
    random_reconstructing,
    support_of,
)
from frameuncertainty.frames import CoefficientFunction
from frameuncertainty.uncertainty import G_OF_TAU, BoundReport

from oracles import dft_direct, l0


def e(n, k, offset=0):
    return Vector(n, {k + offset: 1.0}, field="real", offset=offset)


# cross-Gram / coherence

def test_cross_gram_identity():
    I = identity_system(3)
    assert np.array_equal(cross_gram(I, I), np.eye(3))


def test_cross_gram_diagonal_is_sparse_ones():
    D = diagonal_system(1, 12)
    G = cross_gram(D, D)
    assert sp.issparse(G)
    assert np.allclose(G.toarray(), np.eye(12), atol=0)
    assert coherence(D, D) == 1.0


def test_cross_gram_diagonal_different_r():
    # f_n(tau'_m) = n / m^2 * delta_nm, max at n = 1
    D1, D2 = diagonal_system(1, 5), diagonal_system(2, 5)
    G = cross_gram(D1, D2).toarray()
    assert np.allclose(np.diag(G), [1 / n for n in range(1, 6)])


def test_cross_gram_identity_dft_moduli_half():
    I, F = dft_pair(4)
    direct = np.array([[dft_direct([1.0 if j == k else 0.0 for j in range(4)])[a] for k in range(4)]
                       for a in range(4)])
    assert np.allclose(np.abs(cross_gram(I, F)), 0.5, atol=1e-15)
    assert np.allclose(np.abs(cross_gram(I, F, G_OF_TAU)), np.abs(direct), atol=1e-15)


def test_coherence_identity_dft_16():
    I, F = dft_pair(16)
    assert coherence(I, F) == pytest.approx(0.25, abs=1e-15)


def test_cross_gram_mismatch():
    with pytest.raises(DomainError):
        cross_gram(identity_system(3), identity_system(4))
    with pytest.raises(UnsupportedRepresentationError):
        cross_gram(identity_system(3), diagonal_system(1, 3))


# supports

def test_support_of_counting_and_weighted():
    sp0 = MeasureSpace.finite(3)
    c = CoefficientFunction(sp0, {0: 1, 2: 2})
    r = support_of(c)
    assert (r.cardinality, r.measure) == (2, 2.0)
    c_w = CoefficientFunction(MeasureSpace.finite(3, [0.5] * 3), {0: 1, 2: 2})
    assert support_of(c_w).measure == 1.0


def test_support_excludes_sub_tolerance():
    c = analyze(identity_system(3), Vector.from_array([1.0, 1e-14, 1.0]))
    assert support_of(c).support == (0, 2)


# product bound

def test_product_identity_e0():
    I = identity_system(3)
    r = check_product_bound(I, I, e(3, 0), "1")
    assert (r.lhs, r.rhs, r.equality, r.holds) == (1.0, 1.0, True, True)


def test_product_comb_16_equality():
    I, F = dft_pair(16)
    x = dirac_comb(16)
    assert l0(x.to_array()) * l0(dft_direct(list(x.to_array()))) == 16
    r = check_product_bound(I, F, x, "1")
    assert r.lhs == 16 and r.rhs == pytest.approx(16, abs=1e-12) and r.equality


def test_product_generic_n4():
    I, F = dft_pair(4)
    x = Vector.from_array([1.0, 2.0, 3.0, 4.0])
    assert l0(dft_direct([1, 2, 3, 4])) == 4
    r = check_product_bound(I, F, x, "1")
    assert r.lhs == 16 and r.rhs == pytest.approx(4, abs=1e-12)
    assert r.holds and not r.equality and r.slack == pytest.approx(12)


def test_product_zero_vector_rejected():
    I = identity_system(3)
    with pytest.raises(PreconditionError, match="x != 0"):
        check_product_bound(I, I, Vector(3, {}), "1")


def test_product_rejects_non_endpoint_exponent():
    I = identity_system(3)
    with pytest.raises(PreconditionError):
        check_product_bound(I, I, e(3, 0), "2")


def test_product_non_reconstructing_rejected():
    bad = FrameSystem(MeasureSpace.finite(2), "1", "real", "dense", np.eye(2), 2 * np.eye(2))
    with pytest.raises(PreconditionError, match="not reconstructing"):
        check_product_bound(bad, bad, e(2, 0), "1")


def test_zero_coherence_gives_infinite_bound_report():
    f = FrameSystem(MeasureSpace.finite(2), "1", "real", "dense", [[1, 0], [0, 0]], [[0, 0], [0, 0]])
    r = check_product_bound(f, f, e(2, 0), "1", verify=False)
    assert math.isinf(r.rhs) and not r.bound_finite and not r.holds


def test_product_diagonal_pair():
    D = diagonal_system(1, 10)
    r = check_product_bound(D, D, e(10, 2, offset=1), "1")
    assert (r.lhs, r.rhs, r.equality) == (1.0, 1.0, True)


# transfers

def test_transfer_identity_e0():
    I = identity_system(3)
    fi, si = check_transfer_inequalities(I, I, e(3, 0), "1")
    assert (fi.id, si.id) == ("transfer_FI", "transfer_SI")
    assert fi.lhs == fi.rhs == si.lhs == si.rhs == 1.0 and fi.equality and si.equality


def test_transfer_comb_16():
    I, F = dft_pair(16)
    fi, si = check_transfer_inequalities(I, F, dirac_comb(16), "1")
    # ||x||_1 = 4, ||Fx||_1 = 4, supports 4 and 4, coherence 1/4
    assert fi.lhs == pytest.approx(16) and fi.rhs == pytest.approx(16)
    assert si.lhs == pytest.approx(16) and si.rhs == pytest.approx(16)
    assert fi.holds and si.holds


def test_transfer_inf_random_pairs_hold(rng):
    for t in range(1000):
        f = random_reconstructing(6, seed=t)
        g = random_reconstructing(6, seed=10_000 + t)
        x = Vector.from_array(rng.standard_normal(6) + 1j * rng.standard_normal(6))
        i1, i2 = check_transfer_inequalities(f, g, x, "inf", verify=False)
        assert (i1.id, i2.id) == ("transfer_I1", "transfer_I2")
        assert i1.holds and i2.holds


def test_transfers_multiply_to_product(rng):
    for t in range(100):
        f = random_reconstructing(5, seed=t)
        g = random_reconstructing(5, seed=500 + t)
        mask = rng.random(5) < 0.6
        mask[rng.integers(5)] = True
        x = Vector.from_array((rng.standard_normal(5) + 1j * rng.standard_normal(5)) * mask)
        prod = check_product_bound(f, g, x, "1")
        fi, si = check_transfer_inequalities(f, g, x, "1")
        nf = lp_norm(analyze(f, x).as_vector(), 1, f.space)
        ng = lp_norm(analyze(g, x).as_vector(), 1, g.space)
        assert fi.lhs * si.lhs / (nf * ng) == pytest.approx(prod.lhs, rel=1e-9)
        assert fi.rhs * si.rhs / (nf * ng) == pytest.approx(prod.rhs, rel=1e-9)


# one-sided and mixed

def test_one_sided_identity_e0():
    I = identity_system(3)
    a, b = check_one_sided_bounds(I, I, e(3, 0), "1")
    assert (a.lhs, a.rhs, b.lhs, b.rhs) == (1, 1, 1, 1)


def test_one_sided_comb_16():
    I, F = dft_pair(16)
    for p in ("1", "inf"):
        a, b = check_one_sided_bounds(I, F, dirac_comb(16), p)
        assert a.lhs == b.lhs == 4
        assert a.equality and b.equality


def test_one_sided_diagonal():
    D = diagonal_system(1, 10)
    a, b = check_one_sided_bounds(D, D, e(10, 2, offset=1), "1")
    assert a.holds and a.equality and b.equality


def test_one_sided_needs_isometric_pair():
    # (I, I) and (2I, I/2) both reconstruct but the analysis maps differ in
    # norm: mu(supp x) = 1 < 1 / c_fw = 2 for x = e_0.
    I = identity_system(2)
    g = FrameSystem(MeasureSpace.finite(2), "1", "real", "dense", 2 * np.eye(2), np.eye(2) / 2)
    a, b = check_one_sided_bounds(I, g, e(2, 0), "1")
    assert (a.lhs, a.rhs) == (1.0, 2.0) and not a.holds
    assert b.holds
    assert check_product_bound(I, g, e(2, 0), "1").holds


def test_mixed_identity_e0():
    I = identity_system(3)
    a, b = check_mixed_norm_bound(I, I, e(3, 0), 2)
    assert a.q == 2 and a.equality and b.equality


def test_mixed_comb_16_p2():
    I, F = dft_pair(16)
    a, b = check_mixed_norm_bound(I, F, dirac_comb(16), 2)
    assert a.lhs == pytest.approx(4) and a.rhs == pytest.approx(4) and a.equality and b.equality


def test_mixed_full_support_p3():
    I, F = dft_pair(4)
    a, b = check_mixed_norm_bound(I, F, Vector.from_array([1.0, 2.0, 3.0, 4.0]), 3)
    assert a.lhs == pytest.approx(4) and a.rhs == pytest.approx(2) and a.holds
    assert a.q == pytest.approx(1.5)


def test_mixed_p3_fails_for_non_isometric_pair():
    # identity/DFT is an l^2 isometry pair but not an l^3 one
    I, F = dft_pair(4)
    a, b = check_mixed_norm_bound(I, F, e(4, 0), 3)
    assert a.holds
    assert b.lhs == pytest.approx(4 ** (1 / 3)) and b.rhs == pytest.approx(2) and not b.holds


def test_mixed_p2_holds_for_unitary_pairs(rng):
    for t in range(100):
        f = random_parseval(5, 5, seed=t)
        g = random_parseval(5, 5, seed=1000 + t)
        xs = [e(5, k) for k in range(5)] + [
            Vector.from_array(rng.standard_normal(5) * (rng.random(5) < 0.5) + 0j)]
        for x in xs:
            if x.is_zero():
                continue
            a, b = check_mixed_norm_bound(f, g, x, 2)
            assert a.holds and b.holds


def test_mixed_rejects_bad_exponent():
    I = identity_system(3)
    for p in ("1", "inf", 0.5):
        with pytest.raises((PreconditionError, DomainError)):
            check_mixed_norm_bound(I, I, e(3, 0), p)


def test_mixed_squared_is_product_for_onb_pairs(rng):
    I, F = dft_pair(8)
    for _ in range(50):
        x = Vector.from_array(rng.standard_normal(8) * (rng.random(8) < 0.5) + 0j)
        if x.is_zero():
            continue
        a, _ = check_mixed_norm_bound(I, F, x, 2)
        assert a.lhs ** 2 == pytest.approx(check_product_bound(I, F, x, "1").lhs, rel=1e-12)


# Hilbert chain

def test_hilbert_chain_onb_self():
    I = identity_system(4)
    rep, amgm = check_hilbert_chain(I, I, e(4, 0))
    assert (rep.lhs, rep.rhs, amgm.lhs, amgm.rhs) == (1, 1, 1, 1)


def test_hilbert_chain_comb_16():
    I, F = dft_pair(16)
    rep, amgm = check_hilbert_chain(I, F, dirac_comb(16))
    assert amgm.lhs == 16 and amgm.rhs == 16 and amgm.equality
    assert rep.lhs == 16 and rep.rhs == pytest.approx(16) and rep.equality


def test_hilbert_chain_random_parseval(rng):
    tau = random_parseval(5, 7, seed=1)
    om = random_parseval(5, 7, seed=2)
    for _ in range(1000):
        h = Vector.from_array(rng.standard_normal(5) + 1j * rng.standard_normal(5))
        rep, amgm = check_hilbert_chain(tau, om, h)
        assert rep.holds and amgm.holds


def test_hilbert_chain_rejects_non_parseval():
    bad = FrameSystem(MeasureSpace.finite(3), "2", "real", "dense", np.eye(3) / 2, 2 * np.eye(3))
    with pytest.raises(PreconditionError, match="omega_frame"):
        check_hilbert_chain(identity_system(3), bad, e(3, 0))


def test_parseval_coherence_symmetry():
    for t in range(20):
        tau, om = random_parseval(4, 6, seed=t), random_parseval(4, 6, seed=50 + t)
        c1 = coherence(tau, om)
        assert c1 == pytest.approx(coherence(om, tau), abs=1e-12)
        assert c1 == pytest.approx(coherence(tau, om, G_OF_TAU), abs=1e-12)
        assert np.allclose(cross_gram(tau, om), cross_gram(om, tau).conj().T, atol=1e-12)


# batch path agrees with scalar path

def test_batch_matches_scalar(rng):
    for t in range(10):
        f = random_reconstructing(5, seed=t)
        g = random_reconstructing(5, seed=99 + t)
        X = (rng.standard_normal((30, 5)) + 1j * rng.standard_normal((30, 5))) * (rng.random((30, 5)) < 0.7)
        X[~X.any(axis=1), 0] = 1.0
        B = batch_bounds(f, g, X)
        for i, row in enumerate(X):
            x = Vector.from_array(row)
            pairs = {"product_1": check_product_bound(f, g, x, "1")}
            for p in ("1", "inf"):
                a, b = check_one_sided_bounds(f, g, x, p)
                pairs[f"one_sided_{p}:f"], pairs[f"one_sided_{p}:g"] = a, b
            for p in (1.5, 2.0, 3.0):
                a, b = check_mixed_norm_bound(f, g, x, p)
                pairs[f"mixed_p[{p:g}]:f"], pairs[f"mixed_p[{p:g}]:g"] = a, b
            pairs["transfer_FI"], pairs["transfer_SI"] = check_transfer_inequalities(f, g, x, "1")
            pairs["transfer_I1"], pairs["transfer_I2"] = check_transfer_inequalities(f, g, x, "inf")
            for key, rep in pairs.items():
                lhs, rhs = B.sides[key]
                assert lhs[i] == pytest.approx(rep.lhs, rel=1e-12), key
                assert rhs[i] == pytest.approx(rep.rhs, rel=1e-12), key


# scaling invariance

@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([1e-6, 1.0, 1e6, 1j, -3.5]))
def test_reports_scale_invariant(seed, c):
    rng = np.random.default_rng(seed)
    f, g = random_reconstructing(4, seed=seed), random_reconstructing(4, seed=seed + 1)
    x = (rng.standard_normal(4) + 1j * rng.standard_normal(4)) * (rng.random(4) < 0.7)
    x[0] = x[0] or 1.0
    v, cv = Vector.from_array(x), Vector.from_array(c * x)

    def reps(y):
        out = [check_product_bound(f, g, y, "1"), check_product_bound(f, g, y, "inf")]
        out += check_one_sided_bounds(f, g, y, "1") + check_one_sided_bounds(f, g, y, "inf")
        out += check_mixed_norm_bound(f, g, y, 2)
        return [r.key() for r in out]

    assert reps(v) == reps(cv)


def test_bound_report_build_flags():
    r = BoundReport.build("product_1", 16.0, 16.0 + 1e-13)
    assert r.holds and r.equality
    r = BoundReport.build("product_1", 3.0, 4.0)
    assert not r.holds and not r.equality and r.slack == -1.0
