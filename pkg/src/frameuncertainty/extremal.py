"""Exact minimum of mu(supp theta_f x) * nu(supp theta_g x) over x != 0.

A support pattern (S, T) is feasible when some x != 0 is annihilated by
every f_a with a outside S and every g_b with b outside T, i.e. when the
stacked complementary analysis rows have a nontrivial null space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .frames import DEFAULT_SUPPORT_TOL, FrameSystem, analyze
from .spaces import CapacityError, DomainError, PreconditionError, Vector
from .uncertainty import CHECK_TOL, coherences

FEASIBILITY_CAP = 16
ENUMERATION_CAP = 8
RANK_RTOL = 1e-10


@dataclass(frozen=True)
class FeasibilityCertificate:
    S: tuple[int, ...]
    T: tuple[int, ...]
    witness: Vector | None
    nullspace_dim: int
    support_f: tuple[int, ...] = ()
    support_g: tuple[int, ...] = ()

    @property
    def feasible(self) -> bool:
        return self.witness is not None


@dataclass(frozen=True)
class ExtremalResult:
    minimum: float
    bound: float
    certificate: FeasibilityCertificate
    patterns_checked: int

    @property
    def ratio(self) -> float:
        return self.minimum / self.bound if self.bound > 0 else math.inf


def _require_dense(f_sys: FrameSystem, g_sys: FrameSystem, cap: int) -> None:
    if f_sys.kind != "dense" or g_sys.kind != "dense":
        raise PreconditionError("support-pattern search needs dense systems")
    if f_sys.dim != g_sys.dim:
        raise DomainError("systems act on different ambient spaces")
    if f_sys.dim > cap:
        raise CapacityError(f"ambient dimension {f_sys.dim} exceeds the cap of {cap}")


def null_space(M: np.ndarray, n: int, rtol: float = RANK_RTOL) -> np.ndarray:
    """Orthonormal basis (columns) of the null space of the rows of ``M``."""
    if M.shape[0] == 0:
        return np.eye(n, dtype=complex)
    _, s, Vh = np.linalg.svd(M, full_matrices=True)
    rank = int(np.count_nonzero(s > rtol * s[0])) if s.size and s[0] > 0 else 0
    return Vh[rank:].conj().T


def pattern_feasible(f_sys: FrameSystem, g_sys: FrameSystem, S: Iterable[int],
                     T: Iterable[int], tol: float = DEFAULT_SUPPORT_TOL) -> FeasibilityCertificate:
    """Is there x != 0 with supp(theta_f x) in S and supp(theta_g x) in T?"""
    _require_dense(f_sys, g_sys, FEASIBILITY_CAP)
    S, T = tuple(sorted(set(S))), tuple(sorted(set(T)))
    for name, idx, sys in (("S", S, f_sys), ("T", T, g_sys)):
        bad = [i for i in idx if not sys.space.contains(i)]
        if bad:
            raise DomainError(f"pattern {name} has indices outside the index set: {bad}")
    return _feasible(f_sys, g_sys, S, T, tol)


def _feasible(f_sys, g_sys, S, T, tol) -> FeasibilityCertificate:
    out_f = np.setdiff1d(np.arange(f_sys.space.size), S)
    out_g = np.setdiff1d(np.arange(g_sys.space.size), T)
    M = np.vstack([f_sys.analysis[out_f], g_sys.analysis[out_g]])
    N = null_space(M, f_sys.dim)
    k = N.shape[1]
    if k == 0:
        return FeasibilityCertificate(S, T, None, 0)
    w = N[:, -1]
    w = w / np.linalg.norm(w)
    field = "real" if f_sys.field == g_sys.field == "real" else "complex"
    if field == "real":
        # real rows: both Re w and Im w lie in the null space
        part = w.real if np.linalg.norm(w.real) >= np.linalg.norm(w.imag) else w.imag
        w = part / np.linalg.norm(part)
    w = np.where(np.abs(w) > RANK_RTOL * np.max(np.abs(w)), w, 0)
    witness = Vector.from_array(w, field=field)
    sf = tuple(sorted(analyze(f_sys, witness, tol).values))
    sg = tuple(sorted(analyze(g_sys, witness, tol).values))
    return FeasibilityCertificate(S, T, witness, k, sf, sg)


def _subsets(size: int) -> list[tuple[int, ...]]:
    return [tuple(i for i in range(size) if mask >> i & 1) for mask in range(1, 1 << size)]


def coset_patterns(size: int) -> list[tuple[int, ...]]:
    """Cosets a + dZ of every subgroup dZ of Z_size (d a divisor of size)."""
    out = []
    for d in range(1, size + 1):
        if size % d == 0:
            out.extend(tuple(range(a, size, d)) for a in range(d))
    return out


def min_support_product(f_sys: FrameSystem, g_sys: FrameSystem,
                        patterns: str = "all", max_dim: int = ENUMERATION_CAP,
                        tol: float = DEFAULT_SUPPORT_TOL) -> ExtremalResult:
    """Best-first search over support patterns ordered by mu(S) * nu(T).

    The first feasible pattern is optimal: any witness supported inside it
    has actual supports (S', T') with product <= mu(S) nu(T), and every
    strictly cheaper pattern was already found infeasible, so the actual
    product equals the pattern product.

    ``patterns="cosets"`` restricts both sides to cosets of subgroups of the
    cyclic group on the index set; the result is then a minimum over that
    family only (an upper bound on the true minimum).
    """
    if patterns == "all":
        cap = min(max_dim, ENUMERATION_CAP)
        sizes = (f_sys.space.size, g_sys.space.size)
        if max(sizes) > cap or f_sys.dim > cap:
            raise CapacityError(
                f"full enumeration is capped at {cap} indices, got {max(sizes + (f_sys.dim,))}")
        _require_dense(f_sys, g_sys, cap)
        cand_f, cand_g = _subsets(sizes[0]), _subsets(sizes[1])
    elif patterns == "cosets":
        _require_dense(f_sys, g_sys, FEASIBILITY_CAP)
        if max(f_sys.space.size, g_sys.space.size) > FEASIBILITY_CAP:
            raise CapacityError(f"index sets above {FEASIBILITY_CAP} are not supported")
        cand_f, cand_g = coset_patterns(f_sys.space.size), coset_patterns(g_sys.space.size)
    else:
        raise ValueError(f"unknown pattern family {patterns!r}")

    c_fw, c_gt = coherences(f_sys, g_sys)
    bound = math.inf if c_fw * c_gt == 0 else 1.0 / (c_fw * c_gt)

    mf = _measures(f_sys, cand_f)
    mg = _measures(g_sys, cand_g)
    prod = np.multiply.outer(mf, mg).ravel()
    card = np.add.outer([len(s) for s in cand_f], [len(t) for t in cand_g]).ravel()
    order = np.lexsort((np.arange(prod.size), card, prod))

    checked = 0
    for flat in order:
        i, j = divmod(int(flat), len(cand_g))
        checked += 1
        cert = _feasible(f_sys, g_sys, cand_f[i], cand_g[j], tol)
        if not cert.feasible:
            continue
        value = _measure(f_sys, cert.support_f) * _measure(g_sys, cert.support_g)
        if value < bound - CHECK_TOL:
            raise AssertionError(
                f"exact minimum {value!r} is below the coherence bound {bound!r}; "
                "the systems are not a valid reconstructing pair")
        return ExtremalResult(value, bound, cert, checked)
    raise AssertionError("no feasible support pattern; systems cannot reconstruct")


def _measures(sys: FrameSystem, cands: Sequence[tuple[int, ...]]) -> np.ndarray:
    return np.array([_measure(sys, c) for c in cands])


def _measure(sys: FrameSystem, idx: Sequence[int]) -> float:
    w = sys.space.weight_array()
    return float(sum(w[i] for i in idx))


def dirac_comb(n: int) -> Vector:
    """Ones at 0, s, 2s, ... with spacing s = sqrt(n)."""
    s = math.isqrt(n) if n >= 0 else -1
    if n < 1 or s * s != n:
        raise PreconditionError(f"dirac comb needs a perfect square length, got {n}")
    return Vector(n, {k: 1.0 for k in range(0, n, s)}, field="real")
