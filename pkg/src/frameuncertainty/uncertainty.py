"""Cross-Gram matrices, coherence, support measures and the uncertainty checks.

Every check returns :class:`BoundReport` objects oriented so that the
inequality claims ``lhs >= rhs``.  Notation used below, for a pair
(f, tau) over (Omega, mu) and (g, omega) over (Delta, nu):

    c_fw = sup |f_a(omega_b)|      c_gt = sup |g_b(tau_a)|
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .frames import (
    DEFAULT_SUPPORT_TOL,
    SUPPORT_FLOOR,
    CoefficientFunction,
    FrameSystem,
    analyze,
    check_ambient,
    is_reconstructing,
)
from .generators import validate_parseval
from .spaces import (
    DomainError,
    PreconditionError,
    UnsupportedRepresentationError,
    Vector,
    as_exponent,
    lp_norm,
    measure_of,
)

CHECK_TOL = 1e-12
EQUALITY_RTOL = 1e-9
RECONSTRUCTION_TOL = 1e-9

F_OF_OMEGA = "f_of_omega"
G_OF_TAU = "g_of_tau"


@dataclass(frozen=True)
class SupportReport:
    support: tuple[int, ...]
    cardinality: int
    measure: float
    tol: float


@dataclass(frozen=True)
class BoundReport:
    """One inequality instance ``lhs >= rhs``.

    ``side`` distinguishes the two halves of paired checks ("f" or "g").
    """

    id: str
    lhs: float
    rhs: float
    slack: float
    holds: bool
    equality: bool
    bound_finite: bool = True
    q: float | None = None
    side: str | None = None

    @classmethod
    def build(cls, id: str, lhs: float, rhs: float, q: float | None = None,
              side: str | None = None) -> "BoundReport":
        lhs, rhs = float(lhs), float(rhs)
        if math.isinf(rhs):
            return cls(id, lhs, rhs, -math.inf, False, False, False, q, side)
        slack = lhs - rhs
        return cls(id, lhs, rhs, slack,
                   holds=slack >= -CHECK_TOL,
                   equality=abs(slack) <= EQUALITY_RTOL * max(1.0, abs(rhs)),
                   q=q, side=side)

    def key(self) -> tuple:
        return (self.id, self.side, self.lhs, self.rhs, self.holds, self.equality)


def _reciprocal(c: float) -> float:
    return math.inf if c == 0 else 1.0 / c


# --------------------------------------------------------------------------
# cross-Gram and coherence

def _check_pair(f_sys: FrameSystem, g_sys: FrameSystem) -> None:
    if f_sys.kind != g_sys.kind:
        raise UnsupportedRepresentationError(
            "cross-Gram needs dense x dense or diagonal x diagonal systems")
    if f_sys.dim != g_sys.dim:
        raise DomainError(
            f"systems act on different ambient spaces ({f_sys.dim} vs {g_sys.dim})")


def cross_gram(f_sys: FrameSystem, g_sys: FrameSystem, direction: str = F_OF_OMEGA):
    """Entry (a, b) = f_a(omega_b) for ``f_of_omega``; entry (b, a) = g_b(tau_a)
    for ``g_of_tau``.  Diagonal pairs give a sparse diagonal matrix."""
    _check_pair(f_sys, g_sys)
    if direction == F_OF_OMEGA:
        first, second = f_sys, g_sys
    elif direction == G_OF_TAU:
        first, second = g_sys, f_sys
    else:
        raise ValueError(f"unknown direction {direction!r}")
    if first.kind == "diagonal":
        vals = first.diagonal_weights / second.diagonal_weights
        return sp.diags_array(vals.astype(complex), format="csr")
    return first.analysis @ second.synthesis


def coherence(f_sys: FrameSystem, g_sys: FrameSystem, direction: str = F_OF_OMEGA) -> float:
    G = cross_gram(f_sys, g_sys, direction)
    if sp.issparse(G):
        return float(np.max(np.abs(G.data))) if G.nnz else 0.0
    return float(np.max(np.abs(G)))


def coherences(f_sys: FrameSystem, g_sys: FrameSystem) -> tuple[float, float]:
    return coherence(f_sys, g_sys, F_OF_OMEGA), coherence(f_sys, g_sys, G_OF_TAU)


def support_of(c: CoefficientFunction) -> SupportReport:
    supp = tuple(sorted(c.values))
    return SupportReport(supp, len(supp), measure_of(c.space, supp), c.tol)


# --------------------------------------------------------------------------
# scalar checks

@dataclass(frozen=True)
class _Evaluation:
    cf: CoefficientFunction
    cg: CoefficientFunction
    sf: SupportReport
    sg: SupportReport
    c_fw: float
    c_gt: float


def _evaluate(f_sys, g_sys, x: Vector, tol: float, verify: bool) -> _Evaluation:
    _check_pair(f_sys, g_sys)
    check_ambient(f_sys, x)
    if x.is_zero():
        raise PreconditionError("bound stated for x != 0")
    if verify:
        for name, s in (("first", f_sys), ("second", g_sys)):
            ok, dev = is_reconstructing(s, RECONSTRUCTION_TOL)
            if not ok:
                raise PreconditionError(
                    f"{name} system is not reconstructing (deviation={dev:.17g})")
    cf, cg = analyze(f_sys, x, tol), analyze(g_sys, x, tol)
    c_fw, c_gt = coherences(f_sys, g_sys)
    return _Evaluation(cf, cg, support_of(cf), support_of(cg), c_fw, c_gt)


def _endpoint(p) -> str:
    p = as_exponent(p)
    if p.is_infinite:
        return "inf"
    if p.value == 1.0:
        return "1"
    raise PreconditionError(f"this check is stated for p = 1 or p = inf, got p = {p}")


def check_product_bound(f_sys: FrameSystem, g_sys: FrameSystem, x: Vector, p="1",
                        tol: float = DEFAULT_SUPPORT_TOL, verify: bool = True) -> BoundReport:
    """mu(supp theta_f x) * nu(supp theta_g x) >= 1 / (c_fw * c_gt)."""
    tag = _endpoint(p)
    ev = _evaluate(f_sys, g_sys, x, tol, verify)
    return BoundReport.build(f"product_{tag}", ev.sf.measure * ev.sg.measure,
                             _reciprocal(ev.c_fw * ev.c_gt))


def check_transfer_inequalities(f_sys: FrameSystem, g_sys: FrameSystem, x: Vector, p="1",
                                tol: float = DEFAULT_SUPPORT_TOL,
                                verify: bool = True) -> tuple[BoundReport, BoundReport]:
    """The two one-factor inequalities whose product gives the product bound.

    p = 1 (weighted l^1 norms)::

        mu(supp theta_f x) ||theta_g x||_1 >= ||theta_f x||_1 / c_fw
        nu(supp theta_g x) ||theta_f x||_1 >= ||theta_g x||_1 / c_gt

    p = inf (sup norms)::

        nu(supp theta_g x) ||theta_g x||_inf >= ||theta_f x||_inf / c_fw
        mu(supp theta_f x) ||theta_f x||_inf >= ||theta_g x||_inf / c_gt
    """
    tag = _endpoint(p)
    ev = _evaluate(f_sys, g_sys, x, tol, verify)
    nf = lp_norm(ev.cf.as_vector(), p, f_sys.space)
    ng = lp_norm(ev.cg.as_vector(), p, g_sys.space)
    if tag == "1":
        return (BoundReport.build("transfer_FI", ev.sf.measure * ng, nf * _reciprocal(ev.c_fw)),
                BoundReport.build("transfer_SI", ev.sg.measure * nf, ng * _reciprocal(ev.c_gt)))
    return (BoundReport.build("transfer_I1", ev.sg.measure * ng, nf * _reciprocal(ev.c_fw)),
            BoundReport.build("transfer_I2", ev.sf.measure * nf, ng * _reciprocal(ev.c_gt)))


def check_one_sided_bounds(f_sys: FrameSystem, g_sys: FrameSystem, x: Vector, p="1",
                           tol: float = DEFAULT_SUPPORT_TOL,
                           verify: bool = True) -> tuple[BoundReport, BoundReport]:
    """Single-support bounds.

    p = 1:   mu(supp theta_f x) >= 1/c_fw  and  nu(supp theta_g x) >= 1/c_gt
    p = inf: mu(supp theta_f x) >= 1/c_gt  and  nu(supp theta_g x) >= 1/c_fw

    These are only guaranteed when both analysis maps are isometries onto
    the same norm of the ambient space; for a general reconstructing pair
    the reports may legitimately show violations.
    """
    tag = _endpoint(p)
    ev = _evaluate(f_sys, g_sys, x, tol, verify)
    cf, cg = (ev.c_fw, ev.c_gt) if tag == "1" else (ev.c_gt, ev.c_fw)
    rid = f"one_sided_{tag}"
    return (BoundReport.build(rid, ev.sf.measure, _reciprocal(cf), side="f"),
            BoundReport.build(rid, ev.sg.measure, _reciprocal(cg), side="g"))


def check_mixed_norm_bound(f_sys: FrameSystem, g_sys: FrameSystem, x: Vector, p,
                           tol: float = DEFAULT_SUPPORT_TOL,
                           verify: bool = True) -> tuple[BoundReport, BoundReport]:
    """For 1 < p < inf with q = p / (p - 1)::

        mu(S_f)**(1/p) * nu(S_g)**(1/q) >= 1 / c_fw
        nu(S_g)**(1/p) * mu(S_f)**(1/q) >= 1 / c_gt

    Like the one-sided bounds this needs isometric analysis maps.
    """
    p = as_exponent(p)
    if p.is_infinite or p.value <= 1:
        raise PreconditionError(f"mixed-norm bound needs 1 < p < inf, got p = {p}")
    if f_sys.kind != "dense" or g_sys.kind != "dense":
        raise PreconditionError("mixed-norm bound is stated for bounded (dense) systems")
    ev = _evaluate(f_sys, g_sys, x, tol, verify)
    pv = p.value
    q = pv / (pv - 1.0)
    mf, mg = ev.sf.measure, ev.sg.measure
    return (BoundReport.build("mixed_p", mf ** (1 / pv) * mg ** (1 / q),
                              _reciprocal(ev.c_fw), q=q, side="f"),
            BoundReport.build("mixed_p", mg ** (1 / pv) * mf ** (1 / q),
                              _reciprocal(ev.c_gt), q=q, side="g"))


def check_hilbert_chain(tau_frame: FrameSystem, omega_frame: FrameSystem, h: Vector,
                        tol: float = DEFAULT_SUPPORT_TOL,
                        parseval_tol: float = 1e-9) -> tuple[BoundReport, BoundReport]:
    """Both links of ((a + b)/2)**2 >= a*b >= 1/max|<tau_j, omega_k>|**2, where
    a, b are the l^0 sizes of (<h, tau_j>)_j and (<h, omega_k>)_k.

    Returns ``(product_report, amgm_report)``; the first has id
    ``hilbert_chain`` with lhs = a*b, the second compares the AM-GM middle
    term ((a + b)/2)**2 against a*b.
    """
    for name, fr in (("tau_frame", tau_frame), ("omega_frame", omega_frame)):
        if fr.kind != "dense":
            raise PreconditionError(f"{name} must be a dense frame")
        ok, dev = validate_parseval(fr, parseval_tol)
        if not ok:
            raise PreconditionError(f"{name} is not a Parseval frame (deviation={dev:.17g})")
    if tau_frame.dim != omega_frame.dim:
        raise DomainError("frames act on different spaces")
    check_ambient(tau_frame, h)
    if h.is_zero():
        raise PreconditionError("bound stated for h != 0")
    hv = h.to_array()
    a = _l0(tau_frame.synthesis.conj().T @ hv, tol)
    b = _l0(omega_frame.synthesis.conj().T @ hv, tol)
    gram = np.max(np.abs(tau_frame.synthesis.conj().T @ omega_frame.synthesis))
    rhs = _reciprocal(float(gram) ** 2)
    return (BoundReport.build("hilbert_chain", a * b, rhs),
            BoundReport.build("hilbert_chain_amgm", ((a + b) / 2) ** 2, a * b))


def _l0(coeffs: np.ndarray, tol: float) -> int:
    thr = max(tol * float(np.max(np.abs(coeffs))), SUPPORT_FLOOR)
    return int(np.count_nonzero(np.abs(coeffs) > thr))


# --------------------------------------------------------------------------
# vectorized path for large sweeps

@dataclass
class BatchBounds:
    """Left and right sides of every check for a stack of vectors.

    ``sides[key] = (lhs, rhs)`` with one entry per input vector.  Keys are
    report ids, suffixed with ``:f``/``:g`` for paired checks and with the
    exponent for mixed-norm checks (``mixed_p[2]:f``).
    """

    sides: dict[str, tuple[np.ndarray, np.ndarray]]
    measure_f: np.ndarray
    measure_g: np.ndarray

    def slack(self, key: str) -> np.ndarray:
        lhs, rhs = self.sides[key]
        return lhs - rhs

    def violations(self, key: str, check_tol: float = CHECK_TOL) -> int:
        return int(np.count_nonzero(self.slack(key) < -check_tol))

    def violation_counts(self, check_tol: float = CHECK_TOL) -> dict[str, int]:
        return {k: self.violations(k, check_tol) for k in self.sides}


def batch_bounds(f_sys: FrameSystem, g_sys: FrameSystem, X: np.ndarray,
                 tol: float = DEFAULT_SUPPORT_TOL, mixed=(1.5, 2.0, 3.0),
                 transfers: bool = True) -> BatchBounds:
    """Evaluate every check on the rows of ``X`` at once (dense systems).

    Supports use the same per-vector relative cutoff as :func:`analyze`.
    """
    _check_pair(f_sys, g_sys)
    X = np.atleast_2d(np.asarray(X, dtype=complex))
    if X.shape[1] != f_sys.dim:
        raise DomainError(f"vectors have length {X.shape[1]}, expected {f_sys.dim}")
    if np.any(~X.any(axis=1)):
        raise PreconditionError("bound stated for x != 0")
    Cf = X @ f_sys.analysis_matrix().T
    Cg = X @ g_sys.analysis_matrix().T
    Mf, Mg = _masked_moduli(Cf, tol), _masked_moduli(Cg, tol)
    wf, wg = f_sys.space.weight_array(), g_sys.space.weight_array()
    mu = (Mf > 0) @ wf
    nu = (Mg > 0) @ wg
    c_fw, c_gt = coherences(f_sys, g_sys)
    r_fw, r_gt = _reciprocal(c_fw), _reciprocal(c_gt)
    ones = np.ones(len(X))
    prod = mu * nu
    sides = {
        "product_1": (prod, _reciprocal(c_fw * c_gt) * ones),
        "product_inf": (prod, _reciprocal(c_fw * c_gt) * ones),
        "one_sided_1:f": (mu, r_fw * ones),
        "one_sided_1:g": (nu, r_gt * ones),
        "one_sided_inf:f": (mu, r_gt * ones),
        "one_sided_inf:g": (nu, r_fw * ones),
    }
    for p in mixed:
        q = p / (p - 1.0)
        sides[f"mixed_p[{p:g}]:f"] = (mu ** (1 / p) * nu ** (1 / q), r_fw * ones)
        sides[f"mixed_p[{p:g}]:g"] = (nu ** (1 / p) * mu ** (1 / q), r_gt * ones)
    if transfers:
        n1f, n1g = Mf @ wf, Mg @ wg
        nif, nig = Mf.max(axis=1), Mg.max(axis=1)
        sides["transfer_FI"] = (mu * n1g, n1f * r_fw)
        sides["transfer_SI"] = (nu * n1f, n1g * r_gt)
        sides["transfer_I1"] = (nu * nig, nif * r_fw)
        sides["transfer_I2"] = (mu * nif, nig * r_gt)
    return BatchBounds(sides, mu, nu)


def _masked_moduli(C: np.ndarray, tol: float) -> np.ndarray:
    M = np.abs(C)
    thr = np.maximum(tol * M.max(axis=1), SUPPORT_FLOOR)
    return np.where(M > thr[:, None], M, 0.0)
