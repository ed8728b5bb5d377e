"""Analysis/synthesis pairs over atomic measure spaces.

A dense system stores the analysis functionals as rows against the ambient
standard basis and the synthesis vectors as columns, so reconstruction reads

    x = sum_a mu(a) * f_a(x) * tau_a = T @ diag(mu) @ A @ x.

A diagonal system is the unbounded family f_n = w_n * zeta_n, tau_n = e_n / w_n
with w_n = n**r over a truncated sequence space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .spaces import (
    DomainError,
    Exponent,
    MeasureSpace,
    UnsupportedRepresentationError,
    Vector,
    as_exponent,
)

DEFAULT_SUPPORT_TOL = 1e-10
SUPPORT_FLOOR = 1e-300


@dataclass(frozen=True, eq=False)
class FrameSystem:
    space: MeasureSpace
    p: Exponent
    field: str = "complex"
    kind: str = "dense"
    analysis: np.ndarray | None = None
    synthesis: np.ndarray | None = None
    r: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "p", as_exponent(self.p))
        if self.kind == "dense":
            A = np.array(self.analysis, dtype=complex)
            T = np.array(self.synthesis, dtype=complex)
            if A.ndim != 2 or T.ndim != 2:
                raise DomainError("analysis and synthesis must be matrices")
            if A.shape[0] != self.space.size or T.shape[1] != self.space.size:
                raise DomainError(
                    f"{A.shape[0]} analysis rows and {T.shape[1]} synthesis "
                    f"vectors for an index set of size {self.space.size}")
            if A.shape[1] != T.shape[0]:
                raise DomainError("analysis and synthesis ambient dimensions differ")
            if self.space.kind != "finite":
                raise DomainError("dense systems live over finite index sets")
            if self.field == "real" and (np.any(A.imag) or np.any(T.imag)):
                raise DomainError("real system has complex coefficients")
            A.setflags(write=False)
            T.setflags(write=False)
            object.__setattr__(self, "analysis", A)
            object.__setattr__(self, "synthesis", T)
        elif self.kind == "diagonal":
            r = Fraction(self.r)
            if r <= 0:
                raise DomainError("diagonal exponent r must be positive")
            if self.space.kind != "sequence":
                raise DomainError("diagonal systems live over sequence spaces")
            object.__setattr__(self, "r", r)
        else:
            raise DomainError(f"unknown representation {self.kind!r}")

    @property
    def dim(self) -> int:
        """Ambient dimension (truncation bound for diagonal systems)."""
        if self.kind == "dense":
            return self.analysis.shape[1]
        return self.space.size

    @property
    def ambient_offset(self) -> int:
        return 0 if self.kind == "dense" else 1

    @property
    def diagonal_weights(self) -> np.ndarray:
        if self.kind != "diagonal":
            raise UnsupportedRepresentationError("system is not diagonal")
        n = np.arange(1, self.space.size + 1, dtype=float)
        if self.r.denominator == 1:
            return n ** self.r.numerator
        return n ** float(self.r)

    def analysis_matrix(self) -> np.ndarray:
        if self.kind == "dense":
            return self.analysis
        return np.diag(self.diagonal_weights).astype(complex)

    def synthesis_matrix(self) -> np.ndarray:
        if self.kind == "dense":
            return self.synthesis
        return np.diag(1.0 / self.diagonal_weights).astype(complex)

    def zero_vector(self) -> Vector:
        return Vector(self.dim, {}, field=self.field, offset=self.ambient_offset)


@dataclass(frozen=True, eq=False)
class CoefficientFunction:
    """alpha -> f_alpha(x), with entries at or below ``tol`` dropped."""

    space: MeasureSpace
    values: dict[int, complex] = field(default_factory=dict)
    tol: float = 0.0

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.space.size, dtype=complex)
        for k, v in self.values.items():
            out[k - self.space.offset] = v
        return out

    def as_vector(self) -> Vector:
        return Vector(self.space.size, self.values, offset=self.space.offset)


@dataclass(frozen=True)
class TailDescriptor:
    """Decay of a sequence: finitely supported or a_n = C * n**(-s) for n >= onset."""

    kind: str = "finite_support"
    C: float = 1.0
    s: float = 0.0
    onset: int = 1

    def __post_init__(self):
        if self.kind not in ("finite_support", "power_law"):
            raise DomainError(f"unknown tail kind {self.kind!r}")
        if self.kind == "power_law" and (self.C <= 0 or self.onset < 1):
            raise DomainError("power law needs C > 0 and onset >= 1")

    @classmethod
    def finite(cls) -> "TailDescriptor":
        return cls("finite_support")

    @classmethod
    def power_law(cls, C: float, s: float, onset: int = 1) -> "TailDescriptor":
        return cls("power_law", float(C), float(s), int(onset))


def support_threshold(values: np.ndarray, tol: float) -> float:
    peak = float(np.max(np.abs(values))) if values.size else 0.0
    return max(tol * peak, SUPPORT_FLOOR)


def check_ambient(sys: FrameSystem, x: Vector) -> None:
    if x.dim != sys.dim or x.offset != sys.ambient_offset:
        lo = sys.ambient_offset
        raise DomainError(
            f"vector over {x.offset}..{x.offset + x.dim - 1} does not match the "
            f"system's ambient range {lo}..{lo + sys.dim - 1}")


def analyze(sys: FrameSystem, x: Vector, tol: float = DEFAULT_SUPPORT_TOL) -> CoefficientFunction:
    """Coefficients ``f_alpha(x)``; magnitudes at or below
    ``max(tol * max|f_alpha(x)|, 1e-300)`` are recorded as zero."""
    check_ambient(sys, x)
    if sys.kind == "diagonal":
        w = sys.diagonal_weights
        vals = {k: w[k - 1] * v for k, v in x.entries.items()}
        mags = np.abs(np.fromiter(vals.values(), dtype=complex, count=len(vals)))
        thr = support_threshold(mags, tol)
        kept = {k: v for k, v in vals.items() if abs(v) > thr}
        return CoefficientFunction(sys.space, kept, thr)
    coeffs = sys.analysis @ x.to_array()
    thr = support_threshold(coeffs, tol)
    keep = np.flatnonzero(np.abs(coeffs) > thr)
    return CoefficientFunction(sys.space, {int(i): complex(coeffs[i]) for i in keep}, thr)


def synthesize(sys: FrameSystem, c: CoefficientFunction) -> Vector:
    """The weighted sum ``sum_a mu(a) c(a) tau_a``."""
    if c.space != sys.space:
        raise DomainError("coefficient function lives on a different index space")
    if sys.kind == "diagonal":
        w = sys.diagonal_weights
        mu = sys.space
        out = {}
        for k, v in c.values.items():
            out[k] = v / w[k - 1] if mu.is_counting else mu.weight(k) * v / w[k - 1]
        return Vector(sys.dim, out, field=_field_of(out, sys.field), offset=1)
    coeffs = c.to_array() * sys.space.weight_array()
    y = sys.synthesis @ coeffs
    if sys.field == "real":
        y = y.real
    return Vector.from_array(y, field=sys.field)


def _field_of(entries: dict, default: str) -> str:
    if default == "real" and all(complex(v).imag == 0 for v in entries.values()):
        return "real"
    return "complex"


def reconstruction_deviation(sys: FrameSystem) -> float:
    if sys.kind == "diagonal":
        return 0.0
    comp = sys.synthesis @ (sys.space.weight_array()[:, None] * sys.analysis)
    return float(np.max(np.abs(comp - np.eye(sys.dim))))


def is_reconstructing(sys: FrameSystem, tol: float = 1e-9) -> tuple[bool, float]:
    """Check ``synthesize(analyze(e_k)) == e_k`` for every basis vector.

    By linearity this is the composite ``T diag(mu) A`` against the identity.
    Diagonal systems reconstruct by construction.

    Returns
    -------
    (bool, float)
        Whether the worst entry deviation is within ``tol``, and that deviation.
    """
    dev = reconstruction_deviation(sys)
    return dev <= tol, dev


def in_domain(sys: FrameSystem, tail: TailDescriptor) -> bool:
    """Whether a sequence with the given tail has an analysis image in l^p.

    For w_n = n**r and a_n ~ C n**(-s), |w_n a_n|**p ~ n**(p (r - s)) which is
    summable iff p (r - s) < -1; for p = inf the image is bounded iff r <= s.
    """
    if sys.kind != "diagonal":
        raise UnsupportedRepresentationError(
            "domain checks are defined for diagonal systems only")
    if tail.kind == "finite_support":
        return True
    r = float(sys.r)
    if sys.p.is_infinite:
        return r - tail.s <= 0
    return sys.p.value * (r - tail.s) < -1


def identity_system(n: int, field: str = "real", p="1", weights=None) -> FrameSystem:
    I = np.eye(n)
    return FrameSystem(MeasureSpace.finite(n, weights), as_exponent(p), field,
                       "dense", I, I)


def diagonal_system(r, truncation: int, p="1", field: str = "real") -> FrameSystem:
    if isinstance(r, float):
        r = Fraction(r).limit_denominator(10**6)
    if not math.isfinite(float(r)):
        raise DomainError("r must be finite")
    return FrameSystem(MeasureSpace.sequence(truncation), as_exponent(p), field,
                       "diagonal", r=Fraction(r))
