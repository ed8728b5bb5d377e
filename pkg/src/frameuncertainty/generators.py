"""Constructors for the frame families used by the checks, tests and CLI."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .frames import FrameSystem, diagonal_system, identity_system
from .spaces import ConstructionError, MeasureSpace, as_exponent

FAMILIES = ("identity", "dft_pair", "random_reconstructing", "random_parseval",
            "unbounded_diagonal", "reweighted")

MAX_CONDITION = 1e6


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    field: str = "complex"
    p: str = "1"
    seed: int = 0
    m: int | None = None
    r: Fraction = Fraction(1)
    weights: tuple[float, ...] | None = None
    base: "GeneratorSpec | None" = None


def dft_matrix(n: int) -> np.ndarray:
    """Unitary DFT, entry (k, j) = exp(-2 pi i j k / n) / sqrt(n)."""
    k = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(k, k) / n) / np.sqrt(n)


def dft_system(n: int, p="1") -> FrameSystem:
    F = dft_matrix(n)
    return FrameSystem(MeasureSpace.finite(n), as_exponent(p), "complex", "dense",
                       F, F.conj().T)


def dft_pair(n: int, p="1") -> tuple[FrameSystem, FrameSystem]:
    return identity_system(n, "complex", p), dft_system(n, p)


def _gaussian(rng: np.random.Generator, shape, field: str) -> np.ndarray:
    if field == "real":
        return rng.standard_normal(shape)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_reconstructing(n: int, seed: int = 0, field: str = "complex", p="1",
                          rng: np.random.Generator | None = None) -> FrameSystem:
    """Random invertible synthesis matrix; analysis rows are its inverse."""
    rng = np.random.default_rng(seed) if rng is None else rng
    while True:
        T = _gaussian(rng, (n, n), field)
        if np.linalg.cond(T) <= MAX_CONDITION:
            break
    A = np.linalg.inv(T)
    if field == "real":
        A, T = A.real, T.real
    return FrameSystem(MeasureSpace.finite(n), as_exponent(p), field, "dense", A, T)


def random_parseval(n: int, m: int, seed: int = 0, field: str = "complex", p="2",
                    rng: np.random.Generator | None = None) -> FrameSystem:
    """m >= n frame vectors in K^n with T T^* = I (rows of T orthonormal)."""
    if m < n:
        raise ConstructionError(f"a Parseval frame for dimension {n} needs m >= n vectors")
    rng = np.random.default_rng(seed) if rng is None else rng
    Q, _ = np.linalg.qr(_gaussian(rng, (n, m), field).conj().T)
    T = Q.conj().T
    return FrameSystem(MeasureSpace.finite(m), as_exponent(p), field, "dense",
                       T.conj().T, T)


def reweighted(base: FrameSystem, weights) -> FrameSystem:
    """Swap the index measure for ``weights`` and divide each synthesis vector
    by its weight, so the weighted sum still reconstructs."""
    if base.kind != "dense":
        raise ConstructionError("reweighting is implemented for dense systems")
    space = base.space.with_weights(weights)
    w = space.weight_array() / base.space.weight_array()
    return FrameSystem(space, base.p, base.field, "dense",
                       base.analysis, base.synthesis / w[None, :])


def make(spec: GeneratorSpec):
    """Build the system (or ``(identity, dft)`` pair) described by ``spec``."""
    f = spec.family
    if spec.field not in ("real", "complex"):
        raise ConstructionError(f"unknown field {spec.field!r}")
    if f == "identity":
        return identity_system(spec.n, spec.field, spec.p)
    if f == "dft_pair":
        if spec.field != "complex":
            raise ConstructionError("dft_pair requires the complex field")
        return dft_pair(spec.n, spec.p)
    if f == "random_reconstructing":
        return random_reconstructing(spec.n, spec.seed, spec.field, spec.p)
    if f == "random_parseval":
        return random_parseval(spec.n, spec.m or spec.n, spec.seed, spec.field, spec.p)
    if f == "unbounded_diagonal":
        return diagonal_system(Fraction(spec.r), spec.n, spec.p, spec.field)
    if f == "reweighted":
        if spec.base is None or spec.weights is None:
            raise ConstructionError("reweighted needs a base spec and weights")
        built = make(spec.base)
        if isinstance(built, tuple):
            return tuple(reweighted(s, spec.weights) for s in built)
        return reweighted(built, spec.weights)
    raise ConstructionError(f"unknown family {f!r}")


def validate_parseval(sys: FrameSystem, tol: float = 1e-10) -> tuple[bool, float]:
    """Check sum_j tau_j tau_j^* = I and return the max entry deviation."""
    T = sys.synthesis_matrix()
    dev = float(np.max(np.abs(T @ T.conj().T - np.eye(T.shape[0]))))
    return dev <= tol, dev


def seed_stream(seed: int, count: int) -> list[np.random.Generator]:
    """Independent generators derived from one seed."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


DEMOS = {
    "identity": "identity system paired with itself",
    "dft-pair": "identity paired with the unitary DFT (complex)",
    "random": "two seeded random reconstructing systems",
    "random-parseval": "two seeded random Parseval frames with m vectors",
    "unbounded-diagonal": "f_n = n^r zeta_n, tau_n = e_n / n^r paired with itself",
}


def demo_pair(name: str, n: int, seed: int = 0, p="1", m: int | None = None,
              r=1, field: str = "complex") -> tuple[FrameSystem, FrameSystem]:
    if name == "identity":
        s = identity_system(n, field, p)
        return s, s
    if name == "dft-pair":
        return dft_pair(n, p)
    if name == "random":
        g1, g2 = seed_stream(seed, 2)
        return (random_reconstructing(n, field=field, p=p, rng=g1),
                random_reconstructing(n, field=field, p=p, rng=g2))
    if name == "random-parseval":
        g1, g2 = seed_stream(seed, 2)
        m = m or n
        return (random_parseval(n, m, field=field, p=p, rng=g1),
                random_parseval(n, m, field=field, p=p, rng=g2))
    if name == "unbounded-diagonal":
        s = diagonal_system(Fraction(r), n, p, field)
        return s, s
    raise ConstructionError(f"unknown demo {name!r}; try one of {', '.join(DEMOS)}")
