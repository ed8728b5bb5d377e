"""Index sets with atomic measures, exponents, and sparse vectors.

Everything here is immutable once built.  Finite index sets run over
``0..n-1``; truncated sequence spaces run over ``1..N``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np


class DomainError(ValueError):
    """An index, dimension or space does not match what an operation expects."""


class PreconditionError(ValueError):
    """A documented precondition of a check is not met."""


class CapacityError(ValueError):
    """Input size exceeds an enumeration cap."""


class UnsupportedRepresentationError(TypeError):
    """Operation is not defined for the system's representation."""


class ConstructionError(ValueError):
    """Invalid generator specification."""


FIELDS = ("real", "complex")


@dataclass(frozen=True)
class Exponent:
    """An exponent p in [1, inf].  ``value is None`` encodes p = inf."""

    value: float | None

    def __post_init__(self):
        if self.value is not None:
            v = float(self.value)
            if not math.isfinite(v) or v < 1:
                raise DomainError(f"exponent must be >= 1 or inf, got {self.value!r}")
            object.__setattr__(self, "value", v)

    @classmethod
    def parse(cls, p) -> "Exponent":
        if isinstance(p, Exponent):
            return p
        if isinstance(p, str):
            s = p.strip().lower()
            if s in ("inf", "infinity", "+inf"):
                return cls(None)
            try:
                p = float(s)
            except ValueError:
                raise DomainError(f"cannot parse exponent {p!r}") from None
        if isinstance(p, (int, float)) and math.isinf(p) and p > 0:
            return cls(None)
        return cls(p)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def conjugate(self) -> "Exponent":
        if self.value is None:
            return Exponent(1.0)
        if self.value == 1.0:
            return Exponent(None)
        return Exponent(self.value / (self.value - 1.0))

    def __float__(self) -> float:
        return math.inf if self.value is None else self.value

    def __str__(self) -> str:
        if self.value is None:
            return "inf"
        return format(self.value, "g")


def as_exponent(p) -> Exponent:
    return Exponent.parse(p)


@dataclass(frozen=True, eq=False)
class MeasureSpace:
    """A finite or truncated-sequence index set with strictly positive atoms.

    ``weights`` is None for counting measure.
    """

    kind: str
    size: int
    weights: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("finite", "sequence"):
            raise DomainError(f"unknown measure space kind {self.kind!r}")
        if int(self.size) != self.size or self.size < 1:
            raise DomainError(f"size must be a positive integer, got {self.size!r}")
        object.__setattr__(self, "size", int(self.size))
        if self.weights is not None:
            w = np.array(self.weights, dtype=float).reshape(-1)
            if w.shape[0] != self.size:
                raise DomainError(
                    f"expected {self.size} weights, got {w.shape[0]}")
            if not np.all(np.isfinite(w)) or np.any(w <= 0):
                raise DomainError("weights must be strictly positive and finite")
            w.setflags(write=False)
            object.__setattr__(self, "weights", w)

    @classmethod
    def finite(cls, n: int, weights=None) -> "MeasureSpace":
        return cls("finite", n, weights)

    @classmethod
    def sequence(cls, truncation: int, weights=None) -> "MeasureSpace":
        return cls("sequence", truncation, weights)

    @property
    def offset(self) -> int:
        return 0 if self.kind == "finite" else 1

    @property
    def is_counting(self) -> bool:
        return self.weights is None

    def indices(self) -> range:
        return range(self.offset, self.offset + self.size)

    def contains(self, index: int) -> bool:
        return self.offset <= index < self.offset + self.size

    def weight_array(self) -> np.ndarray:
        """Dense weight array aligned with positions ``0..size-1``."""
        if self.weights is None:
            return np.ones(self.size)
        return self.weights

    def weight(self, index: int) -> float:
        if not self.contains(index):
            raise DomainError(f"index {index} outside {self.describe()}")
        if self.weights is None:
            return 1.0
        return float(self.weights[index - self.offset])

    def with_weights(self, weights) -> "MeasureSpace":
        return MeasureSpace(self.kind, self.size, weights)

    def describe(self) -> str:
        lo = self.offset
        return f"{self.kind} space with indices {lo}..{lo + self.size - 1}"

    def __eq__(self, other):
        if not isinstance(other, MeasureSpace):
            return NotImplemented
        if (self.kind, self.size) != (other.kind, other.size):
            return False
        return np.array_equal(self.weight_array(), other.weight_array())

    def __hash__(self):
        return hash((self.kind, self.size, self.weight_array().tobytes()))


def measure_of(space: MeasureSpace, subset: Iterable[int]) -> float:
    """Sum of the weights of ``subset``; 0.0 for the empty set."""
    total = 0.0
    for i in sorted(set(subset)):
        total += space.weight(i)
    return total


@dataclass(frozen=True, eq=False)
class Vector:
    """Sparse vector: absent indices are exact zeros.

    Valid indices are ``offset .. offset + dim - 1``.
    """

    dim: int
    entries: Mapping[int, complex] = field(default_factory=dict)
    field: str = "complex"
    offset: int = 0

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise DomainError(f"dim must be a positive integer, got {self.dim!r}")
        if self.field not in FIELDS:
            raise DomainError(f"unknown field {self.field!r}")
        clean = {}
        for k, v in self.entries.items():
            k = int(k)
            if not self.offset <= k < self.offset + self.dim:
                raise DomainError(
                    f"index {k} out of range {self.offset}..{self.offset + self.dim - 1}")
            v = complex(v)
            if self.field == "real" and v.imag != 0:
                raise DomainError(f"real vector has complex entry at index {k}")
            if v != 0:
                clean[k] = v
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    @classmethod
    def from_array(cls, arr, field: str | None = None, offset: int = 0) -> "Vector":
        a = np.asarray(arr).reshape(-1)
        if field is None:
            field = "complex" if np.iscomplexobj(a) and np.any(a.imag != 0) else "real"
        nz = np.flatnonzero(a)
        return cls(a.shape[0], {int(i) + offset: complex(a[i]) for i in nz},
                   field=field, offset=offset)

    @classmethod
    def basis(cls, dim: int, k: int, field: str = "real", offset: int = 0) -> "Vector":
        return cls(dim, {k: 1.0}, field=field, offset=offset)

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.dim, dtype=complex)
        for k, v in self.entries.items():
            out[k - self.offset] = v
        return out

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def scale(self, c) -> "Vector":
        c = complex(c)
        fld = self.field if c.imag == 0 else "complex"
        return Vector(self.dim, {k: c * v for k, v in self.entries.items()},
                      field=fld, offset=self.offset)

    def __sub__(self, other: "Vector") -> "Vector":
        if (self.dim, self.offset) != (other.dim, other.offset):
            raise DomainError("vector index ranges differ")
        keys = set(self.entries) | set(other.entries)
        fld = "real" if self.field == other.field == "real" else "complex"
        return Vector(self.dim,
                      {k: self.entries.get(k, 0) - other.entries.get(k, 0) for k in keys},
                      field=fld, offset=self.offset)

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return ((self.dim, self.offset, self.entries)
                == (other.dim, other.offset, other.entries))

    def __hash__(self):
        return hash((self.dim, self.offset, tuple(self.entries.items())))


def _check_space(v_dim: int, v_offset: int, space: MeasureSpace) -> None:
    if v_dim != space.size or v_offset != space.offset:
        raise DomainError(
            f"vector over {v_offset}..{v_offset + v_dim - 1} does not match "
            f"{space.describe()}")


def lp_norm(v: Vector, p, space: MeasureSpace) -> float:
    """Weighted l^p norm; for p = inf the weights are ignored (essential sup)."""
    _check_space(v.dim, v.offset, space)
    p = as_exponent(p)
    if not v.entries:
        return 0.0
    idx = np.fromiter(v.entries, dtype=int) - space.offset
    mods = np.abs(np.fromiter(v.entries.values(), dtype=complex))
    if p.is_infinite:
        return float(mods.max())
    w = space.weight_array()[idx]
    peak = mods.max()
    # scaling by the peak keeps tiny or huge moduli from under/overflowing
    return float(peak * np.sum(w * (mods / peak) ** p.value) ** (1.0 / p.value))
