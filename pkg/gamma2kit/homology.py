"""Exact arithmetic in H_1(N_g; Z) = Z^g / <(2, ..., 2)>.

Classes are stored in canonical form: the first coordinate lies in {0, 1}.
The basis vector c_i is the class of the core curve of the i-th crosscap.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import galois

from gamma2kit.errors import DimensionError, GenusError, SidednessError
from gamma2kit.linalg import GF2


def validate_genus(genus: int, minimum: int = 2) -> int:
    if not isinstance(genus, int) or isinstance(genus, bool):
        raise GenusError(f"genus must be an integer, got {genus!r}")
    if genus < minimum:
        raise GenusError(f"genus {genus} is below the minimum {minimum}")
    return genus


@dataclass(frozen=True)
class CurveIndex:
    """Index set I of the standard curve alpha_I."""

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.indices:
            raise DimensionError("curve index set must be nonempty")
        if any(not isinstance(i, int) or i < 1 for i in self.indices):
            raise DimensionError(f"curve indices are 1-based positive integers: {self.indices}")
        if any(a >= b for a, b in zip(self.indices, self.indices[1:])):
            raise DimensionError(f"curve indices must be strictly increasing: {self.indices}")

    @classmethod
    def of(cls, indices: Iterable[int]) -> CurveIndex:
        return cls(tuple(sorted(set(indices))))

    @property
    def size(self) -> int:
        return len(self.indices)

    @property
    def two_sided(self) -> bool:
        return self.size % 2 == 0

    @property
    def top(self) -> int:
        return self.indices[-1]

    def without(self, index: int) -> CurveIndex:
        return CurveIndex(tuple(i for i in self.indices if i != index))

    def issubset(self, other: CurveIndex) -> bool:
        return set(self.indices) <= set(other.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __contains__(self, index: object) -> bool:
        return index in self.indices

    def __str__(self) -> str:
        return ",".join(str(i) for i in self.indices)


@dataclass(frozen=True)
class HomClass:
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise DimensionError("homology classes need at least one coordinate")
        shift = self.coeffs[0] // 2
        if shift:
            object.__setattr__(self, "coeffs", tuple(int(v) - 2 * shift for v in self.coeffs))
        else:
            object.__setattr__(self, "coeffs", tuple(int(v) for v in self.coeffs))

    @property
    def genus(self) -> int:
        return len(self.coeffs)

    def _check_same_genus(self, other: HomClass) -> None:
        if other.genus != self.genus:
            raise DimensionError(f"classes live in different genera: {self.genus} and {other.genus}")

    def __add__(self, other: HomClass) -> HomClass:
        self._check_same_genus(other)
        return HomClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: HomClass) -> HomClass:
        self._check_same_genus(other)
        return HomClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> HomClass:
        return HomClass(tuple(-a for a in self.coeffs))

    def __mul__(self, scalar: int) -> HomClass:
        return HomClass(tuple(scalar * a for a in self.coeffs))

    __rmul__ = __mul__

    def to_json(self) -> list[str]:
        return [str(v) for v in self.coeffs]


def canonical(raw: Sequence[int], genus: int) -> HomClass:
    if len(raw) != genus:
        raise DimensionError(f"expected {genus} coordinates, got {len(raw)}")
    return HomClass(tuple(int(v) for v in raw))


def basis_class(index: int, genus: int) -> HomClass:
    if not 1 <= index <= genus:
        raise DimensionError(f"basis index {index} outside 1..{genus}")
    return HomClass(tuple(1 if i == index else 0 for i in range(1, genus + 1)))


def curve_class(curve: CurveIndex, genus: int) -> HomClass:
    """a_I = sum of c_i over i in I."""
    if curve.top > genus:
        raise DimensionError(f"curve {{{curve}}} does not fit in genus {genus}")
    return HomClass(tuple(1 if i in curve else 0 for i in range(1, genus + 1)))


def torsion_class(genus: int) -> HomClass:
    return HomClass((1,) * genus)


def mod2(x: HomClass) -> galois.FieldArray:
    return GF2([v % 2 for v in x.coeffs])


def intersect_mod2(x: HomClass, y: HomClass) -> int:
    """Z/2 intersection form with c_i . c_j = delta_ij."""
    x._check_same_genus(y)
    return sum(a * b for a, b in zip(x.coeffs, y.coeffs)) % 2


def iota_row(curve: CurveIndex, genus: int) -> tuple[int, ...]:
    """Coefficients of the integral functional iota(J, .) in the basis c_1..c_g."""
    if not curve.two_sided:
        raise SidednessError(f"alpha_{{{curve}}} is one-sided; iota needs an even index set")
    if curve.top > genus:
        raise DimensionError(f"curve {{{curve}}} does not fit in genus {genus}")
    row = [0] * genus
    for r, j in enumerate(curve.indices, start=1):
        row[j - 1] = (-1) ** r
    return tuple(row)


def iota(curve: CurveIndex, x: HomClass) -> int:
    row = iota_row(curve, x.genus)
    return sum(a * b for a, b in zip(row, x.coeffs))


def iota_curve(support: CurveIndex, core: CurveIndex) -> int:
    """iota(J, a_I) computed from the index sets alone (genus independent)."""
    return sum((-1) ** r for r, j in enumerate(support.indices, start=1) if j in core)


def project_R(x: HomClass) -> tuple[int, ...]:
    """Coordinates in R_g = H_1 / <c> with respect to the images of c_1..c_{g-1}."""
    last = x.coeffs[-1]
    return tuple(v - last for v in x.coeffs[:-1])


def recover_mod2(projected: Sequence[int], last_parity: int) -> galois.FieldArray:
    """mod2(x) from project_R(x) and the parity of the g-th raw coordinate."""
    return GF2([(v + last_parity) % 2 for v in projected] + [last_parity % 2])
