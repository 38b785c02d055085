"""Action of mapping classes on H_1(N_g; Z) and its quotients.

Matrices act on column vectors; column k is the image of c_k. A word is
evaluated by multiplying letter matrices in written order, so the rightmost
letter acts first.

Twist along alpha_J:  x -> x + iota(J, x) a_J
Slide Y[I; J]:        x -> x - 2 iota(J, a_I) iota(J, x) a_I
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import galois
import numpy as np

from gamma2kit.errors import DimensionError, NotLevel2Error
from gamma2kit.homology import (
    CurveIndex,
    HomClass,
    canonical,
    curve_class,
    iota_curve,
    iota_row,
    validate_genus,
)
from gamma2kit.linalg import (
    GF2,
    IntMatrix,
    congruent_to_identity_mod2,
    determinant,
    equal,
    exact_inverse,
    identity,
    int_matrix,
    matmul,
    matrix_power,
    reduce_mod2,
    to_decimal_rows,
)
from gamma2kit.models import Letter, LetterKind, Word


@dataclass(frozen=True, eq=False)
class HomAction:
    genus: int
    mat: IntMatrix

    def __post_init__(self) -> None:
        if self.mat.shape != (self.genus, self.genus):
            raise DimensionError(f"expected a {self.genus}x{self.genus} matrix, got {self.mat.shape}")

    @classmethod
    def identity(cls, genus: int) -> HomAction:
        return cls(genus, identity(genus))

    def _check_genus(self, other: HomAction) -> None:
        if other.genus != self.genus:
            raise DimensionError(f"actions on different genera: {self.genus} and {other.genus}")

    def __matmul__(self, other: HomAction) -> HomAction:
        self._check_genus(other)
        return HomAction(self.genus, matmul(self.mat, other.mat))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomAction):
            return NotImplemented
        return self.genus == other.genus and equal(self.mat, other.mat)

    __hash__ = None  # type: ignore[assignment]

    def apply(self, x: HomClass) -> HomClass:
        if x.genus != self.genus:
            raise DimensionError(f"class of genus {x.genus} under an action of genus {self.genus}")
        image = np.dot(self.mat, np.array(x.coeffs, dtype=object))
        return canonical([int(v) for v in image], self.genus)

    def inverse(self) -> HomAction:
        return HomAction(self.genus, exact_inverse(self.mat))

    def power(self, exponent: int) -> HomAction:
        return HomAction(self.genus, matrix_power(self.mat, exponent))

    def determinant(self) -> int:
        return determinant(self.mat)

    def fixes_torsion(self) -> bool:
        ones = np.array([1] * self.genus, dtype=object)
        return bool(np.all(np.dot(self.mat, ones) == ones))

    def mod2(self) -> galois.FieldArray:
        return reduce_mod2(self.mat)

    def is_level2(self) -> bool:
        return congruent_to_identity_mod2(self.mat)

    def preserves_mod2_form(self) -> bool:
        """c_i . c_j = delta_ij is preserved iff M^T M = I over Z/2."""
        reduced = self.mod2()
        return bool(np.array_equal(reduced.T @ reduced, GF2.Identity(self.genus)))

    def canonical_columns(self) -> tuple[HomClass, ...]:
        return tuple(canonical([int(v) for v in self.mat[:, k]], self.genus) for k in range(self.genus))

    def same_on_homology(self, other: HomAction) -> bool:
        """Equality of the induced automorphisms of Z^g / <(2, ..., 2)>."""
        self._check_genus(other)
        return self.canonical_columns() == other.canonical_columns()

    def to_rows(self) -> list[list[str]]:
        return to_decimal_rows(self.mat)


def _transvection(genus: int, vector: HomClass, row: tuple[int, ...], scale: int) -> HomAction:
    coeffs = vector.coeffs
    return HomAction(
        genus,
        int_matrix(
            [[(1 if r == c else 0) + scale * coeffs[r] * row[c] for c in range(genus)] for r in range(genus)]
        ),
    )


def twist_action(curve: CurveIndex, genus: int, power: int = 1) -> HomAction:
    validate_genus(genus)
    row = iota_row(curve, genus)
    return _transvection(genus, curve_class(curve, genus), row, power)


def slide_action(core: CurveIndex, support: CurveIndex, genus: int, power: int = 1) -> HomAction:
    validate_genus(genus)
    letter = Letter(LetterKind.SLIDE, support, core)
    letter.validate(genus)
    if power % 2 == 0:
        return HomAction.identity(genus)
    sign = iota_curve(support, core)
    return _transvection(genus, curve_class(core, genus), iota_row(support, genus), -2 * sign)


@lru_cache(maxsize=4096)
def letter_action(letter: Letter, genus: int, exponent: int = 1) -> HomAction:
    letter.validate(genus)
    if letter.is_slide:
        assert letter.core is not None
        return slide_action(letter.core, letter.support, genus, exponent)
    return twist_action(letter.support, genus, exponent)


def evaluate(word: Word) -> HomAction:
    result = HomAction.identity(word.genus)
    for letter, exponent in word:
        result = result @ letter_action(letter, word.genus, exponent)
    return result


def project_action(action: HomAction) -> IntMatrix:
    """The induced map on R_g in the basis of the images of c_1..c_{g-1}."""
    g = action.genus
    projection = int_matrix([[1 if c == r else (-1 if c == g - 1 else 0) for c in range(g)] for r in range(g - 1)])
    inclusion = int_matrix([[1 if c == r else 0 for c in range(g - 1)] for r in range(g)])
    return matmul(matmul(projection, action.mat), inclusion)


def rho(word: Word) -> IntMatrix:
    return project_action(evaluate(word))


def is_level2(word: Word) -> bool:
    return evaluate(word).is_level2()


def eta(word: Word) -> IntMatrix:
    action = evaluate(word)
    if not action.is_level2():
        raise NotLevel2Error("word does not act trivially on H_1(N_g; Z/2)")
    return project_action(action)


def f_map(matrix: IntMatrix) -> galois.FieldArray:
    """X = I + 2A  ->  A mod 2."""
    if not congruent_to_identity_mod2(matrix):
        raise NotLevel2Error("matrix is not congruent to the identity mod 2")
    n = matrix.shape[0]
    half = [[((matrix[r, c] - (1 if r == c else 0)) // 2) % 2 for c in range(n)] for r in range(n)]
    return GF2(np.array(half, dtype=np.int64))


def f_eta(word: Word) -> galois.FieldArray:
    return f_map(eta(word))
