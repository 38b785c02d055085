from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator, Optional

from gamma2kit.errors import (
    GenusError,
    LetterConstraintError,
    SidednessError,
    SlideConfigurationError,
)
from gamma2kit.homology import CurveIndex, iota_curve, validate_genus


class LetterKind(str, Enum):
    A = "A"
    B = "B"
    TWIST = "T"
    SLIDE = "Y"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    PLAIN = "plain"


class VerifyStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"


B_SUPPORT = CurveIndex((1, 2, 3, 4))
Y_CORE = CurveIndex((1,))
Y_SUPPORT = CurveIndex((1, 2))


@dataclass(frozen=True)
class Letter:
    """One generator letter.

    ``support`` is the two-sided curve J (the twist curve, or the curve a slide
    pushes along); ``core`` is the one-sided curve I a slide moves.
    """

    kind: LetterKind
    support: CurveIndex
    core: Optional[CurveIndex] = None

    def __post_init__(self) -> None:
        if self.kind == LetterKind.SLIDE:
            self._check_slide()
            return
        if not self.support.two_sided:
            raise SidednessError(f"alpha_{{{self.support}}} is one-sided; it has odd support")
        if self.kind == LetterKind.A:
            i = self.support.indices[0]
            if self.support.indices != (i, i + 1):
                raise LetterConstraintError(f"A letters twist along alpha_{{i,i+1}}, got {{{self.support}}}")
        if self.kind == LetterKind.B and self.support != B_SUPPORT:
            raise LetterConstraintError("B twists along alpha_{1,2,3,4}")
        if self.core is not None:
            raise LetterConstraintError(f"{self.kind.value} letters carry no core curve")

    def _check_slide(self) -> None:
        core = self.core
        if core is None:
            raise SlideConfigurationError("a crosscap slide needs a one-sided core curve")
        if not self.support.two_sided:
            raise SlideConfigurationError(f"slide support alpha_{{{self.support}}} must be two-sided (even size)")
        if not core.issubset(self.support):
            raise SlideConfigurationError(f"core {{{core}}} is not contained in {{{self.support}}}")
        if core.two_sided:
            raise SlideConfigurationError(f"core alpha_{{{core}}} must be one-sided (odd size)")
        if abs(iota_curve(self.support, core)) != 1:
            raise SlideConfigurationError(
                f"alpha_{{{core}}} does not meet alpha_{{{self.support}}} once: iota = {iota_curve(self.support, core)}"
            )

    @classmethod
    def a(cls, index: int) -> Letter:
        return cls(LetterKind.A, CurveIndex((index, index + 1)))

    @classmethod
    def b(cls) -> Letter:
        return cls(LetterKind.B, B_SUPPORT)

    @classmethod
    def twist(cls, indices: tuple[int, ...]) -> Letter:
        return cls(LetterKind.TWIST, CurveIndex(indices))

    @classmethod
    def slide(cls, core: tuple[int, ...], support: tuple[int, ...]) -> Letter:
        return cls(LetterKind.SLIDE, CurveIndex(support), CurveIndex(core))

    @classmethod
    def y(cls) -> Letter:
        return cls(LetterKind.SLIDE, Y_SUPPORT, Y_CORE)

    @property
    def key(self) -> tuple[CurveIndex, Optional[CurveIndex]]:
        """Letters sharing a key are the same mapping class, e.g. A1 and T[1,2]."""
        return self.support, self.core

    @property
    def is_slide(self) -> bool:
        return self.kind == LetterKind.SLIDE

    def validate(self, genus: int) -> None:
        if self.kind == LetterKind.B and genus < 4:
            raise GenusError(f"B needs genus at least 4, got {genus}")
        if self.support.top > genus:
            raise LetterConstraintError(f"{self.label()} uses crosscap {self.support.top} but the genus is {genus}")

    def label(self) -> str:
        if self.kind == LetterKind.A:
            return f"A{self.support.indices[0]}"
        if self.kind == LetterKind.B:
            return "B"
        if self.kind == LetterKind.TWIST:
            return f"T[{self.support}]"
        return f"Y[{self.core};{self.support}]"


Syllable = tuple[Letter, int]


@dataclass(frozen=True)
class Word:
    """Formal word; the leftmost syllable acts last."""

    genus: int
    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self) -> None:
        validate_genus(self.genus)
        for letter, exponent in self.syllables:
            if not isinstance(exponent, int) or exponent == 0:
                raise LetterConstraintError(f"{letter.label()} has invalid exponent {exponent!r}")
            letter.validate(self.genus)

    @classmethod
    def of(cls, genus: int, *letters: Letter) -> Word:
        return cls(genus, tuple((letter, 1) for letter in letters))

    def __iter__(self) -> Iterator[Syllable]:
        return iter(self.syllables)

    def __len__(self) -> int:
        return len(self.syllables)

    @property
    def is_empty(self) -> bool:
        return not self.syllables

    def letters(self) -> set[Letter]:
        return {letter for letter, _ in self.syllables}

    def __mul__(self, other: Word) -> Word:
        from gamma2kit.words import multiply

        return multiply(self, other)

    def __pow__(self, exponent: int) -> Word:
        from gamma2kit.words import power

        return power(self, exponent)


class STULetter(str, Enum):
    S = "S"
    T = "T"
    U = "U"


@dataclass(frozen=True)
class STUWord:
    syllables: tuple[tuple[STULetter, int], ...] = ()

    def __iter__(self) -> Iterator[tuple[STULetter, int]]:
        return iter(self.syllables)

    def __len__(self) -> int:
        return len(self.syllables)


@dataclass(frozen=True)
class Catalog:
    genus: int
    type1: tuple[Word, ...]
    type2: tuple[Word, ...]
    alternative: bool = False

    @property
    def size(self) -> int:
        return len(self.type1) + len(self.type2)

    def elements(self) -> list[Word]:
        return list(self.type1) + list(self.type2)

    def labels(self) -> list[str]:
        from gamma2kit.words import format_word

        return [format_word(word) for word in self.elements()]


@dataclass(frozen=True)
class RankCertificate:
    genus: int
    rank: int
    witness: tuple[int, ...]
    catalog_size: int
    type1_rank: int
    type2_in_type1_span: tuple[bool, ...]

    @property
    def target(self) -> int:
        return (self.genus - 1) ** 2


@dataclass
class VerifyReport:
    name: str
    params: tuple[Any, ...]
    observed: bool
    expected: bool = True
    comparison: str = "exact"
    witness: Optional[dict[str, Any]] = None
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> VerifyStatus:
        return VerifyStatus.PASS if self.observed == self.expected else VerifyStatus.FAIL

    @property
    def passed(self) -> bool:
        return self.status == VerifyStatus.PASS

    def sort_key(self) -> tuple[str, str]:
        return self.name, repr(self.params)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "name": self.name,
            "params": [_jsonable(p) for p in self.params],
            "status": self.status.value,
            "expected": self.expected,
            "observed": self.observed,
            "comparison": self.comparison,
        }
        if self.detail:
            data["detail"] = self.detail
        if not self.passed and self.witness is not None:
            data["witness"] = self.witness
        return data


def _jsonable(value: Any) -> Any:
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    return str(value)
