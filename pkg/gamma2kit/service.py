from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Any, Callable, Optional

import numpy as np

from gamma2kit.catalog import CATALOG_MIN_GENUS, catalog, catalog_alt, rank_certificate
from gamma2kit.config import Settings
from gamma2kit.gl2 import (
    decompose_gl2,
    level2_decompose,
    n3_equal,
    n3_is_trivial,
    random_gl2,
    random_level2,
    random_stu_word,
    stu_eval,
    stu_to_mcg,
)
from gamma2kit.homology import CurveIndex, HomClass, basis_class, curve_class, iota, iota_curve, validate_genus
from gamma2kit.linalg import IntMatrix, equal, is_identity, to_decimal_rows
from gamma2kit.models import Letter, RankCertificate, VerifyReport, Word
from gamma2kit.parser import parse_stu, parse_word
from gamma2kit.representation import (
    HomAction,
    evaluate,
    eta,
    f_eta,
    f_map,
    is_level2,
    letter_action,
    rho,
    slide_action,
    twist_action,
)
from gamma2kit.words import conjugate, format_word, free_reduce, inverse, random_word

logger = logging.getLogger(__name__)

EXACT = "exact"
ON_HOMOLOGY = "on-homology"
SAMPLED_SUBSETS = 64
B_CURVE = (1, 2, 3, 4)

EXCLUDED_ARGUMENTS = (
    "genus 4: the upper bound of 10 generators needs a presentation of M(N_4) and the "
    "abelianization of a kernel; only the lower bound 9 is certified here",
)
DEFERRED_IDENTITIES = (
    "squared twist along the boundary of a neighbourhood of two once-intersecting one-sided "
    "curves: the class of the second boundary curve is not determined, so no instance is checked",
)


@dataclass
class Outcome:
    holds: bool
    witness: Optional[dict[str, Any]] = None
    detail: dict[str, Any] = field(default_factory=dict)


@dataclass
class Family:
    name: str
    runner: Callable[[], list[VerifyReport]]
    min_genus: int = CATALOG_MIN_GENUS
    only_genus: Optional[int] = None

    def applies(self, genus: int) -> bool:
        if self.only_genus is not None:
            return genus == self.only_genus
        return genus >= self.min_genus


def compare_actions(left: HomAction, right: HomAction, comparison: str = EXACT) -> Outcome:
    holds = left == right if comparison == EXACT else left.same_on_homology(right)
    return Outcome(holds, {"left": left.to_rows(), "right": right.to_rows()})


def compare_matrices(left: IntMatrix, right: IntMatrix) -> Outcome:
    return Outcome(equal(left, right), {"left": to_decimal_rows(left), "right": to_decimal_rows(right)})


def compare_classes(left: HomClass, right: HomClass) -> Outcome:
    return Outcome(left == right, {"left": left.to_json(), "right": right.to_json()})


class VerificationService:
    def __init__(self, genus: int, seed: int = 0, settings: Optional[Settings] = None) -> None:
        self.genus = validate_genus(genus, minimum=CATALOG_MIN_GENUS)
        self.seed = seed
        self.settings = settings or Settings()
        self.catalog = catalog(genus)

    def header(self) -> dict[str, Any]:
        return {
            "genus": self.genus,
            "seed": self.seed,
            "exhaustive": self.genus <= self.settings.max_exhaustive_genus,
            "families": [family.name for family in self.families() if family.applies(self.genus)],
            "excluded": list(EXCLUDED_ARGUMENTS),
            "deferred": list(DEFERRED_IDENTITIES),
        }

    def families(self) -> list[Family]:
        return [
            Family("slide-involution", self._slide_involution),
            Family("slide-mod2-trivial", self._slide_mod2_trivial),
            Family("catalog-level2", self._catalog_level2),
            Family("twist-square-pair", self._twist_square_pair),
            Family("twist-square-quad", self._twist_square_quad, min_genus=4),
            Family("twist-square-quad-any-point", self._twist_square_quad_any_point, min_genus=4),
            Family("alt-generator-equivalence", self._alt_generator_equivalence, min_genus=4),
            Family("six-subset-slide", self._six_subset_slide, min_genus=6),
            Family("six-subset-halves", self._six_subset_halves, min_genus=6),
            Family("twist-carries-curve", self._twist_carries_curve),
            Family("type1-completion", self._type1_completion),
            Family("conjugation-shift", self._conjugation_shift, min_genus=5),
            Family("standard-curve-images", self._standard_curve_images),
            Family("b-curve-images", self._b_curve_images, min_genus=4),
            Family("normality-shadow", self._normality_shadow),
            Family("rho-generators", self._rho_generators, only_genus=3),
            Family("stu-relations", self._stu_relations, only_genus=3),
            Family("presentation-relations", self._presentation_relations, only_genus=3),
            Family("b-square-homology", self._b_square_homology, only_genus=4),
            Family("b-homology", self._b_homology, only_genus=4),
            Family("b-kernel-rho", self._b_kernel_rho, only_genus=4),
            Family("rank-certificate", self._rank_certificate),
            Family("type1-span-measured", self._type1_span_measured),
            Family("type2-in-type1-span", self._type2_in_type1_span, only_genus=4),
            Family("random-invariants", self._random_invariants),
            Family("random-free-reduce", self._random_free_reduce),
            Family("random-f-additivity", self._random_f_additivity),
            Family("word-problem-roundtrip", self._word_problem_roundtrip, only_genus=3),
            Family("level2-roundtrip", self._level2_roundtrip, only_genus=3),
        ]

    def run(self) -> list[VerifyReport]:
        reports: list[VerifyReport] = []
        for family in self.families():
            if not family.applies(self.genus):
                continue
            try:
                family_reports = family.runner()
            except Exception as exc:  # noqa: BLE001
                logger.exception("Family crashed", extra={"genus": self.genus, "family": family.name})
                family_reports = [VerifyReport(family.name, (), observed=False, witness={"error": str(exc)})]
            failures = sum(1 for report in family_reports if not report.passed)
            logger.info(
                "Family checked",
                extra={
                    "genus": self.genus,
                    "family": family.name,
                    "instances": len(family_reports),
                    "failures": failures,
                },
            )
            reports.extend(family_reports)
        return sorted(reports, key=VerifyReport.sort_key)

    def _check(
        self,
        name: str,
        params: tuple[Any, ...],
        check: Callable[[], Outcome],
        expected: bool = True,
        comparison: str = EXACT,
    ) -> VerifyReport:
        try:
            outcome = check()
        except Exception as exc:  # noqa: BLE001
            logger.exception("Check raised", extra={"family": name, "params": params})
            return VerifyReport(
                name,
                params,
                observed=not expected,
                expected=expected,
                comparison=comparison,
                witness={"error": f"{type(exc).__name__}: {exc}"},
            )
        report = VerifyReport(name, params, outcome.holds, expected, comparison, outcome.witness, outcome.detail)
        if not report.passed:
            logger.warning("Check failed", extra={"family": name, "params": params, "genus": self.genus})
        return report

    def _rng(self, family: str) -> random.Random:
        return random.Random(f"{self.seed}:{self.genus}:{family}")

    def _subsets(self, size: int, family: str) -> list[tuple[int, ...]]:
        subsets = list(combinations(range(1, self.genus + 1), size))
        if self.genus > self.settings.max_exhaustive_genus and len(subsets) > SAMPLED_SUBSETS:
            subsets = sorted(self._rng(family).sample(subsets, SAMPLED_SUBSETS))
        return subsets

    def _twist(self, support: tuple[int, ...], power: int = 1) -> HomAction:
        return twist_action(CurveIndex(support), self.genus, power)

    def _slide(self, core: tuple[int, ...], support: tuple[int, ...]) -> HomAction:
        return slide_action(CurveIndex(core), CurveIndex(support), self.genus)

    def _all_slides(self) -> list[Letter]:
        pairs = [
            Letter.slide((i,), tuple(sorted((i, j))))
            for i in range(1, self.genus + 1)
            for j in range(1, self.genus + 1)
            if j != i
        ]
        return pairs + [letter for word in self.catalog.type2 for letter, _ in word]

    def _aggregate(
        self,
        name: str,
        params: tuple[Any, ...],
        count: int,
        trial: Callable[[random.Random], Optional[dict]],
    ) -> VerifyReport:
        def run_trials() -> Outcome:
            rng = self._rng(name + repr(params))
            failures = 0
            first: Optional[dict] = None
            for _ in range(count):
                witness = trial(rng)
                if witness is not None:
                    failures += 1
                    first = first or witness
            return Outcome(failures == 0, first, {"instances": count, "failures": failures})

        return self._check(name, params, run_trials)

    # exhaustive families

    def _slide_involution(self) -> list[VerifyReport]:
        identity = HomAction.identity(self.genus)
        return [
            self._check(
                "slide-involution",
                (letter.label(),),
                lambda action=letter_action(letter, self.genus): compare_actions(action @ action, identity),
            )
            for letter in self._all_slides()
        ]

    def _slide_mod2_trivial(self) -> list[VerifyReport]:
        def check(letter: Letter) -> Outcome:
            action = letter_action(letter, self.genus)
            holds = action.is_level2() and action.preserves_mod2_form()
            return Outcome(holds, {"mod2": to_decimal_rows(action.mod2())})

        return [
            self._check("slide-mod2-trivial", (letter.label(),), lambda l=letter: check(l))
            for letter in self._all_slides()
        ]

    def _catalog_level2(self) -> list[VerifyReport]:
        def check(word: Word) -> Outcome:
            return Outcome(is_level2(word), {"mod2": to_decimal_rows(evaluate(word).mod2())})

        members = self.catalog.elements() + list(catalog_alt(self.genus).type2)
        outsiders = [Word.of(self.genus, Letter.a(i)) for i in range(1, self.genus)]
        if self.genus >= 4:
            outsiders.append(Word.of(self.genus, Letter.b()))
        reports = [self._check("catalog-level2", (format_word(w),), lambda w=w: check(w)) for w in members]
        reports += [
            self._check("catalog-level2", (format_word(w),), lambda w=w: check(w), expected=False) for w in outsiders
        ]
        return reports

    def _twist_square_pair(self) -> list[VerifyReport]:
        return [
            self._check(
                "twist-square-pair",
                pair,
                lambda i=pair[0], j=pair[1]: compare_actions(
                    self._twist((i, j), 2),
                    self._slide((j,), (i, j)) @ self._slide((i,), (i, j)).inverse(),
                ),
            )
            for pair in combinations(range(1, self.genus + 1), 2)
        ]

    def _twist_square_quad(self) -> list[VerifyReport]:
        return [
            self._check(
                "twist-square-quad",
                quad,
                lambda q=quad: compare_actions(
                    self._twist(q, 2),
                    self._slide((q[3],), q) @ self._slide(q[:3], q).inverse(),
                ),
            )
            for quad in self._subsets(4, "twist-square-quad")
        ]

    def _twist_square_quad_any_point(self) -> list[VerifyReport]:
        def check(quad: tuple[int, ...], point: int) -> Outcome:
            sign = iota_curve(CurveIndex(quad), CurveIndex((point,)))
            rest = tuple(i for i in quad if i != point)
            return compare_actions(
                self._twist(quad, 2 * sign),
                self._slide((point,), quad) @ self._slide(rest, quad).inverse(),
            )

        return [
            self._check("twist-square-quad-any-point", (quad, point), lambda q=quad, p=point: check(q, p))
            for quad in self._subsets(4, "twist-square-quad-any-point")
            for point in quad
        ]

    def _alt_generator_equivalence(self) -> list[VerifyReport]:
        def check(quad: tuple[int, ...]) -> Outcome:
            square = Word(self.genus, ((Letter.twist(quad), 2),))
            pair = Word(self.genus, ((Letter.slide((quad[3],), quad), 1), (Letter.slide(quad[:3], quad), -1)))
            return compare_actions(evaluate(square), evaluate(pair))

        return [
            self._check("alt-generator-equivalence", quad, lambda q=quad: check(q))
            for quad in self._subsets(4, "alt-generator-equivalence")
        ]

    def _six_subset_slide(self) -> list[VerifyReport]:
        return [
            self._check(
                "six-subset-slide",
                six,
                lambda s=six: compare_actions(
                    self._slide(s[:5], s),
                    self._slide(s[:3], s) @ self._slide(s[3:], s).inverse() @ self._slide((s[5],), s),
                ),
            )
            for six in self._subsets(6, "six-subset-slide")
        ]

    def _six_subset_halves(self) -> list[VerifyReport]:
        reports = []
        for six in self._subsets(6, "six-subset-halves"):
            reports.append(
                self._check(
                    "six-subset-halves",
                    (six, "image"),
                    lambda s=six: compare_classes(
                        self._twist(s).apply(curve_class(CurveIndex(s[:3]), self.genus)),
                        -curve_class(CurveIndex(s[3:]), self.genus),
                    ),
                )
            )
            reports.append(
                self._check(
                    "six-subset-halves",
                    (six, "square"),
                    lambda s=six: compare_actions(
                        self._twist(s, 2),
                        self._slide(s[3:], s) @ self._slide(s[:3], s).inverse(),
                    ),
                )
            )
        return reports

    def _twist_carries_curve(self) -> list[VerifyReport]:
        reports = []
        for size in (2, 4, 6):
            if size > self.genus:
                break
            for support in self._subsets(size, f"twist-carries-curve-{size}"):
                reports.append(
                    self._check(
                        "twist-carries-curve",
                        support,
                        lambda s=support: compare_classes(
                            self._twist(s).apply(curve_class(CurveIndex(s[:-1]), self.genus)),
                            -basis_class(s[-1], self.genus),
                        ),
                    )
                )
        return reports

    def _type1_completion(self) -> list[VerifyReport]:
        g = self.genus
        return [
            self._check(
                "type1-completion",
                (j,),
                lambda j=j: compare_actions(
                    self._slide((g,), (j, g)),
                    self._twist((j, g), 2) @ self._slide((j,), (j, g)),
                ),
            )
            for j in range(1, g)
        ]

    def _conjugation_shift(self) -> list[VerifyReport]:
        def check(quad: tuple[int, ...]) -> Outcome:
            i, j, k, l = quad
            shift = letter_action(Letter.a(i - 1), self.genus)
            swap = self._slide((i,), (i - 1, i))
            return compare_actions(
                shift @ self._slide((i, j, k), quad) @ shift.inverse(),
                swap @ self._slide((i - 1, j, k), (i - 1, j, k, l)) @ swap.inverse(),
            )

        quads = [quad for quad in self._subsets(4, "conjugation-shift") if quad[0] > 1]
        return [self._check("conjugation-shift", quad, lambda q=quad: check(q)) for quad in quads]

    def _standard_curve_images(self) -> list[VerifyReport]:
        g = self.genus
        reports = []
        for k in range(1, g):
            label = Letter.a(k).label()
            for i in range(1, g + 1):
                if i == k:
                    exponent, expected = 1, -basis_class(k + 1, g)
                elif i == k + 1:
                    exponent, expected = -1, -basis_class(k, g)
                else:
                    exponent, expected = 1, basis_class(i, g)
                reports.append(
                    self._check(
                        "standard-curve-images",
                        (label, i, exponent),
                        lambda k=k, i=i, e=exponent, x=expected: compare_classes(
                            letter_action(Letter.a(k), g, e).apply(basis_class(i, g)), x
                        ),
                    )
                )
        return reports

    def _b_curve_images(self) -> list[VerifyReport]:
        g = self.genus
        support = CurveIndex(B_CURVE)

        def check(indices: tuple[int, ...]) -> Outcome:
            x = curve_class(CurveIndex(indices), g)
            if set(indices) <= set(B_CURVE):
                exponent = -iota(support, x)
                complement = tuple(i for i in B_CURVE if i not in indices)
                expected = -curve_class(CurveIndex(complement), g)
            else:
                exponent, expected = 1, x
            return compare_classes(twist_action(support, g, exponent).apply(x), expected)

        cases = [(i,) for i in range(1, g + 1)] + list(combinations(B_CURVE, 3))
        cases += list(combinations(range(5, g + 1), 3))
        return [self._check("b-curve-images", case, lambda c=case: check(c)) for case in cases]

    def _normality_shadow(self) -> list[VerifyReport]:
        conjugators = [Letter.a(i) for i in range(1, self.genus)]
        if self.genus >= 4:
            conjugators.append(Letter.b())
        return [
            self._check(
                "normality-shadow",
                (format_word(element), h.label()),
                lambda e=element, h=h: Outcome(is_level2(conjugate(Word.of(self.genus, h), e))),
            )
            for element in self.catalog.elements()
            for h in conjugators
        ]

    # genus 3

    def _rho_generators(self) -> list[VerifyReport]:
        cases = [("A1", "S T S^-1"), ("A2", "S"), ("Y", "S U S^-1")]
        return [
            self._check(
                "rho-generators",
                (word, stu),
                lambda w=word, s=stu: compare_matrices(rho(parse_word(w, 3)), stu_eval(parse_stu(s))),
            )
            for word, stu in cases
        ]

    def _stu_relations(self) -> list[VerifyReport]:
        relations = [
            ("STS = TST", "S T S", "T S T"),
            ("(STS)^4 = I", "S T S " * 4, ""),
            ("U^2 = I", "U^2", ""),
            ("(US)^2 = I", "U S U S", ""),
            ("(UT)^2 = I", "U T U T", ""),
        ]
        return [
            self._check(
                "stu-relations",
                (label,),
                lambda l=left, r=right: compare_matrices(stu_eval(parse_stu(l)), stu_eval(parse_stu(r))),
            )
            for label, left, right in relations
        ]

    def _presentation_relations(self) -> list[VerifyReport]:
        relations = [
            ("A1 A2 A1", "A2 A1 A2"),
            ("(A1 A2 A1)^4", ""),
            ("Y^2", ""),
            ("(Y A1)^2", ""),
            ("(Y A2)^2", ""),
        ]

        def check(left: str, right: str) -> Outcome:
            lhs, rhs = parse_word(left, 3), parse_word(right, 3)
            quotient = lhs * inverse(rhs)
            return Outcome(n3_equal(lhs, rhs), {"rho": to_decimal_rows(rho(quotient))})

        return [
            self._check("presentation-relations", (left, right), lambda l=left, r=right: check(l, r))
            for left, right in relations
        ]

    # genus 4

    def _b_square_homology(self) -> list[VerifyReport]:
        identity = HomAction.identity(4)
        square = evaluate(parse_word("B^2", 4))
        return [
            self._check(
                "b-square-homology",
                ("on-homology",),
                lambda: compare_actions(square, identity, ON_HOMOLOGY),
                comparison=ON_HOMOLOGY,
            ),
            self._check(
                "b-square-homology",
                ("raw-matrix",),
                lambda: compare_actions(square, identity, EXACT),
                expected=False,
            ),
        ]

    def _b_homology(self) -> list[VerifyReport]:
        identity = HomAction.identity(4)
        return [
            self._check(
                "b-homology",
                ("on-homology",),
                lambda: compare_actions(evaluate(parse_word("B", 4)), identity, ON_HOMOLOGY),
                expected=False,
                comparison=ON_HOMOLOGY,
            )
        ]

    def _b_kernel_rho(self) -> list[VerifyReport]:
        def check() -> Outcome:
            image = rho(parse_word("B", 4))
            return Outcome(is_identity(image), {"rho": to_decimal_rows(image)})

        return [self._check("b-kernel-rho", ("B",), check)]

    # rank bounds

    @cached_property
    def certificate(self) -> RankCertificate:
        return rank_certificate(self.genus)

    def _rank_certificate(self) -> list[VerifyReport]:
        def check() -> Outcome:
            cert = self.certificate
            return Outcome(
                cert.rank == cert.target,
                {"rank": cert.rank, "target": cert.target},
                {"rank": cert.rank, "target": cert.target, "basis": list(cert.witness)},
            )

        return [self._check("rank-certificate", (self.genus,), check)]

    def _type1_span_measured(self) -> list[VerifyReport]:
        def check() -> Outcome:
            cert = self.certificate
            return Outcome(
                cert.type1_rank == cert.target,
                {"type1_rank": cert.type1_rank, "target": cert.target},
                {"type1_rank": cert.type1_rank, "target": cert.target},
            )

        return [self._check("type1-span-measured", (self.genus,), check)]

    def _type2_in_type1_span(self) -> list[VerifyReport]:
        element = self.catalog.type2[0]
        return [
            self._check(
                "type2-in-type1-span",
                (format_word(element), "containment"),
                lambda: Outcome(all(self.certificate.type2_in_type1_span)),
            ),
            self._check(
                "type2-in-type1-span",
                (format_word(element), "all-ones"),
                lambda: Outcome(bool(np.all(np.asarray(f_eta(element)) == 1)), {"f": to_decimal_rows(f_eta(element))}),
            ),
        ]

    # seeded random families

    def _random_invariants(self) -> list[VerifyReport]:
        g = self.genus

        def trial(rng: random.Random) -> Optional[dict]:
            word = random_word(rng, g, self.settings.random_word_length)
            action = evaluate(word)
            failed = [
                name
                for name, ok in (
                    ("determinant", action.determinant() in (1, -1)),
                    ("torsion", action.fixes_torsion()),
                    ("mod2-form", action.preserves_mod2_form()),
                )
                if not ok
            ]
            return {"word": format_word(word), "failed": failed} if failed else None

        return [self._aggregate("random-invariants", (self.settings.random_words,), self.settings.random_words, trial)]

    def _random_free_reduce(self) -> list[VerifyReport]:
        g = self.genus

        def trial(rng: random.Random) -> Optional[dict]:
            word = random_word(rng, g, self.settings.random_word_length)
            reduced = free_reduce(word)
            if evaluate(reduced) == evaluate(word) and equal(rho(reduced), rho(word)):
                return None
            return {"word": format_word(word), "reduced": format_word(reduced)}

        return [self._aggregate("random-free-reduce", (self.settings.random_words,), self.settings.random_words, trial)]

    def _random_f_additivity(self) -> list[VerifyReport]:
        g = self.genus
        generators = [letter for word in self.catalog.elements() for letter, _ in word]
        length = max(1, self.settings.random_word_length // 3)

        def trial(rng: random.Random) -> Optional[dict]:
            left = random_word(rng, g, length, generators)
            right = random_word(rng, g, length, generators)
            product = f_map(eta(left * right))
            if np.array_equal(product, f_eta(left) + f_eta(right)):
                return None
            return {"left": format_word(left), "right": format_word(right)}

        count = self.settings.random_words
        return [self._aggregate("random-f-additivity", (count,), count, trial)]

    def _word_problem_roundtrip(self) -> list[VerifyReport]:
        def words_trial(rng: random.Random) -> Optional[dict]:
            word = random_word(rng, 3, rng.randint(0, self.settings.random_word_length))
            matrix = rho(word)
            back = stu_to_mcg(decompose_gl2(matrix))
            if n3_is_trivial(word * inverse(back)) and equal(rho(back), matrix):
                return None
            return {"word": format_word(word), "back": format_word(back)}

        def matrix_trial(rng: random.Random) -> Optional[dict]:
            matrix = random_gl2(rng, rng.randint(1, 40))
            if equal(stu_eval(decompose_gl2(matrix)), matrix):
                return None
            return {"matrix": to_decimal_rows(matrix)}

        def homomorphism_trial(rng: random.Random) -> Optional[dict]:
            word = random_stu_word(rng, rng.randint(0, self.settings.random_word_length))
            if equal(rho(stu_to_mcg(word)), stu_eval(word)):
                return None
            return {"stu": [f"{letter.value}^{e}" for letter, e in word]}

        samples = self.settings.level2_samples
        matrices = self.settings.random_words
        return [
            self._aggregate("word-problem-roundtrip", ("mcg-words", samples), samples, words_trial),
            self._aggregate("word-problem-roundtrip", ("stu-matrices", matrices), matrices, matrix_trial),
            self._aggregate("word-problem-roundtrip", ("stu-homomorphism", samples), samples, homomorphism_trial),
        ]

    def _level2_roundtrip(self) -> list[VerifyReport]:
        def trial(rng: random.Random) -> Optional[dict]:
            matrix = random_level2(rng, rng.randint(1, 10))
            word = level2_decompose(matrix, self.settings.search_depth)
            if equal(eta(word), matrix):
                return None
            return {"matrix": to_decimal_rows(matrix), "word": format_word(word)}

        samples = self.settings.level2_samples
        return [self._aggregate("level2-roundtrip", (samples,), samples, trial)]


def verify_suite(genus: int, seed: int = 0, settings: Optional[Settings] = None) -> list[VerifyReport]:
    return VerificationService(genus, seed, settings).run()
