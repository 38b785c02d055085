from __future__ import annotations

from itertools import combinations

import galois
import numpy as np

from gamma2kit.homology import validate_genus
from gamma2kit.linalg import GF2, gf2_in_span, gf2_pivot_columns, gf2_rank
from gamma2kit.models import Catalog, Letter, RankCertificate, Word
from gamma2kit.representation import f_eta

CATALOG_MIN_GENUS = 3


def type1_letters(genus: int) -> list[Letter]:
    """Y[i; {i, j}] for i in 1..g-1 and j != i, ordered by (i, j)."""
    return [
        Letter.slide((i,), tuple(sorted((i, j))))
        for i in range(1, genus)
        for j in range(1, genus + 1)
        if j != i
    ]


def type2_letters(genus: int) -> list[Letter]:
    """Y[{i, j, k}; {i, j, k, l}] for i < j < k < l."""
    return [Letter.slide(quad[:3], quad) for quad in combinations(range(1, genus + 1), 4)]


def catalog(genus: int) -> Catalog:
    validate_genus(genus, minimum=CATALOG_MIN_GENUS)
    return Catalog(
        genus=genus,
        type1=tuple(Word.of(genus, letter) for letter in type1_letters(genus)),
        type2=tuple(Word.of(genus, letter) for letter in type2_letters(genus)),
    )


def catalog_alt(genus: int) -> Catalog:
    """Type-(2) slides replaced by the squared twists along the same curves."""
    base = catalog(genus)
    squares = tuple(Word(genus, ((Letter.twist(letter.support.indices), 2),)) for letter in type2_letters(genus))
    return Catalog(genus=genus, type1=base.type1, type2=squares, alternative=True)


def f_eta_rows(words: list[Word], genus: int) -> galois.FieldArray:
    """One flattened f(eta(w)) per row."""
    width = (genus - 1) ** 2
    if not words:
        return GF2.Zeros((0, width))
    return GF2(np.vstack([np.asarray(f_eta(word)).reshape(1, width) for word in words]))


def rank_certificate(genus: int) -> RankCertificate:
    """GF(2) rank of the f-eta images of the catalog, with the catalog indices spanning it."""
    full = catalog(genus)
    rows = f_eta_rows(full.elements(), genus)
    witness = gf2_pivot_columns(GF2(np.asarray(rows).T))
    type1_rows = f_eta_rows(list(full.type1), genus)
    containment = tuple(gf2_in_span(rows[len(full.type1) + k], type1_rows) for k in range(len(full.type2)))
    return RankCertificate(
        genus=genus,
        rank=gf2_rank(rows),
        witness=witness,
        catalog_size=full.size,
        type1_rank=gf2_rank(type1_rows),
        type2_in_type1_span=containment,
    )
