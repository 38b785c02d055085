import random

import pytest

pytest.importorskip("galois")

from gamma2kit.errors import DimensionError, GenusError, NotLevel2Error, NotUnimodularError
from gamma2kit.gl2 import (
    decompose_gl2,
    free_reduce_stu,
    inverse_stu,
    level2_decompose,
    level2_generators,
    level2_member,
    n3_equal,
    n3_is_trivial,
    random_gl2,
    random_level2,
    stu_eval,
    stu_to_mcg,
)
from gamma2kit.linalg import determinant, int_matrix, matmul
from gamma2kit.models import STULetter, STUWord
from gamma2kit.parser import parse_stu, parse_word
from gamma2kit.representation import eta, rho


def test_stu_matrices_and_relations() -> None:
    assert stu_eval(parse_stu("S")).tolist() == [[1, 1], [0, 1]]
    assert stu_eval(parse_stu("T")).tolist() == [[1, 0], [-1, 1]]
    assert stu_eval(parse_stu("STS")).tolist() == [[0, 1], [-1, 0]]
    assert stu_eval(parse_stu("S T S S T S")).tolist() == [[-1, 0], [0, -1]]
    assert stu_eval(parse_stu("U S U S")).tolist() == [[1, 0], [0, 1]]
    assert stu_eval(parse_stu("U T U T")).tolist() == [[1, 0], [0, 1]]


def test_free_reduce_stu_merges_and_drops_u_squared() -> None:
    assert free_reduce_stu(parse_stu("U U S S^-1")).syllables == ()
    assert free_reduce_stu(parse_stu("U^3 T^2 T")).syllables == ((STULetter.U, 1), (STULetter.T, 3))


def test_inverse_stu_evaluates_to_the_inverse() -> None:
    word = parse_stu("S^3 T^-2 U S")
    assert matmul(stu_eval(word), stu_eval(inverse_stu(word))).tolist() == [[1, 0], [0, 1]]


@pytest.mark.parametrize(
    "rows",
    [
        [[1, 0], [0, 1]],
        [[1, 0], [-1, 1]],
        [[0, 1], [1, 0]],
        [[-1, 0], [0, -1]],
        [[2, 1], [1, 1]],
        [[1, 5], [0, -1]],
        [[-13, 8], [8, -5]],
        [[0, -1], [1, 0]],
    ],
)
def test_decompose_gl2_round_trips(rows: list[list[int]]) -> None:
    matrix = int_matrix(rows)
    word = decompose_gl2(matrix)
    assert stu_eval(word).tolist() == rows
    assert rho(stu_to_mcg(word)).tolist() == rows


def test_decompose_gl2_on_seeded_random_matrices() -> None:
    rng = random.Random("gl2")
    for _ in range(25):
        matrix = random_gl2(rng)
        assert determinant(matrix) in (1, -1)
        assert stu_eval(decompose_gl2(matrix)).tolist() == matrix.tolist()


def test_decompose_gl2_rejects_bad_input() -> None:
    with pytest.raises(NotUnimodularError):
        decompose_gl2(int_matrix([[2, 0], [0, 1]]))
    with pytest.raises(DimensionError):
        decompose_gl2(int_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))


def test_stu_to_mcg_uses_the_genus_three_dictionary() -> None:
    for text in ("S", "T", "U", "T^-3", "U S"):
        word = parse_stu(text)
        assert rho(stu_to_mcg(word)).tolist() == stu_eval(word).tolist(), text
    assert stu_to_mcg(STUWord(((STULetter.S, 2),))).syllables == parse_word("A2^2", 3).syllables


def test_word_problem_in_genus_three() -> None:
    assert n3_equal(parse_word("A1 A2 A1", 3), parse_word("A2 A1 A2", 3))
    assert n3_is_trivial(parse_word("Y^2", 3))
    assert n3_is_trivial(parse_word("(A1 A2)^6", 3))
    assert not n3_is_trivial(parse_word("A1", 3))
    with pytest.raises(GenusError):
        n3_is_trivial(parse_word("A1", 4))


def test_level2_member() -> None:
    assert level2_member(int_matrix([[1, 0], [0, 1]]))
    assert level2_member(int_matrix([[3, 4], [2, 3]]))
    assert not level2_member(int_matrix([[1, 1], [0, 1]]))
    assert level2_member(int_matrix([[1, 2, 0], [0, 1, 0], [0, 0, -1]]))
    with pytest.raises(NotUnimodularError):
        level2_member(int_matrix([[3, 0], [0, 1]]))
    with pytest.raises(DimensionError):
        level2_member(int_matrix([[1, 0, 0], [0, 1, 0]]))


def test_level2_generator_images() -> None:
    images = [image.tolist() for _, image in level2_generators()]
    assert images == [
        [[-1, 2], [0, 1]],
        [[-1, 0], [0, 1]],
        [[1, 0], [2, -1]],
        [[1, 0], [0, -1]],
    ]


@pytest.mark.parametrize(
    "rows",
    [
        [[1, 0], [0, 1]],
        [[-1, 0], [0, -1]],
        [[1, 4], [0, 1]],
        [[1, 0], [-6, 1]],
        [[3, 4], [2, 3]],
        [[5, 2], [2, 1]],
        [[-7, 4], [12, -7]],
        [[1, 2], [2, 5]],
    ],
)
def test_level2_decompose_round_trips(rows: list[list[int]]) -> None:
    assert eta(level2_decompose(int_matrix(rows))).tolist() == rows


def test_level2_decompose_on_seeded_random_elements() -> None:
    rng = random.Random("level2")
    for _ in range(15):
        matrix = random_level2(rng)
        assert eta(level2_decompose(matrix)).tolist() == matrix.tolist()


def test_level2_decompose_rejects_non_members() -> None:
    with pytest.raises(NotLevel2Error):
        level2_decompose(int_matrix([[1, 1], [0, 1]]))


def test_level2_decompose_near_parabolic_input() -> None:
    rows = [[1999, 2000], [1998, 1999]]
    word = level2_decompose(int_matrix(rows))
    assert eta(word).tolist() == rows


def test_level2_decompose_scales_to_large_entries() -> None:
    n = 10**6
    word = level2_decompose(int_matrix([[n - 1, n], [n - 2, n - 1]]))
    catalog_letters = {letter for generator, _ in level2_generators() for letter in generator.letters()}
    assert word.letters() <= catalog_letters
    assert len(word) >= n // 2
