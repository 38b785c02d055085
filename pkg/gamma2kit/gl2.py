from __future__ import annotations

import logging
import random
from collections import deque
from functools import lru_cache
from typing import Iterable, Optional

from gamma2kit.catalog import catalog
from gamma2kit.errors import DecompositionError, DimensionError, GenusError, NotLevel2Error, NotUnimodularError
from gamma2kit.linalg import (
    IntMatrix,
    congruent_to_identity_mod2,
    determinant,
    equal,
    identity,
    int_matrix,
    is_identity,
    matmul,
)
from gamma2kit.models import Letter, STULetter, STUWord, Syllable, Word
from gamma2kit.representation import eta, rho
from gamma2kit.words import free_reduce, inverse, multiply

logger = logging.getLogger(__name__)

STU_MATRICES: dict[STULetter, IntMatrix] = {
    STULetter.S: int_matrix([[1, 1], [0, 1]]),
    STULetter.T: int_matrix([[1, 0], [-1, 1]]),
    STULetter.U: int_matrix([[-1, 0], [0, 1]]),
}

N3_GENUS = 3
Key = tuple[int, int, int, int]


def free_reduce_stu(word: STUWord) -> STUWord:
    """Merges neighbours and drops U^2."""
    stack: list[tuple[STULetter, int]] = []
    for letter, exponent in word:
        if stack and stack[-1][0] == letter:
            exponent += stack.pop()[1]
        if letter == STULetter.U:
            exponent %= 2
        if exponent:
            stack.append((letter, exponent))
    return STUWord(tuple(stack))


def inverse_stu(word: STUWord) -> STUWord:
    return free_reduce_stu(STUWord(tuple((letter, -exponent) for letter, exponent in reversed(word.syllables))))


def format_stu(word: STUWord) -> str:
    return " ".join(letter.value if e == 1 else f"{letter.value}^{e}" for letter, e in word)


def stu_power(letter: STULetter, exponent: int) -> IntMatrix:
    if letter == STULetter.S:
        return int_matrix([[1, exponent], [0, 1]])
    if letter == STULetter.T:
        return int_matrix([[1, 0], [-exponent, 1]])
    return STU_MATRICES[STULetter.U] if exponent % 2 else identity(2)


def stu_eval(word: STUWord) -> IntMatrix:
    result = identity(2)
    for letter, exponent in word:
        result = matmul(result, stu_power(letter, exponent))
    return result


def _check_unimodular_2x2(matrix: IntMatrix) -> None:
    if matrix.shape != (2, 2):
        raise DimensionError(f"expected a 2x2 matrix, got {matrix.shape}")
    if abs(determinant(matrix)) != 1:
        raise NotUnimodularError(f"determinant {determinant(matrix)} is not +-1")


def _apply(letter: STULetter, exponent: int, matrix: IntMatrix, undo: list[tuple[STULetter, int]]) -> IntMatrix:
    undo.append((letter, -exponent))
    return matmul(stu_power(letter, exponent), matrix)


def _triangular_tail(a: int, b: int, d: int) -> list[tuple[STULetter, int]]:
    """Word for [[a, b], [0, d]] with a, d in {1, -1}."""
    minus_identity = [(STULetter.S, 1), (STULetter.T, 1), (STULetter.S, 1)] * 2
    if a == 1 and d == 1:
        return [(STULetter.S, b)]
    if a == -1 and d == 1:
        return [(STULetter.U, 1), (STULetter.S, -b)]
    if a == 1:
        return [(STULetter.S, -b)] + minus_identity + [(STULetter.U, 1)]
    return minus_identity + [(STULetter.S, -b)]


def decompose_gl2(matrix: IntMatrix) -> STUWord:
    """Euclidean descent on the first column; the result evaluates back to ``matrix``."""
    _check_unimodular_2x2(matrix)
    undo: list[tuple[STULetter, int]] = []
    current = matrix
    while current[1, 0] != 0:
        a, c = current[0, 0], current[1, 0]
        quotient = a // c
        if quotient:
            current = _apply(STULetter.S, -quotient, current, undo)
        if current[0, 0] == 0:
            current = _apply(STULetter.S, 1, current, undo)
        current = _apply(STULetter.T, current[1, 0] // current[0, 0], current, undo)
        logger.debug("Euclid step", extra={"column": (int(current[0, 0]), int(current[1, 0]))})
    tail = _triangular_tail(int(current[0, 0]), int(current[0, 1]), int(current[1, 1]))
    word = free_reduce_stu(STUWord(tuple(undo + tail)))
    if not equal(stu_eval(word), matrix):
        raise DecompositionError("S/T/U decomposition does not evaluate back to the input")
    return word


def stu_to_mcg(word: STUWord) -> Word:
    """S -> A2, T -> A2^-1 A1 A2, U -> A2^-1 Y A2 in M(N_3)."""
    a1, a2, y = Letter.a(1), Letter.a(2), Letter.y()
    syllables = []
    for letter, exponent in word:
        if letter == STULetter.S:
            syllables.append((a2, exponent))
        else:
            core = a1 if letter == STULetter.T else y
            syllables.extend([(a2, -1), (core, exponent), (a2, 1)])
    return free_reduce(Word(N3_GENUS, tuple(syllables)))


def _require_genus3(word: Word) -> None:
    if word.genus != N3_GENUS:
        raise GenusError(f"the word problem is solved for genus 3 only, got genus {word.genus}")


def n3_is_trivial(word: Word) -> bool:
    _require_genus3(word)
    return is_identity(rho(word))


def n3_equal(left: Word, right: Word) -> bool:
    _require_genus3(left)
    _require_genus3(right)
    return n3_is_trivial(multiply(left, inverse(right)))


def level2_member(matrix: IntMatrix) -> bool:
    rows, cols = matrix.shape
    if rows != cols:
        raise DimensionError(f"expected a square matrix, got {matrix.shape}")
    if abs(determinant(matrix)) != 1:
        raise NotUnimodularError(f"determinant {determinant(matrix)} is not +-1")
    return congruent_to_identity_mod2(matrix)


def _key(matrix: IntMatrix) -> Key:
    return int(matrix[0, 0]), int(matrix[0, 1]), int(matrix[1, 0]), int(matrix[1, 1])


@lru_cache(maxsize=1)
def level2_generators() -> tuple[tuple[Word, IntMatrix], ...]:
    """The genus-3 catalog with the eta-image of each generator."""
    return tuple((word, eta(word)) for word in catalog(N3_GENUS).elements())


@lru_cache(maxsize=1024)
def _search(target: Key, depth: int) -> Optional[tuple[int, ...]]:
    """Breadth-first search for a product of at most ``depth`` generators."""
    generators = level2_generators()
    start = identity(2)
    if _key(start) == target:
        return ()
    seen = {_key(start)}
    frontier: deque[tuple[IntMatrix, tuple[int, ...]]] = deque([(start, ())])
    while frontier:
        matrix, path = frontier.popleft()
        if len(path) >= depth:
            continue
        for index, (_, image) in enumerate(generators):
            product = matmul(matrix, image)
            key = _key(product)
            if key == target:
                return path + (index,)
            if key not in seen:
                seen.add(key)
                frontier.append((product, path + (index,)))
    return None


def _word_from_path(path: Iterable[int]) -> Word:
    generators = level2_generators()
    return multiply(Word(N3_GENUS), *(generators[i][0] for i in path))


def _search_word(matrix: IntMatrix, depth: int) -> Optional[Word]:
    path = _search(_key(matrix), depth)
    return None if path is None else _word_from_path(path)


@lru_cache(maxsize=8)
def _descent_moves(depth: int) -> tuple[Word, Word]:
    """Words whose eta-images are [[1, 2], [0, 1]] and [[1, 0], [2, 1]]."""
    moves = []
    for target in (int_matrix([[1, 2], [0, 1]]), int_matrix([[1, 0], [2, 1]])):
        word = _search_word(target, max(depth, 2))
        if word is None:
            raise DecompositionError("no generator product realizes a level-2 transvection")
        moves.append(word)
    return moves[0], moves[1]


def _closest_multiple(value: int, step: int) -> int:
    """k minimizing |value + k * step|."""
    k0 = -(value // step)
    return min((k0 - 1, k0, k0 + 1), key=lambda k: (abs(value + k * step), abs(k)))


def _eta_key(word: Word) -> Key:
    """eta of a word in the catalog slides, multiplied out on plain ints."""
    images = {letter: _key(image) for generator, image in level2_generators() for letter, _ in generator}
    a, b, c, d = 1, 0, 0, 1
    for letter, exponent in word:
        if exponent % 2 == 0:
            continue
        p, q, r, s = images[letter]
        a, b, c, d = a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s
    return a, b, c, d


def level2_decompose(matrix: IntMatrix, search_depth: int = 3) -> Word:
    """Word in the four genus-3 catalog slides whose eta-image is ``matrix``."""
    if matrix.shape != (2, 2):
        raise DimensionError(f"expected a 2x2 matrix, got {matrix.shape}")
    if not level2_member(matrix):
        raise NotLevel2Error("matrix is not congruent to the identity mod 2")
    direct = _search_word(matrix, search_depth)
    if direct is not None:
        return direct

    upper, lower = _descent_moves(search_depth)
    inverses = {move: inverse(move).syllables for move in (upper, lower)}
    syllables: list[Syllable] = []

    def undo(move: Word, k: int) -> None:
        base = inverses[move] if k > 0 else move.syllables
        syllables.extend(base * abs(k))

    a, b, c, d = _key(matrix)
    while c != 0:
        if abs(a) > abs(c):
            k = _closest_multiple(a, 2 * c)
            a, b = a + 2 * k * c, b + 2 * k * d
            undo(upper, k)
        else:
            k = _closest_multiple(c, 2 * a)
            c, d = c + 2 * k * a, d + 2 * k * b
            undo(lower, k)
        logger.debug("Level-2 descent step", extra={"column": (a, c), "k": k})

    k = -b * d // 2
    if k:
        b += 2 * k * d
        undo(upper, k)

    residual = _search_word(int_matrix([[a, b], [c, d]]), search_depth)
    if residual is None:
        raise DecompositionError(f"diagonal residual {(a, b, c, d)} not reached within depth {search_depth}")
    result = free_reduce(Word(N3_GENUS, tuple(syllables) + residual.syllables))
    if _eta_key(result) != _key(matrix):
        raise DecompositionError("level-2 decomposition does not evaluate back to the input")
    return result


def random_stu_word(rng: random.Random, length: int) -> STUWord:
    letters = list(STULetter)
    return STUWord(tuple((rng.choice(letters), rng.choice((1, -1))) for _ in range(length)))


def random_gl2(rng: random.Random, length: int = 40) -> IntMatrix:
    return stu_eval(random_stu_word(rng, length))


def random_level2_word(rng: random.Random, length: int) -> Word:
    generators = [word for word, _ in level2_generators()]
    return multiply(Word(N3_GENUS), *(rng.choice(generators) for _ in range(length)))


def random_level2(rng: random.Random, length: int = 10) -> IntMatrix:
    return eta(random_level2_word(rng, length))
