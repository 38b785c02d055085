from __future__ import annotations

import random
from typing import Iterable, Optional, Sequence

from gamma2kit.errors import GenusError
from gamma2kit.models import Letter, Syllable, Word


def _reduce_syllables(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    stack: list[Syllable] = []
    for letter, exponent in syllables:
        if exponent == 0:
            continue
        if stack and stack[-1][0].key == letter.key:
            kept, previous = stack.pop()
            if previous + exponent:
                stack.append((kept, previous + exponent))
        else:
            stack.append((letter, exponent))
    return tuple(stack)


def free_reduce(word: Word) -> Word:
    return Word(word.genus, _reduce_syllables(word.syllables))


def inverse(word: Word) -> Word:
    return free_reduce(Word(word.genus, tuple((letter, -exponent) for letter, exponent in reversed(word.syllables))))


def _same_genus(words: Sequence[Word]) -> int:
    genera = {word.genus for word in words}
    if len(genera) > 1:
        raise GenusError(f"cannot combine words of genera {sorted(genera)}")
    return words[0].genus


def multiply(*words: Word) -> Word:
    if not words:
        raise ValueError("multiply needs at least one word")
    genus = _same_genus(words)
    return Word(genus, _reduce_syllables(s for word in words for s in word.syllables))


def power(word: Word, exponent: int) -> Word:
    base = word if exponent >= 0 else inverse(word)
    return Word(word.genus, _reduce_syllables(base.syllables * abs(exponent)))


def conjugate(conjugator: Word, word: Word) -> Word:
    """h w h^-1."""
    return multiply(conjugator, word, inverse(conjugator))


def format_syllable(letter: Letter, exponent: int) -> str:
    return letter.label() if exponent == 1 else f"{letter.label()}^{exponent}"


def format_word(word: Word) -> str:
    return " ".join(format_syllable(letter, exponent) for letter, exponent in word.syllables)


def standard_alphabet(genus: int) -> list[Letter]:
    """Y, A_1..A_{g-1} and, from genus 4 on, B."""
    letters = [Letter.y()] + [Letter.a(i) for i in range(1, genus)]
    if genus >= 4:
        letters.append(Letter.b())
    return letters


def random_word(
    rng: random.Random,
    genus: int,
    length: int,
    alphabet: Optional[Sequence[Letter]] = None,
) -> Word:
    letters = list(alphabet) if alphabet is not None else standard_alphabet(genus)
    syllables = tuple((rng.choice(letters), rng.choice((1, -1))) for _ in range(length))
    return Word(genus, syllables)
