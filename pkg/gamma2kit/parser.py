from __future__ import annotations

import re
from typing import Callable, Optional

from gamma2kit.errors import DimensionError, Gamma2Error, WordSyntaxError
from gamma2kit.homology import validate_genus
from gamma2kit.linalg import IntMatrix, int_matrix
from gamma2kit.models import Letter, STULetter, STUWord, Syllable, Word

INDEX_PATTERN = re.compile(r"\d+")
EXPONENT_PATTERN = re.compile(r"[+-]?\d+")
INTEGER_TOKEN = re.compile(r"[+-]?\d+")
TOKEN_PATTERN = re.compile(r"\S+")
STU_TERM = re.compile(r"\s*([STU])(?:\^([+-]?\d+))?")


class _WordParser:
    """Recursive descent over the word grammar.

    word   := term (whitespace term)*
    term   := (letter | "(" word ")") ("^" signed-int)?
    letter := "A" int | "B" | "Y" | "T[" intlist "]" | "Y[" intlist ";" intlist "]"
    """

    def __init__(self, text: str, genus: int) -> None:
        self.text = text
        self.genus = genus
        self.pos = 0

    def error(self, message: str, position: Optional[int] = None) -> WordSyntaxError:
        return WordSyntaxError(message, self.pos if position is None else position, self.text)

    def parse(self) -> Word:
        syllables = self._word(closing=False)
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.text[self.pos]!r}")
        return Word(self.genus, tuple(syllables))

    def _peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _skip_whitespace(self) -> bool:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.pos > start

    def _at_word_end(self, closing: bool) -> bool:
        return self.pos >= len(self.text) or (closing and self._peek() == ")")

    def _word(self, closing: bool) -> list[Syllable]:
        syllables: list[Syllable] = []
        self._skip_whitespace()
        if self._at_word_end(closing):
            return syllables
        while True:
            syllables.extend(self._term())
            separated = self._skip_whitespace()
            if self._at_word_end(closing):
                return syllables
            if not separated:
                raise self.error(f"expected whitespace before {self._peek()!r}")

    def _term(self) -> list[Syllable]:
        start = self.pos
        if self._peek() == "(":
            self.pos += 1
            body = self._word(closing=True)
            if self._peek() != ")":
                raise self.error("unclosed group", start)
            self.pos += 1
            exponent = self._exponent()
            base = body if exponent > 0 else [(letter, -e) for letter, e in reversed(body)]
            return base * abs(exponent)
        letter = self._letter()
        exponent = self._exponent()
        return [(letter, exponent)] if exponent else []

    def _exponent(self) -> int:
        if self._peek() != "^":
            return 1
        self.pos += 1
        match = EXPONENT_PATTERN.match(self.text, self.pos)
        if not match:
            raise self.error("expected an integer exponent")
        self.pos = match.end()
        return int(match.group())

    def _expect(self, char: str) -> None:
        if self._peek() != char:
            found = repr(self._peek()) if self._peek() else "end of input"
            raise self.error(f"expected {char!r}, found {found}")
        self.pos += 1

    def _index(self) -> int:
        match = INDEX_PATTERN.match(self.text, self.pos)
        if not match:
            raise self.error("expected an index")
        value = int(match.group())
        if value == 0:
            raise self.error("indices are 1-based")
        self.pos = match.end()
        return value

    def _index_list(self) -> tuple[int, ...]:
        values = [self._index()]
        while self._peek() == ",":
            self.pos += 1
            position = self.pos
            value = self._index()
            if value <= values[-1]:
                raise self.error("indices must be strictly increasing", position)
            values.append(value)
        return tuple(values)

    def _letter(self) -> Letter:
        start = self.pos
        head = self._peek()
        if head == "A":
            self.pos += 1
            index = self._index()
            return self._build(start, lambda: Letter.a(index))
        if head == "B":
            self.pos += 1
            return self._build(start, Letter.b)
        if head == "T":
            self.pos += 1
            self._expect("[")
            support = self._index_list()
            self._expect("]")
            return self._build(start, lambda: Letter.twist(support))
        if head == "Y":
            self.pos += 1
            if self._peek() != "[":
                return self._build(start, Letter.y)
            self.pos += 1
            core = self._index_list()
            self._expect(";")
            support = self._index_list()
            self._expect("]")
            return self._build(start, lambda: Letter.slide(core, support))
        if not head:
            raise self.error("unexpected end of input")
        raise self.error(f"unknown letter {head!r}")

    def _build(self, start: int, factory: Callable[[], Letter]) -> Letter:
        token = self.text[start:self.pos]
        try:
            letter = factory()
            letter.validate(self.genus)
        except WordSyntaxError:
            raise
        except Gamma2Error as exc:
            raise type(exc)(f"{token}: {exc}") from exc
        return letter


def parse_word(text: str, genus: int) -> Word:
    validate_genus(genus)
    return _WordParser(text, genus).parse()


def looks_like_matrix(text: str) -> bool:
    tokens = text.split()
    return bool(tokens) and all(INTEGER_TOKEN.fullmatch(token) for token in tokens)


def parse_matrix(text: str, size: int) -> IntMatrix:
    """Row-major whitespace-separated integers."""
    values: list[int] = []
    for match in TOKEN_PATTERN.finditer(text):
        if not INTEGER_TOKEN.fullmatch(match.group()):
            raise WordSyntaxError(f"not an integer: {match.group()!r}", match.start(), text)
        values.append(int(match.group()))
    if len(values) != size * size:
        raise DimensionError(f"expected {size * size} integers for a {size}x{size} matrix, got {len(values)}")
    return int_matrix([values[r * size:(r + 1) * size] for r in range(size)])


def parse_stu(text: str) -> STUWord:
    syllables: list[tuple[STULetter, int]] = []
    pos = 0
    while text[pos:].strip():
        match = STU_TERM.match(text, pos)
        if not match:
            raise WordSyntaxError("expected S, T or U", pos + len(text[pos:]) - len(text[pos:].lstrip()), text)
        exponent = int(match.group(2)) if match.group(2) else 1
        if exponent:
            syllables.append((STULetter(match.group(1)), exponent))
        pos = match.end()
    return STUWord(tuple(syllables))
