import pytest

pytest.importorskip("galois")

from gamma2kit.errors import DimensionError, LetterConstraintError, SidednessError, WordSyntaxError
from gamma2kit.models import Letter, STULetter
from gamma2kit.parser import looks_like_matrix, parse_matrix, parse_stu, parse_word


def test_parse_transcribes_letters_and_exponents() -> None:
    word = parse_word("A1 A2^-1", 3)
    assert word.syllables == ((Letter.a(1), 1), (Letter.a(2), -1))


def test_bare_y_is_the_standard_slide() -> None:
    assert parse_word("Y", 3).syllables == ((Letter.slide((1,), (1, 2)), 1),)
    assert parse_word("Y[2;2,3]^3", 3).syllables == ((Letter.slide((2,), (2, 3)), 3),)


def test_odd_twist_is_rejected_with_the_offending_letter() -> None:
    with pytest.raises(SidednessError, match=r"T\[1,2,3\]"):
        parse_word("T[1,2,3]", 4)


def test_letters_must_fit_the_genus() -> None:
    with pytest.raises(LetterConstraintError, match="A3"):
        parse_word("A1 A3", 3)


def test_empty_and_blank_text_give_the_empty_word() -> None:
    assert parse_word("", 3).is_empty
    assert parse_word("   ", 3).is_empty


def test_groups_expand_with_their_exponent() -> None:
    a1, y = Letter.a(1), Letter.y()
    assert parse_word("(Y A1)^2", 3).syllables == ((y, 1), (a1, 1), (y, 1), (a1, 1))
    assert parse_word("(Y A1)^-1", 3).syllables == ((a1, -1), (y, -1))
    assert parse_word("( A1 )", 3).syllables == ((a1, 1),)


def test_zero_exponents_drop_the_term() -> None:
    assert parse_word("A1^0 (A2 Y)^0 A2", 3).syllables == ((Letter.a(2), 1),)


@pytest.mark.parametrize(
    ("text", "position"),
    [
        ("A1A2", 2),
        ("T[2,1]", 4),
        ("T[0,1]", 2),
        ("Q1", 0),
        ("A1 ^2", 3),
        ("(A1 A2", 0),
        ("A1^x", 3),
        ("Y[1;1,2", 7),
    ],
)
def test_syntax_errors_carry_a_position(text: str, position: int) -> None:
    with pytest.raises(WordSyntaxError) as info:
        parse_word(text, 3)
    assert info.value.position == position
    assert f"at position {position}" in str(info.value)


def test_parse_matrix_reads_row_major_integers() -> None:
    matrix = parse_matrix("1 2\n-3 4", 2)
    assert matrix.tolist() == [[1, 2], [-3, 4]]
    with pytest.raises(DimensionError):
        parse_matrix("1 2 3", 2)
    with pytest.raises(WordSyntaxError):
        parse_matrix("1 2 x 4", 2)


def test_looks_like_matrix() -> None:
    assert looks_like_matrix("-1 2 0 1")
    assert not looks_like_matrix("A1 A2")
    assert not looks_like_matrix("")


def test_parse_stu_accepts_spaced_and_packed_forms() -> None:
    assert parse_stu("S T^-1 U").syllables == ((STULetter.S, 1), (STULetter.T, -1), (STULetter.U, 1))
    assert parse_stu("STS").syllables == ((STULetter.S, 1), (STULetter.T, 1), (STULetter.S, 1))
    assert parse_stu("").syllables == ()
    with pytest.raises(WordSyntaxError):
        parse_stu("S X")
