import pytest

pytest.importorskip("galois")

from gamma2kit.errors import DimensionError, NotLevel2Error, SlideConfigurationError
from gamma2kit.homology import CurveIndex, basis_class, torsion_class
from gamma2kit.linalg import int_matrix
from gamma2kit.models import Letter, Word
from gamma2kit.parser import parse_word
from gamma2kit.representation import (
    HomAction,
    eta,
    evaluate,
    f_eta,
    f_map,
    is_level2,
    letter_action,
    rho,
    slide_action,
    twist_action,
)


def test_twist_matrix_in_genus_three() -> None:
    action = twist_action(CurveIndex((1, 2)), 3)
    assert action.mat.tolist() == [[0, 1, 0], [-1, 2, 0], [0, 0, 1]]
    assert action.determinant() == 1


def test_slide_matrix_in_genus_three() -> None:
    action = slide_action(CurveIndex((1,)), CurveIndex((1, 2)), 3)
    assert action.mat.tolist() == [[-1, 2, 0], [0, 1, 0], [0, 0, 1]]
    assert action.determinant() == -1


def test_twist_moves_a_class_along_its_curve() -> None:
    image = twist_action(CurveIndex((2, 3)), 3).apply(basis_class(2, 3))
    assert image.coeffs == (0, 0, -1)
    assert twist_action(CurveIndex((2, 3)), 3).apply(torsion_class(3)) == torsion_class(3)


def test_twist_powers_and_inverse_agree() -> None:
    curve = CurveIndex((1, 2, 3, 4))
    assert twist_action(curve, 5, -1) == twist_action(curve, 5).inverse()
    assert twist_action(curve, 5, 3) == twist_action(curve, 5).power(3)


def test_slides_are_involutions() -> None:
    assert letter_action(Letter.y(), 3, 2) == HomAction.identity(3)
    slide = letter_action(Letter.slide((1, 2, 3), (1, 2, 3, 4)), 5)
    assert slide @ slide == HomAction.identity(5)


def test_slide_action_rejects_bad_configurations() -> None:
    with pytest.raises(SlideConfigurationError):
        slide_action(CurveIndex((1, 2)), CurveIndex((1, 2)), 3)


def test_evaluate_multiplies_in_written_order() -> None:
    word = parse_word("A1 A2 Y", 3)
    expected = letter_action(Letter.a(1), 3) @ letter_action(Letter.a(2), 3) @ letter_action(Letter.y(), 3)
    assert evaluate(word) == expected
    assert evaluate(Word(3)) == HomAction.identity(3)


def test_braid_relation_holds_exactly() -> None:
    assert evaluate(parse_word("A1 A2 A1", 3)) == evaluate(parse_word("A2 A1 A2", 3))


def test_rho_on_the_genus_three_generators() -> None:
    assert rho(parse_word("A1", 3)).tolist() == [[0, 1], [-1, 2]]
    assert rho(parse_word("A2", 3)).tolist() == [[1, 1], [0, 1]]
    assert rho(parse_word("Y", 3)).tolist() == [[-1, 2], [0, 1]]


def test_b_squared_is_trivial_only_on_homology() -> None:
    square = evaluate(parse_word("B^2", 4))
    identity = HomAction.identity(4)
    assert square != identity
    assert square.same_on_homology(identity)
    assert not evaluate(parse_word("B", 4)).same_on_homology(identity)
    assert rho(parse_word("B", 4)).tolist() == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_every_generator_keeps_the_ambient_invariants() -> None:
    for text in ("A1", "A2", "Y", "B", "T[1,2,3,4]^-2", "Y[1,2,3;1,2,3,4]"):
        action = evaluate(parse_word(text, 5))
        assert action.determinant() in (1, -1), text
        assert action.fixes_torsion(), text
        assert action.preserves_mod2_form(), text


def test_level2_detection_and_eta() -> None:
    assert is_level2(parse_word("Y", 3))
    assert not is_level2(parse_word("A1", 3))
    assert is_level2(parse_word("A1^2", 3))
    assert eta(parse_word("A1^2", 3)).tolist() == [[-1, 2], [-2, 3]]
    with pytest.raises(NotLevel2Error):
        eta(parse_word("A1", 3))


def test_f_halves_the_deviation_from_identity() -> None:
    assert f_eta(parse_word("A1^2", 3)).tolist() == [[1, 1], [1, 1]]
    assert f_map(int_matrix([[1, 4], [0, 1]])).tolist() == [[0, 0], [0, 0]]
    assert f_map(int_matrix([[1, 2], [0, 1]])).tolist() == [[0, 1], [0, 0]]
    assert f_map(int_matrix([[-1, 0], [0, 1]])).tolist() == [[1, 0], [0, 0]]
    with pytest.raises(NotLevel2Error):
        f_map(int_matrix([[1, 1], [0, 1]]))


def test_actions_check_their_shapes() -> None:
    with pytest.raises(DimensionError):
        HomAction(3, int_matrix([[1, 0], [0, 1]]))
    with pytest.raises(DimensionError):
        HomAction.identity(3) @ HomAction.identity(4)
