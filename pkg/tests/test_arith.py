"""Field recognition and the parabolic-elliptic arithmetic screen."""

import math

import pytest

from jnum.arith import (
    ELLIPTIC_ORDERS,
    EllipticCandidate,
    QuadImagField,
    delta_discriminant,
    elliptic_j_value,
    elliptic_type_check,
    hilbert_real_ramified,
    invariant_trace_field_generators,
    is_algebraic_unit,
    recognize_invariant_field,
    recognize_quad_imaginary,
    trace_field_generators,
    unit_multiple_check,
)
from jnum.linalg import Mat2

OMEGA = 0.5 + 0.8660254037844386j


# ---------------------------------------------------------------------------
# fields


def test_field_validation():
    with pytest.raises(ValueError):
        QuadImagField(0)
    with pytest.raises(ValueError):
        QuadImagField(4)
    with pytest.raises(ValueError):
        QuadImagField(12)


def test_field_discriminant():
    assert QuadImagField(1).discriminant == -4
    assert QuadImagField(2).discriminant == -8
    assert QuadImagField(3).discriminant == -3
    assert QuadImagField(7).discriminant == -7
    assert QuadImagField(11).discriminant == -11


def test_field_units():
    assert len(QuadImagField(1).units) == 4
    assert len(QuadImagField(3).units) == 6
    assert len(QuadImagField(2).units) == 2
    for d in (1, 2, 3, 7):
        for u in QuadImagField(d).units:
            assert abs(abs(u) - 1.0) <= 1e-12


def test_field_name():
    assert QuadImagField(2).name == "Q(sqrt(-2))"


def test_recognize_quad_imaginary():
    assert recognize_quad_imaginary(OMEGA) == QuadImagField(3)
    assert recognize_quad_imaginary(1 + 1j) == QuadImagField(1)
    assert recognize_quad_imaginary(2j) == QuadImagField(1)
    assert recognize_quad_imaginary(0.5j) is None  # 4x^2 + 1 is not monic integral
    assert recognize_quad_imaginary(math.pi + 0j) is None
    assert recognize_quad_imaginary(0.3 + 0.7j) is None


def test_is_algebraic_unit():
    assert is_algebraic_unit(OMEGA, QuadImagField(3))
    assert is_algebraic_unit(1j, QuadImagField(1))
    assert not is_algebraic_unit(1 + 1j, QuadImagField(1))
    assert not is_algebraic_unit(1j, QuadImagField(2))


def test_unit_multiple_check():
    base = 2 + 3j
    assert unit_multiple_check(1j * base, base, QuadImagField(1)) == 1j
    assert unit_multiple_check(0.5 * base, base, QuadImagField(1)) is None
    with pytest.raises(ValueError):
        unit_multiple_check(1.0, 1e-12, QuadImagField(1))


# ---------------------------------------------------------------------------
# trace fields of a pair


def test_trace_field_generators():
    x = Mat2(1, 1, 0, 1)
    y = Mat2(1, 0, 0.5 + 0.5j, 1)
    assert trace_field_generators(x, y) == [2, 2, (x @ y).trace]


def test_invariant_generators_traceless_cases():
    s = Mat2(0, -1, 1, 0)
    x = Mat2(1, 1, 0, 1)
    gens = invariant_trace_field_generators(s, x)
    assert len(gens) == 2 and gens[0] == 4
    with pytest.raises(ValueError):
        invariant_trace_field_generators(s, Mat2(0, -1j, -1j, 0))


def test_recognize_invariant_field_figure_eight():
    x = Mat2(1, 1, 0, 1)
    y = Mat2(1, 0, OMEGA, 1)
    assert recognize_invariant_field(x, y) == QuadImagField(3)


def test_delta_discriminant():
    x = Mat2(1, 1, 0, 1)
    y = Mat2(1, 0, 0.5 + 0.5j, 1)
    # both traces are 2, so the bracket collapses to 4 (tr [x, y] - 2) = 4 c^2
    assert abs(delta_discriminant(x, y) - 32j) <= 1e-12
    assert abs(delta_discriminant(x, y) - delta_discriminant(y, x)) <= 1e-12


def test_hilbert_real_ramified():
    assert hilbert_real_ramified([(-1.0, -1.0), (-0.5, -2.0)])
    assert not hilbert_real_ramified([(1.0, -1.0)])
    assert not hilbert_real_ramified([(-1.0, 0.0)])
    assert hilbert_real_ramified([])


# ---------------------------------------------------------------------------
# the elliptic screen


def test_admissible_orders():
    assert ELLIPTIC_ORDERS == (7, 8, 9, 10, 11, 12, 14, 16, 18, 24, 30)


def test_candidate_conjugate_count_validation():
    EllipticCandidate(7, 6.0)                        # none supplied
    EllipticCandidate(7, 6.0, (0.5, 0.5))            # one per real place pair
    EllipticCandidate(7, 6.0, (0.1, 0.2, 0.3, 0.4))  # the full Galois orbit
    with pytest.raises(ValueError):
        EllipticCandidate(7, 6.0, (1.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        EllipticCandidate(2, 6.0)


def test_candidate_places():
    half = EllipticCandidate(7, 6.0, (0.1, 0.2))
    assert half.conjugate_places() == ((2, 0.1), (3, 0.2))
    assert half.embedding_labels() == (2, 3)
    full = EllipticCandidate(7, 6.0, (0.1, 0.2, 0.3, 0.4))
    assert full.conjugate_places() == ((2, 0.1), (3, 0.2), (4, 0.3), (5, 0.4))


def test_screen_passing_candidate():
    rep = elliptic_type_check(EllipticCandidate(7, 6.0, (0.5, 0.5)))
    assert rep.ok
    assert rep.failed == ()
    assert all(s == "pass" for s in rep.statuses)


def test_screen_rejects_inadmissible_order():
    rep = elliptic_type_check(EllipticCandidate(6, 5.0))
    assert not rep.ok
    assert rep.failed == (1,)
    # nothing beyond the order is wrong with this candidate
    assert rep.statuses[1] == "pass"


def test_screen_rejects_small_trace_and_bad_conjugates():
    rep = elliptic_type_check(EllipticCandidate(7, 5.0, (5.0, 5.0)))
    assert not rep.ok
    assert rep.failed == (2, 4)


def test_screen_unchecked_without_conjugates():
    rep = elliptic_type_check(EllipticCandidate(7, 6.0))
    assert rep.ok  # unchecked conditions do not fail the screen
    assert rep.statuses[3] == "unchecked"


def test_screen_integrality_flags():
    rep = elliptic_type_check(
        EllipticCandidate(7, 6.0, (0.5, 0.5), trAB_integral=False,
                          trB_integral=False))
    assert rep.failed == (3, 6)


def test_elliptic_j_value():
    for n in ELLIPTIC_ORDERS:
        assert abs(elliptic_j_value(n) - 1.0) <= 1e-12
    # below the admissible range the value moves away from 1
    assert abs(elliptic_j_value(3) - 5.0) <= 1e-12
    assert abs(elliptic_j_value(4) - 3.0) <= 1e-12
    assert elliptic_j_value(5) > 1.7
    with pytest.raises(ValueError):
        elliptic_j_value(2)
