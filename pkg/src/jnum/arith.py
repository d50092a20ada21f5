"""Arithmetic invariants: trace fields, units, and the elliptic-order screen.

The groups of interest have invariant trace field an imaginary quadratic
field Q(sqrt(-d)). Field membership of a floating-point value is decided
by recognizing an integer minimal polynomial x^2 + bx + c and reducing
4c - b^2 to its squarefree part.

The elliptic screen (elliptic_type_check) evaluates six necessary
conditions for a pair (A, B) with A parabolic and B elliptic of order n
to generate an arithmetic group attaining Jorgensen number 1; the inputs
it cannot derive from floats (algebraic integrality, Galois conjugates)
are supplied by the caller and tracked as pass / fail / unchecked.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from . import tolerances as tol
from .linalg import Mat2, commutator

ELLIPTIC_ORDERS = (7, 8, 9, 10, 11, 12, 14, 16, 18, 24, 30)


def _squarefree_part(n: int) -> int:
    if n <= 0:
        raise ValueError("positive integer required")
    res = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                res *= p
        p += 1 if p == 2 else 2
    return res * n


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


@dataclass(frozen=True)
class QuadImagField:
    """The imaginary quadratic field Q(sqrt(-d)), d squarefree positive."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be a positive integer")
        if _squarefree_part(self.d) != self.d:
            raise ValueError(f"d = {self.d} is not squarefree")

    @property
    def discriminant(self) -> int:
        return -self.d if self.d % 4 == 3 else -4 * self.d

    @property
    def units(self) -> tuple:
        """Units of the ring of integers: 4th roots for d=1, 6th for d=3, else +-1."""
        if self.d == 1:
            return (1 + 0j, 1j, -1 + 0j, -1j)
        if self.d == 3:
            return tuple(cmath.exp(1j * math.pi * k / 3.0) for k in range(6))
        return (1 + 0j, -1 + 0j)

    @property
    def name(self) -> str:
        return f"Q(sqrt(-{self.d}))"


def recognize_quad_imaginary(x: complex, coeff_bound: int = 10 ** 6
                             ) -> Optional[QuadImagField]:
    """Recognize x as an element of an imaginary quadratic field.

    Solves x^2 + bx + c = 0 for real b, c directly (b from the imaginary
    parts, c from the real parts), rounds to integers, and verifies. Returns
    None for real x, for non-integer minimal polynomials, and when the
    rounded coefficients exceed coeff_bound.
    """
    x = complex(x)
    if abs(x.imag) <= tol.CX_EPS:
        return None
    x2 = x * x
    b = -x2.imag / x.imag
    c = -x2.real - b * x.real
    br, cr = round(b), round(c)
    if abs(br) > coeff_bound or abs(cr) > coeff_bound:
        return None
    scale = 1.0 + abs(x) ** 2
    if abs(x2 + br * x + cr) > 1e-6 * scale:
        return None
    disc = 4 * cr - br * br
    if disc <= 0:
        return None
    return QuadImagField(_squarefree_part(disc))


def trace_field_generators(x: Mat2, y: Mat2) -> list:
    """Field generators of the trace field: [tr x, tr y, tr xy]."""
    return [x.trace, y.trace, (x @ y).trace]


def invariant_trace_field_generators(x: Mat2, y: Mat2) -> list:
    """Field generators of the invariant trace field (traces of squares).

    Generically [tr^2 x, tr^2 y, tr x tr y tr xy]; when one trace vanishes
    that product carries no information and [tr^2 of the other, tr [x, y]]
    generates instead. Raises when both traces vanish.
    """
    tx, ty = x.trace, y.trace
    txy = (x @ y).trace
    if abs(tx) <= tol.CX_EPS and abs(ty) <= tol.CX_EPS:
        raise ValueError("both generators are traceless; generators are not determined")
    if abs(ty) <= tol.CX_EPS:
        return [tx * tx, commutator(x, y).trace]
    if abs(tx) <= tol.CX_EPS:
        return [ty * ty, commutator(x, y).trace]
    return [tx * tx, ty * ty, tx * ty * txy]


def recognize_invariant_field(x: Mat2, y: Mat2) -> Optional[QuadImagField]:
    """First imaginary quadratic field recognized among the invariant generators."""
    for g in invariant_trace_field_generators(x, y):
        f = recognize_quad_imaginary(g)
        if f is not None:
            return f
    return None


def is_algebraic_unit(x: complex, field_: QuadImagField) -> bool:
    """Whether x equals a unit of the ring of integers of the field."""
    return any(abs(complex(x) - u) <= tol.CX_EPS for u in field_.units)


def unit_multiple_check(value: complex, base: complex,
                        field_: QuadImagField) -> Optional[complex]:
    """The unit u with value = u * base, if one exists; None otherwise."""
    if abs(base) <= tol.CX_EPS:
        raise ValueError("base is too close to zero to divide by")
    ratio = complex(value) / complex(base)
    for u in field_.units:
        if abs(ratio - u) <= tol.CX_EPS * (1.0 + abs(ratio)):
            return u
    return None


def delta_discriminant(x: Mat2, y: Mat2) -> complex:
    """(tr^2 x)(tr^2 y)[(tr^2 x - 4)(tr^2 y - 4) + 4(tr [x, y] - 2)].

    A commensurability invariant of the pair: up to squares it is the
    second Hilbert symbol entry of the associated quaternion algebra.
    """
    tx2 = x.trace ** 2
    ty2 = y.trace ** 2
    tk = commutator(x, y).trace
    return tx2 * ty2 * ((tx2 - 4.0) * (ty2 - 4.0) + 4.0 * (tk - 2.0))


def hilbert_real_ramified(pairs) -> bool:
    """Whether the Hilbert symbol (a, b) ramifies at every given real place.

    Each pair holds the images of (a, b) under one real embedding; the
    symbol ramifies there iff both are negative. An empty list is vacuously
    True (imaginary quadratic fields have no real places).
    """
    return all(a < 0 and b < 0 for a, b in pairs)


@dataclass(frozen=True)
class EllipticCandidate:
    """Input data for the elliptic-order screen.

    tr2B is tr^2 B (real for B elliptic); tr2B_conjugates are its Galois
    conjugates other than itself, either all phi(n) - 2 of them, or one
    per conjugate real place (phi(n)/2 - 1), or empty when unknown. The
    two flags assert algebraic integrality of tr(AB) and tr(B), which
    cannot be decided from floats.
    """

    n: int
    tr2B: float
    tr2B_conjugates: tuple = ()
    trAB_integral: bool = True
    trB_integral: bool = True

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("elliptic order must be at least 3")
        phi = _totient(self.n)
        allowed = {0, phi - 2, phi // 2 - 1}
        if len(self.tr2B_conjugates) not in allowed:
            raise ValueError(
                f"need 0, {phi // 2 - 1}, or {phi - 2} conjugates for n = {self.n}, "
                f"got {len(self.tr2B_conjugates)}")

    def conjugate_places(self) -> tuple:
        """(k, tau) pairs: the embedding label k in [2, n/2] and the conjugate."""
        if not self.tr2B_conjugates:
            return ()
        half = [k for k in range(2, self.n // 2 + 1) if math.gcd(k, self.n) == 1]
        if len(self.tr2B_conjugates) == len(half):
            return tuple(zip(half, self.tr2B_conjugates))
        full = [k for k in range(2, self.n - 1) if math.gcd(k, self.n) == 1]
        return tuple(zip(full, self.tr2B_conjugates))

    def embedding_labels(self) -> tuple:
        """All conjugate-place labels k, available with or without conjugates."""
        return tuple(k for k in range(2, self.n // 2 + 1)
                     if math.gcd(k, self.n) == 1)


PASS, FAIL, UNCHECKED = "pass", "fail", "unchecked"


@dataclass(frozen=True)
class ConditionReport:
    """Six-condition verdict of the elliptic screen."""

    candidate: EllipticCandidate
    statuses: tuple
    notes: tuple

    @property
    def ok(self) -> bool:
        return FAIL not in self.statuses

    @property
    def failed(self) -> tuple:
        """1-based indices of failed conditions."""
        return tuple(i + 1 for i, s in enumerate(self.statuses) if s == FAIL)


def elliptic_type_check(cand: EllipticCandidate) -> ConditionReport:
    """Screen a parabolic-elliptic pair for the arithmetic J = 1 conditions.

    1. the elliptic order n lies in the finite admissible list;
    2. tr^2 B exceeds 2 / (1 - cos(2 pi / n));
    3. tr(AB) is an algebraic integer  (supplied flag);
    4. every Galois conjugate tau of tr^2 B satisfies
       -1 < cos(2 pi k / n) < 1/2 and 0 < tau < 2 / (1 - cos(2 pi k / n));
    5. the quaternion algebra ramifies at every real place: with a = -1,
       both b1 = 2 cos(2 pi k / n) - 1 and
       b2 = 2 (cos(4 pi k / n) + cos(2 pi k / n)) tau must be negative;
    6. tr(B) is an algebraic integer  (supplied flag).

    Conditions 4 and 5 report "unchecked" when no conjugates were supplied
    (for 5 the tau-free sign of b1 is still screened).
    """
    statuses = [UNCHECKED] * 6
    notes = [""] * 6

    statuses[0] = PASS if cand.n in ELLIPTIC_ORDERS else FAIL
    notes[0] = f"n = {cand.n}, admissible orders {ELLIPTIC_ORDERS}"

    bound = 2.0 / (1.0 - math.cos(2.0 * math.pi / cand.n))
    statuses[1] = PASS if cand.tr2B > bound else FAIL
    notes[1] = f"tr^2 B = {cand.tr2B:.9g}, bound {bound:.9g}"

    statuses[2] = PASS if cand.trAB_integral else FAIL
    notes[2] = "integrality of tr(AB) supplied by caller"

    places = cand.conjugate_places()
    if places:
        bad4 = []
        bad5 = []
        for k, tau in places:
            ck = math.cos(2.0 * math.pi * k / cand.n)
            if not (-1.0 < ck < 0.5 and 0.0 < tau < 2.0 / (1.0 - ck)):
                bad4.append(k)
            b1 = 2.0 * ck - 1.0
            b2 = 2.0 * (math.cos(4.0 * math.pi * k / cand.n) + ck) * tau
            if not (b1 < 0.0 and b2 < 0.0):
                bad5.append(k)
        statuses[3] = FAIL if bad4 else PASS
        notes[3] = f"violating places {bad4}" if bad4 else f"{len(places)} places checked"
        statuses[4] = FAIL if bad5 else PASS
        notes[4] = (f"non-negative symbol entry at places {bad5}" if bad5
                    else "a = -1, b1 < 0, b2 < 0 at every real place")
    else:
        notes[3] = "no conjugates supplied"
        bad_b1 = [k for k in cand.embedding_labels()
                  if 2.0 * math.cos(2.0 * math.pi * k / cand.n) - 1.0 >= 0.0]
        if bad_b1:
            statuses[4] = FAIL
            notes[4] = f"b1 >= 0 at places {bad_b1}"
        else:
            notes[4] = "b1 < 0 at every place; b2 needs conjugates"

    statuses[5] = PASS if cand.trB_integral else FAIL
    notes[5] = "integrality of tr(B) supplied by caller"

    return ConditionReport(cand, tuple(statuses), tuple(notes))


def elliptic_j_value(n: int) -> float:
    """|2 cos(2 pi / n) - 2| + |2 cos(2 pi / n) - 1|: J of the extremal
    parabolic-elliptic pair of order n. Equals 1 exactly for every n > 6."""
    if n < 3:
        raise ValueError("elliptic order must be at least 3")
    c = 2.0 * math.cos(2.0 * math.pi / n)
    return abs(c - 2.0) + abs(c - 1.0)
