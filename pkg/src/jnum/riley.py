"""Parabolic representations of two-bridge knot and link groups.

For the two-bridge knot or link of fraction p/q the generators are sent to

    A = [[1, 1], [0, 1]],    B = [[1, 0], [z, 1]],

and the defining relation A W = W B (knots, p odd) or A W = W A (links,
p even) holds exactly when z is a root of an integer polynomial. Here

    W = B^e1 A^e2 B^e3 ... ,    e_i = (-1)^floor(i q / p),  i = 1..p-1,

which ends in A^e_{p-1} for knots and B^e_{p-1} for links. Expanding the
product letter by letter (each letter is I plus a nilpotent) shows the
lower row of W is polynomial in z with integer coefficients:

    W_21 = sum_k f(p-1, 2k-1) z^k,    W_22 = sum_k f(p-1, 2k) z^k,

where f counts signed alternating index subsets and satisfies the
recurrence f(i, t) = f(i-1, t) + [i = t mod 2] e_i f(i-1, t-1). The knot
polynomial is W_22, the raw link polynomial W_21. A brute-force subset
expansion (subset_oracle_poly) and the symbolic matrix product
(word_matrix) give two independent cross-checks.

At a geometric root the Jorgensen number of the representation is |z|
for knots (witnessed by the pair (A, W)) and |z|^2 for links (witnessed
by (A, B)), with |z| < 4 in both cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import tolerances as tol
from .intpoly import IntPoly
from .linalg import JReport, Mat2, jorgensen_pair
from .words import GeneratorSet, SearchError, first_violation


class GeometricRootError(RuntimeError):
    """No root of the representation polynomial survives the discreteness screen."""


RILEY_A = Mat2(1.0, 1.0, 0.0, 1.0)


def riley_b(z: complex) -> Mat2:
    return Mat2(1.0, 0.0, z, 1.0)


@dataclass(frozen=True)
class TwoBridge:
    """A two-bridge fraction p/q: gcd(p, q) = 1, 0 < q < p. Knot iff p is odd."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("p must be at least 2")
        if not 0 < self.q < self.p:
            raise ValueError("q must satisfy 0 < q < p")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"p and q must be coprime, got {self.p}/{self.q}")

    @property
    def is_knot(self) -> bool:
        return self.p % 2 == 1

    def exponents(self) -> tuple:
        """e_i = (-1)^floor(i q / p) for i = 1..p-1. Palindromic when q is odd."""
        return tuple((-1) ** ((i * self.q) // self.p) for i in range(1, self.p))


def normalize(p: int, q: int) -> TwoBridge:
    """Reduce q mod p into (0, p) and validate. Even q is accepted."""
    if p < 2:
        raise ValueError("p must be at least 2")
    q = q % p
    if q == 0:
        raise ValueError("q must not be divisible by p")
    return TwoBridge(p, q)


def _alternating_dp(tb: TwoBridge) -> list:
    """f(p-1, t) for t = 0..p-1.

    f(i, t) sums, over size-t subsets of {1..i} whose elements alternate in
    parity starting odd (so position t has the parity of t), the product of
    the exponents e_j over the subset.
    """
    exps = tb.exponents()
    f = [0] * tb.p
    f[0] = 1
    for i in range(1, tb.p):
        e = exps[i - 1]
        top = min(i, tb.p - 1)
        for t in range(top, 0, -1):
            if (t ^ i) & 1 == 0:
                f[t] += e * f[t - 1]
    return f


def knot_poly(p: int, q: int) -> IntPoly:
    """The knot representation polynomial W_22 (p odd). Constant term 1."""
    tb = normalize(p, q)
    if not tb.is_knot:
        raise ValueError(f"{p}/{q} is a link fraction (p even); use link_poly")
    f = _alternating_dp(tb)
    return IntPoly.from_list(f[0::2])


@dataclass(frozen=True)
class LinkPoly:
    """Raw link polynomial W_21 and its normalization.

    The raw polynomial always vanishes at z = 0; the normalized form has
    the power of z divided out and a positive leading coefficient.
    """

    raw: IntPoly
    normalized: IntPoly


def link_poly(p: int, q: int) -> LinkPoly:
    """The link representation polynomial W_21 (p even), raw and normalized."""
    tb = normalize(p, q)
    if tb.is_knot:
        raise ValueError(f"{p}/{q} is a knot fraction (p odd); use knot_poly")
    f = _alternating_dp(tb)
    raw = IntPoly.from_list([0] + f[1::2])
    norm = raw.shifted_down(raw.valuation())
    if norm.coeffs[-1] < 0:
        norm = -norm
    return LinkPoly(raw, norm)


def subset_oracle_poly(p: int, q: int) -> IntPoly:
    """Brute-force subset expansion of the representation polynomial (p <= 13).

    Enumerates all 2^(p-1) index subsets directly instead of the dynamic
    program: a subset contributes iff its elements alternate in parity
    starting odd. Returns the knot polynomial for odd p, the raw link
    polynomial for even p.
    """
    tb = normalize(p, q)
    if p > 13:
        raise ValueError("subset oracle is limited to p <= 13")
    exps = tb.exponents()
    want_even_sizes = tb.is_knot
    coeffs = [0] * p
    for mask in range(1 << (p - 1)):
        sign = 1
        size = 0
        ok = True
        m = mask
        while m:
            low = (m & -m).bit_length()  # 1-based position = index i
            m &= m - 1
            size += 1
            if low % 2 != size % 2:
                ok = False
                break
            sign *= exps[low - 1]
        if not ok:
            continue
        if size % 2 == 0 and want_even_sizes:
            coeffs[size // 2] += sign
        elif size % 2 == 1 and not want_even_sizes:
            coeffs[(size + 1) // 2] += sign
    if not want_even_sizes:
        coeffs[0] = 0
    return IntPoly.from_list(coeffs)


@dataclass(frozen=True)
class PolyMat2:
    """2x2 matrix with IntPoly entries; the symbolic side of the word product."""

    a: IntPoly
    b: IntPoly
    c: IntPoly
    d: IntPoly

    @staticmethod
    def identity() -> "PolyMat2":
        one = IntPoly((1,))
        zero = IntPoly(())
        return PolyMat2(one, zero, zero, one)

    @staticmethod
    def letter_a(e: int) -> "PolyMat2":
        return PolyMat2(IntPoly((1,)), IntPoly((e,)), IntPoly(()), IntPoly((1,)))

    @staticmethod
    def letter_b(e: int) -> "PolyMat2":
        return PolyMat2(IntPoly((1,)), IntPoly(()), IntPoly((0, e)), IntPoly((1,)))

    def __matmul__(self, other: "PolyMat2") -> "PolyMat2":
        return PolyMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def eval(self, z: complex) -> Mat2:
        return Mat2(self.a(z), self.b(z), self.c(z), self.d(z))


def word_matrix(p: int, q: int) -> PolyMat2:
    """The symbolic word W = B^e1 A^e2 B^e3 ... as a PolyMat2."""
    tb = normalize(p, q)
    w = PolyMat2.identity()
    for i, e in enumerate(tb.exponents(), start=1):
        letter = PolyMat2.letter_b(e) if i % 2 == 1 else PolyMat2.letter_a(e)
        w = w @ letter
    return w


# ---------------------------------------------------------------------------
# numeric roots


@dataclass(frozen=True)
class RootSet:
    """All complex roots of an integer polynomial, with the worst residual."""

    poly: IntPoly
    roots: tuple
    residual: float


def solve_roots(poly: IntPoly) -> RootSet:
    """Durand-Kerner iteration with Newton polish and conjugate pairing.

    The residual max |poly(root)| is required to come out below
    1e-9 * (1 + max |coefficient|); failure to converge raises SearchError.
    """
    if poly.is_zero:
        raise ValueError("zero polynomial has every point as a root")
    v = poly.valuation()
    core = poly.shifted_down(v)
    roots = [0.0 + 0.0j] * v
    deg = core.degree
    if deg > 0:
        monic = np.array(core.coeffs, dtype=np.complex128) / core.coeffs[-1]
        radius = 1.0 + float(np.abs(monic[:-1]).max())
        ang = 2.0 * np.pi * np.arange(deg) / deg + 0.4
        z = radius * np.exp(1j * ang)
        desc = monic[::-1]
        for _ in range(500):
            pv = np.polyval(desc, z)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            step = pv / diff.prod(axis=1)
            z = z - step
            if np.abs(step).max() < 1e-14 * max(1.0, np.abs(z).max()):
                break
        dcoef = np.polyder(desc)
        for _ in range(3):
            dv = np.polyval(dcoef, z)
            safe = np.abs(dv) > 1e-30
            z = np.where(safe, z - np.polyval(desc, z) / np.where(safe, dv, 1.0), z)
        zs = list(z)
        # real coefficients: snap near-real roots, average conjugate pairs
        used = [False] * len(zs)
        for i, r in enumerate(zs):
            if abs(r.imag) <= 1e-9 * (1.0 + abs(r.real)):
                zs[i] = complex(r.real, 0.0)
                used[i] = True
        for i, r in enumerate(zs):
            if used[i]:
                continue
            best, best_d = -1, float("inf")
            for j in range(i + 1, len(zs)):
                if not used[j]:
                    d = abs(zs[j] - r.conjugate())
                    if d < best_d:
                        best, best_d = j, d
            if best >= 0 and best_d <= 1e-6 * (1.0 + abs(r)):
                avg = (r + zs[best].conjugate()) / 2.0
                zs[i], zs[best] = avg, avg.conjugate()
                used[i] = used[best] = True
        roots.extend(zs)
    roots.sort(key=lambda w: (round(w.real, 12), round(w.imag, 12)))
    residual = max((abs(poly(r)) for r in roots), default=0.0)
    bound = 1e-9 * (1.0 + max(abs(c) for c in poly.coeffs))
    if residual > bound:
        raise SearchError(
            f"root refinement stalled: residual {residual:.3e} exceeds {bound:.3e}")
    return RootSet(poly, tuple(roots), residual)


@dataclass(frozen=True)
class RootChoice:
    """Outcome of the geometric-root screen."""

    z: complex
    index: int           # position in the RootSet ordering
    ambiguous: bool      # more than one candidate survived
    survivors: tuple
    rejected: tuple      # (root, J of the confirmed violation) pairs


def _screen_root(z: complex, sample_len: int) -> Optional[float]:
    """J value of a confirmed inequality violation for <A, B(z)>, else None."""
    gens = GeneratorSet(("A", "B"), (RILEY_A, riley_b(z)))
    for level in range(2, sample_len + 1):
        hit = first_violation(gens, level, threshold=1.0 - 1e-6)
        if hit is not None:
            return hit[0]
    return None


def select_geometric_root(tb: TwoBridge, root_index: Optional[int] = None,
                          sample_len: int = 6) -> RootChoice:
    """Pick the geometric root of the representation polynomial.

    Real roots are discarded outright (they give representations into
    PSL2(R), never the discrete faithful one of a hyperbolic two-bridge
    complement). The remaining roots are merged into conjugate pairs,
    represented in the upper half plane, and screened by a Jorgensen
    inequality sweep over <A, B(z)> at word lengths 2..sample_len; any
    confirmed non-elementary pair with J < 1 rejects the root. Of the
    survivors the one of smallest modulus is returned, flagged ambiguous
    when others survived too. root_index bypasses the whole screen and
    picks that position of the RootSet ordering.
    """
    poly = knot_poly(tb.p, tb.q) if tb.is_knot else link_poly(tb.p, tb.q).normalized
    rs = solve_roots(poly)
    if root_index is not None:
        if not 0 <= root_index < len(rs.roots):
            raise IndexError(f"root index {root_index} out of range 0..{len(rs.roots) - 1}")
        return RootChoice(rs.roots[root_index], root_index, False, (), ())
    candidates = []
    for i, r in enumerate(rs.roots):
        if r.imag > tol.CX_EPS:
            candidates.append((i, r))
    survivors = []
    rejected = []
    for i, r in candidates:
        bad_j = _screen_root(r, sample_len)
        if bad_j is None:
            survivors.append((i, r))
        else:
            rejected.append((r, bad_j))
    if not survivors:
        raise GeometricRootError(
            f"no geometric root for {tb.p}/{tb.q}: all roots real or rejected")
    survivors.sort(key=lambda t: (abs(t[1]), t[1].real))
    idx, z = survivors[0]
    return RootChoice(z, idx, len(survivors) > 1,
                      tuple(r for _, r in survivors), tuple(rejected))


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class BridgeReport:
    """Representation data of a two-bridge knot or link at its geometric root."""

    bridge: TwoBridge
    poly: IntPoly        # knot polynomial, or normalized link polynomial
    z: complex
    jorgensen: float     # |z| for knots, |z|^2 for links
    waist: float         # shortest-waist upper bound: sqrt(|z|) resp. |z|
    ambiguous: bool
    pair: JReport        # witness pair: (A, W) for knots, (A, B) for links


def _check_relation(lhs: Mat2, rhs: Mat2, what: str):
    scale = 1.0 + max(abs(e) for e in lhs.entries())
    dev = max(abs(p - q) for p, q in zip(lhs.entries(), rhs.entries()))
    if dev > tol.MAT_EPS * scale:
        raise SearchError(f"{what} fails by {dev:.3e} at the selected root")


def knot_jreport(p: int, q: int, root_index: Optional[int] = None,
                 sample_len: int = 6) -> BridgeReport:
    """Jorgensen data of the two-bridge knot p/q: J(A, W) = |z| < 4."""
    tb = normalize(p, q)
    if not tb.is_knot:
        raise ValueError(f"{p}/{q} is a link fraction; use link_jreport")
    choice = select_geometric_root(tb, root_index=root_index, sample_len=sample_len)
    z = choice.z
    if abs(z) >= 4.0:
        raise SearchError(f"selected root has |z| = {abs(z):.6f} >= 4")
    w = word_matrix(p, q).eval(z)
    _check_relation(RILEY_A @ w, w @ riley_b(z), "the defining relation A W = W B")
    jr = jorgensen_pair(RILEY_A, w)
    if abs(jr.value - abs(z)) > 1e-6 * (1.0 + abs(z)):
        raise SearchError(f"J(A, W) = {jr.value} disagrees with |z| = {abs(z)}")
    return BridgeReport(tb, knot_poly(p, q), z, jr.value,
                        math.sqrt(abs(z)), choice.ambiguous, jr)


def link_jreport(p: int, q: int, root_index: Optional[int] = None,
                 sample_len: int = 6) -> BridgeReport:
    """Jorgensen data of the two-bridge link p/q: J(A, B) = |z|^2 < 16."""
    tb = normalize(p, q)
    if tb.is_knot:
        raise ValueError(f"{p}/{q} is a knot fraction; use knot_jreport")
    choice = select_geometric_root(tb, root_index=root_index, sample_len=sample_len)
    z = choice.z
    if abs(z) >= 4.0:
        raise SearchError(f"selected root has |z| = {abs(z):.6f} >= 4")
    w = word_matrix(p, q).eval(z)
    _check_relation(RILEY_A @ w, w @ RILEY_A, "the defining relation A W = W A")
    jr = jorgensen_pair(RILEY_A, riley_b(z))
    if abs(jr.value - abs(z) ** 2) > 1e-6 * (1.0 + abs(z) ** 2):
        raise SearchError(f"J(A, B) = {jr.value} disagrees with |z|^2 = {abs(z) ** 2}")
    return BridgeReport(tb, link_poly(p, q).normalized, z, jr.value,
                        abs(z), choice.ambiguous, jr)
