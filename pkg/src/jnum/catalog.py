"""Cataloged groups: the G(theta, k) families, Bianchi groups, and tables.

Fixture data lives in JSON files under jnum/data (validated against
data/fixtures_schema.json by the test suite); this module wraps it in
typed records and provides the generator constructions:

  * gtk_generators: the pair A = [[1,1],[0,1]],
    B = [[0, -i e^{-i theta}], [-i e^{i theta}, 2 k e^{i theta}]],
    for which tr [A, B] - 2 = -e^{2 i theta}, so J(A, B) = 1 identically;
  * sigma_lambda_generators: B = [[0, -1/sigma], [sigma, lambda]], for
    which tr [A, B] - 2 = sigma^2;
  * bianchi_generators / bianchi_relations: A, S = [[0,-1],[1,0]],
    T = [[1, alpha],[0,1]] generating PSL2(O_d) for d in {1,2,3,7,11},
    with a finite presentation in those generators;
  * losid_identity_suite: the matrix identities that locate each J = 1
    family inside its target group, case by case.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Optional

from .intpoly import IntPoly
from .linalg import IDENT, Mat2, proj_dist
from .words import GeneratorSet, Word, evaluate

BIANCHI_DS = (1, 2, 3, 7, 11)


def _load_json(name: str):
    path = resources.files("jnum") / "data" / name
    with path.open("r", encoding="utf-8") as f:
        return json.load(f)


def _cx(obj) -> complex:
    return complex(obj["re"], obj["im"])


# ---------------------------------------------------------------------------
# generator constructions


@dataclass(frozen=True)
class GtkParams:
    """theta = pi * theta_num / theta_den and the real parameter k > 0."""

    theta_num: int
    theta_den: int
    k: float

    def __post_init__(self):
        if self.theta_den <= 0 or self.theta_num <= 0:
            raise ValueError("theta must be a positive rational multiple of pi")
        if self.k <= 0:
            raise ValueError("k must be positive")

    @property
    def theta(self) -> float:
        return math.pi * self.theta_num / self.theta_den


def gtk_generators(params: GtkParams) -> GeneratorSet:
    """The pair (A, B(theta, k)); J(A, B) = 1 for every theta and k."""
    e_i = cmath.exp(1j * params.theta)
    b = Mat2(0.0, -1j / e_i, -1j * e_i, 2.0 * params.k * e_i)
    return GeneratorSet(("A", "B"), (Mat2(1.0, 1.0, 0.0, 1.0), b))


def sigma_lambda_generators(sigma: complex, lam: complex) -> GeneratorSet:
    """The pair (A, [[0, -1/sigma], [sigma, lam]]); tr [A, B] - 2 = sigma^2."""
    if abs(sigma) == 0:
        raise ValueError("sigma must be nonzero")
    b = Mat2(0.0, -1.0 / sigma, sigma, lam)
    return GeneratorSet(("A", "B"), (Mat2(1.0, 1.0, 0.0, 1.0), b))


def bianchi_alpha(d: int) -> complex:
    """Ring generator of O_d: sqrt(-d), or (1 + sqrt(-d))/2 when d = 3 mod 4."""
    if d not in BIANCHI_DS:
        raise ValueError(f"d must be one of {BIANCHI_DS}, got {d}")
    rt = 1j * math.sqrt(d)
    return (1 + rt) / 2 if d % 4 == 3 else rt


def bianchi_generators(d: int) -> GeneratorSet:
    """A, S, T generating PSL2(O_d) for the five Euclidean d."""
    alpha = bianchi_alpha(d)
    return GeneratorSet(
        ("A", "S", "T"),
        (Mat2(1.0, 1.0, 0.0, 1.0), Mat2(0.0, -1.0, 1.0, 0.0),
         Mat2(1.0, alpha, 0.0, 1.0)))


_BIANCHI_RELATORS = {
    1: ("SS", "ASASAS", "ATA'T'", "TTST'S" * 2, "TST'STS" * 2, "ATST'STS" * 2),
    2: ("SS", "ASASAS", "ATA'T'", "STS'T'" * 2),
    3: ("SS", "ASASAS", "ATA'T'", "TST'AT'AS" * 2, "TST'AS" * 3,
        "A'T'SA'TSAT'SAT'SA'TS"),
    7: ("SS", "ASASAS", "ATA'T'", "SAT'ST" * 2),
    11: ("SS", "ASASAS", "ATA'T'", "SAT'ST" * 3),
}


def bianchi_relations(d: int) -> tuple:
    """Defining relators of PSL2(O_d) as words in the generators A, S, T."""
    if d not in _BIANCHI_RELATORS:
        raise ValueError(f"d must be one of {BIANCHI_DS}, got {d}")
    names = ("A", "S", "T")
    return tuple(Word.parse(text, names) for text in _BIANCHI_RELATORS[d])


@dataclass(frozen=True)
class RelationReport:
    """Projective deviation of each relator from the identity."""

    words: tuple
    deviations: tuple
    max_deviation: float

    def ok(self, eps: float = 1e-9) -> bool:
        return self.max_deviation <= eps


def verify_relations(gens: GeneratorSet, relators) -> RelationReport:
    """Evaluate each relator and measure its projective distance from I."""
    words = tuple(relators)
    devs = tuple(proj_dist(evaluate(gens, w), IDENT) for w in words)
    return RelationReport(words, devs, max(devs) if devs else 0.0)


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True)
class CatalogEntry:
    """An arithmetic group with known Jorgensen number, realized as a pair."""

    label: str
    generators: GeneratorSet
    expected_j: float
    field_d: Optional[int]
    provenance: str

    @property
    def c(self) -> complex:
        return self.generators.mats[1].c


@lru_cache(maxsize=1)
def arithcomp_table() -> tuple:
    """Sixteen arithmetic groups: J attained by a parabolic pair, J = |c|^2."""
    out = []
    for row in _load_json("arithcomp.json"):
        c = _cx(row["c"])
        gens = GeneratorSet(("A", "B"),
                            (Mat2(1.0, 1.0, 0.0, 1.0), Mat2(1.0, 0.0, c, 1.0)))
        out.append(CatalogEntry(row["label"], gens, float(row["expected_j"]),
                                row["field_d"], row["provenance"]))
    return tuple(out)


@dataclass(frozen=True)
class KnotTableRow:
    """A two-bridge knot with tabulated J and primitive defect minimum."""

    label: str
    p: int
    q: int
    minpoly: IntPoly
    z: complex
    jorgensen: float
    alpha: float
    provenance: str


@lru_cache(maxsize=1)
def knot_table() -> tuple:
    data = _load_json("knot_table.json")
    return tuple(
        KnotTableRow(r["label"], r["p"], r["q"], IntPoly.parse(r["minpoly"]),
                     _cx(r["z"]), r["jorgensen"], r["alpha"], r["provenance"])
        for r in data["rows"])


@lru_cache(maxsize=1)
def geodesic_defect_bound() -> float:
    """2 cosh(3/2): the defect |tr^2 - 4| of a geodesic of length 3 is above
    any table alpha, so length-<=3 classes decide the table minima."""
    return float(_load_json("knot_table.json")["geodesic_defect_bound"])


@dataclass(frozen=True)
class GtkFamilyRow:
    """One of the twelve J = 1 families G(theta, k)."""

    label: str
    params: GtkParams
    k_exact: str
    arithmetic: bool
    field_d: Optional[int]
    identification: Optional[str]
    provenance: str

    def generators(self) -> GeneratorSet:
        return gtk_generators(self.params)


@lru_cache(maxsize=1)
def gtk_families() -> tuple:
    out = []
    for row in _load_json("gtk_families.json"):
        params = GtkParams(row["theta"]["num"], row["theta"]["den"], row["k"])
        out.append(GtkFamilyRow(row["label"], params, row["k_exact"],
                                row["arithmetic"], row["field_d"],
                                row["identification"], row["provenance"]))
    return tuple(out)


@dataclass(frozen=True)
class FamilyMatch:
    """A (theta, k) hit in the family table."""

    row: GtkFamilyRow
    n: int  # multiplier for the k = sqrt(3) n / 2 families, 1 otherwise
    identification: Optional[str]


_SWAP_EXTENSION = ("Z2-extension of the figure-eight knot group "
                   "(involution swapping the parabolic generators{})")


def _scaled_identification(theta: Fraction, n: int, row: GtkFamilyRow):
    """Identification for the two families parameterized by k = sqrt(3)n/2.

    At theta = pi/6 the group is the figure-eight knot group for odd n
    and its extension by the generator-swapping involution for even n;
    at theta = pi/3 odd n gives the extension by the inverting involution
    and even n the swapping one again, over a larger trace field.
    """
    if theta == Fraction(1, 6):
        if n % 2:
            return row.identification
        return _SWAP_EXTENSION.format("")
    if n % 2:
        return row.identification
    return _SWAP_EXTENSION.format("; enlarged trace field")


def family_match(params: GtkParams, k_eps: float = 1e-9) -> Optional[FamilyMatch]:
    """Look (theta, k) up in the family table, None if absent.

    The theta = pi/6 and theta = pi/3 rows stand for every positive
    integer multiple of k = sqrt(3)/2, so those match with the
    appropriate n; all other rows match their single k value.
    """
    theta = Fraction(params.theta_num, params.theta_den)
    half_rt3 = math.sqrt(3.0) / 2.0
    for row in gtk_families():
        if Fraction(row.params.theta_num, row.params.theta_den) != theta:
            continue
        if theta in (Fraction(1, 6), Fraction(1, 3)):
            n = round(params.k / half_rt3)
            if n >= 1 and abs(params.k - n * half_rt3) <= k_eps:
                return FamilyMatch(row, n, _scaled_identification(theta, n, row))
        elif abs(params.k - row.params.k) <= k_eps:
            return FamilyMatch(row, 1, row.identification)
    return None


def unit_j_pairs() -> tuple:
    """Every cataloged pair attaining J = 1: the twelve families plus the
    arithcomp entries with expected J equal to 1, as (label, GeneratorSet)."""
    pairs = [(row.label, row.generators()) for row in gtk_families()]
    pairs.extend((e.label, e.generators) for e in arithcomp_table()
                 if abs(e.expected_j - 1.0) <= 1e-12)
    return tuple(pairs)


# ---------------------------------------------------------------------------
# identity suite


@dataclass(frozen=True)
class IdentityCheck:
    """A single matrix identity with its projective deviation.

    For negated identities (label ends with "!= 1") the deviation is 0.0
    when the matrices are genuinely distinct and 1.0 when they collapse.
    """

    label: str
    deviation: float

    def ok(self, eps: float = 1e-9) -> bool:
        return self.deviation <= eps


def _eq(label: str, lhs: Mat2, rhs: Mat2) -> IdentityCheck:
    return IdentityCheck(label, proj_dist(lhs, rhs))


def _word(gens: GeneratorSet, text: str) -> Mat2:
    return evaluate(gens, gens.word(text))


def losid_identity_suite() -> tuple:
    """Matrix identities locating each J = 1 family inside its target group.

    Case 1: theta = pi/6. C = B A B^-1 is parabolic with lower-left entry
    e^{i pi/3} independently of k; T = C^-1 A C A^-2 C A C^-1 is the
    translation by 2 sqrt(3) i. For k = sqrt(3) n / 2 the group element
    D = B T^{-n/2} (n even) is an involution conjugating A to C, while for
    n odd B is a word in A and C directly.

    Case 2: theta = pi/4, k = 1/2: BA has order 4.

    Cases 3 and 4: theta = pi/4, k = 1 and 3/2. With B2 the k = 1/2 matrix,
    S, T, U below satisfy the defining relators of the target group and
    express A and the k = 1, 3/2 matrices as words in them.

    Case 5: theta = pi/3, mirror of case 1 with C = B A^-1 B^-1; the n odd
    witness D = B^-1 A^-1 C A C^-1 is diag(i, -i), conjugating A and C to
    their inverses.

    Cases 6-8: theta = pi/2, k = 1/2, sqrt(2)/2, sqrt(3)/2. The words
    S = A^-1 B A^-1 B^-1 A^-1 and T = A B A B^-1 A B come out as
    [[0,-1],[1,0]] and the translation by i, i sqrt(2), i sqrt(3), and
    S T = B.
    """
    checks = []
    a = Mat2(1.0, 1.0, 0.0, 1.0)
    rt3 = math.sqrt(3.0)

    def translation(mu: complex) -> Mat2:
        return Mat2(1.0, mu, 0.0, 1.0)

    def lower(mu: complex) -> Mat2:
        return Mat2(1.0, 0.0, mu, 1.0)

    # case 1: theta = pi/6, k = sqrt(3) n / 2
    for n in (1, 2):
        gens = gtk_generators(GtkParams(1, 6, rt3 * n / 2.0))
        b = gens.mats[1]
        c = b @ a @ b.inv()
        checks.append(_eq(f"case 1 (n={n}): B A B^-1 = C",
                          c, lower(cmath.exp(1j * math.pi / 3.0))))
        t = c.inv() @ a @ c @ a.power(-2) @ c @ a @ c.inv()
        checks.append(_eq(f"case 1 (n={n}): T = [[1, 2 sqrt(3) i], [0, 1]]",
                          t, translation(2j * rt3)))
        if n % 2 == 0:
            d = b @ t.power(-n // 2)
            ep = cmath.exp(1j * math.pi / 3.0)
            checks.append(_eq(f"case 1 (n={n}): D = B T^(-n/2) antidiagonal",
                              d, Mat2(0.0, -ep, 1.0 / ep, 0.0)))
            checks.append(_eq(f"case 1 (n={n}): B = D T^(n/2)", b, d @ t.power(n // 2)))
            checks.append(_eq(f"case 1 (n={n}): D A D^-1 = C", d @ a @ d.inv(), c))
        else:
            lhs = a.inv() @ c @ a @ c.inv() @ t.power((n - 1) // 2)
            checks.append(_eq(f"case 1 (n={n}): B = A^-1 C A C^-1 T^((n-1)/2)",
                              b, lhs))

    # case 2: theta = pi/4, k = 1/2
    g2 = gtk_generators(GtkParams(1, 4, 0.5))
    ba = g2.mats[1] @ g2.mats[0]
    checks.append(_eq("case 2: (BA)^4 = 1", ba.power(4), IDENT))
    checks.append(IdentityCheck(
        "case 2: (BA)^2 != 1", 1.0 if ba.power(2).is_identity_proj() else 0.0))

    # cases 3 and 4: theta = pi/4, k = 1 and k = 3/2, inside the case 2 group
    s = _word(g2, "ABBAB'")
    t = _word(g2, "AABBAB'")
    u = _word(g2, "ABBA'B'B'A'B")
    for label, m in (("U^2", u.power(2)), ("S^4", s.power(4)),
                     ("T^4", t.power(4)), ("(US)^2", (u @ s).power(2)),
                     ("(U'T)^3", (u.inv() @ t).power(3)),
                     ("(TS)^2", (t @ s).power(2))):
        checks.append(_eq(f"cases 3-4: relator {label} = 1", m, IDENT))
    checks.append(_eq("cases 3-4: A = T S^-1", a, t @ s.inv()))
    b3 = gtk_generators(GtkParams(1, 4, 1.0)).mats[1]
    checks.append(_eq("case 3: B(pi/4, 1) = S U T S^2 T^-1 S^-1",
                      b3, s @ u @ t @ s.power(2) @ t.inv() @ s.inv()))
    b4 = gtk_generators(GtkParams(1, 4, 1.5)).mats[1]
    checks.append(_eq("case 4: B(pi/4, 3/2) = S U T S^2 T^-1 S T^-1 S^-1",
                      b4, s @ u @ t @ s.power(2) @ t.inv() @ s @ t.inv() @ s.inv()))

    # case 5: theta = pi/3, k = sqrt(3) n / 2
    for n in (1, 2):
        gens = gtk_generators(GtkParams(1, 3, rt3 * n / 2.0))
        b = gens.mats[1]
        c = b @ a.inv() @ b.inv()
        checks.append(_eq(f"case 5 (n={n}): B A^-1 B^-1 = C",
                          c, lower(cmath.exp(-1j * math.pi / 3.0))))
        t = c @ a.inv() @ c.inv() @ a.power(2) @ c.inv() @ a.inv() @ c
        checks.append(_eq(f"case 5 (n={n}): T = [[1, 2 sqrt(3) i], [0, 1]]",
                          t, translation(2j * rt3)))
        if n % 2 == 0:
            d = b @ t.power(-n // 2)
            ep = cmath.exp(1j * math.pi / 6.0)
            checks.append(_eq(f"case 5 (n={n}): D = B T^(-n/2) antidiagonal",
                              d, Mat2(0.0, -ep, 1.0 / ep, 0.0)))
            # The involution here sends A to C^-1, so it is A^-1 that lands on C.
            checks.append(_eq(f"case 5 (n={n}): D A^-1 D^-1 = C",
                              d @ a.inv() @ d.inv(), c))
        else:
            d = b.inv() @ a.inv() @ c @ a @ c.inv() @ t.power(-(n - 1) // 2)
            checks.append(_eq(f"case 5 (n={n}): D = diag(i, -i)",
                              d, Mat2(1j, 0.0, 0.0, -1j)))
            checks.append(_eq(f"case 5 (n={n}): D A D^-1 = A^-1",
                              d @ a @ d.inv(), a.inv()))
            checks.append(_eq(f"case 5 (n={n}): D C D^-1 = C^-1",
                              d @ c @ d.inv(), c.inv()))

    # cases 6-8: theta = pi/2
    for case, (k, mu) in enumerate(
            {0.5: 1j, math.sqrt(2.0) / 2.0: 1j * math.sqrt(2.0),
             rt3 / 2.0: 1j * rt3}.items(), start=6):
        gens = gtk_generators(GtkParams(1, 2, k))
        b = gens.mats[1]
        s = _word(gens, "A'BA'B'A'")
        t = _word(gens, "ABAB'AB")
        checks.append(_eq(f"case {case}: S = [[0, -1], [1, 0]]",
                          s, Mat2(0.0, -1.0, 1.0, 0.0)))
        checks.append(_eq(f"case {case}: T = [[1, mu], [0, 1]]", t, translation(mu)))
        checks.append(_eq(f"case {case}: S T = B", s @ t, b))
    return tuple(checks)
