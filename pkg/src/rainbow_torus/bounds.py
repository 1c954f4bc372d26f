"""Closed-form bounds for the 2-rainbow domination number of C_m □ C_n.

Everything here is integer arithmetic on residues; rational intermediate
values go through :class:`fractions.Fraction` and are ceiled at the end since
the domination number is an integer.

The two upper-bound families are

* ``UB1(m, n) = ceil(m/3) * (n + beta(n))``, needs ``n >= 6``;
* ``UB2(m, n) = ceil(n/3) * (m + gamma(m))``, needs ``m >= 6``.

Both can be written as ``mn/3 + (x*n + y*m + z)/3``; the coefficient triple
``(x, y, z)`` depends only on ``(m mod 6, n mod 6)``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import ApplicabilityError, InputError

BETA = {0: 0, 1: 1, 2: 1, 3: 1, 4: 2, 5: 1}
GAMMA = {0: 0, 1: 2, 2: 2, 3: 2, 4: 2, 5: 1}
ALPHA = {0: Fraction(0), 1: Fraction(1, 2), 2: Fraction(1)}


def ceil3(x: int) -> int:
    return -(-x // 3)


def pad3(x: int) -> int:
    """Amount to add to ``x`` to reach the next multiple of 3 (a or c)."""
    return (3 - x % 3) % 3


@dataclass(frozen=True)
class ResidueParams:
    q: int
    ell: int
    a: int
    c: int
    alpha: Fraction
    beta: int
    gamma_coeff: int
    delta: int | None


def residue_params(m: int, n: int) -> ResidueParams:
    """Residue bookkeeping for (m, n).

    ``beta`` is taken at ``n`` (it belongs to UB1(m, n)) and ``gamma_coeff`` at
    ``m`` (it belongs to UB2(m, n)). ``delta`` is ``3 * best_upper - mn`` and is
    only reported when both factors are at least 6.
    """
    delta = None
    if m >= 6 and n >= 6:
        delta = 3 * best_upper(m, n) - m * n
    return ResidueParams(
        q=m // 3, ell=m % 3, a=pad3(m), c=pad3(n), alpha=ALPHA[m % 3],
        beta=BETA[n % 6], gamma_coeff=GAMMA[m % 6], delta=delta,
    )


# lower bounds --------------------------------------------------------------

def regular_lower_bound(k_colors: int, r: int, num_vertices: int) -> int:
    """ceil(k |V| / (r + k)) for an r-regular graph."""
    if r < 1 or k_colors < 1:
        raise InputError("need r >= 1 and k_colors >= 1")
    return math.ceil(Fraction(k_colors * num_vertices, r + k_colors))


def _column_lower(m: int, n: int) -> Fraction:
    return Fraction(m * n, 3) + Fraction((m % 3) * n, 6)


def lower_bound(m: int, n: int) -> int:
    """Discharging bound ``mn/3 + (m mod 3) n/6``, best of both orientations."""
    if m < 3 or n < 3:
        raise InputError(f"need m, n >= 3, got ({m}, {n})")
    return math.ceil(max(_column_lower(m, n), _column_lower(n, m)))


def fractional_lower(m: int, n: int) -> Fraction:
    """The unceiled one-orientation form ``(floor(m/3) + alpha) n``."""
    return (m // 3 + ALPHA[m % 3]) * n


# upper bounds --------------------------------------------------------------

def ub1(m: int, n: int) -> int | None:
    if m < 3 or n < 6:
        return None
    return ceil3(m) * (n + BETA[n % 6])


def ub2(m: int, n: int) -> int | None:
    if m < 6 or n < 3:
        return None
    return ceil3(n) * (m + GAMMA[m % 6])


# Order matters: it is the tie-break used when picking a construction.
VARIANTS = ("UB1", "UB2", "UB1_T", "UB2_T")


@dataclass(frozen=True)
class UpperBounds:
    ub1: int | None
    ub2: int | None
    ub1_t: int | None
    ub2_t: int | None

    def values(self) -> dict[str, int | None]:
        return {"UB1": self.ub1, "UB2": self.ub2, "UB1_T": self.ub1_t, "UB2_T": self.ub2_t}

    @property
    def best_variant(self) -> str:
        vals = self.values()
        applicable = [(vals[v], i, v) for i, v in enumerate(VARIANTS) if vals[v] is not None]
        if not applicable:
            raise ApplicabilityError("no upper bound applies")
        return min(applicable)[2]

    @property
    def best_upper(self) -> int:
        return self.values()[self.best_variant]


def upper_bounds(m: int, n: int) -> UpperBounds:
    if m < 3 or n < 3:
        raise InputError(f"need m, n >= 3, got ({m}, {n})")
    ub = UpperBounds(ub1(m, n), ub2(m, n), ub1(n, m), ub2(n, m))
    if all(v is None for v in ub.values().values()):
        raise ApplicabilityError(f"no upper-bound construction covers ({m}, {n}); one factor must be >= 6")
    return ub


def best_upper(m: int, n: int) -> int:
    return upper_bounds(m, n).best_upper


# coefficient triples -------------------------------------------------------

def ub1_triple(mr: int, nr: int) -> tuple[int, int, int]:
    """(x, y, z) with UB1 = mn/3 + (x n + y m + z)/3, for residues mod 6."""
    a, b = pad3(mr), BETA[nr]
    return a, b, a * b


def ub2_triple(mr: int, nr: int) -> tuple[int, int, int]:
    g, c = GAMMA[mr], pad3(nr)
    return g, c, g * c


def compare_triples(t1: tuple[int, int, int], t2: tuple[int, int, int]) -> str:
    """'=', 'UB1', 'UB2' or '<>' (winner valid for every m, n in the class)."""
    if t1 == t2:
        return "="
    if all(x <= y for x, y in zip(t1, t2)):
        return "UB1"
    if all(x >= y for x, y in zip(t1, t2)):
        return "UB2"
    return "<>"


def comparison_label(mr: int, nr: int) -> str:
    return compare_triples(ub1_triple(mr, nr), ub2_triple(mr, nr))


def resolve_comparison(m: int, n: int) -> str:
    """Direct evaluation of UB1(m, n) against UB2(m, n)."""
    u1, u2 = ub1(m, n), ub2(m, n)
    if u1 is None or u2 is None:
        raise ApplicabilityError(f"UB1 and UB2 are not both defined at ({m}, {n})")
    return "=" if u1 == u2 else ("UB1" if u1 < u2 else "UB2")


def stated_incomparable_rule(m: int, n: int) -> str | None:
    """Winner predicted by the rule printed next to the two incomparable cells.

    For m = 2, n = 3 (mod 6) it reads ``UB1 >=< UB2 iff n + 1 >=< m``; for
    m = n = 3 (mod 6) it reads ``UB1 >=< UB2 iff n >=< 2m``. Returns None
    outside those cells. Direct evaluation is authoritative; see
    :func:`incomparable_rule_mismatches`.
    """
    if n % 6 != 3 or m % 6 not in (2, 3):
        return None
    lhs, rhs = (n + 1, m) if m % 6 == 2 else (n, 2 * m)
    return "=" if lhs == rhs else ("UB2" if lhs > rhs else "UB1")


def incomparable_rule_mismatches(max_m: int = 60, max_n: int = 60) -> list[tuple[int, int, str, str]]:
    """(m, n, stated, evaluated) wherever the printed rule disagrees with the formulas."""
    out = []
    for m in range(6, max_m + 1):
        for n in range(6, max_n + 1):
            stated = stated_incomparable_rule(m, n)
            if stated is None:
                continue
            actual = resolve_comparison(m, n)
            if stated != actual:
                out.append((m, n, stated, actual))
    return out


def best_triple(m: int, n: int) -> tuple[int, int, int]:
    """Coefficients of the best upper bound written as mn/3 + (x n + y m + z)/3."""
    ub = upper_bounds(m, n)
    variant = ub.best_variant
    mr, nr = m % 6, n % 6
    if variant == "UB1":
        return ub1_triple(mr, nr)
    if variant == "UB2":
        return ub2_triple(mr, nr)
    # swapped roles: the triple multiplies (m, n, 1), so swap x and y back
    x, y, z = ub1_triple(nr, mr) if variant == "UB1_T" else ub2_triple(nr, mr)
    return y, x, z


# Best-bound increment table, indexed (m mod 6, n mod 6) with m mod 6 <= n mod 6.
# Entries are functions of (m, n) giving delta = 3 * best_upper - mn.
DELTA_TABLE = {
    (0, 0): lambda m, n: 0,
    (0, 1): lambda m, n: m,
    (0, 2): lambda m, n: m,
    (0, 3): lambda m, n: 0,
    (0, 4): lambda m, n: 2 * m,
    (0, 5): lambda m, n: m,
    (1, 1): lambda m, n: min(n + 2 * m + 2, 2 * n + m + 2),
    (1, 2): lambda m, n: n + m + 1,
    (1, 3): lambda m, n: n,
    (1, 4): lambda m, n: n + 2 * m + 2,
    (1, 5): lambda m, n: m,
    (2, 2): lambda m, n: n + m + 1,
    (2, 3): lambda m, n: n,
    (2, 4): lambda m, n: n + 2 * m + 2,
    (2, 5): lambda m, n: n + m + 1,
    (3, 3): lambda m, n: min(m, n),
    (3, 4): lambda m, n: 2 * m,
    (3, 5): lambda m, n: m,
    (4, 4): lambda m, n: 2 * n + 2 * m + 4,
    (4, 5): lambda m, n: 2 * n + m + 2,
    (5, 5): lambda m, n: n + m + 1,
}


def delta_from_table(m: int, n: int) -> int:
    """Look up the printed increment, swapping so the row residue is the smaller."""
    if m % 6 > n % 6:
        m, n = n, m
    return DELTA_TABLE[(m % 6, n % 6)](m, n)


def delta_table_mismatches(lo: int = 6, hi: int = 60) -> list[tuple[int, int, int, int]]:
    """(m, n, printed, evaluated) wherever the increment table disagrees with best_upper."""
    out = []
    for m in range(lo, hi + 1):
        for n in range(lo, hi + 1):
            printed = delta_from_table(m, n)
            actual = 3 * best_upper(m, n) - m * n
            if printed != actual:
                out.append((m, n, printed, actual))
    return out


# known exact values --------------------------------------------------------

def _c3(n: int) -> int:
    return n + {0: 0, 1: 1, 2: 1, 3: 1, 4: 2, 5: 1}[n % 6]


def _c4(n: int) -> int:
    return 3 * n // 2 + {0: 0, 2: 1, 4: 1, 5: 1, 1: 2, 3: 2, 6: 2, 7: 2}[n % 8]


def _thm41(m: int, n: int) -> int | None:
    if (m % 3 == 0 and n % 6 == 0) or (m % 6 == 0 and n % 3 == 0):
        return m * n // 3
    return None


def _thm11a(m: int, n: int) -> int | None:
    if m % 3 == 0 and n % 6 == 0:
        return m * n // 3
    return None


def _thm11c(m: int, n: int) -> int | None:
    if m % 3 == 2 and n % 6 == 0:
        return (m + 1) * n // 3
    return None


def _row_family(size: int, formula, min_other: int = 3):
    def family(m: int, n: int) -> int | None:
        if m == size and n >= min_other:
            return formula(n)
        return None
    return family


# The C_8 row is only used for partners n >= 6: at n = 5 it gives 15, which
# contradicts the C_5 row (16) and the discharging lower bound (16).
R2_FAMILIES = (
    ("C3", _row_family(3, _c3)),
    ("C4", _row_family(4, _c4)),
    ("C5", _row_family(5, lambda n: 2 * n)),
    ("C8", _row_family(8, lambda n: 3 * n, min_other=6)),
    ("THM41", _thm41),
    ("THM11A", _thm11a),
    ("THM11C", _thm11c),
)


def _lookup(families, m: int, n: int) -> int | None:
    hits = []
    for name, family in families:
        for a, b in ((m, n), (n, m)):
            v = family(a, b)
            if v is not None:
                hits.append((name, v))
    if not hits:
        return None
    values = {v for _, v in hits}
    if len(values) > 1:
        raise AssertionError(f"known-value families disagree at ({m}, {n}): {hits}")
    return hits[0][1]


def known_exact_r2(m: int, n: int) -> int | None:
    """Previously established value of the 2-rainbow domination number, if any."""
    if m < 3 or n < 3:
        raise InputError(f"need m, n >= 3, got ({m}, {n})")
    return _lookup(R2_FAMILIES, m, n)


def _g5(n: int) -> int:
    return n + {0: 0, 1: 1, 2: 1, 3: 2, 4: 1}[n % 5]


# The C_5 row is stated for partners n >= 5; at n = 3 it would give 5, but
# γ(C_3 □ C_5) = 4.
GAMMA_FAMILIES = (
    ("C3", _row_family(3, lambda n: n - n // 4)),
    ("C4", _row_family(4, lambda n: n, min_other=4)),
    ("C5", _row_family(5, _g5, min_other=5)),
)


def known_gamma(m: int, n: int) -> int | None:
    """Known ordinary domination number for C_3, C_4, C_5 times a cycle."""
    if m < 3 or n < 3:
        raise InputError(f"need m, n >= 3, got ({m}, {n})")
    return _lookup(GAMMA_FAMILIES, m, n)


# aggregation ---------------------------------------------------------------

@dataclass(frozen=True)
class BoundSet:
    m: int
    n: int
    lower: int
    ub1: int | None
    ub2: int | None
    ub1_t: int | None
    ub2_t: int | None
    best_upper: int
    best_variant: str
    known_exact: int | None
    known_gamma: int | None

    def to_json_dict(self) -> dict:
        return asdict(self)


def bound_set(m: int, n: int) -> BoundSet:
    ub = upper_bounds(m, n)
    bs = BoundSet(
        m=m, n=n, lower=lower_bound(m, n),
        ub1=ub.ub1, ub2=ub.ub2, ub1_t=ub.ub1_t, ub2_t=ub.ub2_t,
        best_upper=ub.best_upper, best_variant=ub.best_variant,
        known_exact=known_exact_r2(m, n), known_gamma=known_gamma(m, n),
    )
    assert bs.lower <= bs.best_upper, bs
    if bs.known_exact is not None:
        assert bs.lower <= bs.known_exact <= bs.best_upper, bs
    return bs
