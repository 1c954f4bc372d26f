"""Explicit 2-rainbow dominating functions on C_m □ C_n.

Everything is built from the diagonal pattern ``f1``: cell (i, j) is colored
iff ``i = j (mod 3)``, with color 1 on even columns and 2 on odd ones::

    1 0 0 2 0 0
    0 2 0 0 1 0
    0 0 1 0 0 2

``f2`` is its transpose (colors alternate by row). Other sizes come from
folding: the last block of six columns is replaced by unions of some of its
columns and the rest is dropped, and pairs of adjacent rows are replaced by
their union. Every fold used here unions cells with disjoint color sets, so
weight only changes through dropped columns.

Constructions are verified before they are returned; a failure raises
:class:`ConstructionError` rather than handing back a bad grid.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import bounds
from .errors import ApplicabilityError, ConstructionError, InputError
from .rdf_core import Assignment, Dims, verify

# Tail recipes over the last six columns c0..c5 of an f1 block. Each entry is
# (output columns as unions of offsets, offsets unioned into column 0);
# offsets that appear nowhere are dropped.
TailRecipe = tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]

BETA_TAILS: dict[int, TailRecipe] = {
    5: (((0,), (1,), (2,), (3, 4), (5,)), ()),
    4: (((0,), (1,), (2, 4), (3, 5)), ()),
    3: (((0,), (1, 4), (5,)), ()),
    2: (((0,), (1, 5)), ()),
    1: (((0, 5),), ()),
}

# Same idea with one extra column of weight: first and last column absorb a
# dropped one. Used by the pattern-(2) family where m = 1, 2, 3 (mod 6).
GAMMA_TAILS: dict[int, TailRecipe] = {
    5: BETA_TAILS[5],
    4: BETA_TAILS[4],
    3: (((0,), (1,), (2, 5)), (3,)),
    2: (((0,), (1, 5)), (3,)),
    1: (((0, 5),), (3,)),
}

RECIPE_IDS = (
    "F1", "F2", "PROP42", "PROP43",
    "PROP45_B1", "PROP45_B2", "PROP45_B3", "PROP45_B4", "PROP45_B5",
    "PROP46", "PROP47",
)


@dataclass(frozen=True)
class Recipe:
    id: str
    inner: Recipe | None = None

    def __post_init__(self) -> None:
        if self.id == "TRANSPOSE_OF":
            if self.inner is None:
                raise InputError("TRANSPOSE_OF needs an inner recipe")
        elif self.id not in RECIPE_IDS or self.inner is not None:
            raise InputError(f"unknown recipe {self.id!r}")

    def __str__(self) -> str:
        return f"TRANSPOSE_OF({self.inner})" if self.inner else self.id

    @classmethod
    def parse(cls, text: str) -> Recipe:
        text = text.strip().upper()
        mt = re.fullmatch(r"TRANSPOSE_OF\((.+)\)", text)
        if mt:
            return cls("TRANSPOSE_OF", cls.parse(mt.group(1)))
        return cls(text)

    def applies(self, m: int, n: int) -> bool:
        if self.inner is not None:
            return self.inner.applies(n, m)
        return _APPLIES[self.id](m, n)

    def claimed_weight(self, m: int, n: int) -> int:
        if not self.applies(m, n):
            raise ApplicabilityError(f"recipe {self} does not apply to ({m}, {n})")
        if self.inner is not None:
            return self.inner.claimed_weight(n, m)
        if self.id == "PROP47" or self.id == "F2":
            return bounds.ub2(m, n)
        return bounds.ub1(m, n)


_APPLIES: dict[str, Callable[[int, int], bool]] = {
    "F1": lambda m, n: m >= 3 and n >= 6 and m % 3 == 0 and n % 6 == 0,
    "F2": lambda m, n: m >= 6 and n >= 3 and m % 6 == 0 and n % 3 == 0,
    "PROP42": lambda m, n: m >= 5 and n >= 6 and m % 3 == 2 and n % 6 == 0,
    "PROP43": lambda m, n: m >= 4 and n >= 6 and m % 3 == 1 and n % 6 == 0,
    "PROP46": lambda m, n: m >= 4 and n >= 6 and m % 3 != 0 and n % 6 != 0,
    "PROP47": lambda m, n: m >= 6 and n >= 3,
}
for _b in range(1, 6):
    _APPLIES[f"PROP45_B{_b}"] = (
        lambda m, n, b=_b: m >= 3 and n >= 6 and m % 3 == 0 and n % 6 == b)


@dataclass(frozen=True)
class Construction:
    recipe: Recipe
    assignment: Assignment
    claimed_weight: int


# base patterns ------------------------------------------------------------

def _f1_array(m: int, n: int) -> np.ndarray:
    i, j = np.indices((m, n))
    return np.where((i - j) % 3 == 0, 1 + j % 2, 0)


def pattern_f1(m: int, n: int) -> Assignment:
    """Diagonal pattern with colors alternating along each row; weight mn/3."""
    if not _APPLIES["F1"](m, n):
        raise ApplicabilityError(f"f1 needs m = 0 (mod 3) and n = 0 (mod 6), got ({m}, {n})")
    return Assignment.from_array(_f1_array(m, n))


def pattern_f2(m: int, n: int) -> Assignment:
    """Diagonal pattern with colors alternating down each column; weight mn/3."""
    if not _APPLIES["F2"](m, n):
        raise ApplicabilityError(f"f2 needs m = 0 (mod 6) and n = 0 (mod 3), got ({m}, {n})")
    return Assignment.from_array(_f1_array(n, m).T)


# folding ------------------------------------------------------------------

def _union(cols: Sequence[np.ndarray], strict: bool) -> np.ndarray:
    out = np.zeros_like(cols[0])
    for c in cols:
        if strict and np.any(out & c):
            raise ConstructionError("union of overlapping color sets")
        out = out | c
    return out


def merge_rows(a: Assignment, r1: int, r2: int, *, strict: bool = False) -> Assignment:
    """Replace two cyclically adjacent rows by their cell-wise union.

    The merged row takes the place of the first of the pair; with the wrap
    pair (m-1, 0) it becomes row 0. ``strict`` demands disjoint color sets.
    """
    m = a.dims.m
    lo, hi = sorted((r1 % m, r2 % m))
    if r1 == r2 or not (0 <= r1 < m and 0 <= r2 < m):
        raise InputError(f"bad row pair ({r1}, {r2}) for m={m}")
    if hi - lo == 1:
        keep, drop = lo, hi
    elif (lo, hi) == (0, m - 1):
        keep, drop = 0, m - 1
    else:
        raise InputError(f"rows {r1} and {r2} are not adjacent modulo {m}")
    if m - 1 < 3:
        raise InputError(f"merging would leave {m - 1} rows; need at least 3")
    arr = a.to_array()
    arr[keep] = _union([arr[keep], arr[drop]], strict)
    return Assignment.from_array(np.delete(arr, drop, axis=0), a.dims.k_colors)


def merge_cols(a: Assignment, c1: int, c2: int, *, strict: bool = False) -> Assignment:
    return merge_rows(a.transpose(), c1, c2, strict=strict).transpose()


def _fold_tail(arr: np.ndarray, tail: TailRecipe) -> np.ndarray:
    outputs, into_first = tail
    base = arr.shape[1] - 6
    block = arr[:, base:]
    head = arr[:, :base].copy()
    if into_first:
        head[:, 0] = _union([head[:, 0]] + [block[:, o] for o in into_first], strict=True)
    cols = [_union([block[:, o] for o in grp], strict=True) for grp in outputs]
    return np.column_stack([head] + cols)


def _merge_row_pairs(arr: np.ndarray, pairs: Sequence[tuple[int, int]]) -> np.ndarray:
    # pairs are given in original indices and must be increasing and disjoint
    a = Assignment.from_array(arr)
    for shift, (r1, r2) in enumerate(pairs):
        a = merge_rows(a, r1 - shift, r2 - shift, strict=True)
    return a.to_array()


def _frame(rows: int, cols: int, tail: TailRecipe | None, row_pairs) -> np.ndarray:
    """f1 on 3*ceil(rows/3) rows, column-folded by ``tail`` then row-merged."""
    tall = 3 * bounds.ceil3(rows)
    if tail is None:
        arr = _f1_array(tall, cols)
    else:
        kept = len(tail[0])
        arr = _fold_tail(_f1_array(tall, cols - kept + 6), tail)
    arr = _merge_row_pairs(arr, row_pairs)
    assert arr.shape == (rows, cols), (arr.shape, rows, cols)
    return arr


def _short_rows(rows: int, middle_rows: bool = False) -> list[tuple[int, int]]:
    """Row merges taking 3*ceil(rows/3) rows down to ``rows``."""
    extra = (3 - rows % 3) % 3
    if middle_rows:
        return [(1, 2), (3, 4)][:extra]
    return [(0, 1), (3, 4)][:extra]


# recipes ------------------------------------------------------------------

def _build_ub1_family(m: int, n: int, middle_rows: bool) -> np.ndarray:
    b = n % 6
    return _frame(m, n, BETA_TAILS.get(b), _short_rows(m, middle_rows))


def _build_ub2_family(m: int, n: int) -> np.ndarray:
    return _frame(n, m, GAMMA_TAILS.get(m % 6), _short_rows(n)).T


def _build(recipe: Recipe, m: int, n: int) -> Assignment:
    if recipe.inner is not None:
        return _build(recipe.inner, n, m).transpose()
    rid = recipe.id
    if rid == "F1":
        return pattern_f1(m, n)
    if rid == "F2":
        return pattern_f2(m, n)
    if rid in ("PROP42", "PROP43"):
        return Assignment.from_array(_build_ub1_family(m, n, middle_rows=True))
    if rid.startswith("PROP45") or rid == "PROP46":
        return Assignment.from_array(_build_ub1_family(m, n, middle_rows=False))
    if rid == "PROP47":
        return Assignment.from_array(_build_ub2_family(m, n))
    raise AssertionError(rid)


def ub1_recipe(m: int, n: int) -> Recipe:
    """The pattern-(1) recipe realizing UB1(m, n)."""
    if n % 6 == 0:
        rid = {0: "F1", 1: "PROP43", 2: "PROP42"}[m % 3]
    elif m % 3 == 0:
        rid = f"PROP45_B{n % 6}"
    else:
        rid = "PROP46"
    return Recipe(rid)


def ub2_recipe(m: int, n: int) -> Recipe:
    """The pattern-(2) recipe realizing UB2(m, n)."""
    return Recipe("F2" if _APPLIES["F2"](m, n) else "PROP47")


def recipe_for_variant(variant: str, m: int, n: int) -> Recipe:
    if variant == "UB1":
        return ub1_recipe(m, n)
    if variant == "UB2":
        return ub2_recipe(m, n)
    if variant == "UB1_T":
        return Recipe("TRANSPOSE_OF", ub1_recipe(n, m))
    if variant == "UB2_T":
        return Recipe("TRANSPOSE_OF", ub2_recipe(n, m))
    raise InputError(f"unknown bound variant {variant!r}")


def construct_upper(m: int, n: int, recipe: Recipe | str | None = None) -> Construction:
    """Verified 2RDF of weight equal to the chosen recipe's bound.

    Without a recipe, the smallest of UB1(m,n), UB2(m,n), UB1(n,m), UB2(n,m)
    is realized, ties broken in that order.
    """
    Dims(m, n)
    if recipe is None:
        variant = bounds.upper_bounds(m, n).best_variant
        recipe = recipe_for_variant(variant, m, n)
    elif isinstance(recipe, str):
        recipe = Recipe.parse(recipe)
    if not recipe.applies(m, n):
        raise ApplicabilityError(f"recipe {recipe} does not apply to ({m}, {n})")
    claimed = recipe.claimed_weight(m, n)
    a = _build(recipe, m, n)
    report = verify(a)
    if not report.valid:
        raise ConstructionError(
            f"{recipe} on ({m}, {n}) is not a 2RDF: {len(report.violations)} undominated vertices")
    if report.weight != claimed:
        raise ConstructionError(f"{recipe} on ({m}, {n}) has weight {report.weight}, claimed {claimed}")
    return Construction(recipe, a, claimed)


def applicable_recipes(m: int, n: int) -> list[Recipe]:
    out = [Recipe(r) for r in RECIPE_IDS if _APPLIES[r](m, n)]
    out += [Recipe("TRANSPOSE_OF", Recipe(r)) for r in RECIPE_IDS if _APPLIES[r](n, m)]
    return out
