"""Torus geometry, assignments of color sets, and rainbow-domination checks.

Vertices of C_m □ C_n are pairs ``(i, j)`` with ``0 <= i < m`` (row) and
``0 <= j < n`` (column). A column is the set ``{(0, j), ..., (m-1, j)}``,
so every column has ``m`` cells and there are ``n`` columns.

A color set is an ``int`` bitmask: color ``c`` is bit ``c - 1``. So ``0`` is
the empty set, ``1`` is ``{1}``, ``2`` is ``{2}`` and ``3`` is ``{1, 2}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, ParseError

MAX_COLORS = 2


def colorset(*colors: int) -> int:
    """Bitmask for the given colors, e.g. ``colorset(1, 2) == 3``."""
    mask = 0
    for c in colors:
        if c < 1:
            raise InputError(f"colors start at 1, got {c}")
        mask |= 1 << (c - 1)
    return mask


def colors_of(mask: int) -> list[int]:
    """Ascending list of colors in a bitmask."""
    return [b + 1 for b in range(mask.bit_length()) if mask >> b & 1]


def full_mask(k_colors: int) -> int:
    return (1 << k_colors) - 1


@dataclass(frozen=True)
class Dims:
    m: int
    n: int
    k_colors: int = 2

    def __post_init__(self) -> None:
        if self.m < 3 or self.n < 3:
            raise InputError(f"both cycles need length >= 3, got m={self.m}, n={self.n}")
        if self.k_colors not in (1, 2):
            raise InputError(f"k_colors must be 1 or 2, got {self.k_colors}")

    @property
    def num_vertices(self) -> int:
        return self.m * self.n

    def transposed(self) -> Dims:
        return Dims(self.n, self.m, self.k_colors)


@dataclass(frozen=True)
class Assignment:
    """An m x n grid of color sets, stored row-major as nested tuples."""

    dims: Dims
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        m, n = self.dims.m, self.dims.n
        if len(self.cells) != m or any(len(row) != n for row in self.cells):
            raise InputError(f"grid shape does not match {m}x{n}")
        full = full_mask(self.dims.k_colors)
        for row in self.cells:
            for c in row:
                if not isinstance(c, (int, np.integer)) or c < 0 or c & ~full:
                    raise InputError(f"cell value {c!r} is not a color set over k={self.dims.k_colors}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], k_colors: int = 2) -> Assignment:
        cells = tuple(tuple(int(c) for c in row) for row in rows)
        if not cells:
            raise InputError("empty grid")
        return cls(Dims(len(cells), len(cells[0]), k_colors), cells)

    @classmethod
    def from_array(cls, arr: np.ndarray, k_colors: int = 2) -> Assignment:
        return cls.from_rows(arr.tolist(), k_colors)

    @classmethod
    def empty(cls, dims: Dims) -> Assignment:
        return cls(dims, tuple((0,) * dims.n for _ in range(dims.m)))

    def to_array(self) -> np.ndarray:
        return np.array(self.cells, dtype=np.int64)

    @property
    def weight(self) -> int:
        return sum(int(c).bit_count() for row in self.cells for c in row)

    def __getitem__(self, v: tuple[int, int]) -> int:
        i, j = v
        return self.cells[i % self.dims.m][j % self.dims.n]

    def transpose(self) -> Assignment:
        return Assignment(self.dims.transposed(), tuple(zip(*self.cells)))

    def shift(self, di: int, dj: int) -> Assignment:
        """Cyclic rotation: the cell at (i, j) moves to (i + di, j + dj)."""
        arr = np.roll(self.to_array(), (di, dj), axis=(0, 1))
        return Assignment.from_array(arr, self.dims.k_colors)

    def with_cell(self, i: int, j: int, value: int) -> Assignment:
        rows = [list(r) for r in self.cells]
        rows[i][j] = value
        return Assignment(self.dims, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class ColumnProfile:
    sums: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.sums)


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    weight: int
    violations: tuple[tuple[tuple[int, int], int], ...]
    profile: ColumnProfile
    lemma33_ok: bool
    lemma33_violations: tuple[int, ...] = field(default=())

    def to_json_dict(self) -> dict:
        return {
            "valid": self.valid,
            "weight": self.weight,
            "violations": [
                {"vertex": [i, j], "missing": colors_of(missing)}
                for (i, j), missing in self.violations
            ],
            "profile": list(self.profile.sums),
            "lemma33_ok": self.lemma33_ok,
            "lemma33_violations": list(self.lemma33_violations),
        }


def neighbors(v: tuple[int, int], dims: Dims) -> set[tuple[int, int]]:
    i, j = v
    if not (0 <= i < dims.m and 0 <= j < dims.n):
        raise InputError(f"vertex {v} outside {dims.m}x{dims.n} torus")
    m, n = dims.m, dims.n
    return {((i - 1) % m, j), ((i + 1) % m, j), (i, (j - 1) % n), (i, (j + 1) % n)}


def neighbor_union(arr: np.ndarray) -> np.ndarray:
    """Union of the four neighbor color sets, for every cell at once."""
    return (np.roll(arr, 1, 0) | np.roll(arr, -1, 0)
            | np.roll(arr, 1, 1) | np.roll(arr, -1, 1))


def is_valid(a: Assignment) -> bool:
    arr = a.to_array()
    full = full_mask(a.dims.k_colors)
    return not np.any((arr == 0) & (neighbor_union(arr) != full))


def column_profile(a: Assignment) -> ColumnProfile:
    arr = a.to_array()
    counts = np.zeros_like(arr)
    for b in range(a.dims.k_colors):
        counts += (arr >> b) & 1
    return ColumnProfile(tuple(int(s) for s in counts.sum(axis=0)))


def lemma33_check(profile: ColumnProfile | Sequence[int], m: int) -> list[int]:
    """Columns j where ``s[j-1] + s[j+1] < 2m - 4 s[j]`` (indices cyclic).

    Any valid 2-rainbow dominating function satisfies the inequality at every
    column, so a non-empty result certifies the assignment is not one.
    """
    sums = profile.sums if isinstance(profile, ColumnProfile) else tuple(profile)
    n = len(sums)
    return [j for j in range(n)
            if sums[j - 1] + sums[(j + 1) % n] < 2 * m - 4 * sums[j]]


def verify(a: Assignment) -> VerificationReport:
    arr = a.to_array()
    full = full_mask(a.dims.k_colors)
    missing = full & ~neighbor_union(arr)
    bad = (arr == 0) & (missing != 0)
    violations = tuple(((int(i), int(j)), int(missing[i, j])) for i, j in zip(*np.nonzero(bad)))
    profile = column_profile(a)
    if a.dims.k_colors == 2:
        l33 = tuple(lemma33_check(profile, a.dims.m))
    else:
        l33 = ()
    return VerificationReport(
        valid=not violations,
        weight=profile.total,
        violations=violations,
        profile=profile,
        lemma33_ok=not l33,
        lemma33_violations=l33,
    )


# serialization ------------------------------------------------------------

def _token(mask: int) -> str:
    return "".join(str(c) for c in colors_of(mask)) or "0"


def serialize(a: Assignment, fmt: str = "grid") -> bytes:
    if fmt in ("grid", "grid-text"):
        lines = [" ".join(_token(c) for c in row) for row in a.cells]
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "json":
        doc = {
            "m": a.dims.m,
            "n": a.dims.n,
            "k": a.dims.k_colors,
            "cells": [[colors_of(c) for c in row] for row in a.cells],
        }
        return json.dumps(doc, separators=(",", ":")).encode("utf-8")
    raise InputError(f"unknown format {fmt!r}")


def _parse_token(tok: str, line: int, col: int, k: int) -> int:
    if tok == "0":
        return 0
    prev = 0
    mask = 0
    for ch in tok:
        if not ch.isdigit() or ch == "0":
            raise ParseError(f"bad color token {tok!r}", line, col)
        c = int(ch)
        if c <= prev:
            raise ParseError(f"colors must be ascending in {tok!r}", line, col)
        if c > k:
            raise ParseError(f"color {c} exceeds k={k}", line, col)
        prev = c
        mask |= 1 << (c - 1)
    return mask


def parse(data: bytes | str, fmt: str = "grid", k_colors: int | None = None) -> Assignment:
    """Inverse of :func:`serialize`.

    Grid text does not record the number of colors; it is ``k_colors`` if
    given and 2 otherwise. JSON carries its own ``k`` and ignores the argument.
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    if fmt in ("grid", "grid-text"):
        return _parse_grid(text, k_colors)
    if fmt == "json":
        return _parse_json(text)
    raise InputError(f"unknown format {fmt!r}")


def _parse_grid(text: str, k_colors: int | None) -> Assignment:
    k = MAX_COLORS if k_colors is None else k_colors
    rows: list[list[int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        row = []
        pos = 0
        for tok in line.split():
            col = line.index(tok, pos) + 1
            pos = col - 1 + len(tok)
            row.append(_parse_token(tok, lineno, col, k))
        if rows and len(row) != len(rows[0]):
            raise ParseError(f"expected {len(rows[0])} tokens, got {len(row)}", lineno, 1)
        rows.append(row)
    if not rows:
        raise ParseError("no grid rows", 1, 1)
    try:
        return Assignment.from_rows(rows, k)
    except InputError as exc:
        raise ParseError(str(exc), 1, 1) from exc


def _parse_json(text: str) -> Assignment:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(doc, dict) or set(doc) != {"m", "n", "k", "cells"}:
        raise ParseError("expected exactly the keys m, n, k, cells", 1, 1)
    m, n, k = doc["m"], doc["n"], doc["k"]
    cells = doc["cells"]
    if not isinstance(cells, list) or len(cells) != m:
        raise ParseError(f"expected {m} rows", 1, 1)
    rows = []
    for i, row in enumerate(cells):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row {i} should have {n} cells", 1, 1)
        out = []
        for cell in row:
            if not isinstance(cell, list) or cell != sorted(set(cell)) or any(
                    not isinstance(c, int) or not 1 <= c <= k for c in cell):
                raise ParseError(f"bad cell {cell!r} in row {i}", 1, 1)
            out.append(colorset(*cell))
        rows.append(out)
    try:
        return Assignment(Dims(m, n, k), tuple(tuple(r) for r in rows))
    except InputError as exc:
        raise ParseError(str(exc), 1, 1) from exc
