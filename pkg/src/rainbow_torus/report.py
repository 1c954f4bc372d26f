"""Sweeps and table reproduction for the CLI."""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, fields

from . import bounds
from .errors import ConstructionError
from .oracle import brute_feasible, dp_feasible, exact
from .patterns import construct_upper


@dataclass(frozen=True)
class SweepRow:
    m: int
    n: int
    lb: int
    ub1: int | None
    ub2: int | None
    ub_best: int
    known_exact: int | None
    exact: int | None
    exact_engine: str | None
    recipe: str
    construction_weight: int
    valid: bool
    elapsed_ms: int


SWEEP_COLUMNS = [f.name for f in fields(SweepRow)]


def sweep_cell(m: int, n: int, with_exact: bool = True) -> SweepRow:
    t0 = time.perf_counter()
    bs = bounds.bound_set(m, n)
    cons = construct_upper(m, n)  # raises ConstructionError on a bad grid
    value = engine = None
    if with_exact and (dp_feasible(m, n) or brute_feasible(m, n)):
        res = exact(m, n, 2)
        value, engine = res.value, res.engine
        if not bs.lower <= value <= cons.claimed_weight:
            raise ConstructionError(f"sandwich violated at ({m}, {n}): {bs.lower} <= {value} <= {cons.claimed_weight}")
    row = SweepRow(
        m=m, n=n, lb=bs.lower, ub1=bs.ub1, ub2=bs.ub2, ub_best=bs.best_upper,
        known_exact=bs.known_exact, exact=value, exact_engine=engine,
        recipe=str(cons.recipe), construction_weight=cons.claimed_weight, valid=True,
        elapsed_ms=int(round((time.perf_counter() - t0) * 1000)),
    )
    assert row.lb <= row.construction_weight == row.ub_best
    return row


def sweep(m_range: range, n_range: range, with_exact: bool = True, workers: int = 1) -> list[SweepRow]:
    """All cells of the grid, in (m, n) order regardless of completion order."""
    cells = [(m, n) for m in m_range for n in n_range]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(lambda mn: sweep_cell(*mn, with_exact), cells))
    return [sweep_cell(m, n, with_exact) for m, n in cells]


def rows_to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in rows:
        w.writerow(["" if v is None else str(v).lower() if isinstance(v, bool) else v for v in astuple(r)])
    return buf.getvalue()


# known-value table --------------------------------------------------------

KNOWN_ROWS = ("C3", "C4", "C5", "C8")


def known_table(n_range: range) -> dict[str, list[int | None]]:
    families = dict(bounds.R2_FAMILIES)
    return {name: [families[name](int(name[1:]), n) for n in n_range] for name in KNOWN_ROWS}


# coefficient tables -------------------------------------------------------

def ub_comparison() -> dict:
    return {
        "ub1": [[list(bounds.ub1_triple(mr, nr)) for nr in range(6)] for mr in range(6)],
        "ub2": [[list(bounds.ub2_triple(mr, nr)) for nr in range(6)] for mr in range(6)],
        "winner": [[bounds.comparison_label(mr, nr) for nr in range(6)] for mr in range(6)],
        "incomparable_rule_mismatches": [list(x) for x in bounds.incomparable_rule_mismatches(30, 30)],
        "delta_table_mismatches": sorted({(m % 6, n % 6) for m, n, _, _ in bounds.delta_table_mismatches(6, 30)}),
    }


def conjecture(m_range: range, n_range: range) -> dict[int, list[tuple[int, int, int]]]:
    """(n, exact, exact - lower) for every oracle-feasible cell, grouped by m."""
    out: dict[int, list[tuple[int, int, int]]] = {}
    for m in m_range:
        for n in n_range:
            if not (dp_feasible(m, n) or brute_feasible(m, n)):
                continue
            v = exact(m, n, 2).value
            out.setdefault(m, []).append((n, v, v - bounds.lower_bound(m, n)))
    return out


# text rendering -----------------------------------------------------------

def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, list):
        return "(" + ",".join(map(str, v)) + ")"
    return str(v)


def render_grid(title: str, rows: list[list], row_label: str = "m%6", col_label: str = "n%6") -> str:
    cells = [[_fmt(c) for c in r] for r in rows]
    width = max(len(c) for r in cells for c in r)
    head = f"{row_label}\\{col_label}".ljust(8) + " ".join(str(j).rjust(width) for j in range(len(cells[0])))
    lines = [title, head]
    for i, r in enumerate(cells):
        lines.append(str(i).ljust(8) + " ".join(c.rjust(width) for c in r))
    return "\n".join(lines)


def render_known_table(n_range: range) -> str:
    table = known_table(n_range)
    ns = list(n_range)
    width = max(3, max(len(_fmt(v)) for vals in table.values() for v in vals), len(str(ns[-1])))
    lines = ["n".ljust(6) + " ".join(str(n).rjust(width) for n in ns)]
    for name, vals in table.items():
        lines.append(name.ljust(6) + " ".join(_fmt(v).rjust(width) for v in vals))
    return "\n".join(lines)


def render_ub_comparison() -> str:
    data = ub_comparison()
    parts = [
        render_grid("UB1(m,n) = mn/3 + (x n + y m + z)/3, (x,y,z):", data["ub1"]),
        render_grid("UB2(m,n) = mn/3 + (x n + y m + z)/3, (x,y,z):", data["ub2"]),
        render_grid("smaller of UB1(m,n), UB2(m,n) ('<>' = depends on m, n):", data["winner"]),
        "incomparable cells by direct evaluation:",
        "  m=2, n=3 (mod 6): UB1 - UB2 = (m + 1 - n)/3",
        "  m=3, n=3 (mod 6): UB1 - UB2 = (m - 2n)/3",
        f"printed-rule disagreements for m, n <= 30: {len(data['incomparable_rule_mismatches'])}",
        f"increment-table cells disagreeing with evaluation: {data['delta_table_mismatches']}",
    ]
    return "\n\n".join(parts)


def render_conjecture(data: dict[int, list[tuple[int, int, int]]]) -> str:
    lines = []
    for m, cells in data.items():
        gaps = [g for _, _, g in cells]
        lines.append(f"m={m}: max exact-lb = {max(gaps)}")
        lines.append("  " + " ".join(f"n={n}:{v}(+{g})" for n, v, g in cells))
    return "\n".join(lines)
