"""Exact k-rainbow domination numbers of C_m □ C_n for k in {1, 2}.

Two independent engines:

``brute``
    Scans every assignment in code order (cell ``v = i*n + j`` occupies bits
    ``k*v .. k*v + k - 1``), vectorized over chunks of codes.

``dp``
    Min-plus dynamic program over columns. A column label packs the m color
    sets of one column into ``m*k`` bits (row ``i`` in bits ``k*i ..``). The
    state after column ``j`` is ``(label, residual)`` where ``residual`` is
    the colors still owed to the empty cells of column ``j`` after its own
    vertical neighbors and column ``j-1`` are accounted for; the next label
    must contain it. Cycle closure fixes the state of a cut column and
    requires the last column to be consistent with it.

    To keep the number of cut states small, the cut is placed at a column
    whose residual demand ``|R|`` is minimal along the cycle (every other
    column then has ``|R| >= |R_cut|``), and cut labels are taken up to the
    symmetries that preserve ``|R|``: cyclic row shifts, row reversal and
    the color swap.

The prism oracle :func:`gamma_prism` computes the ordinary domination number
of C_m □ C_n □ K_2 by subset enumeration on a networkx graph; it shares no
code with either engine.
"""

from __future__ import annotations

import functools
import itertools
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .errors import CapacityError, InputError
from .rdf_core import Assignment, Dims, full_mask, verify

log = logging.getLogger(__name__)

INF = np.int32(1 << 28)


@dataclass(frozen=True)
class Budget:
    brute_cells_k2: int = 12
    brute_cells_k1: int = 16
    dp_height_k2: int = 5
    dp_height_k1: int = 10
    prism_vertices: int = 24


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class ExactResult:
    value: int
    witness: Assignment
    engine: str
    elapsed: float

    @property
    def elapsed_ms(self) -> int:
        return int(round(self.elapsed * 1000))


def _popcount(arr: np.ndarray) -> np.ndarray:
    arr = arr.astype(np.int64)
    out = np.zeros_like(arr)
    while np.any(arr):
        out += arr & 1
        arr = arr >> 1
    return out


# brute force --------------------------------------------------------------

def exact_brute(m: int, n: int, k_colors: int = 2, budget: Budget = DEFAULT_BUDGET,
                chunk: int = 1 << 20) -> ExactResult:
    dims = Dims(m, n, k_colors)
    limit = budget.brute_cells_k2 if k_colors == 2 else budget.brute_cells_k1
    if m * n > limit:
        raise CapacityError(f"brute force limited to mn <= {limit} for k={k_colors}, got {m * n}")
    t0 = time.perf_counter()
    full = full_mask(k_colors)
    cells = m * n
    total = 1 << (k_colors * cells)
    nbrs = [[((i - 1) % m) * n + j, ((i + 1) % m) * n + j, i * n + (j - 1) % n, i * n + (j + 1) % n]
            for i in range(m) for j in range(n)]
    pop = np.array([bin(x).count("1") for x in range(full + 1)], dtype=np.int8)
    best, best_code = None, None
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        vals = [((codes >> (k_colors * v)) & full).astype(np.int8) for v in range(cells)]
        ok = np.ones(codes.shape, dtype=bool)
        weight = np.zeros(codes.shape, dtype=np.int16)
        for v in range(cells):
            a, b, c, d = (vals[u] for u in nbrs[v])
            ok &= (vals[v] != 0) | ((a | b | c | d) == full)
            weight += pop[vals[v]]
        if not ok.any():
            continue
        w = np.where(ok, weight, np.iinfo(np.int16).max)
        idx = int(np.argmin(w))
        if best is None or w[idx] < best:
            best, best_code = int(w[idx]), int(codes[idx])
    rows = [[(best_code >> (k_colors * (i * n + j))) & full for j in range(n)] for i in range(m)]
    witness = Assignment(dims, tuple(tuple(r) for r in rows))
    return ExactResult(best, witness, "brute", time.perf_counter() - t0)


# transfer DP --------------------------------------------------------------

class _Tables:
    """Label arithmetic and the sparse transition graph for one column height."""

    def __init__(self, m: int, k: int) -> None:
        self.m, self.k = m, k
        self.bits = m * k
        self.nlabels = 1 << self.bits
        self.full_cell = full_mask(k)
        allbits = self.nlabels - 1
        labels = np.arange(self.nlabels, dtype=np.int64)
        cell_mask = np.zeros_like(labels)  # full cell mask on every empty cell
        for i in range(m):
            empty = ((labels >> (k * i)) & self.full_cell) == 0
            cell_mask |= np.where(empty, self.full_cell << (k * i), 0)
        vertical = self._rot(labels, k) | self._rot(labels, -k)
        self.demand = (cell_mask & ~vertical & allbits).astype(np.int64)
        self.weight = _popcount(labels).astype(np.int32)
        self.kappa = _popcount(self.demand).astype(np.int32)
        self.canonical = self._canonical(labels)
        self._build_states()
        self._build_edges()

    def _rot(self, x: np.ndarray, s: int) -> np.ndarray:
        b = self.bits
        s %= b
        return ((x << s) | (x >> (b - s))) & (self.nlabels - 1)

    def _canonical(self, labels: np.ndarray) -> np.ndarray:
        k, m = self.k, self.m
        rev = np.zeros_like(labels)
        for i in range(m):
            rev |= ((labels >> (k * i)) & self.full_cell) << (k * (m - 1 - i))
        variants = [labels, rev]
        if k == 2:
            swap = [((x & 0x5555555555) << 1) | ((x >> 1) & 0x5555555555) for x in variants]
            variants += swap
        out = labels.copy()
        for v in variants:
            for t in range(m):
                out = np.minimum(out, self._rot(v, k * t))
        return out

    def _build_states(self) -> None:
        labs, res = [], []
        for b in range(self.nlabels):
            r = int(self.demand[b])
            sub = r
            subs = []
            while True:
                subs.append(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & r
            subs.reverse()
            labs.extend([b] * len(subs))
            res.extend(subs)
        self.state_label = np.array(labs, dtype=np.int64)
        self.state_res = np.array(res, dtype=np.int64)
        self.nstates = len(labs)
        self.index = np.full((self.nlabels, self.nlabels), -1, dtype=np.int32)
        self.index[self.state_label, self.state_res] = np.arange(self.nstates, dtype=np.int32)

    def _build_edges(self) -> None:
        labels = np.arange(self.nlabels, dtype=np.int64)
        supersets = {}
        src, dst = [], []
        for s in range(self.nstates):
            r = int(self.state_res[s])
            sup = supersets.get(r)
            if sup is None:
                sup = labels[(labels & r) == r]
                supersets[r] = sup
            b = self.state_label[s]
            d = self.index[sup, self.demand[sup] & ~b]
            src.append(np.full(len(sup), s, dtype=np.int32))
            dst.append(d)
        src = np.concatenate(src)
        dst = np.concatenate(dst).astype(np.int32)
        order = np.lexsort((src, dst))
        self.edge_src = src[order]
        self.edge_dst = dst[order]

    @functools.lru_cache(maxsize=None)
    def restricted(self, min_kappa: int):
        """Edges between states whose labels all have demand >= min_kappa."""
        ok_label = self.kappa >= min_kappa
        ok_state = ok_label[self.state_label]
        keep = ok_state[self.edge_src] & ok_state[self.edge_dst]
        src, dst = self.edge_src[keep], self.edge_dst[keep]
        if len(dst) == 0:
            return src, dst, np.zeros(0, dtype=np.int64), dst
        seg = np.flatnonzero(np.r_[True, dst[1:] != dst[:-1]])
        heads = dst[seg]
        return src, dst, seg, heads

    def decode(self, label: int) -> list[int]:
        return [(label >> (self.k * i)) & self.full_cell for i in range(self.m)]


@functools.lru_cache(maxsize=8)
def _tables(m: int, k: int) -> _Tables:
    return _Tables(m, k)


def _step(t: _Tables, D: np.ndarray, restr) -> np.ndarray:
    src, dst, seg, heads = restr
    out = np.full((D.shape[0], t.nstates), INF, dtype=np.int32)
    if len(dst):
        best = np.minimum.reduceat(D[:, src], seg, axis=1)
        out[:, heads] = np.minimum(best + t.weight[t.state_label[heads]], INF)
    return out


def _close(t: _Tables, D: np.ndarray, starts: np.ndarray) -> np.ndarray:
    """Mask of final states compatible with each start state."""
    c1 = t.state_label[starts][:, None]
    r1 = t.state_res[starts][:, None]
    lab, res = t.state_label[None, :], t.state_res[None, :]
    ok = ((res & ~c1) == 0) & ((t.demand[c1] & ~lab & ~r1) == 0)
    return np.where(ok, D, INF)


def _run_batch(t: _Tables, n: int, starts: np.ndarray, min_kappa: int) -> np.ndarray:
    """Best cyclic weight for each start state (INF when infeasible)."""
    restr = t.restricted(min_kappa)
    D = np.full((len(starts), t.nstates), INF, dtype=np.int32)
    D[np.arange(len(starts)), starts] = t.weight[t.state_label[starts]]
    for _ in range(n - 1):
        D = _step(t, D, restr)
    return _close(t, D, starts).min(axis=1)


def _witness(t: _Tables, n: int, start: int, min_kappa: int, value: int) -> list[int]:
    restr = t.restricted(min_kappa)
    src, dst, seg, heads = restr
    D = np.full((1, t.nstates), INF, dtype=np.int32)
    D[0, start] = t.weight[t.state_label[start]]
    layers = [D[0]]
    for _ in range(n - 1):
        D = _step(t, D, restr)
        layers.append(D[0])
    final = _close(t, D, np.array([start]))[0]
    cur = int(np.flatnonzero(final == value)[0])
    path = [cur]
    seg_of = {int(h): i for i, h in enumerate(heads)}
    seg_end = np.r_[seg[1:], len(dst)]
    for j in range(n - 1, 0, -1):
        i = seg_of[cur]
        cand = src[seg[i]:seg_end[i]]
        need = layers[j][cur] - t.weight[t.state_label[cur]]
        cur = int(cand[layers[j - 1][cand] == need].min())
        path.append(cur)
    path.reverse()
    assert path[0] == start
    return [int(t.state_label[s]) for s in path]


def _starts_for_level(t: _Tables, kappa: int) -> np.ndarray:
    labels = np.flatnonzero((t.kappa == kappa) & (t.canonical == np.arange(t.nlabels)))
    if len(labels) == 0:
        return np.zeros(0, dtype=np.int32)
    return np.flatnonzero(np.isin(t.state_label, labels)).astype(np.int32)


def exact_dp(m: int, n: int, k_colors: int = 2, budget: Budget = DEFAULT_BUDGET,
             workers: int = 1, batch: int = 16) -> ExactResult:
    """Exact value by the column transfer DP, with an optimal witness.

    The column height is ``min(m, n)``. Start batches are independent and may
    run on ``workers`` threads; the reduction picks the smallest value, then
    the earliest start in the fixed iteration order, so results do not depend
    on scheduling.
    """
    dims = Dims(m, n, k_colors)
    height, length = min(m, n), max(m, n)
    limit = budget.dp_height_k2 if k_colors == 2 else budget.dp_height_k1
    if height > limit:
        raise CapacityError(f"transfer DP limited to column height <= {limit} for k={k_colors}, "
                            f"got min(m, n) = {height}")
    t0 = time.perf_counter()
    t = _tables(height, k_colors)
    best = (int(INF), -1, -1)  # (value, kappa, start state)
    for kappa in range(int(t.kappa.max()) + 1):
        starts = _starts_for_level(t, kappa)
        if len(starts) == 0:
            continue
        chunks = [starts[i:i + batch] for i in range(0, len(starts), batch)]
        run = functools.partial(_run_batch, t, length, min_kappa=kappa)
        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                results = list(pool.map(run, chunks))
        else:
            results = [run(c) for c in chunks]
        vals = np.concatenate(results)
        i = int(np.argmin(vals))
        if vals[i] < best[0]:
            best = (int(vals[i]), kappa, int(starts[i]))
        log.debug("height %d level %d: %d starts, best %d", height, kappa, len(starts), best[0])
    value, kappa, start = best
    if start < 0:
        raise AssertionError(f"no rainbow dominating function found for ({m}, {n})")
    labels = _witness(t, length, start, kappa, value)
    rows = [[0] * length for _ in range(height)]
    for j, lab in enumerate(labels):
        for i, c in enumerate(t.decode(lab)):
            rows[i][j] = c
    witness = Assignment(Dims(height, length, k_colors), tuple(tuple(r) for r in rows))
    if (height, length) != (m, n):
        witness = witness.transpose()
    assert witness.dims == dims
    return ExactResult(value, witness, "dp", time.perf_counter() - t0)


def dp_feasible(m: int, n: int, k_colors: int = 2, budget: Budget = DEFAULT_BUDGET) -> bool:
    limit = budget.dp_height_k2 if k_colors == 2 else budget.dp_height_k1
    return min(m, n) <= limit


def brute_feasible(m: int, n: int, k_colors: int = 2, budget: Budget = DEFAULT_BUDGET) -> bool:
    limit = budget.brute_cells_k2 if k_colors == 2 else budget.brute_cells_k1
    return m * n <= limit


def exact(m: int, n: int, k_colors: int = 2, engine: str = "auto",
          budget: Budget = DEFAULT_BUDGET, workers: int = 1) -> ExactResult:
    if engine not in ("auto", "dp", "brute"):
        raise InputError(f"unknown engine {engine!r}")
    Dims(m, n, k_colors)
    if engine == "brute" or (engine == "auto" and not dp_feasible(m, n, k_colors, budget)):
        if engine == "auto" and not brute_feasible(m, n, k_colors, budget):
            raise CapacityError(f"({m}, {n}, k={k_colors}) exceeds both the DP and brute-force budgets")
        result = exact_brute(m, n, k_colors, budget)
    else:
        result = exact_dp(m, n, k_colors, budget, workers=workers)
    report = verify(result.witness)
    assert report.valid and report.weight == result.value, (m, n, k_colors, result)
    return result


# prism oracle -------------------------------------------------------------

def prism_graph(m: int, n: int) -> nx.Graph:
    torus = nx.cartesian_product(nx.cycle_graph(m), nx.cycle_graph(n))
    return nx.cartesian_product(torus, nx.complete_graph(2))


def gamma_prism(m: int, n: int, budget: Budget = DEFAULT_BUDGET) -> int:
    """Domination number of C_m □ C_n □ K_2 by enumerating vertex subsets by size."""
    Dims(m, n)
    if 2 * m * n > budget.prism_vertices:
        raise CapacityError(f"prism enumeration limited to {budget.prism_vertices} vertices, got {2 * m * n}")
    g = prism_graph(m, n)
    nodes = sorted(g.nodes)
    pos = {v: i for i, v in enumerate(nodes)}
    closed = [sum(1 << pos[u] for u in g[v]) | (1 << pos[v]) for v in nodes]
    everything = (1 << len(nodes)) - 1
    for size in range(1, len(nodes) + 1):
        for combo in itertools.combinations(closed, size):
            acc = 0
            for c in combo:
                acc |= c
            if acc == everything:
                return size
    raise AssertionError("unreachable: the whole vertex set dominates")
