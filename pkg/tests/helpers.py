"""Shared fixture builders and independent brute-force oracles for the tests.

Everything here is deliberately naive: expected values computed by these
helpers never reuse the library's optimized code paths.
"""

import math

import numpy as np

from monoratio import GroundSet, SetFunctionOracle, ids_of


def table_oracle(table, name="table", count_offset=False) -> SetFunctionOracle:
    """Oracle backed by an explicit value table indexed by mask."""
    vals = [float(v) for v in table]
    ground = GroundSet((len(vals) - 1).bit_length())
    return SetFunctionOracle(ground, lambda m: vals[m], name=name)


def modular_oracle(weights) -> SetFunctionOracle:
    w = [float(x) for x in weights]
    ground = GroundSet(len(w))
    return SetFunctionOracle(
        ground, lambda m: sum(w[u] for u in ids_of(m)), memoize=True,
        name="modular")


def gap_oracle(m: float) -> SetFunctionOracle:
    """Two-element function m*1[S nonempty] + (1-m)(|S| mod 2); its
    monotonicity ratio is exactly m."""
    def fn(mask):
        return m * (mask != 0) + (1.0 - m) * (mask.bit_count() % 2)
    return SetFunctionOracle(GroundSet(2), fn, name=f"gap({m})")


def directed_cut_edge() -> SetFunctionOracle:
    """Directed cut of the single edge 0 -> 1 (n = 2)."""
    return SetFunctionOracle(GroundSet(2), lambda m: 1.0 if m == 0b01 else 0.0,
                             name="cut-edge")


def mixture_table(n: int, seed: int) -> np.ndarray:
    """Value table of a random non-negative submodular coverage+cut mixture.

    Coverage part: each element covers a random subset of a 2n-point
    weighted universe. Cut part: weighted directed cut. A style draw skews
    the mixture so the monotonicity ratio spreads over [0, 1].
    """
    rng = np.random.default_rng(seed)
    style = int(rng.integers(3))  # 0: coverage-heavy, 1: cut-heavy, 2: mixed
    universe = 2 * n
    covers = [int(rng.integers(1, 1 << universe)) for _ in range(n)]
    pt_w = rng.random(universe) * (0.25 if style == 1 else 1.0)
    cut_w = rng.random((n, n)) * (rng.random((n, n)) < 0.6)
    np.fill_diagonal(cut_w, 0.0)
    cut_w *= 0.15 if style == 0 else 1.25
    table = np.zeros(1 << n)
    for mask in range(1 << n):
        cov = 0
        ins, outs = [], []
        for u in range(n):
            if (mask >> u) & 1:
                cov |= covers[u]
                ins.append(u)
            else:
                outs.append(u)
        val = sum(pt_w[p] for p in range(universe) if (cov >> p) & 1)
        if ins and outs:
            val += float(cut_w[np.ix_(ins, outs)].sum())
        table[mask] = val
    return table


def mixture_oracle(n: int, seed: int):
    table = mixture_table(n, seed)
    return table_oracle(table, name=f"mix{seed}"), table


def psd_similarity(n: int, seed: int, d: int = 4) -> np.ndarray:
    """Random non-negative PSD similarity (Gram matrix of non-negative
    features)."""
    rng = np.random.default_rng(seed)
    feats = rng.random((n, d))
    return feats @ feats.T


def brute_opt(table, feasible=None):
    """(best value, first best mask) over all masks passing `feasible`."""
    best_v, best_m = -math.inf, None
    for mask in range(len(table)):
        if feasible is not None and not feasible(mask):
            continue
        if table[mask] > best_v:
            best_v, best_m = float(table[mask]), mask
    return best_v, best_m


def naive_monotonicity_ratio(table):
    """Independent all-pairs scan with the same zero convention and
    lexicographic tie-break the library documents."""
    full = len(table) - 1
    best = math.inf
    wS = wT = 0
    for S in range(len(table)):
        fS = table[S]
        T = S
        while True:
            r = 1.0 if fS <= 0.0 else table[T] / fS
            if r < best:
                best, wS, wT = r, S, T
            if T == full:
                break
            T = (T + 1) | S
    return float(best), wS, wT


def naive_weak_ratio(table, family):
    best = math.inf
    for S in family:
        fS = table[S]
        for T in family:
            r = 1.0 if fS <= 0.0 else table[S | T] / fS
            best = min(best, r)
    return float(best)


def naive_greedy_trajectory(table, k):
    """Replay of the textbook greedy (argmax marginal, accept when >= 0,
    smaller id on ties); returns the list of solution masks per iteration."""
    n = (len(table) - 1).bit_length()
    A = 0
    out = []
    for _ in range(k):
        best = None
        for u in range(n):
            if (A >> u) & 1:
                continue
            marg = table[A | (1 << u)] - table[A]
            if best is None or marg > best[0]:
                best = (marg, u)
        if best is not None and best[0] >= 0:
            A |= 1 << best[1]
        out.append(A)
    return out


def exact_double_greedy_expectation(table):
    """Exact expected output value of the randomized double greedy, by
    enumerating both branches of every coin with their probabilities."""
    n = (len(table) - 1).bit_length()
    full = len(table) - 1

    def rec(u, X, Y, prob):
        if u == n:
            return prob * table[X]
        bit = 1 << u
        a = table[X | bit] - table[X]
        b = table[Y & ~bit] - table[Y]
        ap, bp = max(a, 0.0), max(b, 0.0)
        p_add = 1.0 if ap + bp == 0.0 else ap / (ap + bp)
        total = 0.0
        if p_add > 0.0:
            total += rec(u + 1, X | bit, Y, prob * p_add)
        if p_add < 1.0:
            total += rec(u + 1, X, Y & ~bit, prob * (1.0 - p_add))
        return total

    return rec(0, 0, full, 1.0)


def product_expectation(table, O_mask, probs):
    """E[f(O u D)] for D including element u independently w.p. probs[u],
    by exhaustive enumeration of D's support."""
    n = (len(table) - 1).bit_length()
    w = np.array([1.0])
    for u in range(n):
        w = np.concatenate([w * (1.0 - probs[u]), w * probs[u]])
    return float(sum(w[m] * table[O_mask | m] for m in range(len(table))))


def union_find_forest_indep(edges):
    """Independence test for the graphic matroid of `edges`: a set of edge
    ids is independent iff it contains no cycle."""
    def indep(mask):
        parent = {}

        def find(x):
            while parent.get(x, x) != x:
                parent[x] = parent.get(parent[x], parent[x])
                x = parent[x]
            return x

        for i, (a, b) in enumerate(edges):
            if not (mask >> i) & 1:
                continue
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True

    return indep


def coverage_table(n: int, seed: int) -> np.ndarray:
    """Pure weighted-coverage table: monotone submodular (ratio exactly 1)."""
    rng = np.random.default_rng(seed)
    universe = 2 * n
    covers = [int(rng.integers(1, 1 << universe)) for _ in range(n)]
    pt_w = rng.random(universe)
    table = np.zeros(1 << n)
    for mask in range(1 << n):
        cov = 0
        for u in range(n):
            if (mask >> u) & 1:
                cov |= covers[u]
        table[mask] = sum(pt_w[p] for p in range(universe) if (cov >> p) & 1)
    return table
