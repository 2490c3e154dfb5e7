"""Discrete maximization algorithms: double greedy, greedy and random greedy
under cardinality constraints (plus their accelerated threshold/sample
variants), greedy and random greedy under matroid constraints, and the Random
scarecrow baseline.

Every run returns a RunResult whose value is a fresh oracle evaluation of the
returned solution and whose oracle_calls counts the calls consumed by the
run. All randomness flows through explicitly seeded numpy generators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constraints import (CardinalityConstraint, Matroid, PartitionMatroid,
                          UniformMatroid)
from .oracle import SetFunctionOracle, ids_of

__all__ = [
    "RunResult",
    "TraceRow",
    "trace_to_csv",
    "double_greedy",
    "best_of_with_ground",
    "greedy_cardinality",
    "random_greedy_cardinality",
    "threshold_greedy",
    "sample_greedy",
    "threshold_random_greedy",
    "greedy_matroid",
    "random_greedy_matroid",
    "random_baseline",
]


@dataclass(frozen=True)
class TraceRow:
    iteration: int
    element: int | None
    marginal: float | None
    accepted: bool


def trace_to_csv(rows) -> str:
    lines = ["iteration,element,marginal,accepted"]
    for r in rows:
        elem = "" if r.element is None else r.element
        marg = "" if r.marginal is None else repr(r.marginal)
        lines.append(f"{r.iteration},{elem},{marg},{int(r.accepted)}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RunResult:
    solution: int
    value: float
    oracle_calls: int
    seed: int | None = None
    trace: tuple[TraceRow, ...] | None = None

    @property
    def solution_ids(self) -> list[int]:
        return ids_of(self.solution)

    @property
    def size(self) -> int:
        return self.solution.bit_count()


def _rng(seed) -> tuple[np.random.Generator, int | None]:
    if isinstance(seed, np.random.Generator):
        return seed, None
    return np.random.default_rng(seed), seed


def _finish(f: SetFunctionOracle, solution: int, start_calls: int,
            seed: int | None, trace) -> RunResult:
    value = f.value(solution)
    return RunResult(solution=solution, value=value,
                     oracle_calls=f.eval_count - start_calls, seed=seed,
                     trace=tuple(trace) if trace is not None else None)


def double_greedy(f: SetFunctionOracle, seed=None, trace: bool = False) -> RunResult:
    """Randomized double greedy for unconstrained maximization.

    Sweeps the elements once keeping X (grow-up) and Y (shrink-down) sets;
    element u joins X with probability a'/(a'+b') where a' = max(f(u|X), 0)
    and b' = max(-f(u|Y-u), 0) (probability 1 when both vanish). Expected
    value is at least (2 f(OPT) + f(empty) + f(N)) / 4.
    """
    rng, seed = _rng(seed)
    start = f.eval_count
    n = f.n
    rows = [] if trace else None
    X = 0
    Y = (1 << n) - 1
    for u in range(n):
        bit = 1 << u
        a = f.value(X | bit) - f.value(X)
        b = f.value(Y & ~bit) - f.value(Y)
        ap, bp = max(a, 0.0), max(b, 0.0)
        p_add = 1.0 if ap + bp == 0.0 else ap / (ap + bp)
        take = rng.random() < p_add
        if take:
            X |= bit
        else:
            Y &= ~bit
        if rows is not None:
            rows.append(TraceRow(u + 1, u, a, take))
    assert X == Y
    return _finish(f, X, start, seed, rows)


def best_of_with_ground(f: SetFunctionOracle, seed=None) -> RunResult:
    """Better of double greedy and the full ground set; achieves the
    max{m, (2+m)/4} unconstrained guarantee."""
    start = f.eval_count
    dg = double_greedy(f, seed=seed)
    full = (1 << f.n) - 1
    ground_value = f.value(full)
    solution = full if ground_value > dg.value else dg.solution
    return _finish(f, solution, start, dg.seed, None)


def _best_candidate(f, A, fA, candidates):
    """(value, marginal, element) maximizing the marginal, ties by smaller id."""
    best = None
    for u in candidates:
        val = f.value(A | (1 << u))
        marg = val - fA
        if best is None or marg > best[1]:
            best = (val, marg, u)
    return best


def greedy_cardinality(f: SetFunctionOracle, k: int, trace: bool = False) -> RunResult:
    """Classic greedy: k iterations, each adding the best-marginal element
    only when its marginal is non-negative."""
    n = f.n
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n (k={k}, n={n})")
    start = f.eval_count
    rows = [] if trace else None
    A = 0
    fA = f.value(0)
    for i in range(1, k + 1):
        cands = [u for u in range(n) if not (A >> u) & 1]
        if not cands:
            break
        val, marg, u = _best_candidate(f, A, fA, cands)
        accepted = marg >= 0.0
        if accepted:
            A |= 1 << u
            fA = val
        if rows is not None:
            rows.append(TraceRow(i, u, marg, accepted))
    return _finish(f, A, start, None, rows)


def random_greedy_cardinality(f: SetFunctionOracle, k: int, seed=None,
                              trace: bool = False) -> RunResult:
    """Random greedy: per iteration collect the best set M_i of at most k
    positive-marginal elements, then add a uniform element of M_i with
    probability |M_i|/k (so each member joins with probability exactly 1/k).

    Restricting M_i to positive marginals never lowers its total marginal,
    so the argmax semantics are preserved.
    """
    n = f.n
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n (k={k}, n={n})")
    rng, seed = _rng(seed)
    start = f.eval_count
    rows = [] if trace else None
    A = 0
    fA = f.value(0)
    for i in range(1, k + 1):
        scored = []
        for u in range(n):
            if (A >> u) & 1:
                continue
            val = f.value(A | (1 << u))
            marg = val - fA
            if marg > 0.0:
                scored.append((marg, u, val))
        scored.sort(key=lambda t: (-t[0], t[1]))
        top = scored[:k]
        if top and rng.random() < len(top) / k:
            marg, u, val = top[int(rng.integers(len(top)))]
            A |= 1 << u
            fA = val
            if rows is not None:
                rows.append(TraceRow(i, u, marg, True))
        elif rows is not None:
            rows.append(TraceRow(i, None, None, False))
    return _finish(f, A, start, seed, rows)


def threshold_greedy(f: SetFunctionOracle, k: int, eps: float) -> RunResult:
    """Descending-threshold greedy: the threshold w starts at the best
    singleton marginal d, each full scan adds every element with marginal at
    least w, and w decays by the factor (1-eps) down to the floor (eps/n)*d.
    """
    n = f.n
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must be in (0,1)")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n (k={k}, n={n})")
    start = f.eval_count
    fA = f.value(0)
    d = max(f.value(1 << u) - fA for u in range(n))
    A = 0
    if d > 0.0 and k > 0:
        w = d
        floor = eps * d / n
        while A.bit_count() < k and w >= floor:
            for u in range(n):
                if A.bit_count() == k:
                    break
                if (A >> u) & 1:
                    continue
                val = f.value(A | (1 << u))
                if val - fA >= w:
                    A |= 1 << u
                    fA = val
            w *= 1.0 - eps
    return _finish(f, A, start, None, None)


def sample_greedy(f: SetFunctionOracle, k: int, eps: float, seed=None) -> RunResult:
    """Subsampled greedy: each of the k iterations draws
    ceil((n/k) ln(1/eps)) uniform candidates and adds the best of the sample
    when its marginal is non-negative."""
    n = f.n
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must be in (0,1)")
    if not 0 < k <= n:
        raise ValueError(f"need 0 < k <= n (k={k}, n={n})")
    rng, seed = _rng(seed)
    start = f.eval_count
    sample_size = math.ceil((n / k) * math.log(1.0 / eps))
    A = 0
    fA = f.value(0)
    for _ in range(k):
        cands = [u for u in range(n) if not (A >> u) & 1]
        if not cands:
            break
        take = min(sample_size, len(cands))
        sample = sorted(int(cands[j]) for j in
                        rng.choice(len(cands), size=take, replace=False))
        val, marg, u = _best_candidate(f, A, fA, sample)
        if marg >= 0.0:
            A |= 1 << u
            fA = val
    return _finish(f, A, start, seed, None)


def threshold_random_greedy(f: SetFunctionOracle, k: int, eps: float,
                            seed=None) -> RunResult:
    """Threshold-bucketed random greedy.

    Per iteration the candidate set M_i is collected by a descending
    threshold scan (decay 1-eps, floor eps*d/k below the iteration's best
    marginal d) over positive-marginal elements, capped at k elements; the
    random-greedy selection rule is then applied to M_i unchanged. For
    modular objectives the buckets collapse and the run coincides with exact
    random greedy under the same seed.
    """
    n = f.n
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must be in (0,1)")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n (k={k}, n={n})")
    rng, seed = _rng(seed)
    start = f.eval_count
    A = 0
    fA = f.value(0)
    for _ in range(k):
        marg = {}
        vals = {}
        for u in range(n):
            if (A >> u) & 1:
                continue
            val = f.value(A | (1 << u))
            if val - fA > 0.0:
                marg[u] = val - fA
                vals[u] = val
        if not marg:
            continue
        d = max(marg.values())
        bucket: list[int] = []
        chosen = set()
        w = d
        floor = eps * d / k
        while len(bucket) < k and w >= floor:
            for u in sorted(marg):
                if len(bucket) == k:
                    break
                if u not in chosen and marg[u] >= w:
                    bucket.append(u)
                    chosen.add(u)
            w *= 1.0 - eps
        if bucket and rng.random() < len(bucket) / k:
            u = bucket[int(rng.integers(len(bucket)))]
            A |= 1 << u
            fA = vals[u]
    return _finish(f, A, start, seed, None)


def greedy_matroid(f: SetFunctionOracle, M: Matroid, trace: bool = False) -> RunResult:
    """Greedy under a matroid constraint: repeatedly add the best feasible
    augmentation while its marginal stays non-negative."""
    if f.n != M.n:
        raise ValueError("oracle and matroid ground sets differ")
    start = f.eval_count
    rows = [] if trace else None
    A = 0
    fA = f.value(0)
    i = 0
    while True:
        i += 1
        cands = [u for u in range(M.n)
                 if not (A >> u) & 1 and M.is_independent(A | (1 << u))]
        if not cands:
            break
        val, marg, u = _best_candidate(f, A, fA, cands)
        if marg < 0.0:
            if rows is not None:
                rows.append(TraceRow(i, u, marg, False))
            break
        A |= 1 << u
        fA = val
        if rows is not None:
            rows.append(TraceRow(i, u, marg, True))
    return _finish(f, A, start, None, rows)


class _AugmentedMatroid(Matroid):
    """Base matroid plus `extra` dummy elements, truncated at the base rank.

    Dummy elements are free for independence (only the global size cap
    applies), which guarantees a base disjoint from any current base always
    exists. Mirrors the dummy construction used by random greedy for
    matroids: the objective ignores dummies.
    """

    def __init__(self, base: Matroid, extra: int):
        self.base = base
        self.extra = extra
        self.n = base.n + extra
        self.rank = base.rank
        self.real_mask = (1 << base.n) - 1

    def is_independent(self, mask: int) -> bool:
        if mask.bit_count() > self.rank:
            return False
        return self.base.is_independent(mask & self.real_mask)

    def greedy_base_disjoint(self, w, exclude: int) -> int:
        """Max-weight base avoiding `exclude`; w indexes real elements only
        (dummies weigh 0). Uses incremental feasibility counters for the
        built-in matroid kinds."""
        base = self.base
        reals = sorted(range(base.n), key=lambda u: (-w[u], u))
        # non-increasing weights; dummies (weight 0) fill slack ahead of the
        # non-positive reals, which keeps greedy optimality (only the order
        # across distinct weights matters)
        order = ([u for u in reals if w[u] > 0]
                 + list(range(base.n, self.n))
                 + [u for u in reals if w[u] <= 0])
        out = 0
        size = 0
        if isinstance(base, PartitionMatroid):
            left = list(base.capacities)
            for u in order:
                if (exclude >> u) & 1:
                    continue
                if u >= base.n:
                    out |= 1 << u
                    size += 1
                else:
                    j = base.block_of(u)
                    if left[j] > 0:
                        out |= 1 << u
                        size += 1
                        left[j] -= 1
                if size == self.rank:
                    return out
        elif isinstance(base, UniformMatroid):
            real_left = base.k
            for u in order:
                if (exclude >> u) & 1:
                    continue
                if u >= base.n:
                    out |= 1 << u
                    size += 1
                elif real_left > 0:
                    out |= 1 << u
                    size += 1
                    real_left -= 1
                if size == self.rank:
                    return out
        else:
            for u in order:
                if (exclude >> u) & 1:
                    continue
                cand = out | (1 << u)
                if self.is_independent(cand):
                    out = cand
                    size += 1
                    if size == self.rank:
                        return out
        raise AssertionError("dummy augmentation guarantees a disjoint base")

    def exchange(self, S: int, B: int, rng=None) -> dict[int, int]:
        """Bijection g: B -> S with S - g(u) + u independent. Pairs within
        real blocks first; leftovers (including dummies) may pair freely.

        With an rng the bijection is drawn uniformly among the valid
        pairings instead of id-sorted; a fixed deterministic pairing can
        trap the swap process in sub-optimal absorbing states, while a
        random one matches any improving pair with probability >= 1/k.
        """
        base = self.base
        s_ids, b_ids = ids_of(S), ids_of(B)
        if rng is not None:
            s_ids = [s_ids[j] for j in rng.permutation(len(s_ids))]
            b_ids = [b_ids[j] for j in rng.permutation(len(b_ids))]
        if isinstance(base, PartitionMatroid):
            key = lambda u: base.block_of(u) if u < base.n else -1
        elif isinstance(base, UniformMatroid):
            key = lambda u: 0  # any bijection is valid
        else:
            from .constraints import _matching_exchange
            return _matching_exchange(self, S, s_ids, b_ids)
        pool: dict[int, list[int]] = {}
        for s in s_ids:
            pool.setdefault(key(s), []).append(s)
        g: dict[int, int] = {}
        leftover = []
        for u in b_ids:
            j = key(u)
            if pool.get(j):
                g[u] = pool[j].pop(0)
            else:
                leftover.append(u)
        spare = [s for lst in pool.values() for s in lst]
        for u, s in zip(leftover, spare):
            g[u] = s
        return g


def random_greedy_matroid(f: SetFunctionOracle, M: Matroid, eps: float,
                          seed=None, trace: bool = False) -> RunResult:
    """Random greedy for matroids with dummy padding and beneficial-swap
    gating.

    The ground set is augmented with 2k dummies the objective ignores; the
    run starts from an all-dummy base and performs ceil(k/eps) iterations of:
    pick the max-weight disjoint base M_i on current marginals, map it onto
    the solution with an exchange bijection, draw a uniform u in M_i, and
    swap u in only when the swap strictly improves f. Dummies are stripped
    from the returned solution.
    """
    if f.n != M.n:
        raise ValueError("oracle and matroid ground sets differ")
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must be in (0,1)")
    rng, seed = _rng(seed)
    start = f.eval_count
    rows = [] if trace else None
    k = M.rank
    n = M.n
    if k == 0:
        return _finish(f, 0, start, seed, rows)
    aug = _AugmentedMatroid(M, 2 * k)
    real_mask = aug.real_mask
    iterations = math.ceil(k / eps)
    # arbitrary starting base: the first k dummies
    S = ((1 << k) - 1) << n
    fS = f.value(S & real_mask)
    w = np.zeros(n)
    for i in range(1, iterations + 1):
        s_real = S & real_mask
        w[:] = 0.0
        for u in range(n):
            if not (S >> u) & 1:
                w[u] = f.value(s_real | (1 << u)) - fS
        B = aug.greedy_base_disjoint(w, S)
        g = aug.exchange(S, B, rng=rng)
        b_ids = ids_of(B)
        u = b_ids[int(rng.integers(len(b_ids)))]
        cand = (S & ~(1 << g[u])) | (1 << u)
        cand_val = f.value(cand & real_mask)
        delta = cand_val - fS
        improved = cand_val > fS
        if improved:
            S = cand
            fS = cand_val
        if rows is not None:
            rows.append(TraceRow(i, u if u < n else None, delta, improved))
    return _finish(f, S & real_mask, start, seed, rows)


def random_baseline(f: SetFunctionOracle, constraint, seed=None) -> RunResult:
    """Scarecrow baseline: a uniformly random feasible set of maximal allowed
    size (k elements; or a full random pick per block for partition
    matroids)."""
    rng, seed = _rng(seed)
    start = f.eval_count
    n = f.n
    if isinstance(constraint, int):
        constraint = CardinalityConstraint(n, constraint)
    sol = 0
    if isinstance(constraint, (CardinalityConstraint, UniformMatroid)):
        k = constraint.k
        if k > 0:
            for j in rng.choice(n, size=k, replace=False):
                sol |= 1 << int(j)
    elif isinstance(constraint, PartitionMatroid):
        for bmask, cap in zip(constraint.blocks, constraint.capacities):
            ids = ids_of(bmask)
            take = min(cap, len(ids))
            if take > 0:
                for j in rng.choice(len(ids), size=take, replace=False):
                    sol |= 1 << ids[int(j)]
    elif isinstance(constraint, Matroid):
        for u in rng.permutation(n):
            cand = sol | (1 << int(u))
            if constraint.is_independent(cand):
                sol = cand
    else:
        raise ValueError(f"unsupported constraint {constraint!r}")
    return _finish(f, sol, start, seed, None)
