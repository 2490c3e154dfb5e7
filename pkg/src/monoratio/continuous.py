"""Continuous maximization: measured continuous greedy over down-closed
bodies, swap rounding for uniform/partition matroid polytopes, and the
non-monotone Frank-Wolfe ascent for DR-submodular objectives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constraints import (CardinalityConstraint, DownClosedPolytope, Matroid,
                          PartitionMatroid, UniformMatroid,
                          linear_maximize_matroid, linear_maximize_polytope)
from .oracle import SetFunctionOracle, _pack_masks, ids_of, mask_from_indicator

__all__ = [
    "MCGConfig",
    "MCGResult",
    "measured_continuous_greedy",
    "swap_rounding",
    "FWConfig",
    "FWResult",
    "frank_wolfe_nonmonotone",
    "mcg_trace_to_csv",
]


@dataclass(frozen=True)
class MCGConfig:
    """Discretization and sampling control for measured continuous greedy.

    T is the total ascent time (the output is guaranteed inside the body only
    for T <= 1); steps is the number of discrete time slices; samples is the
    Monte-Carlo budget per gain-vector estimate.
    """

    T: float = 1.0
    steps: int = 100
    samples: int = 64
    seed: int | None = None

    def __post_init__(self):
        if self.T < 0:
            raise ValueError("T must be >= 0")
        if self.steps < 1 or self.samples < 1:
            raise ValueError("steps and samples must be positive")


@dataclass
class MCGResult:
    """Final fractional point plus a crude additive discretization bound
    (delta * n * max|f| over the sampled evaluations) and an optional
    per-step trace of (t, max coordinate, estimated F, stderr)."""

    y: np.ndarray
    discretization_bound: float
    trace: list[tuple[float, float, float, float]] | None = None


def mcg_trace_to_csv(trace) -> str:
    lines = ["t,y_inf_norm,F_estimate,stderr"]
    for t, ynorm, fest, se in trace:
        lines.append(f"{t:.10g},{ynorm:.10g},{fest:.10g},{se:.10g}")
    return "\n".join(lines) + "\n"


def _gain_estimates(f: SetFunctionOracle, y: np.ndarray, samples: int, rng):
    """Estimate w_u = F(y or 1_u) - F(y) for all u with common random numbers:
    the same sampled sets R(y) are reused with u forced in, which makes each
    w_u a mean of correlated differences and slashes the variance."""
    n = y.size
    bits = rng.random((samples, n)) < y
    masks = _pack_masks(bits)
    base_vals = np.array([f.value(m) for m in masks])
    w = np.empty(n)
    for u in range(n):
        bit = 1 << u
        w[u] = np.mean(np.array([f.value(m | bit) for m in masks]) - base_vals)
    fmax = float(np.max(np.abs(base_vals))) if samples else 0.0
    est = float(base_vals.mean())
    se = float(base_vals.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return w, est, se, fmax


def measured_continuous_greedy(f: SetFunctionOracle, constraint,
                               cfg: MCGConfig = MCGConfig(),
                               trace: bool = False) -> MCGResult:
    """Measured continuous greedy over a matroid or down-closed polytope.

    Discretizes dy/dt = (1 - y) * x(t) with delta = T/steps, where x(t)
    maximizes the estimated gain vector w(t) over the constraint (exact
    greedy for matroid kinds, an LP for polytopes). The continuous guarantee
    target is F(y(T)) >= [m(1-e^-T) + (1-m)T e^-T] f(OPT) up to
    discretization and sampling error.
    """
    n = f.n
    rng = np.random.default_rng(cfg.seed)
    delta = cfg.T / cfg.steps
    if isinstance(constraint, CardinalityConstraint):
        constraint = UniformMatroid(constraint.n, constraint.k)
    y = np.zeros(n)
    rows = [] if trace else None
    fmax_seen = 0.0
    for step in range(cfg.steps):
        w, fest, se, fmax = _gain_estimates(f, y, cfg.samples, rng)
        fmax_seen = max(fmax_seen, fmax)
        if isinstance(constraint, Matroid):
            x = np.zeros(n)
            for u in ids_of(linear_maximize_matroid(constraint, w)):
                x[u] = 1.0
        elif isinstance(constraint, DownClosedPolytope):
            x = linear_maximize_polytope(constraint, w)
        else:
            raise ValueError(f"unsupported constraint {constraint!r}")
        y = y + delta * (1.0 - y) * x
        if rows is not None:
            rows.append(((step + 1) * delta, float(np.max(y)), fest, se))
    bound = delta * n * fmax_seen
    return MCGResult(y=y, discretization_bound=bound, trace=rows)


def _round_block(x: np.ndarray, ids: list[int], rng) -> None:
    """In-place randomized rounding of one block: mean-preserving pairwise
    moves along e_i - e_j until at most one fractional coordinate remains,
    then an independent Bernoulli for the survivor. Block sums never grow, so
    the rounded block respects its capacity; multilinear extensions of
    submodular f are convex along e_i - e_j and linear per coordinate, so
    E[f(rounded)] >= F(x)."""
    tol = 1e-12
    frac = [j for j in ids if tol < x[j] < 1.0 - tol]
    while len(frac) >= 2:
        i, j = frac[0], frac[1]
        up = min(1.0 - x[i], x[j])
        down = min(x[i], 1.0 - x[j])
        if rng.random() < down / (up + down):
            x[i] += up
            x[j] -= up
        else:
            x[i] -= down
            x[j] += down
        frac = [j for j in frac if tol < x[j] < 1.0 - tol]
    if frac:
        j = frac[0]
        x[j] = 1.0 if rng.random() < x[j] else 0.0
    for j in ids:
        x[j] = 0.0 if x[j] < 0.5 else 1.0


def swap_rounding(y, M: Matroid, seed=None) -> int:
    """Round a matroid-polytope point to a random independent set with
    Pr[u in S] = y_u and E[f(S)] >= F(y) for submodular f.

    Supports uniform and partition matroids (the rounding runs per block,
    which is exact because these matroids are direct sums of uniform ones).
    Integral input rounds to its own set deterministically.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    y = np.asarray(y, dtype=float).copy()
    tol = 1e-9
    if np.any(y < -tol) or np.any(y > 1.0 + tol):
        raise ValueError("point is outside [0,1]^n")
    if isinstance(M, UniformMatroid):
        blocks = [list(range(M.n))]
        caps = [M.k]
    elif isinstance(M, PartitionMatroid):
        blocks = [ids_of(b) for b in M.blocks]
        caps = list(M.capacities)
    else:
        raise ValueError("swap rounding supports uniform and partition matroids")
    for ids, cap in zip(blocks, caps):
        if sum(y[j] for j in ids) > cap + tol:
            raise ValueError("point is outside the matroid polytope "
                             f"(block sum exceeds capacity {cap})")
    np.clip(y, 0.0, 1.0, out=y)
    for ids in blocks:
        _round_block(y, ids, rng)
    return mask_from_indicator(y)


@dataclass(frozen=True)
class FWConfig:
    """Frank-Wolfe control: step size eps (1/eps is rounded up to an
    integer), plus the smoothness constant L and diameter bound D used for
    the reported additive loss eps*L*D^2."""

    eps: float
    L: float | None = None
    D: float | None = None

    def __post_init__(self):
        if not 0.0 < self.eps < 1.0:
            raise ValueError("eps must be in (0,1)")


@dataclass
class FWResult:
    y: np.ndarray
    value: float
    steps: int
    additive_loss_bound: float | None


def frank_wolfe_nonmonotone(grad, value, P: DownClosedPolytope,
                            cfg: FWConfig) -> FWResult:
    """Non-monotone Frank-Wolfe ascent for DR-submodular maximization.

    Runs ceil(1/eps) iterations of s <- argmax_{x in P} x . ((1-z) * g) and
    z <- z + eps (1-z) * s in box-normalized coordinates (so iterates stay in
    [0,1]^n and are coordinatewise nondecreasing), then maps back to the
    original box. Guarantee target:
    F(y) >= [m(1-1/e) + (1-m)/e] F(opt) - eps L D^2.
    """
    steps = math.ceil(1.0 / cfg.eps)
    eps = 1.0 / steps
    Pn, scale = P.normalized()
    z = np.zeros(P.n)
    for _ in range(steps):
        g = np.asarray(grad(scale * z), dtype=float)
        s = linear_maximize_polytope(Pn, (1.0 - z) * (scale * g))
        z = z + eps * (1.0 - z) * s
    y = scale * z
    loss = None
    if cfg.L is not None and cfg.D is not None:
        loss = eps * cfg.L * cfg.D ** 2
    return FWResult(y=y, value=float(value(y)), steps=steps,
                    additive_loss_bound=loss)
