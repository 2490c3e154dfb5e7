"""Ground sets, counted set-function oracles, and continuous extensions.

Subsets are bitmask ints over element ids 0..n-1 (bit u set means element u
is in the set). Python ints are unbounded, so masks stay valid for any ground
set size; the exact enumeration routines enforce their own caps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GroundSet",
    "SetFunctionOracle",
    "SampleConfig",
    "SizeLimitError",
    "mask_of",
    "ids_of",
    "indicator",
    "mask_from_indicator",
    "marginal",
    "multilinear_exact",
    "multilinear_sampled",
    "lovasz_extension",
]

EXACT_MULTILINEAR_LIMIT = 20


class SizeLimitError(ValueError):
    """Raised when an exact enumeration is asked for a too-large ground set."""


def mask_of(ids) -> int:
    """Bitmask of an iterable of element ids."""
    m = 0
    for u in ids:
        m |= 1 << u
    return m


def ids_of(mask: int) -> list[int]:
    """Sorted element ids of a bitmask."""
    out = []
    u = 0
    while mask:
        if mask & 1:
            out.append(u)
        mask >>= 1
        u += 1
    return out


def indicator(mask: int, n: int) -> np.ndarray:
    """Characteristic vector in [0,1]^n of the set `mask`."""
    x = np.zeros(n)
    for u in ids_of(mask):
        x[u] = 1.0
    return x


def mask_from_indicator(x, tol: float = 1e-9) -> int:
    """Inverse of `indicator`; raises if any coordinate is not 0/1 within tol."""
    m = 0
    for u, v in enumerate(x):
        if v > 1.0 - tol:
            m |= 1 << u
        elif v > tol:
            raise ValueError(f"coordinate {u} = {v} is fractional")
    return m


@dataclass(frozen=True)
class GroundSet:
    """A ground set of n elements with dense stable ids 0..n-1."""

    n: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground set needs at least one element")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels length must equal n")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def label(self, u: int) -> str:
        if self.labels is None:
            return str(u)
        return self.labels[u]


class SetFunctionOracle:
    """Counted black-box access to a set function f: 2^N -> R.

    `fn` receives a bitmask and must be deterministic. `eval_count` increases
    by one per logical evaluation; with memoize=True repeated masks skip the
    recomputation but the counter still advances, so counts stay comparable
    across cached and uncached oracles.
    """

    def __init__(self, ground: GroundSet, fn, memoize: bool = False, name: str = "f"):
        self.ground = ground
        self.name = name
        self._fn = fn
        self._memo: dict | None = {} if memoize else None
        self.eval_count = 0

    @property
    def n(self) -> int:
        return self.ground.n

    def value(self, mask: int) -> float:
        self.eval_count += 1
        memo = self._memo
        if memo is None:
            return float(self._fn(mask))
        v = memo.get(mask)
        if v is None:
            v = float(self._fn(mask))
            memo[mask] = v
        return v

    def values(self, masks) -> np.ndarray:
        """Evaluate a batch of masks (counts one evaluation per mask)."""
        return np.array([self.value(m) for m in masks])

    def __repr__(self):
        return f"SetFunctionOracle({self.name}, n={self.n}, calls={self.eval_count})"


@dataclass(frozen=True)
class SampleConfig:
    """Monte-Carlo control: sample count and RNG seed."""

    samples: int
    seed: int = 0

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")


def marginal(f: SetFunctionOracle, u: int, mask: int) -> float:
    """Marginal gain of adding element u to the set `mask` (two oracle calls)."""
    bit = 1 << u
    if mask & bit:
        raise ValueError(f"element {u} is already in the set")
    return f.value(mask | bit) - f.value(mask)


def multilinear_exact(f: SetFunctionOracle, x, limit: int = EXACT_MULTILINEAR_LIMIT) -> float:
    """Exact multilinear extension F(x) = sum_S f(S) prod x_u prod (1-x_u).

    Enumerates all 2^n subsets, so the ground set must have at most `limit`
    elements; use `multilinear_sampled` beyond that.
    """
    n = f.n
    if n > limit:
        raise SizeLimitError(
            f"exact multilinear enumeration capped at n={limit}; "
            f"use multilinear_sampled for n={n}"
        )
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise ValueError(f"x must have shape ({n},)")
    if np.any(x < -1e-12) or np.any(x > 1 + 1e-12):
        raise ValueError("coordinates must lie in [0,1]")
    # weights[mask] = prob of drawing `mask` under independent inclusion; bit u
    # of the index corresponds to element u.
    w = np.array([1.0])
    for u in range(n):
        w = np.concatenate([w * (1.0 - x[u]), w * x[u]])
    total = 0.0
    for mask in range(1 << n):
        total += w[mask] * f.value(mask)
    return total


def _pack_masks(bits: np.ndarray) -> list[int]:
    # bits: (samples, n) boolean
    n = bits.shape[1]
    if n <= 62:
        weights = (1 << np.arange(n, dtype=np.int64))
        return [int(v) for v in bits @ weights]
    out = []
    for row in bits:
        m = 0
        for u in np.nonzero(row)[0]:
            m |= 1 << int(u)
        out.append(m)
    return out


def multilinear_sampled(f: SetFunctionOracle, x, cfg: SampleConfig) -> tuple[float, float]:
    """Monte-Carlo estimate of F(x) with its standard error.

    Draws cfg.samples independent sets R(x) (element u included with
    probability x_u) and returns (mean, stderr). Bit-reproducible for a fixed
    seed.
    """
    if cfg.samples < 2:
        raise ValueError("need samples >= 2 for a standard error")
    n = f.n
    x = np.asarray(x, dtype=float)
    rng = np.random.default_rng(cfg.seed)
    bits = rng.random((cfg.samples, n)) < x
    vals = np.array([f.value(m) for m in _pack_masks(bits)])
    if vals.min() == vals.max():  # degenerate sample: mean is exact
        return float(vals[0]), 0.0
    est = float(vals.mean())
    stderr = float(vals.std(ddof=1) / math.sqrt(cfg.samples))
    return est, stderr


def lovasz_extension(f: SetFunctionOracle, x) -> float:
    """Exact Lovász extension by threshold decomposition (n+1 oracle calls).

    Sorts coordinates descending (ties by id; the result is tie-independent
    because zero gaps carry zero weight) and accumulates f on prefix sets
    weighted by consecutive threshold gaps.
    """
    n = f.n
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise ValueError(f"x must have shape ({n},)")
    order = np.argsort(-x, kind="stable")
    xs = x[order]
    total = (1.0 - xs[0]) * f.value(0)
    mask = 0
    for i in range(n):
        mask |= 1 << int(order[i])
        hi = xs[i]
        lo = xs[i + 1] if i + 1 < n else 0.0
        total += (hi - lo) * f.value(mask)
    return total
