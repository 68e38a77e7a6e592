"""Graphons and graphon signals.

Two representations of each: analytic (a vectorized callable) and step
functions over the uniform partition ``I_k = [(k-1)/N, k/N)`` of [0, 1],
with the last interval closed at 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .graph import Graph, GraphSignal, signal_values


class GraphonError(ValueError):
    pass


def _check_unit(*args):
    for a in args:
        a = np.asarray(a, dtype=float)
        if np.any(~np.isfinite(a)) or np.any(a < 0) or np.any(a > 1):
            raise GraphonError("graphon arguments must lie in [0, 1]")


def block_index(u, N: int) -> np.ndarray:
    """Index of the partition cell containing each ``u`` (last cell closed)."""
    k = np.floor(np.asarray(u, dtype=float) * N).astype(np.int64)
    return np.minimum(k, N - 1)


def midpoints(N: int) -> np.ndarray:
    return (np.arange(N) + 0.5) / N


class Graphon:
    """Symmetric bounded kernel on the unit square."""

    range: tuple[float, float]

    def __call__(self, u, v):
        raise NotImplementedError

    def eval(self, u, v):
        _check_unit(u, v)
        out = self(u, v)
        return float(out) if np.ndim(out) == 0 else out

    @property
    def is_probability(self) -> bool:
        """True when every value is a valid edge probability."""
        return self.range[0] >= 0 and self.range[1] <= 1


@dataclass(frozen=True)
class AnalyticKernel(Graphon):
    """Named parametric kernel ``W(u, v)``.

    ``func`` must be vectorized over broadcastable arrays and symmetric.
    """

    name: str
    func: Callable = field(repr=False, compare=False)
    params: tuple = ()
    range: tuple[float, float] = (0.0, 1.0)

    def __call__(self, u, v):
        return self.func(np.asarray(u, dtype=float), np.asarray(v, dtype=float))

    @classmethod
    def constant(cls, p: float) -> "AnalyticKernel":
        p = float(p)
        if not -1 <= p <= 1:
            raise GraphonError("constant kernel value must lie in [-1, 1]")

        def f(u, v):
            return np.full(np.broadcast(u, v).shape, p)

        return cls("constant", f, (p,), (min(p, 0.0), max(p, 0.0)) if p < 0 else (0.0, 1.0))

    @classmethod
    def product(cls) -> "AnalyticKernel":
        return cls("product", lambda u, v: u * v)

    @classmethod
    def soft_geometric(cls, beta: float) -> "AnalyticKernel":
        """``exp(-beta |u - v|)``: soft random geometric kernel on a line."""
        beta = float(beta)
        if not beta > 0:
            raise GraphonError("beta must be positive")
        return cls("soft_geometric", lambda u, v: np.exp(-beta * np.abs(u - v)), (beta,))

    @classmethod
    def from_function(cls, func, name="custom", range=(0.0, 1.0)) -> "AnalyticKernel":
        lo, hi = float(range[0]), float(range[1])
        if not (-1 <= lo <= hi <= 1):
            raise GraphonError("kernel range must be a sub-interval of [-1, 1]")
        return cls(name, func, (), (lo, hi))


@dataclass(frozen=True, eq=False)
class StepGraphon(Graphon):
    """Block-constant kernel: ``W(u, v) = values[j, k]`` for u in I_j, v in I_k."""

    values: np.ndarray
    range: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        w = np.array(self.values, dtype=float, copy=True)
        lo, hi = float(self.range[0]), float(self.range[1])
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 1:
            raise GraphonError(f"step values must be a non-empty square matrix, got shape {w.shape}")
        if not np.array_equal(w, w.T):
            raise GraphonError("step graphon values must be exactly symmetric")
        if not (-1 <= lo <= hi <= 1):
            raise GraphonError("range must be a sub-interval of [-1, 1]")
        if np.any(~np.isfinite(w)) or np.any(w < lo) or np.any(w > hi):
            raise GraphonError(f"step graphon values outside declared range [{lo}, {hi}]")
        w.setflags(write=False)
        object.__setattr__(self, "values", w)
        object.__setattr__(self, "range", (lo, hi))

    @property
    def N(self) -> int:
        return self.values.shape[0]

    def __call__(self, u, v):
        return self.values[block_index(u, self.N), block_index(v, self.N)]

    def __eq__(self, other):
        if not isinstance(other, StepGraphon):
            return NotImplemented
        return self.range == other.range and np.array_equal(self.values, other.values)

    __hash__ = None


class GraphonSignal:
    """Finite-energy function on [0, 1]."""

    def __call__(self, u):
        raise NotImplementedError

    def eval(self, u):
        _check_unit(u)
        out = self(u)
        return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class AnalyticSignal(GraphonSignal):
    """Named signal ``X(u)`` with a declared bound on its L2 norm."""

    name: str
    func: Callable = field(repr=False, compare=False)
    params: tuple = ()
    l2_bound: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.l2_bound) or self.l2_bound < 0:
            raise GraphonError("analytic signals must declare a finite L2 bound")

    def __call__(self, u):
        return self.func(np.asarray(u, dtype=float))

    @classmethod
    def constant(cls, c: float) -> "AnalyticSignal":
        c = float(c)
        return cls("constant", lambda u: np.full(np.shape(u), c), (c,), abs(c))

    @classmethod
    def identity(cls) -> "AnalyticSignal":
        return cls("identity", lambda u: u * 1.0, (), 1 / np.sqrt(3))

    @classmethod
    def gaussian(cls, sigma: float) -> "AnalyticSignal":
        """``exp(-u^2 / (2 sigma^2))``, peaked at u = 0."""
        sigma = float(sigma)
        if not sigma > 0:
            raise GraphonError("sigma must be positive")
        return cls("gaussian", lambda u: np.exp(-(u * u) / (2 * sigma * sigma)), (sigma,), 1.0)

    @classmethod
    def from_function(cls, func, name="custom", l2_bound=np.inf) -> "AnalyticSignal":
        return cls(name, func, (), l2_bound)


@dataclass(frozen=True, eq=False)
class StepSignal(GraphonSignal):
    values: np.ndarray

    def __post_init__(self):
        x = np.array(self.values, dtype=float, copy=True)
        if x.ndim != 1 or x.size < 1:
            raise GraphonError("step signal values must be a non-empty vector")
        if not np.all(np.isfinite(x)):
            raise GraphonError("step signal values must be finite")
        x.setflags(write=False)
        object.__setattr__(self, "values", x)

    @property
    def N(self) -> int:
        return self.values.shape[0]

    def __call__(self, u):
        return self.values[block_index(u, self.N)]

    def l2_norm(self) -> float:
        return float(np.sqrt(np.mean(self.values ** 2)))

    def __eq__(self, other):
        if not isinstance(other, StepSignal):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    __hash__ = None


def step_graphon_from_matrix(values, range=(0.0, 1.0)) -> StepGraphon:
    return StepGraphon(values, tuple(range))


def induce_graphon(g: Graph) -> StepGraphon:
    """Step graphon whose blocks are the entries of the shift operator."""
    w = g.weights
    lo, hi = float(w.min()), float(w.max())
    rng = (0.0, 1.0) if lo >= 0 and hi <= 1 else (min(lo, -1.0), max(hi, 1.0))
    if rng[0] < -1 or rng[1] > 1:
        raise GraphonError("graph weights outside [-1, 1] cannot induce a graphon")
    return StepGraphon(w, rng)


def induce_signal(x) -> StepSignal:
    return StepSignal(signal_values(x))


def discretize(w: Graphon, N: int) -> StepGraphon:
    """Midpoint discretization ``values[j, k] = W(m_j, m_k)``.

    Only the upper triangle is evaluated; the lower is mirrored, so the
    output is exactly symmetric.
    """
    if int(N) != N or N < 1:
        raise GraphonError("resolution N must be a positive integer")
    N = int(N)
    if isinstance(w, StepGraphon) and w.N == N:
        return w
    m = midpoints(N)
    ju, ku = np.triu_indices(N)
    vals = np.empty((N, N))
    upper = np.asarray(w(m[ju], m[ku]), dtype=float)
    vals[ju, ku] = upper
    vals[ku, ju] = upper
    return StepGraphon(vals, w.range)


def discretize_signal(x: GraphonSignal, N: int) -> StepSignal:
    if int(N) != N or N < 1:
        raise GraphonError("resolution N must be a positive integer")
    N = int(N)
    if isinstance(x, StepSignal) and x.N == N:
        return x
    return StepSignal(np.asarray(x(midpoints(N)), dtype=float) * np.ones(N))
