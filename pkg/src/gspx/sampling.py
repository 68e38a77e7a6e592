"""Reproducible W-random graphs and sampled graphon signals.

Randomness comes from PCG64 seeded with a SplitMix64-derived stream seed.
Uniforms are built from raw 64-bit outputs as ``(x >> 11) * 2**-53``, so a
(seed, stream) pair fixes every draw independently of numpy's distribution
code. Draw order is fixed: n labels for i = 0..n-1, then one uniform per
pair (i, j), i < j, in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphSignal
from .graphon import Graphon, GraphonSignal

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SamplingError(ValueError):
    pass


def splitmix64(z: int) -> int:
    """SplitMix64 output finalizer (a bijection on 64-bit integers)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def rng_stream(master_seed: int, trial_index: int) -> int:
    """Seed of stream ``trial_index`` under ``master_seed``.

    This is the ``trial_index``-th SplitMix64 output for state
    ``master_seed``; injective in ``trial_index`` for a fixed master seed.
    """
    if master_seed < 0 or trial_index < 0:
        raise SamplingError("seed and stream must be non-negative")
    return splitmix64((master_seed + (trial_index + 1) * GOLDEN_GAMMA) & MASK64)


class UniformStream:
    """Uniform [0, 1) doubles from PCG64 raw output."""

    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed)
        self.stream = int(stream)
        self._bitgen = np.random.PCG64(rng_stream(self.seed, self.stream))

    def uniform(self, size: int) -> np.ndarray:
        raw = self._bitgen.random_raw(size)
        return (raw >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)

    def choice(self, population: int, k: int) -> np.ndarray:
        """``k`` distinct integers from ``range(population)`` (partial Fisher-Yates)."""
        if not 0 <= k <= population:
            raise SamplingError(f"cannot draw {k} items from {population}")
        idx = np.arange(population)
        r = self.uniform(k)
        for i in range(k):
            j = i + min(int(r[i] * (population - i)), population - i - 1)
            idx[i], idx[j] = idx[j], idx[i]
        return idx[:k].copy()


@dataclass(frozen=True, eq=False)
class SampleLabels:
    u: np.ndarray
    seed: int
    stream: int

    def __post_init__(self):
        u = np.array(self.u, dtype=float, copy=True)
        if u.ndim != 1 or np.any(u < 0) or np.any(u > 1):
            raise SamplingError("labels must be a vector in [0, 1]")
        u.setflags(write=False)
        object.__setattr__(self, "u", u)

    @property
    def n(self) -> int:
        return self.u.shape[0]


def sample_labels(n: int, seed: int, stream: int = 0) -> SampleLabels:
    return SampleLabels(UniformStream(seed, stream).uniform(n), seed, stream)


def sample_w_random_graph(w: Graphon, n: int, seed: int, stream: int = 0, weighted: bool = False):
    """Sample an n-node W-random graph and its latent labels.

    Edge (i, j) is present with probability ``W(u_i, u_j)``. With
    ``weighted=True`` the edge weight is set to ``W(u_i, u_j)`` instead and
    no Bernoulli draws are made.
    """
    if int(n) != n or n < 1:
        raise SamplingError("n must be a positive integer")
    if not w.is_probability:
        raise SamplingError("W-random sampling needs a kernel with values in [0, 1]")
    n = int(n)
    rs = UniformStream(seed, stream)
    u = rs.uniform(n)
    iu, ju = np.triu_indices(n, 1)
    p = np.asarray(w(u[iu], u[ju]), dtype=float) * np.ones(iu.size)
    if weighted:
        e = p
    else:
        e = (rs.uniform(iu.size) < p).astype(float)
    A = np.zeros((n, n))
    A[iu, ju] = e
    A[ju, iu] = e
    return Graph(A), SampleLabels(u, seed, stream)


def sample_graphon_signal(x: GraphonSignal, labels: SampleLabels) -> GraphSignal:
    """Evaluate a graphon signal at the latent labels of a sampled graph."""
    return GraphSignal(np.asarray(x(labels.u), dtype=float) * np.ones(labels.n))


def sample_graph_signal(w: Graphon, x: GraphonSignal, n: int, seed: int, stream: int = 0):
    g, labels = sample_w_random_graph(w, n, seed, stream)
    return g, sample_graphon_signal(x, labels), labels
