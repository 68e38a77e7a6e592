"""Homomorphism densities, cycle densities and cut norms."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .graphon import Graphon, StepGraphon
from .sampling import UniformStream, sample_w_random_graph
from .spectral import SignedSpectrum, eigendecompose_symmetric, step_spectrum

ENUMERATION_BUDGET = 10**8
MAX_MOTIF_NODES = 6
MAX_CUT_BLOCKS = 24


class BudgetError(ValueError):
    pass


@dataclass(frozen=True)
class Motif:
    """Reference graph F on ``n`` nodes with undirected edges.

    Motifs are simple, except that ``multigraph=True`` admits parallel
    edges (needed for the 2-cycle, whose density is ``int W^2``).
    """

    n: int
    edges: tuple
    name: str = ""
    multigraph: bool = False

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("motif needs at least one node")
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        keys = [tuple(sorted(e)) for e in edges]
        for a, b in edges:
            if a == b:
                raise ValueError(f"motif has a loop at node {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError(f"motif edge ({a}, {b}) out of range")
        if not self.multigraph and len(set(keys)) != len(keys):
            raise ValueError("motif has duplicate edges")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def cycle(cls, k: int) -> "Motif":
        if k < 2:
            raise ValueError("cycles need k >= 2")
        return cls(k, tuple((i, (i + 1) % k) for i in range(k)), f"C{k}", multigraph=(k == 2))

    @classmethod
    def named(cls, name: str) -> "Motif":
        key = name.lower()
        if key == "node":
            return cls(1, (), "node")
        if key == "edge":
            return cls(2, ((0, 1),), "edge")
        if key == "triangle":
            return cls(3, ((0, 1), (1, 2), (2, 0)), "triangle")
        if key.startswith("c") and key[1:].isdigit():
            return cls.cycle(int(key[1:]))
        if key.startswith("path") and key[4:].isdigit():
            k = int(key[4:])
            return cls(k, tuple((i, i + 1) for i in range(k - 1)), f"path{k}")
        raise ValueError(f"unknown motif {name!r}")

    @property
    def cycle_length(self) -> int | None:
        """k if this motif is (isomorphic to) the cycle C_k, else None."""
        k = self.n
        if len(self.edges) != k or k < 2:
            return None
        adj = {i: [] for i in range(k)}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        if any(len(v) != 2 for v in adj.values()):
            return None
        seen, prev, cur = {0}, None, 0
        for _ in range(k - 1):
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt
            seen.add(cur)
        return k if len(seen) == k else None


def hom_count(f: Motif, g: Graph):
    """Weighted homomorphism count ``sum_beta prod_{(i,j) in E'} A(beta(i), beta(j))``.

    Enumerates all ``n ** n'`` maps (chunked on the image of node 0).
    Integer graphs are counted in int64 and return an ``int``.
    """
    n, k = g.n, f.n
    if k > MAX_MOTIF_NODES or n ** k > ENUMERATION_BUDGET:
        raise BudgetError(
            f"enumerating {n}^{k} maps exceeds the budget of {ENUMERATION_BUDGET}; "
            "use cycle_density_graph for cycles"
        )
    A = g.weights
    integral = bool(np.all(A == np.round(A)))
    if integral:
        A = A.astype(np.int64)
    if not f.edges:
        return n ** k if integral else float(n ** k)
    total = 0
    for b0 in range(n):
        # axes 0..k-2 hold beta(1..k-1); node 0 is fixed to b0
        prod = np.ones((n,) * (k - 1), dtype=A.dtype) if k > 1 else np.ones((), dtype=A.dtype)
        for a, b in f.edges:
            prod = prod * _edge_factor(A, a, b, b0, k)
        total += prod.sum()
    return int(total) if integral else float(total)


def _edge_factor(A, a, b, b0, k):
    shape = [1] * (k - 1)
    if a == 0 and b == 0:
        return A[b0, b0]
    if a == 0 or b == 0:
        other = b if a == 0 else a
        shape[other - 1] = A.shape[0]
        return A[b0].reshape(shape)
    shape[a - 1] = shape[b - 1] = A.shape[0]
    if a < b:
        return A.reshape(shape)
    return A.T.reshape(shape)


def hom_density_graph(f: Motif, g: Graph) -> float:
    return hom_count(f, g) / g.n ** f.n


def cycle_trace(k: int, g: Graph):
    """``trace(S^k)``, in exact integer arithmetic for integer graphs."""
    if k < 2:
        raise ValueError("k must be >= 2")
    A = g.weights
    if np.all(A == np.round(A)):
        P = np.linalg.matrix_power(A.astype(np.int64), k)
        return int(np.trace(P))
    return float(np.trace(np.linalg.matrix_power(A, k)))


def cycle_density_graph(k: int, g: Graph) -> float:
    """``t(C_k, G) = sum_j lambda_j^k / n^k`` from the eigenvalues of S."""
    if k < 2:
        raise ValueError("k must be >= 2")
    lam, _ = eigendecompose_symmetric(g.weights)
    return float(np.sum((lam / g.n) ** k))


def cycle_density_graphon(k: int, s: SignedSpectrum) -> float:
    """``t(C_k, W) = sum_j sigma_j^k`` over the available indices."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return float(np.sum(s.eigenvalues ** k))


def hom_density_graphon_mc(f: Motif, w: Graphon, samples: int, seed: int, stream: int = 0):
    """Monte-Carlo estimate of ``t(F, W)``; returns ``(estimate, stderr)``."""
    if samples < 100:
        raise ValueError("use at least 100 samples")
    if not w.is_probability:
        warnings.warn("homomorphism density of a signed kernel: density semantics assume [0, 1]", stacklevel=2)
    rs = UniformStream(seed, stream)
    chunk = 1 << 18
    s1 = s2 = 0.0
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        # row-major: sample r uses draws r*n' .. r*n' + n' - 1
        u = rs.uniform(m * f.n).reshape(m, f.n)
        val = np.ones(m)
        for a, b in f.edges:
            val = val * np.asarray(w(u[:, a], u[:, b]), dtype=float)
        s1 += val.sum()
        s2 += (val * val).sum()
        done += m
    mean = s1 / samples
    var = max(s2 / samples - mean * mean, 0.0) * samples / (samples - 1)
    return float(mean), float(np.sqrt(var / samples))


@dataclass(frozen=True)
class CutNormResult:
    value: float
    S: tuple
    T: tuple


def cut_norm_step(w: StepGraphon) -> CutNormResult:
    """Exact cut norm of a step graphon.

    The supremum over measurable sets is bilinear in the block-membership
    fractions, so it is attained on unions of blocks. For every row subset
    S the best column set takes all columns with positive (or all with
    negative) column sums.
    """
    N = w.N
    if N > MAX_CUT_BLOCKS:
        raise BudgetError(f"exact cut norm enumerates 2^N row sets; N={N} exceeds {MAX_CUT_BLOCKS}")
    V = w.values
    best, best_S, best_T = -1.0, 0, None
    chunk_bits = min(N, 14)
    low = ((np.arange(1 << chunk_bits)[:, None] >> np.arange(chunk_bits)) & 1).astype(float)
    for hi in range(1 << (N - chunk_bits)):
        hi_bits = ((hi >> np.arange(N - chunk_bits)) & 1).astype(float)
        base = hi_bits @ V[chunk_bits:] if N > chunk_bits else np.zeros(N)
        col = low @ V[:chunk_bits] + base
        pos = np.where(col > 0, col, 0).sum(axis=1)
        neg = -np.where(col < 0, col, 0).sum(axis=1)
        score = np.maximum(pos, neg)
        r = int(np.argmax(score))
        if score[r] > best:
            best = float(score[r])
            best_S = (hi << chunk_bits) | r
            best_T = col[r] > 0 if pos[r] >= neg[r] else col[r] < 0
    S = tuple(int(i) for i in range(N) if best_S >> i & 1)
    T = tuple(int(k) for k in np.flatnonzero(best_T))
    return CutNormResult(best / N**2, S, T)


def l2_operator_norm(s: SignedSpectrum) -> float:
    return float(np.max(np.abs(s.eigenvalues))) if len(s) else 0.0


@dataclass(frozen=True)
class SandwichReport:
    cut: float
    opnorm: float
    lower_holds: bool
    upper_holds: bool

    @property
    def holds(self) -> bool:
        return self.lower_holds and self.upper_holds


def check_norm_sandwich(w: StepGraphon, slack: float = 1e-9) -> SandwichReport:
    """Check ``||W||_cut <= ||T_W|| <= sqrt(8 ||W||_cut)``."""
    cut = cut_norm_step(w).value
    op = l2_operator_norm(step_spectrum(w))
    return SandwichReport(cut, op, cut <= op + slack, op <= np.sqrt(8 * cut) + slack)


def graphon_density(f: Motif, w: Graphon, samples: int = 10**6, seed: int = 0, resolution: int = 1000):
    """``t(F, W)``: spectral sum for cycles, Monte Carlo otherwise.

    Returns ``(value, stderr)``; stderr is 0 for the spectral route.
    """
    k = f.cycle_length
    if k is not None:
        from .graphon import discretize

        return cycle_density_graphon(k, step_spectrum(discretize(w, resolution))), 0.0
    if not f.edges:
        return 1.0, 0.0
    return hom_density_graphon_mc(f, w, samples, seed)


def graph_density(f: Motif, g: Graph) -> float:
    k = f.cycle_length
    if k is not None:
        return cycle_density_graph(k, g)
    return hom_density_graph(f, g)


def homomorphism_convergence_trace(w: Graphon, motifs, n_grid, trials: int, seed: int,
                                   samples: int = 10**6, resolution: int = 1000):
    """Mean ``|t(F, G_n) - t(F, W)|`` over sampled W-random graphs.

    Returns rows ``(n, motif name, t(F, W), mean abs error, stderr of that mean)``.
    Graph ``t`` of trial ``i`` at grid position ``p`` uses stream ``p * trials + i``.
    """
    refs = [graphon_density(f, w, samples, seed, resolution)[0] for f in motifs]
    rows = []
    for p, n in enumerate(n_grid):
        errs = np.zeros((len(motifs), trials))
        for i in range(trials):
            g, _ = sample_w_random_graph(w, n, seed, p * trials + i)
            for m, f in enumerate(motifs):
                errs[m, i] = abs(graph_density(f, g) - refs[m])
        for m, f in enumerate(motifs):
            se = float(errs[m].std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
            rows.append((int(n), f.name or f"motif{m}", refs[m], float(errs[m].mean()), se))
    return rows
