"""Finite weighted graphs, graph signals and user-similarity graphs."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Symmetric weighted graph stored as a dense weight matrix.

    ``weights[i, j]`` is the edge weight A(i, j); unweighted graphs use 0/1.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = _frozen(self.weights)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 1:
            raise GraphError(f"weights must be a non-empty square matrix, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise GraphError("weights must be finite")
        if not np.array_equal(w, w.T):
            raise GraphError("weights must be exactly symmetric")
        if np.any(np.diag(w) != 0):
            raise GraphError("self-loops are not supported (diagonal must be zero)")
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        """Upper-triangle edge list ``(i, j, w)`` with ``i < j`` and ``w != 0``."""
        iu, ju = np.nonzero(np.triu(self.weights, 1))
        return [(int(i), int(j), float(self.weights[i, j])) for i, j in zip(iu, ju)]

    def is_unweighted(self) -> bool:
        return bool(np.all((self.weights == 0) | (self.weights == 1)))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.weights, other.weights)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class GraphSignal:
    """Real value per node; ``values[i]`` is the signal at node i."""

    values: np.ndarray

    def __post_init__(self):
        x = _frozen(self.values)
        if x.ndim != 1:
            raise GraphError("graph signal must be a 1-d vector")
        if not np.all(np.isfinite(x)):
            raise GraphError("graph signal entries must be finite")
        object.__setattr__(self, "values", x)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __eq__(self, other):
        if not isinstance(other, GraphSignal):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    __hash__ = None


def signal_values(x, n: int | None = None) -> np.ndarray:
    """Values of a GraphSignal or array-like, optionally checked against ``n``."""
    v = np.asarray(x.values if isinstance(x, GraphSignal) else x, dtype=float)
    if v.ndim != 1:
        raise GraphError("signal must be a 1-d vector")
    if n is not None and v.shape[0] != n:
        raise GraphError(f"signal length {v.shape[0]} does not match graph size {n}")
    return v


def new_graph(n: int, edges: Iterable[Sequence] = ()) -> Graph:
    """Build a graph on ``n`` nodes from ``(i, j, w)`` triples (0-based)."""
    if int(n) != n or n < 1:
        raise GraphError(f"node count must be a positive integer, got {n!r}")
    n = int(n)
    w = np.zeros((n, n))
    seen: dict[tuple[int, int], float] = {}
    for e in edges:
        if len(e) == 2:
            i, j, wt = e[0], e[1], 1.0
        else:
            i, j, wt = e
        i, j, wt = int(i), int(j), float(wt)
        if not (0 <= i < n and 0 <= j < n):
            raise GraphError(f"edge ({i}, {j}) out of range for n={n}")
        if i == j:
            raise GraphError(f"self-loop at node {i}")
        if not np.isfinite(wt):
            raise GraphError(f"edge ({i}, {j}) has non-finite weight")
        key = (min(i, j), max(i, j))
        if key in seen and seen[key] != wt:
            raise GraphError(f"duplicate edge {key} with conflicting weights {seen[key]} and {wt}")
        seen[key] = wt
        w[i, j] = w[j, i] = wt
    return Graph(w)


def shift_operator(g: Graph) -> np.ndarray:
    """Graph shift operator S. Adjacency (weight) matrix, read-only."""
    return g.weights


def permute(g: Graph, x, pi: Sequence[int]) -> tuple[Graph, GraphSignal]:
    """Relabel nodes so that node i becomes node ``pi[i]``."""
    pi = np.asarray(pi)
    n = g.n
    if pi.shape != (n,) or not np.array_equal(np.sort(pi), np.arange(n)):
        raise GraphError("pi must be a permutation of 0..n-1")
    xv = signal_values(x, n)
    w = np.empty_like(g.weights)
    w[np.ix_(pi, pi)] = g.weights
    xp = np.empty_like(xv)
    xp[pi] = xv
    return Graph(w), GraphSignal(xp)


@dataclass(frozen=True, eq=False)
class RatingTable:
    """Sparse user-item ratings with 0-based ids."""

    num_users: int
    num_items: int
    users: np.ndarray
    items: np.ndarray
    ratings: np.ndarray
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        users = np.asarray(self.users, dtype=np.int64)
        items = np.asarray(self.items, dtype=np.int64)
        ratings = np.asarray(self.ratings, dtype=float)
        if self.num_users < 1 or self.num_items < 1:
            raise GraphError("rating table needs at least one user and one item")
        if not (users.shape == items.shape == ratings.shape) or users.ndim != 1:
            raise GraphError("users, items and ratings must be equal-length vectors")
        if users.size and (users.min() < 0 or users.max() >= self.num_users):
            raise GraphError("user index out of range")
        if items.size and (items.min() < 0 or items.max() >= self.num_items):
            raise GraphError("item index out of range")
        if np.any((ratings < 1) | (ratings > 5)):
            raise GraphError("ratings must lie in [1, 5]")
        index = {}
        for k, (u, i) in enumerate(zip(users.tolist(), items.tolist())):
            if (u, i) in index:
                raise GraphError(f"duplicate rating for (user {u}, item {i})")
            index[(u, i)] = k
        for name, a in (("users", users), ("items", items), ("ratings", ratings)):
            a.setflags(write=False)
            object.__setattr__(self, name, a)
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_entries(cls, num_users, num_items, entries):
        entries = list(entries)
        if entries:
            u, i, r = zip(*entries)
        else:
            u, i, r = (), (), ()
        return cls(num_users, num_items, np.array(u, dtype=np.int64), np.array(i, dtype=np.int64), np.array(r, dtype=float))

    @property
    def entries(self) -> list[tuple[int, int, float]]:
        return list(zip(self.users.tolist(), self.items.tolist(), self.ratings.tolist()))

    def __len__(self):
        return self.ratings.size

    def rating(self, user: int, item: int):
        k = self._index.get((user, item))
        return None if k is None else float(self.ratings[k])

    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        """``(R, M)``: ratings matrix with zeros where missing, and 0/1 mask."""
        R = np.zeros((self.num_users, self.num_items))
        M = np.zeros((self.num_users, self.num_items))
        R[self.users, self.items] = self.ratings
        M[self.users, self.items] = 1.0
        return R, M

    def __eq__(self, other):
        if not isinstance(other, RatingTable):
            return NotImplemented
        return (self.num_users, self.num_items) == (other.num_users, other.num_items) and sorted(self.entries) == sorted(other.entries)

    __hash__ = None


def pearson_matrix(R: np.ndarray, M: np.ndarray) -> np.ndarray:
    """Pairwise Pearson correlations between rows of ``R`` over co-rated columns.

    Pairs with fewer than two co-rated items, or a constant restricted vector,
    get weight 0. The diagonal is 0 and the result is exactly symmetric.
    """
    R = R * M
    R2 = R * R
    cnt = M @ M.T
    sx = R @ M.T           # sum of row i over items co-rated with j
    sxx = R2 @ M.T
    sxy = R @ R.T
    # n*Sxy - Sx*Sy etc. are exact for integer ratings
    cov = cnt * sxy - sx * sx.T
    vx = cnt * sxx - sx * sx
    vy = vx.T
    denom = vx * vy
    ok = (cnt >= 2) & (vx > 0) & (vy > 0)
    C = np.zeros_like(cov)
    C[ok] = cov[ok] / np.sqrt(denom[ok])
    np.clip(C, -1.0, 1.0, out=C)
    C = np.triu(C, 1)
    return C + C.T


def pearson_similarity_graph(r: RatingTable, users: Sequence[int] | None = None) -> Graph:
    """User-similarity graph with Pearson-correlation edge weights."""
    users = np.arange(r.num_users) if users is None else np.asarray(users, dtype=np.int64)
    if users.size == 0:
        raise GraphError("empty user subset")
    if users.size < 2:
        raise GraphError("need at least two users")
    if np.unique(users).size != users.size:
        raise GraphError("user subset contains duplicates")
    R, M = r.dense()
    W = pearson_matrix(R[users], M[users])
    isolated = np.flatnonzero(~np.any(W != 0, axis=1))
    if isolated.size:
        warnings.warn(f"{isolated.size} user(s) have no usable co-ratings; their edges are 0", stacklevel=2)
    return Graph(W)
