"""Spectral decompositions and Fourier transforms on graphs and graphons.

Eigenpairs carry signed indices j in Z \\ {0}: strictly positive eigenvalues
in descending order get j = 1, 2, ...; numerically zero eigenvalues follow
them on the positive side; negative eigenvalues are indexed from the bottom,
so j = -1 is the most negative. Spectra are stored in the chain order

    sigma_1 >= sigma_2 >= ... >= 0 >= ... >= sigma_{-2} >= sigma_{-1}.

Step-graphon transforms use the exact correspondence between an n x n
matrix and the block-constant kernel it induces: operator eigenvalues are
``eig(values) / N``, eigenfunctions are eigenvectors scaled by sqrt(N) on
each block, and coefficients are ``v_j . x / sqrt(N)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphSignal, signal_values
from .graphon import (
    AnalyticKernel,
    Graphon,
    GraphonSignal,
    StepGraphon,
    StepSignal,
    discretize,
    discretize_signal,
)


class SpectralError(ValueError):
    pass


class EigenConvergenceError(ArithmeticError):
    pass


SYMMETRY_RTOL = 1e-12
# components within this relative distance of the largest magnitude count as tied
SIGN_TIE_RTOL = 1e-10


def _readonly(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SignedSpectrum:
    """Eigenpairs keyed by signed index, stored in chain order.

    ``vectors[:, p]`` is the eigenvector for ``indices[p]``. For
    ``kind == "graph"`` these are unit vectors in R^n; for
    ``kind == "graphon"`` they are block values of L2-normalized step
    eigenfunctions (unit vectors times sqrt(N)).
    """

    indices: np.ndarray
    eigenvalues: np.ndarray
    vectors: np.ndarray
    kind: str = "graph"

    def __post_init__(self):
        for name in ("indices", "eigenvalues", "vectors"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))
        object.__setattr__(self, "_pos", {int(j): p for p, j in enumerate(self.indices)})

    @property
    def size(self) -> int:
        """Dimension of the ambient space (n nodes or N blocks)."""
        return self.vectors.shape[0]

    def __len__(self):
        return self.indices.size

    def __contains__(self, j):
        return int(j) in self._pos

    def position(self, j: int) -> int:
        if j == 0:
            raise KeyError("index 0 is not a valid signed index")
        return self._pos[int(j)]

    def sigma(self, j: int) -> float:
        """Eigenvalue at index j; 0 for indices outside the spectrum."""
        if j == 0:
            raise KeyError("index 0 is not a valid signed index")
        p = self._pos.get(int(j))
        return 0.0 if p is None else float(self.eigenvalues[p])

    def phi(self, j: int) -> np.ndarray:
        return self.vectors[:, self.position(j)]

    def unit_vectors(self) -> np.ndarray:
        """Eigenvectors as orthonormal columns of R^size."""
        if self.kind == "graphon":
            return self.vectors / np.sqrt(self.size)
        return self.vectors

    def __getitem__(self, j):
        p = self.position(j)
        return float(self.eigenvalues[p]), self.vectors[:, p]


@dataclass(frozen=True, eq=False)
class FourierCoefficients:
    """Transform coefficients keyed by signed index.

    ``sigma`` repeats the eigenvalue of each index so coefficient tables are
    self-describing. ``origin`` is "GFT" or "WFT"; ``size`` the n or N of
    the source.
    """

    indices: np.ndarray
    sigma: np.ndarray
    values: np.ndarray
    origin: str = "GFT"
    size: int = 0

    def __post_init__(self):
        for name in ("indices", "sigma", "values"):
            object.__setattr__(self, name, _readonly(np.asarray(getattr(self, name))))
        if not (self.indices.shape == self.sigma.shape == self.values.shape):
            raise SpectralError("indices, sigma and values must have equal length")
        if not np.all(np.isfinite(self.values)):
            raise SpectralError("Fourier coefficients must be finite")
        object.__setattr__(self, "_pos", {int(j): p for p, j in enumerate(self.indices)})

    def __len__(self):
        return self.indices.size

    def __getitem__(self, j) -> float:
        if j == 0:
            raise KeyError("index 0 is not a valid signed index")
        p = self._pos.get(int(j))
        return 0.0 if p is None else float(self.values[p])

    def __contains__(self, j):
        return int(j) in self._pos

    def as_dict(self) -> dict[int, float]:
        return {int(j): float(c) for j, c in zip(self.indices, self.values)}

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def with_values(self, values) -> "FourierCoefficients":
        return FourierCoefficients(self.indices, self.sigma, np.asarray(values, dtype=float), self.origin, self.size)

    def rows(self) -> list[tuple[int, float, float]]:
        """``(j, sigma_j, coeff_j)`` sorted by descending |sigma| then j."""
        order = sorted(range(len(self)), key=lambda p: (-abs(float(self.sigma[p])), int(self.indices[p])))
        return [(int(self.indices[p]), float(self.sigma[p]), float(self.values[p])) for p in order]


def _check_symmetric(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise SpectralError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise SpectralError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    if m.size and np.max(np.abs(m - m.T)) > SYMMETRY_RTOL * scale:
        raise SpectralError("matrix is not symmetric")
    return m


def canonical_sign(vectors: np.ndarray) -> np.ndarray:
    """Flip columns so the largest-magnitude component is positive.

    Near-ties (within ``SIGN_TIE_RTOL``) go to the lowest index.
    """
    v = np.array(vectors, dtype=float, copy=True)
    if v.size == 0:
        return v
    a = np.abs(v)
    lead = np.argmax(a >= a.max(axis=0) * (1 - SIGN_TIE_RTOL), axis=0)
    signs = np.where(v[lead, np.arange(v.shape[1])] < 0, -1.0, 1.0)
    return v * signs


def _mgs(block: np.ndarray) -> np.ndarray:
    q = np.array(block, copy=True)
    for i in range(q.shape[1]):
        for k in range(i):
            q[:, i] -= (q[:, k] @ q[:, i]) * q[:, k]
        q[:, i] /= np.linalg.norm(q[:, i])
    return q


def eigendecompose_symmetric(m) -> tuple[np.ndarray, np.ndarray]:
    """All eigenpairs of a real symmetric matrix.

    Returns ``(w, V)`` with eigenvalues ascending and orthonormal,
    sign-normalized eigenvectors as columns. Eigenvectors of a repeated
    eigenvalue are re-orthonormalized by modified Gram-Schmidt in solver
    order.
    """
    m = _check_symmetric(m)
    n = m.shape[0]
    try:
        w, V = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(f"symmetric eigensolver did not converge on a {n}x{n} matrix: {exc}") from exc
    if n > 1:
        tol = n * np.finfo(float).eps * max(1.0, float(np.max(np.abs(w))))
        start = 0
        for i in range(1, n + 1):
            if i == n or w[i] - w[i - 1] > tol:
                if i - start > 1:
                    V[:, start:i] = _mgs(V[:, start:i])
                start = i
    return w, canonical_sign(V)


def default_zero_tol(eigenvalues, n: int | None = None) -> float:
    ev = np.asarray(eigenvalues, dtype=float)
    if ev.size == 0:
        return 0.0
    n = ev.size if n is None else n
    return n * np.finfo(float).eps * float(np.max(np.abs(ev)))


def signed_order(eigenvalues, zero_tol: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Signed indices for ``eigenvalues`` and the permutation into chain order.

    Returns ``(indices, perm)``: ``eigenvalues[perm]`` is in chain order and
    ``indices[p]`` is the signed index of ``eigenvalues[perm[p]]``.
    Values with ``|x| <= zero_tol`` count as zero.
    """
    ev = np.asarray(eigenvalues, dtype=float)
    if zero_tol is None:
        zero_tol = default_zero_tol(ev)
    pos = np.flatnonzero(ev > zero_tol)
    zer = np.flatnonzero(np.abs(ev) <= zero_tol)
    neg = np.flatnonzero(ev < -zero_tol)
    pos = pos[np.argsort(-ev[pos], kind="stable")]
    # j = -1 is the most negative; ties keep original order
    neg = neg[np.argsort(ev[neg], kind="stable")]
    n_pos = pos.size + zer.size
    perm = np.concatenate([pos, zer, neg[::-1]]).astype(np.int64)
    indices = np.concatenate([np.arange(1, n_pos + 1), -np.arange(neg.size, 0, -1)]).astype(np.int64)
    return indices, perm


def signed_index(eigenvalues, vectors=None, kind: str = "graph", zero_tol: float | None = None) -> SignedSpectrum:
    ev = np.asarray(eigenvalues, dtype=float)
    if vectors is None:
        vectors = np.zeros((ev.size, ev.size))
    vectors = np.asarray(vectors, dtype=float)
    indices, perm = signed_order(ev, zero_tol)
    return SignedSpectrum(indices, ev[perm], vectors[:, perm], kind)


def graph_spectrum(g: Graph) -> SignedSpectrum:
    w, V = eigendecompose_symmetric(g.weights)
    return signed_index(w, V, "graph")


def gft(g: Graph, x, spectrum: SignedSpectrum | None = None) -> FourierCoefficients:
    """Graph Fourier transform: ``coeffs[j] = <phi_j, x>``."""
    s = graph_spectrum(g) if spectrum is None else spectrum
    xv = signal_values(x, g.n)
    if s.size != g.n:
        raise SpectralError("spectrum does not belong to this graph")
    return FourierCoefficients(s.indices, s.eigenvalues, s.vectors.T @ xv, "GFT", g.n)


def igft(g: Graph, c: FourierCoefficients, spectrum: SignedSpectrum | None = None) -> GraphSignal:
    """Inverse graph Fourier transform ``x = sum_j coeffs[j] phi_j``."""
    if len(c) != g.n:
        raise SpectralError(f"expected {g.n} coefficients, got {len(c)}")
    s = graph_spectrum(g) if spectrum is None else spectrum
    cols = [s.position(int(j)) for j in c.indices]
    return GraphSignal(s.vectors[:, cols] @ c.values)


def step_spectrum(w: StepGraphon) -> SignedSpectrum:
    """Spectrum of the integral operator of a step graphon (exact)."""
    lam, V = eigendecompose_symmetric(w.values)
    indices, perm = signed_order(lam)
    N = w.N
    return SignedSpectrum(indices, lam[perm] / N, V[:, perm] * np.sqrt(N), "graphon")


def wft_step(w: StepGraphon, x: StepSignal, spectrum: SignedSpectrum | None = None):
    """Graphon Fourier transform of a step graphon signal.

    Indices outside the returned spectrum have eigenvalue and coefficient 0.
    """
    if w.N != x.N:
        raise SpectralError(f"graphon has {w.N} blocks but signal has {x.N}")
    s = step_spectrum(w) if spectrum is None else spectrum
    coeffs = (s.vectors.T @ x.values) / x.N
    return s, FourierCoefficients(s.indices, s.eigenvalues, coeffs, "WFT", w.N)


def wft_numeric(w: Graphon, x: GraphonSignal, N: int):
    """WFT of an analytic graphon signal on an N-block midpoint discretization.

    The kernel approximation error is O(1/N) for Lipschitz kernels. Only the
    N indices of the discretization are reported.
    """
    return wft_step(discretize(w, N), discretize_signal(x, N))


def wft(w: Graphon, x: GraphonSignal, N: int | None = None):
    if isinstance(w, StepGraphon) and isinstance(x, StepSignal) and (N is None or N == w.N):
        return wft_step(w, x)
    if N is None:
        raise SpectralError("a resolution N is required for analytic inputs")
    return wft_numeric(w, x, N)


def iwft(s: SignedSpectrum, c: FourierCoefficients) -> StepSignal:
    """Inverse graphon Fourier transform ``X = sum_j coeffs[j] phi_j``."""
    missing = [int(j) for j in c.indices if int(j) not in s]
    if missing:
        raise SpectralError(f"coefficient indices not in spectrum: {missing[:5]}")
    cols = [s.position(int(j)) for j in c.indices]
    phi = s.vectors[:, cols] if s.kind == "graphon" else s.vectors[:, cols] * np.sqrt(s.size)
    return StepSignal(phi @ c.values)


def _check_cutoff(cutoff):
    if not 0 < cutoff < 1:
        raise SpectralError(f"cutoff must lie in (0, 1), got {cutoff}")


def _sigmas(c: FourierCoefficients, s: SignedSpectrum) -> np.ndarray:
    return np.array([s.sigma(int(j)) for j in c.indices])


def bandlimit(c: FourierCoefficients, s: SignedSpectrum, cutoff: float) -> FourierCoefficients:
    """Zero every coefficient whose eigenvalue has ``|sigma| < cutoff``."""
    _check_cutoff(cutoff)
    keep = np.abs(_sigmas(c, s)) >= cutoff
    return c.with_values(np.where(keep, c.values, 0.0))


def is_bandlimited(c: FourierCoefficients, s: SignedSpectrum, cutoff: float, atol: float = 1e-12) -> bool:
    _check_cutoff(cutoff)
    low = np.abs(_sigmas(c, s)) < cutoff
    return bool(np.all(np.abs(c.values[low]) <= atol))


def graphon_shift(w: Graphon, x: GraphonSignal, N: int) -> StepSignal:
    """Graphon shift ``(T_W X)(v) = int W(u, v) X(u) du`` on an N-partition.

    Exact when both inputs are step functions with N blocks.
    """
    wd = discretize(w, N)
    xd = discretize_signal(x, N)
    return StepSignal(wd.values @ xd.values / wd.N)


def is_non_derogatory(s: SignedSpectrum, tol: float = 1e-9) -> bool:
    """True iff the nonzero eigenvalues (``|sigma| > tol``) are pairwise ``tol``-separated."""
    if not tol > 0:
        raise SpectralError("tol must be positive")
    ev = np.sort(s.eigenvalues[np.abs(s.eigenvalues) > tol])
    return bool(np.all(np.diff(ev) > tol))


def _refine(block_values: np.ndarray, M: int) -> np.ndarray:
    N = block_values.shape[0]
    return np.repeat(block_values, M // N, axis=0)


def spectral_projection_distance(a: SignedSpectrum, b: SignedSpectrum, indices) -> float:
    """Operator-norm distance between projections onto ``span{phi_j : j in indices}``.

    Both spectra are read as step eigenfunctions on uniform partitions; the
    coarser one is refined by block replication, so block counts must divide
    one another.
    """
    indices = [int(j) for j in indices]
    Na, Nb = a.size, b.size
    M = max(Na, Nb)
    if M % Na or M % Nb:
        raise SpectralError(f"incommensurable partitions: {Na} and {Nb} blocks")

    def basis(s):
        cols = [s.position(j) for j in indices if j in s]
        # unit vectors of R^N become unit vectors of R^M after replication / sqrt(M / N)
        return _refine(s.unit_vectors()[:, cols], M) / np.sqrt(M // s.size)

    Qa, Qb = basis(a), basis(b)
    if Qa.shape[1] == 0 and Qb.shape[1] == 0:
        return 0.0
    B, _ = np.linalg.qr(np.hstack([Qa, Qb]))
    Pa = (B.T @ Qa) @ (Qa.T @ B)
    Pb = (B.T @ Qb) @ (Qb.T @ B)
    return float(np.max(np.abs(np.linalg.eigvalsh(Pa - Pb))))
