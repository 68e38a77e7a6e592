"""GFT convergence experiments.

Every trial draws from its own stream ``rng_stream(master_seed, index)``
with an index fixed by its (grid position, trial) pair, so tables are
reproducible and independent of execution order.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from .graph import RatingTable, pearson_matrix, Graph
from .graphon import AnalyticKernel, AnalyticSignal, Graphon, GraphonSignal, discretize, discretize_signal
from .sampling import UniformStream, sample_graph_signal, sample_graphon_signal, sample_w_random_graph
from .spectral import (
    FourierCoefficients,
    gft,
    graph_spectrum,
    is_non_derogatory,
    step_spectrum,
    wft_step,
)

log = logging.getLogger(__name__)

QUANTILE_LEVELS = (0.68, 0.95, 0.997)


class ExperimentError(ValueError):
    pass


def pollution_graphon(beta: float = 3.0) -> AnalyticKernel:
    """Soft geometric kernel ``exp(-beta |u - v|)`` along the cross-wind axis."""
    return AnalyticKernel.soft_geometric(beta)


def pollution_signal(sigma_y: float = 0.3) -> AnalyticSignal:
    """Cross-wind concentration ``exp(-u^2 / (2 sigma_y^2))`` for a source at u = 0."""
    return AnalyticSignal.gaussian(sigma_y)


def quantiles(samples, levels=QUANTILE_LEVELS) -> list[float]:
    """Empirical quantiles, linear interpolation between order statistics."""
    s = np.asarray(samples, dtype=float)
    if s.size == 0:
        raise ExperimentError("quantiles of an empty sample")
    levels = np.asarray(levels, dtype=float)
    if np.any((levels <= 0) | (levels >= 1)):
        raise ExperimentError("quantile levels must lie in (0, 1)")
    return [float(q) for q in np.quantile(np.sort(s), levels, method="linear")]


def _sorted_magnitudes(c) -> np.ndarray:
    v = c.values if isinstance(c, FourierCoefficients) else np.asarray(c, dtype=float)
    return np.sort(np.abs(v))[::-1]


def min_norm_gft_difference(a, b) -> float:
    """Normalized distance between descending-sorted coefficient magnitudes.

    Invariant to any permutation of either list and to sign flips.
    """
    sa, sb = _sorted_magnitudes(a), _sorted_magnitudes(b)
    if sa.size != sb.size:
        raise ExperimentError(f"coefficient counts differ: {sa.size} vs {sb.size}")
    ref = np.linalg.norm(sa)
    if ref == 0:
        raise ExperimentError("reference coefficients have zero norm")
    return float(np.linalg.norm(sa - sb) / ref)


@dataclass(frozen=True)
class PollutionConfig:
    beta: float = 3.0
    sigma_y: float = 0.3
    n_grid: tuple = (50, 100, 200, 400, 800)
    trials: int = 50
    master_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        if not self.beta > 0 or not self.sigma_y > 0:
            raise ExperimentError("beta and sigma_y must be positive")
        if self.trials < 1:
            raise ExperimentError("trials must be >= 1")
        if not self.n_grid or list(self.n_grid) != sorted(self.n_grid) or self.n_grid[0] < 1:
            raise ExperimentError("n_grid must be a nonempty ascending list of sizes")


def pollution_difference(w: Graphon, x: GraphonSignal, n: int, seed: int, stream_a: int, stream_b: int) -> float:
    """Sorted-GFT difference between two independently sampled graph signals."""
    ga, xa, _ = sample_graph_signal(w, x, n, seed, stream_a)
    gb, xb, _ = sample_graph_signal(w, x, n, seed, stream_b)
    return min_norm_gft_difference(gft(ga, xa), gft(gb, xb))


def run_pollution_experiment(cfg: PollutionConfig = PollutionConfig()):
    """Quantile table rows ``(n, q68, q95, q997)`` and the raw differences per n."""
    w, x = pollution_graphon(cfg.beta), pollution_signal(cfg.sigma_y)
    rows, raw = [], {}
    for p, n in enumerate(cfg.n_grid):
        diffs = []
        for t in range(cfg.trials):
            base = 2 * (p * cfg.trials + t)
            diffs.append(pollution_difference(w, x, n, cfg.master_seed, base, base + 1))
        raw[n] = np.sort(diffs)
        rows.append((n, *quantiles(raw[n])))
        log.info("pollution n=%d done", n)
    return rows, raw


def reference_wft(w: Graphon, x: GraphonSignal, resolution: int):
    """WFT of (W, X) on a midpoint discretization, as (spectrum, coefficients)."""
    return wft_step(discretize(w, resolution), discretize_signal(x, resolution))


def sorted_coefficient_error(graph_coeffs: FourierCoefficients, n: int, ref: FourierCoefficients, band) -> float:
    """L2 distance between sorted ``|x_hat_n[j]| / sqrt(n)`` and sorted ``|X_hat[j]|`` for j in ``band``."""
    g = np.sort(np.abs([graph_coeffs[int(j)] for j in band]))[::-1] / np.sqrt(n)
    r = np.sort(np.abs([ref[int(j)] for j in band]))[::-1]
    return float(np.linalg.norm(g - r))


def run_theorem1_check(w: Graphon, x: GraphonSignal, cutoff: float = 0.05, n_grid=(50, 100, 200, 400, 800),
                       trials: int = 20, seed: int = 0, resolution: int | None = None):
    """Empirical GFT -> WFT convergence on sampled graph signals.

    The reference WFT is computed at ``resolution`` (default 4 * max(n_grid))
    and restricted to the band ``|sigma_j| >= cutoff``. Returns rows
    ``(n, median error, mean error)`` and the raw errors per n.
    """
    if not w.is_probability:
        raise ExperimentError("the convergence check samples graphs and needs a [0, 1] kernel")
    if not 0 < cutoff < 1:
        raise ExperimentError("cutoff must lie in (0, 1)")
    n_grid = tuple(int(n) for n in n_grid)
    N_ref = 4 * max(n_grid) if resolution is None else int(resolution)
    if N_ref < 4 * max(n_grid):
        raise ExperimentError("reference resolution must be at least 4 * max(n_grid)")
    spec, ref = reference_wft(w, x, N_ref)
    band_mask = np.abs(spec.eigenvalues) >= cutoff
    band = spec.indices[band_mask]
    inband = spec.eigenvalues[band_mask]
    if not is_non_derogatory(type(spec)(band, inband, spec.vectors[:, band_mask], spec.kind), tol=1e-9):
        warnings.warn("reference graphon looks derogatory inside the band; convergence is not guaranteed", stacklevel=2)
    rows, raw = [], {}
    for p, n in enumerate(n_grid):
        errs = []
        for t in range(trials):
            g, xs, _ = sample_graph_signal(w, x, n, seed, p * trials + t)
            errs.append(sorted_coefficient_error(gft(g, xs), n, ref, band))
        raw[n] = np.asarray(errs)
        rows.append((n, float(np.median(errs)), float(np.mean(errs))))
    return rows, raw


@dataclass(frozen=True)
class TransferConfig:
    movie: int = 0
    n_grid: tuple = (50, 100, 200, 400)
    trials: int = 10
    master_seed: int = 0
    imputation: str = "user-mean"

    def __post_init__(self):
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        if self.trials < 1:
            raise ExperimentError("trials must be >= 1")
        if not self.n_grid:
            raise ExperimentError("n_grid must be nonempty")


def _impute_user_mean(r: RatingTable, item: int) -> np.ndarray:
    R, M = r.dense()
    counts = M.sum(axis=1)
    means = np.divide(R.sum(axis=1), counts, out=np.zeros(r.num_users), where=counts > 0)
    rated = M[:, item] > 0
    return np.where(rated, R[:, item], means)


IMPUTATION = {"user-mean": _impute_user_mean}


def reference_signal(r: RatingTable, item: int, policy: str = "user-mean") -> np.ndarray:
    """Per-user rating for ``item``; missing ratings filled by ``policy``."""
    if not 0 <= item < r.num_items:
        raise ExperimentError(f"item {item} not in the rating table")
    try:
        return IMPUTATION[policy](r, item)
    except KeyError:
        raise ExperimentError(f"unknown imputation policy {policy!r}") from None


def transfer_difference(sub_coeffs: FourierCoefficients, n: int, full: FourierCoefficients, n_total: int) -> float:
    """Relative distance between sorted ``|x_hat_n| / sqrt(n)`` and the top-n (by |sigma|)
    full coefficients, sorted, over ``sqrt(n_total)``."""
    top = np.argsort(-np.abs(full.sigma), kind="stable")[:n]
    ref = np.sort(np.abs(full.values[top]))[::-1] / np.sqrt(n_total)
    sub = np.sort(np.abs(sub_coeffs.values))[::-1] / np.sqrt(n)
    den = np.linalg.norm(ref)
    if den == 0:
        raise ExperimentError("reference coefficients vanish")
    return float(np.linalg.norm(sub - ref) / den)


def run_movielens_experiment(cfg: TransferConfig, r: RatingTable):
    """Rows ``(n, mean relative difference, std)`` of sub-network vs full-network GFTs."""
    if max(cfg.n_grid) > r.num_users:
        raise ExperimentError(f"n={max(cfg.n_grid)} exceeds the {r.num_users} users")
    x = reference_signal(r, cfg.movie, cfg.imputation)
    R, M = r.dense()
    W = pearson_matrix(R, M)
    full = gft(Graph(W), x)
    rows = []
    for p, n in enumerate(cfg.n_grid):
        diffs = []
        for t in range(cfg.trials):
            users = np.sort(UniformStream(cfg.master_seed, p * cfg.trials + t).choice(r.num_users, n))
            g = Graph(W[np.ix_(users, users)])
            diffs.append(transfer_difference(gft(g, x[users]), n, full, r.num_users))
        d = np.asarray(diffs)
        rows.append((n, float(d.mean()), float(d.std(ddof=1)) if d.size > 1 else 0.0))
    return rows
