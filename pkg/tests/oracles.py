"""Independent reference implementations used only by the tests."""

import itertools
import math

import numpy as np


def jacobi_eigh(a, tol=1e-14, max_sweeps=64):
    """Cyclic Jacobi eigenvalue algorithm; returns ascending eigenvalues and vectors."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.triu(a, 1) ** 2))
        if off <= tol * max(1.0, np.linalg.norm(a)):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * a[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q], rot[q, p] = s, -s
                a = rot.T @ a @ rot
                v = v @ rot
    else:
        raise RuntimeError("Jacobi did not converge")
    w = np.diag(a)
    order = np.argsort(w)
    return w[order], v[:, order]


def hom_count_bruteforce(n_prime, edges, A):
    """Literal enumeration of all n**n' maps."""
    n = A.shape[0]
    total = 0
    for beta in itertools.product(range(n), repeat=n_prime):
        p = 1
        for i, j in edges:
            p *= A[beta[i], beta[j]]
        total += p
    return total


def cut_norm_bruteforce(values):
    """max over all pairs of block subsets (S, T) of |sum values| / N^2."""
    N = values.shape[0]
    best = 0.0
    subsets = [np.array([(m >> i) & 1 for i in range(N)], dtype=float) for m in range(1 << N)]
    for s in subsets:
        for t in subsets:
            best = max(best, abs(s @ values @ t))
    return best / N**2


def pearson_on_overlap(a: dict, b: dict):
    """Textbook Pearson correlation over co-rated keys; 0 when undefined."""
    common = sorted(set(a) & set(b))
    if len(common) < 2:
        return 0.0
    x = np.array([a[k] for k in common], dtype=float)
    y = np.array([b[k] for k in common], dtype=float)
    x, y = x - x.mean(), y - y.mean()
    den = math.sqrt((x @ x) * (y @ y))
    return 0.0 if den == 0 else float(x @ y / den)


def splitmix64_sequence(state, count):
    """Reference SplitMix64 generator (Steele, Lea & Flood)."""
    mask = (1 << 64) - 1
    out = []
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & mask
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        out.append(z ^ (z >> 31))
    return out


def random_graph_matrix(rng, n, p=0.5, weighted=False):
    A = (rng.random((n, n)) < p).astype(float)
    if weighted:
        A *= rng.uniform(-1, 1, (n, n))
    A = np.triu(A, 1)
    return A + A.T
