"""
Graph and graphon Fourier transforms of the same signal
=======================================================

A weighted graph on n nodes induces a step graphon with n blocks. Its
eigenvalues are the graph eigenvalues divided by n, and its Fourier
coefficients are the graph ones divided by sqrt(n).
"""

import numpy as np

from gspx import Graph, gft, graph_spectrum
from gspx.graphon import induce_graphon, induce_signal
from gspx.spectral import wft_step

rng = np.random.default_rng(1)
n = 8
a = np.triu(rng.uniform(-1, 1, (n, n)), 1)
g = Graph(a + a.T)
x = rng.standard_normal(n)

# %%
# Signed indexing: positive eigenvalues get j = 1, 2, ... from the top,
# negative ones j = -1, -2, ... from the bottom.
spec = graph_spectrum(g)
c = gft(g, x, spec)
s, cw = wft_step(induce_graphon(g), induce_signal(x))

print(" j   lambda/n      sigma     gft/sqrt(n)     wft")
for j in spec.indices:
    print(f"{j:2d} {spec.sigma(j) / n:10.6f} {s.sigma(j):10.6f} {c[j] / np.sqrt(n):12.6f} {cw[j]:10.6f}")

# %%
# Parseval: the GFT keeps the signal energy.
print("||x|| =", np.linalg.norm(x), " ||gft|| =", c.norm())
