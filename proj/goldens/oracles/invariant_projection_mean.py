#!/usr/bin/env python3
"""Invariance forces E[P] = (k/N) I for the rank-k invariant ensemble, so the
probe observable (1/N) Tr(P D) with D = diag((i+1)/N) has mean
k/N * mean(D) = k (N+1) / (2 N^2). Frozen for (N,k) = (32,8): 0.12890625.
Also pins E[sum of angle eigenvalues] = k l / N for the pair ensemble
(E[Q] = (l/N) I under the trace against the rank-k cut)."""

import numpy as np

N, K = 32, 8
expected = K * (N + 1) / (2.0 * N * N)
print("probe mean:", expected)

rng = np.random.default_rng(7)
acc = 0.0
samples = 2000
d = (np.arange(N) + 1) / N
for _ in range(samples):
    z = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    q, r = np.linalg.qr(z)
    u = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
    p = u[:, :K] @ u[:, :K].conj().T
    acc += (np.real(np.diagonal(p)) * d).sum() / N
mc = acc / samples
print("monte carlo:", mc)
assert abs(mc - expected) < 0.003
print("gibbs-side identity: E[sum x_i] = k l / N =", 16 * 16 / 32.0, "for N=32, k=l=16")
print("invariant projection oracle: OK")
