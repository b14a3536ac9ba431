#!/usr/bin/env python3
"""Acceptance frequency of the moment window around free targets.

For two independent rank-N/2 invariant projections at N = 48, the word
moments of length <= 2 concentrate at the free values with O(1/N)
fluctuations, so the eps = 0.1 window accepts almost every draw and the
rate estimate (1/N^2) log(acc/n) sits just below 0. Frozen: rate in
[-0.1, 0]."""

import numpy as np

N, K, EPS, SAMPLES = 48, 24, 0.1, 300
rng = np.random.default_rng(11)


def proj():
    z = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    q, r = np.linalg.qr(z)
    u = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
    return u[:, :K] @ u[:, :K].conj().T


targets = {"0": 0.5, "1": 0.5, "00": 0.5, "11": 0.5, "01": 0.25}
acc = 0
for _ in range(SAMPLES):
    p, q = proj(), proj()
    mats = {"0": p, "1": q}
    ok = True
    for word, t in targets.items():
        m = np.eye(N, dtype=complex)
        for c in word:
            m = m @ mats[c]
        ok = ok and abs(np.real(np.trace(m)) / N - t) < EPS
    acc += ok
rate = np.log(acc / SAMPLES) / N**2 if acc else float("-inf")
print(f"accepted {acc}/{SAMPLES}, rate = {rate:.6f}")
assert acc / SAMPLES >= 0.5
assert rate >= -0.1
print("microstate window oracle: OK")
