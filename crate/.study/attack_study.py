#!/usr/bin/env python3
"""Attack-case leakage study: which meters co-flag under a meter-1 bias,
and what sigma_Y definition / bias shape keeps the flag set == {1}."""
import numpy as np
from fixture_study import build_H, XTRUE, estimate

H = build_H()
n = H.shape[0]
sigma = 0.05
w = np.full(n, 1.0 / sigma**2)
ztrue = H @ XTRUE

# residual sensitivity S = I - H (H^H W H)^-1 H^H W  (complex)
A = H.conj().T @ (w[:, None] * H)
P = H @ np.linalg.solve(A, H.conj().T * w[None, :])
S = np.eye(n) - P

u1 = ztrue[0] / abs(ztrue[0])
b = np.zeros(n, complex); b[0] = 20 * sigma * u1
r_det = S @ b
print("deterministic |r|/sigma per meter under +20s bias at meter 1:")
print(np.round(np.abs(r_det) / sigma, 3))
print("S diagonal (|.|):", np.round(np.abs(np.diag(S)), 4))

# normalized residual variant: sigma_Y_i = |r_i| / (sigma * sqrt(Re S_ii))
dd = np.sqrt(np.maximum(np.real(np.diag(S)), 1e-12))
print("normalized |r|/(sigma sqrt(Sii)):", np.round(np.abs(r_det) / sigma / dd, 3))

# What if the bias target is interpreted per-meter differently: try each meter
for m in range(n):
    u = ztrue[m] / abs(ztrue[m])
    bb = np.zeros(n, complex); bb[m] = 20 * sigma * u
    rd = np.abs(S @ bb) / sigma
    others = sorted(rd[np.arange(n) != m])[-1]
    print(f"bias at meter {m+1}: own {rd[m]:7.2f}  max other {others:7.2f}")
