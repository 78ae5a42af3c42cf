#!/usr/bin/env python3
"""Pre-implementation numeric study.

1. Build the IEEE 13-node phase-A per-unit fixture (buses, branches, meters, H).
2. Evaluate candidate noise/weighting treatments against the target statistics:
   mean(j) ~= 4 +- 0.3, P(j >= 9.49) = 0.05 +- 0.02, sigma_Y <= 3 in >= 90% of trials.
3. Attack case: +20 sigma bias on meter 1 -> j >= T_j and flagged == {1} in >= 95%.
4. Freeze CRC / checksum / chi-square oracle vectors.
"""
import numpy as np

# ---------------------------------------------------------------- feeder data
# IEEE 13-node test feeder, phase A quantities only.
# Paper numbering: 1=650 2=632 3=633 4=634 5=645 6=646 7=671 8=692 9=675
#                  10=684 11=611 12=680 13=652
# Line configs (phase A self impedance, ohm/mile; shunt B, uS/mile):
CONFIGS = {
    601: (0.3465, 1.0179, 6.2998),
    602: (0.7526, 1.1814, 5.6990),
    604: (1.3238, 1.3569, 4.6658),
    606: (0.7982, 0.4463, 96.8897),
    607: (1.3425, 0.5124, 88.9912),
}
FT_PER_MILE = 5280.0
# branch: (from,to,config,length_ft) with 7/8 collapsed (breaker closed)
LINES = [
    (1, 2, 601, 2000.0),
    (2, 3, 602, 500.0),
    (2, 7, 601, 2000.0),
    (7, 12, 601, 1000.0),
    (7, 9, 606, 500.0),   # 692-675 with 7/8 collapsed
    (7, 10, 604, 300.0),
    (10, 13, 607, 800.0),
]
# transformer 633-634 (500 kVA, 4.16kV/0.48kV, R=1.1% X=2%) as ohmic branch on 4.16 kV base
XFM_Z_OHM = complex(0.011, 0.02) * (4.16e3 ** 2 / 500e3)

BASE_KV = 4.16
BASE_MVA = 5.0
ZBASE = BASE_KV ** 2 / BASE_MVA

STATES = [2, 3, 4, 7, 9, 10, 13]          # estimated buses (column order)
VMETERS = [2, 3, 9, 10]                    # voltage meters (rows 1..4)
IMETERS = [(2, 3), (2, 7), (3, 2), (3, 4), (9, 7), (10, 7), (10, 13)]  # rows 5..11
PMU_OF_METER = [2, 3, 9, 10, 2, 2, 3, 3, 9, 10, 10]  # owning PMU per meter row

def branch_pu():
    out = {}
    for f, t, cfg, ln in LINES:
        r, x, b = CONFIGS[cfg]
        miles = ln / FT_PER_MILE
        z = complex(r, x) * miles / ZBASE
        bsh = b * 1e-6 * miles * ZBASE   # pu susceptance (total)
        out[(f, t)] = (1.0 / z, complex(0.0, bsh / 2.0))
    out[(3, 4)] = (1.0 / (XFM_Z_OHM / ZBASE), 0j)
    return out

def build_H():
    br = branch_pu()
    cols = {b: i for i, b in enumerate(STATES)}
    rows = []
    for b in VMETERS:
        r = np.zeros(len(STATES), complex)
        r[cols[b]] = 1.0
        rows.append(r)
    for f, t in IMETERS:
        key = (f, t) if (f, t) in br else (t, f)
        y, ys = br[key]
        r = np.zeros(len(STATES), complex)
        r[cols[f]] += y + ys     # shunt at from-bus end
        r[cols[t]] -= y
        rows.append(r)
    return np.array(rows)

# plausible solved phase-A voltages (pu) for buses 2,3,4,7,9,10,13
XTRUE = np.array([
    1.0210 * np.exp(1j * np.deg2rad(-2.49)),
    1.0180 * np.exp(1j * np.deg2rad(-2.56)),
    0.9940 * np.exp(1j * np.deg2rad(-3.23)),
    0.9900 * np.exp(1j * np.deg2rad(-5.30)),
    0.9835 * np.exp(1j * np.deg2rad(-5.55)),
    0.9881 * np.exp(1j * np.deg2rad(-5.32)),
    0.9825 * np.exp(1j * np.deg2rad(-5.25)),
])

def estimate(H, w, z):
    A = H.conj().T @ (w[:, None] * H)
    b = H.conj().T @ (w * z)
    return np.linalg.solve(A, b)

def study(H, noise_mode, w_sigma, sigma=0.05, trials=20000, seed=7, bias=None):
    rng = np.random.default_rng(seed)
    w = np.full(H.shape[0], 1.0 / w_sigma ** 2)
    ztrue = H @ XTRUE
    js, flags, maxothers = [], [], []
    sy_ok = 0
    for _ in range(trials):
        if noise_mode == "both":
            e = sigma * (rng.standard_normal(len(ztrue)) + 1j * rng.standard_normal(len(ztrue)))
        elif noise_mode == "real":
            e = sigma * rng.standard_normal(len(ztrue)).astype(complex)
        z = ztrue + e
        if bias is not None:
            i, mag = bias
            u = z[i] / abs(z[i])
            z = z.copy()
            z[i] = z[i] + mag * u
        x = estimate(H, w, z)
        r = z - H @ x
        j = float(np.real(r.conj() @ (w * r)))
        sy = np.abs(r) / w_sigma
        js.append(j)
        flagged = set(np.nonzero(sy > 3.0)[0])
        flags.append((j >= 9.49, flagged))
        if np.all(sy <= 3.0):
            sy_ok += 1
        maxothers.append(max([sy[k] for k in range(len(sy)) if (bias is None or k != bias[0])]))
    js = np.array(js)
    out = {
        "mean_j": js.mean(),
        "p_exceed": float(np.mean(js >= 9.49)),
        "sy_all_ok_rate": sy_ok / trials,
    }
    if bias is not None:
        det = sum(1 for d, f in flags if d and f == {bias[0]}) / trials
        out["detect_and_flag_exactly"] = det
        out["detect_rate"] = float(np.mean([d for d, _ in flags]))
        out["max_other_sy_p99"] = float(np.percentile(maxothers, 99))
    return out

H = build_H()
print("H shape:", H.shape)
print("rank:", np.linalg.matrix_rank(H))
print("cond(H):", np.linalg.cond(H))
ztrue = H @ XTRUE
print("z_true magnitudes:", np.round(np.abs(ztrue), 4))

# eigen structure of the real-part residual projector
Pc = H @ np.linalg.solve(H.conj().T @ H, H.conj().T)
C = np.real(Pc)
ev = np.linalg.eigvalsh(np.eye(len(ztrue)) - C)
print("eig(I - Re(Pc)):", np.round(ev, 4), "trace:", np.trace(np.eye(len(ztrue)) - C))

print("\n-- null: noise both components, W sigma = sigma (expected chi2(8)) --")
print(study(H, "both", 0.05))
print("\n-- null: noise both components, W sigma = sqrt(2) sigma (expected Gamma(4,1)) --")
print(study(H, "both", 0.05 * np.sqrt(2)))
print("\n-- null: real-only noise, W sigma = sigma (target ~chi2(4)) --")
print(study(H, "real", 0.05))

print("\n-- attack: meter 1 (+20 sigma on magnitude), real-only noise --")
print(study(H, "real", 0.05, bias=(0, 20 * 0.05)))
print("\n-- attack: meter 1, both-component noise, W sqrt2 --")
print(study(H, "both", 0.05 * np.sqrt(2), bias=(0, 20 * 0.05)))

# chi-square oracle values
from math import lgamma, exp
def chi2_ppf(k, p=0.95):
    lo, hi = 0.0, 200.0
    from scipy.stats import chi2
    return chi2.ppf(p, k)
try:
    from scipy.stats import chi2 as c2
    for k in (1, 4, 7, 8):
        print(f"chi2 ppf 0.95 K={k}: {c2.ppf(0.95, k):.6f}")
except ImportError:
    pass
