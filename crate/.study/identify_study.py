#!/usr/bin/env python3
"""Verify iterative largest-residual identification satisfies criterion 5,
and freeze remaining oracle vectors (CRC, checksums, chk bytes)."""
import numpy as np
from fixture_study import build_H, XTRUE, estimate
from scipy.stats import chi2

H = build_H()
n, ns = H.shape
sigma = 0.05
ztrue = H @ XTRUE

def detect_iterative(z, sig):
    active = list(range(n))
    flagged = []
    while True:
        Ha = H[active]
        k = len(active) - ns
        if k < 1:
            break
        w = np.full(len(active), 1.0 / sig**2)
        x = estimate(Ha, w, z[active])
        r = z[active] - Ha @ x
        j = float(np.real(r.conj() @ (w * r)))
        tj = chi2.ppf(0.95, k)
        sy = np.abs(r) / sig
        if j < tj:
            break
        i = int(np.argmax(sy))
        if sy[i] <= 3.0:
            break
        flagged.append(active[i])
        active.pop(i)
    return sorted(flagged)

rng = np.random.default_rng(123)
trials = 4000
ok = 0; det = 0
for _ in range(trials):
    e = sigma * rng.standard_normal(n).astype(complex)
    z = ztrue + e
    u = z[0] / abs(z[0])
    z[0] += 20 * sigma * u
    f = detect_iterative(z, sigma)
    if f == [0]:
        ok += 1
    if f:
        det += 1
print(f"criterion5 with iterative id: flagged==[1] rate {ok/trials:.4f}, any-flag {det/trials:.4f}")

# null: flagged empty rate
ok0 = 0
for _ in range(trials):
    e = sigma * rng.standard_normal(n).astype(complex)
    f = detect_iterative(ztrue + e, sigma)
    if f == []:
        ok0 += 1
print(f"null: flagged==[] rate {ok0/trials:.4f}")

# --------------------------------------------------------- frozen oracles
def crc16_ccitt_false(data: bytes) -> int:
    crc = 0xFFFF
    for byte in data:
        crc ^= byte << 8
        for _ in range(8):
            if crc & 0x8000:
                crc = ((crc << 1) ^ 0x1021) & 0xFFFF
            else:
                crc = (crc << 1) & 0xFFFF
    return crc

print(f'crc("123456789") = 0x{crc16_ccitt_false(b"123456789"):04X}')
cmd = bytes.fromhex("AA410012000100000000000000000002")
chk = crc16_ccitt_false(cmd)
print(f"command frame chk = 0x{chk:04X}  full frame = {cmd.hex(' ')} {chk>>8:02x} {chk&0xff:02x}")

def inet_checksum(b: bytes) -> int:
    if len(b) % 2:
        b = b + b"\x00"
    s = sum(int.from_bytes(b[i:i+2], "big") for i in range(0, len(b), 2))
    while s >> 16:
        s = (s & 0xFFFF) + (s >> 16)
    return (~s) & 0xFFFF

hdr = bytes.fromhex("4500007300004000401100 00 C0A80001C0A800C7".replace(" ", ""))
print(f"ipv4 checksum example = 0x{inet_checksum(hdr):04X}")

# tcp: zero 20-byte header, zero payload, src=dst=0.0.0.0
pseudo = bytes(8) + bytes([0, 6]) + (20).to_bytes(2, "big")
print(f"tcp zero-segment checksum = 0x{inet_checksum(pseudo + bytes(20)):04X}")

# tcp: fixed 12-byte payload derived vector
seg = bytes.fromhex("04d2 0050 00000001 00000002 5018 2000 0000 0000".replace(" ", "")) + b"hello world!"
src = bytes([192, 168, 0, 1]); dst = bytes([192, 168, 0, 199])
pseudo = src + dst + bytes([0, 6]) + (len(seg)).to_bytes(2, "big")
print(f"tcp 12-byte-payload vector checksum = 0x{inet_checksum(pseudo + seg):04X} (seg len {len(seg)})")

# chi-square oracle freeze (95%)
for k in list(range(1, 11)) + [15, 20, 30]:
    print(f"chi2.ppf(0.95, {k}) = {chi2.ppf(0.95, k):.6f}")

# true-state fixture in rect form for the model file
print("\nx_true rect:")
for b, v in zip([2, 3, 4, 7, 9, 10, 13], XTRUE):
    print(f"  bus {b}: {v.real:.6f} {v.imag:+.6f}j  mag {abs(v):.4f} ang {np.rad2deg(np.angle(v)):.2f}")

print("\nz_true (meters 1..11):")
for i, v in enumerate(H @ XTRUE):
    print(f"  meter {i+1}: {v.real:+.6f} {v.imag:+.6f}j")

# branch pu table for the model file
from fixture_study import branch_pu, LINES, CONFIGS, ZBASE, XFM_Z_OHM
print("\nbranch pu admittances:")
for key, (y, ys) in branch_pu().items():
    print(f"  {key}: y={y.real:.4f}{y.imag:+.4f}j ys={ys.imag:.6f}j")
print(f"XFM z_ohm = {XFM_Z_OHM:.6f}, ZBASE = {ZBASE:.6f}")
