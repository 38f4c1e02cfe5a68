#!/usr/bin/env python3
"""Independent reference computations for the frozen expected values in the tests.

Everything here is recomputed with numpy/scipy/pandas and a from-scratch
ChaCha8 port; nothing imports or shells out to the Rust code.

Usage: python3 scripts/oracle.py
"""
import itertools
import math
import os

import numpy as np
import pandas as pd
from scipy import stats

ROOT = os.path.join(os.path.dirname(__file__), "..")
FIX = os.path.join(ROOT, "crates", "core", "fixtures")
SEASONS = [("1314", "D1", "cp1252"), ("1213", "E0", "utf-8"), ("1415", "I1", "utf-8")]


def load(code, league, enc):
    path = os.path.join(FIX, code, f"{league}.csv")
    with open(path, "rb") as f:
        raw = f.read().decode(enc)
    data_lines = [l for l in raw.splitlines()[1:]]
    df = pd.read_csv(path, encoding=enc)
    df = df.dropna(subset=["HomeTeam", "AwayTeam"])
    return len(data_lines), df


def series_of(df):
    # rows are already in chronological order in the generated files
    pts, gd, gf = {}, {}, {}
    for _, r in df.iterrows():
        h, a, hg, ag = r.HomeTeam, r.AwayTeam, int(r.FTHG), int(r.FTAG)
        for t in (h, a):
            pts.setdefault(t, [0]); gd.setdefault(t, [0]); gf.setdefault(t, [0])
        ph, pa = (3, 0) if hg > ag else ((1, 1) if hg == ag else (0, 3))
        pts[h].append(pts[h][-1] + ph); pts[a].append(pts[a][-1] + pa)
        gd[h].append(gd[h][-1] + hg - ag); gd[a].append(gd[a][-1] + ag - hg)
        gf[h].append(gf[h][-1] + hg); gf[a].append(gf[a][-1] + ag)
    return ({t: v[1:] for t, v in pts.items()}, {t: v[1:] for t, v in gd.items()},
            {t: v[1:] for t, v in gf.items()})


def final_order(pts, gd, gf):
    return sorted(pts, key=lambda t: (-pts[t][-1], -gd[t][-1], -gf[t][-1], t))


def extrapolate(y, n, ts, deg):
    x = np.arange(1, n - ts + 1, dtype=float)
    c = np.polyfit(x, np.asarray(y[: n - ts], dtype=float), deg)
    return float(np.polyval(c, n))


def floor_snap(v):
    r = round(v)
    return r if abs(v - r) <= 1e-9 else math.floor(v)


def predicted_order(pts, gd, ts, deg):
    vals = {}
    for t, y in pts.items():
        n = len(y)
        vals[t] = extrapolate(y, n, ts, deg)
    cut = {t: len(pts[t]) - ts - 1 for t in pts}
    return sorted(pts, key=lambda t: (-vals[t], -pts[t][cut[t]], -gd[t][cut[t]], t))


def footrule(a, b):
    ra = {t: i for i, t in enumerate(a)}
    rb = {t: i for i, t in enumerate(b)}
    return sum(abs(ra[t] - rb[t]) for t in a)


# ---- ChaCha8 + rand 0.8 conventions -------------------------------------------------
M32 = 0xFFFFFFFF


def rotl(v, c):
    return ((v << c) & M32) | (v >> (32 - c))


def qr(s, a, b, c, d):
    s[a] = (s[a] + s[b]) & M32; s[d] = rotl(s[d] ^ s[a], 16)
    s[c] = (s[c] + s[d]) & M32; s[b] = rotl(s[b] ^ s[c], 12)
    s[a] = (s[a] + s[b]) & M32; s[d] = rotl(s[d] ^ s[a], 8)
    s[c] = (s[c] + s[d]) & M32; s[b] = rotl(s[b] ^ s[c], 7)


class ChaCha8:
    def __init__(self, seed_u64, stream=0):
        state = seed_u64
        key = []
        for _ in range(8):
            state = (state * 6364136223846793005 + 11634580027462260723) & 0xFFFFFFFFFFFFFFFF
            xs = (((state >> 18) ^ state) >> 27) & M32
            rot = state >> 59
            key.append(((xs >> rot) | (xs << ((32 - rot) & 31))) & M32)
        self.key, self.stream, self.counter = key, stream, 0
        self.buf, self.idx = [], 0

    def _block(self):
        st = [0x61707865, 0x3320646e, 0x79622d32, 0x6b206574] + self.key + [
            self.counter & M32, self.counter >> 32, self.stream & M32, self.stream >> 32]
        w = st[:]
        for _ in range(4):
            qr(w, 0, 4, 8, 12); qr(w, 1, 5, 9, 13); qr(w, 2, 6, 10, 14); qr(w, 3, 7, 11, 15)
            qr(w, 0, 5, 10, 15); qr(w, 1, 6, 11, 12); qr(w, 2, 7, 8, 13); qr(w, 3, 4, 9, 14)
        self.counter += 1
        return [(w[i] + st[i]) & M32 for i in range(16)]

    def next_u64(self):
        if self.idx >= len(self.buf):
            self.buf = self._block() + self._block() + self._block() + self._block()
            self.idx = 0
        lo, hi = self.buf[self.idx], self.buf[self.idx + 1]
        self.idx += 2
        return (hi << 32) | lo

    def unit_f64(self):
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


def null_series(seed, index, n, probs=(1 / 3, 1 / 3, 1 / 3)):
    rng = ChaCha8(seed, index)
    t, out = 0, []
    for _ in range(n):
        u = rng.unit_f64()
        t += 3 if u < probs[0] else (1 if u < probs[0] + probs[1] else 0)
        out.append(t)
    return out


def main():
    print("== fixtures")
    champs = {}
    for code, league, enc in SEASONS:
        nlines, df = load(code, league, enc)
        pts, gd, gf = series_of(df)
        champs[(league, code)] = (pts, gd, gf)
        order = final_order(pts, gd, gf)
        total = sum(v[-1] for v in pts.values())
        draws = int((df.FTHG == df.FTAG).sum())
        print(f"{league}/{code}: data_lines={nlines} matches={len(df)} teams={len(pts)} "
              f"sum_points={total} draws={draws} decisive={len(df) - draws}")
        print("  final:", [(t, pts[t][-1], gd[t][-1], gf[t][-1]) for t in order])

    print("== degree comparison (mean abs error per t_s)")
    errs = {d: {} for d in (1, 2, 3)}
    for ts in range(1, 21):
        for d in (1, 2, 3):
            e = []
            for (pts, gd, gf) in champs.values():
                for t in sorted(pts):
                    y = pts[t]; n = len(y)
                    e.append(abs(floor_snap(extrapolate(y, n, ts, d)) - y[-1]))
            errs[d][ts] = e
        print(ts, [round(float(np.mean(errs[d][ts])), 4) for d in (1, 2, 3)])
    pooled = {d: sum((errs[d][ts] for ts in range(1, 21)), []) for d in (1, 2, 3)}
    for a, b in ((1, 2), (2, 3)):
        r = stats.ttest_rel(pooled[a], pooled[b], alternative="less")
        print(f"paired t pooled deg{a}<deg{b}: t={r.statistic:.6f} p={r.pvalue:.6e}")

    print("== displacement of predicted final tables (linear)")
    for (league, code), (pts, gd, gf) in champs.items():
        actual = final_order(pts, gd, gf)
        m = len(actual)
        row = []
        for ts in range(1, 21):
            D = footrule(actual, predicted_order(pts, gd, ts, 1))
            row.append(D)
        print(f"{league}/{code} m={m} maxD={m*m//2} D(ts=1..20)={row}")

    print("== misc")
    x = np.arange(1, 7); y = np.array([3, 4, 7, 8, 11, 12], float)
    print("ols [3,4,7,8,11,12]:", np.polyfit(x, y, 1))
    r = stats.ttest_rel([1, 2, 3, 4, 5], [2, 2, 4, 4, 6])
    print(f"ttest_rel two-sided: t={r.statistic!r} p={r.pvalue!r}")
    for alt in ("less", "greater"):
        r = stats.ttest_rel([1, 2, 3, 4, 5], [2, 2, 4, 4, 6], alternative=alt)
        print(f"ttest_rel {alt}: p={r.pvalue!r}")
    print("t cdf df=3 t=-2.5:", repr(stats.t.cdf(-2.5, 3)), " df=10000 t=1.96:",
          repr(stats.t.sf(1.96, 10000)), " df=7 t=8:", repr(stats.t.sf(8.0, 7)))

    bar = [round(1.29 * i) for i in range(1, 20)]
    bar += [round(1.29 * 19 + 2.52 * (i - 19)) for i in range(20, 39)]
    pred = floor_snap(extrapolate(bar, 38, 19, 1))
    print("barcelona-like series:", bar)
    print("  predicted", pred, "actual", bar[-1], "abs_error", abs(pred - bar[-1]))

    for m in range(2, 8):
        tot, mx = 0, 0
        for p in itertools.permutations(range(m)):
            D = sum(abs(i - p[i]) for i in range(m)); tot += D; mx = max(mx, D)
        print(f"S_{m}: maxD={mx} meanD={tot}/{math.factorial(m)} mean_d={tot / math.factorial(m) / (m*m//2)!r}")

    print("== ChaCha8 reference words (seed 42, stream 0):",
          [hex(v) for v in [ChaCha8(42).next_u64() for _ in range(1)]])
    seed, count, n, ts = 42, 1000, 38, 10
    e = []
    for i in range(count):
        s = null_series(seed, i, n)
        e.append(abs(floor_snap(extrapolate(s, n, ts, 1)) - s[-1]))
    print(f"null model seed={seed} count={count} n={n} ts={ts}: mean={np.mean(e)!r} sum={int(np.sum(e))}")
    print("  first series:", null_series(seed, 0, n))


if __name__ == "__main__":
    main()
