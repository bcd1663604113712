"""Numerical theory of the normalized coefficient st(v).

For a node with degree d and stress1 non-adjacent neighbor pairs,
st = stress1 / C(d, 2).  Two neighbors at distance x from each other are
non-adjacent with probability 1 - lens_area(x) / pi under the unit-disk
rule, which gives the interior expectation

    sigma = int_0^1 2 x (pi - lens_area(x)) / pi dx  ~= 0.4134966716

with 2x the radial density of a uniform point in the unit disk.  Near a
straight boundary the visible disk shrinks and the expectation drops;
``sample_st`` measures the full distribution by Monte Carlo in the
half-plane model: a node at distance s from the boundary, neighbor count
Poisson(mu * A(s) / pi), neighbors uniform in the clipped unit disk.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import BinningMismatchError, NumericalError
from .centrality import resolve_workers

_BATCH = 10_000
_DEFAULT_BINS = 100
# cap on elements of one pairwise-distance tensor, keeps memory modest
_PAIR_BUDGET = 1 << 22


def lens_area(x):
    """Overlap area of two unit disks whose centers are ``x`` apart.

    Accepts scalars or arrays; domain [0, 2].
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0) or np.any(arr > 2):
        raise ValueError("lens_area domain is [0, 2]")
    half = arr / 2.0
    out = 2.0 * np.arccos(half) - arr * np.sqrt(1.0 - half * half)
    if np.isscalar(x) or arr.ndim == 0:
        return float(out)
    return out


def m_area(x):
    """Area of the unit disk around one endpoint not covered by the other's disk."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0) or np.any(arr > 2):
        raise ValueError("m_area domain is [0, 2]")
    out = np.pi - lens_area(arr)
    if np.isscalar(x) or arr.ndim == 0:
        return float(out)
    return out


@lru_cache(maxsize=1)
def sigma_interior():
    """Expected st for an interior node, by adaptive quadrature."""
    val, err = integrate.quad(lambda x: 2.0 * x * m_area(x) / np.pi, 0.0, 1.0,
                              epsabs=1e-12, epsrel=1e-12)
    if err > 1e-9 or not np.isfinite(val):
        raise NumericalError(f"sigma quadrature did not converge (err={err:.3e})")
    return val


def clipped_disk_area(s):
    """Area of the unit disk around a node at distance ``s`` from a straight boundary."""
    if s < 0:
        raise ValueError("boundary distance must be >= 0")
    if s >= 1.0:
        return float(np.pi)
    return float(np.pi - (np.arccos(s) - s * np.sqrt(1.0 - s * s)))


@dataclass
class StDistribution:
    """Binned Monte-Carlo distribution of st at boundary distance ``s``."""
    s: float
    mu: float
    samples: int
    bin_edges: np.ndarray  # (bins + 1,)
    counts: np.ndarray     # (bins,)
    mean: float
    stddev: float

    def to_csv(self, path):
        meta = {"s": self.s, "mu": self.mu, "samples": self.samples,
                "mean": self.mean, "stddev": self.stddev}
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("# " + json.dumps(meta) + "\n")
            fh.write("bin_low,bin_high,count\n")
            for lo, hi, c in zip(self.bin_edges[:-1], self.bin_edges[1:], self.counts):
                fh.write(f"{float(lo)!r},{float(hi)!r},{int(c)}\n")

    @classmethod
    def from_csv(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        if len(lines) < 3 or not lines[0].startswith("# "):
            raise ValueError(f"{path}: not an st-distribution CSV")
        meta = json.loads(lines[0][2:])
        lows, highs, counts = [], [], []
        for row in lines[2:]:
            if not row:
                continue
            a, b, c = row.split(",")
            lows.append(float(a))
            highs.append(float(b))
            counts.append(int(c))
        edges = np.array(lows + [highs[-1]])
        return cls(s=float(meta["s"]), mu=float(meta["mu"]),
                   samples=int(meta["samples"]), bin_edges=edges,
                   counts=np.array(counts, dtype=np.int64),
                   mean=float(meta["mean"]), stddev=float(meta["stddev"]))


def _draw_clipped(rng, count, s):
    """``count`` uniform points from the unit disk clipped to y >= -s."""
    if count == 0:
        return np.empty((0, 2))
    accept = clipped_disk_area(s) / np.pi
    chunks = []
    got = 0
    while got < count:
        m = int((count - got) / accept * 1.08) + 16
        r = np.sqrt(rng.random(m))
        th = rng.random(m) * (2.0 * np.pi)
        x = r * np.cos(th)
        y = r * np.sin(th)
        keep = y >= -s
        pts = np.column_stack([x[keep], y[keep]])
        chunks.append(pts)
        got += len(pts)
    return np.concatenate(chunks)[:count]


def _far_pair_counts(pts):
    """Per realization, count point pairs farther apart than 1.

    pts has shape (k, N, 2).  The test d2(i, j) > 1 is rewritten as
    b_i + b_j - 2 p_i . p_j > 0 with b = |p|^2 - 1/2 and evaluated by one
    augmented matrix product in float32; the diagonal lands at -1 and is
    excluded automatically.
    """
    k, nv, _ = pts.shape
    b = np.sum(pts * pts, axis=2, dtype=np.float32) - np.float32(0.5)
    left = np.empty((k, nv, 4), dtype=np.float32)
    left[:, :, :2] = -2.0 * pts
    left[:, :, 2] = 1.0
    left[:, :, 3] = b
    right = np.empty((k, 4, nv), dtype=np.float32)
    right[:, :2, :] = pts.transpose(0, 2, 1)
    right[:, 2, :] = b
    right[:, 3, :] = 1.0
    m = left @ right
    return np.count_nonzero(m > 0, axis=(1, 2)) // 2


def _sample_batch(seed, count, s, lam):
    """One deterministic batch: returns (histogram, sum, sum of squares)."""
    rng = np.random.default_rng(seed)
    ns = rng.poisson(lam, size=count)
    st = np.zeros(count)
    for value in np.unique(ns):
        v = int(value)
        if v <= 1:
            continue  # st is 0 by convention with fewer than 2 neighbors
        rows = np.nonzero(ns == value)[0]
        step = max(1, _PAIR_BUDGET // (v * v))
        pairs = v * (v - 1) / 2.0
        for lo in range(0, len(rows), step):
            sel = rows[lo:lo + step]
            pts = _draw_clipped(rng, len(sel) * v, s).reshape(len(sel), v, 2)
            st[sel] = _far_pair_counts(pts) / pairs
    edges = np.linspace(0.0, 1.0, _DEFAULT_BINS + 1)
    hist, _ = np.histogram(st, bins=edges)
    return hist.astype(np.int64), float(st.sum()), float(np.dot(st, st))


def sample_st(s, mu, samples, seed, workers=None):
    """Monte-Carlo distribution of st at boundary distance ``s``.

    Parameters
    ----------
    s : float
        Distance to the straight boundary in disk radii; s >= 1 is interior.
    mu : float
        Expected interior degree (Poisson mean for an unclipped disk).
    samples : int
        Number of independent node realizations.
    seed : int
        Master seed; batches draw from spawned child streams in a fixed
        order, so results are identical for any worker count.
    workers : int, optional
        Thread count; defaults to the environment override or cpu count.
    """
    if s < 0:
        raise ValueError("boundary distance must be >= 0")
    if mu <= 0:
        raise ValueError("mu must be positive")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    lam = mu * clipped_disk_area(s) / np.pi
    nbatch = (samples + _BATCH - 1) // _BATCH
    seeds = np.random.SeedSequence(seed).spawn(nbatch)
    counts = [_BATCH] * (nbatch - 1) + [samples - _BATCH * (nbatch - 1)]
    w = min(resolve_workers(workers), nbatch)
    if w <= 1:
        results = [_sample_batch(sd, c, s, lam) for sd, c in zip(seeds, counts)]
    else:
        with ThreadPoolExecutor(max_workers=w) as ex:
            results = list(ex.map(lambda a: _sample_batch(*a),
                                  [(sd, c, s, lam) for sd, c in zip(seeds, counts)]))
    hist = np.zeros(_DEFAULT_BINS, dtype=np.int64)
    total = 0.0
    total2 = 0.0
    for h, t, t2 in results:  # fixed merge order
        hist += h
        total += t
        total2 += t2
    mean = total / samples
    var = max(0.0, (total2 - samples * mean * mean) / max(1, samples - 1))
    return StDistribution(s=float(s), mu=float(mu), samples=int(samples),
                          bin_edges=np.linspace(0.0, 1.0, _DEFAULT_BINS + 1),
                          counts=hist, mean=mean, stddev=float(np.sqrt(var)))


@dataclass
class ThresholdErrorReport:
    threshold: float
    false_negative_rate: float
    false_positive_rate: float

    @property
    def total(self):
        return self.false_negative_rate + self.false_positive_rate


def estimate_errors(dist_boundary, dist_interior, threshold):
    """Classification error rates for rule ``st <= threshold -> boundary``.

    From the binned distributions: a bin entirely above the threshold
    counts toward false negatives (boundary mass strictly above), a bin
    entirely at or below it toward false positives (interior mass at or
    below); the straddling bin counts toward neither.
    """
    if not (0.0 <= threshold <= 1.0):
        raise ValueError("threshold must lie in [0, 1]")
    if not np.array_equal(dist_boundary.bin_edges, dist_interior.bin_edges):
        raise BinningMismatchError("distributions use different binnings")
    lows = dist_boundary.bin_edges[:-1]
    highs = dist_boundary.bin_edges[1:]
    fn = dist_boundary.counts[lows > threshold].sum() / dist_boundary.samples
    fp = dist_interior.counts[highs <= threshold].sum() / dist_interior.samples
    return ThresholdErrorReport(threshold=float(threshold),
                                false_negative_rate=float(fn),
                                false_positive_rate=float(fp))


def separation(dist_boundary, dist_interior):
    """Gap between the means in pooled standard deviations."""
    pooled = np.sqrt((dist_boundary.stddev ** 2 + dist_interior.stddev ** 2) / 2.0)
    if pooled == 0.0:
        raise ValueError("distributions are degenerate (zero spread)")
    return float((dist_interior.mean - dist_boundary.mean) / pooled)
