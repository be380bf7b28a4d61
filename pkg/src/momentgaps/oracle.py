"""Brute-force oracles for the test suite: random measures and grid scans.

The scans are intentionally independent of the solver path: feasibility of
a completed sequence is judged by float eigenvalues and singular values on
a grid of candidate completions, never by the exact-rational machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import random

import numpy as np

from .errors import InvalidInput
from .gaps import GappedSequence
from .hamburger import AtomicMeasure
from .rational import QQ


@dataclass(frozen=True)
class ScanReport:
    grid_step: float
    feasible_points: list
    intervals: list = field(default_factory=list)
    box: Optional[tuple] = None

    @property
    def feasible(self) -> bool:
        return bool(self.feasible_points)


def random_measure(n_atoms: int, bounds, seed: int) -> AtomicMeasure:
    """Deterministic random atomic measure with exact rational data.

    Atoms are distinct rationals with denominator 16 inside [lo, hi];
    weights are rationals in (0, 2].
    """
    if n_atoms < 1:
        raise InvalidInput("need at least one atom")
    lo, hi = float(bounds[0]), float(bounds[1])
    if not lo < hi:
        raise InvalidInput("empty atom bounds")
    rng = random.Random(seed)
    lo_t, hi_t = int(np.ceil(lo * 16)), int(np.floor(hi * 16))
    if hi_t - lo_t + 1 < n_atoms:
        raise InvalidInput("bounds too tight for that many distinct atoms")
    ticks = rng.sample(range(lo_t, hi_t + 1), n_atoms)
    atoms = sorted(QQ(t, 16) for t in ticks)
    weights = [QQ(rng.randint(1, 32), 16) for _ in range(n_atoms)]
    return AtomicMeasure(tuple(atoms), tuple(weights))


def scan_gap(g: GappedSequence, step: float) -> ScanReport:
    """Grid scan of the missing values for measure-feasible completions.

    A grid point passes when the completed Hankel matrix is psd (with a
    one-grid-step eigenvalue slack) and its numerical rank matches the rank
    of its leading corner or is full.  The scan box is [-B, B] per missing
    coordinate, B = 1 + max |known moment|, doubled up to three times if
    feasibility touches the boundary.
    """
    if not step > 0:
        raise InvalidInput("step must be positive")
    k = g.k
    missing = list(g.pattern.missing_indices(k))
    known = {i: float(v) for i, v in g.known.items()}
    box = 1.0 + max(abs(v) for v in known.values())
    for _ in range(4):
        report = _scan_box(known, missing, k, box, step)
        if not _touches_boundary(report, box, step, len(missing)):
            return report
        box *= 2.0
    return report


def _touches_boundary(report: ScanReport, box: float, step: float, dims: int) -> bool:
    for pt in report.feasible_points:
        coords = pt if dims > 1 else (pt,)
        if any(abs(abs(c) - box) <= step for c in coords):
            return True
    return False


def _scan_box(known, missing, k, box, step) -> ScanReport:
    axis = np.arange(-box, box + step / 2, step)
    if len(missing) == 1:
        grids = axis.reshape(-1, 1)
    else:
        a, b = np.meshgrid(axis, axis, indexing="ij")
        grids = np.column_stack([a.ravel(), b.ravel()])

    n = k + 1
    count = grids.shape[0]
    mats = np.empty((count, n, n))
    base = np.zeros(2 * k + 1)
    for i, v in known.items():
        base[i] = v
    for i in range(n):
        for j in range(n):
            mats[:, i, j] = base[i + j]
    for d, idx in enumerate(missing):
        for i in range(n):
            j = idx - i
            if 0 <= j < n:
                mats[:, i, j] = grids[:, d]

    scale = max(1.0, float(np.max(np.abs(base))), float(box))
    slack = 2.0 * step + 1e-9 * scale
    eigs = np.linalg.eigvalsh(mats)
    psd_mask = eigs[:, 0] >= -slack
    feasible = []
    if np.any(psd_mask):
        cand = np.nonzero(psd_mask)[0]
        sv_full = np.linalg.svd(mats[cand], compute_uv=False)
        sv_lead = np.linalg.svd(mats[cand][:, : n - 1, : n - 1], compute_uv=False)
        thresh = max(4.0 * step, 1e-9 * scale * n)
        rank_full = (sv_full > thresh).sum(axis=1)
        rank_lead = (sv_lead > thresh).sum(axis=1)
        ok = (rank_full == n) | (rank_full == rank_lead)
        for pos, keep in zip(cand, ok):
            if keep:
                pt = grids[pos]
                feasible.append(float(pt[0]) if len(missing) == 1 else (float(pt[0]), float(pt[1])))

    intervals = []
    if len(missing) == 1 and feasible:
        start = prev = feasible[0]
        for x in feasible[1:]:
            if x - prev > 1.5 * step:
                intervals.append((start, prev))
                start = x
            prev = x
        intervals.append((start, prev))
    return ScanReport(step, feasible, intervals, (-box, box))
