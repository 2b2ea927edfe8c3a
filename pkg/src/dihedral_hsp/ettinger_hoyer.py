"""Hadamard-on-rows measurement statistics and maximum-likelihood slope recovery.

Outcomes are pairs ``(k, b)`` with ``k`` in ``[0, n)`` and ``b`` a row bit:

    P(k, 0 | a) = cos^2(pi a k / n) / n
    P(k, 1 | a) = sin^2(pi a k / n) / n

This folded table is exactly normalised.  Folding ``k <-> n - k`` gives the
row masses of the ``rho_k`` blocks; ``k = 0`` (and ``k = n/2`` for even n)
corresponds to the one-dimensional irreps.  The table is invariant under
``a -> n - a``, so recovery can only ever pin down the pair ``{a, n - a}``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .group import DihedralElement, check_order, identity
from .hsp import make_coset_state
from .qft import apply_qft, block_slices, build_qft
from .representations import OneDim, TwoDim

HADAMARD = np.array([[1, 1], [1, -1]], dtype=float) / np.sqrt(2)


def _check_slope(a: int, n: int) -> None:
    check_order(n)
    if not 0 <= a < n:
        raise ValueError(f"slope a={a} outside [0, {n})")


@functools.lru_cache(maxsize=128)
def _row_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """cos^2 and sin^2 of ``pi r / n`` for residues ``r = a k mod n``.

    The residue is folded to ``min(r, n - r)`` so that slopes ``a`` and
    ``n - a`` see bit-identical values, and the exact zeros are set
    explicitly rather than left to rounding.
    """
    r = np.arange(n)
    r = np.minimum(r, n - r)
    cos2 = np.cos(np.pi * r / n) ** 2
    sin2 = np.sin(np.pi * r / n) ** 2
    cos2[2 * r == n] = 0.0
    sin2[2 * r == n] = 1.0
    cos2[r == 0] = 1.0
    sin2[r == 0] = 0.0
    cos2.setflags(write=False)
    sin2.setflags(write=False)
    return cos2, sin2


@functools.lru_cache(maxsize=128)
def _log_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    cos2, sin2 = _row_tables(n)
    with np.errstate(divide="ignore"):
        lp0 = np.log(cos2 / n)
        lp1 = np.log(sin2 / n)
    lp0.setflags(write=False)
    lp1.setflags(write=False)
    return lp0, lp1


def eh_distribution(a: int, n: int) -> np.ndarray:
    """``P(k, b | a)`` as an ``(n, 2)`` array."""
    _check_slope(a, n)
    cos2, sin2 = _row_tables(n)
    r = (a * np.arange(n)) % n
    return np.stack([cos2[r], sin2[r]], axis=1) / n


@dataclass(frozen=True)
class EhSampleSet:
    n: int
    k: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)
    seed: Optional[int] = None

    def __len__(self) -> int:
        return len(self.k)

    def counts(self) -> np.ndarray:
        """Tally of outcomes as an ``(n, 2)`` int array."""
        flat = np.bincount(2 * self.k + self.b, minlength=2 * self.n)
        return flat.reshape(self.n, 2).astype(np.int64)

    def outcomes(self) -> list[tuple[int, int]]:
        return list(zip(self.k.tolist(), self.b.tolist()))


def eh_sample(a: int, n: int, count: int, rng: np.random.Generator,
              seed: Optional[int] = None) -> EhSampleSet:
    _check_slope(a, n)
    if count < 1:
        raise ValueError("count must be >= 1")
    flat = eh_distribution(a, n).ravel()
    cdf = np.cumsum(flat)
    cdf /= cdf[-1]
    idx = kernels.inverse_cdf(cdf, rng.random(count))
    return EhSampleSet(n, idx // 2, idx % 2, seed)


def samples_from_outcomes(n: int, outcomes) -> EhSampleSet:
    """Build a sample set from explicit ``(k, b)`` pairs."""
    arr = np.asarray(list(outcomes), dtype=np.int64).reshape(-1, 2)
    if np.any((arr[:, 0] < 0) | (arr[:, 0] >= n)) or np.any((arr[:, 1] < 0) | (arr[:, 1] > 1)):
        raise ValueError("outcome out of range")
    return EhSampleSet(n, arr[:, 0].copy(), arr[:, 1].copy())


def log_likelihood_scan(samples: EhSampleSet) -> np.ndarray:
    """Log-likelihood of every candidate slope ``0..n-1``; ``-inf`` marks exclusion."""
    if len(samples) == 0:
        raise ValueError("no samples")
    lp0, lp1 = _log_tables(samples.n)
    return kernels.loglik_scan(samples.counts(), lp0, lp1)


def log_likelihood(candidate_a: int, samples: EhSampleSet) -> float:
    _check_slope(candidate_a, samples.n)
    return float(log_likelihood_scan(samples)[candidate_a])


@dataclass
class SlopeEstimate:
    candidates: tuple[int, ...]
    log_likelihood: dict
    degenerate: bool = False
    scores: Optional[np.ndarray] = field(default=None, repr=False)

    def contains(self, a: int) -> bool:
        return a in self.candidates

    def margin(self) -> float:
        """Gap between the best score and the best score outside the argmax set."""
        if self.scores is None or self.degenerate:
            return float("nan")
        best = max(self.log_likelihood.values())
        rest = np.delete(self.scores, list(self.candidates))
        if rest.size == 0:
            return float("inf")
        return float(best - rest.max())


def recover_slope(samples: EhSampleSet) -> SlopeEstimate:
    """Exhaustive maximum-likelihood scan over all ``n`` slopes, ties kept."""
    scores = log_likelihood_scan(samples)
    n = samples.n
    finite = np.isfinite(scores)
    if not finite.any():
        return SlopeEstimate(tuple(range(n)), {a: float("-inf") for a in range(n)},
                             degenerate=True, scores=scores)
    best = scores[finite].max()
    cands = tuple(int(a) for a in np.flatnonzero(scores == best))
    return SlopeEstimate(cands, {a: float(scores[a]) for a in cands}, scores=scores)


def success_rate(n: int, m: int, trials: int, seed: int, a: Optional[int] = None,
                 threads: int = 1) -> float:
    """Fraction of seeded trials whose candidate set holds the true slope.

    Trial ``t`` uses the stream ``[seed, t]``; with ``a=None`` each trial also
    draws its slope from that stream.  Results do not depend on ``threads``.
    """
    def trial(t: int) -> bool:
        rng = np.random.default_rng([seed, t])
        slope = int(rng.integers(n)) if a is None else a
        est = recover_slope(eh_sample(slope, n, m, rng))
        return est.contains(slope)

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(threads) as pool:
            hits = list(pool.map(trial, range(trials)))
    else:
        hits = [trial(t) for t in range(trials)]
    return sum(hits) / trials


@dataclass
class ConsistencyReport:
    a: int
    n: int
    max_deviation: float
    worst: Optional[tuple]
    passed: bool


def consistency_check(a: int, n: int, c: Optional[DihedralElement] = None,
                      tol: float = 1e-10) -> ConsistencyReport:
    """Compare the folded table with the exact QFT pipeline.

    The coset state ``c H_a`` is pushed through the dense QFT; each ``rho_k``
    block is transposed and hit with a Hadamard on its row index, and the row
    masses must equal ``P(k, b) + P(n - k, b)``.  One-dimensional masses must
    equal ``P(0, v)`` for ``phi_{0,v}`` and ``P(n/2, v)`` for ``phi_{1,v}``.
    """
    _check_slope(a, n)
    c = identity() if c is None else c
    amps = apply_qft(build_qft(n), make_coset_state(c, a, n).state).amplitudes
    P = eh_distribution(a, n)
    worst, max_dev = None, 0.0
    for label, sl in block_slices(n).items():
        block = amps[sl]
        if isinstance(label, TwoDim):
            M = HADAMARD @ block.reshape(2, 2).T
            masses = (np.abs(M) ** 2).sum(axis=1)
            k = label.k
            expected = P[k] + P[n - k]
            pairs = [((str(label), row), masses[row], expected[row]) for row in (0, 1)]
        else:
            assert isinstance(label, OneDim)
            k = 0 if label.u == 0 else n // 2
            pairs = [((str(label), 0), abs(block[0]) ** 2, P[k, label.v])]
        for where, got, want in pairs:
            dev = abs(got - want)
            if worst is None or dev > max_dev:
                max_dev, worst = dev, where
    return ConsistencyReport(a, n, float(max_dev), worst, max_dev < tol)
