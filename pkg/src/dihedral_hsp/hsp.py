"""The standard hidden subgroup algorithm on D_n for a reflection subgroup H_a."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .group import (DihedralElement, ReflectionSubgroup, check_order,
                    coset_representative, elements, identity, index, multiply,
                    rotation)
from .qft import GROUP, FourierIndex, StateVector, apply_qft, build_qft, fourier_indices
from .representations import coset_sum, irrep_list

CLAMP_TOL = 1e-14


def _check_slope(a: int, n: int) -> None:
    check_order(n)
    if not 0 <= a < n:
        raise ValueError(f"slope a={a} outside [0, {n})")


@dataclass
class OutcomeDistribution:
    outcomes: list
    probabilities: np.ndarray
    counts: Optional[np.ndarray] = None

    @classmethod
    def from_probabilities(cls, outcomes, probs, tol: float = CLAMP_TOL):
        p = np.asarray(probs, dtype=float)
        if np.any(p < -tol) or np.any(p > 1 + tol):
            raise ValueError("probability outside [0, 1] beyond rounding tolerance")
        p = np.clip(p, 0.0, 1.0)
        if len(outcomes) != len(p):
            raise ValueError("outcome/probability length mismatch")
        return cls(list(outcomes), p)

    @property
    def total(self) -> float:
        return float(self.probabilities.sum())

    def cdf(self) -> np.ndarray:
        c = np.cumsum(self.probabilities)
        # entries past the last nonzero outcome equal c[-1], so they become
        # exactly 1.0 and zero-mass tail outcomes are never drawn
        return c / c[-1]

    def probability(self, outcome) -> float:
        return float(self.probabilities[self.outcomes.index(outcome)])

    def empirical(self) -> np.ndarray:
        if self.counts is None:
            raise ValueError("no empirical counts recorded")
        return self.counts / self.counts.sum()

    def tv_distance(self, other: np.ndarray) -> float:
        return 0.5 * float(np.abs(self.probabilities - np.asarray(other)).sum())


@dataclass(frozen=True)
class SeparatingFunction:
    """Coset labelling ``f``: element index -> coset id in ``[0, n)``.

    The id of a coset is the group index of its lexicographically minimal
    element, which is always a rotation.
    """

    a: int
    n: int
    table: tuple[int, ...] = field(repr=False)

    def __call__(self, g: DihedralElement) -> int:
        return self.table[index(g, self.n)]

    def image(self) -> set[int]:
        return set(self.table)


def make_separating_function(a: int, n: int) -> SeparatingFunction:
    _check_slope(a, n)
    H = ReflectionSubgroup(a, n)
    table = tuple(index(coset_representative(g, H, n), n) for g in elements(n))
    return SeparatingFunction(a, n, table)


def prepare_uniform_with_f(f: SeparatingFunction) -> np.ndarray:
    """Amplitudes of ``sum_g |g>|f(g)> / sqrt(2n)`` as a ``(2n, n)`` array."""
    n = f.n
    state = np.zeros((2 * n, n), dtype=complex)
    state[np.arange(2 * n), list(f.table)] = 1.0 / np.sqrt(2 * n)
    return state


@dataclass(frozen=True)
class CosetState:
    c: DihedralElement
    a: int
    n: int
    state: StateVector = field(repr=False)


def make_coset_state(c: DihedralElement, a: int, n: int) -> CosetState:
    _check_slope(a, n)
    amps = np.zeros(2 * n, dtype=complex)
    for h in ReflectionSubgroup(a, n).elements():
        amps[index(multiply(c, h, n), n)] = 1.0 / np.sqrt(2)
    return CosetState(c, a, n, StateVector(amps, GROUP))


def measure_coset(f: SeparatingFunction, rng: np.random.Generator) -> CosetState:
    """Measure the value register of the uniform state and keep the group register.

    The coset id is drawn from its exact marginal, which is uniform over the
    n cosets; the post-measurement state is then written down directly.
    """
    coset_id = int(rng.integers(f.n))
    return make_coset_state(rotation(coset_id, f.n), f.a, f.n)


def exact_fourier_distribution(a: int, c: DihedralElement, n: int) -> OutcomeDistribution:
    """Born probabilities of ``(rho, i, j)`` after the QFT of the coset state ``c H_a``."""
    _check_slope(a, n)
    probs = []
    for label in irrep_list(n):
        S = coset_sum(label, a, c, n)
        probs.extend((label.dim / (4 * n)) * np.abs(S.ravel()) ** 2)
    return OutcomeDistribution.from_probabilities(fourier_indices(n), probs)


def sample_indices(dist: OutcomeDistribution, count: int, rng: np.random.Generator) -> np.ndarray:
    """Inverse-CDF draws, returned as positions into ``dist.outcomes``."""
    return kernels.inverse_cdf(dist.cdf(), rng.random(count))


def sample_outcome(dist: OutcomeDistribution, rng: np.random.Generator):
    return dist.outcomes[int(sample_indices(dist, 1, rng)[0])]


def sample_outcomes(dist: OutcomeDistribution, count: int, rng: np.random.Generator) -> OutcomeDistribution:
    """Draw ``count`` outcomes and return a copy of ``dist`` carrying the tallies."""
    idx = sample_indices(dist, count, rng)
    counts = np.bincount(idx, minlength=len(dist.outcomes))
    return OutcomeDistribution(dist.outcomes, dist.probabilities, counts)


def two_dim_mask(outcomes: Sequence[FourierIndex]) -> np.ndarray:
    return np.array([o.label.dim == 2 for o in outcomes])


def flatness(dist: OutcomeDistribution, n: int) -> dict:
    """Largest 2-dim outcome probability against the ``4/n`` bound."""
    mask = two_dim_mask(dist.outcomes)
    if not mask.any():
        return {"max_two_dim_probability": None, "bound": 4 / n, "ratio": None}
    m = float(dist.probabilities[mask].max())
    return {"max_two_dim_probability": m, "bound": 4 / n, "ratio": m / (4 / n)}


def run_pipeline(a: int, n: int, samples: int, rng: np.random.Generator) -> OutcomeDistribution:
    """Repeat the standard algorithm ``samples`` times and tally Fourier outcomes.

    Each run measures the value register (a uniform coset id, as in
    :func:`measure_coset`) and then performs strong Fourier sampling on the
    resulting coset state.  Runs landing in the same coset share one exact
    table.  The returned
    probabilities are those of the identity coset, which every coset matches.
    """
    base = exact_fourier_distribution(a, identity(), n)
    counts = np.zeros(len(base.outcomes), dtype=np.int64)
    if samples:
        ids = rng.integers(n, size=samples)
        reps = Counter(rotation(int(i), n) for i in ids)
        for c in sorted(reps):
            dist = exact_fourier_distribution(a, c, n)
            counts += np.bincount(sample_indices(dist, reps[c], rng), minlength=len(counts))
    return OutcomeDistribution(base.outcomes, base.probabilities, counts)


def pipeline_consistency(a: int, c: DihedralElement, n: int) -> float:
    """Max gap between the coset-sum table and ``|F |cH_a>|^2`` from the dense QFT."""
    via_qft = apply_qft(build_qft(n), make_coset_state(c, a, n).state).probabilities()
    return float(np.max(np.abs(via_qft - exact_fourier_distribution(a, c, n).probabilities)))
